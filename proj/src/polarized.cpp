#include "koszul/polarized.hpp"

#include <omp.h>

#include <algorithm>
#include <set>

namespace koszul {

namespace {

struct Ineq {
    RatVec a;  // coefficients over the current variable list
    Rat b;     // a . x <= b
};

void normalize(Ineq& q) {
    for (const Rat& c : q.a) {
        if (!is_zero(c)) {
            Rat f = abs(c);
            for (Rat& x : q.a) x /= f;
            q.b /= f;
            return;
        }
    }
    if (!is_zero(q.b)) {
        Rat f = abs(q.b);
        q.b /= f;
    }
}

std::vector<Ineq> dedupe(std::vector<Ineq> sys) {
    std::set<std::pair<RatVec, Rat>> seen;
    std::vector<Ineq> out;
    for (Ineq& q : sys) {
        normalize(q);
        if (seen.insert({q.a, q.b}).second) out.push_back(std::move(q));
    }
    return out;
}

// eliminates variable 0, keeping the remaining variables in order
std::vector<Ineq> fm_eliminate(const std::vector<Ineq>& sys) {
    std::vector<const Ineq*> pos, neg;
    std::vector<Ineq> out;
    for (const Ineq& q : sys) {
        if (sgn(q.a[0]) > 0) pos.push_back(&q);
        else if (sgn(q.a[0]) < 0) neg.push_back(&q);
        else out.push_back({RatVec(q.a.begin() + 1, q.a.end()), q.b});
    }
    for (const Ineq* p : pos)
        for (const Ineq* m : neg) {
            Rat lp = -m->a[0], lm = p->a[0];
            Ineq q;
            q.a.resize(p->a.size() - 1);
            for (std::size_t j = 1; j < p->a.size(); ++j)
                q.a[j - 1] = lp * p->a[j] + lm * m->a[j];
            q.b = lp * p->b + lm * m->b;
            out.push_back(std::move(q));
        }
    return dedupe(std::move(out));
}

struct LpResult {
    bool feasible = false;
    bool bounded = false;
    RatVec optimum;  // s-coordinates of the unique maximizer
};

// max c.s subject to A s <= b, via Fourier-Motzkin over (s, t = c.s).
// Uniqueness of the maximizer is asserted (genericity).
LpResult fm_solve(const std::vector<RatVec>& rows, const RatVec& rhs, const RatVec& c) {
    const std::size_t k = c.size();
    std::vector<std::vector<Ineq>> systems;
    std::vector<Ineq> sys;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Ineq q;
        q.a = rows[i];
        q.a.push_back(Rat(0));  // t coefficient
        q.b = rhs[i];
        sys.push_back(std::move(q));
    }
    {
        Ineq up, down;  // t - c.s <= 0 and c.s - t <= 0
        up.a.assign(k + 1, Rat(0));
        down.a.assign(k + 1, Rat(0));
        for (std::size_t j = 0; j < k; ++j) {
            up.a[j] = -c[j];
            down.a[j] = c[j];
        }
        up.a[k] = 1;
        down.a[k] = -1;
        up.b = down.b = 0;
        sys.push_back(up);
        sys.push_back(down);
    }
    systems.push_back(dedupe(sys));
    for (std::size_t v = 0; v < k; ++v) systems.push_back(fm_eliminate(systems.back()));

    // the final system constrains t alone
    LpResult r;
    bool has_upper = false, has_lower = false;
    Rat upper(0), lower(0);
    for (const Ineq& q : systems.back()) {
        if (is_zero(q.a[0])) {
            if (sgn(q.b) < 0) return r;  // 0 <= b violated: infeasible
            continue;
        }
        Rat bound = q.b / q.a[0];
        if (sgn(q.a[0]) > 0) {
            if (!has_upper || bound < upper) upper = bound;
            has_upper = true;
        } else {
            if (!has_lower || bound > lower) lower = bound;
            has_lower = true;
        }
    }
    if (has_upper && has_lower && lower > upper) return r;
    r.feasible = true;
    r.bounded = has_upper;
    if (!r.bounded) return r;

    // back-substitute at t = upper, recovering s_k, ..., s_1
    RatVec vals(k + 1, Rat(0));
    vals[k] = upper;  // value of t
    for (std::size_t v = k; v-- > 0;) {
        // systems[v] has variables (s_{v+1}, ..., s_k, t); recover the first
        bool hu = false, hl = false;
        Rat hi(0), lo(0);
        for (const Ineq& q : systems[v]) {
            if (is_zero(q.a[0])) continue;
            Rat rest = q.b;
            for (std::size_t j = 1; j < q.a.size(); ++j)
                rest -= q.a[j] * vals[v + j];
            Rat bound = rest / q.a[0];
            if (sgn(q.a[0]) > 0) {
                if (!hu || bound < hi) hi = bound;
                hu = true;
            } else {
                if (!hl || bound > lo) lo = bound;
                hl = true;
            }
        }
        if (!hu || !hl || !(lo == hi))
            throw CheckError("optimal vertex is not unique (genericity violated)");
        vals[v] = lo;
    }
    r.optimum.assign(vals.begin(), vals.begin() + static_cast<long>(k));
    return r;
}

Chamber solve_chamber(const PolarizedArrangement& pa, std::size_t code) {
    const int n = pa.n;
    const int k = pa.k();
    Chamber ch;
    ch.sign.resize(n);
    for (int i = 0; i < n; ++i) ch.sign[i] = (code >> i) & 1 ? 1 : -1;

    // alpha_i (eta_i + (B^T s)_i) >= 0  becomes  -alpha_i B_{.i} . s <= alpha_i eta_i
    std::vector<RatVec> rows;
    RatVec rhs;
    for (int i = 0; i < n; ++i) {
        RatVec row(k);
        for (int j = 0; j < k; ++j)
            row[j] = -Rat(ch.sign[i]) * pa.v.basis().at(j, i);
        rows.push_back(std::move(row));
        rhs.push_back(Rat(ch.sign[i]) * pa.eta[i]);
    }
    RatVec c(k, Rat(0));  // xi in V-coordinates
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) c[j] += pa.v.basis().at(j, i) * pa.xi[i];

    LpResult lp = fm_solve(rows, rhs, c);
    ch.feasible = lp.feasible;
    ch.bounded = lp.bounded;
    if (lp.feasible && lp.bounded) {
        ch.vertex.assign(n, Rat(0));
        for (int i = 0; i < n; ++i) {
            ch.vertex[i] = pa.eta[i];
            for (int j = 0; j < k; ++j) ch.vertex[i] += pa.v.basis().at(j, i) * lp.optimum[j];
        }
        for (int i = 0; i < n; ++i)
            if (is_zero(ch.vertex[i])) ch.basis.push_back(i);
        if (static_cast<int>(ch.basis.size()) != k)
            throw CheckError("optimal vertex lies on " + std::to_string(ch.basis.size()) +
                             " hyperplanes, expected " + std::to_string(k));
    }
    return ch;
}

}  // namespace

ValidationReport validate_arrangement(const PolarizedArrangement& pa) {
    ValidationReport rep;
    const int n = pa.n;
    const int k = pa.k();
    auto name_of = [&](const std::vector<int>& set) {
        std::string s = "{";
        for (std::size_t i = 0; i < set.size(); ++i)
            s += (i ? "," : "") + std::to_string(set[i] + 1);
        return s + "}";
    };
    // xi in V-coordinates; zero xi is degenerate whenever k > 0
    RatVec c(k, Rat(0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) c[j] += pa.v.basis().at(j, i) * pa.xi[i];

    for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
        std::vector<int> set;
        for (int i = 0; i < n; ++i)
            if (code >> i & 1) set.push_back(i);
        if (static_cast<int>(set.size()) > k + 1) continue;
        // affine system (eta + B^T s)_i = 0 for i in the set
        RationalMatrix m(set.size(), k);
        RatVec rhs(set.size());
        for (std::size_t r = 0; r < set.size(); ++r) {
            for (int j = 0; j < k; ++j) m.at(r, j) = pa.v.basis().at(j, set[r]);
            rhs[r] = -pa.eta[set[r]];
        }
        RatVec sol;
        bool consistent = solve(m, rhs, sol);
        if (!consistent) continue;
        if (static_cast<int>(set.size()) > k) {
            rep.pass = false;
            rep.failure = "hyperplanes " + name_of(set) + " meet in a point on more than " +
                          std::to_string(k) + " of them";
            return rep;
        }
        if (m.rank() != set.size()) {
            rep.pass = false;
            rep.failure = "hyperplanes " + name_of(set) + " are not independent where they meet";
            return rep;
        }
        if (m.rank() < static_cast<std::size_t>(k)) {
            // positive-dimensional intersection: xi must be nonconstant
            RationalMatrix ker = m.kernel();
            bool nonconstant = false;
            for (std::size_t r = 0; r < ker.rows(); ++r) {
                Rat acc(0);
                for (int j = 0; j < k; ++j) acc += c[j] * ker.at(r, j);
                if (!is_zero(acc)) nonconstant = true;
            }
            if (!nonconstant) {
                rep.pass = false;
                rep.failure = "objective is constant on the intersection of " + name_of(set);
                return rep;
            }
        }
    }
    return rep;
}

ChamberSet enumerate_chambers_serial(const PolarizedArrangement& pa) {
    ChamberSet cs;
    const std::size_t total = std::size_t{1} << pa.n;
    cs.chambers.resize(total);
    for (std::size_t code = 0; code < total; ++code) cs.chambers[code] = solve_chamber(pa, code);
    for (std::size_t code = 0; code < total; ++code)
        if (cs.chambers[code].feasible && cs.chambers[code].bounded) cs.index_set.push_back(code);
    return cs;
}

ChamberSet enumerate_chambers(const PolarizedArrangement& pa, int threads) {
    if (threads <= 1) return enumerate_chambers_serial(pa);
    ChamberSet cs;
    const std::size_t total = std::size_t{1} << pa.n;
    cs.chambers.resize(total);
    // each sign vector fills its own slot: output is thread-count independent
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::size_t code = 0; code < total; ++code) cs.chambers[code] = solve_chamber(pa, code);
    for (std::size_t code = 0; code < total; ++code)
        if (cs.chambers[code].feasible && cs.chambers[code].bounded) cs.index_set.push_back(code);
    return cs;
}

PolarizedArrangement gale_dual(const PolarizedArrangement& pa) {
    PolarizedArrangement dual;
    dual.n = pa.n;
    dual.v = pa.v.annihilator();
    dual.eta.resize(pa.n);
    dual.xi.resize(pa.n);
    for (int i = 0; i < pa.n; ++i) {
        dual.eta[i] = -pa.xi[i];
        dual.xi[i] = -pa.eta[i];
    }
    return dual;
}

bool arrangement_equal(const PolarizedArrangement& a, const PolarizedArrangement& b) {
    if (a.n != b.n || !(a.v == b.v)) return false;
    RatVec de(a.n), dx(a.n);
    for (int i = 0; i < a.n; ++i) {
        de[i] = a.eta[i] - b.eta[i];
        dx[i] = a.xi[i] - b.xi[i];
    }
    return a.v.contains(de) && a.v.annihilator().contains(dx);
}

FiberedArrangement fibered_from_polarized(const PolarizedArrangement& pa, const ChamberSet& cs) {
    FiberedArrangement fa;
    fa.e_dim = pa.n;
    fa.f_dim = pa.k();
    fa.projection = pa.v.basis();
    for (std::size_t code : cs.index_set) {
        const Chamber& ch = cs.chambers[code];
        RationalMatrix rows(ch.basis.size(), pa.n);
        for (std::size_t r = 0; r < ch.basis.size(); ++r) rows.at(r, ch.basis[r]) = 1;
        Subspace h = Subspace::from_span(rows);
        RationalMatrix comp = fa.projection.multiply(h.basis().transpose());
        if (comp.rank() != fa.f_dim)
            throw CheckError("b_alpha is not a basis for sign code " + std::to_string(code));
        fa.h.push_back(std::move(h));
    }
    return fa;
}

GaleConsistencyReport gale_consistency(const PolarizedArrangement& pa, int threads) {
    GaleConsistencyReport rep;
    const int n = pa.n;
    // hypotheses: V contains no coordinate line and lies in no coordinate
    // hyperplane
    rep.hypotheses = true;
    for (int i = 0; i < n && rep.hypotheses; ++i) {
        RatVec unit(n, Rat(0));
        unit[i] = 1;
        if (pa.v.contains(unit)) {
            rep.hypotheses = false;
            rep.witness = "V contains the coordinate line " + std::to_string(i + 1);
        }
        bool touches = false;
        for (std::size_t r = 0; r < pa.v.dim(); ++r)
            if (!is_zero(pa.v.basis().at(r, i))) touches = true;
        if (!touches && pa.v.dim() > 0) {
            rep.hypotheses = false;
            rep.witness = "V lies in the coordinate hyperplane " + std::to_string(i + 1);
        }
    }

    if (!rep.hypotheses) {
        // reduced hypotheses are flagged, not failed
        rep.pass = true;
        return rep;
    }
    rep.checks_run = true;

    PolarizedArrangement dual = gale_dual(pa);
    ChamberSet cs = enumerate_chambers(pa, threads);
    ChamberSet ds = enumerate_chambers(dual, threads);

    rep.index_sets_equal = cs.index_set == ds.index_set;
    if (!rep.index_sets_equal) rep.witness = "index sets of the arrangement and its dual differ";

    rep.bases_complementary = rep.index_sets_equal;
    for (std::size_t i = 0; i < cs.index_set.size() && rep.bases_complementary; ++i) {
        const Chamber& c = cs.chambers[cs.index_set[i]];
        const Chamber& d = ds.chambers[ds.index_set[i]];
        std::vector<int> complement;
        for (int j = 0; j < n; ++j)
            if (std::find(c.basis.begin(), c.basis.end(), j) == c.basis.end())
                complement.push_back(j);
        if (d.basis != complement) {
            rep.bases_complementary = false;
            rep.witness = "dual basis is not the complement at sign code " +
                          std::to_string(cs.index_set[i]);
        }
    }

    if (rep.index_sets_equal) {
        FiberedArrangement fa = fibered_from_polarized(pa, cs);
        FiberedArrangement fb = fibered_from_polarized(dual, ds);
        DualityCertificate cert;
        cert.pairing = RationalMatrix::identity(n);
        for (std::size_t i = 0; i < cs.index_set.size(); ++i)
            cert.bijection.push_back(static_cast<int>(i));
        DualityReport dr = check_duality(fa, fb, cert);
        rep.arrangements_dual = dr.pass;
        if (!dr.pass) rep.witness = dr.witness;
    }

    // difference vectors p_beta - p_alpha lie in V and affinely span it
    rep.differences_span = true;
    if (!cs.index_set.empty()) {
        RationalMatrix diffs(0, n);
        const Chamber& first = cs.chambers[cs.index_set[0]];
        for (std::size_t i = 1; i < cs.index_set.size(); ++i) {
            const Chamber& c = cs.chambers[cs.index_set[i]];
            RatVec d(n);
            for (int j = 0; j < n; ++j) d[j] = c.vertex[j] - first.vertex[j];
            if (!pa.v.contains(d)) {
                rep.differences_span = false;
                rep.witness = "a vertex difference leaves V";
                break;
            }
            diffs.append_row(d);
        }
        if (rep.differences_span && diffs.rank() != pa.v.dim()) {
            rep.differences_span = false;
            rep.witness = "vertex differences do not span V";
        }
    }
    rep.pass = rep.index_sets_equal && rep.bases_complementary && rep.arrangements_dual &&
               rep.differences_span;
    return rep;
}

}  // namespace koszul
