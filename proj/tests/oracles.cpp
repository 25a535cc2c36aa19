#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace koszul::oracle {

std::vector<Path> all_paths(const Quiver& q, int degree) {
    std::vector<Path> out;
    if (degree == 0) return out;
    std::vector<Path> cur;
    for (int a = 0; a < q.arrow_count(); ++a) cur.push_back(Path{{a}});
    for (int d = 1; d < degree; ++d) {
        std::vector<Path> next;
        for (const Path& p : cur)
            for (int a = 0; a < q.arrow_count(); ++a)
                if (q.arrows[p.arrows.back()].dst == q.arrows[a].src) {
                    Path e = p;
                    e.arrows.push_back(a);
                    next.push_back(std::move(e));
                }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

namespace {

RationalMatrix ideal_span(const QuadraticPresentation& pres, int d,
                          const std::vector<Path>& paths) {
    const Quiver& q = pres.quiver();
    std::map<Path, std::size_t> pos;
    for (std::size_t i = 0; i < paths.size(); ++i) pos[paths[i]] = i;

    RationalMatrix span(0, paths.size());
    for (int i = 0; i + 2 <= d; ++i) {
        std::vector<Path> lefts = i ? all_paths(q, i) : std::vector<Path>{Path{}};
        std::vector<Path> rights = (d - i - 2) ? all_paths(q, d - i - 2) : std::vector<Path>{Path{}};
        for (const auto& [comp, sub] : pres.relation_map()) {
            auto monos = deg2_monomials(q, comp.first, comp.second);
            for (const Path& l : lefts) {
                if (l.degree() && l.dst(q) != comp.first) continue;
                for (const Path& r : rights) {
                    if (r.degree() && r.src(q) != comp.second) continue;
                    for (std::size_t row = 0; row < sub.dim(); ++row) {
                        RatVec v(paths.size(), Rat(0));
                        for (std::size_t m = 0; m < monos.size(); ++m) {
                            if (is_zero(sub.basis().at(row, m))) continue;
                            Path full = l;
                            full.arrows.push_back(monos[m].first);
                            full.arrows.push_back(monos[m].second);
                            for (int a : r.arrows) full.arrows.push_back(a);
                            v[pos.at(full)] += sub.basis().at(row, m);
                        }
                        span.append_row(v);
                    }
                }
            }
        }
    }
    return span;
}

}  // namespace

std::size_t brute_force_dim(const QuadraticPresentation& pres, int d) {
    if (d == 0) return pres.quiver().vertex_count();
    std::vector<Path> paths = all_paths(pres.quiver(), d);
    if (paths.empty()) return 0;
    return paths.size() - ideal_span(pres, d, paths).rank();
}

std::size_t brute_force_component_dim(const QuadraticPresentation& pres, int d, int s, int t) {
    if (d == 0) return s == t ? 1 : 0;
    const Quiver& q = pres.quiver();
    std::vector<Path> paths = all_paths(q, d);
    if (paths.empty()) return 0;
    // quotient dimension restricted to one (s, t) block: the ideal is
    // component-graded, so project both spaces
    RationalMatrix span = ideal_span(pres, d, paths).reduced();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].src(q) == s && paths[i].dst(q) == t) keep.push_back(i);
    RationalMatrix restricted(0, keep.size());
    for (std::size_t r = 0; r < span.rows(); ++r) {
        RatVec v(keep.size());
        for (std::size_t c = 0; c < keep.size(); ++c) v[c] = span.at(r, keep[c]);
        restricted.append_row(v);
    }
    return keep.size() - restricted.rank();
}

QuadraticPresentation random_presentation(std::mt19937& rng, int max_vertices, int max_arrows) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    const int n = nv(rng);
    Quiver q;
    for (int v = 0; v < n; ++v) q.vertices.push_back(std::to_string(v + 1));
    std::uniform_int_distribution<int> na(1, max_arrows);
    std::uniform_int_distribution<int> vx(0, n - 1);
    const int m = na(rng);
    for (int a = 0; a < m; ++a)
        q.arrows.push_back({"a" + std::to_string(a), vx(rng), vx(rng)});

    std::vector<std::vector<RelationTerm>> rels;
    std::uniform_int_distribution<int> nr(0, 3);
    std::uniform_int_distribution<int> coef(-2, 2);
    const int r = nr(rng);
    for (int k = 0; k < r; ++k) {
        std::uniform_int_distribution<int> sv(0, n - 1);
        int s = sv(rng), t = sv(rng);
        auto monos = deg2_monomials(q, s, t);
        if (monos.empty()) continue;
        std::vector<RelationTerm> rel;
        for (auto [a, b] : monos) {
            int c = coef(rng);
            if (c != 0) rel.push_back({Rat(c), Path{{a, b}}});
        }
        if (!rel.empty()) rels.push_back(rel);
    }
    return QuadraticPresentation::make(q, rels);
}

ChamberDecision chamber_oracle(const PolarizedArrangement& pa, const std::vector<int>& sign) {
    const int n = pa.n;
    const int k = pa.k();
    // A s <= b in V-coordinates
    std::vector<RatVec> rows;
    RatVec rhs;
    for (int i = 0; i < n; ++i) {
        RatVec row(k);
        for (int j = 0; j < k; ++j) row[j] = -Rat(sign[i]) * pa.v.basis().at(j, i);
        rows.push_back(std::move(row));
        rhs.push_back(Rat(sign[i]) * pa.eta[i]);
    }
    RatVec c(k, Rat(0));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) c[j] += pa.v.basis().at(j, i) * pa.xi[i];

    auto satisfies = [&](const RatVec& s) {
        for (int i = 0; i < n; ++i) {
            Rat acc(0);
            for (int j = 0; j < k; ++j) acc += rows[i][j] * s[j];
            if (acc > rhs[i]) return false;
        }
        return true;
    };

    ChamberDecision out;
    for (std::size_t code = 0; code < (std::size_t{1} << n) && !out.feasible; ++code) {
        std::vector<int> tight;
        for (int i = 0; i < n; ++i)
            if (code >> i & 1) tight.push_back(i);
        RationalMatrix m(tight.size(), k);
        RatVec b(tight.size());
        for (std::size_t r = 0; r < tight.size(); ++r) {
            for (int j = 0; j < k; ++j) m.at(r, j) = rows[tight[r]][j];
            b[r] = rhs[tight[r]];
        }
        RatVec s;
        if (solve(m, b, s) && satisfies(s)) out.feasible = true;
    }
    if (!out.feasible) return out;

    // recession cone { d : A d <= 0 }: unbounded iff some lineality or
    // extreme-ray direction has c . d > 0
    out.bounded = true;
    bool czero = true;
    for (const Rat& x : c) czero = czero && is_zero(x);
    if (czero || k == 0) return out;
    auto in_cone = [&](const RatVec& d) {
        for (int i = 0; i < n; ++i) {
            Rat acc(0);
            for (int j = 0; j < k; ++j) acc += rows[i][j] * d[j];
            if (sgn(acc) > 0) return false;
        }
        return true;
    };
    auto cdot = [&](const RatVec& d) {
        Rat acc(0);
        for (int j = 0; j < k; ++j) acc += c[j] * d[j];
        return acc;
    };
    // lineality first: A L = 0, so c must vanish there or xi is unbounded
    RationalMatrix full(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) full.at(i, j) = rows[i][j];
    RationalMatrix lin = full.kernel();
    for (std::size_t r = 0; r < lin.rows(); ++r)
        if (!is_zero(cdot(lin.row(r)))) out.bounded = false;
    // extreme-ray candidates: kernel rows of every tight subset (complete
    // once c kills the lineality, since A is constant along it)
    for (std::size_t code = 0; code < (std::size_t{1} << n) && out.bounded; ++code) {
        std::vector<int> tight;
        for (int i = 0; i < n; ++i)
            if (code >> i & 1) tight.push_back(i);
        RationalMatrix m(tight.size(), k);
        for (std::size_t r = 0; r < tight.size(); ++r)
            for (int j = 0; j < k; ++j) m.at(r, j) = rows[tight[r]][j];
        RationalMatrix ker = m.kernel();
        for (std::size_t r = 0; r < ker.rows(); ++r) {
            RatVec d = ker.row(r);
            RatVec nd(k);
            for (int j = 0; j < k; ++j) nd[j] = -d[j];
            if (in_cone(d) && sgn(cdot(d)) > 0) out.bounded = false;
            if (in_cone(nd) && sgn(cdot(nd)) > 0) out.bounded = false;
        }
    }
    return out;
}

PolarizedArrangement random_arrangement(std::mt19937& rng, int n, int k) {
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int attempt = 0; attempt < 400; ++attempt) {
        RationalMatrix rows(k, n);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < n; ++c) rows.at(r, c) = rat_of(coef(rng));
        PolarizedArrangement pa;
        pa.n = n;
        pa.v = Subspace::from_span(rows);
        if (static_cast<int>(pa.v.dim()) != k) continue;
        pa.eta.resize(n);
        pa.xi.resize(n);
        for (int i = 0; i < n; ++i) {
            pa.eta[i] = rat_of(coef(rng), 1 + (i % 2));
            pa.xi[i] = rat_of(coef(rng));
        }
        if (validate_arrangement(pa).pass) return pa;
    }
    throw std::runtime_error("no generic arrangement found");
}

}  // namespace koszul::oracle
