#include "koszul/graded_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace koszul {

namespace {

std::string dims_str(const std::vector<std::size_t>& dims) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) os << ", ";
        os << dims[i];
    }
    os << ")";
    return os.str();
}

}  // namespace

GradedAlgebra GradedAlgebra::build(const QuadraticPresentation& pres, int cap) {
    return build_impl(pres, cap, false);
}

GradedAlgebra GradedAlgebra::build_truncated(const QuadraticPresentation& pres, int cap) {
    return build_impl(pres, cap, true);
}

GradedAlgebra GradedAlgebra::build_impl(const QuadraticPresentation& pres, int cap,
                                        bool allow_truncation) {
    if (cap < 2) throw ContractError("degree cap must be at least 2");
    GradedAlgebra alg;
    alg.pres_ = pres;
    const Quiver& q = pres.quiver();
    const int na = q.arrow_count();

    // degree 0: idempotents
    std::vector<BasisElement> deg0;
    for (int v = 0; v < q.vertex_count(); ++v) deg0.push_back({Path{}, v, v});
    alg.basis_.push_back(std::move(deg0));
    alg.top_degree_ = 0;  // grows as degrees are built

    for (int d = 1; ; ++d) {
        const auto& prev = alg.basis_[d - 1];
        // candidates: (previous basis element, composable arrow)
        std::vector<std::pair<std::size_t, int>> cand;
        for (std::size_t i = 0; i < prev.size(); ++i)
            for (int a = 0; a < na; ++a)
                if (q.arrows[a].src == prev[i].dst) cand.emplace_back(i, a);

        std::map<std::pair<std::size_t, int>, std::size_t> cand_pos;
        for (std::size_t c = 0; c < cand.size(); ++c) cand_pos[cand[c]] = c;

        // image of A_{d-2} (x) W in candidate coordinates
        RationalMatrix relspan(0, cand.size());
        if (d >= 2) {
            const auto& pre2 = alg.basis_[d - 2];
            for (std::size_t j = 0; j < pre2.size(); ++j) {
                int v = pre2[j].dst;
                for (const auto& [comp, sub] : pres.relation_map()) {
                    if (comp.first != v) continue;
                    auto monos = deg2_monomials(q, comp.first, comp.second);
                    for (std::size_t r = 0; r < sub.dim(); ++r) {
                        RatVec vec(cand.size(), Rat(0));
                        for (std::size_t m = 0; m < monos.size(); ++m) {
                            const Rat& c = sub.basis().at(r, m);
                            if (is_zero(c)) continue;
                            auto [a, b] = monos[m];
                            RatVec ja = alg.rmul(d - 2, j, a);
                            for (std::size_t i = 0; i < ja.size(); ++i) {
                                if (is_zero(ja[i])) continue;
                                vec[cand_pos.at({i, b})] += c * ja[i];
                            }
                        }
                        relspan.append_row(vec);
                    }
                }
            }
        }
        RationalMatrix rref = relspan.reduced();
        std::vector<bool> is_pivot(cand.size(), false);
        std::vector<std::size_t> pivot_row(cand.size(), 0);
        for (std::size_t r = 0; r < rref.rows(); ++r)
            for (std::size_t c = 0; c < cand.size(); ++c)
                if (!is_zero(rref.at(r, c))) {
                    is_pivot[c] = true;
                    pivot_row[c] = r;
                    break;
                }

        std::vector<BasisElement> deg;
        std::vector<std::size_t> basis_pos(cand.size(), 0);
        for (std::size_t c = 0; c < cand.size(); ++c) {
            if (is_pivot[c]) continue;
            basis_pos[c] = deg.size();
            const BasisElement& pre = prev[cand[c].first];
            Path p = pre.path;
            p.arrows.push_back(cand[c].second);
            deg.push_back({std::move(p), pre.src, q.arrows[cand[c].second].dst});
        }

        // structure constants A_{d-1} x M -> A_d
        std::vector<RatVec> step(prev.size() * na);
        for (std::size_t c = 0; c < cand.size(); ++c) {
            RatVec expr(deg.size(), Rat(0));
            if (is_pivot[c]) {
                const std::size_t r = pivot_row[c];
                for (std::size_t f = 0; f < cand.size(); ++f)
                    if (!is_pivot[f] && !is_zero(rref.at(r, f)))
                        expr[basis_pos[f]] = -rref.at(r, f);
            } else {
                expr[basis_pos[c]] = 1;
            }
            step[cand[c].first * na + cand[c].second] = std::move(expr);
        }
        alg.rmul_.push_back(std::move(step));

        if (deg.empty()) {
            alg.top_degree_ = d - 1;
            break;
        }
        alg.basis_.push_back(std::move(deg));
        alg.top_degree_ = d;
        if (d == cap) {
            if (allow_truncation) {
                alg.truncated_ = true;
                break;
            }
            throw NotFiniteDimensional(
                "algebra not finite-dimensional within degree cap " + std::to_string(cap) +
                    "; dimension trace " + dims_str(alg.dims()),
                alg.dims());
        }
    }
    return alg;
}

std::size_t GradedAlgebra::total_dim() const {
    std::size_t t = 0;
    for (const auto& b : basis_) t += b.size();
    return t;
}

std::vector<std::size_t> GradedAlgebra::dims() const {
    std::vector<std::size_t> out;
    for (const auto& b : basis_) out.push_back(b.size());
    return out;
}

std::vector<std::size_t> GradedAlgebra::component(int d, int src, int dst) const {
    std::vector<std::size_t> out;
    if (d < 0 || d > top_degree_) return out;
    for (std::size_t i = 0; i < basis_[d].size(); ++i)
        if (basis_[d][i].src == src && basis_[d][i].dst == dst) out.push_back(i);
    return out;
}

std::vector<std::size_t> GradedAlgebra::component_src(int d, int src) const {
    std::vector<std::size_t> out;
    if (d < 0 || d > top_degree_) return out;
    for (std::size_t i = 0; i < basis_[d].size(); ++i)
        if (basis_[d][i].src == src) out.push_back(i);
    return out;
}

RatVec GradedAlgebra::rmul(int d, std::size_t i, int arrow) const {
    const std::size_t next = dim(d + 1);
    const int na = quiver().arrow_count();
    if (d < 0 || d > top_degree_ || static_cast<int>(d) >= static_cast<int>(rmul_.size()))
        return RatVec(next, Rat(0));
    const RatVec& v = rmul_[d][i * na + arrow];
    if (v.empty()) return RatVec(next, Rat(0));
    return v;
}

RatVec GradedAlgebra::reduce_path(const Path& p) const {
    if (!p.composable(quiver())) throw ContractError("non-composable path");
    const int d = p.degree();
    if (d > top_degree_) return RatVec(0);
    if (d == 0) throw ContractError("reduce_path needs a positive-degree path");
    int v = p.src(quiver());
    RatVec cur(dim(0), Rat(0));
    cur[static_cast<std::size_t>(v)] = 1;
    int deg = 0;
    for (int a : p.arrows) {
        RatVec next(dim(deg + 1), Rat(0));
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (is_zero(cur[i])) continue;
            RatVec step = rmul(deg, i, a);
            for (std::size_t j = 0; j < step.size(); ++j) next[j] += cur[i] * step[j];
        }
        cur = std::move(next);
        ++deg;
        if (cur.empty()) return RatVec(0);
    }
    return cur;
}

RatVec GradedAlgebra::multiply(int d1, const RatVec& v1, int d2, const RatVec& v2) const {
    const int d = d1 + d2;
    RatVec out(dim(d), Rat(0));
    if (d > top_degree_) return out;
    if (d2 == 0) {
        // degree-0 factors are idempotent combinations: scale components
        for (std::size_t i = 0; i < v1.size(); ++i) {
            if (is_zero(v1[i])) continue;
            int dst = basis_[d1][i].dst;
            out[i] = v1[i] * v2[static_cast<std::size_t>(dst)];
        }
        return out;
    }
    for (std::size_t j = 0; j < v2.size(); ++j) {
        if (is_zero(v2[j])) continue;
        // walk v1 through the arrows of the reduced monomial j
        RatVec cur = v1;
        int deg = d1;
        if (d1 == 0) {
            // select the component starting at the monomial's source
            cur.assign(dim(0), Rat(0));
            cur[static_cast<std::size_t>(basis_[d2][j].src)] =
                v1[static_cast<std::size_t>(basis_[d2][j].src)];
        }
        for (int a : basis_[d2][j].path.arrows) {
            RatVec next(dim(deg + 1), Rat(0));
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (is_zero(cur[i])) continue;
                RatVec step = rmul(deg, i, a);
                for (std::size_t k = 0; k < step.size(); ++k) next[k] += cur[i] * step[k];
            }
            cur = std::move(next);
            ++deg;
        }
        for (std::size_t k = 0; k < cur.size(); ++k) out[k] += v2[j] * cur[k];
    }
    return out;
}

Subspace GradedAlgebra::center_degree(int d) const {
    if (d < 0) throw ContractError("center degree out of range");
    if (d > top_degree_) return Subspace::zero(0);  // A_d = 0
    const Quiver& q = quiver();
    // commuting with idempotents forces z diagonal
    std::vector<std::size_t> diag;
    for (std::size_t i = 0; i < basis_[d].size(); ++i)
        if (basis_[d][i].src == basis_[d][i].dst) diag.push_back(i);

    // z a = a z for every arrow a, solved in A_{d+1}
    RationalMatrix sys(0, diag.size());
    const std::size_t next = dim(d + 1);
    if (next > 0) {
        for (int a = 0; a < q.arrow_count(); ++a) {
            std::vector<RatVec> cols;
            for (std::size_t c = 0; c < diag.size(); ++c) {
                std::size_t i = diag[c];
                RatVec za(next, Rat(0)), az(next, Rat(0));
                if (basis_[d][i].src == q.arrows[a].src) za = rmul(d, i, a);
                if (basis_[d][i].src == q.arrows[a].dst) {
                    Path p;
                    p.arrows.push_back(a);
                    for (int x : basis_[d][i].path.arrows) p.arrows.push_back(x);
                    RatVec red = reduce_path(p);
                    if (!red.empty()) az = red;
                }
                RatVec col(next);
                for (std::size_t r = 0; r < next; ++r) col[r] = za[r] - az[r];
                cols.push_back(std::move(col));
            }
            for (std::size_t r = 0; r < next; ++r) {
                RatVec row(diag.size());
                bool nonzero = false;
                for (std::size_t c = 0; c < diag.size(); ++c) {
                    row[c] = cols[c][r];
                    nonzero = nonzero || !is_zero(row[c]);
                }
                if (nonzero) sys.append_row(row);
            }
        }
    }
    RationalMatrix ker = sys.rows() ? sys.kernel() : RationalMatrix::identity(diag.size());
    // embed into full A_d coordinates
    RationalMatrix rows(ker.rows(), basis_[d].size());
    for (std::size_t r = 0; r < ker.rows(); ++r)
        for (std::size_t c = 0; c < diag.size(); ++c) rows.at(r, diag[c]) = ker.at(r, c);
    return Subspace::from_span(rows);
}

}  // namespace koszul
