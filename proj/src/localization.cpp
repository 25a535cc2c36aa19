#include "koszul/localization.hpp"

#include <algorithm>
#include <numeric>

namespace koszul {

namespace {

std::vector<std::size_t> nonpivot_columns(const Subspace& s) {
    std::vector<bool> pivot(s.ambient(), false);
    for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t c = 0; c < s.ambient(); ++c)
            if (!is_zero(s.basis().at(r, c))) {
                pivot[c] = true;
                break;
            }
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < s.ambient(); ++c)
        if (!pivot[c]) out.push_back(c);
    return out;
}

RatVec restrict_to(const RatVec& full, const std::vector<std::size_t>& idx) {
    RatVec out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = full[idx[k]];
    return out;
}

RatVec embed_from(const RatVec& small, const std::vector<std::size_t>& idx, std::size_t n) {
    RatVec out(n, Rat(0));
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = small[k];
    return out;
}

RatVec restrict_first(const RatVec& v, std::size_t n) {
    return RatVec(v.begin(), v.begin() + static_cast<long>(n));
}

// product of polynomials given as coefficient vectors over the canonical
// exponent-vector bases of Sym^{ka} U and Sym^{kb} U
RatVec poly_mul(std::size_t u_dim, const RatVec& a, int ka, const RatVec& b, int kb) {
    auto ea = exponent_vectors(u_dim, ka);
    auto eb = exponent_vectors(u_dim, kb);
    auto ec = exponent_vectors(u_dim, ka + kb);
    auto pos = [&](const std::vector<int>& e) {
        return static_cast<std::size_t>(
            std::find(ec.begin(), ec.end(), e) - ec.begin());
    };
    RatVec out(ec.size(), Rat(0));
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < eb.size(); ++j) {
            if (is_zero(b[j])) continue;
            std::vector<int> e = ea[i];
            for (std::size_t t = 0; t < u_dim; ++t) e[t] += eb[j][t];
            out[pos(e)] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

RatVec DeformedStandard::reduce(int d, const RatVec& ambient_vec) const {
    RatVec res = killed[d].residue(ambient_vec);
    return restrict_to(res, nonpivot_columns(killed[d]));
}

DeformedStandard deformed_standard(const DeformedAlgebra& da, const OrderedPresentation& op,
                                   int alpha, bool require_flat) {
    const int cap = da.cap();
    const Quiver& q = da.presentation().pres.quiver();
    const std::size_t ud = da.u_dim();
    DeformedStandard v;
    v.alpha = alpha;
    v.cap = cap;
    std::vector<int> eps = op.order.epsilon_support(alpha);
    auto in_eps = [&](int vert) {
        return std::find(eps.begin(), eps.end(), vert) != eps.end();
    };

    for (int d = 0; d <= cap; ++d) v.ambient.push_back(da.component_src(d, alpha));

    std::vector<RationalMatrix> span(cap + 1);
    for (int d = 0; d <= cap; ++d) span[d] = RationalMatrix(0, v.ambient[d].size());
    for (int d = 1; d <= cap; ++d)
        for (std::size_t k = 0; k < v.ambient[d].size(); ++k)
            if (in_eps(da.basis(d)[v.ambient[d][k]].dst)) {
                RatVec e(v.ambient[d].size(), Rat(0));
                e[k] = 1;
                span[d].append_row(e);
            }
    for (int d = 0; d <= cap; ++d) {
        span[d] = span[d].reduced();
        for (std::size_t r = 0; r < span[d].rows(); ++r) {
            RatVec full = embed_from(span[d].row(r), v.ambient[d], da.dim(d));
            if (d + 1 <= cap)
                for (int a = 0; a < q.arrow_count(); ++a) {
                    RatVec img(da.dim(d + 1), Rat(0));
                    bool nz = false;
                    for (std::size_t i = 0; i < full.size(); ++i) {
                        if (is_zero(full[i])) continue;
                        RatVec step = da.rmul_arrow(d, i, a);
                        for (std::size_t l = 0; l < step.size(); ++l) {
                            img[l] += full[i] * step[l];
                            nz = nz || !is_zero(step[l]);
                        }
                    }
                    if (nz) span[d + 1].append_row(restrict_to(img, v.ambient[d + 1]));
                }
            if (d + 2 <= cap)
                for (std::size_t j = 0; j < ud; ++j) {
                    RatVec img(da.dim(d + 2), Rat(0));
                    for (std::size_t i = 0; i < full.size(); ++i) {
                        if (is_zero(full[i])) continue;
                        RatVec step = da.rmul_u(d, i, j);
                        for (std::size_t l = 0; l < step.size(); ++l) img[l] += full[i] * step[l];
                    }
                    span[d + 2].append_row(restrict_to(img, v.ambient[d + 2]));
                }
        }
    }
    for (int d = 0; d <= cap; ++d) {
        v.killed.push_back(Subspace::from_span(span[d]));
        v.dims.push_back(v.ambient[d].size() - v.killed[d].dim());
    }

    GradedRightModule classical = standard_module(op, da.classical(), alpha);
    for (int d = 0; d <= cap; ++d) {
        std::size_t expect = 0;
        for (int k = 0; 2 * k <= d; ++k)
            expect += classical.dim(d - 2 * k) * exponent_vectors(ud, k).size();
        v.expected.push_back(expect);
    }
    v.flat = v.dims == v.expected;
    if (require_flat && !v.flat)
        throw CheckError("deformed standard module at vertex " + q.vertices[alpha] +
                         " is not a flat deformation (rank drop)");
    return v;
}

RatVec central_character_of(const DeformedAlgebra& da, const DeformedStandard& v, int d,
                            const RatVec& zeta) {
    const std::size_t ud = da.u_dim();
    const int alpha = v.alpha;
    auto exps = (d % 2 == 0) ? exponent_vectors(ud, d / 2) : std::vector<std::vector<int>>{};

    auto act = [&](int e, const RatVec& cls_ambient, int dd, const RatVec& w) {
        RatVec full = embed_from(cls_ambient, v.ambient[e], da.dim(e));
        RatVec prod = da.multiply(e, full, dd, w);
        return v.reduce(e + dd, restrict_to(prod, v.ambient[e + dd]));
    };

    // h from the action on the degree-0 generator e_alpha
    RatVec gen(v.ambient[0].size(), Rat(0));
    gen[0] = 1;  // the single degree-0 basis vector of e_alpha A~
    RatVec target = act(0, gen, d, zeta);
    RationalMatrix cols(v.dim(d), exps.size());
    for (std::size_t s = 0; s < exps.size(); ++s) {
        RatVec us = da.reduce_monomial(alpha, Path{}, exps[s]);
        RatVec cls = v.reduce(d, restrict_to(us, v.ambient[d]));
        for (std::size_t r = 0; r < cls.size(); ++r) cols.at(r, s) = cls[r];
    }
    RatVec h;
    if (!solve(cols, target, h))
        throw CheckError("central element does not act on the standard generator by Sym U");

    // the action must be the same scalar on every basis vector
    for (int e = 0; e + d <= v.cap; ++e) {
        auto reps = nonpivot_columns(v.killed[e]);
        for (std::size_t r = 0; r < reps.size(); ++r) {
            // ambient representative of the r-th class basis vector
            RatVec cls(v.ambient[e].size(), Rat(0));
            cls[reps[r]] = 1;
            RatVec lhs = act(e, cls, d, zeta);
            RatVec rhs(v.dim(e + d), Rat(0));
            for (std::size_t s = 0; s < exps.size(); ++s) {
                if (is_zero(h[s])) continue;
                RatVec full = embed_from(cls, v.ambient[e], da.dim(e));
                RatVec us = da.multiply_monomial(e, full, Path{}, exps[s]);
                RatVec mv = v.reduce(e + d, restrict_to(us, v.ambient[e + d]));
                for (std::size_t l = 0; l < rhs.size(); ++l) rhs[l] += h[s] * mv[l];
            }
            if (lhs != rhs)
                throw CheckError("central element acts non-scalarly on a deformed standard");
        }
    }
    return h;
}

Subspace deformed_center(const DeformedAlgebra& da, int d) {
    if (d + 1 > da.cap())
        throw CapacityError("deformed center needs degree " + std::to_string(d + 1) +
                            " but the algebra is built to " + std::to_string(da.cap()));
    const Quiver& q = da.presentation().pres.quiver();
    std::vector<std::size_t> diag;
    for (std::size_t i = 0; i < da.dim(d); ++i)
        if (da.basis(d)[i].src == da.basis(d)[i].dst) diag.push_back(i);

    // locate arrows inside A~_1
    std::vector<RatVec> arrow_vec;
    for (int a = 0; a < q.arrow_count(); ++a) {
        RatVec e(da.dim(1), Rat(0));
        for (std::size_t i = 0; i < da.dim(1); ++i)
            if (da.basis(1)[i].path.arrows == std::vector<int>{a}) e[i] = 1;
        arrow_vec.push_back(std::move(e));
    }

    RationalMatrix sys(0, diag.size());
    for (int a = 0; a < q.arrow_count(); ++a) {
        std::vector<RatVec> cols;
        for (std::size_t c = 0; c < diag.size(); ++c) {
            std::size_t i = diag[c];
            int g = da.basis(d)[i].src;
            RatVec za(da.dim(d + 1), Rat(0)), az(da.dim(d + 1), Rat(0));
            if (g == q.arrows[a].src) za = da.rmul_arrow(d, i, a);
            if (g == q.arrows[a].dst) {
                RatVec unit(da.dim(d), Rat(0));
                unit[i] = 1;
                az = da.multiply(1, arrow_vec[a], d, unit);
            }
            RatVec col(da.dim(d + 1));
            for (std::size_t r = 0; r < col.size(); ++r) col[r] = za[r] - az[r];
            cols.push_back(std::move(col));
        }
        for (std::size_t r = 0; r < da.dim(d + 1); ++r) {
            RatVec row(diag.size());
            bool nz = false;
            for (std::size_t c = 0; c < diag.size(); ++c) {
                row[c] = cols[c][r];
                nz = nz || !is_zero(row[c]);
            }
            if (nz) sys.append_row(row);
        }
    }
    RationalMatrix ker = sys.rows() ? sys.kernel() : RationalMatrix::identity(diag.size());
    RationalMatrix rows(ker.rows(), da.dim(d));
    for (std::size_t r = 0; r < ker.rows(); ++r)
        for (std::size_t c = 0; c < diag.size(); ++c) rows.at(r, diag[c]) = ker.at(r, c);
    return Subspace::from_span(rows);
}

// ---------------------------------------------------------------------------

FiberedArrangement fibered(const LocalizationAlgebra& la) {
    FiberedArrangement fa;
    fa.e_dim = la.z_dims.size() > 2 ? la.z_dims[2] : 0;
    fa.f_dim = la.u_dim;
    fa.projection = la.u_inclusion.transpose();
    if (fa.projection.rank() != fa.f_dim)
        throw CheckError("localization projection E -> F is not surjective");
    for (std::size_t a = 0; a < la.index_count; ++a) {
        Subspace h = Subspace::from_span(la.h[a][2]);
        if (h.dim() != fa.f_dim)
            throw CheckError("H_alpha has the wrong dimension at index " + std::to_string(a));
        RationalMatrix comp = fa.projection.multiply(h.basis().transpose());
        if (comp.rank() != fa.f_dim)
            throw CheckError("H_alpha fails the isomorphic-projection test at index " +
                             std::to_string(a));
        fa.h.push_back(std::move(h));
    }
    return fa;
}

FiberedArrangement dual_arrangement(const FiberedArrangement& fa) {
    FiberedArrangement dual;
    dual.e_dim = fa.e_dim;
    dual.f_dim = fa.e_dim - fa.f_dim;
    dual.projection = fa.kernel().basis();
    for (const Subspace& h : fa.h) dual.h.push_back(h.annihilator());
    return dual;
}

DualityReport check_duality(const LocalizationAlgebra& za, const LocalizationAlgebra& zb,
                            const DualityCertificate& cert, const std::optional<JFamily>& ja,
                            const std::optional<JFamily>& jb) {
    return check_duality(fibered(za), fibered(zb), cert, ja, jb);
}

DualityReport check_duality(const FiberedArrangement& fa, const FiberedArrangement& fb,
                            const DualityCertificate& cert, const std::optional<JFamily>& ja,
                            const std::optional<JFamily>& jb) {
    DualityReport rep;
    if (cert.pairing.rows() != fa.e_dim || cert.pairing.cols() != fb.e_dim ||
        fa.e_dim != fb.e_dim || cert.pairing.rank() != fa.e_dim) {
        rep.witness = "pairing is not perfect";
        return rep;
    }
    auto perp = [&](const Subspace& sa, const Subspace& sb) {
        for (std::size_t i = 0; i < sa.dim(); ++i) {
            RatVec gw = cert.pairing.apply_left(sa.basis().row(i));
            for (std::size_t j = 0; j < sb.dim(); ++j) {
                Rat acc(0);
                for (std::size_t c = 0; c < gw.size(); ++c)
                    acc += gw[c] * sb.basis().at(j, c);
                if (!is_zero(acc)) return false;
            }
        }
        return true;
    };
    Subspace ka = fa.kernel(), kb = fb.kernel();
    rep.kernels_perpendicular = ka.dim() + kb.dim() == fa.e_dim && perp(ka, kb);
    if (!rep.kernels_perpendicular) rep.witness = "projection kernels are not mutual perps";

    rep.subspaces_perpendicular = fa.h.size() == fb.h.size();
    for (std::size_t a = 0; a < fa.h.size() && rep.subspaces_perpendicular; ++a) {
        int b = cert.bijection[a];
        if (fa.h[a].dim() + fb.h[b].dim() != fa.e_dim || !perp(fa.h[a], fb.h[b])) {
            rep.subspaces_perpendicular = false;
            rep.witness = "H_" + std::to_string(a) + " is not perpendicular to its partner";
        }
    }
    if (ja && jb) {
        for (std::size_t a = 0; a < fa.h.size() && rep.j_transpose; ++a)
            for (std::size_t b = 0; b < fa.h.size() && rep.j_transpose; ++b) {
                const RationalMatrix& lhs =
                    jb->j[cert.bijection[a]][cert.bijection[b]];
                RationalMatrix rhs = ja->j[b][a].transpose();
                if (!(lhs == rhs)) {
                    rep.j_transpose = false;
                    rep.witness = "j-transpose identity fails at (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ")";
                }
            }
    }
    rep.pass = rep.kernels_perpendicular && rep.subspaces_perpendicular && rep.j_transpose;
    return rep;
}

// ---------------------------------------------------------------------------

QuiverLocalization localization_algebra(const OrderedPresentation& op,
                                        const LocalizationOptions& opt) {
    return localization_algebra(op, universal_deformation(op.pres), opt);
}

QuiverLocalization localization_algebra(const OrderedPresentation& op,
                                        const DeformedPresentation& def,
                                        const LocalizationOptions& opt) {
    QuiverLocalization ql;
    ql.op = op;
    ql.alg = GradedAlgebra::build(op.pres);
    ql.def = def;
    if (opt.require_checks) {
        auto cert = standard_koszul_check(op, ql.alg);
        if (!cert.pass)
            throw CheckError("standard-Koszul certificate failed: " + cert.failure);
    }
    ql.z_cap = opt.z_cap < 0 ? ql.alg.top_degree() + 2 : opt.z_cap;
    ql.da = DeformedAlgebra::build(def, ql.z_cap + 1);
    for (int d = 0; d <= ql.z_cap; ++d) ql.z.push_back(deformed_center(ql.da, d));
    ql.classical_center2 = ql.alg.center_degree(2);

    const int n = op.pres.quiver().vertex_count();
    const std::size_t ud = def.base.u_dim;
    for (int a = 0; a < n; ++a) ql.standards.push_back(deformed_standard(ql.da, op, a));

    LocalizationAlgebra& la = ql.la;
    la.u_dim = ud;
    la.index_count = n;
    la.cap = ql.z_cap;
    la.label = "quiver";
    for (int d = 0; d <= ql.z_cap; ++d) la.z_dims.push_back(ql.z[d].dim());
    la.h.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int d = 0; d <= ql.z_cap; ++d) {
            auto exps = (d % 2 == 0) ? exponent_vectors(ud, d / 2)
                                     : std::vector<std::vector<int>>{};
            RationalMatrix m(exps.size(), ql.z[d].dim());
            for (std::size_t i = 0; i < ql.z[d].dim(); ++i) {
                RatVec h = central_character_of(ql.da, ql.standards[a], d,
                                                ql.z[d].basis().row(i));
                for (std::size_t r = 0; r < h.size(); ++r) m.at(r, i) = h[r];
            }
            la.h[a].push_back(std::move(m));
        }
    }

    // U -> Z_2 and the u-action on the center
    la.u_inclusion = RationalMatrix(la.z_dims.size() > 2 ? la.z_dims[2] : 0, ud);
    for (std::size_t j = 0; j < ud; ++j) {
        std::vector<int> ej(ud, 0);
        ej[j] = 1;
        RatVec img(ql.da.dim(2), Rat(0));
        for (int v = 0; v < n; ++v) {
            RatVec part = ql.da.reduce_monomial(v, Path{}, ej);
            for (std::size_t l = 0; l < img.size(); ++l) img[l] += part[l];
        }
        RatVec coords = ql.z[2].coordinates(img);
        for (std::size_t r = 0; r < coords.size(); ++r) la.u_inclusion.at(r, j) = coords[r];
    }
    la.u_action.resize(ql.z_cap + 1);
    for (int d = 0; d + 2 <= ql.z_cap; ++d) {
        la.u_action[d].resize(ql.z[d].dim() * ud);
        for (std::size_t i = 0; i < ql.z[d].dim(); ++i)
            for (std::size_t j = 0; j < ud; ++j) {
                std::vector<int> ej(ud, 0);
                ej[j] = 1;
                RatVec prod =
                    ql.da.multiply_monomial(d, ql.z[d].basis().row(i), Path{}, ej);
                la.u_action[d][i * ud + j] = ql.z[d + 2].coordinates(prod);
            }
    }
    la.products_known = true;

    // multiplicativity of every character on basis products (S-algebra map)
    for (int d1 = 0; d1 <= ql.z_cap; ++d1)
        for (int d2 = d1; d1 + d2 <= ql.z_cap; ++d2)
            for (std::size_t i = 0; i < ql.z[d1].dim(); ++i)
                for (std::size_t j = 0; j < ql.z[d2].dim(); ++j) {
                    RatVec prod = ql.da.multiply(d1, ql.z[d1].basis().row(i), d2,
                                                 ql.z[d2].basis().row(j));
                    RatVec coords = ql.z[d1 + d2].coordinates(prod);
                    for (int a = 0; a < n; ++a) {
                        RatVec lhs = la.h[a][d1 + d2].apply(coords);
                        RatVec rhs(lhs.size(), Rat(0));
                        if (d1 % 2 == 0 && d2 % 2 == 0) {
                            RatVec hi(la.h[a][d1].rows()), hj(la.h[a][d2].rows());
                            for (std::size_t r = 0; r < hi.size(); ++r)
                                hi[r] = la.h[a][d1].at(r, i);
                            for (std::size_t r = 0; r < hj.size(); ++r)
                                hj[r] = la.h[a][d2].at(r, j);
                            rhs = poly_mul(ud, hi, d1 / 2, hj, d2 / 2);
                        }
                        if (lhs != rhs)
                            throw CheckError("character is not multiplicative on the center");
                    }
                }

    // pi2: u -> 0 on the degree-2 center, in A_2 coordinates
    ql.pi2 = RationalMatrix(ql.alg.dim(2), ql.z[2].dim());
    for (std::size_t i = 0; i < ql.z[2].dim(); ++i)
        for (std::size_t r = 0; r < ql.alg.dim(2); ++r)
            ql.pi2.at(r, i) = ql.z[2].basis().at(i, r);  // classical block comes first
    return ql;
}

RationalMatrix character_j(const QuiverLocalization& ql, int alpha, int beta) {
    const Subspace& zc = ql.classical_center2;
    RationalMatrix diff(ql.la.h[alpha][2].rows(), ql.la.h[alpha][2].cols());
    for (std::size_t r = 0; r < diff.rows(); ++r)
        for (std::size_t c = 0; c < diff.cols(); ++c)
            diff.at(r, c) = ql.la.h[beta][2].at(r, c) - ql.la.h[alpha][2].at(r, c);

    // lift-independence: the difference must vanish on ker(pi2)
    RationalMatrix ker = ql.pi2.kernel();
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        RatVec img = diff.apply(ker.row(r));
        for (const Rat& x : img)
            if (!is_zero(x)) throw CheckError("j map depends on the choice of central lift");
    }

    RationalMatrix j(ql.la.u_dim, zc.dim());
    for (std::size_t c = 0; c < zc.dim(); ++c) {
        RatVec lift;
        if (!solve(ql.pi2, zc.basis().row(c), lift))
            throw CheckError("deformation is not flexible: a degree-2 central element "
                             "of A does not lift");
        RatVec val = diff.apply(lift);
        for (std::size_t r = 0; r < ql.la.u_dim; ++r) j.at(r, c) = val[r];
    }
    return j;
}

UpDownLift up_down_lift(const QuiverLocalization& ql, const RatVec& z_in_a2) {
    const Quiver& q = ql.op.pres.quiver();
    const int n = q.vertex_count();
    UpDownLift lift;
    lift.nu.assign(ql.da.dim(2), Rat(0));
    for (int a = 0; a < n; ++a) {
        std::vector<int> eps = ql.op.order.epsilon_support(a);
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < q.arrow_count(); ++u) {
            if (q.arrows[u].src != a) continue;
            if (std::find(eps.begin(), eps.end(), q.arrows[u].dst) == eps.end()) continue;
            for (int w = 0; w < q.arrow_count(); ++w)
                if (q.arrows[w].src == q.arrows[u].dst && q.arrows[w].dst == a)
                    pairs.emplace_back(u, w);
        }
        auto loops = ql.alg.component(2, a, a);
        RationalMatrix cols(loops.size(), pairs.size());
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            RatVec red = ql.alg.reduce_path(Path{{pairs[p].first, pairs[p].second}});
            if (!red.empty())
                for (std::size_t l = 0; l < loops.size(); ++l) cols.at(l, p) = red[loops[l]];
        }
        RatVec target(loops.size());
        for (std::size_t l = 0; l < loops.size(); ++l) target[l] = z_in_a2[loops[l]];
        RatVec mu;
        if (!solve(cols, target, mu))
            throw CheckError("no up-down expression at vertex " + q.vertices[a] +
                             " (Lemma-nu-type failure)");
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (is_zero(mu[p])) continue;
            RatVec red = ql.da.reduce_monomial(a, Path{{pairs[p].first, pairs[p].second}},
                                               std::vector<int>(ql.la.u_dim, 0));
            for (std::size_t l = 0; l < lift.nu.size(); ++l) lift.nu[l] += mu[p] * red[l];
        }
        lift.mu.push_back(std::move(mu));
        lift.pairs.push_back(std::move(pairs));
    }
    return lift;
}

namespace {

// quotient of the center by (u - chi(u)) through the cap; returns the
// quotient dimension and the induced character matrix to Q^{index}
std::pair<std::size_t, RationalMatrix> specialized_character(const QuiverLocalization& ql,
                                                             const RatVec& chi) {
    const std::size_t ud = ql.la.u_dim;
    const int cap = ql.z_cap;
    std::vector<std::size_t> offset(cap + 1, 0);
    std::size_t total = 0;
    for (int d = cap; d >= 0; --d) {  // degree-descending columns
        offset[d] = total;
        total += ql.z[d].dim();
    }
    RationalMatrix span(0, total);
    for (int d = 0; d + 2 <= cap; ++d)
        for (std::size_t i = 0; i < ql.z[d].dim(); ++i)
            for (std::size_t j = 0; j < ud; ++j) {
                RatVec row(total, Rat(0));
                const RatVec& up = ql.la.u_action[d][i * ud + j];
                for (std::size_t l = 0; l < up.size(); ++l) row[offset[d + 2] + l] = up[l];
                row[offset[d] + i] -= chi[j];
                span.append_row(row);
            }
    RationalMatrix rref = span.reduced();
    std::vector<bool> pivot(total, false);
    for (std::size_t r = 0; r < rref.rows(); ++r)
        for (std::size_t c = 0; c < total; ++c)
            if (!is_zero(rref.at(r, c))) {
                pivot[c] = true;
                break;
            }
    // induced characters: evaluate h_alpha at chi on each center basis vector
    RationalMatrix hmat(ql.la.index_count, total);
    for (int d = 0; d <= cap; ++d) {
        auto exps = (d % 2 == 0) ? exponent_vectors(ud, d / 2)
                                 : std::vector<std::vector<int>>{};
        std::vector<Rat> evals(exps.size(), Rat(1));
        for (std::size_t s = 0; s < exps.size(); ++s)
            for (std::size_t j = 0; j < ud; ++j)
                for (int rep = 0; rep < exps[s][j]; ++rep) evals[s] *= chi[j];
        for (std::size_t a = 0; a < ql.la.index_count; ++a)
            for (std::size_t i = 0; i < ql.z[d].dim(); ++i) {
                Rat acc(0);
                for (std::size_t s = 0; s < exps.size(); ++s)
                    acc += evals[s] * ql.la.h[a][d].at(s, i);
                hmat.at(a, offset[d] + i) = acc;
            }
    }
    std::size_t q = 0;
    std::vector<RatVec> cols;
    for (std::size_t c = 0; c < total; ++c)
        if (!pivot[c]) {
            ++q;
            RatVec col(ql.la.index_count);
            for (std::size_t a = 0; a < ql.la.index_count; ++a) col[a] = hmat.at(a, c);
            cols.push_back(std::move(col));
        }
    RationalMatrix m(ql.la.index_count, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t a = 0; a < ql.la.index_count; ++a) m.at(a, c) = cols[c][a];
    return {q, m};
}

}  // namespace

DiagnosticsReport diagnostics(const QuiverLocalization& ql, bool opposite_iso_flag,
                              const std::vector<long>& seed_primes) {
    DiagnosticsReport rep;
    rep.cap = ql.z_cap;

    // flexible: every degree-2 central element of A lifts
    rep.flexible = true;
    for (std::size_t c = 0; c < ql.classical_center2.dim(); ++c) {
        RatVec lift;
        if (!solve(ql.pi2, ql.classical_center2.basis().row(c), lift)) rep.flexible = false;
    }

    // malleable: the characters are pairwise distinct (needs A = A^op)
    rep.malleable_applicable = opposite_iso_flag;
    if (opposite_iso_flag) {
        bool all_distinct = true;
        bool any_tie_to_cap = false;
        for (std::size_t a = 0; a < ql.la.index_count; ++a)
            for (std::size_t b = a + 1; b < ql.la.index_count; ++b) {
                bool differ = false;
                for (int d = 0; d <= ql.z_cap && !differ; ++d)
                    if (!(ql.la.h[a][d] == ql.la.h[b][d])) differ = true;
                if (!differ) {
                    all_distinct = false;
                    any_tie_to_cap = true;
                }
            }
        rep.malleable = all_distinct ? TriState::yes
                                     : (any_tie_to_cap ? TriState::indeterminate_to_cap
                                                       : TriState::no);
    }

    // strong: bijectivity of the specialized character at a fixed point with
    // pairwise-distinct prime coordinates; the window shifts on retry
    std::vector<long> primes = seed_primes;
    if (primes.empty())
        primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    for (int attempt = 0; attempt < 3; ++attempt) {
        RatVec chi;
        for (std::size_t j = 0; j < ql.la.u_dim; ++j)
            chi.push_back(Rat(primes[(j + attempt) % primes.size()]));
        auto [q, induced] = specialized_character(ql, chi);
        rep.generic_fiber_dim = q;
        rep.point_used = chi;
        rep.strong_at_point = q == ql.la.index_count && induced.rank() == ql.la.index_count;
        if (rep.strong_at_point) break;
    }

    // free: generic fiber of rank |I| plus nonnegative Hilbert numerator
    // p(t) = Hilb_Z(t) (1 - t^2)^u with p(1) = |I|, through the cap
    std::vector<Rat> p(ql.z_cap + 1, Rat(0));
    for (int d = 0; d <= ql.z_cap; ++d) p[d] = Rat(static_cast<long>(ql.la.z_dims[d]));
    for (std::size_t j = 0; j < ql.la.u_dim; ++j) {
        for (int d = ql.z_cap; d >= 2; --d) p[d] -= p[d - 2];
    }
    rep.hilbert_numerator = p;
    bool nonneg = true;
    Rat total(0);
    for (const Rat& c : p) {
        if (sgn(c) < 0) nonneg = false;
        total += c;
    }
    rep.free_to_cap = rep.generic_fiber_dim == ql.la.index_count && nonneg &&
                      total == Rat(static_cast<long>(ql.la.index_count));
    return rep;
}

CanonicalPairing canonical_pairing(const QuiverLocalization& ql,
                                   const QuiverLocalization& qdual) {
    if (!(qdual.op.pres == ql.op.pres.quadratic_dual()))
        throw ContractError("second argument is not the quadratic dual pipeline");
    // both sides must be flexible
    for (const QuiverLocalization* side : {&ql, &qdual}) {
        for (std::size_t c = 0; c < side->classical_center2.dim(); ++c) {
            RatVec lift;
            if (!solve(side->pi2, side->classical_center2.basis().row(c), lift))
                throw CheckError("canonical pairing requires both sides flexible");
        }
    }

    const std::size_t za = ql.z[2].dim(), zb = qdual.z[2].dim();
    const std::size_t n = ql.la.index_count;
    std::vector<RationalMatrix> per_alpha;
    for (std::size_t a = 0; a < n; ++a) {
        RationalMatrix m(za, zb);
        for (std::size_t i = 0; i < za; ++i)
            for (std::size_t j = 0; j < zb; ++j) {
                // <h_a(zeta_i), pi(zeta!_j)> + <pi(zeta_i), h!_a(zeta!_j)>
                RatVec ha(ql.la.u_dim);
                for (std::size_t r = 0; r < ql.la.u_dim; ++r) ha[r] = ql.la.h[a][2].at(r, i);
                RatVec pib = qdual.classical_center2.coordinates(
                    restrict_first(qdual.z[2].basis().row(j), qdual.alg.dim(2)));
                Rat acc(0);
                for (std::size_t r = 0; r < ha.size(); ++r) acc += ha[r] * pib[r];
                RatVec hb(qdual.la.u_dim);
                for (std::size_t r = 0; r < qdual.la.u_dim; ++r)
                    hb[r] = qdual.la.h[a][2].at(r, j);
                RatVec pia = ql.classical_center2.coordinates(
                    restrict_first(ql.z[2].basis().row(i), ql.alg.dim(2)));
                for (std::size_t r = 0; r < hb.size(); ++r) acc += pia[r] * hb[r];
                m.at(i, j) = acc;
            }
        per_alpha.push_back(std::move(m));
    }
    for (std::size_t a = 1; a < n; ++a)
        if (!(per_alpha[a] == per_alpha[0]))
            throw CheckError("canonical pairings disagree across indices");
    CanonicalPairing cp;
    cp.pairing = per_alpha[0];
    cp.perfect = za == zb && cp.pairing.rank() == za;
    for (std::size_t a = 0; a < n; ++a) cp.bijection.push_back(static_cast<int>(a));
    return cp;
}

Subspace u_image_in_center(const QuiverLocalization& ql) {
    return Subspace::from_span(ql.la.u_inclusion.transpose());
}

}  // namespace koszul
