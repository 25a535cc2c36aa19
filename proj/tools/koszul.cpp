// Command-line surface: parses instance files, runs the requested pipeline,
// and prints a deterministic key-value report on stdout (timing goes to
// stderr so reports stay byte-identical across runs and thread counts).
//
// Exit codes: 0 all checks pass, 2 validation error, 3 a mathematical check
// failed, 4 capacity or degree cap exceeded.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "koszul/builtin.hpp"
#include "koszul/instance.hpp"
#include "koszul/report.hpp"

using namespace koszul;

namespace {

struct Options {
    int cap = kDefaultDegreeCap;
    std::vector<long> seed_point;
    bool witness = false;
    int parallel = 1;
    std::string with_file;
    std::vector<int> bijection;
    bool opposite_iso = false;  // assert the A = A^op hypothesis
};

std::string tristate_str(TriState t) {
    switch (t) {
        case TriState::yes: return "yes";
        case TriState::no: return "no";
        default: return "indeterminate-to-cap";
    }
}

void report_dims(Report& rep, const std::string& key, const std::vector<std::size_t>& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(dims[i]);
    }
    rep.put(key, s);
}

void run_build(const QuiverInstance& qi, const Options& opt, Report& rep) {
    GradedAlgebra alg = GradedAlgebra::build(qi.pres, opt.cap);
    rep.put("top_degree", static_cast<long>(alg.top_degree()));
    report_dims(rep, "dims", alg.dims());
    rep.put("total_dim", static_cast<long>(alg.total_dim()));
    if (opt.witness)
        for (int d = 0; d <= alg.top_degree(); ++d) {
            std::string monos;
            for (const auto& b : alg.basis(d)) {
                if (!monos.empty()) monos += " ";
                monos += d == 0 ? "e_" + alg.quiver().vertices[b.src] : b.path.str(alg.quiver());
            }
            rep.put("basis_" + std::to_string(d), monos);
        }
}

void run_dual(const QuiverInstance& qi, const Options& opt, Report& rep) {
    QuadraticPresentation dual = qi.pres.quadratic_dual();
    const Quiver& dq = dual.quiver();
    for (const Arrow& a : dq.arrows)
        rep.put("arrow " + a.id + "!", dq.vertices[a.src] + " -> " + dq.vertices[a.dst]);
    long count = 0;
    for (const auto& [comp, sub] : dual.relation_map()) {
        rep.put("relations " + dq.vertices[comp.first] + "->" + dq.vertices[comp.second],
                static_cast<long>(sub.dim()));
        if (opt.witness) rep.put_matrix("relation_span_" + std::to_string(count), sub.basis());
        ++count;
    }
    rep.check("double_dual_involution", qi.pres.quadratic_dual().quadratic_dual() == qi.pres);
}

void run_center(const QuiverInstance& qi, const Options& opt, Report& rep) {
    GradedAlgebra alg = GradedAlgebra::build(qi.pres, opt.cap);
    std::size_t total = 0;
    for (int d = 0; d <= alg.top_degree(); ++d) {
        Subspace z = alg.center_degree(d);
        rep.put("z_dim_" + std::to_string(d), static_cast<long>(z.dim()));
        if (opt.witness && z.dim()) rep.put_matrix("z_basis_" + std::to_string(d), z.basis());
        total += z.dim();
    }
    rep.put("z_dim_total", static_cast<long>(total));
}

void run_deform(const QuiverInstance& qi, const Options& opt, Report& rep) {
    GradedAlgebra alg = GradedAlgebra::build(qi.pres, opt.cap);
    DeformedPresentation def = universal_deformation(qi.pres);
    rep.put("base_dim", static_cast<long>(def.base.u_dim));
    BGReport bg = bg_flatness_check(def);
    rep.check("bg_condition", bg.bg_vanishes);
    rep.check("bg_routes_agree", bg.bg_vanishes == bg.factors_through_center);
    int cap = alg.top_degree() + 2;
    DeformedAlgebra da = DeformedAlgebra::build(def, std::max(cap, 3));
    report_dims(rep, "deformed_dims", da.audit().deformed_dims);
    report_dims(rep, "expected_dims", da.audit().expected_dims);
    rep.check("flatness_audit", da.audit().pass);
    // flexibility needs only the degree-2 centers
    Subspace z2 = deformed_center(da, 2);
    Subspace classical = alg.center_degree(2);
    bool flexible = true;
    RationalMatrix pi2(alg.dim(2), z2.dim());
    for (std::size_t i = 0; i < z2.dim(); ++i)
        for (std::size_t r = 0; r < alg.dim(2); ++r) pi2.at(r, i) = z2.basis().at(i, r);
    for (std::size_t c = 0; c < classical.dim(); ++c) {
        RatVec lift;
        if (!solve(pi2, classical.basis().row(c), lift)) flexible = false;
    }
    rep.put("flexible", flexible);
}

QuiverLocalization make_pipeline(const QuiverInstance& qi, const Options& opt) {
    LocalizationOptions lo;
    lo.z_cap = -1;
    return localization_algebra(qi.ordered(), lo);
}

void diagnostics_into(Report& rep, const QuiverLocalization& ql, bool op_iso,
                      const Options& opt) {
    DiagnosticsReport diag = diagnostics(ql, op_iso, opt.seed_point);
    rep.put("flexible", diag.flexible);
    rep.put("opposite_iso", op_iso);
    rep.check_state("malleable", diag.malleable_applicable ? tristate_str(diag.malleable)
                                                           : "not applicable");
    rep.put("strong_at_point", diag.strong_at_point);
    rep.put("generic_point", diag.point_used);
    rep.put("generic_fiber_dim", static_cast<long>(diag.generic_fiber_dim));
    rep.put("free_to_cap", diag.free_to_cap);
    rep.put("hilbert_numerator", diag.hilbert_numerator);
}

void run_localize(const QuiverInstance& qi, const Options& opt, Report& rep) {
    QuiverLocalization ql = make_pipeline(qi, opt);
    rep.put("base_dim", static_cast<long>(ql.la.u_dim));
    rep.put("index_count", static_cast<long>(ql.la.index_count));
    rep.put("z_cap", static_cast<long>(ql.z_cap));
    report_dims(rep, "z_dims", ql.la.z_dims);
    if (opt.witness)
        for (std::size_t a = 0; a < ql.la.index_count; ++a)
            rep.put_matrix("h2_" + ql.op.pres.quiver().vertices[a], ql.la.h[a][2]);
    bool op_iso = opt.opposite_iso || find_opposite_isomorphism(qi.pres);
    diagnostics_into(rep, ql, op_iso, opt);
    FiberedArrangement fa = fibered(ql.la);
    rep.put("fibered_e_dim", static_cast<long>(fa.e_dim));
    rep.put("fibered_f_dim", static_cast<long>(fa.f_dim));
}

OrderedPresentation dual_ordered(const OrderedPresentation& op) {
    std::vector<std::pair<int, int>> rev;
    for (auto [a, b] : op.order.cover_pairs()) rev.emplace_back(b, a);
    return {op.pres.quadratic_dual(), PartialOrder::from_pairs(op.order.size(), rev)};
}

void run_duality_quiver(const QuiverInstance& qi, const Options& opt, Report& rep) {
    QuiverLocalization ql = make_pipeline(qi, opt);
    LocalizationOptions lo;
    QuiverLocalization qd = localization_algebra(dual_ordered(qi.ordered()), lo);
    CanonicalPairing cp = canonical_pairing(ql, qd);
    rep.check("pairing_alpha_independent", true);  // enforced inside, throws otherwise
    rep.check("pairing_perfect", cp.perfect);
    rep.put_matrix("pairing", cp.pairing);

    DualityCertificate cert;
    cert.pairing = cp.pairing.inverse().transpose();
    cert.bijection = cp.bijection;
    JFamily ja, jb;
    const std::size_t n = ql.la.index_count;
    ja.j.resize(n, std::vector<RationalMatrix>(n));
    jb.j.resize(n, std::vector<RationalMatrix>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            ja.j[a][b] = character_j(ql, static_cast<int>(a), static_cast<int>(b));
            jb.j[a][b] = character_j(qd, static_cast<int>(a), static_cast<int>(b));
        }
    DualityReport dr = check_duality(ql.la, qd.la, cert, ja, jb);
    rep.check("kernels_perpendicular", dr.kernels_perpendicular, dr.witness);
    rep.check("subspaces_perpendicular", dr.subspaces_perpendicular, dr.witness);
    rep.check("j_transpose_identity", dr.j_transpose, dr.witness);
}

void run_duality_localization(const LocalizationInstance& li, const Options& opt, Report& rep) {
    if (opt.with_file.empty())
        throw ContractError("duality on a localization instance needs --with <file>");
    InstanceFile other = load_instance(opt.with_file);
    if (other.kind != "localization")
        throw ContractError("--with file must be a localization instance");
    const LocalizationInstance& lj = std::get<LocalizationInstance>(other.body);
    DualityCertificate cert;
    cert.pairing = RationalMatrix::identity(li.la.z_dims[2]);
    if (!opt.bijection.empty()) {
        cert.bijection = opt.bijection;
    } else {
        for (std::size_t a = 0; a < li.la.index_count; ++a)
            cert.bijection.push_back(static_cast<int>(a));
    }
    DualityReport dr = check_duality(li.la, lj.la, cert);
    rep.check("kernels_perpendicular", dr.kernels_perpendicular, dr.witness);
    rep.check("subspaces_perpendicular", dr.subspaces_perpendicular, dr.witness);
}

void run_polarized(const ArrangementInstance& ai, const Options& opt, Report& rep) {
    ValidationReport v = validate_arrangement(ai.pa);
    if (!v.pass) throw GenericityError(v.failure);
    rep.put("n", static_cast<long>(ai.pa.n));
    rep.put("k", static_cast<long>(ai.pa.k()));
    ChamberSet cs = enumerate_chambers(ai.pa, opt.parallel);
    rep.put("index_count", static_cast<long>(cs.index_set.size()));
    for (std::size_t i = 0; i < cs.index_set.size(); ++i) {
        const Chamber& ch = cs.chambers[cs.index_set[i]];
        std::string signs, basis;
        for (int s : ch.sign) signs += s > 0 ? "+" : "-";
        for (std::size_t b = 0; b < ch.basis.size(); ++b)
            basis += (b ? "," : "") + std::to_string(ch.basis[b] + 1);
        rep.put("chamber " + signs, "basis {" + basis + "}");
        if (opt.witness) rep.put("vertex " + signs, ch.vertex);
    }
    GaleConsistencyReport gc = gale_consistency(ai.pa, opt.parallel);
    rep.put("gale_hypotheses", gc.hypotheses);
    if (gc.checks_run) {
        rep.check("index_sets_equal", gc.index_sets_equal, gc.witness);
        rep.check("bases_complementary", gc.bases_complementary, gc.witness);
        rep.check("arrangements_dual", gc.arrangements_dual, gc.witness);
        rep.check("differences_span", gc.differences_span, gc.witness);
    } else {
        rep.check_state("gale_consistency", "skipped (reduced hypotheses)");
    }
}

void run_blocks(const BlocksInstance& bi, const Options& opt, Report& rep) {
    const BlockPair& bp = bi.bp;
    rep.put("n", static_cast<long>(bp.n));
    rep.put("nonempty_criterion", block_nonempty_criterion(bp));
    auto idx = index_set(bp);
    rep.put("index_count", static_cast<long>(idx.size()));
    if (opt.witness)
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::string s;
            for (long x : idx[i]) s += (s.empty() ? "" : " ") + std::to_string(x);
            rep.put("index_" + std::to_string(i), s);
        }
    rep.check("nonempty_iff_dominance", idx.empty() != block_nonempty_criterion(bp));
    JayTorus jt = jay_torus(bp);
    rep.put("jay_count", static_cast<long>(jt.jsets.size()));
    rep.put("torus_dim", static_cast<long>(jt.torus_dim));
    if (bp.n <= 6) {
        rep.check("fixed_point_route", index_set_fixed_point(bp) == idx);
        DoubleCosetReport dc = double_coset_audit(bp);
        rep.put("full_size_double_cosets", static_cast<long>(dc.full_size_cosets));
        rep.check("double_coset_bijection", dc.pass);
        rep.check("single_orbit", single_orbit_audit(bp).pass);
    } else {
        rep.check_state("exhaustive_audits", "skipped (n over the factorial bound)");
    }
    DualBijectionReport db = dual_bijection(bp);
    rep.check("dual_bijection", db.pass);
}

void run_verify_all(const InstanceFile& inst, const Options& opt, Report& rep) {
    if (inst.kind == "quiver") {
        const QuiverInstance& qi = std::get<QuiverInstance>(inst.body);
        run_build(qi, opt, rep);
        run_dual(qi, opt, rep);
        run_center(qi, opt, rep);
        run_deform(qi, opt, rep);
        if (qi.order) {
            GradedAlgebra alg = GradedAlgebra::build(qi.pres, opt.cap);
            auto cert = standard_koszul_check(qi.ordered(), alg);
            rep.check("standard_koszul", cert.pass, cert.failure);
            if (cert.pass) {
                bool op_iso = opt.opposite_iso || find_opposite_isomorphism(qi.pres);
                if (op_iso) {
                    auto di = standard_dimension_identity(qi.ordered(), alg);
                    rep.check("dimension_identity", di.pass);
                }
                run_localize(qi, opt, rep);
                run_duality_quiver(qi, opt, rep);
            }
        }
    } else if (inst.kind == "localization") {
        const LocalizationInstance& li = std::get<LocalizationInstance>(inst.body);
        FiberedArrangement fa = fibered(li.la);
        rep.put("e_dim", static_cast<long>(fa.e_dim));
        rep.put("f_dim", static_cast<long>(fa.f_dim));
        FiberedArrangement dd = dual_arrangement(dual_arrangement(fa));
        bool invol = dd.kernel() == fa.kernel();
        for (std::size_t a = 0; a < fa.h.size(); ++a)
            invol = invol && dd.h[a] == fa.h[a];
        rep.check("double_dual_involution", invol);
        if (!opt.with_file.empty()) run_duality_localization(li, opt, rep);
    } else if (inst.kind == "arrangement") {
        run_polarized(std::get<ArrangementInstance>(inst.body), opt, rep);
    } else if (inst.kind == "blocks") {
        run_blocks(std::get<BlocksInstance>(inst.body), opt, rep);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for quadratic duality, graded deformations, and "
                 "localization algebras"};
    std::string command, instance_path;
    Options opt;
    app.add_option("command", command,
                   "dual | build | center | deform | localize | duality | polarized | blocks "
                   "| verify-all")
        ->required();
    app.add_option("instance", instance_path, "instance file")->required();
    app.add_option("--cap", opt.cap, "degree cap (default 12)");
    app.add_option("--seed-point", opt.seed_point, "generic-point primes override");
    app.add_flag("--witness", opt.witness, "include full matrices in the report");
    app.add_option("--parallel", opt.parallel, "worker threads for enumeration commands");
    app.add_option("--with", opt.with_file, "second instance for duality checks");
    app.add_option("--bijection", opt.bijection, "index bijection for --with duality");
    app.add_flag("--opposite-iso", opt.opposite_iso, "assert the A = A^op hypothesis");
    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    Report rep;
    int code = 0;
    try {
        InstanceFile inst = load_instance(instance_path);
        rep.put("command", command);
        rep.put("instance", instance_path);
        rep.put("kind", inst.kind);
        rep.put("digest", inst.digest);

        auto expect_kind = [&](const std::string& kind) {
            if (inst.kind != kind)
                throw ContractError("command '" + command + "' needs a " + kind + " instance");
        };
        if (command == "build") {
            expect_kind("quiver");
            run_build(std::get<QuiverInstance>(inst.body), opt, rep);
        } else if (command == "dual") {
            expect_kind("quiver");
            run_dual(std::get<QuiverInstance>(inst.body), opt, rep);
        } else if (command == "center") {
            expect_kind("quiver");
            run_center(std::get<QuiverInstance>(inst.body), opt, rep);
        } else if (command == "deform") {
            expect_kind("quiver");
            run_deform(std::get<QuiverInstance>(inst.body), opt, rep);
        } else if (command == "localize") {
            expect_kind("quiver");
            run_localize(std::get<QuiverInstance>(inst.body), opt, rep);
        } else if (command == "duality") {
            if (inst.kind == "quiver")
                run_duality_quiver(std::get<QuiverInstance>(inst.body), opt, rep);
            else if (inst.kind == "localization")
                run_duality_localization(std::get<LocalizationInstance>(inst.body), opt, rep);
            else
                throw ContractError("duality needs a quiver or localization instance");
        } else if (command == "polarized") {
            expect_kind("arrangement");
            run_polarized(std::get<ArrangementInstance>(inst.body), opt, rep);
        } else if (command == "blocks") {
            expect_kind("blocks");
            run_blocks(std::get<BlocksInstance>(inst.body), opt, rep);
        } else if (command == "verify-all") {
            run_verify_all(inst, opt, rep);
        } else {
            throw ContractError("unknown command '" + command + "'");
        }
        if (!rep.all_checks_pass()) code = 3;
        rep.put("result", rep.all_checks_pass() ? "pass" : "fail");
    } catch (const ParseError& e) {
        rep.put("error", e.what());
        code = 2;
    } catch (const CapacityError& e) {
        rep.put("error", e.what());
        code = 4;
    } catch (const CheckError& e) {
        rep.put("error", e.what());
        code = 3;
    } catch (const GenericityError& e) {
        rep.put("error", e.what());
        code = 2;
    } catch (const ContractError& e) {
        rep.put("error", e.what());
        code = 2;
    } catch (const AmbientMismatch& e) {
        rep.put("error", e.what());
        code = 2;
    }
    std::cout << rep.str();
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    std::cerr << "elapsed_ms " << elapsed.count() << "\n";
    return code;
}
