// cocycle_main.cpp — Command-line front end: JSON in, JSON report out.
// Exit codes: 0 property holds / construction succeeded, 1 property fails,
// 2 invalid input or internal error.

#include "cocycle/endo.hpp"
#include "cocycle/focksim.hpp"
#include "cocycle/json_io.hpp"
#include "cocycle/subordination.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace cocycle;
using io::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInvalid = 2;

struct GlobalOptions {
    double atol = 1e-9;
    std::uint64_t seed = 1;
};

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

Tolerance make_tolerance(const GlobalOptions& opts) {
    Tolerance tol;
    tol.atol = opts.atol;
    tol.validate();
    return tol;
}

json pair_json_or_null(const std::optional<gen::LocalProjectionPair>& pair) {
    if (!pair) return nullptr;
    return io::local_pair_json(*pair);
}

int run_gen_check(const std::string& path, const std::string& partition_path,
                  const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const gen::BlockGenerator f = io::generator_from_json(io::load_json_file(path));

    std::optional<BlockPartition> partition;
    if (!partition_path.empty())
        partition = io::partition_from_json(io::load_json_file(partition_path));
    else
        partition = gen::infer_partition(f, tol);

    const bool in_cone = gen::is_contraction_generator(f, tol);
    const bool local = gen::is_local(f, tol);
    gen::ProjectionClassification cls;
    if (partition)
        cls = gen::classify_projection_generator(f, *partition, tol);
    else
        cls.reason = gen::ClassifyFailure::NotInAlgebra;

    std::string classification;
    if (cls.ok && local)
        classification = "local projection cocycle generator";
    else if (cls.ok)
        classification = "projection cocycle generator";
    else if (in_cone)
        classification = "contraction cocycle generator";
    else
        classification = "not a contraction generator";

    json report;
    report["command"] = "gen check";
    report["atol"] = tol.atol;
    report["n"] = f.n;
    report["d"] = f.d;
    report["in_contraction_cone"] = in_cone;
    report["ito_form_norm"] = gen::ito_form(f).norm();
    report["pisometry_defect_norm"] = gen::partial_isometry_defect(f).norm();
    report["is_local"] = local;
    report["projection"] = {{"ok", cls.ok},
                            {"reason", gen::to_string(cls.reason)},
                            {"routes_agree", cls.routes_agree},
                            {"identity_residual", cls.identity_residual},
                            {"structure_residual", cls.structure_residual}};
    report["partition"] = partition ? io::partition_json(*partition) : json(nullptr);
    report["classification"] = classification;
    emit(report);
    return in_cone ? kExitHolds : kExitFails;
}

int run_gen_from_pair(const std::string& path, Index n, const std::string& out,
                      const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const gen::LocalProjectionPair pair = io::local_pair_from_json(io::load_json_file(path));
    const gen::BlockGenerator f = gen::from_local_pair(pair, n, tol);
    const json payload = io::generator_json(f);
    if (!out.empty()) std::ofstream(out) << payload.dump(2) << "\n";
    emit(payload);
    return kExitHolds;
}

int run_sub_check(const std::string& f_path, const std::string& g_path,
                  const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const gen::BlockGenerator f = io::generator_from_json(io::load_json_file(f_path));
    const gen::BlockGenerator g = io::generator_from_json(io::load_json_file(g_path));
    const sub::DominationReport rep = sub::domination_report(g, f, tol);

    json report;
    report["command"] = "sub check";
    report["relation"] = "dominates";
    report["atol"] = tol.atol;
    report["holds"] = rep.holds;
    report["residuals"] = {{"algebraic", rep.algebraic_residual},
                           {"structural", std::max(rep.order_residual, rep.block_residual)},
                           {"order", rep.order_residual},
                           {"block", rep.block_residual}};
    report["witnesses"] = json::object();
    emit(report);
    return rep.holds ? kExitHolds : kExitFails;
}

int run_sub_equiv(const std::string& f_path, const std::string& g_path,
                  const std::string& partition_path, const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const gen::BlockGenerator f = io::generator_from_json(io::load_json_file(f_path));
    const gen::BlockGenerator g = io::generator_from_json(io::load_json_file(g_path));
    const BlockPartition partition =
        partition_path.empty() ? BlockPartition::singletons(f.n)
                               : io::partition_from_json(io::load_json_file(partition_path));

    const auto d = sub::equivalent_projections(f, g, partition, tol);
    json report;
    report["command"] = "sub equiv";
    report["relation"] = "equivalent_projections";
    report["atol"] = tol.atol;
    report["holds"] = d.has_value();
    report["witnesses"] = json::object();
    if (d) report["witnesses"]["D"] = io::matrix_json(*d);
    emit(report);
    return d ? kExitHolds : kExitFails;
}

int run_sub_construct(const std::string& f_path, const std::string& g_path,
                      const std::string& d_path, const std::string& e_path,
                      const std::string& k_path, const std::string& out,
                      const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const gen::BlockGenerator f = io::generator_from_json(io::load_json_file(f_path));
    const gen::BlockGenerator g = io::generator_from_json(io::load_json_file(g_path));
    const ComplexMatrix d_iso = io::matrix_from_json(io::load_json_file(d_path));
    const ComplexMatrix e_col = io::matrix_from_json(io::load_json_file(e_path));
    const ComplexMatrix k_herm = io::matrix_from_json(io::load_json_file(k_path));

    const gen::BlockGenerator h = sub::construct_intertwiner(f, g, d_iso, e_col, k_herm, tol);
    auto [left, right] = gen::gram_generator_pair(h);

    json report;
    report["command"] = "sub construct-h";
    report["relation"] = "equivalence_intertwiner";
    report["atol"] = tol.atol;
    report["holds"] = true;
    report["witnesses"] = {{"H", io::generator_json(h)}};
    report["residuals"] = {{"gram_left", (left - gen::assemble(f)).norm()},
                           {"gram_right", (right - gen::assemble(g)).norm()},
                           {"pisometry", gen::partial_isometry_defect(h).norm()}};
    if (!out.empty()) std::ofstream(out) << io::generator_json(h).dump(2) << "\n";
    emit(report);
    return kExitHolds;
}

int run_sub_chain(Index d, const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const auto chain = sub::build_chain(d);
    json chain_json = json::array();
    json checks = json::array();
    for (std::size_t r = 0; r < chain.size(); ++r) {
        chain_json.push_back(io::local_pair_json(chain[r]));
        if (r + 1 < chain.size())
            checks.push_back(sub::local_pair_leq(chain[r], chain[r + 1], tol));
    }
    json report;
    report["command"] = "sub chain";
    report["relation"] = "chain";
    report["atol"] = tol.atol;
    report["d"] = d;
    report["holds"] = true;
    report["witnesses"] = {{"chain", chain_json}};
    report["adjacent_subordinations"] = checks;
    report["max_chain_length"] = sub::max_chain_length(d);
    report["note"] = "strict chains cannot exceed max_chain_length elements";
    emit(report);
    return kExitHolds;
}

int run_sub_relations(const std::string& a_path, const std::string& b_path,
                      const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const gen::LocalProjectionPair a = io::local_pair_from_json(io::load_json_file(a_path));
    const gen::LocalProjectionPair b = io::local_pair_from_json(io::load_json_file(b_path));

    const auto cles_ab = sub::cles_sigma(a, b, tol);
    const auto cles_ba = sub::cles_sigma(b, a, tol);
    json report;
    report["command"] = "sub relations";
    report["relation"] = "local_pair_relations";
    report["atol"] = tol.atol;
    report["leq_ab"] = sub::local_pair_leq(a, b, tol);
    report["leq_ba"] = sub::local_pair_leq(b, a, tol);
    report["sim"] = sub::sim_sigma(a, b, tol);
    report["cles_ab"] = {{"holds", cles_ab.holds}, {"witness", pair_json_or_null(cles_ab.witness)}};
    report["cles_ba"] = {{"holds", cles_ba.holds}, {"witness", pair_json_or_null(cles_ba.witness)}};
    report["antisymmetry_ok"] = sub::antisymmetry_check(a, b, tol);
    emit(report);
    return kExitHolds;
}

int run_endo_subordinates(const std::string& path, const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    endo::NormalHom hom = io::hom_from_json(io::load_json_file(path));
    hom.validate(tol);

    const ComplexMatrix alpha_unit = hom.range_projection();
    bool all_cp = true;
    json chain = json::array();
    // Canonical subordinate chain: q = projection onto the first r multiplicity
    // coordinates, r = 0..j. Every subordinate arises from some q, up to a
    // component under I - alpha(I) that does not change the map.
    for (Index r = 0; r <= hom.j; ++r) {
        ComplexMatrix q = ComplexMatrix::Zero(hom.j, hom.j);
        q.topLeftCorner(r, r).setIdentity();
        const ComplexMatrix p =
            hom.V * mat::kron(ComplexMatrix::Identity(hom.m, hom.m), q) * hom.V.adjoint();
        const endo::CPMap gamma = endo::subordinate(hom, p, tol);
        const endo::MatrixMap diff = [&](const ComplexMatrix& s) -> ComplexMatrix {
            return endo::apply(hom, s) - endo::apply(gamma, s);
        };
        const ComplexMatrix choi = endo::choi_matrix(diff, hom.m, hom.n);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (choi + choi.adjoint()),
                                                        Eigen::EigenvaluesOnly);
        const double min_eig = choi.rows() > 0 ? es.eigenvalues().minCoeff() : 0.0;
        const bool cp_ok = min_eig >= -tol.atol * (1.0 + choi.norm());
        all_cp = all_cp && cp_ok;

        bool is_zero = true, is_alpha = true;
        for (Index a = 0; a < hom.m; ++a)
            for (Index bcol = 0; bcol < hom.m; ++bcol) {
                ComplexMatrix unit = ComplexMatrix::Zero(hom.m, hom.m);
                unit(a, bcol) = 1.0;
                const ComplexMatrix img = endo::apply(gamma, unit);
                if (img.norm() > tol.atol) is_zero = false;
                if ((img - endo::apply(hom, unit)).norm() > tol.atol) is_alpha = false;
            }

        chain.push_back({{"rank_q", r},
                         {"P", io::matrix_json(p)},
                         {"choi_difference", io::matrix_json(choi)},
                         {"choi_min_eigenvalue", min_eig},
                         {"cp_ok", cp_ok},
                         {"is_zero_map", is_zero},
                         {"is_alpha", is_alpha}});
    }

    json report;
    report["command"] = "endo subordinates";
    report["atol"] = tol.atol;
    report["m"] = hom.m;
    report["j"] = hom.j;
    report["n"] = hom.n;
    report["alpha_unit_rank"] = mat::numerical_rank(alpha_unit, tol);
    report["is_unital"] = hom.is_unital(tol);
    report["choi_alpha"] = io::matrix_json(endo::choi_matrix(hom));
    report["subordinate_chain"] = chain;
    report["chain_length"] = hom.j + 1;
    emit(report);
    return all_cp ? kExitHolds : kExitFails;
}

int run_endo_check(const std::string& alpha_path, const std::string& beta_path,
                   const GlobalOptions& opts) {
    const Tolerance tol = make_tolerance(opts);
    const endo::NormalHom alpha = io::hom_from_json(io::load_json_file(alpha_path));
    const endo::NormalHom beta = io::hom_from_json(io::load_json_file(beta_path));
    const bool holds = endo::dominates_endo(alpha, beta, tol);

    json report;
    report["command"] = "endo check";
    report["relation"] = "dominates_endo";
    report["atol"] = tol.atol;
    report["holds"] = holds;
    emit(report);
    return holds ? kExitHolds : kExitFails;
}

json defect_json(const sim::DefectReport& rep) {
    json j;
    j["hermiticity"] = rep.hermiticity;
    j["idempotence"] = rep.idempotence;
    j["pisometry"] = rep.pisometry;
    j["contraction_excess"] = rep.contraction_excess;
    j["subordination"] = rep.subordination;
    j["max"] = {{"hermiticity", rep.max_hermiticity},
                {"idempotence", rep.max_idempotence},
                {"pisometry", rep.max_pisometry},
                {"contraction_excess", rep.max_contraction_excess},
                {"subordination", rep.max_subordination}};
    return j;
}

std::vector<sim::SimVector> config_probes(const io::SimConfig& cfg, double tau,
                                          std::uint64_t seed) {
    auto probes = sim::standard_probes(cfg.generator.n, cfg.generator.d, cfg.slices, tau, seed,
                                       cfg.random_count, cfg.exponential.empty() ? 2 : 0);
    ComplexVector u0 = ComplexVector::Zero(cfg.generator.n);
    u0(0) = 1.0;
    for (const auto& f : cfg.exponential)
        probes.push_back(
            sim::exponential_vector(cfg.generator.n, cfg.generator.d, cfg.slices, tau, f, u0));
    return probes;
}

int run_sim_run(const std::string& path, const GlobalOptions& opts) {
    const io::SimConfig cfg = io::sim_config_from_json(io::load_json_file(path));
    if (!(cfg.tau > 0.0) || cfg.slices <= 0)
        throw std::invalid_argument("sim run: config needs positive tau and slices");
    const std::uint64_t seed = cfg.seed != 1 ? cfg.seed : opts.seed;

    const sim::DiscreteCocycle c = sim::make_cocycle(cfg.generator, cfg.tau, cfg.slices);
    std::optional<sim::DiscreteCocycle> other;
    if (cfg.subordinate) other = sim::make_cocycle(*cfg.subordinate, cfg.tau, cfg.slices);

    const auto probes = config_probes(cfg, cfg.tau, seed);
    const sim::DefectReport defects =
        sim::defect_report(c, cfg.slices, probes, other ? &*other : nullptr);

    // The discrete model must satisfy the cocycle identity exactly.
    const Index split = cfg.slices / 2;
    const sim::SimVector& probe = probes.front();
    const sim::SimVector lhs = sim::evolve(c, probe, cfg.slices);
    const sim::SimVector rhs =
        sim::evolve(c, sim::shift_apply(c, probe, split, cfg.slices - split), split);
    const double identity_residual =
        (lhs.data - rhs.data).norm() / std::max(1.0, lhs.data.norm());
    const bool identity_ok = identity_residual <= 1e-12;

    json report;
    report["command"] = "sim run";
    report["tau"] = cfg.tau;
    report["slices"] = cfg.slices;
    report["seed"] = seed;
    report["probe_count"] = probes.size();
    json norms = json::array();
    for (const auto& p : probes) norms.push_back(p.norm());
    report["probe_norms"] = norms;
    report["defects"] = defect_json(defects);
    report["checks"] = {{"cocycle_identity_residual", identity_residual},
                        {"cocycle_identity_ok", identity_ok}};
    report["vacuum_expectation"] = io::matrix_json(sim::vacuum_expectation(c, cfg.slices));
    emit(report);
    return identity_ok ? kExitHolds : kExitFails;
}

json series_json(const sim::RateSeries& series, double lo, double hi, double floor) {
    json j;
    j["values"] = series.values;
    j["ratios"] = series.ratios();
    j["ok"] = series.rate_ok(lo, hi, floor);
    return j;
}

int run_sim_rates(const std::string& path, const GlobalOptions& opts) {
    const io::SimConfig cfg = io::sim_config_from_json(io::load_json_file(path));
    const double tau_start = cfg.tau_start > 0.0 ? cfg.tau_start : cfg.tau;
    const int halvings = cfg.halvings > 0 ? cfg.halvings : 4;
    if (!(tau_start > 0.0) || cfg.slices <= 0)
        throw std::invalid_argument("sim rates: config needs positive tau_start and slices");
    const std::uint64_t seed = cfg.seed != 1 ? cfg.seed : opts.seed;

    const double lo = 0.3, hi = 0.7, floor = 1e-11;
    const auto study =
        sim::rate_study(cfg.generator, cfg.slices, tau_start, halvings, seed,
                        cfg.subordinate ? &*cfg.subordinate : nullptr);

    bool holds = study.hermiticity.rate_ok(lo, hi, floor) &&
                 study.idempotence.rate_ok(lo, hi, floor) &&
                 study.pisometry.rate_ok(lo, hi, floor);
    if (cfg.subordinate) holds = holds && study.subordination.rate_ok(lo, hi, floor);

    json report;
    report["command"] = "sim rates";
    report["taus"] = study.taus;
    report["slices"] = cfg.slices;
    report["seed"] = seed;
    report["rate_band"] = {{"lo", lo}, {"hi", hi}, {"floor", floor}};
    report["series"] = {{"hermiticity", series_json(study.hermiticity, lo, hi, floor)},
                        {"idempotence", series_json(study.idempotence, lo, hi, floor)},
                        {"pisometry", series_json(study.pisometry, lo, hi, floor)}};
    if (cfg.subordinate)
        report["series"]["subordination"] = series_json(study.subordination, lo, hi, floor);
    report["holds"] = holds;
    emit(report);
    return holds ? kExitHolds : kExitFails;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional cocycle calculus for CCR-flow subordination"};
    app.require_subcommand(1);

    GlobalOptions opts;
    if (const char* env = std::getenv("COCYCLE_ATOL")) opts.atol = std::atof(env);
    app.add_option("--atol", opts.atol, "absolute tolerance for identity checks");
    app.add_option("--seed", opts.seed, "seed for probe generation");

    std::string f_path, g_path, partition_path, out_path, d_path, e_path, k_path;
    Index n_flag = 1;
    Index d_flag = 1;

    auto* gen_cmd = app.add_subcommand("gen", "stochastic generator checks");
    auto* gen_check = gen_cmd->add_subcommand("check", "classify a generator");
    gen_check->add_option("F", f_path, "generator JSON file")->required();
    gen_check->add_option("--partition", partition_path, "partition JSON file");
    auto* gen_from_pair = gen_cmd->add_subcommand("from-pair", "assemble I (x) f from (P, u)");
    gen_from_pair->add_option("pair", f_path, "local pair JSON file")->required();
    gen_from_pair->add_option("--n", n_flag, "initial space dimension");
    gen_from_pair->add_option("-o,--output", out_path, "also write the generator here");

    auto* sub_cmd = app.add_subcommand("sub", "subordination and equivalence");
    auto* sub_check = sub_cmd->add_subcommand("check", "test X^F <= X^G");
    sub_check->add_option("F", f_path)->required();
    sub_check->add_option("G", g_path)->required();
    auto* sub_equiv = sub_cmd->add_subcommand("equiv", "construct D with D*D=P, DD*=Q");
    sub_equiv->add_option("F", f_path)->required();
    sub_equiv->add_option("G", g_path)->required();
    sub_equiv->add_option("--partition", partition_path, "common algebra (default singletons)");
    auto* sub_construct = sub_cmd->add_subcommand("construct-h", "build the intertwiner generator");
    sub_construct->add_option("F", f_path)->required();
    sub_construct->add_option("G", g_path)->required();
    sub_construct->add_option("--D", d_path)->required();
    sub_construct->add_option("--E", e_path)->required();
    sub_construct->add_option("--K", k_path)->required();
    sub_construct->add_option("-o,--output", out_path, "also write H here");
    auto* sub_chain = sub_cmd->add_subcommand("chain", "maximal subordination chain");
    sub_chain->add_option("--d", d_flag, "noise dimension")->required();
    auto* sub_relations = sub_cmd->add_subcommand("relations", "leq / sim / cles with witnesses");
    sub_relations->add_option("a", f_path)->required();
    sub_relations->add_option("b", g_path)->required();

    auto* endo_cmd = app.add_subcommand("endo", "normal *-homomorphism subordination");
    auto* endo_subs = endo_cmd->add_subcommand("subordinates", "canonical subordinate chain");
    endo_subs->add_option("hom", f_path)->required();
    auto* endo_check = endo_cmd->add_subcommand("check", "test alpha >= beta");
    endo_check->add_option("alpha", f_path)->required();
    endo_check->add_option("beta", g_path)->required();

    auto* sim_cmd = app.add_subcommand("sim", "discrete-time simulator");
    auto* sim_run = sim_cmd->add_subcommand("run", "defect report at one tau");
    sim_run->add_option("config", f_path)->required();
    auto* sim_rates = sim_cmd->add_subcommand("rates", "tau-halving convergence study");
    sim_rates->add_option("config", f_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (gen_check->parsed()) return run_gen_check(f_path, partition_path, opts);
        if (gen_from_pair->parsed()) return run_gen_from_pair(f_path, n_flag, out_path, opts);
        if (sub_check->parsed()) return run_sub_check(f_path, g_path, opts);
        if (sub_equiv->parsed()) return run_sub_equiv(f_path, g_path, partition_path, opts);
        if (sub_construct->parsed())
            return run_sub_construct(f_path, g_path, d_path, e_path, k_path, out_path, opts);
        if (sub_chain->parsed()) return run_sub_chain(d_flag, opts);
        if (sub_relations->parsed()) return run_sub_relations(f_path, g_path, opts);
        if (endo_subs->parsed()) return run_endo_subordinates(f_path, opts);
        if (endo_check->parsed()) return run_endo_check(f_path, g_path, opts);
        if (sim_run->parsed()) return run_sim_run(f_path, opts);
        if (sim_rates->parsed()) return run_sim_rates(f_path, opts);
        std::cerr << app.help() << "\n";
        return kExitInvalid;
    } catch (const InternalConsistencyError& e) {
        emit({{"error", {{"type", "internal-consistency"}, {"message", e.what()}}}});
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        emit({{"error", {{"type", "invalid-input"}, {"message", e.what()}}}});
        return kExitInvalid;
    } catch (const std::exception& e) {
        emit({{"error", {{"type", "runtime"}, {"message", e.what()}}}});
        return kExitInvalid;
    }
}
