#include "cqedsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "cqedsim/fock.hpp"
#include "cqedsim/gadgets.hpp"
#include "cqedsim/kerr.hpp"
#include "cqedsim/states.hpp"
#include "cqedsim/teleport.hpp"

namespace cqedsim::sweep {

using json = nlohmann::json;

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

teleport::MeasurementModel parse_model(const std::string& name) {
    if (name == "ideal") return teleport::MeasurementModel::ProjectiveIdeal;
    if (name == "displaced") return teleport::MeasurementModel::DisplacedVacuum;
    throw ConfigError("measurement_model must be 'ideal' or 'displaced', got '" + name + "'");
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

int pick_dim(const SweepConfig& cfg, double max_alpha) {
    const int need = fock::required_dim({max_alpha});
    if (cfg.fock_dim == 0) return need;
    if (cfg.fock_dim < need)
        throw ConfigError("fock_dim " + std::to_string(cfg.fock_dim) +
                          " inadequate for max alpha " + fmt9(max_alpha) + " (need >= " +
                          std::to_string(need) + ")");
    return cfg.fock_dim;
}

std::string verdict_name(gadgets::Verdict v) {
    switch (v) {
        case gadgets::Verdict::ConsistentWithEcs: return "consistent_with_ecs";
        case gadgets::Verdict::ConsistentWithMixture: return "consistent_with_mixture";
        default: return "inconclusive";
    }
}

struct PointGrid {
    std::vector<std::array<double, 3>> points;  // (theta, phi, alpha)
};

PointGrid cross_grid(const SweepConfig& cfg) {
    PointGrid g;
    for (double th : cfg.theta_grid)
        for (double ph : cfg.phi_grid)
            for (double al : cfg.alpha_grid) g.points.push_back({th, ph, al});
    return g;
}

ResultTable run_teleport_fidelity(const SweepConfig& cfg) {
    const PointGrid grid = cross_grid(cfg);
    const int dim = pick_dim(cfg, max_of(cfg.alpha_grid));

    ResultTable t;
    t.columns = {"theta", "phi", "alpha", "f_quantum", "f_classical", "f_dv_classical", "error"};
    t.rows.resize(grid.points.size());
    parallel_for(grid.points.size(), cfg.jobs, [&](std::size_t i) {
        const auto [th, ph, al] = grid.points[i];
        auto& row = t.rows[i];
        row = {fmt9(th), fmt9(ph), fmt9(al), "", "", "", ""};
        try {
            row[3] = fmt9(teleport::fidelity_quantum(th, ph, {al}));
            row[4] = fmt9(ph == 0.0 ? teleport::fidelity_classical(th, {al}, dim)
                                    : teleport::fidelity_classical_numeric(th, ph, {al}, dim));
            row[5] = fmt9(teleport::fidelity_dv_classical(th));
        } catch (const std::exception& e) {
            row[6] = e.what();
        }
    });
    return t;
}

ResultTable run_bsm_stats(const SweepConfig& cfg) {
    const PointGrid grid = cross_grid(cfg);
    const int dim = pick_dim(cfg, max_of(cfg.alpha_grid));
    const auto model = parse_model(cfg.measurement_model);

    ResultTable t;
    t.columns = {"theta", "phi", "alpha", "model",
                 "p_g_plus", "p_g_minus", "p_e_plus", "p_e_minus", "error"};
    t.rows.resize(grid.points.size());
    parallel_for(grid.points.size(), cfg.jobs, [&](std::size_t i) {
        const auto [th, ph, al] = grid.points[i];
        auto& row = t.rows[i];
        row = {fmt9(th), fmt9(ph), fmt9(al), cfg.measurement_model, "", "", "", "", ""};
        try {
            const auto psi = teleport::prepare_total({th, ph}, {al}, dim);
            const auto outcomes = teleport::measure(teleport::bsm_circuit(psi), {al}, model);
            for (int k = 0; k < 4; ++k) row[4 + k] = fmt9(outcomes[k].probability);
        } catch (const std::exception& e) {
            row[8] = e.what();
        }
    });
    return t;
}

ResultTable run_verify_ecs(const SweepConfig& cfg) {
    const int dim = pick_dim(cfg, max_of(cfg.alpha_grid));
    const auto model = parse_model(cfg.measurement_model);

    ResultTable t;
    t.columns = {"alpha", "zz_ecs", "parity_ecs", "wigner_origin_ecs", "verdict_ecs",
                 "zz_mix", "parity_mix", "wigner_origin_mix", "verdict_mix", "error"};
    t.rows.resize(cfg.alpha_grid.size());
    parallel_for(cfg.alpha_grid.size(), cfg.jobs, [&](std::size_t i) {
        const double al = cfg.alpha_grid[i];
        auto& row = t.rows[i];
        row.assign(10, "");
        row[0] = fmt9(al);
        try {
            const auto ecs = fock::DensityOperator::from_pure(
                states::ecs(states::EcsKind::PhiPlus, {al}, dim));
            const auto mix = teleport::classical_channel({al}, dim);
            const auto re = gadgets::verify(ecs, {al}, model);
            const auto rm = gadgets::verify(mix, {al}, model);
            row[1] = fmt9(re.zz_correlation);
            row[2] = fmt9(re.parity_correlation);
            row[3] = fmt9(re.fringe_wigner_origin);
            row[4] = verdict_name(re.verdict);
            row[5] = fmt9(rm.zz_correlation);
            row[6] = fmt9(rm.parity_correlation);
            row[7] = fmt9(rm.fringe_wigner_origin);
            row[8] = verdict_name(rm.verdict);
        } catch (const std::exception& e) {
            row[9] = e.what();
        }
    });
    return t;
}

ResultTable run_pauli_x(const SweepConfig& cfg) {
    const int dim = pick_dim(cfg, max_of(cfg.alpha_grid));

    ResultTable t;
    t.columns = {"alpha", "success_prob", "mean_rounds", "trials",
                 "success_fidelity_psi_plus", "error"};
    t.rows.resize(cfg.alpha_grid.size());
    parallel_for(cfg.alpha_grid.size(), cfg.jobs, [&](std::size_t i) {
        const double al = cfg.alpha_grid[i];
        auto& row = t.rows[i];
        row.assign(6, "");
        row[0] = fmt9(al);
        try {
            const auto ghz = gadgets::build_ghz({al}, dim);
            // Exact per-round success probability from the (A,X) sector weights.
            const auto kg = fock::qubit_basis(0, "A").amplitudes();
            const auto ke = fock::qubit_basis(1, "A").amplitudes();
            const double p_ge =
                ghz.project_mode("A", kg).project_mode("X", ke).amplitudes().squaredNorm();
            const double p_eg =
                ghz.project_mode("A", ke).project_mode("X", kg).amplitudes().squaredNorm();
            const double p_success = p_ge + p_eg;

            long total_rounds = 0;
            for (int trial = 0; trial < cfg.trials; ++trial) {
                std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(trial));
                int r = 1;
                while (r < cfg.max_rounds &&
                       static_cast<double>(rng() >> 11) * 0x1.0p-53 >= p_success)
                    ++r;
                total_rounds += r;
            }
            std::mt19937_64 rng(cfg.seed);
            gadgets::PauliXRound round = gadgets::pauli_x_round(ghz, rng);
            for (int r = 1; !round.success && r < cfg.max_rounds; ++r)
                round = gadgets::pauli_x_round(ghz, rng);
            const double fid = fock::fidelity(states::ecs(states::EcsKind::PsiPlus, {al}, dim),
                                              round.post_channel);
            row[1] = fmt9(p_success);
            row[2] = fmt9(static_cast<double>(total_rounds) / cfg.trials);
            row[3] = std::to_string(cfg.trials);
            row[4] = fmt9(fid);
        } catch (const std::exception& e) {
            row[5] = e.what();
        }
    });
    return t;
}

ResultTable run_kerr_sweep(const SweepConfig& cfg) {
    // Device parameters of the fluxonium-cavity-transmon reduction.
    kerr::TransmonParams tp{38.0, 0.25};
    kerr::FluxoniumParams fp{8.5, 3.0, 0.5};
    kerr::Mat lt = kerr::Mat::Zero(3, 3);
    lt(0, 1) = lt(1, 0) = 0.10;
    lt(1, 2) = lt(2, 1) = 0.141;

    const auto points = kerr::kerr_flux_sweep(fp, tp, cfg.cavity_freq, cfg.flux_grid,
                                              cfg.lambda_f01_reference, cfg.reference_flux, lt,
                                              cfg.n_photon_max);
    ResultTable t;
    t.columns = {"flux", "K_kHz", "omega_tilde_GHz", "error"};
    for (const auto& p : points) {
        if (p.result)
            t.rows.push_back({fmt9(p.flux_ext), fmt9(p.result->kerr_khz),
                              fmt9(p.result->omega_tilde), ""});
        else
            t.rows.push_back({fmt9(p.flux_ext), "", "", p.error});
    }
    return t;
}

fock::DensityOperator wigner_state(const SweepConfig& cfg, double alpha, int dim) {
    const fock::CoherentAmplitude a{alpha};
    if (cfg.state_spec == "vacuum")
        return fock::DensityOperator::from_pure(fock::coherent_state({0.0}, dim, "C"));
    if (cfg.state_spec == "scs+")
        return fock::DensityOperator::from_pure(states::scs(+1, a, dim, "C"));
    if (cfg.state_spec == "scs-")
        return fock::DensityOperator::from_pure(states::scs(-1, a, dim, "C"));
    if (cfg.state_spec == "mixture") {
        const auto vp = fock::coherent_state(a, dim, "C").amplitudes();
        const auto vm = fock::coherent_state({-alpha}, dim, "C").amplitudes();
        fock::Mat rho = 0.5 * (vp * vp.adjoint() + vm * vm.adjoint());
        return fock::DensityOperator({fock::ModeSpec::cavity(dim, "C")}, std::move(rho));
    }
    if (cfg.state_spec == "ecs-conditional") {
        const auto ecs = states::ecs(states::EcsKind::PhiPlus, a, dim);
        return gadgets::verify_parity(ecs, a).second;
    }
    if (cfg.state_spec == "teleport-output") {
        const auto psi = teleport::prepare_total({cfg.wigner_theta, cfg.wigner_phi}, a, dim);
        const auto outcomes = teleport::measure(teleport::bsm_circuit(psi), a,
                                                parse_model(cfg.measurement_model));
        return fock::DensityOperator::from_pure(outcomes[0].post_state);
    }
    throw ConfigError("unknown wigner state spec '" + cfg.state_spec + "'");
}

ResultTable run_wigner_grid(const SweepConfig& cfg) {
    const double alpha = cfg.alpha_grid.empty() ? 2.0 : cfg.alpha_grid[0];
    const double radius =
        std::sqrt(2.0) * std::max(std::abs(cfg.wigner_min), std::abs(cfg.wigner_max));
    // The state is built at its own adequate cutoff, then padded so that the
    // Wigner displacement stays accurate across the grid.
    const int state_dim = fock::required_dim({alpha});
    const int grid_dim = std::max(pick_dim(cfg, alpha), fock::required_dim({alpha + radius}));
    const auto rho = fock::embed(wigner_state(cfg, alpha, state_dim), grid_dim);

    const auto xs = linspace(cfg.wigner_min, cfg.wigner_max, cfg.wigner_points);
    ResultTable t;
    t.columns = {"re_beta", "im_beta", "w", "error"};
    t.rows.resize(xs.size() * xs.size());
    parallel_for(t.rows.size(), cfg.jobs, [&](std::size_t i) {
        const double re = xs[i / xs.size()];
        const double im = xs[i % xs.size()];
        auto& row = t.rows[i];
        row = {fmt9(re), fmt9(im), "", ""};
        try {
            row[2] = fmt9(fock::wigner_point(rho, {re, im}));
        } catch (const std::exception& e) {
            row[3] = e.what();
        }
    });
    return t;
}

}  // namespace

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) throw ConfigError("linspace count must be >= 1");
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    for (int i = 0; i < count; ++i) v[i] = start + (stop - start) * i / (count - 1);
    return v;
}

void SweepConfig::validate() const {
    static const std::vector<std::string> known = {"teleport-fidelity", "bsm-stats", "verify-ecs",
                                                   "pauli-x", "kerr-sweep", "wigner-grid"};
    if (std::find(known.begin(), known.end(), experiment) == known.end())
        throw ConfigError("unknown experiment '" + experiment + "'");
    parse_model(measurement_model);
    parse_format(output_format);
    const bool needs_theta = experiment == "teleport-fidelity" || experiment == "bsm-stats";
    const bool needs_alpha = experiment != "kerr-sweep";
    if (needs_theta && theta_grid.empty()) throw ConfigError("theta grid is empty");
    if (needs_theta && phi_grid.empty()) throw ConfigError("phi grid is empty");
    if (needs_alpha && experiment != "wigner-grid" && alpha_grid.empty())
        throw ConfigError("alpha grid is empty");
    if (experiment == "kerr-sweep" && flux_grid.empty()) throw ConfigError("flux grid is empty");
    if (experiment == "wigner-grid" && wigner_points < 2)
        throw ConfigError("wigner grid needs at least 2 points per axis");
    for (double th : theta_grid)
        if (th < 0.0 || th > std::numbers::pi + 1e-12)
            throw ConfigError("theta out of range [0, pi]: " + fmt9(th));
    for (double al : alpha_grid)
        if (al < 0.0 || al > 3.0) throw ConfigError("alpha out of documented range [0, 3]");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
    if (fock_dim != 0) {
        const double ma = max_of(alpha_grid);
        if (fock_dim < fock::required_dim({ma}))
            throw ConfigError("fock_dim inadequate for max alpha " + fmt9(ma));
    }
}

SweepConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    SweepConfig c;
    try {
        c.experiment = j.at("experiment").get<std::string>();
        if (j.contains("theta")) c.theta_grid = j["theta"].get<std::vector<double>>();
        if (j.contains("phi")) c.phi_grid = j["phi"].get<std::vector<double>>();
        if (j.contains("alpha")) c.alpha_grid = j["alpha"].get<std::vector<double>>();
        if (j.contains("flux")) c.flux_grid = j["flux"].get<std::vector<double>>();
        if (j.contains("fock_dim")) c.fock_dim = j["fock_dim"].get<int>();
        if (j.contains("model")) c.measurement_model = j["model"].get<std::string>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
        if (j.contains("out")) c.output_path = j["out"].get<std::string>();
        if (j.contains("format")) c.output_format = j["format"].get<std::string>();
        if (j.contains("trials")) c.trials = j["trials"].get<int>();
        if (j.contains("max_rounds")) c.max_rounds = j["max_rounds"].get<int>();
        if (j.contains("cavity_freq")) c.cavity_freq = j["cavity_freq"].get<double>();
        if (j.contains("lambda_f01_reference"))
            c.lambda_f01_reference = j["lambda_f01_reference"].get<double>();
        if (j.contains("reference_flux")) c.reference_flux = j["reference_flux"].get<double>();
        if (j.contains("n_photon_max")) c.n_photon_max = j["n_photon_max"].get<int>();
        if (j.contains("state")) c.state_spec = j["state"].get<std::string>();
        if (j.contains("wigner_min")) c.wigner_min = j["wigner_min"].get<double>();
        if (j.contains("wigner_max")) c.wigner_max = j["wigner_max"].get<double>();
        if (j.contains("wigner_points")) c.wigner_points = j["wigner_points"].get<int>();
        if (j.contains("wigner_theta")) c.wigner_theta = j["wigner_theta"].get<double>();
        if (j.contains("wigner_phi")) c.wigner_phi = j["wigner_phi"].get<double>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    return c;
}

std::string config_to_json_text(const SweepConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["theta"] = c.theta_grid;
    j["phi"] = c.phi_grid;
    j["alpha"] = c.alpha_grid;
    j["flux"] = c.flux_grid;
    j["fock_dim"] = c.fock_dim;
    j["model"] = c.measurement_model;
    j["seed"] = c.seed;
    j["jobs"] = c.jobs;
    j["out"] = c.output_path;
    j["format"] = c.output_format;
    j["trials"] = c.trials;
    j["max_rounds"] = c.max_rounds;
    j["cavity_freq"] = c.cavity_freq;
    j["lambda_f01_reference"] = c.lambda_f01_reference;
    j["reference_flux"] = c.reference_flux;
    j["n_photon_max"] = c.n_photon_max;
    j["state"] = c.state_spec;
    j["wigner_min"] = c.wigner_min;
    j["wigner_max"] = c.wigner_max;
    j["wigner_points"] = c.wigner_points;
    j["wigner_theta"] = c.wigner_theta;
    j["wigner_phi"] = c.wigner_phi;
    return j.dump(2);
}

std::vector<std::string> preset_names() { return {"fig2", "fig2b", "fig4"}; }

SweepConfig preset(const std::string& name) {
    SweepConfig c;
    if (name == "fig2") {
        // Fidelity surface over theta and alpha at phi = 0.
        c.experiment = "teleport-fidelity";
        c.theta_grid = linspace(0.0, std::numbers::pi, 65);
        c.alpha_grid = {0.01};
        for (int k = 1; k <= 60; ++k) c.alpha_grid.push_back(0.05 * k);
        c.output_path = "fig2.csv";
        return c;
    }
    if (name == "fig2b") {
        // Fine theta cut at alpha = 2.
        c.experiment = "teleport-fidelity";
        c.theta_grid = linspace(0.0, std::numbers::pi, 129);
        c.alpha_grid = {2.0};
        c.output_path = "fig2b.csv";
        return c;
    }
    if (name == "fig4") {
        // Self-Kerr vs external flux around the operating point.
        c.experiment = "kerr-sweep";
        c.flux_grid = linspace(0.125, 0.325, 41);
        c.output_path = "fig4.csv";
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

ResultTable run(const SweepConfig& cfg) {
    cfg.validate();
    ResultTable t;
    if (cfg.experiment == "teleport-fidelity")
        t = run_teleport_fidelity(cfg);
    else if (cfg.experiment == "bsm-stats")
        t = run_bsm_stats(cfg);
    else if (cfg.experiment == "verify-ecs")
        t = run_verify_ecs(cfg);
    else if (cfg.experiment == "pauli-x")
        t = run_pauli_x(cfg);
    else if (cfg.experiment == "kerr-sweep")
        t = run_kerr_sweep(cfg);
    else
        t = run_wigner_grid(cfg);

    const std::size_t cfg_hash = std::hash<std::string>{}(config_to_json_text(cfg));
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016zx", cfg_hash);
    t.comments.insert(t.comments.begin(),
                      "cqedsim experiment=" + cfg.experiment + " seed=" + std::to_string(cfg.seed) +
                          " config-hash=" + hash_hex + " format=1");
    return t;
}

void write_table(const ResultTable& table, std::ostream& os, OutputFormat fmt) {
    if (fmt == OutputFormat::Csv) {
        for (const auto& c : table.comments) os << "# " << c << "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
        }
        return;
    }
    json j;
    j["comments"] = table.comments;
    j["rows"] = json::array();
    for (const auto& row : table.rows) {
        json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string& cell = row[i];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (!cell.empty() && end && *end == '\0')
                obj[table.columns[i]] = v;
            else
                obj[table.columns[i]] = cell;
        }
        j["rows"].push_back(std::move(obj));
    }
    os << j.dump(2) << "\n";
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("format must be 'csv' or 'json', got '" + name + "'");
}

}  // namespace cqedsim::sweep
