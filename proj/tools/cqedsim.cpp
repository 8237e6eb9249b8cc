// Command-line front end: parameter sweeps and Wigner grids with CSV/JSON output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cqedsim/sweep.hpp"

namespace {

namespace sweep = cqedsim::sweep;

struct CommonFlags {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::string format;
    std::string model;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int dim = -1;
    int jobs = -1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--preset", f.preset_name, "named preset (see `presets list`)");
    cmd->add_option("--out", f.out_path, "output file path");
    cmd->add_option("--format", f.format, "csv|json");
    cmd->add_option("--seed", f.seed, "RNG seed")->each([&](const std::string&) { f.seed_set = true; });
    cmd->add_option("--dim", f.dim, "Fock cutoff (0 = auto)");
    cmd->add_option("--model", f.model, "ideal|displaced");
    cmd->add_option("--jobs", f.jobs, "worker threads (0 = all processors)");
}

sweep::SweepConfig load_config(const CommonFlags& f) {
    sweep::SweepConfig cfg;
    bool have_base = false;
    if (!f.preset_name.empty()) {
        cfg = sweep::preset(f.preset_name);
        have_base = true;
    }
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw cqedsim::ConfigError("cannot read config file '" + f.config_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg = sweep::config_from_json_text(ss.str());
        have_base = true;
    }
    if (!have_base) throw cqedsim::ConfigError("either --config or --preset is required");

    // Flags override the file.
    if (!f.out_path.empty()) cfg.output_path = f.out_path;
    if (!f.format.empty()) cfg.output_format = f.format;
    if (!f.model.empty()) cfg.measurement_model = f.model;
    if (f.seed_set) cfg.seed = f.seed;
    if (f.dim >= 0) cfg.fock_dim = f.dim;
    if (f.jobs >= 0) cfg.jobs = f.jobs;
    return cfg;
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (const char* dir = std::getenv("CQEDSIM_OUT_DIR"); dir && *dir && p.is_relative())
        p = std::filesystem::path(dir) / p;
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    return p;
}

int execute(const sweep::SweepConfig& cfg) {
    const sweep::ResultTable table = sweep::run(cfg);
    const auto fmt = sweep::parse_format(cfg.output_format);
    if (cfg.output_path.empty()) {
        sweep::write_table(table, std::cout, fmt);
    } else {
        const auto path = resolve_output(cfg.output_path);
        std::ofstream out(path);
        if (!out) throw cqedsim::ConfigError("cannot open output file '" + path.string() + "'");
        sweep::write_table(table, out, fmt);
        std::cerr << "wrote " << table.rows.size() << " rows to " << path.string() << "\n";
    }
    bool any_error = false;
    for (const auto& row : table.rows)
        if (!row.empty() && !row.back().empty()) any_error = true;
    return any_error ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cqedsim: hybrid qubit-cavity teleportation and self-Kerr sweeps"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "run a configured experiment sweep");
    add_common(run_cmd, run_flags);

    CommonFlags wig_flags;
    std::string wig_state = "vacuum";
    double wig_alpha = 2.0, wig_min = -3.0, wig_max = 3.0;
    int wig_points = 41;
    CLI::App* wig_cmd = app.add_subcommand("wigner", "evaluate W(beta) on a square grid");
    add_common(wig_cmd, wig_flags);
    wig_cmd->add_option("--state", wig_state,
                        "vacuum|scs+|scs-|mixture|ecs-conditional|teleport-output");
    wig_cmd->add_option("--alpha", wig_alpha, "coherent amplitude of the state");
    wig_cmd->add_option("--min", wig_min, "grid minimum (both axes)");
    wig_cmd->add_option("--max", wig_max, "grid maximum (both axes)");
    wig_cmd->add_option("--points", wig_points, "grid points per axis");

    CLI::App* presets_cmd = app.add_subcommand("presets", "preset management");
    CLI::App* presets_list = presets_cmd->add_subcommand("list", "list preset names");

    CommonFlags dump_flags;
    CLI::App* config_cmd = app.add_subcommand("config", "config management");
    CLI::App* config_dump = config_cmd->add_subcommand("dump", "print the resolved config as JSON");
    add_common(config_dump, dump_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return execute(load_config(run_flags));

        if (wig_cmd->parsed()) {
            sweep::SweepConfig cfg;
            if (!wig_flags.config_path.empty() || !wig_flags.preset_name.empty())
                cfg = load_config(wig_flags);
            else {
                cfg.experiment = "wigner-grid";
                if (!wig_flags.out_path.empty()) cfg.output_path = wig_flags.out_path;
                if (!wig_flags.format.empty()) cfg.output_format = wig_flags.format;
                if (!wig_flags.model.empty()) cfg.measurement_model = wig_flags.model;
                if (wig_flags.seed_set) cfg.seed = wig_flags.seed;
                if (wig_flags.dim >= 0) cfg.fock_dim = wig_flags.dim;
                if (wig_flags.jobs >= 0) cfg.jobs = wig_flags.jobs;
            }
            cfg.state_spec = wig_state;
            cfg.alpha_grid = {wig_alpha};
            cfg.wigner_min = wig_min;
            cfg.wigner_max = wig_max;
            cfg.wigner_points = wig_points;
            return execute(cfg);
        }

        if (presets_list->parsed() || presets_cmd->parsed()) {
            for (const auto& name : sweep::preset_names()) std::cout << name << "\n";
            return 0;
        }

        if (config_dump->parsed() || config_cmd->parsed()) {
            const sweep::SweepConfig cfg = load_config(dump_flags);
            cfg.validate();
            std::cout << sweep::config_to_json_text(cfg) << "\n";
            return 0;
        }
    } catch (const cqedsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
