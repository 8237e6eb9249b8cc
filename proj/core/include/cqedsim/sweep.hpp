#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cqedsim/errors.hpp"

namespace cqedsim::sweep {

enum class OutputFormat { Csv, Json };

struct SweepConfig {
    std::string experiment;  // teleport-fidelity | bsm-stats | verify-ecs |
                             // pauli-x | kerr-sweep | wigner-grid
    std::vector<double> theta_grid;
    std::vector<double> phi_grid{0.0};
    std::vector<double> alpha_grid;
    std::vector<double> flux_grid;

    int fock_dim = 0;  // 0 = smallest adequate cutoff for the largest alpha
    std::string measurement_model = "ideal";  // ideal | displaced
    std::uint64_t seed = 1;
    int jobs = 0;  // 0 = hardware concurrency

    std::string output_path;
    std::string output_format = "csv";

    // pauli-x
    int trials = 10000;
    int max_rounds = 1000;

    // kerr-sweep
    double cavity_freq = 9.2;
    double lambda_f01_reference = 0.038;
    double reference_flux = 0.141;
    int n_photon_max = 4;

    // wigner-grid
    std::string state_spec = "vacuum";  // vacuum | scs+ | scs- | mixture |
                                        // ecs-conditional | teleport-output
    double wigner_min = -3.0;
    double wigner_max = 3.0;
    int wigner_points = 41;
    double wigner_theta = 1.5707963267948966;
    double wigner_phi = 0.0;

    void validate() const;  // throws ConfigError
};

std::vector<double> linspace(double start, double stop, int count);

SweepConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SweepConfig& cfg);

std::vector<std::string> preset_names();
SweepConfig preset(const std::string& name);  // throws ConfigError on unknown name

struct ResultTable {
    std::vector<std::string> comments;  // emitted with a leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // cells preformatted (9 sig digits)
};

/// Execute the configured experiment. Per-point failures become rows with a
/// non-empty `error` column; the sweep itself always completes.
ResultTable run(const SweepConfig& cfg);

void write_table(const ResultTable& table, std::ostream& os, OutputFormat fmt);

OutputFormat parse_format(const std::string& name);  // throws ConfigError

}  // namespace cqedsim::sweep
