#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqedsim/errors.hpp"

namespace cqedsim::kerr {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct TransmonParams {
    double EJ;  // GHz
    double EC;  // GHz
    int charge_cutoff = 30;  // charge basis spans [-cutoff, cutoff]
    int n_levels_kept = 3;
};

struct FluxoniumParams {
    double EJ;  // GHz
    double EC;  // GHz
    double EL;  // GHz
    double flux_ext = 0.0;  // external flux in units of the flux quantum
    int basis_size = 80;
    int n_levels_kept = 3;
};

struct QubitSpectrum {
    std::vector<double> levels;  // GHz, ground shifted to 0
    Mat charge_elements;         // |n_jk| between kept eigenstates
};

/// Charge-basis transmon: 4 E_C n^2 - (E_J/2)(|n+1><n| + h.c.), n_g = 0.
QubitSpectrum transmon_spectrum(const TransmonParams& p);

/// Fluxonium in the harmonic basis of its quadratic part:
/// 4 E_C n^2 + (E_L/2) phi^2 - E_J cos(phi - 2 pi flux_ext).
QubitSpectrum fluxonium_spectrum(const FluxoniumParams& p);

struct CouplingSet {
    // lambda[j][k] in GHz for pairs j<k of {0,1,2}; symmetric entry in the
    // Hamiltonian as written.
    Mat lambda_fluxonium = Mat::Zero(3, 3);
    Mat lambda_transmon = Mat::Zero(3, 3);

    static CouplingSet explicit_values(const Mat& lf, const Mat& lt);
    /// lambda_jk = g * |n_jk| with g fixed so lambda_01 matches a reference.
    static Mat derive_from_elements(const Mat& charge_elements, double lambda01_reference);
};

struct AssembledHamiltonian {
    Eigen::MatrixXcd matrix;
    int n_fluxonium;
    int n_transmon;
    int n_fock;  // n_photon_max + 1
};

AssembledHamiltonian assemble_hamiltonian(const QubitSpectrum& fluxonium,
                                          const QubitSpectrum& transmon,
                                          const CouplingSet& couplings, double cavity_freq,
                                          int n_photon_max);

struct KerrResult {
    double omega_tilde;                    // GHz
    double kerr_khz;                       // K in kHz
    std::array<double, 3> dressed_energies;  // GHz, relative to absolute ground
};

/// Locate the dressed |g_F g_T n> branches for n = 0, 1, 2 by maximal
/// bare-state overlap and read off K = E2 - 2 E1 + E0.
KerrResult extract_kerr(const AssembledHamiltonian& h);

struct SweepPoint {
    double flux_ext;
    std::optional<KerrResult> result;
    std::string error;  // non-empty when the point failed
};

std::vector<SweepPoint> kerr_flux_sweep(const FluxoniumParams& fp_template,
                                        const TransmonParams& tp, double cavity_freq,
                                        const std::vector<double>& flux_grid,
                                        double lambda_f01_reference, double reference_flux,
                                        const Mat& lambda_transmon, int n_photon_max = 4);

}  // namespace cqedsim::kerr
