#pragma once

#include <random>
#include <utility>

#include "cqedsim/fock.hpp"
#include "cqedsim/teleport.hpp"

namespace cqedsim::gadgets {

using fock::CoherentAmplitude;
using fock::DensityOperator;
using fock::StateVector;
using teleport::MeasurementModel;
using teleport::QubitOutcome;

enum class Verdict { ConsistentWithEcs, ConsistentWithMixture, Inconclusive };

struct VerificationReport {
    double zz_correlation;
    double parity_correlation;
    double fringe_wigner_origin;
    Verdict verdict;
};

/// Correlation of {+-alpha} readouts on cavities B and C.
double verify_zz(const DensityOperator& rho, const CoherentAmplitude& alpha,
                 MeasurementModel model = MeasurementModel::DisplacedVacuum);
double verify_zz(const StateVector& psi, const CoherentAmplitude& alpha,
                 MeasurementModel model = MeasurementModel::DisplacedVacuum);

/// <P_B P_C> and the B state conditioned on even parity in C.
std::pair<double, DensityOperator> verify_parity(const DensityOperator& rho,
                                                 const CoherentAmplitude& alpha);
std::pair<double, DensityOperator> verify_parity(const StateVector& psi,
                                                 const CoherentAmplitude& alpha);

/// Combined ECS-vs-mixture verdict (thresholds: zz >= 0.9 required; parity
/// >= 0.9 reads ECS, <= 0.1 reads mixture).
VerificationReport verify(const DensityOperator& rho, const CoherentAmplitude& alpha,
                          MeasurementModel model = MeasurementModel::DisplacedVacuum);

/// Four-partite entangled state on modes A, X, B, C: Hadamards on A and X,
/// then C^{e,pi}_{AB} C^{e,pi}_{XC} on |g>|g>ECS^{Phi+}.
StateVector build_ghz(const CoherentAmplitude& alpha, int dim);

struct PauliXRound {
    QubitOutcome outcome_A;
    QubitOutcome outcome_X;
    bool success;            // outcomes differ
    StateVector post_channel;  // modes B, C
};

/// Measure A and X on a build_ghz state; unequal outcomes herald the
/// flipped channel ECS^{Psi+}, equal outcomes leave ECS^{Phi+}.
PauliXRound pauli_x_round(const StateVector& ghz_state, std::mt19937_64& rng);

struct PauliXResult {
    int rounds_used;
    StateVector final_channel;
};

/// Repeat-until-success sigma~x on the ECS channel. dim = 0 picks the
/// adequate Fock cutoff automatically. Throws MaxRoundsExceeded.
PauliXResult pauli_x_until_success(const CoherentAmplitude& alpha, int max_rounds,
                                   std::uint64_t seed, int dim = 0);

}  // namespace cqedsim::gadgets
