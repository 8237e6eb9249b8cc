#pragma once

#include <array>
#include <random>

#include "cqedsim/fock.hpp"
#include "cqedsim/states.hpp"

namespace cqedsim::teleport {

using fock::CoherentAmplitude;
using fock::Complex;
using fock::DensityOperator;
using fock::Mat;
using fock::StateVector;

/// Bloch angles of the state to be teleported.
struct UnknownQubit {
    double theta;  // [0, pi]
    double phi;    // [0, 2*pi)

    Complex a() const { return {std::cos(theta / 2.0), 0.0}; }
    Complex b() const { return std::exp(Complex(0, phi)) * std::sin(theta / 2.0); }
};

enum class QubitOutcome { g, e };
enum class CavitySign { Plus, Minus };

enum class MeasurementModel {
    ProjectiveIdeal,   // rank-one <g/e| x <+-alpha| elements, weights renormalized
    DisplacedVacuum,   // qubit projective; cavity vacuum-click POVM after D(alpha)
};

struct BsmOutcome {
    QubitOutcome qubit;
    CavitySign cavity_sign;
    double probability;
    StateVector post_state;        // mode C, normalized
    states::CvQubit coefficients;  // post state decomposed on {|alpha>, |-alpha>}
};

struct FidelityReport {
    double f_quantum;
    double f_classical;
    double f_dv_classical;
    double alpha;
    double theta;
    double phi;
};

/// |psi>_A (x) ECS^{Phi+}_{BC}.
StateVector prepare_total(const UnknownQubit& q, const CoherentAmplitude& alpha, int dim);

/// C^{e,phi} = |g><g| (x) I + |e><e| (x) e^{i phi n} on (qubit, cavity).
Mat conditional_phase(double phi_gate, int cavity_dim);

/// BSM disentangling circuit: C^{e,pi}_{AB} then R^{y,pi/2}_A.
StateVector bsm_circuit(const StateVector& state);

/// Exhaustive four-outcome measurement, ordered (g,+), (g,-), (e,+), (e,-).
std::array<BsmOutcome, 4> measure(const StateVector& state, const CoherentAmplitude& alpha,
                                  MeasurementModel model);

/// Deterministic sampler over the four outcome probabilities.
int sample_outcome(const std::array<BsmOutcome, 4>& outcomes, std::mt19937_64& rng);

/// Feed-forward: identity / sigma~x / sigma~z / sigma~x sigma~z per outcome.
states::CvQubit recover(const BsmOutcome& outcome);

/// Closed-form teleportation fidelity for the (g,+alpha) branch.
double fidelity_quantum(double theta, double phi, const CoherentAmplitude& alpha);

/// rho^mix = (|a,a><a,a| + |-a,-a><-a,-a|)/2 on modes B, C.
DensityOperator classical_channel(const CoherentAmplitude& alpha, int dim);

/// Classically teleported state (phi = 0 branch), mode C, unit trace.
DensityOperator classical_teleport(const UnknownQubit& q, const CoherentAmplitude& alpha, int dim);

/// <psi_fin| rho^Cl |psi_fin> for the (g,+alpha) expected state, phi = 0.
double fidelity_classical(double theta, const CoherentAmplitude& alpha, int dim);

/// Classical channel pushed through the actual BSM pipeline branch by
/// branch, conditioned on (g,+alpha). Valid for any phi.
DensityOperator classical_teleport_numeric(const UnknownQubit& q, const CoherentAmplitude& alpha,
                                           int dim);
double fidelity_classical_numeric(double theta, double phi, const CoherentAmplitude& alpha,
                                  int dim);

/// DV classical baseline cos^4(theta/2) + sin^4(theta/2).
double fidelity_dv_classical(double theta);

FidelityReport fidelity_report(double theta, double phi, const CoherentAmplitude& alpha, int dim);

}  // namespace cqedsim::teleport
