#pragma once

#include "cqedsim/fock.hpp"

namespace cqedsim::states {

using fock::CoherentAmplitude;
using fock::Complex;
using fock::StateVector;

/// Logical qubit on the non-orthogonal basis {|alpha>, |-alpha>}.
struct CvQubit {
    Complex a;
    Complex b;
    CoherentAmplitude alpha;
    double norm_const;  // N^{a,b}_alpha

    CvQubit(Complex a, Complex b, CoherentAmplitude alpha);

    StateVector materialize(int dim, std::string label = "C") const;
};

/// sigma~x: (a, b) -> (b, a).
CvQubit pseudo_x(const CvQubit& q);
/// sigma~z: (a, b) -> (a, -b).
CvQubit pseudo_z(const CvQubit& q);

enum class EcsKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class HybridBellKind { PhiPlusHE, PhiMinusHE, PsiPlusHE, PsiMinusHE };

/// Analytic ECS normalization 1/sqrt(2(1 +- e^{-4|alpha|^2})).
double ecs_norm_const(bool plus, const CoherentAmplitude& alpha);

/// Two-cavity Bell-type entangled coherent state (modes B, C).
StateVector ecs(EcsKind kind, const CoherentAmplitude& alpha, int dim);

/// Schroedinger cat |alpha> + sign*|-alpha>, sign = +1 or -1.
StateVector scs(int sign, const CoherentAmplitude& alpha, int dim, std::string label = "cav");

/// Qubit-cavity entangled pair (modes A, B).
StateVector hybrid_bell(HybridBellKind kind, const CoherentAmplitude& alpha, int dim);

/// Idealized ECS-creation circuit on qubit M and cavities B, C:
/// superposition prep on M, displacement of both cavities by 2*alpha on the
/// |g> branch, joint-vacuum-conditioned pi flip of M, then D(-alpha) on each
/// cavity. `dim` is the per-cavity cutoff and must be adequate for 2*alpha.
StateVector create_ecs_circuit(const CoherentAmplitude& alpha, int dim);

}  // namespace cqedsim::states
