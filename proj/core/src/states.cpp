#include "cqedsim/states.hpp"

#include <cmath>

#include "cqedsim/gates.hpp"

namespace cqedsim::states {

using fock::Mat;
using fock::ModeSpec;
using fock::Vec;
using fock::tensor;

CvQubit::CvQubit(Complex a_, Complex b_, CoherentAmplitude alpha_)
    : a(a_), b(b_), alpha(alpha_) {
    const double x = std::exp(-2.0 * alpha.abs() * alpha.abs());
    // reduces to 1/sqrt(1 + 2 Re[b* a] x) when |a|^2 + |b|^2 = 1
    const double n2 = std::norm(a) + std::norm(b) + 2.0 * std::real(std::conj(b) * a) * x;
    norm_const = 1.0 / std::sqrt(n2);
}

StateVector CvQubit::materialize(int dim, std::string label) const {
    const StateVector plus = fock::coherent_state(alpha, dim, label);
    const StateVector minus = fock::coherent_state({-alpha.value}, dim, label);
    Vec v = a * plus.amplitudes() + b * minus.amplitudes();
    return StateVector({ModeSpec::cavity(dim, std::move(label))}, std::move(v)).normalized();
}

CvQubit pseudo_x(const CvQubit& q) { return CvQubit(q.b, q.a, q.alpha); }
CvQubit pseudo_z(const CvQubit& q) { return CvQubit(q.a, -q.b, q.alpha); }

double ecs_norm_const(bool plus, const CoherentAmplitude& alpha) {
    const double y = std::exp(-4.0 * alpha.abs() * alpha.abs());
    return 1.0 / std::sqrt(2.0 * (plus ? 1.0 + y : 1.0 - y));
}

StateVector ecs(EcsKind kind, const CoherentAmplitude& alpha, int dim) {
    const StateVector pb = fock::coherent_state(alpha, dim, "B");
    const StateVector mb = fock::coherent_state({-alpha.value}, dim, "B");
    const StateVector pc = fock::coherent_state(alpha, dim, "C");
    const StateVector mc = fock::coherent_state({-alpha.value}, dim, "C");

    StateVector first = tensor({pb, pc}), second = tensor({mb, mc});
    double sign = 1.0;
    switch (kind) {
        case EcsKind::PhiPlus: break;
        case EcsKind::PhiMinus: sign = -1.0; break;
        case EcsKind::PsiPlus:
            first = tensor({pb, mc});
            second = tensor({mb, pc});
            break;
        case EcsKind::PsiMinus:
            first = tensor({pb, mc});
            second = tensor({mb, pc});
            sign = -1.0;
            break;
    }
    Vec v = first.amplitudes() + sign * second.amplitudes();
    return StateVector(first.modes(), std::move(v)).normalized();
}

StateVector scs(int sign, const CoherentAmplitude& alpha, int dim, std::string label) {
    if (sign != 1 && sign != -1) throw fock::DimensionMismatch("scs sign must be +1 or -1");
    return CvQubit(1.0, static_cast<double>(sign), alpha).materialize(dim, std::move(label));
}

StateVector hybrid_bell(HybridBellKind kind, const CoherentAmplitude& alpha, int dim) {
    const StateVector g = fock::qubit_basis(0, "A");
    const StateVector e = fock::qubit_basis(1, "A");
    const StateVector pb = fock::coherent_state(alpha, dim, "B");
    const StateVector mb = fock::coherent_state({-alpha.value}, dim, "B");

    StateVector first = tensor({g, pb}), second = tensor({e, mb});
    double sign = 1.0;
    switch (kind) {
        case HybridBellKind::PhiPlusHE: break;
        case HybridBellKind::PhiMinusHE: sign = -1.0; break;
        case HybridBellKind::PsiPlusHE:
            first = tensor({g, mb});
            second = tensor({e, pb});
            break;
        case HybridBellKind::PsiMinusHE:
            first = tensor({g, mb});
            second = tensor({e, pb});
            sign = -1.0;
            break;
    }
    // The printed 1/sqrt(2) prefactor is only asymptotic; normalize numerically.
    Vec v = first.amplitudes() + sign * second.amplitudes();
    return StateVector(first.modes(), std::move(v)).normalized();
}

StateVector create_ecs_circuit(const CoherentAmplitude& alpha, int dim) {
    const CoherentAmplitude two_alpha{2.0 * alpha.value};
    fock::check_adequacy(two_alpha, dim);

    StateVector psi = tensor({fock::qubit_basis(0, "M"),
                              fock::coherent_state({0.0}, dim, "B"),
                              fock::coherent_state({0.0}, dim, "C")});

    // Superposition prep on M: |g> -> (|g>+|e>)/sqrt(2).
    psi = psi.apply(gates::hadamard(), {"M"});

    // D^g_{2alpha}: displace both cavities on the |g> branch.
    const Mat d2 = fock::displacement(two_alpha, dim);
    psi = psi.apply_controlled("M", 0, fock::kron(d2, d2), {"B", "C"});

    // R^{00}_pi: flip M where B and C are jointly in vacuum.
    {
        Vec amps = psi.amplitudes();
        const Eigen::Index block = static_cast<Eigen::Index>(dim) * dim;
        std::swap(amps(0), amps(block));  // (M=g, 00) <-> (M=e, 00)
        psi = StateVector(psi.modes(), std::move(amps));
    }

    // Unconditional D(-alpha) on each cavity.
    const Mat dm = fock::displacement({-alpha.value}, dim);
    psi = psi.apply(dm, {"B"});
    psi = psi.apply(dm, {"C"});
    return psi.normalized();
}

}  // namespace cqedsim::states
