#include "cqedsim/teleport.hpp"

#include <cmath>
#include <numbers>

#include "cqedsim/gates.hpp"

namespace cqedsim::teleport {

using fock::ModeSpec;
using fock::Vec;
using fock::tensor;
using states::CvQubit;

StateVector prepare_total(const UnknownQubit& q, const CoherentAmplitude& alpha, int dim) {
    Vec qv(2);
    qv << q.a(), q.b();
    StateVector psi_a({ModeSpec::qubit("A")}, std::move(qv));
    return tensor({psi_a, states::ecs(states::EcsKind::PhiPlus, alpha, dim)});
}

Mat conditional_phase(double phi_gate, int cavity_dim) {
    Mat op = Mat::Zero(2 * cavity_dim, 2 * cavity_dim);
    for (int n = 0; n < cavity_dim; ++n) {
        op(n, n) = 1.0;  // |g> branch
        op(cavity_dim + n, cavity_dim + n) = std::exp(Complex(0, phi_gate * n));
    }
    return op;
}

StateVector bsm_circuit(const StateVector& state) {
    const int b = state.mode_index("B");
    const int cav_dim = state.modes()[b].dim;
    StateVector mid = state.apply(conditional_phase(std::numbers::pi, cav_dim), {"A", "B"});
    return mid.apply(gates::ry_pi2(), {"A"});
}

namespace {

CvQubit decompose_cv(const StateVector& psi_c, const CoherentAmplitude& alpha) {
    const int dim = psi_c.modes()[0].dim;
    const Vec plus = fock::coherent_state(alpha, dim).amplitudes();
    const Vec minus = fock::coherent_state({-alpha.value}, dim).amplitudes();
    Eigen::Matrix2cd gram;
    gram << plus.dot(plus), plus.dot(minus), minus.dot(plus), minus.dot(minus);
    Eigen::Vector2cd rhs(plus.dot(psi_c.amplitudes()), minus.dot(psi_c.amplitudes()));
    const Eigen::Vector2cd c = gram.fullPivLu().solve(rhs);
    return CvQubit(c(0), c(1), alpha);
}

BsmOutcome make_outcome(QubitOutcome q, CavitySign s, double prob, const StateVector& raw,
                        const CoherentAmplitude& alpha) {
    if (raw.norm() < 1e-150) {
        // Dead branch (probability ~0); report vacuum as a placeholder.
        const int dim = raw.modes()[0].dim;
        StateVector vac = fock::coherent_state({0.0}, dim, raw.modes()[0].label);
        return {q, s, prob, vac, CvQubit(1.0, 0.0, alpha)};
    }
    StateVector post = raw.normalized();
    CvQubit coeff = decompose_cv(post, alpha);
    return {q, s, prob, std::move(post), coeff};
}

}  // namespace

std::array<BsmOutcome, 4> measure(const StateVector& state, const CoherentAmplitude& alpha,
                                  MeasurementModel model) {
    int bi = -1;
    try {
        state.mode_index("A");
        bi = state.mode_index("B");
        state.mode_index("C");
    } catch (const fock::UnknownLabel&) {
        throw fock::ModelMismatch("measure requires modes A, B, C");
    }
    const int dim_b = state.modes()[bi].dim;

    const Vec ket_g = fock::qubit_basis(0, "A").amplitudes();
    const Vec ket_e = fock::qubit_basis(1, "A").amplitudes();
    const Vec ket_p = fock::coherent_state(alpha, dim_b).amplitudes();
    const Vec ket_m = fock::coherent_state({-alpha.value}, dim_b).amplitudes();

    std::array<BsmOutcome, 4> out = {
        BsmOutcome{QubitOutcome::g, CavitySign::Plus, 0, state.project_mode("A", ket_g),
                   CvQubit(1.0, 0.0, alpha)},
        BsmOutcome{QubitOutcome::g, CavitySign::Minus, 0, state.project_mode("A", ket_g),
                   CvQubit(1.0, 0.0, alpha)},
        BsmOutcome{QubitOutcome::e, CavitySign::Plus, 0, state.project_mode("A", ket_e),
                   CvQubit(1.0, 0.0, alpha)},
        BsmOutcome{QubitOutcome::e, CavitySign::Minus, 0, state.project_mode("A", ket_e),
                   CvQubit(1.0, 0.0, alpha)},
    };

    if (model == MeasurementModel::ProjectiveIdeal) {
        double wsum = 0.0;
        std::array<StateVector, 4> raw = {
            out[0].post_state.project_mode("B", ket_p), out[1].post_state.project_mode("B", ket_m),
            out[2].post_state.project_mode("B", ket_p), out[3].post_state.project_mode("B", ket_m)};
        std::array<double, 4> w{};
        for (int k = 0; k < 4; ++k) {
            w[k] = raw[k].amplitudes().squaredNorm();
            wsum += w[k];
        }
        for (int k = 0; k < 4; ++k)
            out[k] = make_outcome(out[k].qubit, out[k].cavity_sign, w[k] / wsum, raw[k], alpha);
    } else {
        // Vacuum-click POVM on B after D(alpha): click means the field was
        // |-alpha>; the complementary outcome is declared +alpha.
        const Vec d_vac = fock::detail::displacement_matrix(-alpha.value, dim_b).col(0);
        for (int q = 0; q < 2; ++q) {
            const StateVector& psi_q = out[2 * q].post_state;  // modes B, C
            const double wq = psi_q.amplitudes().squaredNorm();
            StateVector clicked = psi_q.project_mode("B", d_vac);
            const double p_minus = clicked.amplitudes().squaredNorm();
            const double p_plus = std::max(0.0, wq - p_minus);
            StateVector inferred = psi_q.project_mode("B", ket_p);
            out[2 * q] = make_outcome(out[2 * q].qubit, CavitySign::Plus, p_plus, inferred, alpha);
            out[2 * q + 1] =
                make_outcome(out[2 * q + 1].qubit, CavitySign::Minus, p_minus, clicked, alpha);
        }
    }
    return out;
}

int sample_outcome(const std::array<BsmOutcome, 4>& outcomes, std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += outcomes[k].probability;
        if (u < acc) return k;
    }
    return 3;
}

states::CvQubit recover(const BsmOutcome& outcome) {
    const CvQubit& c = outcome.coefficients;
    const bool g = outcome.qubit == QubitOutcome::g;
    const bool plus = outcome.cavity_sign == CavitySign::Plus;
    if (g && plus) return c;
    if (g && !plus) return pseudo_x(c);
    if (!g && plus) return pseudo_z(c);
    return pseudo_x(pseudo_z(c));
}

double fidelity_quantum(double theta, double phi, const CoherentAmplitude& alpha) {
    const double x = std::exp(-2.0 * alpha.abs() * alpha.abs());
    const Complex a(std::cos(theta / 2.0), 0.0);
    const Complex b = std::exp(Complex(0, phi)) * std::sin(theta / 2.0);
    const Complex at = a + x * b;
    const Complex bt = x * a + b;
    const double w =
        1.0 + 4.0 * x * std::cos(phi) * std::cos(theta / 2.0) * std::sin(theta / 2.0) + x * x;
    const double n = CvQubit(a, b, alpha).norm_const;
    const double nt = CvQubit(at, bt, alpha).norm_const;
    return std::norm(nt * n * w);
}

DensityOperator classical_channel(const CoherentAmplitude& alpha, int dim) {
    const StateVector pp = tensor({fock::coherent_state(alpha, dim, "B"),
                                   fock::coherent_state(alpha, dim, "C")});
    const StateVector mm = tensor({fock::coherent_state({-alpha.value}, dim, "B"),
                                   fock::coherent_state({-alpha.value}, dim, "C")});
    fock::Mat rho = 0.5 * (pp.amplitudes() * pp.amplitudes().adjoint() +
                           mm.amplitudes() * mm.amplitudes().adjoint());
    return DensityOperator(pp.modes(), std::move(rho));
}

DensityOperator classical_teleport(const UnknownQubit& q, const CoherentAmplitude& alpha, int dim) {
    const double a2 = alpha.abs() * alpha.abs();
    const double c = std::cos(q.theta / 2.0), s = std::sin(q.theta / 2.0);
    const double f_plus = c * c + s * s * std::exp(-4.0 * a2) + c * s * std::exp(-2.0 * a2);
    const double f_minus = c * c * std::exp(-4.0 * a2) + s * s + c * s * std::exp(-2.0 * a2);

    const Vec vp = fock::coherent_state(alpha, dim, "C").amplitudes();
    const Vec vm = fock::coherent_state({-alpha.value}, dim, "C").amplitudes();
    fock::Mat rho = f_plus * (vp * vp.adjoint()) + f_minus * (vm * vm.adjoint());
    rho /= rho.trace().real();  // the paper's renormalization M, fixed to unit trace
    return DensityOperator({ModeSpec::cavity(dim, "C")}, std::move(rho));
}

double fidelity_classical(double theta, const CoherentAmplitude& alpha, int dim) {
    const UnknownQubit q{theta, 0.0};
    const DensityOperator rho = classical_teleport(q, alpha, dim);
    const StateVector expected = CvQubit(q.a(), q.b(), alpha).materialize(dim, "C");
    return fidelity(expected, rho);
}

DensityOperator classical_teleport_numeric(const UnknownQubit& q, const CoherentAmplitude& alpha,
                                           int dim) {
    // rho^mix is an equal mixture of |a,a> and |-a,-a>; teleport each branch
    // as a pure state and mix the conditioned outputs.
    Vec qv(2);
    qv << q.a(), q.b();
    const StateVector psi_a({ModeSpec::qubit("A")}, qv);
    const Vec ket_g = fock::qubit_basis(0, "A").amplitudes();
    const Vec ket_p = fock::coherent_state(alpha, dim).amplitudes();

    fock::Mat rho = fock::Mat::Zero(dim, dim);
    for (int branch = 0; branch < 2; ++branch) {
        const Complex amp = branch == 0 ? alpha.value : -alpha.value;
        const StateVector channel = tensor({fock::coherent_state({amp}, dim, "B"),
                                            fock::coherent_state({amp}, dim, "C")});
        StateVector mid = bsm_circuit(tensor({psi_a, channel}));
        const StateVector v = mid.project_mode("A", ket_g).project_mode("B", ket_p);
        rho += 0.5 * (v.amplitudes() * v.amplitudes().adjoint());
    }
    rho /= rho.trace().real();
    return DensityOperator({ModeSpec::cavity(dim, "C")}, std::move(rho));
}

double fidelity_classical_numeric(double theta, double phi, const CoherentAmplitude& alpha,
                                  int dim) {
    const UnknownQubit q{theta, phi};
    const DensityOperator rho = classical_teleport_numeric(q, alpha, dim);
    const StateVector expected = CvQubit(q.a(), q.b(), alpha).materialize(dim, "C");
    return fidelity(expected, rho);
}

double fidelity_dv_classical(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return c * c * c * c + s * s * s * s;
}

FidelityReport fidelity_report(double theta, double phi, const CoherentAmplitude& alpha, int dim) {
    return {fidelity_quantum(theta, phi, alpha), fidelity_classical(theta, alpha, dim),
            fidelity_dv_classical(theta), alpha.abs(), theta, phi};
}

}  // namespace cqedsim::teleport
