#include "cqedsim/gadgets.hpp"

#include <cmath>
#include <numbers>

#include "cqedsim/gates.hpp"
#include "cqedsim/states.hpp"

namespace cqedsim::gadgets {

using fock::Complex;
using fock::Mat;
using fock::ModeSpec;
using fock::Vec;
using fock::tensor;

namespace {

void require_two_cavities(const std::vector<ModeSpec>& modes) {
    if (modes.size() != 2 || modes[0].kind != fock::ModeKind::Cavity ||
        modes[1].kind != fock::ModeKind::Cavity)
        throw fock::DimensionMismatch("expected a two-cavity input (modes B, C)");
}

// Per-mode sign-readout effects: {E_plus, E_minus}.
std::array<Mat, 2> sign_effects(const CoherentAmplitude& alpha, int dim, MeasurementModel model) {
    if (model == MeasurementModel::DisplacedVacuum) {
        // Vacuum click after D(alpha) identifies |-alpha>.
        const Vec dv = fock::detail::displacement_matrix(-alpha.value, dim).col(0);
        const Mat e_minus = dv * dv.adjoint();
        return {Mat::Identity(dim, dim) - e_minus, e_minus};
    }
    // Rank-one projectors onto |+-alpha>, weights renormalized by the caller.
    const Vec p = fock::coherent_state(alpha, dim).amplitudes();
    const Vec m = fock::coherent_state({-alpha.value}, dim).amplitudes();
    return {p * p.adjoint(), m * m.adjoint()};
}

}  // namespace

double verify_zz(const DensityOperator& rho, const CoherentAmplitude& alpha,
                 MeasurementModel model) {
    require_two_cavities(rho.modes());
    const int db = rho.modes()[0].dim, dc = rho.modes()[1].dim;
    const auto eb = sign_effects(alpha, db, model);
    const auto ec = sign_effects(alpha, dc, model);

    double p[2][2], total = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            p[s][t] = (fock::kron(eb[s], ec[t]) * rho.matrix()).trace().real();
            total += p[s][t];
        }
    return (p[0][0] + p[1][1] - p[0][1] - p[1][0]) / total;
}

double verify_zz(const StateVector& psi, const CoherentAmplitude& alpha, MeasurementModel model) {
    return verify_zz(DensityOperator::from_pure(psi), alpha, model);
}

std::pair<double, DensityOperator> verify_parity(const DensityOperator& rho,
                                                 const CoherentAmplitude& alpha) {
    (void)alpha;
    require_two_cavities(rho.modes());
    const int db = rho.modes()[0].dim, dc = rho.modes()[1].dim;
    const Mat pb = fock::parity_operator(db), pc = fock::parity_operator(dc);
    const double corr = (fock::kron(pb, pc) * rho.matrix()).trace().real();

    // Condition B on even parity in C.
    Mat even_c = Mat::Zero(dc, dc);
    for (int n = 0; n < dc; n += 2) even_c(n, n) = 1.0;
    const Mat proj = fock::kron(Mat::Identity(db, db), even_c);
    const Mat conditioned = proj * rho.matrix() * proj;
    DensityOperator joint(rho.modes(), conditioned / conditioned.trace().real());
    return {corr, partial_trace(joint, {rho.modes()[0].label})};
}

std::pair<double, DensityOperator> verify_parity(const StateVector& psi,
                                                 const CoherentAmplitude& alpha) {
    return verify_parity(DensityOperator::from_pure(psi), alpha);
}

VerificationReport verify(const DensityOperator& rho, const CoherentAmplitude& alpha,
                          MeasurementModel model) {
    VerificationReport r{};
    r.zz_correlation = verify_zz(rho, alpha, model);
    auto [parity, cond_b] = verify_parity(rho, alpha);
    r.parity_correlation = parity;
    r.fringe_wigner_origin = fock::wigner_point(cond_b, 0.0);
    if (r.zz_correlation >= 0.9 && r.parity_correlation >= 0.9)
        r.verdict = Verdict::ConsistentWithEcs;
    else if (r.zz_correlation >= 0.9 && r.parity_correlation <= 0.1)
        r.verdict = Verdict::ConsistentWithMixture;
    else
        r.verdict = Verdict::Inconclusive;
    return r;
}

StateVector build_ghz(const CoherentAmplitude& alpha, int dim) {
    StateVector psi = tensor({fock::qubit_basis(0, "A"), fock::qubit_basis(0, "X"),
                              states::ecs(states::EcsKind::PhiPlus, alpha, dim)});
    psi = psi.apply(gates::hadamard(), {"A"});
    psi = psi.apply(gates::hadamard(), {"X"});
    const Mat cphase = teleport::conditional_phase(std::numbers::pi, dim);
    psi = psi.apply(cphase, {"A", "B"});
    psi = psi.apply(cphase, {"X", "C"});
    return psi;
}

PauliXRound pauli_x_round(const StateVector& ghz_state, std::mt19937_64& rng) {
    const Vec kg = fock::qubit_basis(0, "A").amplitudes();
    const Vec ke = fock::qubit_basis(1, "A").amplitudes();

    std::array<StateVector, 4> branches = {
        ghz_state.project_mode("A", kg).project_mode("X", kg),
        ghz_state.project_mode("A", kg).project_mode("X", ke),
        ghz_state.project_mode("A", ke).project_mode("X", kg),
        ghz_state.project_mode("A", ke).project_mode("X", ke),
    };
    std::array<double, 4> p{};
    for (int k = 0; k < 4; ++k) p[k] = branches[k].amplitudes().squaredNorm();

    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    int pick = 3;
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += p[k];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    const QubitOutcome oa = (pick < 2) ? QubitOutcome::g : QubitOutcome::e;
    const QubitOutcome ox = (pick % 2 == 0) ? QubitOutcome::g : QubitOutcome::e;
    return PauliXRound{oa, ox, oa != ox, branches[pick].normalized()};
}

PauliXResult pauli_x_until_success(const CoherentAmplitude& alpha, int max_rounds,
                                   std::uint64_t seed, int dim) {
    if (max_rounds < 1) throw fock::DimensionMismatch("max_rounds must be >= 1");
    if (dim == 0) dim = fock::required_dim(alpha);
    // The GHZ state is re-prepared identically each round; building once and
    // resampling is exact.
    const StateVector ghz = build_ghz(alpha, dim);
    std::mt19937_64 rng(seed);
    for (int r = 1; r <= max_rounds; ++r) {
        PauliXRound round = pauli_x_round(ghz, rng);
        if (round.success) return {r, std::move(round.post_channel)};
    }
    throw MaxRoundsExceeded("no success within " + std::to_string(max_rounds) + " rounds",
                            max_rounds);
}

}  // namespace cqedsim::gadgets
