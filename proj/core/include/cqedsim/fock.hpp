#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqedsim/errors.hpp"

namespace cqedsim::fock {

using cqedsim::AmbiguousBranch;
using cqedsim::ConvergenceError;
using cqedsim::DimensionMismatch;
using cqedsim::ModelMismatch;
using cqedsim::TruncationError;
using cqedsim::UnknownLabel;

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

enum class ModeKind { Qubit, Cavity };

/// One tensor factor: a two-level system or a truncated bosonic mode.
struct ModeSpec {
    ModeKind kind;
    int dim;
    std::string label;

    static ModeSpec qubit(std::string label) { return {ModeKind::Qubit, 2, std::move(label)}; }
    static ModeSpec cavity(int dim, std::string label);
};

/// Dimensionless coherent field amplitude.
struct CoherentAmplitude {
    Complex value{0.0, 0.0};

    CoherentAmplitude() = default;
    CoherentAmplitude(Complex v) : value(v) {}
    CoherentAmplitude(double v) : value(v, 0.0) {}

    double abs() const { return std::abs(value); }
};

/// Smallest cavity dimension for which the Poisson tail beyond the cutoff
/// is negligible (< 1e-10 for |alpha| <= 3): |a|^2 + 7|a| + 10.
int required_dim(const CoherentAmplitude& alpha);
void check_adequacy(const CoherentAmplitude& alpha, int dim);

class StateVector {
public:
    StateVector(std::vector<ModeSpec> modes, Vec amplitudes);

    const std::vector<ModeSpec>& modes() const { return modes_; }
    const Vec& amplitudes() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

    double norm() const { return amps_.norm(); }
    StateVector normalized() const;

    int mode_index(const std::string& label) const;

    /// Apply `op` to the listed modes (ordering of `targets` fixes the
    /// tensor ordering of `op`); all other modes are untouched.
    StateVector apply(const Mat& op, const std::vector<std::string>& targets) const;

    /// Apply `op` to `targets` only on the branch where the control mode
    /// has basis index `control_value`; identity elsewhere.
    StateVector apply_controlled(const std::string& control, int control_value, const Mat& op,
                                 const std::vector<std::string>& targets) const;

    /// Contract <ket| against one mode (the ket is conjugated internally),
    /// dropping it from the tensor product. The result is unnormalized.
    StateVector project_mode(const std::string& label, const Vec& ket) const;

private:
    std::vector<ModeSpec> modes_;
    Vec amps_;
};

class DensityOperator {
public:
    DensityOperator(std::vector<ModeSpec> modes, Mat matrix);
    static DensityOperator from_pure(const StateVector& psi);

    const std::vector<ModeSpec>& modes() const { return modes_; }
    const Mat& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    double trace() const { return mat_.trace().real(); }
    int mode_index(const std::string& label) const;

    /// Hermiticity / unit-trace / positivity check (throws on violation).
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_tol = 1e-10) const;

private:
    std::vector<ModeSpec> modes_;
    Mat mat_;
};

// Single-mode operators on a truncated Fock space.
Mat destroy_op(int dim);
Mat number_operator(int dim);
Mat parity_operator(int dim);

/// D(alpha) = exp(alpha a^dag - alpha^* a), built by diagonalizing the
/// Hermitian generator so the result is unitary on the truncated space.
Mat displacement(const CoherentAmplitude& alpha, int dim);

namespace detail {
/// Same construction without the truncation-adequacy guard (used where the
/// caller controls accuracy, e.g. Wigner scans).
Mat displacement_matrix(Complex alpha, int dim);
}  // namespace detail

StateVector coherent_state(const CoherentAmplitude& alpha, int dim, std::string label = "cav");

/// Computational basis ket of a two-level mode (0 = g, 1 = e).
StateVector qubit_basis(int value, std::string label);

StateVector tensor(const std::vector<StateVector>& parts);
Mat kron(const Mat& a, const Mat& b);

/// Lift a single-mode operator to the full space of `modes`.
Mat lift(const Mat& op, const std::vector<ModeSpec>& modes, const std::string& target);

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep);

Complex inner(const StateVector& u, const StateVector& v);
double fidelity(const StateVector& u, const StateVector& v);
double fidelity(const StateVector& pure, const DensityOperator& rho);

/// W(beta) = (2/pi) Tr[D(beta) P D(-beta) rho] for a single-cavity rho.
double wigner_point(const DensityOperator& rho, Complex beta);

/// von Neumann entropy in bits.
double entropy_bits(const DensityOperator& rho);

/// Pad a single-cavity state or operator with higher Fock levels.
StateVector embed(const StateVector& psi, int new_dim);
DensityOperator embed(const DensityOperator& rho, int new_dim);

}  // namespace cqedsim::fock
