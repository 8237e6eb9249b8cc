#include "cqedsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cqedsim::fock {

namespace {

std::vector<Eigen::Index> strides_of(const std::vector<ModeSpec>& modes) {
    std::vector<Eigen::Index> strides(modes.size());
    Eigen::Index s = 1;
    for (int k = static_cast<int>(modes.size()) - 1; k >= 0; --k) {
        strides[k] = s;
        s *= modes[k].dim;
    }
    return strides;
}

Eigen::Index total_dim(const std::vector<ModeSpec>& modes) {
    Eigen::Index d = 1;
    for (const auto& m : modes) d *= m.dim;
    return d;
}

// Odometer over the dims of the listed mode positions. Calls f(offset)
// for every combination, where offset is the partial flat index.
template <typename F>
void for_each_index(const std::vector<ModeSpec>& modes, const std::vector<Eigen::Index>& strides,
                    const std::vector<int>& positions, F&& f) {
    std::vector<int> counter(positions.size(), 0);
    while (true) {
        Eigen::Index offset = 0;
        for (size_t i = 0; i < positions.size(); ++i)
            offset += counter[i] * strides[positions[i]];
        f(offset, counter);
        int k = static_cast<int>(positions.size()) - 1;
        while (k >= 0) {
            if (++counter[k] < modes[positions[k]].dim) break;
            counter[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
}

}  // namespace

ModeSpec ModeSpec::cavity(int dim, std::string label) {
    if (dim < 2) throw DimensionMismatch("cavity dim must be >= 2, got " + std::to_string(dim));
    return {ModeKind::Cavity, dim, std::move(label)};
}

int required_dim(const CoherentAmplitude& alpha) {
    const double a = alpha.abs();
    return static_cast<int>(std::ceil(a * a + 7.0 * a + 10.0));
}

void check_adequacy(const CoherentAmplitude& alpha, int dim) {
    const int need = required_dim(alpha);
    if (dim < need) {
        std::ostringstream os;
        os << "Fock cutoff " << dim << " inadequate for |alpha| = " << alpha.abs()
           << " (need >= " << need << ")";
        throw TruncationError(os.str());
    }
}

StateVector::StateVector(std::vector<ModeSpec> modes, Vec amplitudes)
    : modes_(std::move(modes)), amps_(std::move(amplitudes)) {
    if (amps_.size() != total_dim(modes_))
        throw DimensionMismatch("amplitude length " + std::to_string(amps_.size()) +
                                " does not match mode dims product " +
                                std::to_string(total_dim(modes_)));
}

StateVector StateVector::normalized() const {
    const double n = amps_.norm();
    if (n == 0.0) throw DimensionMismatch("cannot normalize zero vector");
    return StateVector(modes_, amps_ / n);
}

int StateVector::mode_index(const std::string& label) const {
    for (size_t k = 0; k < modes_.size(); ++k)
        if (modes_[k].label == label) return static_cast<int>(k);
    throw UnknownLabel("no mode labeled '" + label + "'");
}

StateVector StateVector::apply(const Mat& op, const std::vector<std::string>& targets) const {
    return apply_controlled("", -1, op, targets);
}

StateVector StateVector::apply_controlled(const std::string& control, int control_value,
                                          const Mat& op,
                                          const std::vector<std::string>& targets) const {
    const auto strides = strides_of(modes_);
    std::vector<int> tpos;
    Eigen::Index opdim = 1;
    for (const auto& t : targets) {
        const int k = mode_index(t);
        tpos.push_back(k);
        opdim *= modes_[k].dim;
    }
    if (op.rows() != opdim || op.cols() != opdim)
        throw DimensionMismatch("operator dim " + std::to_string(op.rows()) +
                                " does not match target dims product " + std::to_string(opdim));

    int cpos = -1;
    if (!control.empty()) {
        cpos = mode_index(control);
        if (std::find(tpos.begin(), tpos.end(), cpos) != tpos.end())
            throw DimensionMismatch("control mode '" + control + "' is also a target");
    }

    std::vector<int> others;
    for (int k = 0; k < static_cast<int>(modes_.size()); ++k)
        if (std::find(tpos.begin(), tpos.end(), k) == tpos.end()) others.push_back(k);

    // Precompute flat offsets of the target multi-index.
    std::vector<Eigen::Index> toff(opdim);
    {
        std::vector<int> c(tpos.size(), 0);
        for (Eigen::Index j = 0; j < opdim; ++j) {
            Eigen::Index off = 0;
            for (size_t i = 0; i < tpos.size(); ++i) off += c[i] * strides[tpos[i]];
            toff[j] = off;
            int k = static_cast<int>(tpos.size()) - 1;
            while (k >= 0) {
                if (++c[k] < modes_[tpos[k]].dim) break;
                c[k] = 0;
                --k;
            }
        }
    }

    Vec out = amps_;
    Vec x(opdim), y(opdim);
    const int cslot = cpos < 0 ? -1
                               : static_cast<int>(std::find(others.begin(), others.end(), cpos) -
                                                  others.begin());
    for_each_index(modes_, strides, others, [&](Eigen::Index base, const std::vector<int>& c) {
        if (cslot >= 0 && c[cslot] != control_value) return;
        for (Eigen::Index j = 0; j < opdim; ++j) x(j) = amps_(base + toff[j]);
        y.noalias() = op * x;
        for (Eigen::Index j = 0; j < opdim; ++j) out(base + toff[j]) = y(j);
    });
    return StateVector(modes_, std::move(out));
}

StateVector StateVector::project_mode(const std::string& label, const Vec& ket) const {
    const int p = mode_index(label);
    if (ket.size() != modes_[p].dim)
        throw DimensionMismatch("bra length does not match mode '" + label + "'");
    const auto strides = strides_of(modes_);

    std::vector<ModeSpec> new_modes;
    std::vector<int> others;
    for (int k = 0; k < static_cast<int>(modes_.size()); ++k) {
        if (k == p) continue;
        new_modes.push_back(modes_[k]);
        others.push_back(k);
    }
    Vec out = Vec::Zero(total_dim(new_modes));
    Eigen::Index idx = 0;
    for_each_index(modes_, strides, others, [&](Eigen::Index base, const std::vector<int>&) {
        Complex s = 0.0;
        for (int i = 0; i < modes_[p].dim; ++i) s += std::conj(ket(i)) * amps_(base + i * strides[p]);
        out(idx++) = s;
    });
    return StateVector(std::move(new_modes), std::move(out));
}

DensityOperator::DensityOperator(std::vector<ModeSpec> modes, Mat matrix)
    : modes_(std::move(modes)), mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != total_dim(modes_))
        throw DimensionMismatch("density matrix shape does not match mode dims");
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
    return DensityOperator(psi.modes(), psi.amplitudes() * psi.amplitudes().adjoint());
}

int DensityOperator::mode_index(const std::string& label) const {
    for (size_t k = 0; k < modes_.size(); ++k)
        if (modes_[k].label == label) return static_cast<int>(k);
    throw UnknownLabel("no mode labeled '" + label + "'");
}

void DensityOperator::validate(double herm_tol, double trace_tol, double eig_tol) const {
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw DimensionMismatch("density operator not Hermitian");
    if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > trace_tol)
        throw DimensionMismatch("density operator trace != 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eig_tol)
        throw DimensionMismatch("density operator has negative eigenvalue");
}

Mat destroy_op(int dim) {
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Mat number_operator(int dim) {
    Mat n = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

Mat parity_operator(int dim) {
    Mat p = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return p;
}

namespace detail {
Mat displacement_matrix(Complex alpha, int dim) {
    const Mat a = destroy_op(dim);
    // exp(alpha a^dag - conj(alpha) a) = exp(iH) with H Hermitian.
    const Mat h = Complex(0, -1) * (alpha * a.adjoint() - std::conj(alpha) * a);
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec phases(dim);
    for (int k = 0; k < dim; ++k)
        phases(k) = std::exp(Complex(0, 1) * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace detail

Mat displacement(const CoherentAmplitude& alpha, int dim) {
    check_adequacy(alpha, dim);
    return detail::displacement_matrix(alpha.value, dim);
}

StateVector coherent_state(const CoherentAmplitude& alpha, int dim, std::string label) {
    check_adequacy(alpha, dim);
    Vec c(dim);
    c(0) = std::exp(-0.5 * alpha.abs() * alpha.abs());
    for (int m = 1; m < dim; ++m) c(m) = c(m - 1) * alpha.value / std::sqrt(static_cast<double>(m));
    c /= c.norm();  // renormalize over the truncated space
    return StateVector({ModeSpec::cavity(dim, std::move(label))}, std::move(c));
}

StateVector qubit_basis(int value, std::string label) {
    if (value != 0 && value != 1) throw DimensionMismatch("qubit basis value must be 0 or 1");
    Vec v = Vec::Zero(2);
    v(value) = 1.0;
    return StateVector({ModeSpec::qubit(std::move(label))}, std::move(v));
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

StateVector tensor(const std::vector<StateVector>& parts) {
    if (parts.empty()) throw DimensionMismatch("tensor of zero factors");
    std::vector<ModeSpec> modes;
    Vec amps = parts[0].amplitudes();
    modes = parts[0].modes();
    for (size_t p = 1; p < parts.size(); ++p) {
        const Vec& b = parts[p].amplitudes();
        Vec next(amps.size() * b.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i)
            next.segment(i * b.size(), b.size()) = amps(i) * b;
        amps = std::move(next);
        for (const auto& m : parts[p].modes()) modes.push_back(m);
    }
    for (size_t i = 0; i < modes.size(); ++i)
        for (size_t j = i + 1; j < modes.size(); ++j)
            if (modes[i].label == modes[j].label)
                throw UnknownLabel("duplicate mode label '" + modes[i].label + "' in tensor");
    return StateVector(std::move(modes), std::move(amps));
}

Mat lift(const Mat& op, const std::vector<ModeSpec>& modes, const std::string& target) {
    Mat out = Mat::Identity(1, 1);
    bool found = false;
    for (const auto& m : modes) {
        if (m.label == target) {
            if (op.rows() != m.dim)
                throw DimensionMismatch("lift: operator dim does not match mode '" + target + "'");
            out = kron(out, op);
            found = true;
        } else {
            out = kron(out, Mat::Identity(m.dim, m.dim));
        }
    }
    if (!found) throw UnknownLabel("lift: no mode labeled '" + target + "'");
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
    const auto& modes = rho.modes();
    for (const auto& k : keep) rho.mode_index(k);

    std::vector<bool> kept(modes.size(), false);
    for (const auto& k : keep) kept[rho.mode_index(k)] = true;

    std::vector<ModeSpec> keep_modes;
    Eigen::Index keep_dim = 1, trace_dim = 1;
    for (size_t i = 0; i < modes.size(); ++i) {
        if (kept[i]) {
            keep_modes.push_back(modes[i]);
            keep_dim *= modes[i].dim;
        } else {
            trace_dim *= modes[i].dim;
        }
    }

    const Eigen::Index n = rho.dim();
    std::vector<Eigen::Index> kidx(n), tidx(n);
    {
        std::vector<int> c(modes.size(), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::Index ki = 0, ti = 0;
            for (size_t m = 0; m < modes.size(); ++m) {
                if (kept[m])
                    ki = ki * modes[m].dim + c[m];
                else
                    ti = ti * modes[m].dim + c[m];
            }
            kidx[i] = ki;
            tidx[i] = ti;
            int k = static_cast<int>(modes.size()) - 1;
            while (k >= 0) {
                if (++c[k] < modes[k].dim) break;
                c[k] = 0;
                --k;
            }
        }
    }

    Mat out = Mat::Zero(keep_dim, keep_dim);
    const Mat& m = rho.matrix();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (tidx[i] == tidx[j]) out(kidx[i], kidx[j]) += m(i, j);
    (void)trace_dim;
    return DensityOperator(std::move(keep_modes), std::move(out));
}

Complex inner(const StateVector& u, const StateVector& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("inner: dimension mismatch");
    return u.amplitudes().dot(v.amplitudes());
}

double fidelity(const StateVector& u, const StateVector& v) {
    const Complex ov = inner(u, v);
    return std::norm(ov);
}

double fidelity(const StateVector& pure, const DensityOperator& rho) {
    if (pure.dim() != rho.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
    const Complex f = pure.amplitudes().dot(rho.matrix() * pure.amplitudes());
    return std::max(0.0, f.real());
}

double wigner_point(const DensityOperator& rho, Complex beta) {
    if (rho.modes().size() != 1 || rho.modes()[0].kind != ModeKind::Cavity)
        throw DimensionMismatch("wigner_point requires a single-cavity density operator");
    const int dim = static_cast<int>(rho.dim());
    const Mat d = detail::displacement_matrix(beta, dim);
    const Mat shifted = d.adjoint() * rho.matrix() * d;
    Complex tr = 0.0;
    for (int k = 0; k < dim; ++k) tr += (k % 2 == 0 ? 1.0 : -1.0) * shifted(k, k);
    return (2.0 / std::numbers::pi) * tr.real();
}

double entropy_bits(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double p = es.eigenvalues()(k);
        if (p > 1e-15) s -= p * std::log2(p);
    }
    return s;
}

StateVector embed(const StateVector& psi, int new_dim) {
    if (psi.modes().size() != 1 || psi.modes()[0].kind != ModeKind::Cavity)
        throw DimensionMismatch("embed requires a single-cavity state");
    const int old = psi.modes()[0].dim;
    if (new_dim < old) throw DimensionMismatch("embed cannot shrink the Fock space");
    Vec out = Vec::Zero(new_dim);
    out.head(old) = psi.amplitudes();
    return StateVector({ModeSpec::cavity(new_dim, psi.modes()[0].label)}, std::move(out));
}

DensityOperator embed(const DensityOperator& rho, int new_dim) {
    if (rho.modes().size() != 1 || rho.modes()[0].kind != ModeKind::Cavity)
        throw DimensionMismatch("embed requires a single-cavity density operator");
    const int old = rho.modes()[0].dim;
    if (new_dim < old) throw DimensionMismatch("embed cannot shrink the Fock space");
    Mat out = Mat::Zero(new_dim, new_dim);
    out.topLeftCorner(old, old) = rho.matrix();
    return DensityOperator({ModeSpec::cavity(new_dim, rho.modes()[0].label)}, std::move(out));
}

}  // namespace cqedsim::fock
