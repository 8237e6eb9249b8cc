#include "cqedsim/kerr.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace cqedsim::kerr {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

QubitSpectrum transmon_solve(double EJ, double EC, int cutoff, int kept) {
    const int dim = 2 * cutoff + 1;
    Mat h = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double n = static_cast<double>(i - cutoff);
        h(i, i) = 4.0 * EC * n * n;
        if (i + 1 < dim) h(i, i + 1) = h(i + 1, i) = -EJ / 2.0;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);

    QubitSpectrum out;
    out.levels.resize(kept);
    for (int j = 0; j < kept; ++j) out.levels[j] = es.eigenvalues()(j) - es.eigenvalues()(0);

    out.charge_elements = Mat::Zero(kept, kept);
    Vec nvals(dim);
    for (int i = 0; i < dim; ++i) nvals(i) = static_cast<double>(i - cutoff);
    for (int j = 0; j < kept; ++j)
        for (int k = 0; k < kept; ++k)
            out.charge_elements(j, k) = std::abs(
                (es.eigenvectors().col(j).array() * nvals.array() * es.eigenvectors().col(k).array())
                    .sum());
    return out;
}

QubitSpectrum fluxonium_solve(const FluxoniumParams& p, int basis) {
    // Harmonic basis of 4 E_C n^2 + (E_L/2) phi^2.
    const double phi_z = std::pow(8.0 * p.EC / p.EL, 0.25) / std::sqrt(2.0);
    const double n_z = 1.0 / (2.0 * phi_z);
    const double omega0 = std::sqrt(8.0 * p.EC * p.EL);

    Mat a = Mat::Zero(basis, basis);
    for (int n = 1; n < basis; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Mat phi = phi_z * (a + a.transpose());

    Eigen::SelfAdjointEigenSolver<Mat> phi_es(phi);
    const double theta = 2.0 * std::numbers::pi * p.flux_ext;
    Vec cosv(basis);
    for (int i = 0; i < basis; ++i) cosv(i) = std::cos(phi_es.eigenvalues()(i) - theta);
    const Mat cos_phi = phi_es.eigenvectors() * cosv.asDiagonal() * phi_es.eigenvectors().transpose();

    Mat h = Mat::Zero(basis, basis);
    for (int n = 0; n < basis; ++n) h(n, n) = omega0 * (n + 0.5);
    h -= p.EJ * cos_phi;

    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    QubitSpectrum out;
    out.levels.resize(p.n_levels_kept);
    for (int j = 0; j < p.n_levels_kept; ++j)
        out.levels[j] = es.eigenvalues()(j) - es.eigenvalues()(0);

    // n = i n_z (a^dag - a); real eigenvectors make |<j|n|k>| = n_z |(a^T - a)_jk|.
    const Mat nmat = n_z * (a.transpose() - a);
    out.charge_elements = Mat::Zero(p.n_levels_kept, p.n_levels_kept);
    for (int j = 0; j < p.n_levels_kept; ++j)
        for (int k = 0; k < p.n_levels_kept; ++k)
            out.charge_elements(j, k) =
                std::abs(es.eigenvectors().col(j).dot(nmat * es.eigenvectors().col(k)));
    return out;
}

}  // namespace

QubitSpectrum transmon_spectrum(const TransmonParams& p) {
    if (p.charge_cutoff < 20) throw ConvergenceError("transmon charge_cutoff must be >= 20");
    QubitSpectrum s = transmon_solve(p.EJ, p.EC, p.charge_cutoff, p.n_levels_kept);
    QubitSpectrum ref = transmon_solve(p.EJ, p.EC, 2 * p.charge_cutoff, p.n_levels_kept);
    if (std::abs(s.levels[1] - ref.levels[1]) > 1e-6)
        throw ConvergenceError("transmon omega_01 not converged at charge_cutoff " +
                               std::to_string(p.charge_cutoff));
    return s;
}

QubitSpectrum fluxonium_spectrum(const FluxoniumParams& p) {
    if (p.EL <= 0.0) throw ConvergenceError("fluxonium requires E_L > 0");
    if (p.basis_size < 60) throw ConvergenceError("fluxonium basis_size must be >= 60");
    QubitSpectrum s = fluxonium_solve(p, p.basis_size);
    QubitSpectrum ref = fluxonium_solve(p, 2 * p.basis_size);
    for (int j = 1; j < p.n_levels_kept; ++j)
        if (std::abs(s.levels[j] - ref.levels[j]) > 1e-6)
            throw ConvergenceError("fluxonium level " + std::to_string(j) +
                                   " not converged at basis_size " + std::to_string(p.basis_size));
    return s;
}

CouplingSet CouplingSet::explicit_values(const Mat& lf, const Mat& lt) {
    CouplingSet c;
    c.lambda_fluxonium = lf;
    c.lambda_transmon = lt;
    return c;
}

Mat CouplingSet::derive_from_elements(const Mat& charge_elements, double lambda01_reference) {
    const double g = lambda01_reference / charge_elements(0, 1);
    return g * charge_elements;
}

AssembledHamiltonian assemble_hamiltonian(const QubitSpectrum& fluxonium,
                                          const QubitSpectrum& transmon,
                                          const CouplingSet& couplings, double cavity_freq,
                                          int n_photon_max) {
    if (n_photon_max < 4) throw DimensionMismatch("n_photon_max must be >= 4");
    const int nf = static_cast<int>(fluxonium.levels.size());
    const int nt = static_cast<int>(transmon.levels.size());
    const int nph = n_photon_max + 1;

    auto eye = [](int d) { return Eigen::MatrixXcd::Identity(d, d).eval(); };
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nph, nph);
    for (int n = 1; n < nph; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));

    Eigen::MatrixXcd hf = Eigen::MatrixXcd::Zero(nf, nf);
    for (int j = 0; j < nf; ++j) hf(j, j) = fluxonium.levels[j];
    Eigen::MatrixXcd ht = Eigen::MatrixXcd::Zero(nt, nt);
    for (int j = 0; j < nt; ++j) ht(j, j) = transmon.levels[j];
    Eigen::MatrixXcd nphot = (a.adjoint() * a).eval();

    Eigen::MatrixXcd h = kron(hf, kron(eye(nt), eye(nph))) + kron(eye(nf), kron(ht, eye(nph))) +
                         cavity_freq * kron(eye(nf), kron(eye(nt), nphot));

    auto add_coupling = [&](const Mat& lambda, int nq, bool is_fluxonium) {
        for (int j = 0; j < nq; ++j)
            for (int k = j + 1; k < nq; ++k) {
                const double l = lambda(j, k);
                if (l == 0.0) continue;
                Eigen::MatrixXcd raise_q = Eigen::MatrixXcd::Zero(nq, nq);
                raise_q(k, j) = 1.0;  // |k><j|
                Eigen::MatrixXcd term =
                    is_fluxonium ? kron(raise_q, kron(eye(nt), a)) : kron(eye(nf), kron(raise_q, a));
                h += l * (term + term.adjoint());
            }
    };
    add_coupling(couplings.lambda_fluxonium, nf, true);
    add_coupling(couplings.lambda_transmon, nt, false);

    return {std::move(h), nf, nt, nph};
}

KerrResult extract_kerr(const AssembledHamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
    const Eigen::Index dim = h.matrix.rows();

    std::array<double, 3> energy{};
    for (int n = 0; n < 3; ++n) {
        // Bare |g_F g_T n> sits at flat index n.
        double best = -1.0;
        Eigen::Index best_k = -1;
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double ov = std::norm(es.eigenvectors()(n, k));
            if (ov > best) {
                best = ov;
                best_k = k;
            }
        }
        if (best < 0.5)
            throw AmbiguousBranch("dressed photon branch n=" + std::to_string(n) +
                                  " has max bare overlap " + std::to_string(best));
        energy[n] = es.eigenvalues()(best_k);
    }

    KerrResult r{};
    r.dressed_energies = energy;
    const double k_ghz = energy[2] - 2.0 * energy[1] + energy[0];
    r.kerr_khz = k_ghz * 1e6;
    r.omega_tilde = energy[1] - energy[0] - k_ghz / 2.0;
    return r;
}

std::vector<SweepPoint> kerr_flux_sweep(const FluxoniumParams& fp_template,
                                        const TransmonParams& tp, double cavity_freq,
                                        const std::vector<double>& flux_grid,
                                        double lambda_f01_reference, double reference_flux,
                                        const Mat& lambda_transmon, int n_photon_max) {
    const QubitSpectrum ts = transmon_spectrum(tp);

    FluxoniumParams ref = fp_template;
    ref.flux_ext = reference_flux;
    const QubitSpectrum ref_spec = fluxonium_spectrum(ref);
    const double g_f = lambda_f01_reference / ref_spec.charge_elements(0, 1);

    std::vector<SweepPoint> out;
    out.reserve(flux_grid.size());
    for (double flux : flux_grid) {
        SweepPoint pt{flux, std::nullopt, ""};
        try {
            FluxoniumParams fp = fp_template;
            fp.flux_ext = flux;
            const QubitSpectrum fs = fluxonium_spectrum(fp);
            CouplingSet c;
            c.lambda_fluxonium = g_f * fs.charge_elements;
            c.lambda_transmon = lambda_transmon;
            pt.result = extract_kerr(assemble_hamiltonian(fs, ts, c, cavity_freq, n_photon_max));
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace cqedsim::kerr
