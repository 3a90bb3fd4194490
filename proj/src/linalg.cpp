#include "entropy_gap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "entropy_gap/errors.hpp"

namespace entropy_gap {

namespace {

constexpr double kTwoPowMinus45 = 2.8421709430404007e-14;

// Digit expansion of a flat index in the mixed radix given by dims.
std::vector<std::size_t> strides_for(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
    return strides;
}

// For every flat index of the full space, the flat index of its digits
// restricted to `sub` (in the order given by `sub`).
std::vector<std::size_t> project_indices(std::span<const std::size_t> dims,
                                         std::span<const std::size_t> sub) {
    const auto strides = strides_for(dims);
    const std::size_t n = total_dim(dims);
    std::vector<std::size_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t acc = 0;
        for (std::size_t s : sub) acc = acc * dims[s] + (i / strides[s]) % dims[s];
        out[i] = acc;
    }
    return out;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> sub) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k)
        if (std::find(sub.begin(), sub.end(), k) == sub.end()) out.push_back(k);
    return out;
}

void check_subsystems(std::span<const std::size_t> dims, std::span<const std::size_t> sub,
                      const char* who) {
    std::vector<std::size_t> sorted(sub.begin(), sub.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty()) throw DimensionMismatch(std::string(who) + ": empty subsystem set");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DimensionMismatch(std::string(who) + ": repeated subsystem index");
    if (sorted.back() >= dims.size())
        throw DimensionMismatch(std::string(who) + ": subsystem index out of range");
    for (std::size_t d : dims)
        if (d == 0) throw DimensionMismatch(std::string(who) + ": zero subsystem dimension");
}

}  // namespace

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

ComplexMatrix hermitize(const ComplexMatrix& a) {
    return (a + a.adjoint()) * 0.5;
}

bool all_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

void require_square(const ComplexMatrix& a, const char* who) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw DimensionMismatch(std::string(who) + ": matrix must be square and non-empty");
}

double hermiticity_residual(const ComplexMatrix& h) {
    return (h - h.adjoint()).norm() / std::max(1.0, h.norm());
}

double real_trace(const ComplexMatrix& a) { return a.trace().real(); }

HermitianEigenSystem eig_hermitian(const ComplexMatrix& h, double hermiticity_tol) {
    require_square(h, "eig_hermitian");
    if (!all_finite(h)) throw NotHermitian("eig_hermitian: non-finite entries");
    if (hermiticity_residual(h) > hermiticity_tol)
        throw NotHermitian("eig_hermitian: residual " + std::to_string(hermiticity_residual(h)));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h));
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("eig_hermitian: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double default_support_cutoff(const RealVector& eigenvalues) {
    const double lmax = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return static_cast<double>(eigenvalues.size()) * lmax * kTwoPowMinus45;
}

double default_support_cutoff(const ComplexMatrix& a) {
    return default_support_cutoff(eig_hermitian(a).eigenvalues);
}

ComplexMatrix matrix_function_psd(const ComplexMatrix& a, const std::function<double(double)>& f,
                                  std::optional<double> support_cutoff) {
    const auto es = eig_hermitian(a);
    const double cutoff = support_cutoff.value_or(default_support_cutoff(es.eigenvalues));
    if (es.eigenvalues.size() && es.eigenvalues(0) < -cutoff)
        throw NotPSD("matrix_function_psd: min eigenvalue " + std::to_string(es.eigenvalues(0)));
    RealVector mapped(es.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        const double lambda = es.eigenvalues(i);
        mapped(i) = lambda > cutoff ? f(lambda) : 0.0;
    }
    const ComplexMatrix out =
        es.eigenvectors * mapped.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
    return hermitize(out);
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& a, std::optional<double> cutoff) {
    return matrix_function_psd(a, [](double x) { return std::sqrt(x); }, cutoff);
}

ComplexMatrix logm_psd(const ComplexMatrix& a, std::optional<double> cutoff) {
    return matrix_function_psd(a, [](double x) { return std::log(x); }, cutoff);
}

ComplexMatrix inv_sqrtm_psd(const ComplexMatrix& a, std::optional<double> cutoff) {
    return matrix_function_psd(a, [](double x) { return 1.0 / std::sqrt(x); }, cutoff);
}

ComplexMatrix powm_psd(const ComplexMatrix& a, double exponent, std::optional<double> cutoff) {
    return matrix_function_psd(a, [exponent](double x) { return std::pow(x, exponent); }, cutoff);
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h) {
    const auto es = eig_hermitian(h);
    const RealVector e = es.eigenvalues.array().exp();
    return hermitize(es.eigenvectors * e.cast<Complex>().asDiagonal() *
                     es.eigenvectors.adjoint());
}

SupportInfo support(const ComplexMatrix& a, std::optional<double> cutoff) {
    const auto es = eig_hermitian(a);
    SupportInfo info;
    info.cutoff = cutoff.value_or(default_support_cutoff(es.eigenvalues));
    if (es.eigenvalues.size() && es.eigenvalues(0) < -info.cutoff)
        throw NotPSD("support: min eigenvalue " + std::to_string(es.eigenvalues(0)));
    const Eigen::Index n = a.rows();
    info.projector = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (es.eigenvalues(i) > info.cutoff) {
            const auto v = es.eigenvectors.col(i);
            info.projector += v * v.adjoint();
            ++info.rank;
        }
    }
    info.projector = hermitize(info.projector);
    return info;
}

bool is_full_rank(const ComplexMatrix& a, std::optional<double> cutoff) {
    return support(a, cutoff).rank == static_cast<std::size_t>(a.rows());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = Eigen::kroneckerProduct(a, b);
    return out;
}

std::size_t total_dim(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    check_subsystems(dims, keep, "partial_trace");
    const std::size_t n = total_dim(dims);
    if (m.rows() != static_cast<Eigen::Index>(n) || m.cols() != static_cast<Eigen::Index>(n))
        throw DimensionMismatch("partial_trace: matrix dimension does not match dims");

    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    const auto traced = complement(dims.size(), kept);
    const auto kept_idx = project_indices(dims, kept);
    const auto traced_idx = project_indices(dims, traced);

    std::size_t out_dim = 1;
    for (std::size_t k : kept) out_dim *= dims[k];
    ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (traced_idx[i] == traced_idx[j]) out(kept_idx[i], kept_idx[j]) += m(i, j);
    return out;
}

ComplexMatrix lift_to_full(const ComplexMatrix& m, std::span<const std::size_t> dims,
                           std::span<const std::size_t> occupied) {
    check_subsystems(dims, occupied, "lift_to_full");
    std::size_t sub_dim = 1;
    for (std::size_t k : occupied) sub_dim *= dims[k];
    if (m.rows() != static_cast<Eigen::Index>(sub_dim) ||
        m.cols() != static_cast<Eigen::Index>(sub_dim))
        throw DimensionMismatch("lift_to_full: matrix dimension does not match occupied dims");

    const std::size_t n = total_dim(dims);
    const auto free = complement(dims.size(), occupied);
    const auto occ_idx = project_indices(dims, occupied);
    const auto free_idx = project_indices(dims, free);

    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (free_idx[i] == free_idx[j]) out(i, j) = m(occ_idx[i], occ_idx[j]);
    return out;
}

double schatten_norm(const ComplexMatrix& a, int p) {
    if (p == 2) return a.norm();
    if (p != 1) throw std::invalid_argument("schatten_norm: only p = 1 and p = 2 are supported");
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().sum();
}

bool support_contained(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                       std::optional<double> cutoff) {
    require_square(rho, "support_contained");
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw DimensionMismatch("support_contained: operand dimensions differ");
    const auto rho_es = eig_hermitian(rho);
    const double rho_cut = cutoff.value_or(default_support_cutoff(rho_es.eigenvalues));
    if (rho_es.eigenvalues.size() && rho_es.eigenvalues(0) < -rho_cut)
        throw NotPSD("support_contained: rho not PSD");
    const auto info = support(sigma, cutoff);
    const ComplexMatrix q = ComplexMatrix::Identity(rho.rows(), rho.cols()) - info.projector;
    const double leak = schatten_norm(q * rho * q, 1);
    return leak <= info.cutoff * real_trace(rho);
}

}  // namespace entropy_gap
