#pragma once

// Dense Hermitian linear algebra on small complex matrices. Every matrix
// function goes through a single eigendecomposition primitive and acts on
// the support of its argument (kernel eigenvalues map to zero).

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace entropy_gap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions; subsystem 0 is the most significant tensor factor.
using Dims = std::vector<std::size_t>;

struct HermitianEigenSystem {
    RealVector eigenvalues;     // ascending
    ComplexMatrix eigenvectors; // columns
};

struct SupportInfo {
    ComplexMatrix projector;
    std::size_t rank = 0;
    double cutoff = 0.0;
};

inline constexpr double kDefaultHermiticityTol = 1e-10;

double frobenius_norm(const ComplexMatrix& a);
ComplexMatrix hermitize(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);
void require_square(const ComplexMatrix& a, const char* who);

/// ‖H − H†‖₂ relative to max(1, ‖H‖₂).
double hermiticity_residual(const ComplexMatrix& h);

/// Throws NotHermitian when the relative residual exceeds the tolerance and
/// ConvergenceFailure if the solver fails. The input is symmetrized first.
HermitianEigenSystem eig_hermitian(const ComplexMatrix& h,
                                   double hermiticity_tol = kDefaultHermiticityTol);

/// d · max|λ| · 2⁻⁴⁵, the scale-aware threshold separating support from kernel.
double default_support_cutoff(const RealVector& eigenvalues);
double default_support_cutoff(const ComplexMatrix& a);

/// U f(Λ⁺) U†: eigenvalues above the cutoff are mapped through f, the rest to 0.
/// Throws NotPSD if an eigenvalue is below −cutoff.
ComplexMatrix matrix_function_psd(const ComplexMatrix& a,
                                  const std::function<double(double)>& f,
                                  std::optional<double> support_cutoff = std::nullopt);

ComplexMatrix sqrtm_psd(const ComplexMatrix& a, std::optional<double> cutoff = std::nullopt);
ComplexMatrix logm_psd(const ComplexMatrix& a, std::optional<double> cutoff = std::nullopt);
ComplexMatrix inv_sqrtm_psd(const ComplexMatrix& a, std::optional<double> cutoff = std::nullopt);
ComplexMatrix powm_psd(const ComplexMatrix& a, double exponent,
                       std::optional<double> cutoff = std::nullopt);

ComplexMatrix expm_hermitian(const ComplexMatrix& h);

SupportInfo support(const ComplexMatrix& a, std::optional<double> cutoff = std::nullopt);
bool is_full_rank(const ComplexMatrix& a, std::optional<double> cutoff = std::nullopt);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

std::size_t total_dim(std::span<const std::size_t> dims);

/// Reduced operator on the kept subsystems, listed in global order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Embeds `m` (whose k-th tensor factor is global subsystem occupied[k]) into
/// the full space as m ⊗ I on the unoccupied factors, reordered to global order.
ComplexMatrix lift_to_full(const ComplexMatrix& m, std::span<const std::size_t> dims,
                           std::span<const std::size_t> occupied);

/// p = 1 (trace norm) or p = 2 (Frobenius).
double schatten_norm(const ComplexMatrix& a, int p);

bool support_contained(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                       std::optional<double> cutoff = std::nullopt);

double real_trace(const ComplexMatrix& a);

}  // namespace entropy_gap
