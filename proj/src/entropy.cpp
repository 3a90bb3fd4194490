#include "entropy_gap/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entropy_gap/errors.hpp"

namespace entropy_gap {

ExtendedReal::ExtendedReal(double value) : value_(value) {
    if (std::isnan(value)) throw std::domain_error("ExtendedReal: NaN");
    if (std::isinf(value)) {
        if (value < 0) throw std::domain_error("ExtendedReal: -inf");
        infinite_ = true;
        value_ = 0.0;
    }
}

double ExtendedReal::value() const {
    if (infinite_) throw std::logic_error("ExtendedReal: value() on +inf");
    return value_;
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return ExtendedReal::infinity();
    return {a.value_ + b.value_};
}

ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    if (b.infinite_) throw std::domain_error("ExtendedReal: subtracting +inf");
    if (a.infinite_) return ExtendedReal::infinity();
    return {a.value_ - b.value_};
}

ExtendedReal operator*(double s, ExtendedReal a) {
    if (s < 0) throw std::domain_error("ExtendedReal: negative scale");
    if (a.infinite_) return s == 0.0 ? ExtendedReal(0.0) : ExtendedReal::infinity();
    return {s * a.value_};
}

namespace {

// Σ f(λ) over eigenvalues in the support of a PSD matrix.
template <class F>
double spectral_sum(const ComplexMatrix& a, F f) {
    const auto es = eig_hermitian(a);
    const double cutoff = default_support_cutoff(es.eigenvalues);
    if (es.eigenvalues.size() && es.eigenvalues(0) < -cutoff) throw NotPSD("negative eigenvalue");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
        if (es.eigenvalues(i) > cutoff) sum += f(es.eigenvalues(i));
    return sum;
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    // Tr(AB) for Hermitian A, B is real.
    return (a.cwiseProduct(b.transpose())).sum().real();
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
    return -spectral_sum(rho, [](double l) { return l * std::log(l); });
}

double von_neumann_entropy(const MultipartiteState& rho) {
    require_valid(rho, 1e-10, "von_neumann_entropy");
    return von_neumann_entropy(rho.matrix());
}

ExtendedReal relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (!support_contained(rho, sigma)) return ExtendedReal::infinity();
    const double rho_log_rho = spectral_sum(rho, [](double l) { return l * std::log(l); });
    const double rho_log_sigma = trace_product(rho, logm_psd(sigma));
    return {rho_log_rho - rho_log_sigma};
}

ExtendedReal relative_entropy(const MultipartiteState& rho, const MultipartiteState& sigma) {
    if (rho.kind() != StateKind::State)
        throw InvalidState("relative_entropy: first argument must be a state");
    require_valid(rho, 1e-10, "relative_entropy");
    require_valid(sigma, 1e-10, "relative_entropy");
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("relative_entropy: dimensions differ");
    return relative_entropy(rho.matrix(), sigma.matrix());
}

ExtendedReal renyi_relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                    double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidAlpha("renyi_relative_entropy: alpha must lie in (0, 1)");
    if (rho.rows() != sigma.rows()) throw DimensionMismatch("renyi_relative_entropy: dims differ");
    const double q = trace_product(powm_psd(rho, alpha), powm_psd(sigma, 1.0 - alpha));
    if (q <= 0.0) return ExtendedReal::infinity();
    return {std::log(q) / (alpha - 1.0)};
}

ExtendedReal renyi_relative_entropy(const MultipartiteState& rho, const MultipartiteState& sigma,
                                    double alpha) {
    if (rho.kind() != StateKind::State)
        throw InvalidState("renyi_relative_entropy: first argument must be a state");
    require_valid(rho, 1e-10, "renyi_relative_entropy");
    require_valid(sigma, 1e-10, "renyi_relative_entropy");
    return renyi_relative_entropy(rho.matrix(), sigma.matrix(), alpha);
}

double root_overlap(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    if (rho.rows() != sigma.rows()) throw DimensionMismatch("root_overlap: dims differ");
    return std::max(0.0, trace_product(sqrtm_psd(rho), sqrtm_psd(sigma)));
}

ExtendedReal root_overlap_bound(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
    const double f = root_overlap(rho, sigma);
    if (f <= 0.0) return ExtendedReal::infinity();
    return {-2.0 * std::log(f)};
}

void require_tripartite(const MultipartiteState& rho, const char* who) {
    if (rho.parties() != 3)
        throw DimensionMismatch(std::string(who) + ": expected a tripartite (A,B,C) state");
}

double cmi(const MultipartiteState& rho) {
    require_tripartite(rho, "cmi");
    require_valid(rho, 1e-10, "cmi");
    const auto& m = rho.matrix();
    const auto& dims = rho.dims();
    const std::size_t ac[] = {0, 2}, bc[] = {1, 2}, c[] = {2};
    return von_neumann_entropy(partial_trace(m, dims, ac)) +
           von_neumann_entropy(partial_trace(m, dims, bc)) - von_neumann_entropy(m) -
           von_neumann_entropy(partial_trace(m, dims, c));
}

}  // namespace entropy_gap
