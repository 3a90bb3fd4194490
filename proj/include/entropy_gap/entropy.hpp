#pragma once

#include <limits>

#include "entropy_gap/linalg.hpp"
#include "entropy_gap/states.hpp"

namespace entropy_gap {

/// A finite real or +∞ (the value of a relative entropy with incompatible
/// supports). Never holds NaN.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    ExtendedReal(double value);  // NOLINT: implicit from finite reals
    static constexpr ExtendedReal infinity() { return ExtendedReal(Tag{}); }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }
    /// Finite value, or +inf as an IEEE double.
    constexpr double as_double() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }
    double value() const;  // throws std::logic_error on +∞

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
    /// +∞ − finite = +∞; finite − +∞ is not representable and throws.
    friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b);
    friend ExtendedReal operator*(double s, ExtendedReal a);  // s ≥ 0
    friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

private:
    struct Tag {};
    constexpr explicit ExtendedReal(Tag) : infinite_(true) {}
    double value_ = 0.0;
    bool infinite_ = false;
};

inline constexpr double kSsaSlack = 1e-9;
/// Display conversion only; every quantity is computed in nats.
inline constexpr double kBitsPerNat = 1.4426950408889634;

double von_neumann_entropy(const ComplexMatrix& rho);
double von_neumann_entropy(const MultipartiteState& rho);

/// Tr ρ(log ρ − log σ) when supp ρ ⊆ supp σ, else +∞. σ need not be
/// normalized at this level.
ExtendedReal relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);
/// Validates ρ as a state and σ as a state or substate.
ExtendedReal relative_entropy(const MultipartiteState& rho, const MultipartiteState& sigma);

/// (1/(α−1)) ln Tr ρ^α σ^{1−α} for α ∈ (0, 1).
ExtendedReal renyi_relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                    double alpha);
ExtendedReal renyi_relative_entropy(const MultipartiteState& rho, const MultipartiteState& sigma,
                                    double alpha);

/// Tr √ρ √σ.
double root_overlap(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// −2 ln Tr √ρ √σ, +∞ for a vanishing overlap.
ExtendedReal root_overlap_bound(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// I(A:B|C) = S(AC) + S(BC) − S(ABC) − S(C) for a tripartite (A, B, C) state.
double cmi(const MultipartiteState& rho);

void require_tripartite(const MultipartiteState& rho, const char* who);

}  // namespace entropy_gap
