#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entropy_gap/linalg.hpp"

namespace entropy_gap {

/// Seedable generator with a platform-independent Gaussian stream
/// (mt19937_64 words → 53-bit uniforms → Box–Muller).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  // [0, 1)
    double gaussian(); // N(0, 1)
    Complex complex_gaussian(); // real and imaginary parts i.i.d. N(0, 1/2)

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Per-sample seed; independent of evaluation order.
constexpr std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
    return seed ^ index;
}

enum class StateKind { State, Substate };

const char* to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& s);

/// A (sub)density matrix together with its tensor-factor structure.
class MultipartiteState {
public:
    MultipartiteState(ComplexMatrix matrix, Dims dims, std::vector<std::string> labels = {},
                      StateKind kind = StateKind::State);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Dims& dims() const noexcept { return dims_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    StateKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    std::size_t parties() const noexcept { return dims_.size(); }

    /// Reduced state on the kept subsystems (labels and kind carried along).
    MultipartiteState marginal(std::span<const std::size_t> keep) const;

private:
    ComplexMatrix matrix_;
    Dims dims_;
    std::vector<std::string> labels_;
    StateKind kind_;
};

std::vector<std::string> default_labels(std::size_t n);

struct StateDiagnostic {
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double trace = 0.0;
    double trace_deviation = 0.0; // |Tr − 1| for states, max(0, Tr − 1) for substates
    bool dims_consistent = false;
    bool finite = false;
    bool pass = false;
    std::vector<std::string> problems;
};

StateDiagnostic validate(const MultipartiteState& state, double tol = 1e-10);

/// Throws InvalidState carrying the diagnostic problems when validation fails.
void require_valid(const MultipartiteState& state, double tol, const char* who);

struct QuantumChannel {
    std::vector<ComplexMatrix> kraus; // each d_out × d_in
    std::size_t d_in = 0;
    std::size_t d_out = 0;

    static QuantumChannel identity(std::size_t d);
    double completeness_residual() const;
};

// Hilbert–Schmidt (Ginibre) ensemble: G G† / Tr(G G†).
MultipartiteState random_density_hs(const Dims& dims, Rng& rng);
MultipartiteState random_density_hs(std::size_t d, std::uint64_t seed);
MultipartiteState random_pure(const Dims& dims, Rng& rng);
MultipartiteState random_pure(std::size_t d, std::uint64_t seed);

/// Unnormalized G G†, for PSD (not trace-one) test operands.
ComplexMatrix random_psd(std::size_t d, Rng& rng);
/// Hermitian (G + G†)/2 scaled by `scale`.
ComplexMatrix random_hermitian(std::size_t d, Rng& rng, double scale = 1.0);
/// Haar-like unitary from the QR factor of a Ginibre matrix (phase-fixed).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// Rank-deficient ensemble: pure on the first factor ⊗ HS mixed on the rest.
MultipartiteState random_pure_times_mixed(const Dims& dims, Rng& rng);

QuantumChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus, Rng& rng);
QuantumChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus,
                              std::uint64_t seed);

ComplexMatrix apply_channel(const QuantumChannel& phi, const ComplexMatrix& rho);
ComplexMatrix apply_adjoint(const QuantumChannel& phi, const ComplexMatrix& x);

/// Σ_c p_c ρ_A⁽ᶜ⁾ ⊗ ρ_B⁽ᶜ⁾ ⊗ |c⟩⟨c| on (A, B, C) with |C| = p.size().
MultipartiteState markov_state_classical_c(const std::vector<double>& p,
                                           const std::vector<ComplexMatrix>& rhos_a,
                                           const std::vector<ComplexMatrix>& rhos_b);

/// Random full-rank classical-C Markov state on dims (dA, dB, dC).
MultipartiteState random_markov_classical_c(const Dims& dims, Rng& rng);

}  // namespace entropy_gap
