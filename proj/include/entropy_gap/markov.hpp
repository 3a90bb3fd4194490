#pragma once

// The operator M = exp(log ρ_AC + log ρ_BC − log ρ_C), its trace criterion
// for Markov states, recovery-type reconstructions and a scanner over the
// set {ρ : Tr M = 1}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entropy_gap/entropy.hpp"
#include "entropy_gap/states.hpp"

namespace entropy_gap {

/// Throws SupportDeficient unless `a` has full rank after the support cutoff.
void require_full_rank(const ComplexMatrix& a, const std::string& what);

/// One summand ±log(op) of a log-sum, op living on `occupied` subsystems.
struct LogTerm {
    ComplexMatrix op;
    std::vector<std::size_t> occupied;
    double sign = 1.0;
    std::string name;
};

/// Σ sign·log(op) lifted to the full space. Every op must be full rank.
ComplexMatrix log_sum(const Dims& dims, const std::vector<LogTerm>& terms);

/// exp(log σ_AC + log τ_BC − log ω_C) on H_ABC.
ComplexMatrix markov_operator(const Dims& dims, const ComplexMatrix& sigma_ac,
                              const ComplexMatrix& tau_bc, const ComplexMatrix& omega_c);
/// Same with the marginals of a single tripartite operator.
ComplexMatrix markov_operator(const MultipartiteState& rho);

double trace_of_markov_operator(const MultipartiteState& rho);

/// ‖log ρ_ABC + log ρ_C − log ρ_AC − log ρ_BC‖₂, zero exactly on Markov states.
double ruskai_log_residual(const MultipartiteState& rho);

enum class ReconstructionForm {
    CConditioned, // ρ_AC^½ ρ_C^−½ ρ_BC ρ_C^−½ ρ_AC^½
    LiteralI,     // ρ_AB^½ ρ_B^−½ ρ_BC ρ_B^−½ ρ_AB^½
    LiteralII,    // ρ_BC^½ ρ_B^−½ ρ_AB ρ_B^−½ ρ_BC^½
};

const char* to_string(ReconstructionForm form);

ComplexMatrix petz_reconstruction(const MultipartiteState& rho, ReconstructionForm form);

enum class MarkovVerdict { Markov, NotMarkov, Indeterminate };
const char* to_string(MarkovVerdict verdict);

struct MarkovReport {
    double trace_m = 0.0;
    double cmi_rho = 0.0;
    std::optional<double> cmi_m;   // only when Tr M is within the near-equality band
    double log_residual = 0.0;
    double m_vs_rho_trace_distance = 0.0; // ‖M − ρ‖₁
    double residual_c_conditioned = 0.0;  // ‖M − recon‖₁ per form
    double residual_literal_i = 0.0;
    double residual_literal_ii = 0.0;
    MarkovVerdict verdict = MarkovVerdict::Indeterminate;
    double tol = 0.0;
    std::vector<std::string> notes;
};

MarkovReport check_markov_trace_theorem(const MultipartiteState& rho, double tol = 1e-8);

enum class ScanEnsemble { HilbertSchmidt, MarkovClassicalC };
ScanEnsemble scan_ensemble_from_string(const std::string& s);
const char* to_string(ScanEnsemble e);

struct ScanSummary {
    Dims dims;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    ScanEnsemble ensemble = ScanEnsemble::HilbertSchmidt;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::vector<std::pair<double, std::size_t>> histogram; // (lower edge, count)
    std::vector<double> traces;                            // per sample, index order
    std::vector<std::size_t> top_indices;                  // closest to Tr M = 1
    std::vector<MultipartiteState> top_states;
};

/// Tr M over seeded random samples (sample i uses seed ⊕ i). The histogram
/// has `bins` equal bins over [0, 1]; values above 1 land in the last bin.
ScanSummary scan_trace_statistic(const Dims& dims, std::size_t n_samples, std::uint64_t seed,
                                 ScanEnsemble ensemble = ScanEnsemble::HilbertSchmidt,
                                 std::size_t bins = 20, std::size_t top_k = 5,
                                 std::size_t workers = 1);

}  // namespace entropy_gap
