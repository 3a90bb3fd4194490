#include "entropy_gap/markov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entropy_gap/errors.hpp"
#include "entropy_gap/parallel.hpp"

namespace entropy_gap {

namespace {

const std::vector<std::size_t> kAC{0, 2}, kBC{1, 2}, kAB{0, 1}, kB{1}, kC{2};

}  // namespace

void require_full_rank(const ComplexMatrix& a, const std::string& what) {
    const auto info = support(a);
    if (info.rank != static_cast<std::size_t>(a.rows()))
        throw SupportDeficient(what + " has rank " + std::to_string(info.rank) + " < " +
                               std::to_string(a.rows()));
}

ComplexMatrix log_sum(const Dims& dims, const std::vector<LogTerm>& terms) {
    const std::size_t n = total_dim(dims);
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& t : terms) {
        require_full_rank(t.op, t.name.empty() ? "log operand" : t.name);
        sum += t.sign * lift_to_full(logm_psd(t.op), dims, t.occupied);
    }
    return hermitize(sum);
}

ComplexMatrix markov_operator(const Dims& dims, const ComplexMatrix& sigma_ac,
                              const ComplexMatrix& tau_bc, const ComplexMatrix& omega_c) {
    if (dims.size() != 3) throw DimensionMismatch("markov_operator: expected dims (A,B,C)");
    return expm_hermitian(log_sum(dims, {{sigma_ac, kAC, 1.0, "sigma_AC"},
                                         {tau_bc, kBC, 1.0, "tau_BC"},
                                         {omega_c, kC, -1.0, "omega_C"}}));
}

ComplexMatrix markov_operator(const MultipartiteState& rho) {
    require_tripartite(rho, "markov_operator");
    const auto& m = rho.matrix();
    const auto& dims = rho.dims();
    return markov_operator(dims, partial_trace(m, dims, kAC), partial_trace(m, dims, kBC),
                           partial_trace(m, dims, kC));
}

double trace_of_markov_operator(const MultipartiteState& rho) {
    return real_trace(markov_operator(rho));
}

double ruskai_log_residual(const MultipartiteState& rho) {
    require_tripartite(rho, "ruskai_log_residual");
    const auto& m = rho.matrix();
    const auto& dims = rho.dims();
    const std::vector<std::size_t> all{0, 1, 2};
    const ComplexMatrix r = log_sum(dims, {{m, all, 1.0, "rho_ABC"},
                                           {partial_trace(m, dims, kC), kC, 1.0, "rho_C"},
                                           {partial_trace(m, dims, kAC), kAC, -1.0, "rho_AC"},
                                           {partial_trace(m, dims, kBC), kBC, -1.0, "rho_BC"}});
    return r.norm();
}

const char* to_string(ReconstructionForm form) {
    switch (form) {
        case ReconstructionForm::CConditioned: return "c-conditioned";
        case ReconstructionForm::LiteralI: return "literal-i";
        case ReconstructionForm::LiteralII: return "literal-ii";
    }
    return "?";
}

ComplexMatrix petz_reconstruction(const MultipartiteState& rho, ReconstructionForm form) {
    require_tripartite(rho, "petz_reconstruction");
    const auto& m = rho.matrix();
    const auto& dims = rho.dims();
    auto lifted = [&](const std::vector<std::size_t>& keep) {
        return std::pair{partial_trace(m, dims, keep), keep};
    };
    // outer^½ inner^−½ middle inner^−½ outer^½
    auto sandwich = [&](const auto& outer, const auto& inner, const auto& middle,
                        const char* inner_name) {
        require_full_rank(inner.first, inner_name);
        const ComplexMatrix o = lift_to_full(sqrtm_psd(outer.first), dims, outer.second);
        const ComplexMatrix i = lift_to_full(inv_sqrtm_psd(inner.first), dims, inner.second);
        const ComplexMatrix x = lift_to_full(middle.first, dims, middle.second);
        return hermitize(o * i * x * i * o);
    };
    switch (form) {
        case ReconstructionForm::CConditioned:
            return sandwich(lifted(kAC), lifted(kC), lifted(kBC), "rho_C");
        case ReconstructionForm::LiteralI:
            return sandwich(lifted(kAB), lifted(kB), lifted(kBC), "rho_B");
        case ReconstructionForm::LiteralII:
            return sandwich(lifted(kBC), lifted(kB), lifted(kAB), "rho_B");
    }
    throw std::invalid_argument("petz_reconstruction: unknown form");
}

const char* to_string(MarkovVerdict verdict) {
    switch (verdict) {
        case MarkovVerdict::Markov: return "Markov";
        case MarkovVerdict::NotMarkov: return "NotMarkov";
        case MarkovVerdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

MarkovReport check_markov_trace_theorem(const MultipartiteState& rho, double tol) {
    require_tripartite(rho, "check_markov_trace_theorem");
    require_valid(rho, 1e-10, "check_markov_trace_theorem");
    require_full_rank(rho.matrix(), "rho_ABC");

    MarkovReport report;
    report.tol = tol;
    const ComplexMatrix m = markov_operator(rho);
    report.trace_m = real_trace(m);
    report.cmi_rho = cmi(rho);
    report.log_residual = ruskai_log_residual(rho);
    report.m_vs_rho_trace_distance = schatten_norm(m - rho.matrix(), 1);
    report.residual_c_conditioned =
        schatten_norm(m - petz_reconstruction(rho, ReconstructionForm::CConditioned), 1);
    report.residual_literal_i =
        schatten_norm(m - petz_reconstruction(rho, ReconstructionForm::LiteralI), 1);
    report.residual_literal_ii =
        schatten_norm(m - petz_reconstruction(rho, ReconstructionForm::LiteralII), 1);

    const double deviation = std::abs(report.trace_m - 1.0);
    if (report.trace_m > 1.0 + 10.0 * tol) {
        report.notes.push_back("substate property violated: Tr M > 1");
        report.verdict = MarkovVerdict::Indeterminate;
    } else if (deviation <= tol) {
        const MultipartiteState normalized(hermitize(m / report.trace_m), rho.dims(),
                                           rho.labels());
        report.cmi_m = cmi(normalized);
        bool consistent = true;
        if (*report.cmi_m > tol) {
            report.notes.push_back("Tr M = 1 but M is not Markov");
            consistent = false;
        }
        if (report.residual_c_conditioned > tol) {
            report.notes.push_back("Tr M = 1 but the C-conditioned reconstruction differs from M");
            consistent = false;
        }
        if (report.cmi_rho > tol) {
            report.notes.push_back("Tr M = 1 but I(A:B|C) of the input exceeds tol");
            consistent = false;
        }
        report.verdict = consistent ? MarkovVerdict::Markov : MarkovVerdict::Indeterminate;
    } else if (deviation <= 10.0 * tol) {
        report.notes.push_back("Tr M within the near-equality band");
        report.verdict = MarkovVerdict::Indeterminate;
    } else {
        report.verdict = MarkovVerdict::NotMarkov;
    }
    return report;
}

ScanEnsemble scan_ensemble_from_string(const std::string& s) {
    if (s == "hs") return ScanEnsemble::HilbertSchmidt;
    if (s == "markov-classical-c") return ScanEnsemble::MarkovClassicalC;
    throw InvalidConfig("unknown scan ensemble '" + s + "'");
}

const char* to_string(ScanEnsemble e) {
    return e == ScanEnsemble::HilbertSchmidt ? "hs" : "markov-classical-c";
}

ScanSummary scan_trace_statistic(const Dims& dims, std::size_t n_samples, std::uint64_t seed,
                                 ScanEnsemble ensemble, std::size_t bins, std::size_t top_k,
                                 std::size_t workers) {
    if (n_samples == 0) throw InvalidConfig("scan_trace_statistic: n_samples must be >= 1");
    if (dims.size() != 3) throw InvalidConfig("scan_trace_statistic: dims must be (A,B,C)");
    if (bins == 0) throw InvalidConfig("scan_trace_statistic: bins must be >= 1");

    auto sample = [&](std::size_t i) {
        Rng rng(sample_seed(seed, i));
        return ensemble == ScanEnsemble::HilbertSchmidt ? random_density_hs(dims, rng)
                                                        : random_markov_classical_c(dims, rng);
    };

    ScanSummary s;
    s.dims = dims;
    s.n_samples = n_samples;
    s.seed = seed;
    s.ensemble = ensemble;
    s.traces.assign(n_samples, 0.0);
    parallel_for(n_samples, workers,
                 [&](std::size_t i) { s.traces[i] = trace_of_markov_operator(sample(i)); });

    s.min = *std::min_element(s.traces.begin(), s.traces.end());
    s.max = *std::max_element(s.traces.begin(), s.traces.end());
    s.mean = std::accumulate(s.traces.begin(), s.traces.end(), 0.0) /
             static_cast<double>(n_samples);

    std::vector<std::size_t> counts(bins, 0);
    for (double t : s.traces) {
        const auto b = static_cast<long>(std::floor(t * static_cast<double>(bins)));
        ++counts[static_cast<std::size_t>(std::clamp<long>(b, 0, static_cast<long>(bins) - 1))];
    }
    for (std::size_t b = 0; b < bins; ++b)
        s.histogram.emplace_back(static_cast<double>(b) / static_cast<double>(bins), counts[b]);

    std::vector<std::size_t> order(n_samples);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(s.traces[a] - 1.0) < std::abs(s.traces[b] - 1.0);
    });
    order.resize(std::min(top_k, n_samples));
    s.top_indices = order;
    for (std::size_t i : order) s.top_states.push_back(sample(i));
    return s;
}

}  // namespace entropy_gap
