#include <doctest.h>

#include <cmath>

#include "entropy_gap/errors.hpp"
#include "entropy_gap/markov.hpp"
#include "test_util.hpp"

using namespace entropy_gap;
using namespace test_util;

TEST_CASE("Markov operator reproduces product and Markov states") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(s);
        const Dims dims{2, 2 + s % 2, 2 + s % 3};
        const auto ra = random_density_hs(Dims{dims[0]}, rng).matrix();
        const auto rb = random_density_hs(Dims{dims[1]}, rng).matrix();
        const auto rc = random_density_hs(Dims{dims[2]}, rng).matrix();
        const MultipartiteState prod(tensor(tensor(ra, rb), rc), dims);
        CHECK(max_abs(markov_operator(prod) - prod.matrix()) < 1e-10);

        const auto markov = random_markov_classical_c(dims, rng);
        CHECK(max_abs(markov_operator(markov) - markov.matrix()) < 1e-9);
        CHECK(std::abs(trace_of_markov_operator(markov) - 1.0) < 1e-9);
        CHECK(ruskai_log_residual(markov) < 1e-6);
    }
}

TEST_CASE("trace of the Markov operator never exceeds one") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        const auto rho = random_density_hs({2, 2 + s % 2, 2}, rng);
        const double t = trace_of_markov_operator(rho);
        CHECK(t <= 1.0 + 1e-9);
        CHECK(t > 0.0);
        CHECK(ruskai_log_residual(rho) > 1e-6);
    }
}

TEST_CASE("Markov operator from explicit marginals") {
    const Dims dims{2, 2, 2};
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix i4 = ComplexMatrix::Identity(4, 4);
    // exp(log I + log I − log I) = I
    CHECK(max_abs(markov_operator(dims, i4, i4, i2) - ComplexMatrix::Identity(8, 8)) < 1e-14);
    CHECK_THROWS_AS(markov_operator(dims, diag({1.0, 0.0, 0.0, 0.0}), i4, i2), SupportDeficient);
    CHECK_THROWS_AS(markov_operator({4, 2}, i4, i4, i2), DimensionMismatch);
}

TEST_CASE("log_sum") {
    const Dims dims{2, 3};
    const ComplexMatrix a = diag({0.25, 0.75});
    const auto got = log_sum(dims, {{a, {0}, 2.0, "a"}});
    const ComplexMatrix expect = tensor(diag({2 * std::log(0.25), 2 * std::log(0.75)}),
                                        ComplexMatrix::Identity(3, 3));
    CHECK(max_abs(got - expect) < 1e-14);
    CHECK_THROWS_AS(log_sum(dims, {{diag({1.0, 0.0}), {0}, 1.0, "a"}}), SupportDeficient);
}

TEST_CASE("Petz reconstructions") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(s);
        const auto markov = random_markov_classical_c({2, 2, 2 + s % 2}, rng);
        const ComplexMatrix r =
            petz_reconstruction(markov, ReconstructionForm::CConditioned);
        CHECK(schatten_norm(r - markov.matrix(), 1) <= 1e-9);
    }
    // The B-conditioned forms do not reconstruct a state whose C factor is
    // the classical one; the residual on this fixed sample is ≈ 0.048.
    Rng rng(0);
    const auto markov = random_markov_classical_c({2, 2, 2}, rng);
    const double lit = schatten_norm(
        petz_reconstruction(markov, ReconstructionForm::LiteralI) - markov.matrix(), 1);
    CHECK(lit > 1e-3);
    CHECK(std::string(to_string(ReconstructionForm::LiteralII)) == "literal-ii");

    // on a full product state every form is exact
    const auto rho = tensor(tensor(random_density_hs(2, 1).matrix(), random_density_hs(2, 2).matrix()),
                            random_density_hs(2, 3).matrix());
    const MultipartiteState prod(rho, {2, 2, 2});
    for (auto f : {ReconstructionForm::CConditioned, ReconstructionForm::LiteralI,
                   ReconstructionForm::LiteralII})
        CHECK(schatten_norm(petz_reconstruction(prod, f) - rho, 1) <= 1e-10);
}

TEST_CASE("Markov trace verdicts") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(s);
        const auto markov = random_markov_classical_c({2, 2, 2 + s % 2}, rng);
        const auto r = check_markov_trace_theorem(markov);
        CHECK(r.verdict == MarkovVerdict::Markov);
        REQUIRE(r.cmi_m.has_value());
        CHECK(std::abs(*r.cmi_m) <= 1e-8);
        CHECK(r.m_vs_rho_trace_distance <= 1e-7);
        CHECK(r.notes.empty());

        const auto rho = random_density_hs({2, 2, 2 + s % 2}, rng);
        const auto n = check_markov_trace_theorem(rho);
        CHECK(n.verdict == MarkovVerdict::NotMarkov);
        CHECK_FALSE(n.cmi_m.has_value());
        CHECK(n.trace_m <= 1.0 + 1e-9);
        CHECK(n.cmi_rho > 0.0);
    }
    CHECK_THROWS_AS(check_markov_trace_theorem(MultipartiteState(ghz(), {2, 2, 2})),
                    SupportDeficient);
    CHECK_THROWS_AS(check_markov_trace_theorem(MultipartiteState(diag({1.2, -0.2, 0, 0, 0, 0, 0, 0}),
                                                                 {2, 2, 2})),
                    InvalidState);
    CHECK(std::string(to_string(MarkovVerdict::NotMarkov)) == "NotMarkov");
}

TEST_CASE("scan_trace_statistic") {
    const auto a = scan_trace_statistic({2, 2, 2}, 40, 7);
    CHECK(a.traces.size() == 40);
    CHECK(a.max <= 1.0 + 1e-9);
    CHECK(a.min <= a.mean);
    CHECK(a.mean <= a.max);
    std::size_t total = 0;
    for (const auto& [edge, count] : a.histogram) total += count;
    CHECK(total == 40);
    CHECK(a.histogram.size() == 20);
    CHECK(a.top_indices.size() == 5);
    CHECK(a.top_states.size() == 5);
    for (std::size_t k = 0; k + 1 < a.top_indices.size(); ++k)
        CHECK(std::abs(a.traces[a.top_indices[k]] - 1.0) <=
              std::abs(a.traces[a.top_indices[k + 1]] - 1.0));
    // the top states are the regenerated samples
    for (std::size_t k = 0; k < a.top_indices.size(); ++k)
        CHECK(trace_of_markov_operator(a.top_states[k]) == a.traces[a.top_indices[k]]);

    const auto b = scan_trace_statistic({2, 2, 2}, 40, 7, ScanEnsemble::HilbertSchmidt, 20, 5, 3);
    CHECK(a.traces == b.traces);
    CHECK(a.top_indices == b.top_indices);
    CHECK(a.histogram == b.histogram);
    CHECK(a.mean == b.mean);

    const auto m = scan_trace_statistic({2, 2, 3}, 20, 1, ScanEnsemble::MarkovClassicalC);
    CHECK(std::abs(m.min - 1.0) <= 1e-9);
    CHECK(std::abs(m.max - 1.0) <= 1e-9);

    CHECK_THROWS_AS(scan_trace_statistic({2, 2}, 10, 0), InvalidConfig);
    CHECK_THROWS_AS(scan_trace_statistic({2, 2, 2}, 0, 0), InvalidConfig);
    CHECK(scan_ensemble_from_string("markov-classical-c") == ScanEnsemble::MarkovClassicalC);
    CHECK_THROWS_AS(scan_ensemble_from_string("nope"), InvalidConfig);
}
