#include <doctest.h>

#include "entropy_gap/entropy.hpp"
#include "entropy_gap/errors.hpp"
#include "entropy_gap/states.hpp"
#include "test_util.hpp"

using namespace entropy_gap;
using namespace test_util;

TEST_CASE("validate") {
    CHECK(validate(MultipartiteState(0.5 * ComplexMatrix::Identity(2, 2), {2})).pass);

    const auto bad = validate(MultipartiteState(diag({1.5, -0.5}), {2}));
    CHECK_FALSE(bad.pass);
    CHECK(bad.min_eigenvalue == doctest::Approx(-0.5));

    const auto sub = validate(MultipartiteState(diag({0.5, 0.3}), {2}, {}, StateKind::Substate));
    CHECK(sub.pass);
    CHECK(sub.trace == doctest::Approx(0.8));
    CHECK_FALSE(validate(MultipartiteState(diag({0.5, 0.3}), {2})).pass);

    ComplexMatrix skew(2, 2);
    skew << 0.5, 0.1, 0.0, 0.5;
    CHECK_FALSE(validate(MultipartiteState(skew, {2})).pass);
}

TEST_CASE("MultipartiteState construction") {
    CHECK_THROWS_AS(MultipartiteState(ComplexMatrix::Identity(6, 6), {2, 2}), DimensionMismatch);
    CHECK_THROWS_AS(MultipartiteState(ComplexMatrix::Identity(4, 4), {2, 2}, {"A"}),
                    DimensionMismatch);
    const MultipartiteState s(ComplexMatrix::Identity(8, 8) / 8.0, {2, 2, 2});
    CHECK(s.labels() == std::vector<std::string>{"A", "B", "C"});
    const std::size_t keep[] = {0, 2};
    const auto m = s.marginal(keep);
    CHECK(m.dims() == Dims{2, 2});
    CHECK(m.labels() == std::vector<std::string>{"A", "C"});
}

TEST_CASE("random_density_hs") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto rho = random_density_hs(1 + s % 9, s);
        CHECK(validate(rho, 1e-10).pass);
        CHECK(is_full_rank(rho.matrix()));
    }
    const auto a = random_density_hs(4, 42), b = random_density_hs(4, 42);
    CHECK((a.matrix() - b.matrix()).norm() == 0.0);
    CHECK((a.matrix() - random_density_hs(4, 43).matrix()).norm() > 0.0);
}

TEST_CASE("Hilbert-Schmidt mean purity for qubits") {
    // E Tr ρ² = 2d/(d²+1) = 0.8 for d = 2 (uniform Bloch ball, E r² = 3/5);
    // an independent numpy Monte-Carlo with 1e5 samples gave 0.8010.
    double sum = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto rho = random_density_hs(2, sample_seed(2024, i)).matrix();
        sum += (rho * rho).trace().real();
    }
    CHECK(std::abs(sum / n - 0.8) < 0.01);
}

TEST_CASE("random_pure") {
    const auto rho = random_pure(2, 7);
    CHECK(von_neumann_entropy(rho.matrix()) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(real_trace(rho.matrix()) == doctest::Approx(1.0));
    CHECK(std::abs((rho.matrix() * rho.matrix()).trace().real() - 1.0) < 1e-12);
    const auto other = random_pure(2, 8);
    CHECK(real_trace(rho.matrix() * other.matrix()) < 1.0 - 1e-6);
}

TEST_CASE("random_channel") {
    Rng rng(1);
    const auto u = random_channel(3, 3, 1, rng);
    REQUIRE(u.kraus.size() == 1);
    CHECK((u.kraus[0] * u.kraus[0].adjoint() - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);

    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng r(s);
        const std::size_t din = 1 + s % 4, dout = 1 + (s / 4) % 4;
        const std::size_t nk = (din + dout - 1) / dout + s % 2;
        const auto phi = random_channel(din, dout, nk, r);
        CHECK(phi.completeness_residual() < 1e-10);
        const ComplexMatrix out =
            apply_channel(phi, ComplexMatrix::Identity(din, din) / static_cast<double>(din));
        CHECK(real_trace(out) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(random_channel(4, 1, 2, rng), InfeasibleShape);
    CHECK_THROWS_AS(random_channel(2, 2, 0, rng), InfeasibleShape);
}

TEST_CASE("apply_channel") {
    const auto rho = random_density_hs(3, 5).matrix();
    CHECK((apply_channel(QuantumChannel::identity(3), rho) - rho).norm() == 0.0);

    // completely depolarizing qubit channel, Kraus {I, X, Y, Z}/2
    QuantumChannel dep{{0.5 * ComplexMatrix::Identity(2, 2), 0.5 * pauli_x(), 0.5 * pauli_y(),
                        0.5 * pauli_z()},
                       2,
                       2};
    CHECK(dep.completeness_residual() < 1e-15);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto r = random_density_hs(2, s).matrix();
        CHECK(max_abs(apply_channel(dep, r) - 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-15);
    }
    CHECK_THROWS_AS(apply_channel(dep, rho), DimensionMismatch);
}

TEST_CASE("channel preserves trace and positivity; adjoint is unital and dual") {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Rng rng(s);
        const std::size_t din = 2 + s % 3, dout = 2 + (s / 3) % 3;
        const auto phi = random_channel(din, dout, 1 + s % 3 + (din > dout ? 1 : 0), rng);
        const auto rho = random_density_hs(Dims{din}, rng).matrix();
        const ComplexMatrix out = apply_channel(phi, rho);
        CHECK(std::abs(real_trace(out) - 1.0) < 1e-12);
        CHECK(eig_hermitian(out).eigenvalues(0) >= -1e-12);

        const ComplexMatrix x = random_hermitian(dout, rng);
        const Complex lhs = (out.adjoint() * x).trace();
        const Complex rhs = (rho.adjoint() * apply_adjoint(phi, x)).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-10);
        CHECK((apply_adjoint(phi, ComplexMatrix::Identity(dout, dout)) -
               ComplexMatrix::Identity(din, din))
                  .norm() <= 1e-10);
    }
    const auto rho = random_density_hs(2, 1).matrix();
    CHECK((apply_adjoint(QuantumChannel::identity(2), rho) - rho).norm() == 0.0);
}

TEST_CASE("markov_state_classical_c") {
    const auto ra = random_density_hs(2, 1).matrix();
    const auto rb = random_density_hs(3, 2).matrix();
    const auto prod = markov_state_classical_c({1.0}, {ra}, {rb});
    CHECK(prod.dims() == Dims{2, 3, 1});
    CHECK(max_abs(prod.matrix() - tensor(ra, rb)) < 1e-15);
    CHECK(std::abs(cmi(prod)) <= 1e-10);

    const auto mix = markov_state_classical_c({0.5, 0.5}, {random_pure(2, 3).matrix(), random_pure(2, 4).matrix()},
                                              {random_pure(2, 5).matrix(), random_pure(2, 6).matrix()});
    CHECK(validate(mix, 1e-10).pass);
    CHECK(std::abs(cmi(mix)) <= 1e-10);

    CHECK_THROWS_AS(markov_state_classical_c({0.6, 0.6}, {ra, ra}, {rb, rb}), InvalidDistribution);
    CHECK_THROWS_AS(markov_state_classical_c({0.5, 0.5}, {ra}, {rb, rb}), DimensionMismatch);
    CHECK_THROWS_AS(markov_state_classical_c({1.0}, {diag({1.5, -0.5})}, {rb}), InvalidState);
}

TEST_CASE("generators validate and random Markov states have zero CMI") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(s);
        const Dims dims{2, 2, 2 + s % 2};
        CHECK(validate(random_density_hs(dims, rng), 1e-9).pass);
        CHECK(validate(random_pure(dims, rng), 1e-9).pass);
        CHECK(validate(random_pure_times_mixed(dims, rng), 1e-9).pass);
        const auto markov = random_markov_classical_c(dims, rng);
        CHECK(validate(markov, 1e-9).pass);
        CHECK(std::abs(cmi(markov)) <= 1e-9);
    }
}

TEST_CASE("rank-deficient ensemble") {
    Rng rng(3);
    const auto s = random_pure_times_mixed({2, 2, 2}, rng);
    CHECK(support(s.matrix()).rank == 4);
}
