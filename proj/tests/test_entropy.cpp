#include <doctest.h>

#include <cmath>

#include "entropy_gap/entropy.hpp"
#include "entropy_gap/errors.hpp"
#include "test_util.hpp"

using namespace entropy_gap;
using namespace test_util;

TEST_CASE("ExtendedReal") {
    const ExtendedReal inf = ExtendedReal::infinity();
    CHECK(inf.is_infinite());
    CHECK(std::isinf(inf.as_double()));
    CHECK(ExtendedReal(std::numeric_limits<double>::infinity()).is_infinite());
    CHECK_THROWS(ExtendedReal(std::nan("")));
    CHECK_THROWS(ExtendedReal(-std::numeric_limits<double>::infinity()));
    CHECK_THROWS(inf.value());
    CHECK((inf + 1.0).is_infinite());
    CHECK((inf - 1.0).is_infinite());
    CHECK_THROWS(ExtendedReal(1.0) - inf);
    CHECK((ExtendedReal(2.0) - 0.5).value() == 1.5);
    CHECK((2.0 * ExtendedReal(1.5)).value() == 3.0);
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(diag({1.0, 0.0})) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(ComplexMatrix::Identity(2, 2) / 2.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(std::abs(von_neumann_entropy(diag({0.75, 0.25})) - 0.5623351446188083) < 1e-14);
    CHECK(std::abs(von_neumann_entropy(ComplexMatrix::Identity(5, 5) / 5.0) - std::log(5.0)) <
          1e-13);
    CHECK_THROWS_AS(von_neumann_entropy(diag({1.5, -0.5})), NotPSD);
}

TEST_CASE("entropy invariants") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        const std::size_t d = 2 + s % 5;
        const auto rho = random_density_hs(Dims{d}, rng).matrix();
        const double h = von_neumann_entropy(rho);
        CHECK(h >= -1e-12);
        CHECK(h <= std::log(static_cast<double>(d)) + 1e-12);
        const ComplexMatrix u = random_unitary(d, rng);
        CHECK(std::abs(von_neumann_entropy(ComplexMatrix(u * rho * u.adjoint())) - h) < 1e-10);
        CHECK(std::abs(von_neumann_entropy(random_pure(Dims{d}, rng).matrix())) < 1e-10);
    }
}

TEST_CASE("relative entropy examples") {
    const ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
    CHECK(std::abs(relative_entropy(diag({1.0, 0.0}), mixed).value() - std::log(2.0)) < 1e-13);
    CHECK(relative_entropy(mixed, diag({1.0, 0.0})).is_infinite());
    CHECK(relative_entropy(diag({0.75, 0.25}), diag({0.5, 0.5})).value() ==
          doctest::Approx(kl({0.75, 0.25}, {0.5, 0.5})).epsilon(1e-13));
    // subnormalized σ raises the value by −ln Tr σ on commuting inputs
    CHECK(relative_entropy(diag({0.75, 0.25}), diag({0.45, 0.45})).value() ==
          doctest::Approx(kl({0.75, 0.25}, {0.45, 0.45})).epsilon(1e-13));
}

TEST_CASE("relative entropy: nonnegativity, faithfulness, unitary invariance") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        const std::size_t d = 2 + s % 4;
        const auto rho = random_density_hs(Dims{d}, rng).matrix();
        const auto sigma = random_density_hs(Dims{d}, rng).matrix();
        const double v = relative_entropy(rho, sigma).value();
        CHECK(v >= -1e-10);
        CHECK(std::abs(relative_entropy(rho, rho).value()) < 1e-10);
        const ComplexMatrix u = random_unitary(d, rng);
        CHECK(std::abs(relative_entropy(ComplexMatrix(u * rho * u.adjoint()),
                                        ComplexMatrix(u * sigma * u.adjoint()))
                           .value() -
                       v) < 1e-9);
        // Pinsker: D ≥ ½‖ρ−σ‖₁²
        const double t = schatten_norm(rho - sigma, 1);
        CHECK(v >= 0.5 * t * t - 1e-10);
    }
}

TEST_CASE("relative entropy on states validates inputs") {
    const MultipartiteState rho(diag({0.5, 0.5}), {2});
    const MultipartiteState sub(diag({0.4, 0.4}), {2}, {}, StateKind::Substate);
    CHECK(relative_entropy(rho, sub).value() == doctest::Approx(-std::log(0.8)));
    CHECK_THROWS_AS(relative_entropy(MultipartiteState(diag({0.4, 0.4}), {2}), rho), InvalidState);
    CHECK_THROWS_AS(relative_entropy(rho, MultipartiteState(ComplexMatrix::Identity(3, 3) / 3.0, {3})),
                    DimensionMismatch);
}

TEST_CASE("Renyi relative entropy") {
    const ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
    CHECK(std::abs(renyi_relative_entropy(diag({1.0, 0.0}), mixed, 0.5).value() -
                   std::log(2.0)) < 1e-13);
    CHECK(renyi_relative_entropy(diag({1.0, 0.0}), diag({0.0, 1.0}), 0.5).is_infinite());
    CHECK_THROWS_AS(renyi_relative_entropy(mixed, mixed, 0.0), InvalidAlpha);
    CHECK_THROWS_AS(renyi_relative_entropy(mixed, mixed, 1.0), InvalidAlpha);
    CHECK_THROWS_AS(renyi_relative_entropy(mixed, mixed, 1.5), InvalidAlpha);
    CHECK_THROWS_AS(renyi_relative_entropy(mixed, mixed, std::nan("")), InvalidAlpha);

    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        const std::size_t d = 2 + s % 3;
        const auto rho = random_density_hs(Dims{d}, rng).matrix();
        const auto sigma = random_density_hs(Dims{d}, rng).matrix();
        double prev = -1.0;
        for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double v = renyi_relative_entropy(rho, sigma, a).value();
            CHECK(v >= prev - 1e-10);
            prev = v;
        }
        CHECK(prev <= relative_entropy(rho, sigma).value() + 1e-10);
        CHECK(std::abs(renyi_relative_entropy(rho, sigma, 0.5).value() -
                       root_overlap_bound(rho, sigma).value()) < 1e-10);
    }
}

TEST_CASE("root overlap") {
    CHECK(root_overlap(diag({1.0, 0.0}), diag({0.0, 1.0})) == doctest::Approx(0.0));
    CHECK(root_overlap_bound(diag({1.0, 0.0}), diag({0.0, 1.0})).is_infinite());
    CHECK(root_overlap(diag({0.5, 0.5}), diag({0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(root_overlap(diag({0.64, 0.36}), diag({0.36, 0.64})) ==
          doctest::Approx(2 * 0.8 * 0.6));
    CHECK(std::abs(root_overlap_bound(diag({0.5, 0.5}), diag({0.5, 0.5})).value()) < 1e-14);
}

TEST_CASE("conditional mutual information") {
    const MultipartiteState g(ghz(), {2, 2, 2});
    CHECK(std::abs(cmi(g) - std::log(2.0)) < 1e-12);

    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto ra = random_density_hs(Dims{2}, rng).matrix();
        const auto rbc = random_density_hs(Dims{2, 3}, rng).matrix();
        CHECK(std::abs(cmi(MultipartiteState(tensor(ra, rbc), {2, 2, 3}))) < 1e-10);
        CHECK(std::abs(cmi(random_markov_classical_c({2, 2, 3}, rng))) < 1e-10);
    }
    CHECK_THROWS_AS(cmi(MultipartiteState(diag({0.5, 0.5, 0.0, 0.0}), {2, 2})), DimensionMismatch);
}

TEST_CASE("strong subadditivity and local unitary invariance") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        const Dims dims{2, 2 + s % 2, 2};
        const auto rho = random_density_hs(dims, rng);
        const double i = cmi(rho);
        CHECK(i >= -kSsaSlack);
        const ComplexMatrix u = local_unitary(dims, rng);
        CHECK(std::abs(cmi(MultipartiteState(u * rho.matrix() * u.adjoint(), dims)) - i) < 1e-9);
    }
}

TEST_CASE("data processing under channels") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(s);
        const std::size_t d = 2 + s % 2;
        const auto phi = random_channel(d, 2, 1 + s % 3 + (d > 2 ? 1 : 0), rng);
        const auto rho = random_density_hs(Dims{d}, rng).matrix();
        const auto sigma = random_density_hs(Dims{d}, rng).matrix();
        CHECK(relative_entropy(apply_channel(phi, rho), apply_channel(phi, sigma)).value() <=
              relative_entropy(rho, sigma).value() + 1e-9);
    }
}
