#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chainctl/lie_engine.hpp"

using namespace chainctl;

namespace {

ChainSpec uniform_heis(int n, int r, double d = 1.0) {
    return heisenberg_spec(n, std::vector<double>(static_cast<std::size_t>(n - 1), d), r, 0.0, -d);
}

ChainSpec random_heis(std::mt19937_64& rng, int n, int r) {
    std::uniform_real_distribution<double> coupling(0.5, 2.0);
    std::vector<double> d(static_cast<std::size_t>(n - 1));
    for (double& v : d) v = coupling(rng);
    return heisenberg_spec(n, d, r, 0.0, -d[static_cast<std::size_t>(r - 1)]);
}

}  // namespace

TEST_CASE("traceless_part shifts by the trace and multiplies by i") {
    const Index n = 2;
    SUBCASE("identity maps to zero") {
        const SuElement z = traceless_part(HermitianOp(Matrix::Identity(n, n)));
        CHECK(max_abs(z.mat) == 0.0);
    }
    SUBCASE("already traceless stays put") {
        Matrix m(2, 2);
        m << 1, 0, 0, -1;
        const SuElement e = traceless_part(HermitianOp(m));
        CHECK(e.mat(0, 0) == Complex(0.0, 1.0));
        CHECK(e.mat(1, 1) == Complex(0.0, -1.0));
    }
    SUBCASE("diag(2,0) shifts to i*diag(1,-1)") {
        Matrix m(2, 2);
        m << 2, 0, 0, 0;
        const SuElement e = traceless_part(HermitianOp(m));
        CHECK(e.mat(0, 0) == Complex(0.0, 1.0));
        CHECK(e.mat(1, 1) == Complex(0.0, -1.0));
    }
}

TEST_CASE("su basis elements match their definitions") {
    const SuElement x12 = su_basis_element(SuKind::x, 1, 2, 2);
    Matrix ex(2, 2);
    ex << 0, -1, 1, 0;
    CHECK(max_abs(x12.mat - ex) == 0.0);

    const SuElement y12 = su_basis_element(SuKind::y, 1, 2, 2);
    Matrix ey(2, 2);
    ey << Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0);
    CHECK(max_abs(y12.mat - ey) == 0.0);

    CHECK_THROWS_AS(su_basis_element(SuKind::x, 2, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(su_basis_element(SuKind::h, 3, 3, 3), std::invalid_argument);
}

TEST_CASE("commutator of x and y gives the diagonal generator") {
    // [x_{mn}, y_{mn}] = 2 i (|n><n| - |m><m|), i.e. minus twice the stored
    // i*h element on adjacent pairs
    for (Index dim : {2, 4, 6}) {
        for (int m = 1; m < dim; ++m) {
            const SuElement x = su_basis_element(SuKind::x, m, m + 1, dim);
            const SuElement y = su_basis_element(SuKind::y, m, m + 1, dim);
            const SuElement ih = su_basis_element(SuKind::h, m, m, dim);
            const Matrix comm = x.mat * y.mat - y.mat * x.mat;
            CHECK(max_abs(comm + 2.0 * ih.mat) <= 1e-15);
        }
    }
}

TEST_CASE("closure of {x12, y12} is su(2)") {
    const std::vector<SuElement> gens = {su_basis_element(SuKind::x, 1, 2, 2),
                                         su_basis_element(SuKind::y, 1, 2, 2)};
    const LieBasisSet basis = lie_closure(gens);
    CHECK(basis.dimension() == 3);
}

TEST_CASE("closure of a single diagonal generator is abelian") {
    const std::vector<SuElement> gens = {su_basis_element(SuKind::h, 1, 1, 2)};
    CHECK(lie_closure(gens).dimension() == 1);
}

TEST_CASE("closure rejects bad input") {
    CHECK_THROWS_AS(lie_closure({}), std::invalid_argument);
    const std::vector<SuElement> mixed = {su_basis_element(SuKind::x, 1, 2, 2),
                                          su_basis_element(SuKind::x, 1, 2, 3)};
    CHECK_THROWS_AS(lie_closure(mixed), std::invalid_argument);
    CHECK_THROWS_AS(lie_closure({su_basis_element(SuKind::x, 1, 2, 2)}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("closure basis is orthonormal") {
    const ChainSpec spec = uniform_heis(4, 1);
    const LieBasisSet basis = lie_closure(
        {traceless_part(build_drift(spec)), traceless_part(build_actuator(spec))});
    for (int i = 0; i < basis.dimension(); ++i) {
        for (int j = 0; j < basis.dimension(); ++j) {
            const double g = hs_inner(basis.elements[static_cast<std::size_t>(i)].mat,
                                      basis.elements[static_cast<std::size_t>(j)].mat);
            CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }
    }
}

TEST_CASE("uniform chain controllability depends on actuator placement") {
    CHECK(closure_dimension(uniform_heis(4, 1)) == 15);
    CHECK(is_controllable(uniform_heis(4, 1)));
    CHECK(closure_dimension(uniform_heis(4, 2)) < 15);
    CHECK_FALSE(is_controllable(uniform_heis(4, 2)));
    CHECK(closure_dimension(uniform_heis(4, 3)) == 15);
}

TEST_CASE("broken chain is not controllable") {
    ChainSpec spec;
    spec.n = 3;
    spec.couplings = {1.0, 0.0};
    spec.energies = {0.0, 1.0, 2.0};
    spec.actuator = 1;
    CHECK_FALSE(is_controllable(spec));
}

TEST_CASE("closure dimension is invariant under generator scaling") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> scale(0.05, 20.0);
    std::uniform_int_distribution<int> size(3, 6);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = size(rng);
        std::uniform_int_distribution<int> site(1, n - 1);
        const ChainSpec spec = random_heis(rng, n, site(rng));
        const SuElement g1 = traceless_part(build_drift(spec));
        const SuElement g2 = traceless_part(build_actuator(spec));
        const int dim = lie_closure({g1, g2}).dimension();
        const SuElement s1(scale(rng) * g1.mat);
        const SuElement s2(scale(rng) * g2.mat);
        CHECK(lie_closure({s1, s2}).dimension() == dim);
    }
}

TEST_CASE("closure dimension never exceeds dim su(N)") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> size(2, 7);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = size(rng);
        std::uniform_int_distribution<int> site(1, n - 1);
        const ChainSpec spec = random_heis(rng, n, site(rng));
        const LieBasisSet basis = lie_closure(
            {traceless_part(build_drift(spec)), traceless_part(build_actuator(spec))});
        CHECK(basis.dimension() <= n * n - 1);
    }
}

TEST_CASE("thm1 condition on the uniform chain") {
    CHECK(thm1_condition(uniform_heis(4, 1)));
    CHECK_FALSE(thm1_condition(uniform_heis(4, 2)));  // d_1 = d_3 and omega_2 = 0
    const ChainSpec palindrome = heisenberg_spec(4, {1.0, 2.0, 1.0}, 2, 0.0, -2.0);
    CHECK_FALSE(thm1_condition(palindrome));  // omega_2 = d_1 - d_3 = 0
}

TEST_CASE("thm2 condition reduces to thm1 at k = 0") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> size(4, 7);
    int positives = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = size(rng);
        std::uniform_int_distribution<int> site(1, n - 1);
        const ChainSpec spec = random_heis(rng, n, site(rng));
        if (thm1_condition(spec)) {
            ++positives;
            const auto k = thm2_condition(spec);
            REQUIRE(k.has_value());
            CHECK(*k == 0);
        }
    }
    CHECK(positives > 10);
}

TEST_CASE("thm2 condition fails for symmetric placements with omega_r = 0") {
    CHECK_FALSE(thm2_condition(uniform_heis(5, 2)).has_value());
    const ChainSpec hump = heisenberg_spec(6, {1.0, 2.0, 3.0, 2.0, 1.0}, 3, 0.0, -3.0);
    CHECK_FALSE(thm2_condition(hump).has_value());
}

TEST_CASE("thm2 condition finds positive offsets") {
    // couplings with squares symmetric at offset 1, broken at offset 2;
    // custom energies keep omega_r nonzero
    ChainSpec spec = heisenberg_spec(6, {1.0, 2.0, 2.0, 2.0, 3.0}, 3, 0.0, -2.0);
    spec.energies[3] += 0.7;
    const auto k = thm2_condition(spec);
    REQUIRE(k.has_value());
    CHECK(*k == 1);
}

TEST_CASE("theorem conditions imply full closure dimension") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> size(4, 7);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = size(rng);
        std::uniform_int_distribution<int> site(1, n - 1);
        const ChainSpec spec = random_heis(rng, n, site(rng));
        if (thm1_condition(spec) || thm2_condition(spec).has_value()) {
            ++checked;
            CHECK(closure_dimension(spec) == n * n - 1);
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("heisenberg corollary: unequal neighbor couplings imply controllability") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> size(4, 6);
    std::uniform_real_distribution<double> coupling(0.5, 2.0);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = size(rng);
        std::uniform_int_distribution<int> site(1, n - 1);
        const int r = site(rng);
        std::vector<double> d(static_cast<std::size_t>(n - 1));
        for (double& v : d) v = coupling(rng);
        const ChainSpec spec = heisenberg_spec(n, d, r, 0.0, -1.0);
        const double dm = coupling_or_zero(spec, r - 1);
        const double dp = coupling_or_zero(spec, r + 1);
        if (std::abs(dm - dp) > 0.05) {
            ++checked;
            CHECK(is_controllable(spec));
        }
    }
    CHECK(checked >= 15);
}

TEST_CASE("centered actuator on a uniform even chain is a proper subalgebra") {
    for (int half : {2, 3}) {
        const int n = 2 * half;
        CHECK(closure_dimension(uniform_heis(n, half)) < n * n - 1);
    }
}
