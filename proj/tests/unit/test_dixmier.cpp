#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nccover/dixmier.hpp"

using namespace nccover;

TEST_CASE("sigma") {
    const SingularSeries s({1.0, 0.5, 0.25}, "test", true);
    CHECK(sigma(s, 1.0) == doctest::Approx(1.0));
    CHECK(sigma(s, 2.0) == doctest::Approx(1.5));
    CHECK(sigma(s, 1.5) == doctest::Approx(1.25));
    CHECK(sigma(s, 0.5) == doctest::Approx(0.5));
    CHECK(sigma(s, 10.0) == doctest::Approx(1.75));

    const SingularSeries finite({1.0, 0.5}, "test");
    CHECK_THROWS_AS(sigma(finite, 5.0), Error);
    CHECK_THROWS_AS(SingularSeries({0.5, 1.0}, "test"), Error);
}

TEST_CASE("sigma is a norm on random series") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> a(50), b(50);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        std::vector<double> ab(50);
        for (int k = 0; k < 50; ++k) ab[k] = a[k] + b[k];
        // diagonal operators: singular values of the sum are the sorted entrywise sums
        std::sort(a.begin(), a.end(), std::greater<>());
        std::sort(b.begin(), b.end(), std::greater<>());
        std::sort(ab.begin(), ab.end(), std::greater<>());
        const SingularSeries sa(a, "a", true), sb(b, "b", true), sab(ab, "ab", true);
        for (double lam : {0.5, 1.0, 2.5, 7.0, 30.0, 49.5})
            CHECK(sigma(sab, lam) <= sigma(sa, lam) + sigma(sb, lam) + 1e-12);
    }
}

TEST_CASE("tau") {
    // mu_0 = 1 only: tau = log log lambda / log lambda
    const SingularSeries one({1.0}, "one", true);
    for (double lam : {10.0, 1e3, 1e5}) CHECK(tau(one, lam) == doctest::Approx(std::log(std::log(lam)) / std::log(lam)).epsilon(1e-6));

    const SingularSeries h = harmonic_series(1.0, 1000000);
    const double t = tau(h, 1e6);
    CHECK(t > 0.85);
    CHECK(t < 1.1);
    // bounded by sup sigma_u / log u on (e, lambda]
    double sup = 0.0;
    for (double u = 3.0; u <= 1e6; u *= 1.01) sup = std::max(sup, sigma(h, u) / std::log(u));
    CHECK(t <= sup + 1e-9);
    CHECK_THROWS_AS(tau(h, 2.0), Error);
}

TEST_CASE("nc_integral") {
    const DixmierEstimate c = nc_integral(circle_series(1000000));
    CHECK(c.slope == doctest::Approx(2.0).epsilon(0.005));

    const DixmierEstimate t = nc_integral(torus_series(kI, 300));
    CHECK(2.0 * kPi * t.slope == doctest::Approx(1.0).epsilon(0.02));

    std::vector<double> geo(2000);
    for (size_t k = 0; k < geo.size(); ++k) geo[k] = std::pow(2.0, -static_cast<double>(k));
    CHECK_THROWS_AS(nc_integral(SingularSeries(geo, "geometric")), Error);

    for (double c0 : {0.5, 3.0}) CHECK(nc_integral(harmonic_series(c0, 1000000)).slope == doctest::Approx(c0).epsilon(0.005));
}

TEST_CASE("lift series") {
    const SingularSeries s = circle_series(100000);
    const SingularSeries same = lift_series(s, 1);
    CHECK(same.values() == s.values());
    const SingularSeries l4 = lift_series(s, 4);
    for (long n : {1L, 7L, 1000L, 99999L}) CHECK(l4.cutoff_sum(4 * n) == doctest::Approx(4.0 * s.cutoff_sum(n)).epsilon(1e-14));
    CHECK(nc_integral(l4).slope / nc_integral(s).slope == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("matrix series") {
    std::mt19937_64 rng(8);
    const Mat a = random_matrix(10, 10, rng);
    const Mat u = random_unitary(10, rng);
    const SingularSeries s = series_of_matrix(a), t = series_of_matrix(u * a * u.adjoint());
    for (int k = 0; k < 10; ++k) CHECK(std::abs(s.values()[k] - t.values()[k]) < 1e-10);
    CHECK(s.exhaustive());
}

TEST_CASE("norm inequalities on positive matrices") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 5; ++t) {
        const Mat x = random_matrix(16, 16, rng), y = random_matrix(16, 16, rng);
        const Mat a = x * x.adjoint(), b = y * y.adjoint();
        const SingularSeries sa = series_of_matrix(a), sb = series_of_matrix(b), sab = series_of_matrix(a + b);
        const double slack = 1e-10 * sab.cutoff_sum(16);
        for (long l = 0; l <= 16; ++l) {
            for (long m = 0; m <= 16; ++m) CHECK(sa.cutoff_sum(l) + sb.cutoff_sum(m) <= sab.cutoff_sum(l + m) + slack);
            CHECK(sab.cutoff_sum(l) <= sa.cutoff_sum(l) + sb.cutoff_sum(l) + slack);
            CHECK(sa.cutoff_sum(l) + sb.cutoff_sum(l) <= sab.cutoff_sum(2 * l) + slack);
        }
    }
}

TEST_CASE("commutative check") {
    const CommutativeReport c = commutative_check(0);
    CHECK(c.value == doctest::Approx(2.0 * kPi).epsilon(0.005));
    const CommutativeReport t = commutative_check(1, cplx(0.0, 2.0), 0, 300);
    CHECK(t.value == doctest::Approx(0.5).epsilon(0.02));
    CHECK_THROWS_AS(commutative_check(2), Error);
}
