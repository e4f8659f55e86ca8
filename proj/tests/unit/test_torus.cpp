#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "nccover/torus.hpp"

using namespace nccover;
using test::dist;

namespace {

cplx e2pi(double x) { return std::exp(kI * (2.0 * kPi * x)); }

}  // namespace

TEST_CASE("normal product") {
    const double th = 0.3;
    const auto u = TorusElement::monomial(th, 1, 0), v = TorusElement::monomial(th, 0, 1);
    const TorusElement uv = normal_product(u, v), vu = normal_product(v, u);
    CHECK(uv.coeff(1, 1) == cplx(1.0));
    CHECK(std::abs(vu.coeff(1, 1) - e2pi(-th)) < 1e-15);
    CHECK((uv - vu * e2pi(th)).max_abs() < 1e-15);

    std::mt19937_64 rng(4);
    const TorusElement x = TorusElement::random(th, 3, rng);
    CHECK((normal_product(x, TorusElement::unit(th)).resized(3) - x).max_abs() == 0.0);
    CHECK_THROWS_AS(normal_product(x, TorusElement::unit(0.5)), Error);
}

TEST_CASE("truncated product reports discarded mass") {
    std::mt19937_64 rng(8);
    const TorusElement x = TorusElement::random(0.2, 3, rng), y = TorusElement::random(0.2, 3, rng);
    const TorusElement full = normal_product(x, y);
    const TruncatedProduct t = normal_product_truncated(x, y, 3);
    double dropped = 0.0;
    for (int r = -6; r <= 6; ++r)
        for (int s = -6; s <= 6; ++s)
            if (std::abs(r) > 3 || std::abs(s) > 3) dropped += std::abs(full.coeff(r, s));
    CHECK(t.discarded == doctest::Approx(dropped));
    CHECK((full.resized(3) - t.value).max_abs() < 1e-13);
}

TEST_CASE("tau0") {
    const double th = 0.17;
    CHECK(tau0(TorusElement::unit(th)) == cplx(1.0));
    const auto u = TorusElement::monomial(th, 1, 0);
    CHECK(tau0(u) == cplx(0.0));
    CHECK(std::abs(tau0(normal_product(u, u.adjoint())) - 1.0) < 1e-15);
}

TEST_CASE("trace property") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 5; ++t) {
        const TorusElement x = TorusElement::random(0.381966, 8, rng), y = TorusElement::random(0.381966, 8, rng);
        CHECK(std::abs(tau0(normal_product(x, y)) - tau0(normal_product(y, x))) <= 1e-12);
    }
}

TEST_CASE("derivations") {
    const double th = 0.4;
    const auto u = TorusElement::monomial(th, 1, 0);
    auto [d1u, d2u] = derivations(u);
    CHECK(std::abs(d1u.coeff(1, 0) - cplx(0.0, 2.0 * kPi)) < 1e-15);
    CHECK(d2u.max_abs() == 0.0);
    CHECK(derivations(TorusElement::unit(th)).first.max_abs() == 0.0);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const TorusElement x = TorusElement::random(th, 3, rng), y = TorusElement::random(th, 3, rng);
        auto [dx1, dx2] = derivations(x);
        auto [dy1, dy2] = derivations(y);
        auto [dxy1, dxy2] = derivations(normal_product(x, y));
        CHECK((dxy1 - normal_product(dx1, y) - normal_product(x, dy1)).max_abs() < 1e-10);
        CHECK((dxy2 - normal_product(dx2, y) - normal_product(x, dy2)).max_abs() < 1e-10);
        CHECK((derivations(dx1).second - derivations(dx2).first).max_abs() < 1e-12 * derivations(dx1).second.max_abs());
    }
}

TEST_CASE("dirac spectrum") {
    const DiracSpectrum s = dirac_spectrum(kI, 1);
    CHECK(s.eigenvalues.size() == 18);
    CHECK(std::count(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0) == 2);
    CHECK(std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                        [](double x) { return std::abs(x - 2.0 * kPi) < 1e-12; }) == 4);
    const DiracSpectrum t = dirac_spectrum(cplx(0.3, 1.7), 4);
    CHECK(t.eigenvalues.size() == 2 * 81);
    for (size_t k = 0; k < t.eigenvalues.size(); ++k)
        CHECK(t.eigenvalues[k] == doctest::Approx(-t.eigenvalues[t.eigenvalues.size() - 1 - k]));
    CHECK_THROWS_AS(dirac_spectrum(cplx(2.0, 0.0), 3), Error);
}

TEST_CASE("clock shift") {
    const ClockShiftRep one = clock_shift(1, 0);
    CHECK(dist(one.U * one.V, one.V * one.U) == 0.0);
    const ClockShiftRep two = clock_shift(2, 1);
    Mat u(2, 2), v(2, 2);
    u << 1, 0, 0, -1;
    v << 0, 1, 1, 0;
    CHECK(dist(two.U, u) < 1e-15);
    CHECK(dist(two.V, v) == 0.0);
    CHECK(dist(u * v, -(v * u)) == 0.0);
    const ClockShiftRep five = clock_shift(5, 2);
    CHECK(op_norm(five.U * five.V - e2pi(0.4) * five.V * five.U) <= 1e-14);
    CHECK_THROWS_AS(clock_shift(4, 2), Error);
}

TEST_CASE("evaluate is a *-homomorphism") {
    const ClockShiftRep rep = clock_shift(5, 2);
    const double th = 0.4;
    CHECK(dist(evaluate(TorusElement::unit(th), rep), Mat::Identity(5, 5)) == 0.0);
    CHECK(dist(evaluate(TorusElement::monomial(th, 1, 0), rep), rep.U) == 0.0);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
        const TorusElement x = TorusElement::random(th, 3, rng), y = TorusElement::random(th, 3, rng);
        CHECK(op_norm(evaluate(normal_product(x, y), rep) - evaluate(x, rep) * evaluate(y, rep)) <= 1e-10);
        CHECK(op_norm(evaluate(x.adjoint(), rep) - evaluate(x, rep).adjoint()) <= 1e-12);
    }
    CHECK_THROWS_AS(evaluate(TorusElement::unit(0.3), rep), Error);
}

TEST_CASE("star product") {
    const ModeSpace space{3};
    const double th = 0.3;
    const int n = space.dim();
    // commuting shifts of the two mode numbers carry bidegrees (1,0) and (0,1)
    Mat su = Mat::Zero(n, n), sv = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        auto [a, b] = space.mode(k);
        if (a + 1 <= space.modes) su(space.index(a + 1, b), k) = 1.0;
        if (b + 1 <= space.modes) sv(space.index(a, b + 1), k) = 1.0;
    }
    const BigradedOperator u{{{1, 0}, su}}, v{{{0, 1}, sv}};
    const BigradedOperator vu = star_product(v, u, th), uv = star_product(u, v, th);
    CHECK(dist(uv.at({1, 1}), su * sv) == 0.0);
    CHECK(dist(vu.at({1, 1}), e2pi(th) * sv * su) < 1e-15);

    std::mt19937_64 rng(2);
    const Mat a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
    const Mat da = a.diagonal().asDiagonal(), db = b.diagonal().asDiagonal();
    const BigradedOperator x{{{0, 0}, da}}, y{{{0, 0}, db}};
    CHECK(dist(star_product(x, y, th).at({0, 0}), da * db) == 0.0);

    // left twist intertwines
    const BigradedOperator hx = homogeneous_parts(random_matrix(n, n, rng), space);
    const BigradedOperator hy = homogeneous_parts(random_matrix(n, n, rng), space);
    const Mat lhs = left_twist(hx, space, th) * left_twist(hy, space, th);
    CHECK(op_norm(lhs - left_twist(star_product(hx, hy, th), space, th)) <= 1e-10);
}

TEST_CASE("grading operators measure bidegree") {
    const ModeSpace space{2};
    std::mt19937_64 rng(3);
    const BigradedOperator parts = homogeneous_parts(random_matrix(space.dim(), space.dim(), rng), space);
    const Mat p1 = grading_operator(space, 0), p2 = grading_operator(space, 1);
    for (const auto& [d, x] : parts) {
        CHECK(dist(p1 * x - x * p1, static_cast<double>(d.first) * x) < 1e-13);
        CHECK(dist(p2 * x - x * p2, static_cast<double>(d.second) * x) < 1e-13);
    }
}

TEST_CASE("dimension diagnostic") {
    const DimensionDiagnostic d2 = dimension_diagnostic(dirac_spectrum(kI, 120), 2);
    CHECK(d2.slope > 0.0);
    CHECK(std::isfinite(d2.slope));
    // lattice density: slope = 1 / (2 pi Im tau)
    CHECK(d2.slope == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(0.03));
    const DimensionDiagnostic d4 = dimension_diagnostic(dirac_spectrum(kI, 120), 4);
    CHECK(d4.slope < 1e-3 * d2.slope);
    const DimensionDiagnostic half = dimension_diagnostic(dirac_spectrum(cplx(0.0, 2.0), 120), 2);
    CHECK(half.slope / d2.slope == doctest::Approx(0.5).epsilon(0.03));
    const DimensionDiagnostic d1 = dimension_diagnostic(dirac_spectrum(kI, 120), 1);
    CHECK(d1.ratio_growth > 2.0);
}
