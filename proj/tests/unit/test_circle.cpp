#include <doctest.h>

#include <cmath>

#include "nccover/circle.hpp"

using namespace nccover;

TEST_CASE("bump values") {
    CHECK(bump_value(0, kPi / 2) == 1.0);
    CHECK(bump_value(1, kPi / 2) == 0.0);
    CHECK(bump_value(0, -kPi / 2) == 0.0);
    CHECK(bump_value(1, -kPi / 2) == 1.0);
    // overlap band |sin phi| < 0.1: both positive at 0 and pi
    CHECK(bump_value(0, 0.0) > 0.0);
    CHECK(bump_value(1, 0.0) > 0.0);
    CHECK(bump_value(0, kPi - 1e-3) > 0.0);
    CHECK(bump_value(1, kPi - 1e-3) > 0.0);
}

TEST_CASE("make_bumps") {
    const BumpPair b = make_bumps(4096);
    CHECK(partition_residual(b) <= 1e-12);
    for (int k = 0; k < b.b1.n; ++k) {
        const double s = std::sin(b.b1.angle(k));
        CHECK(b.b1.samples[k].real() >= 0.0);
        CHECK(b.b2.samples[k].real() >= 0.0);
        if (s <= -0.1) CHECK(b.b1.samples[k] == cplx(0.0));
        if (s >= 0.1) CHECK(b.b2.samples[k] == cplx(0.0));
    }
    // ramp over an arc of about 0.2 rad: slope of order (pi/2) * (15/8) / 0.2
    CHECK(max_fd_derivative(b.b1) < 20.0);
    CHECK(max_fd_derivative(b.b2) < 20.0);
    CHECK_THROWS_AS(make_bumps(8), Error);
}

TEST_CASE("cover partition") {
    for (int n = 1; n <= 4; ++n) CHECK(cover_partition_residual(n, 2048) <= 1e-12);
}

TEST_CASE("lift_to_line") {
    const int n = 512, w = 3;
    const BumpPair b = make_bumps(n);
    const LineFunction z0 = lift_to_line(b.b1, 0, w);
    const LineFunction z1 = lift_to_line(b.b1, 1, w);
    int support = 0;
    for (int j = 0; j < z0.size(); ++j) {
        // offset 0: the circle function on its sheet, zero elsewhere
        const double x = z0.position(j);
        if (z0.samples[j] != cplx(0.0)) {
            ++support;
            CHECK(std::abs(x) < 2.0 * kPi);
            const int k = ((j % n) + n) % n;
            CHECK(z0.samples[j] == b.b1.samples[k]);
        }
        // translation by one period
        if (j + n < z1.size()) CHECK(z1.samples[j + n] == z0.samples[j]);
        // disjoint translates
        CHECK(std::abs(z0.samples[j] * z1.samples[j]) == 0.0);
    }
    int circle_support = 0;
    for (const auto& s : b.b1.samples) circle_support += s != cplx(0.0);
    CHECK(support == circle_support);

    CircleFunction everywhere;
    everywhere.n = 32;
    everywhere.samples.assign(32, cplx(1.0));
    CHECK_THROWS_AS(lift_to_line(everywhere, 0, 2), Error);
}

TEST_CASE("check_line_partition") {
    CHECK(check_line_partition(make_bumps(1024), 3) <= 1e-12);

    const int n = 256, w = 2;
    const BumpPair b = make_bumps(n);
    std::vector<LineFunction> lifts;
    for (int i = 0; i < 2; ++i)
        for (int c = -w + 1; c <= w - 1; ++c) lifts.push_back(lift_to_line(b[i], c, w));
    auto terms_at = [&](int j) {
        int count = 0;
        double sum = 0.0;
        for (const auto& z : lifts)
            if (z.samples[j] != cplx(0.0)) {
                ++count;
                sum += std::norm(z.samples[j]);
            }
        return std::make_pair(count, sum);
    };
    // x = pi/2 is deep in V_1: a single term equal to b1^2 = 1
    const int deep = w * n + n / 2 + n / 4;
    auto [c1, s1] = terms_at(deep);
    CHECK(c1 == 1);
    CHECK(s1 == doctest::Approx(1.0));
    // x = 0 lies in the overlap: b1^2 + b2^2
    const int overlap = w * n + n / 2;
    auto [c2, s2] = terms_at(overlap);
    CHECK(c2 == 2);
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fourier_of") {
    CircleFunction one{64, std::vector<cplx>(64, 1.0)};
    auto a = fourier_of(one, 4);
    CHECK(std::abs(a[4] - 1.0) < 1e-14);
    for (int k = 0; k < 9; ++k)
        if (k != 4) CHECK(std::abs(a[k]) < 1e-14);

    CircleFunction e{64, {}};
    for (int k = 0; k < 64; ++k) e.samples.push_back(std::exp(kI * e.angle(k)));
    auto c = fourier_of(e, 4);
    CHECK(std::abs(c[5] - 1.0) < 1e-14);
    for (int k = 0; k < 9; ++k)
        if (k != 5) CHECK(std::abs(c[k]) < 1e-14);

    CircleFunction band{64, {}};
    for (int k = 0; k < 64; ++k) band.samples.push_back(std::cos(3 * band.angle(k)) + kI * std::sin(5 * band.angle(k)));
    auto rec = fourier_reconstruct(fourier_of(band, 8), 64);
    for (int k = 0; k < 64; ++k) CHECK(std::abs(rec[k] - band.samples[k]) < 1e-10);

    // smooth bump: coefficients decay fast away from zero frequency
    const BumpPair b = make_bumps(4096);
    auto f = fourier_of(b.b1, 200);
    CHECK(std::abs(f[200 + 200]) < 1e-4 * std::abs(f[200]));
}
