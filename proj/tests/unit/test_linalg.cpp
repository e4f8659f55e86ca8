#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nccover/linalg.hpp"

using namespace nccover;
using test::diag;
using test::dist;
using test::mat2;

TEST_CASE("adjoint") {
    CHECK(dist(adjoint(Mat::Identity(3, 3)), Mat::Identity(3, 3)) == 0.0);
    CHECK(dist(adjoint(mat2(0, 1, 0, 0)), mat2(0, 0, 1, 0)) == 0.0);
    Mat i(1, 1);
    i(0, 0) = kI;
    CHECK(adjoint(i)(0, 0) == -kI);
}

TEST_CASE("herm_eig") {
    HermEig e = herm_eig(diag({3, 1}));
    CHECK(e.values(0) == doctest::Approx(3.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
    CHECK(dist(e.vectors.cwiseAbs().cast<cplx>(), Mat::Identity(2, 2)) < 1e-14);

    // characteristic polynomial l^2 - 1
    HermEig f = herm_eig(mat2(0, 1, 1, 0));
    CHECK(f.values(0) == doctest::Approx(1.0));
    CHECK(f.values(1) == doctest::Approx(-1.0));

    HermEig g = herm_eig(Mat::Identity(5, 5));
    for (int k = 0; k < 5; ++k) CHECK(g.values(k) == doctest::Approx(1.0));

    CHECK_THROWS_AS(herm_eig(mat2(0, 1, 0, 0)), Error);
}

TEST_CASE("herm_eig reconstructs random Hermitian") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 10; ++n) {
        const Mat m = random_hermitian(n, rng);
        HermEig e = herm_eig(m);
        const Mat back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        CHECK(op_norm(back - m) <= 1e-10 * op_norm(m));
        for (int k = 1; k < n; ++k) CHECK(e.values(k - 1) >= e.values(k));
    }
}

TEST_CASE("func_calc") {
    std::mt19937_64 rng(3);
    const Mat h = random_hermitian(6, rng);
    CHECK(dist(func_calc(h, [](cplx z) { return z; }), h) < 1e-12);
    CHECK(dist(func_calc(diag({4, 9}), [](cplx z) { return std::sqrt(z); }), diag({2, 3})) < 1e-14);

    // unitary with eigenvalues +-i: principal square roots e^{+-i pi/4}
    const Mat w = random_unitary(2, rng);
    const Mat u = w * diag({kI, -kI}) * w.adjoint();
    const Mat r = func_calc(u, [](cplx z) { return std::sqrt(z); });
    const Mat expected = w * diag({std::exp(kI * (kPi / 4)), std::exp(-kI * (kPi / 4))}) * w.adjoint();
    CHECK(dist(r, expected) < 1e-12);

    // polynomial agrees with direct evaluation, and f g = f . g
    const Mat poly = func_calc(h, [](cplx z) { return z * z - 2.0 * z + 1.0; });
    CHECK(op_norm(poly - (h * h - 2.0 * h + Mat::Identity(6, 6))) < 1e-10 * std::max(1.0, op_norm(h * h)));
    auto f = [](cplx z) { return std::exp(z); };
    auto g = [](cplx z) { return std::cos(z); };
    const Mat fg = func_calc(h, [&](cplx z) { return f(z) * g(z); });
    CHECK(op_norm(fg - func_calc(h, f) * func_calc(h, g)) < 1e-9 * std::max(1.0, op_norm(fg)));

    CHECK_THROWS_AS(func_calc(mat2(0, 1, 0, 0), f), Error);
}

TEST_CASE("polar") {
    PolarParts id = nccover::polar(Mat::Identity(3, 3));
    CHECK(dist(id.isometry, Mat::Identity(3, 3)) < 1e-14);
    CHECK(dist(id.absval, Mat::Identity(3, 3)) < 1e-14);

    PolarParts p = nccover::polar(diag({2, 0}));
    CHECK(dist(p.isometry, diag({1, 0})) < 1e-14);
    CHECK(dist(p.absval, diag({2, 0})) < 1e-14);

    std::mt19937_64 rng(5);
    const Mat x = random_matrix(5, 5, rng);
    PolarParts q = nccover::polar(x);
    CHECK(op_norm(q.isometry.adjoint() * q.isometry - Mat::Identity(5, 5)) < 1e-10);
}

TEST_CASE("polar round trip on 200 random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 12);
    for (int t = 0; t < 200; ++t) {
        const int n = dim(rng);
        Mat x = random_matrix(n, n, rng);
        if (t % 3 == 0 && n > 1) x.col(0) = x.col(1);  // rank deficient
        PolarParts p = nccover::polar(x);
        CHECK(op_norm(x - p.isometry * p.absval) <= 1e-9 * op_norm(x));
        CHECK(op_norm(p.isometry.adjoint() * p.isometry - range_proj(p.absval)) < 1e-10);
        CHECK(op_norm(p.isometry * p.isometry.adjoint() - range_proj(x)) < 1e-10);
    }
}

TEST_CASE("range_proj") {
    CHECK(dist(range_proj(Mat::Zero(3, 3)), Mat::Zero(3, 3)) == 0.0);
    CHECK(dist(range_proj(diag({5, 0})), diag({1, 0})) < 1e-14);
    Vec v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Vec w(2);
    w << 0.3, kI;
    const Mat p = range_proj(v * w.adjoint());
    CHECK(dist(p, v * v.adjoint()) < 1e-14);
    CHECK(numerical_rank(p) == 1);
}

TEST_CASE("projection lattice") {
    const Mat p = diag({1, 0}), q = diag({0, 1});
    CHECK(dist(proj_join(p, p), p) < 1e-12);
    CHECK(dist(proj_meet(p, p), p) < 1e-12);
    CHECK(dist(proj_diff(p, p), Mat::Zero(2, 2)) < 1e-12);
    CHECK(dist(proj_join(p, q), Mat::Identity(2, 2)) < 1e-12);
    CHECK(dist(proj_meet(p, q), Mat::Zero(2, 2)) < 1e-12);

    // rank-one projections at 45 degrees: p + q has rank 2, 2 - (p + q) has rank 2
    Vec a(2), b(2);
    a << 1, 0;
    b << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Mat pa = a * a.adjoint(), pb = b * b.adjoint();
    CHECK(dist(proj_join(pa, pb), Mat::Identity(2, 2)) < 1e-12);
    CHECK(dist(proj_meet(pa, pb), Mat::Zero(2, 2)) < 1e-12);

    CHECK_THROWS_AS(proj_join(diag({2, 0}), p), Error);
}

TEST_CASE("lattice laws on random projections") {
    std::mt19937_64 rng(13);
    auto random_projection = [&](int n, int r) {
        const Mat u = random_unitary(n, rng).leftCols(r);
        return Mat(u * u.adjoint());
    };
    auto psd = [](const Mat& m) { return herm_eig(0.5 * (m + m.adjoint())).values.minCoeff() >= -1e-9; };
    for (int t = 0; t < 50; ++t) {
        const Mat p = random_projection(6, 1 + t % 3);
        const Mat q = random_projection(6, 1 + t % 4);
        const Mat j = proj_join(p, q), m = proj_meet(p, q);
        CHECK(op_norm(j - proj_join(q, p)) < 1e-9);
        CHECK(psd(p - m));
        CHECK(psd(j - p));
        CHECK(projection_defect(j) < 1e-9);
        CHECK(projection_defect(m) < 1e-9);
    }
}

TEST_CASE("meet of coordinate planes is their shared axis") {
    const Mat q1 = diag({1, 1, 0, 0}), q2 = diag({1, 0, 1, 0});
    CHECK(dist(proj_meet(q1, q2), diag({1, 0, 0, 0})) < 1e-9);
    CHECK(dist(proj_join(q1, q2), diag({1, 1, 1, 0})) < 1e-9);
    CHECK(dist(proj_diff(q1, q2), diag({0, 1, 0, 0})) < 1e-9);
}

TEST_CASE("kron and block_diag") {
    const Mat a = mat2(1, 2, 3, 4);
    const Mat k = kron(Mat::Identity(2, 2), a);
    CHECK(dist(k, block_diag({a, a})) == 0.0);
    CHECK(dist(unvec(vec(a), 2, 2), a) == 0.0);
}
