#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "nccover/connections.hpp"

using namespace nccover;
using test::diag;
using test::dist;
using test::mat2;

namespace {

const Rep identity_rep = [](const Mat& x) { return x; };

FramedModule random_projective(int k, int d, std::mt19937_64& rng) {
    const int r = std::uniform_int_distribution<int>(1, k * d)(rng);
    const Mat iso = random_unitary(k * d, rng).leftCols(r);
    const Mat big = iso * iso.adjoint();
    FramedModule m;
    m.rank = k;
    m.p.assign(k, std::vector<Mat>(k));
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) m.p[j][l] = big.block(j * d, l * d, d, d);
    return m;
}

}  // namespace

TEST_CASE("universal differential") {
    CHECK(d(Mat::Identity(3, 3)).is_zero());
    std::mt19937_64 rng(1);
    const Mat a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
    const Mat dirac = random_hermitian(3, rng);
    const Mat shifted = a + cplx(2.0, -1.0) * Mat::Identity(3, 3);
    CHECK(dist(represent_form(d(shifted), dirac, identity_rep), represent_form(d(a), dirac, identity_rep)) < 1e-13);
    const OneForm leib = d(a * b) - d(a).right_mult(b) - d(b).left_mult(a);
    CHECK(op_norm(represent_form(leib, dirac, identity_rep)) < 1e-12);
}

TEST_CASE("represent_form") {
    const Mat dirac = mat2(0, 1, 1, 0);
    CHECK(op_norm(represent_form(d(Mat::Identity(2, 2) * 3.0), dirac, identity_rep)) == 0.0);
    CHECK(op_norm(represent_form(d(dirac), dirac, identity_rep)) < 1e-15);
    CHECK(dist(represent_form(d(diag({1, 0})), dirac, identity_rep), mat2(0, -1, 1, 0)) < 1e-15);
    std::mt19937_64 rng(2);
    const Mat a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
    const Mat sum = represent_form(d(a) + d(b), dirac, identity_rep);
    CHECK(dist(sum, represent_form(d(a), dirac, identity_rep) + represent_form(d(b), dirac, identity_rep)) < 1e-14);
}

TEST_CASE("grassmann connection on a free module") {
    std::mt19937_64 rng(3);
    const int dim = 3;
    const FramedModule f = free_module(1, dim);
    const auto unit = grassmann_connection(f, {Mat::Identity(dim, dim)});
    CHECK(unit[0].is_zero());
    const Mat a = random_matrix(dim, dim, rng), dirac = random_hermitian(dim, rng);
    const auto nabla = grassmann_connection(f, {a});
    CHECK(dist(represent_form(nabla[0], dirac, identity_rep), represent_form(d(a), dirac, identity_rep)) == 0.0);
}

TEST_CASE("Leibniz rule on random projective modules") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const int d = std::uniform_int_distribution<int>(1, 4)(rng);
        const int k = std::uniform_int_distribution<int>(1, std::max(1, 8 / d))(rng);
        const FramedModule m = random_projective(k, d, rng);
        CHECK(m.projection_defect() < 1e-12);
        std::vector<Mat> raw;
        for (int j = 0; j < k; ++j) raw.push_back(random_matrix(d, d, rng));
        const auto xi = m.project(raw);
        CHECK(leibniz_residual(m, xi, random_matrix(d, d, rng), random_hermitian(d, rng), identity_rep) <= 1e-10);
    }
}

TEST_CASE("dirac lift on a boring cover") {
    const int q = 6;
    const Mat dirac = circle_dirac(q);
    const Rep rep = [q](const Mat& x) { return Mat(x.topLeftCorner(q, q)); };
    const GaloisFrame f = boring_frame(StarAlgebra::diagonal(q), cyclic_table(3));
    const LiftedDirac l = dirac_lift(f, dirac, rep, q);
    const HermEig base = herm_eig(dirac);
    std::vector<double> expected;
    for (int k = 0; k < q; ++k)
        for (int g = 0; g < 3; ++g) expected.push_back(base.values(k));
    std::sort(expected.begin(), expected.end());
    REQUIRE(l.spectrum.size() == expected.size());
    for (size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(l.spectrum[k] - expected[k]) < 1e-9);
    CHECK(l.equivariance <= 1e-9);
    CHECK(hermitian_defect(l.restricted) < 1e-12);
}

TEST_CASE("dirac lift on the circle double cover") {
    const int q = 32;
    const Mat dirac = circle_dirac(q);
    const Rep rep = [q](const Mat& x) { return Mat(x.topLeftCorner(q, q)); };
    const RootExtension ext = root_extension(circle_clock(q), 2);
    const LiftedDirac l = dirac_lift(ext.frame, dirac, rep, q);
    CHECK(l.equivariance <= 1e-9);
    CHECK(l.spectrum.size() == static_cast<size_t>(2 * q));

    // locality: on the flat sites the lift acts as x (x) D h
    Mat x = Mat::Zero(ext.frame.ambient, ext.frame.ambient);
    for (size_t i = 0; i < ext.frame.e.size(); ++i) x += ext.frame.e[i].adjoint() * ext.frame.xi[i];
    const auto flat = flat_sites(ext.frame, rep, x, 1);
    CHECK_FALSE(flat.empty());
    Mat chi = Mat::Zero(q, q);
    for (int k : flat) chi(k, k) = 1.0;
    std::mt19937_64 rng(5);
    const Vec h = random_matrix(q, 1, rng).col(0);
    CHECK(locality_residual(ext.frame, rep, dirac, x, h, kron(Mat::Identity(2, 2), chi)) <= 1e-9);
}
