#include <doctest.h>

#include "helpers.hpp"
#include "nccover/algebra.hpp"

using namespace nccover;
using test::diag;
using test::dist;
using test::mat2;

namespace {

GroupAction translation_on_functions(const StarAlgebra& a) {
    const Mat swap = mat2(0, 1, 1, 0);
    return action_from_unitaries(a, cyclic_table(2), 0, {Mat::Identity(2, 2), swap});
}

Mat sum_products(const GroupAction& g, const StarAlgebra& a, const GaloisSolution& s, int h) {
    Mat acc = Mat::Zero(a.ambient_dim(), a.ambient_dim());
    for (const auto& [x, y] : s.pairs) acc += x * g.apply(a, h, y);
    return acc;
}

}  // namespace

TEST_CASE("star algebra construction") {
    CHECK(StarAlgebra::full_matrix(3).dim() == 9);
    CHECK(StarAlgebra::diagonal(4).dim() == 4);
    const StarAlgebra gen = StarAlgebra::generated_by({mat2(0, 1, 0, 0)}, 2, true);
    CHECK(gen.dim() == 4);
    CHECK(gen.closure_defect() < 1e-12);
    CHECK(gen.unital());
    CHECK(dist(gen.unit(), Mat::Identity(2, 2)) < 1e-12);
    const StarAlgebra d = StarAlgebra::diagonal(2);
    CHECK(d.contains(diag({3, -1})));
    CHECK_FALSE(d.contains(mat2(0, 1, 0, 0)));
}

TEST_CASE("group tables") {
    const MultTable z6 = cyclic_table(6);
    CHECK_FALSE(group_table_defect(z6, 0).has_value());
    const MultTable z2z3 = product_table(cyclic_table(2), cyclic_table(3));
    CHECK(z2z3.size() == 6);
    CHECK_FALSE(group_table_defect(z2z3, 0).has_value());
    MultTable broken = cyclic_table(3);
    broken[1][1] = 1;
    CHECK(group_table_defect(broken, 0).has_value());
}

TEST_CASE("validate_action") {
    const StarAlgebra a = StarAlgebra::full_matrix(2);
    const GroupAction g = action_from_unitaries(a, cyclic_table(2), 0, {Mat::Identity(2, 2), diag({1, -1})});
    CHECK(validate_action(a, g) < 1e-12);
    const GroupAction bad = action_from_maps(a, cyclic_table(2), 0,
                                             {[](const Mat& x) { return x; }, [](const Mat& x) { return Mat(2.0 * x); }});
    CHECK_THROWS_AS(validate_action(a, bad), Error);
}

TEST_CASE("fixed point algebra") {
    std::mt19937_64 rng(1);
    const StarAlgebra m3 = StarAlgebra::full_matrix(3);
    const Mat id3 = Mat::Identity(3, 3);
    const GroupAction trivial = action_from_unitaries(m3, cyclic_table(2), 0, {id3, id3});
    CHECK(fixed_point_algebra(m3, trivial).dim() == 9);

    const StarAlgebra d2 = StarAlgebra::diagonal(2);
    const StarAlgebra f = fixed_point_algebra(d2, translation_on_functions(d2));
    CHECK(f.dim() == 1);
    CHECK(f.contains(Mat::Identity(2, 2)));

    const StarAlgebra m2 = StarAlgebra::full_matrix(2);
    const GroupAction conj = action_from_unitaries(m2, cyclic_table(2), 0, {Mat::Identity(2, 2), diag({1, -1})});
    const StarAlgebra fc = fixed_point_algebra(m2, conj);
    CHECK(fc.dim() == 2);
    CHECK(fc.contains(diag({1, 0})));
    CHECK(fc.contains(diag({0, 1})));
    CHECK_FALSE(fc.contains(mat2(0, 1, 0, 0)));
}

TEST_CASE("averaging map is an idempotent unital projection") {
    const StarAlgebra m2 = StarAlgebra::full_matrix(2);
    const Mat w = diag({1, kI});
    const GroupAction g = action_from_unitaries(m2, cyclic_table(4), 0,
                                                {Mat::Identity(2, 2), w, Mat(w * w), Mat(w * w * w)});
    const Mat e = averaging_map(g);
    CHECK(op_norm(e * e - e) < 1e-12);
    const Vec one = m2.coords(Mat::Identity(2, 2));
    CHECK((e * one - one).norm() < 1e-12);
    // E(x^* x) is positive
    std::mt19937_64 rng(2);
    const Mat x = random_matrix(2, 2, rng);
    const Mat ex = m2.element(e * m2.coords(x.adjoint() * x));
    CHECK(herm_eig(ex).values.minCoeff() >= -1e-12);
}

TEST_CASE("solve_canonical") {
    const StarAlgebra m2 = StarAlgebra::full_matrix(2);
    const Mat id = Mat::Identity(2, 2);
    const GroupAction one = action_from_unitaries(m2, {{0}}, 0, {id});
    const GaloisSolution s1 = solve_canonical(m2, one);
    CHECK(s1.verdict == Verdict::Success);
    CHECK(op_norm(sum_products(one, m2, s1, 0) - id) < 1e-8);

    // functions on Z_2: sum a_i b_i = 1 and sum a_i (g b_i) = 0, as for the indicator pairs
    const StarAlgebra d2 = StarAlgebra::diagonal(2);
    const GroupAction tr = translation_on_functions(d2);
    const GaloisSolution s2 = solve_canonical(d2, tr);
    CHECK(s2.verdict == Verdict::Success);
    CHECK(op_norm(sum_products(tr, d2, s2, 0) - id) < 1e-8);
    CHECK(op_norm(sum_products(tr, d2, s2, 1)) < 1e-8);
    // the hand-built indicator pairs satisfy the same two identities
    const Mat d0 = diag({1, 0}), d1 = diag({0, 1});
    CHECK(dist(d0 * d0 + d1 * d1, id) == 0.0);
    CHECK(dist(d0 * tr.apply(d2, 1, d0) + d1 * tr.apply(d2, 1, d1), Mat::Zero(2, 2)) == 0.0);

    const StarAlgebra c = StarAlgebra::full_matrix(1);
    const Mat one1 = Mat::Identity(1, 1);
    const GroupAction triv = action_from_unitaries(c, cyclic_table(2), 0, {one1, one1});
    CHECK(solve_canonical(c, triv).verdict == Verdict::Infeasible);
}

TEST_CASE("canonical map") {
    const StarAlgebra d2 = StarAlgebra::diagonal(2);
    const CanonicalMapReport r = canonical_map_matrix(d2, translation_on_functions(d2));
    CHECK(r.bijective);
    CHECK(r.domain_dim == 4);
    CHECK(r.codomain_dim == 4);

    const StarAlgebra m2 = StarAlgebra::full_matrix(2);
    CHECK(canonical_map_matrix(m2, action_from_unitaries(m2, {{0}}, 0, {Mat::Identity(2, 2)})).bijective);

    const StarAlgebra c = StarAlgebra::full_matrix(1);
    const Mat one = Mat::Identity(1, 1);
    const CanonicalMapReport t = canonical_map_matrix(c, action_from_unitaries(c, cyclic_table(2), 0, {one, one}));
    CHECK_FALSE(t.bijective);
    CHECK(t.domain_dim == 1);
    CHECK(t.codomain_dim == 2);
}

TEST_CASE("solver and rank test agree on sampled cyclic actions") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        const int order = 2 + t % 3;
        const SampledAction s = sample_cyclic_action(order, rng);
        CHECK(validate_action(s.algebra, s.action) < 1e-9);
        const bool solved = solve_canonical(s.algebra, s.action).verdict == Verdict::Success;
        const bool bij = canonical_map_matrix(s.algebra, s.action).bijective;
        INFO(s.description);
        CHECK(solved == bij);
        CHECK(solved == s.galois);
    }
}

TEST_CASE("is_inner") {
    std::mt19937_64 rng(9);
    const StarAlgebra m3 = StarAlgebra::full_matrix(3);
    auto u = is_inner(m3, Mat::Identity(9, 9), rng);
    REQUIRE(u.has_value());
    CHECK(op_norm(*u - (*u)(0, 0) * Mat::Identity(3, 3)) < 1e-8);

    const Mat w = random_unitary(3, rng);
    const GroupAction g = action_from_unitaries(m3, cyclic_table(1), 0, {w});
    auto v = is_inner(m3, g.maps[0], rng);
    REQUIRE(v.has_value());
    const Mat c = v->adjoint() * w;  // a unimodular scalar
    CHECK(op_norm(c - c(0, 0) * Mat::Identity(3, 3)) < 1e-8);
    CHECK(std::abs(std::abs(c(0, 0)) - 1.0) < 1e-8);

    const StarAlgebra d2 = StarAlgebra::diagonal(2);
    CHECK_FALSE(is_inner(d2, translation_on_functions(d2).maps[1], rng).has_value());
}

TEST_CASE("boring cover") {
    const StarAlgebra m2 = StarAlgebra::full_matrix(2);
    CHECK(boring_cover(m2, {{0}}).cover.dim() == 4);

    const BoringCover c3 = boring_cover(StarAlgebra::full_matrix(1), cyclic_table(3));
    CHECK(c3.cover.dim() == 3);
    CHECK(fixed_point_algebra(c3.cover, c3.action).dim() == 1);

    const BoringCover b = boring_cover(m2, cyclic_table(2));
    CHECK(b.cover.dim() == 8);
    const StarAlgebra f = fixed_point_algebra(b.cover, b.action);
    CHECK(f.dim() == 4);
    for (const auto& x : b.base_diagonal.basis_list()) CHECK(f.contains(x));
    CHECK(solve_canonical(b.cover, b.action).verdict == Verdict::Success);
}
