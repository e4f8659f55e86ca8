#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nccover/linalg.hpp"

namespace nccover {

// Finite-dimensional *-subalgebra of M_n, stored as a Frobenius-orthonormal basis.
class StarAlgebra {
public:
    StarAlgebra() = default;
    StarAlgebra(int ambient_dim, Mat basis_columns);

    static StarAlgebra span_of(const std::vector<Mat>& elems, int ambient_dim);
    // Smallest *-algebra containing gens (and the identity when with_unit is set).
    static StarAlgebra generated_by(const std::vector<Mat>& gens, int ambient_dim,
                                    bool with_unit = false);
    static StarAlgebra full_matrix(int n);
    static StarAlgebra diagonal(int n);

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(q_.cols()); }
    const Mat& basis_columns() const { return q_; }
    Mat basis(int k) const;
    std::vector<Mat> basis_list() const;

    Vec coords(const Mat& x) const;
    Mat element(const Vec& c) const;
    double membership_residual(const Mat& x) const;
    bool contains(const Mat& x, double tol = 1e-9) const;
    double closure_defect() const;

    bool unital() const { return unit_.has_value(); }
    const Mat& unit() const;

private:
    int n_ = 0;
    Mat q_;
    std::optional<Mat> unit_;
    void find_unit();
};

using MultTable = std::vector<std::vector<int>>;

MultTable cyclic_table(int n);
MultTable product_table(const MultTable& a, const MultTable& b);
std::optional<std::string> group_table_defect(const MultTable& t, int identity);

// Finite group acting on an algebra by *-automorphisms given on basis coordinates.
struct GroupAction {
    MultTable table;
    int identity = 0;
    std::vector<Mat> maps;  // dim(A) x dim(A), one per element
    std::vector<Mat> implementers;  // optional unitaries W_g with alpha_g = Ad(W_g)

    int order() const { return static_cast<int>(table.size()); }
    Mat apply(const StarAlgebra& a, int g, const Mat& x) const;
};

GroupAction action_from_maps(const StarAlgebra& a, const MultTable& table, int identity,
                             const std::vector<std::function<Mat(const Mat&)>>& maps);
GroupAction action_from_unitaries(const StarAlgebra& a, const MultTable& table, int identity,
                                  const std::vector<Mat>& unitaries);

// Max of homomorphism, *-preservation and composition residuals. Throws NotAutomorphism above tol.
double validate_action(const StarAlgebra& a, const GroupAction& g, double tol = 1e-9);

StarAlgebra fixed_point_algebra(const StarAlgebra& a, const GroupAction& g);
Mat averaging_map(const GroupAction& g);

enum class Verdict { Success, Indeterminate, Infeasible };
const char* verdict_name(Verdict v);

struct GaloisSolution {
    Verdict verdict = Verdict::Infeasible;
    std::vector<std::pair<Mat, Mat>> pairs;
    double residual_unit = 0.0;
    double residual_orth = 0.0;
    double lsq_residual = 0.0;
};

GaloisSolution solve_canonical(const StarAlgebra& a, const GroupAction& g);

struct CanonicalMapReport {
    int domain_dim = 0;    // dim of A (x)_{A^G} A
    int codomain_dim = 0;  // |G| dim A
    int rank = 0;
    double well_defined_residual = 0.0;
    bool bijective = false;
};

CanonicalMapReport canonical_map_matrix(const StarAlgebra& a, const GroupAction& g);

// Returns u with alpha = Ad(u) on the basis, or nullopt when no invertible intertwiner exists.
std::optional<Mat> is_inner(const StarAlgebra& a, const Mat& alpha, std::mt19937_64& rng);

struct BoringCover {
    StarAlgebra cover;
    GroupAction action;
    StarAlgebra base_diagonal;
};

BoringCover boring_cover(const StarAlgebra& a, const MultTable& table, int identity = 0);

// Random Z_n action on a direct sum of blocks: freely permuted copies of M_s (twisted by a random
// unitary), and M_s graded by Ad(V diag(omega^chi_k) V^*). galois records the expected verdict: every
// free block is Galois, a graded block is Galois iff every character of Z_n occurs.
struct SampledAction {
    StarAlgebra algebra;
    GroupAction action;
    bool galois = false;
    std::string description;
};

SampledAction sample_cyclic_action(int order, std::mt19937_64& rng, int max_blocks = 2);

}  // namespace nccover
