#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nccover/algebra.hpp"
#include "nccover/circle.hpp"
#include "nccover/linalg.hpp"
#include "nccover/torus.hpp"

namespace nccover {

using Rep = std::function<Mat(const Mat&)>;

enum class FormNormalization { Averaged, Sum };

// Frame data inside one ambient M_N: base elements e_i, module elements xi_i, and the group acting
// by Ad(W_g). The module X is the span of module_basis (Frobenius-orthonormal vectorized columns).
struct GaloisFrame {
    int ambient = 0;
    std::vector<Mat> e;
    std::vector<Mat> xi;
    MultTable table;
    int identity = 0;
    std::vector<Mat> group;
    Mat module_basis;
    FormNormalization form = FormNormalization::Averaged;

    int order() const { return static_cast<int>(group.size()); }
    Mat act(int g, const Mat& x) const { return group[g] * x * group[g].adjoint(); }
    Mat inner(const Mat& x, const Mat& y) const;
    double form_scale() const { return form == FormNormalization::Averaged ? 1.0 / order() : 1.0; }
    // All translates g xi_i, ordered (g, i).
    std::vector<Mat> translates() const;
};

struct RiggedFrameReport {
    double residual_1mb = 0.0;
    double residual_1mkx = 0.0;
    double residual_eexx = 0.0;
    double residual_gort = 0.0;
    bool pass = false;
    double max_residual() const;
};

RiggedFrameReport check_frame(const GaloisFrame& frame, double tol = 1e-8);

// Commutative line cover with Z acting by 2 pi translations, truncated to |g| <= window.
RiggedFrameReport check_line_frame(int grid, int window, double tol = 1e-8);

struct OrthogonalizedFamily {
    std::vector<Mat> u;
    double residual_sum = 0.0;         // ||sum u_i^* u_i - 1||
    double residual_orth = 0.0;        // max_{i != j} ||u_i^* u_j||
    double residual_domination = 0.0;  // max_i ||(1 - [e_i]) u_i||
};

OrthogonalizedFamily vn_orthogonalize(const std::vector<Mat>& e_list);
// Partition e_i = W D_i Phi_i W^* with commuting ranges, some D_i vanishing on random coordinates.
std::vector<Mat> random_commuting_partition(int dim, int count, std::mt19937_64& rng);

struct InducedModule {
    int dimension = 0;             // rank of the Gram matrix of {g xi_i (x) h}
    int expected_dimension = 0;    // |G| dim H
    Mat gram;                      // the frame projection p, blocks rho(<y_j, y_l>)
    double projection_defect = 0.0;
    double block_orthogonality = 0.0;
    double rank_one_residual = 0.0;
    std::vector<int> block_ranks;  // rank of each translated block
};

InducedModule induced_module(const GaloisFrame& frame, const Rep& rep, int rep_dim,
                             std::mt19937_64& rng);

// Frame of the boring cover of a: e = 1, xi = sqrt|G| times the identity-sheet indicator.
GaloisFrame boring_frame(const StarAlgebra& a, const MultTable& table, int identity = 0);

// Diagonal unitary sampling the circle at phi_k = -pi + 2 pi (k + 1/2) / q, and the selfadjoint
// central difference -i d/dphi on the same grid.
Mat circle_clock(int q);
Mat circle_dirac(int q);

StarAlgebra subordinated_algebra(const GaloisFrame& frame, const std::vector<Mat>& base_generators);

// Bump b_i of a unitary via functional calculus on the spectrum angle.
Mat bump_of(const Mat& u, int i);
// Sheet-0 lift of bump i to the n-fold cover, evaluated at a unitary.
Mat cover_bump_of(const Mat& v, int i, int n);

struct RootExtension {
    int n = 1;
    Mat v;       // principal n-th root of u
    Mat v_hat;   // blockdiag(omega^j v) on C^n (x) H
    Mat u_hat;   // blockdiag(u, ..., u)
    StarAlgebra base;
    StarAlgebra cover;
    GaloisFrame frame;
    double root_residual = 0.0;  // ||v^n - u||
};

// Principal n-th root with the branch cut at angle pi.
Mat principal_root(const Mat& u, int n);
RootExtension root_extension(const Mat& u, int n);
// Same construction with a prescribed n-th root v of u (no branch choice).
RootExtension root_extension_with_root(const Mat& u, const Mat& v, int n,
                                       const std::vector<Mat>& extra_base = {});

enum class TorusFrameKind { Hybrid, Spectral, BumpProduct };
const char* torus_frame_name(TorusFrameKind k);

struct TorusCover {
    int m = 1, n = 1, k = 0;
    int p = 0, q = 1;
    int p_prime = 0, q_prime = 1;
    double theta = 0.0, theta_prime = 0.0;
    ClockShiftRep rep;
    Mat u, v;  // base generators u'^m, v'^n
    GaloisFrame frame;
    int fixed_dim = 0;
    int base_dim = 0;
    int combined_rank = 0;
    double relation_residual = 0.0;  // ||uv - e^{2 pi i theta} vu||
    double action_residual = 0.0;    // generator phases under the group
};

TorusCover torus_cover(int m, int n, int k, int p, int q, TorusFrameKind kind = TorusFrameKind::Hybrid);

struct MappingCone {
    int n = 2, t_grid = 0, q = 0;
    RootExtension extension;
    StarAlgebra base;
    double v_membership = 0.0;    // residual of v against the base; large means v is not in it
    double vn_membership = 0.0;   // residual of v^n; ~0
    double fiber0_residual = 0.0; // t = 0 fibres of the base against span{u^{kn}}
};

MappingCone mapping_cone_cover(int n, int t_grid, int q);

struct Su2Report {
    int n = 2, grid = 0;
    int subordinated_dim = 0;
    int central_blocks = 0;
    std::vector<cplx> labels;  // distinct det values
    int label_groups = 0;
    bool labels_match = false;
    RiggedFrameReport frame_report;
    bool pass = false;
};

std::vector<Mat> su2_grid(int count);
Su2Report su2_disconnect(int n, int grid);

}  // namespace nccover
