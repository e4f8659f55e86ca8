#pragma once

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nccover/errors.hpp"

namespace nccover {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kRankTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

struct HermEig {
    RVec values;  // descending
    Mat vectors;
};

struct PolarParts {
    Mat isometry;
    Mat absval;
};

struct SvdParts {
    Mat left;
    RVec singular;  // descending
    Mat right;
    int rank = 0;
};

Mat adjoint(const Mat& m);
double op_norm(const Mat& m);
// Cheap upper bound on the operator norm: min of Frobenius and sqrt(||m||_1 ||m||_inf).
double norm_upper(const Mat& m);
double hermitian_defect(const Mat& m);
double normal_defect(const Mat& m);

// Descending singular values.
RVec singular_values(const Mat& m);
SvdParts svd(const Mat& m, double rel_tol = kRankTol, bool full_v = false);
int numerical_rank(const Mat& m, double rel_tol = kRankTol);

HermEig herm_eig(const Mat& m);
Mat func_calc(const Mat& m, const std::function<cplx(cplx)>& f);

PolarParts polar(const Mat& x);
Mat range_proj(const Mat& x);
double projection_defect(const Mat& p);
Mat proj_join(const Mat& p, const Mat& q);
Mat proj_meet(const Mat& p, const Mat& q);
Mat proj_diff(const Mat& p, const Mat& q);

// Orthonormal basis of the column span, and of the null space.
Mat column_basis(const Mat& m, double rel_tol = kRankTol);
Mat null_space(const Mat& m, double rel_tol = kRankTol);
Mat pinv(const Mat& m, double rel_tol = kRankTol);

Mat kron(const Mat& a, const Mat& b);
Mat block_diag(const std::vector<Mat>& blocks);
Vec vec(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);

Mat random_matrix(int rows, int cols, std::mt19937_64& rng);
Mat random_unitary(int n, std::mt19937_64& rng);
Mat random_hermitian(int n, std::mt19937_64& rng);

}  // namespace nccover
