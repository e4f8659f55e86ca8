#include "nccover/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace nccover {

namespace {

struct RawSvd {
    Mat u;
    RVec s;
    Mat vh;
};

// jobu / jobv: 'N' none, 'S' thin, 'A' full. Divide and conquer when it applies, QR iteration otherwise
// or when divide and conquer fails to converge.
RawSvd lapack_svd(const Mat& m, char jobu, char jobv) {
    const lapack_int rows = static_cast<lapack_int>(m.rows()), cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);
    RawSvd out;
    out.s.resize(k);
    auto width = [&](char job, lapack_int full) { return job == 'A' ? full : (job == 'S' ? k : 0); };
    out.u.resize(rows, width(jobu, rows));
    out.vh.resize(width(jobv, cols), cols);
    if (k == 0) {
        out.u.setIdentity();
        out.vh.setIdentity();
        return out;
    }
    const lapack_int ldu = std::max<lapack_int>(1, rows);
    const lapack_int ldvt = std::max<lapack_int>(1, static_cast<lapack_int>(out.vh.rows()));
    Mat a = m;
    lapack_int info = 1;
    if (jobu == jobv && jobu != 'A')
        info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobu, rows, cols, a.data(), ldu, out.s.data(),
                              jobu == 'N' ? nullptr : out.u.data(), ldu,
                              jobv == 'N' ? nullptr : out.vh.data(), ldvt);
    if (info != 0) {
        a = m;
        std::vector<double> superb(static_cast<size_t>(k));
        info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, jobu, jobv, rows, cols, a.data(), ldu, out.s.data(),
                              jobu == 'N' ? nullptr : out.u.data(), ldu,
                              jobv == 'N' ? nullptr : out.vh.data(), ldvt, superb.data());
    }
    if (info != 0) throw std::runtime_error("SVD did not converge");
    return out;
}

}  // namespace

RVec singular_values(const Mat& m) {
    if (!m.allFinite()) throw std::runtime_error("SVD of a matrix with non-finite entries");
    return lapack_svd(m, 'N', 'N').s;
}

Mat adjoint(const Mat& m) { return m.adjoint(); }

double op_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    if (!m.allFinite()) return std::numeric_limits<double>::infinity();
    return singular_values(m)(0);
}

double norm_upper(const Mat& m) {
    if (m.size() == 0) return 0.0;
    const double one = m.cwiseAbs().colwise().sum().maxCoeff();
    const double inf = m.cwiseAbs().rowwise().sum().maxCoeff();
    return std::min(m.norm(), std::sqrt(one * inf));
}

double hermitian_defect(const Mat& m) { return op_norm(m - m.adjoint()); }

double normal_defect(const Mat& m) {
    return op_norm(m * m.adjoint() - m.adjoint() * m);
}

SvdParts svd(const Mat& m, double rel_tol, bool full_v) {
    if (!m.allFinite()) throw std::runtime_error("SVD of a matrix with non-finite entries");
    SvdParts out;
    RawSvd s = lapack_svd(m, 'S', full_v ? 'A' : 'S');
    out.left = std::move(s.u);
    out.singular = std::move(s.s);
    out.right = s.vh.adjoint();
    const double top = out.singular.size() ? out.singular(0) : 0.0;
    out.rank = 0;
    if (top > 0.0) {
        for (Eigen::Index k = 0; k < out.singular.size(); ++k)
            if (out.singular(k) > rel_tol * top) ++out.rank;
    }
    return out;
}

int numerical_rank(const Mat& m, double rel_tol) {
    if (m.size() == 0) return 0;
    const RVec sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * sv(0)) ++r;
    return r;
}

HermEig herm_eig(const Mat& m) {
    const double scale = std::max(op_norm(m), 1e-300);
    if (hermitian_defect(m) > 1e-10 * scale)
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const Eigen::Index n = h.rows();
    HermEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = es.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    return out;
}

Mat func_calc(const Mat& m, const std::function<cplx(cplx)>& f) {
    const Eigen::Index n = m.rows();
    const double scale = std::max(op_norm(m), 1e-300);
    if (hermitian_defect(m) <= 1e-12 * scale) {
        HermEig e = herm_eig(m);
        Vec d(n);
        for (Eigen::Index k = 0; k < n; ++k) d(k) = f(cplx(e.values(k), 0.0));
        return e.vectors * d.asDiagonal() * e.vectors.adjoint();
    }
    if (normal_defect(m) > 1e-10 * scale * scale)
        throw Error(ErrorCode::NotNormal, "matrix is not normal");
    Eigen::ComplexSchur<Mat> cs(m);
    const Mat& t = cs.matrixT();
    const Mat& u = cs.matrixU();
    Vec d(n);
    for (Eigen::Index k = 0; k < n; ++k) d(k) = f(t(k, k));
    return u * d.asDiagonal() * u.adjoint();
}

PolarParts polar(const Mat& x) {
    SvdParts s = svd(x);
    const int r = s.rank;
    PolarParts out;
    Mat vr = s.right.leftCols(r);
    out.isometry = s.left.leftCols(r) * vr.adjoint();
    out.absval = vr * s.singular.head(r).cast<cplx>().asDiagonal() * vr.adjoint();
    return out;
}

Mat range_proj(const Mat& x) {
    SvdParts s = svd(x);
    Mat w = s.left.leftCols(s.rank);
    return w * w.adjoint();
}

double projection_defect(const Mat& p) {
    return std::max(op_norm(p - p.adjoint()), op_norm(p * p - p));
}

namespace {

void require_projection(const Mat& p) {
    if (projection_defect(p) > 1e-9)
        throw Error(ErrorCode::NotProjection, "input is not an orthogonal projection");
}

// Spectral projection of (p + q) / 2 onto eigenvalues above a threshold. The spectrum lies in
// [0, 1], so an absolute cut is meaningful even when p + q is nearly zero or nearly 2.
Mat half_sum_projection(const Mat& p, const Mat& q, double above) {
    Mat h = 0.5 * (p + q);
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const auto& v = es.eigenvalues();
    Mat out = Mat::Zero(p.rows(), p.cols());
    for (Eigen::Index k = 0; k < v.size(); ++k)
        if (v(k) > above) out += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    return out;
}

}  // namespace

Mat proj_join(const Mat& p, const Mat& q) {
    require_projection(p);
    require_projection(q);
    return half_sum_projection(p, q, 1e-9);
}

Mat proj_meet(const Mat& p, const Mat& q) {
    require_projection(p);
    require_projection(q);
    return half_sum_projection(p, q, 1.0 - 1e-9);
}

Mat proj_diff(const Mat& p, const Mat& q) { return p - proj_meet(p, q); }

Mat column_basis(const Mat& m, double rel_tol) {
    if (m.cols() == 0) return Mat(m.rows(), 0);
    SvdParts s = svd(m, rel_tol);
    return s.left.leftCols(s.rank);
}

Mat null_space(const Mat& m, double rel_tol) {
    if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
    SvdParts s = svd(m, rel_tol, true);
    return s.right.rightCols(m.cols() - s.rank);
}

Mat pinv(const Mat& m, double rel_tol) {
    SvdParts s = svd(m, rel_tol);
    Mat out = Mat::Zero(m.cols(), m.rows());
    for (int k = 0; k < s.rank; ++k)
        out += s.right.col(k) * (1.0 / s.singular(k)) * s.left.col(k).adjoint();
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat block_diag(const std::vector<Mat>& blocks) {
    Eigen::Index r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat out = Mat::Zero(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvec(const Vec& v, int rows, int cols) {
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

Mat random_unitary(int n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Mat> qr(random_matrix(n, n, rng));
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR();
    for (int k = 0; k < n; ++k) {
        const double a = std::abs(r(k, k));
        if (a > 0) q.col(k) *= r(k, k) / a;
    }
    return q;
}

Mat random_hermitian(int n, std::mt19937_64& rng) {
    Mat a = random_matrix(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

}  // namespace nccover
