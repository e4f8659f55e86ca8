#include "nccover/connections.hpp"

#include <algorithm>
#include <cmath>

namespace nccover {

namespace {

Mat strip_identity(const Mat& b) {
    const double n = static_cast<double>(b.rows());
    return b - (b.trace() / n) * Mat::Identity(b.rows(), b.cols());
}

bool negligible(const Mat& b, double ref) { return b.norm() <= 1e-14 * std::max(1.0, ref); }

}  // namespace

OneForm OneForm::operator+(const OneForm& o) const {
    OneForm out = *this;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    return out;
}

OneForm OneForm::operator-(const OneForm& o) const { return *this + o.scaled(-1.0); }

OneForm OneForm::scaled(cplx c) const {
    OneForm out = *this;
    for (auto& t : out.terms) t.first *= c;
    return out;
}

OneForm OneForm::left_mult(const Mat& c) const {
    OneForm out = *this;
    for (auto& t : out.terms) t.first = c * t.first;
    return out;
}

OneForm OneForm::right_mult(const Mat& c) const {
    OneForm out;
    for (const auto& [a, b] : terms) {
        out = out + d(b * c).left_mult(a);
        out = out - d(c).left_mult(a * b);
    }
    return out;
}

OneForm d(const Mat& a) {
    OneForm w;
    Mat b = strip_identity(a);
    if (!negligible(b, a.norm())) w.terms.emplace_back(Mat::Identity(a.rows(), a.cols()), b);
    return w;
}

Mat represent_form(const OneForm& w, const Mat& dirac, const Rep& rep) {
    Mat out = Mat::Zero(dirac.rows(), dirac.cols());
    for (const auto& [a, b] : w.terms) {
        const Mat rb = rep(b);
        out += rep(a) * (dirac * rb - rb * dirac);
    }
    return out;
}

double FramedModule::projection_defect() const {
    double worst = 0.0;
    for (int j = 0; j < rank; ++j)
        for (int l = 0; l < rank; ++l) {
            Mat sq = Mat::Zero(p[0][0].rows(), p[0][0].cols());
            for (int k = 0; k < rank; ++k) sq += p[j][k] * p[k][l];
            worst = std::max({worst, op_norm(sq - p[j][l]), op_norm(p[j][l] - p[l][j].adjoint())});
        }
    return worst;
}

std::vector<Mat> FramedModule::project(const std::vector<Mat>& x) const {
    std::vector<Mat> out;
    for (int j = 0; j < rank; ++j) {
        Mat acc = Mat::Zero(x[0].rows(), x[0].cols());
        for (int l = 0; l < rank; ++l) acc += p[j][l] * x[l];
        out.push_back(acc);
    }
    return out;
}

FramedModule free_module(int rank, int dim) {
    FramedModule m;
    m.rank = rank;
    m.p.assign(rank, std::vector<Mat>(rank, Mat::Zero(dim, dim)));
    for (int j = 0; j < rank; ++j) m.p[j][j] = Mat::Identity(dim, dim);
    return m;
}

std::vector<OneForm> grassmann_connection(const FramedModule& m, const std::vector<Mat>& xi) {
    std::vector<OneForm> out(m.rank);
    for (int j = 0; j < m.rank; ++j)
        for (int l = 0; l < m.rank; ++l) out[j] = out[j] + d(xi[l]).left_mult(m.p[j][l]);
    return out;
}

double leibniz_residual(const FramedModule& m, const std::vector<Mat>& xi, const Mat& a,
                        const Mat& dirac, const Rep& rep) {
    std::vector<Mat> xa;
    for (const auto& x : xi) xa.push_back(x * a);
    const auto lhs = grassmann_connection(m, xa);
    const auto nab = grassmann_connection(m, xi);
    const OneForm da = d(a);
    double worst = 0.0, scale = op_norm(dirac) * std::max(1.0, op_norm(a));
    for (const auto& x : xi) scale = std::max(scale, op_norm(dirac) * op_norm(x) * std::max(1.0, op_norm(a)));
    for (int j = 0; j < m.rank; ++j) {
        OneForm diff = lhs[j] - nab[j].right_mult(a) - da.left_mult(xi[j]);
        worst = std::max(worst, op_norm(represent_form(diff, dirac, rep)));
    }
    return worst / scale;
}

LiftedDirac dirac_lift(const GaloisFrame& frame, const Mat& dirac, const Rep& rep, int h) {
    if (hermitian_defect(dirac) > 1e-10 * std::max(1.0, op_norm(dirac)))
        throw Error(ErrorCode::NotHermitian, "Dirac operator must be selfadjoint");
    LiftedDirac out;
    for (const auto& e : frame.e) {
        const Mat re = rep(e);
        const double c = op_norm(dirac * re - re * dirac);
        if (!std::isfinite(c)) throw Error(ErrorCode::NotDifferentiable, "commutator with D is not finite");
        out.max_commutator = std::max(out.max_commutator, c);
    }
    const auto ys = frame.translates();
    const int jn = static_cast<int>(ys.size());
    const int ni = static_cast<int>(frame.xi.size());
    out.projection = Mat(jn * h, jn * h);
    for (int j = 0; j < jn; ++j)
        for (int l = 0; l < jn; ++l) out.projection.block(j * h, l * h, h, h) = rep(frame.inner(ys[j], ys[l]));
    if (projection_defect(out.projection) > 1e-8)
        throw Error(ErrorCode::FrameFailed, "frame projection is not idempotent");
    const Mat big_d = kron(Mat::Identity(jn, jn), dirac);
    out.full = out.projection * big_d * out.projection;
    out.range_basis = column_basis(out.projection, 1e-6);
    out.restricted = out.range_basis.adjoint() * out.full * out.range_basis;
    out.restricted = 0.5 * (out.restricted + out.restricted.adjoint());
    HermEig he = herm_eig(out.restricted);
    for (Eigen::Index k = he.values.size() - 1; k >= 0; --k) out.spectrum.push_back(he.values(k));
    for (int g = 0; g < frame.order(); ++g) {
        Mat perm = Mat::Zero(jn, jn);
        for (int gp = 0; gp < frame.order(); ++gp)
            for (int i = 0; i < ni; ++i) perm(frame.table[g][gp] * ni + i, gp * ni + i) = 1.0;
        const Mat w = kron(perm, Mat::Identity(h, h));
        out.equivariance = std::max(out.equivariance, op_norm(w * out.full - out.full * w));
    }
    return out;
}

Vec module_coordinates(const GaloisFrame& frame, const Rep& rep, const Mat& x, const Vec& h) {
    const auto ys = frame.translates();
    const Eigen::Index hd = h.size();
    Vec out(static_cast<Eigen::Index>(ys.size()) * hd);
    for (size_t j = 0; j < ys.size(); ++j) out.segment(j * hd, hd) = rep(frame.inner(ys[j], x)) * h;
    return out;
}

double locality_residual(const GaloisFrame& frame, const Rep& rep, const Mat& dirac, const Mat& x,
                         const Vec& h, const Mat& indicator) {
    const auto ys = frame.translates();
    const int jn = static_cast<int>(ys.size());
    const int hd = static_cast<int>(h.size());
    Mat p(jn * hd, jn * hd), cut(jn * hd, jn * hd);
    for (int j = 0; j < jn; ++j)
        for (int l = 0; l < jn; ++l) {
            p.block(j * hd, l * hd, hd, hd) = rep(frame.inner(ys[j], ys[l]));
            cut.block(j * hd, l * hd, hd, hd) = rep(frame.inner(ys[j], indicator * ys[l]));
        }
    const Vec psi = module_coordinates(frame, rep, x, h);
    const Vec target = module_coordinates(frame, rep, x, dirac * h);
    const Vec lifted = p * kron(Mat::Identity(jn, jn), dirac) * psi;
    return (cut * (lifted - target)).norm() / (op_norm(dirac) * std::max(psi.norm(), 1e-300));
}

std::vector<int> flat_sites(const GaloisFrame& frame, const Rep& rep, const Mat& x, int width) {
    const auto ys = frame.translates();
    std::vector<Vec> f;
    double scale = 0.0;
    for (const auto& y : ys) {
        f.push_back(rep(frame.inner(y, x)).diagonal());
        scale = std::max(scale, f.back().cwiseAbs().maxCoeff());
    }
    const int q = static_cast<int>(f.front().size());
    std::vector<int> out;
    for (int k = 0; k < q; ++k) {
        bool flat = true;
        for (const auto& c : f)
            for (int s = -width; s <= width && flat; ++s)
                flat = std::abs(c((k + s + q) % q) - c(k)) <= 1e-12 * std::max(1.0, scale);
        if (flat) out.push_back(k);
    }
    return out;
}

}  // namespace nccover
