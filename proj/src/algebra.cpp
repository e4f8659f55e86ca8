#include "nccover/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nccover {

StarAlgebra::StarAlgebra(int ambient_dim, Mat basis_columns)
    : n_(ambient_dim), q_(std::move(basis_columns)) {
    find_unit();
}

StarAlgebra StarAlgebra::span_of(const std::vector<Mat>& elems, int ambient_dim) {
    Mat cols(static_cast<Eigen::Index>(ambient_dim) * ambient_dim,
             static_cast<Eigen::Index>(elems.size()));
    for (size_t k = 0; k < elems.size(); ++k) cols.col(k) = vec(elems[k]);
    return StarAlgebra(ambient_dim, column_basis(cols));
}

namespace {

// Gram-Schmidt step against an orthonormal column set; returns the normalized remainder or empty.
std::optional<Vec> orthogonal_remainder(const Mat& q, int used, const Vec& x, double rel_tol) {
    const double nx = x.norm();
    if (nx == 0.0) return std::nullopt;
    Vec r = x;
    if (used > 0) {
        r -= q.leftCols(used) * (q.leftCols(used).adjoint() * r);
        if (r.norm() <= rel_tol * nx) return std::nullopt;
        r -= q.leftCols(used) * (q.leftCols(used).adjoint() * r);
    }
    const double nr = r.norm();
    if (nr <= rel_tol * nx) return std::nullopt;
    return Vec(r / nr);
}

}  // namespace

StarAlgebra StarAlgebra::generated_by(const std::vector<Mat>& gens, int n, bool with_unit) {
    const Eigen::Index len = static_cast<Eigen::Index>(n) * n;
    Mat q(len, 16);
    int used = 0;
    auto push = [&](const Mat& x) -> bool {
        auto r = orthogonal_remainder(q, used, vec(x), 1e-9);
        if (!r) return false;
        if (used == q.cols()) q.conservativeResize(len, std::min<Eigen::Index>(len, 2 * q.cols() + 1));
        if (used >= len)
            throw Error(ErrorCode::ClosureDiverged, "span exceeds ambient dimension");
        q.col(used++) = *r;
        return true;
    };
    std::vector<Mat> letters;
    for (const auto& g : gens) {
        letters.push_back(g);
        letters.push_back(g.adjoint());
    }
    if (with_unit) push(Mat::Identity(n, n));
    for (const auto& l : letters) push(l);
    int frontier_begin = 0;
    while (frontier_begin < used) {
        const int frontier_end = used;
        for (int k = frontier_begin; k < frontier_end; ++k) {
            Mat x = unvec(q.col(k), n, n);
            for (const auto& l : letters) {
                push(x * l);
                if (used > len)
                    throw Error(ErrorCode::ClosureDiverged, "span exceeds ambient dimension");
            }
        }
        frontier_begin = frontier_end;
    }
    return StarAlgebra(n, q.leftCols(used));
}

StarAlgebra StarAlgebra::full_matrix(int n) {
    return StarAlgebra(n, Mat::Identity(static_cast<Eigen::Index>(n) * n,
                                        static_cast<Eigen::Index>(n) * n));
}

StarAlgebra StarAlgebra::diagonal(int n) {
    std::vector<Mat> e;
    for (int k = 0; k < n; ++k) {
        Mat m = Mat::Zero(n, n);
        m(k, k) = 1.0;
        e.push_back(m);
    }
    return span_of(e, n);
}

Mat StarAlgebra::basis(int k) const { return unvec(q_.col(k), n_, n_); }

std::vector<Mat> StarAlgebra::basis_list() const {
    std::vector<Mat> out;
    for (int k = 0; k < dim(); ++k) out.push_back(basis(k));
    return out;
}

Vec StarAlgebra::coords(const Mat& x) const { return q_.adjoint() * vec(x); }

Mat StarAlgebra::element(const Vec& c) const { return unvec(q_ * c, n_, n_); }

double StarAlgebra::membership_residual(const Mat& x) const {
    Vec v = vec(x);
    const double nx = v.norm();
    if (nx == 0.0) return 0.0;
    return (v - q_ * (q_.adjoint() * v)).norm() / nx;
}

bool StarAlgebra::contains(const Mat& x, double tol) const {
    return membership_residual(x) <= tol;
}

double StarAlgebra::closure_defect() const {
    double worst = 0.0;
    for (int j = 0; j < dim(); ++j) {
        Mat bj = basis(j);
        worst = std::max(worst, membership_residual(bj.adjoint()));
        for (int k = 0; k < dim(); ++k) worst = std::max(worst, membership_residual(bj * basis(k)));
    }
    return worst;
}

const Mat& StarAlgebra::unit() const {
    if (!unit_) throw Error(ErrorCode::NotUnital, "algebra has no unit");
    return *unit_;
}

void StarAlgebra::find_unit() {
    unit_.reset();
    if (dim() == 0) return;
    Mat h = Mat::Zero(n_, n_);
    for (int k = 0; k < dim(); ++k) {
        Mat b = basis(k);
        h += b * b.adjoint() + b.adjoint() * b;
    }
    Mat e = range_proj(h);
    if (!contains(e, 1e-8)) return;
    for (int k = 0; k < dim(); ++k) {
        Mat b = basis(k);
        if (op_norm(e * b - b) > 1e-8 || op_norm(b * e - b) > 1e-8) return;
    }
    unit_ = e;
}

MultTable cyclic_table(int n) {
    MultTable t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return t;
}

MultTable product_table(const MultTable& a, const MultTable& b) {
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    MultTable t(na * nb, std::vector<int>(na * nb));
    for (int g = 0; g < na * nb; ++g)
        for (int h = 0; h < na * nb; ++h)
            t[g][h] = a[g / nb][h / nb] * nb + b[g % nb][h % nb];
    return t;
}

std::optional<std::string> group_table_defect(const MultTable& t, int identity) {
    const int n = static_cast<int>(t.size());
    for (const auto& row : t)
        if (static_cast<int>(row.size()) != n) return "table is not square";
    for (int a = 0; a < n; ++a) {
        if (t[identity][a] != a || t[a][identity] != a) return "identity law fails";
        bool has_inverse = false;
        for (int b = 0; b < n; ++b)
            if (t[a][b] == identity && t[b][a] == identity) has_inverse = true;
        if (!has_inverse) return "missing inverse";
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]]) return "associativity fails";
    }
    return std::nullopt;
}

Mat GroupAction::apply(const StarAlgebra& a, int g, const Mat& x) const {
    if (!implementers.empty()) return implementers[g] * x * implementers[g].adjoint();
    return a.element(maps[g] * a.coords(x));
}

GroupAction action_from_maps(const StarAlgebra& a, const MultTable& table, int identity,
                             const std::vector<std::function<Mat(const Mat&)>>& maps) {
    GroupAction out;
    out.table = table;
    out.identity = identity;
    const int n = a.ambient_dim();
    const Mat& q = a.basis_columns();
    const bool full = q.rows() == q.cols() && q.isIdentity(0.0);
    Mat images(static_cast<Eigen::Index>(n) * n, a.dim());
    for (const auto& f : maps) {
        for (int k = 0; k < a.dim(); ++k) images.col(k) = vec(f(a.basis(k)));
        out.maps.push_back(full ? images : Mat(q.adjoint() * images));
    }
    return out;
}

GroupAction action_from_unitaries(const StarAlgebra& a, const MultTable& table, int identity,
                                  const std::vector<Mat>& unitaries) {
    std::vector<std::function<Mat(const Mat&)>> fs;
    for (const auto& w : unitaries) fs.push_back([w](const Mat& x) { return Mat(w * x * w.adjoint()); });
    GroupAction out = action_from_maps(a, table, identity, fs);
    out.implementers = unitaries;
    return out;
}

double validate_action(const StarAlgebra& a, const GroupAction& g, double tol) {
    if (auto d = group_table_defect(g.table, g.identity))
        throw Error(ErrorCode::NotAutomorphism, "group table: " + *d);
    double worst = 0.0;
    const auto basis = a.basis_list();
    for (int h = 0; h < g.order(); ++h) {
        auto alpha = [&](const Mat& x) { return a.element(g.maps[h] * a.coords(x)); };
        for (int j = 0; j < a.dim(); ++j) {
            Mat aj = alpha(basis[j]);
            worst = std::max(worst, op_norm(alpha(basis[j].adjoint()) - aj.adjoint()));
            for (int k = 0; k < a.dim(); ++k)
                worst = std::max(worst, op_norm(alpha(basis[j] * basis[k]) - aj * alpha(basis[k])));
        }
        for (int k = 0; k < g.order(); ++k)
            worst = std::max(worst, op_norm(g.maps[g.table[h][k]] - g.maps[h] * g.maps[k]));
    }
    if (worst > tol)
        throw Error(ErrorCode::NotAutomorphism, "action residual " + std::to_string(worst));
    return worst;
}

StarAlgebra fixed_point_algebra(const StarAlgebra& a, const GroupAction& g) {
    // The averaging map is an idempotent onto the fixed coordinates, so its trace is its rank
    // and its range is captured by a thin random probe.
    const Mat e = averaging_map(g);
    const Eigen::Index d = e.cols();
    const Eigen::Index r = std::llround(e.trace().real());
    if (r > 0 && r + 8 < d) {
        std::mt19937_64 rng(0x5eed);
        Eigen::ColPivHouseholderQR<Mat> qr(Mat(e * random_matrix(static_cast<int>(d), static_cast<int>(r + 8), rng)));
        qr.setThreshold(kRankTol);
        if (qr.rank() == r) {
            const Mat q = qr.householderQ() * Mat::Identity(d, r);
            return StarAlgebra(a.ambient_dim(), a.basis_columns() * q);
        }
    }
    Eigen::ColPivHouseholderQR<Mat> qr(e);
    qr.setThreshold(kRankTol);
    const Mat q = qr.householderQ() * Mat::Identity(d, qr.rank());
    return StarAlgebra(a.ambient_dim(), a.basis_columns() * q);
}

Mat averaging_map(const GroupAction& g) {
    Mat e = Mat::Zero(g.maps[0].rows(), g.maps[0].cols());
    for (const auto& m : g.maps) e += m;
    return e / static_cast<double>(g.order());
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Success: return "success";
        case Verdict::Indeterminate: return "indeterminate";
        case Verdict::Infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

// Column (k,l) holds coordinates of b_k alpha_h(b_l) stacked over all h.
Mat tensor_evaluation(const StarAlgebra& a, const GroupAction& g) {
    const int d = a.dim();
    const auto basis = a.basis_list();
    Mat out(static_cast<Eigen::Index>(g.order()) * d, static_cast<Eigen::Index>(d) * d);
    for (int h = 0; h < g.order(); ++h) {
        std::vector<Mat> moved;
        for (int l = 0; l < d; ++l) moved.push_back(a.element(g.maps[h].col(l)));
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
                out.block(static_cast<Eigen::Index>(h) * d, k * d + l, d, 1) =
                    a.coords(basis[k] * moved[l]);
    }
    return out;
}

}  // namespace

GaloisSolution solve_canonical(const StarAlgebra& a, const GroupAction& g) {
    if (!a.unital()) throw Error(ErrorCode::NotUnital, "solve_canonical needs a unital algebra");
    const int d = a.dim();
    Mat lhs = tensor_evaluation(a, g);
    Vec rhs = Vec::Zero(lhs.rows());
    rhs.segment(static_cast<Eigen::Index>(g.identity) * d, d) = a.coords(a.unit());
    Eigen::CompleteOrthogonalDecomposition<Mat> solver(lhs);
    solver.setThreshold(1e-12);
    Vec t = solver.solve(rhs);

    GaloisSolution out;
    out.lsq_residual = (lhs * t - rhs).norm();
    Mat tm(d, d);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) tm(k, l) = t(k * d + l);
    SvdParts s = svd(tm, 1e-13);
    for (int j = 0; j < s.rank; ++j) {
        Mat left = a.element(s.left.col(j) * s.singular(j));
        Mat right = a.element(s.right.col(j).conjugate());
        out.pairs.emplace_back(left, right);
    }
    const int n = a.ambient_dim();
    for (int h = 0; h < g.order(); ++h) {
        Mat acc = Mat::Zero(n, n);
        for (const auto& [x, y] : out.pairs) acc += x * g.apply(a, h, y);
        if (h == g.identity)
            out.residual_unit = op_norm(acc - a.unit());
        else
            out.residual_orth = std::max(out.residual_orth, op_norm(acc));
    }
    const double r = std::max(out.residual_unit, out.residual_orth);
    out.verdict = r <= 1e-8 ? Verdict::Success : (r <= 1e-6 ? Verdict::Indeterminate : Verdict::Infeasible);
    return out;
}

CanonicalMapReport canonical_map_matrix(const StarAlgebra& a, const GroupAction& g) {
    const int d = a.dim();
    const auto basis = a.basis_list();
    StarAlgebra fixed = fixed_point_algebra(a, g);
    const int f = fixed.dim();
    Mat rel = Mat::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d * f);
    int col = 0;
    for (int c = 0; c < f; ++c) {
        Mat cm = fixed.basis(c);
        std::vector<Vec> right_mult, left_mult;
        for (int k = 0; k < d; ++k) {
            right_mult.push_back(a.coords(basis[k] * cm));
            left_mult.push_back(a.coords(cm * basis[k]));
        }
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l, ++col) {
                for (int m = 0; m < d; ++m) {
                    rel(m * d + l, col) += right_mult[k](m);
                    rel(k * d + m, col) -= left_mult[l](m);
                }
            }
    }
    Mat lmap = tensor_evaluation(a, g);
    CanonicalMapReport out;
    // Relations are built from unit-norm coordinates, so an absolute cut separates zero from noise.
    SvdParts rs = svd(rel, 0.0);
    int rr = 0;
    while (rr < rs.singular.size() && rs.singular(rr) > 1e-9) ++rr;
    Mat rb = rs.left.leftCols(rr);
    out.domain_dim = d * d - static_cast<int>(rb.cols());
    out.codomain_dim = g.order() * d;
    out.well_defined_residual = rb.cols() ? op_norm(lmap * rb) : 0.0;
    Mat complement = Mat::Identity(d * d, d * d) - rb * rb.adjoint();
    out.rank = numerical_rank(lmap * complement);
    out.bijective = out.rank == out.codomain_dim && out.domain_dim == out.codomain_dim &&
                    out.well_defined_residual <= 1e-8;
    return out;
}

std::optional<Mat> is_inner(const StarAlgebra& a, const Mat& alpha, std::mt19937_64& rng) {
    const int n = a.ambient_dim();
    const auto basis = a.basis_list();
    auto act = [&](const Mat& x) { return a.element(alpha * a.coords(x)); };
    double defect = 0.0;
    for (int j = 0; j < a.dim(); ++j) {
        defect = std::max(defect, op_norm(act(basis[j].adjoint()) - act(basis[j]).adjoint()));
        for (int k = 0; k < a.dim(); ++k)
            defect = std::max(defect, op_norm(act(basis[j] * basis[k]) - act(basis[j]) * act(basis[k])));
    }
    if (defect > 1e-8) throw Error(ErrorCode::NotAutomorphism, "map is not a *-automorphism");

    std::vector<Mat> plus = basis;
    plus.push_back(Mat::Identity(n, n));
    StarAlgebra aplus = StarAlgebra::span_of(plus, n);
    const int dp = aplus.dim();
    const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
    Mat eq(nn * a.dim(), dp);
    for (int c = 0; c < dp; ++c) {
        Mat t = aplus.basis(c);
        for (int k = 0; k < a.dim(); ++k) eq.block(nn * k, c, nn, 1) = vec(t * basis[k] - act(basis[k]) * t);
    }
    Mat ns = null_space(eq);
    if (ns.cols() == 0) return std::nullopt;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Vec w = random_matrix(static_cast<int>(ns.cols()), 1, rng).col(0);
        Mat t = aplus.element(ns * w);
        if (numerical_rank(t, 1e-8) < n) continue;
        Mat u = polar(t).isometry;
        double r = 0.0;
        for (const auto& b : basis) r = std::max(r, op_norm(act(b) - u * b * u.adjoint()));
        if (r <= 1e-8) return u;
    }
    return std::nullopt;
}

BoringCover boring_cover(const StarAlgebra& a, const MultTable& table, int identity) {
    const int m = static_cast<int>(table.size());
    const int n = a.ambient_dim();
    std::vector<Mat> cover_basis, diag_basis;
    for (const auto& b : a.basis_list()) {
        Mat sum = Mat::Zero(n * m, n * m);
        for (int g = 0; g < m; ++g) {
            Mat blk = Mat::Zero(n * m, n * m);
            blk.block(g * n, g * n, n, n) = b;
            cover_basis.push_back(blk);
            sum += blk;
        }
        diag_basis.push_back(sum);
    }
    std::vector<Mat> w;
    for (int h = 0; h < m; ++h) {
        Mat p = Mat::Zero(m, m);
        for (int g = 0; g < m; ++g) p(table[h][g], g) = 1.0;
        w.push_back(kron(p, Mat::Identity(n, n)));
    }
    BoringCover out;
    out.cover = StarAlgebra::span_of(cover_basis, n * m);
    out.action = action_from_unitaries(out.cover, table, identity, w);
    out.base_diagonal = StarAlgebra::span_of(diag_basis, n * m);
    return out;
}

SampledAction sample_cyclic_action(int order, std::mt19937_64& rng, int max_blocks) {
    if (order < 2) throw Error(ErrorCode::ConfigInvalid, "cyclic action needs order >= 2");
    std::uniform_int_distribution<int> coin(0, 1), blocks(1, std::max(1, max_blocks));
    std::uniform_int_distribution<int> chr(0, order - 1);
    const cplx w = std::exp(kI * (2.0 * kPi / order));
    struct Block {
        Mat gen;  // implementer of the generator
        int size;
        int s;    // matrix block size
        int copies;
    };
    std::vector<Block> parts;
    SampledAction out;
    out.galois = true;
    const int count = blocks(rng);
    for (int b = 0; b < count; ++b) {
        if (!out.description.empty()) out.description += " + ";
        if (coin(rng) == 0) {
            const int s = order <= 3 ? 1 + coin(rng) : 1;
            Mat shift = Mat::Zero(order, order);
            for (int g = 0; g < order; ++g) shift((g + 1) % order, g) = 1.0;
            std::vector<Mat> twist;
            for (int g = 0; g < order; ++g) twist.push_back(random_unitary(s, rng));
            const Mat d = block_diag(twist);
            parts.push_back({Mat(d * kron(shift, Mat::Identity(s, s)) * d.adjoint()), order * s, s, order});
            out.description += "free(" + std::to_string(order) + "xM" + std::to_string(s) + ")";
        } else {
            const int s = 1 + std::uniform_int_distribution<int>(0, 2)(rng);
            std::vector<int> chars(s);
            for (auto& c : chars) c = chr(rng);
            if (coin(rng) == 0)
                for (int k = 0; k < s; ++k) chars[k] = k % order;
            std::vector<bool> seen(order, false);
            Mat diag = Mat::Zero(s, s);
            for (int k = 0; k < s; ++k) {
                seen[chars[k]] = true;
                diag(k, k) = std::pow(w, chars[k]);
            }
            const Mat v = random_unitary(s, rng);
            parts.push_back({Mat(v * diag * v.adjoint()), s, s, 1});
            const bool all = std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
            out.galois = out.galois && all;
            out.description += "graded(M" + std::to_string(s) + (all ? ",full" : ",partial") + ")";
        }
    }
    int n = 0;
    for (const auto& p : parts) n += p.size;
    std::vector<Mat> basis;
    int offset = 0;
    for (const auto& p : parts) {
        for (int c = 0; c < p.copies; ++c)
            for (int i = 0; i < p.s; ++i)
                for (int j = 0; j < p.s; ++j) {
                    Mat e = Mat::Zero(n, n);
                    e(offset + c * p.s + i, offset + c * p.s + j) = 1.0;
                    basis.push_back(e);
                }
        offset += p.size;
    }
    std::vector<Mat> gens;
    for (const auto& p : parts) gens.push_back(p.gen);
    const Mat gen = block_diag(gens);
    std::vector<Mat> w_list{Mat::Identity(n, n)};
    for (int g = 1; g < order; ++g) w_list.push_back(gen * w_list.back());
    out.algebra = StarAlgebra::span_of(basis, n);
    out.action = action_from_unitaries(out.algebra, cyclic_table(order), 0, w_list);
    return out;
}

}  // namespace nccover
