#include "nccover/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nccover {

Mat GaloisFrame::inner(const Mat& x, const Mat& y) const {
    Mat xy = x.adjoint() * y;
    Mat out = Mat::Zero(ambient, ambient);
    for (int g = 0; g < order(); ++g) out += act(g, xy);
    return form_scale() * out;
}

std::vector<Mat> GaloisFrame::translates() const {
    std::vector<Mat> out;
    for (int g = 0; g < order(); ++g)
        for (const auto& x : xi) out.push_back(act(g, x));
    return out;
}

double RiggedFrameReport::max_residual() const {
    return std::max({residual_1mb, residual_1mkx, residual_eexx, residual_gort});
}

RiggedFrameReport check_frame(const GaloisFrame& f, double tol) {
    const int n = f.ambient;
    const Mat one = Mat::Identity(n, n);
    RiggedFrameReport r;
    Mat s = Mat::Zero(n, n);
    for (const auto& e : f.e) s += e.adjoint() * e;
    r.residual_1mb = op_norm(s - one);

    for (size_t i = 0; i < f.xi.size(); ++i) {
        r.residual_eexx = std::max(r.residual_eexx, op_norm(f.inner(f.xi[i], f.xi[i]) - f.e[i].adjoint() * f.e[i]));
        for (int g = 0; g < f.order(); ++g) {
            if (g == f.identity) continue;
            r.residual_gort = std::max(r.residual_gort, op_norm(f.inner(f.act(g, f.xi[i]), f.xi[i])));
        }
    }

    // sum_{g,i} |y><y| x = sum_h K_h x W_h^*, K_h = c sum_y y W_h y^*.
    const auto ys = f.translates();
    std::vector<Mat> k(f.order(), Mat::Zero(n, n));
    for (int h = 0; h < f.order(); ++h) {
        for (const auto& y : ys) k[h] += y * f.group[h] * y.adjoint();
        k[h] *= f.form_scale();
    }
    const Mat q = f.module_basis.size() ? f.module_basis
                                        : Mat(Mat::Identity(static_cast<Eigen::Index>(n) * n,
                                                            static_cast<Eigen::Index>(n) * n));
    const Eigen::Index d = q.cols();
    Mat images(q.rows(), d);
    for (Eigen::Index c = 0; c < d; ++c) {
        Mat x = unvec(q.col(c), n, n);
        Mat tx = Mat::Zero(n, n);
        for (int h = 0; h < f.order(); ++h) tx += k[h] * x * f.group[h].adjoint();
        images.col(c) = vec(tx);
    }
    const Mat t = q.adjoint() * images;
    const double leak = (images - q * t).colwise().norm().maxCoeff();
    const Mat defect = t - Mat::Identity(d, d);
    r.residual_1mkx = std::max(leak, d > 256 ? norm_upper(defect) : op_norm(defect));
    r.pass = r.max_residual() <= tol;
    return r;
}

RiggedFrameReport check_line_frame(int grid, int window, double tol) {
    if (window < 1) throw Error(ErrorCode::WindowTooSmall, "window must be at least 1");
    BumpPair bumps = make_bumps(grid);
    const int m = (2 * window + 1) * grid + 1;
    // Translates g xi_i whose support fits the window.
    std::vector<std::vector<double>> ys;
    std::vector<int> owner;
    std::vector<int> shift;
    for (int i = 0; i < 2; ++i)
        for (int g = -window; g <= window; ++g) {
            try {
                LineFunction z = lift_to_line(bumps[i], g, window);
                std::vector<double> y(m);
                for (int j = 0; j < m; ++j) y[j] = z.samples[j].real();
                ys.push_back(std::move(y));
                owner.push_back(i);
                shift.push_back(g);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::WindowTooSmall) throw;
            }
        }
    // Sum form evaluated on the circle: <x,y>(k) = sum_{j = k mod grid} x_j y_j.
    auto form = [&](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> out(grid, 0.0);
        for (int j = 0; j < m; ++j) out[j % grid] += x[j] * y[j];
        return out;
    };
    RiggedFrameReport r;
    r.residual_1mb = partition_residual(bumps);
    for (size_t a = 0; a < ys.size(); ++a) {
        if (shift[a] != 0) continue;
        auto self = form(ys[a], ys[a]);
        for (int k = 0; k < grid; ++k)
            r.residual_eexx = std::max(r.residual_eexx, std::abs(self[k] - std::norm(bumps[owner[a]].samples[k])));
        for (size_t b = 0; b < ys.size(); ++b) {
            if (owner[b] != owner[a] || b == a) continue;
            for (double x : form(ys[b], ys[a])) r.residual_gort = std::max(r.residual_gort, std::abs(x));
        }
    }
    LineFunction lf;
    lf.window = window;
    lf.n = grid;
    for (int j = 0; j < m; ++j) {
        if (std::abs(lf.position(j)) > lf.valid_half_width() + 1e-12) continue;
        for (int y = j % grid; y < m; y += grid) {
            double val = 0.0;
            for (const auto& z : ys) val += z[y] * z[j];
            r.residual_1mkx = std::max(r.residual_1mkx, std::abs(val - (y == j ? 1.0 : 0.0)));
        }
    }
    r.pass = r.max_residual() <= tol;
    return r;
}

OrthogonalizedFamily vn_orthogonalize(const std::vector<Mat>& e_list) {
    if (e_list.empty()) throw Error(ErrorCode::NotPartition, "empty family");
    const int n = static_cast<int>(e_list[0].rows());
    const Mat one = Mat::Identity(n, n);
    Mat s = Mat::Zero(n, n);
    for (const auto& e : e_list) s += e.adjoint() * e;
    if (op_norm(s - one) > 1e-8) throw Error(ErrorCode::NotPartition, "sum e_i^* e_i is not 1");
    OrthogonalizedFamily out;
    Mat joined = Mat::Zero(n, n);
    std::vector<Mat> ranges;
    for (const auto& e : e_list) {
        if (op_norm(e) < kRankTol) {
            out.u.push_back(Mat::Zero(n, n));
            ranges.push_back(Mat::Zero(n, n));
            continue;
        }
        PolarParts pp = polar(e);
        Mat range = range_proj(e);
        Mat fresh = proj_diff(range, joined);
        Mat u = fresh * pp.isometry;
        if (op_norm(u) < kRankTol) u.setZero();
        out.u.push_back(u);
        joined = proj_join(joined, range);
        ranges.push_back(range);
    }
    Mat acc = Mat::Zero(n, n);
    for (size_t i = 0; i < out.u.size(); ++i) {
        acc += out.u[i].adjoint() * out.u[i];
        out.residual_domination = std::max(out.residual_domination, op_norm((one - ranges[i]) * out.u[i]));
        for (size_t j = 0; j < out.u.size(); ++j)
            if (i != j) out.residual_orth = std::max(out.residual_orth, op_norm(out.u[i].adjoint() * out.u[j]));
    }
    out.residual_sum = op_norm(acc - one);
    return out;
}

std::vector<Mat> random_commuting_partition(int dim, int count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Mat w = random_unitary(dim, rng);
    std::vector<Eigen::VectorXcd> diags(count, Eigen::VectorXcd::Zero(dim));
    for (int k = 0; k < dim; ++k) {
        double norm2 = 0.0;
        std::vector<double> mag(count);
        for (int i = 0; i < count; ++i) {
            mag[i] = unif(rng) < 0.35 ? 0.0 : unif(rng);
            norm2 += mag[i] * mag[i];
        }
        if (norm2 == 0.0) {
            mag[std::uniform_int_distribution<int>(0, count - 1)(rng)] = 1.0;
            norm2 = 1.0;
        }
        for (int i = 0; i < count; ++i)
            diags[i](k) = mag[i] / std::sqrt(norm2) * std::exp(kI * (2.0 * kPi * unif(rng)));
    }
    std::vector<Mat> out;
    for (const auto& d : diags) out.push_back(w * d.asDiagonal() * w.adjoint());
    return out;
}

InducedModule induced_module(const GaloisFrame& frame, const Rep& rep, int h, std::mt19937_64& rng) {
    const auto ys = frame.translates();
    const int jn = static_cast<int>(ys.size());
    InducedModule out;
    out.gram = Mat(jn * h, jn * h);
    for (int j = 0; j < jn; ++j)
        for (int l = 0; l < jn; ++l) out.gram.block(j * h, l * h, h, h) = rep(frame.inner(ys[j], ys[l]));
    out.dimension = numerical_rank(out.gram);
    out.expected_dimension = frame.order() * h;
    out.projection_defect = projection_defect(out.gram);
    if (out.projection_defect > 1e-6)
        throw Error(ErrorCode::FrameFailed, "frame Gram matrix is not a projection");

    for (size_t i = 0; i < frame.xi.size(); ++i) {
        Vec v = random_matrix(h, 1, rng).col(0);
        const cplx lhs = v.dot(rep(frame.inner(frame.xi[i], frame.xi[i])) * v);
        const cplx rhs = v.dot(rep(frame.e[i].adjoint() * frame.e[i]) * v);
        out.rank_one_residual = std::max(out.rank_one_residual, std::abs(lhs - rhs) / v.squaredNorm());
    }

    OrthogonalizedFamily fam = vn_orthogonalize(frame.e);
    std::vector<Mat> xi2;
    for (size_t i = 0; i < frame.xi.size(); ++i)
        xi2.push_back(frame.xi[i] * pinv(polar(frame.e[i]).absval) * fam.u[i]);
    const int ni = static_cast<int>(xi2.size());
    std::vector<std::vector<Mat>> moved(frame.order());
    for (int g = 0; g < frame.order(); ++g)
        for (const auto& x : xi2) moved[g].push_back(frame.act(g, x));
    for (int g = 0; g < frame.order(); ++g) {
        Mat block(ni * h, ni * h);
        for (int i = 0; i < ni; ++i)
            for (int l = 0; l < ni; ++l) block.block(i * h, l * h, h, h) = rep(frame.inner(moved[g][i], moved[g][l]));
        out.block_ranks.push_back(numerical_rank(block, 1e-7));
        for (int gp = 0; gp < frame.order(); ++gp) {
            if (gp == g) continue;
            for (int i = 0; i < ni; ++i)
                for (int l = 0; l < ni; ++l)
                    out.block_orthogonality = std::max(
                        out.block_orthogonality, op_norm(rep(frame.inner(moved[g][i], moved[gp][l]))));
        }
    }
    return out;
}

GaloisFrame boring_frame(const StarAlgebra& a, const MultTable& table, int identity) {
    const int m = static_cast<int>(table.size());
    const int n = a.ambient_dim();
    BoringCover bc = boring_cover(a, table, identity);
    GaloisFrame f;
    f.ambient = n * m;
    f.table = table;
    f.identity = identity;
    f.group = bc.action.implementers;
    f.module_basis = bc.cover.basis_columns();
    Mat sheet = Mat::Zero(m, m);
    sheet(identity, identity) = 1.0;
    f.e.push_back(Mat::Identity(n * m, n * m));
    f.xi.push_back(std::sqrt(static_cast<double>(m)) * kron(sheet, Mat::Identity(n, n)));
    return f;
}

Mat circle_clock(int q) {
    if (q < 2) throw Error(ErrorCode::ConfigInvalid, "circle grid needs q >= 2");
    Mat u = Mat::Zero(q, q);
    for (int k = 0; k < q; ++k) u(k, k) = std::exp(kI * (-kPi + 2.0 * kPi * (k + 0.5) / q));
    return u;
}

Mat circle_dirac(int q) {
    if (q < 3) throw Error(ErrorCode::ConfigInvalid, "central difference needs q >= 3");
    const double h = 2.0 * kPi / q;
    Mat d = Mat::Zero(q, q);
    for (int k = 0; k < q; ++k) {
        d(k, (k + 1) % q) += -kI / (2.0 * h);
        d(k, (k + q - 1) % q) += kI / (2.0 * h);
    }
    return d;
}

StarAlgebra subordinated_algebra(const GaloisFrame& frame, const std::vector<Mat>& base_generators) {
    std::vector<Mat> gens;
    for (const auto& y : frame.translates()) {
        Mat r = y * y.adjoint();
        gens.push_back(r);
        for (const auto& a : base_generators) gens.push_back(r * a);
    }
    return StarAlgebra::generated_by(gens, frame.ambient, false);
}

Mat bump_of(const Mat& u, int i) {
    return func_calc(u, [i](cplx z) { return cplx(bump_value(i, std::arg(z)), 0.0); });
}

Mat cover_bump_of(const Mat& v, int i, int n) {
    return func_calc(v, [i, n](cplx z) { return cplx(cover_bump_value(i, 0, n, std::arg(z)), 0.0); });
}

Mat principal_root(const Mat& u, int n) {
    const int d = static_cast<int>(u.rows());
    if (op_norm(u.adjoint() * u - Mat::Identity(d, d)) > 1e-10)
        throw Error(ErrorCode::NotNormal, "input is not unitary");
    Eigen::ComplexSchur<Mat> cs(u);
    for (int k = 0; k < d; ++k)
        if (std::abs(cs.matrixT()(k, k) + 1.0) <= 1e-10)
            throw Error(ErrorCode::EigenvalueOnCut, "eigenvalue on the branch cut");
    return func_calc(u, [n](cplx z) { return std::exp(kI * (std::arg(z) / n)); });
}

namespace {

Mat matrix_power(const Mat& m, int k) {
    Mat out = Mat::Identity(m.rows(), m.cols());
    for (int j = 0; j < k; ++j) out = out * m;
    return out;
}

}  // namespace

RootExtension root_extension_with_root(const Mat& u, const Mat& v, int n, const std::vector<Mat>& extra_base) {
    const int d = static_cast<int>(u.rows());
    RootExtension out;
    out.n = n;
    out.v = v;
    out.root_residual = op_norm(matrix_power(v, n) - u);
    const cplx omega = std::exp(kI * (2.0 * kPi / n));
    Mat diag_phase = Mat::Zero(n, n);
    Mat shift = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        diag_phase(j, j) = std::pow(omega, j);
        shift((j + 1) % n, j) = 1.0;
    }
    const Mat one = Mat::Identity(d, d);
    out.v_hat = kron(diag_phase, v);
    out.u_hat = kron(Mat::Identity(n, n), u);
    std::vector<Mat> base_gens{out.u_hat}, cover_gens{out.v_hat};
    for (const auto& a : extra_base) {
        base_gens.push_back(kron(Mat::Identity(n, n), a));
        cover_gens.push_back(base_gens.back());
    }
    out.base = StarAlgebra::generated_by(base_gens, n * d, true);
    out.cover = StarAlgebra::generated_by(cover_gens, n * d, true);

    GaloisFrame& f = out.frame;
    f.ambient = n * d;
    f.table = cyclic_table(n);
    f.identity = 0;
    const Mat gen = kron(shift.adjoint(), one);
    Mat w = Mat::Identity(n * d, n * d);
    for (int g = 0; g < n; ++g) {
        f.group.push_back(w);
        w = w * gen;
    }
    for (int i = 0; i < 2; ++i) {
        f.e.push_back(bump_of(out.u_hat, i));
        f.xi.push_back(std::sqrt(static_cast<double>(n)) * cover_bump_of(out.v_hat, i, n));
    }
    f.module_basis = out.cover.basis_columns();
    return out;
}

RootExtension root_extension(const Mat& u, int n) {
    if (n < 1) throw Error(ErrorCode::ConfigInvalid, "root order must be positive");
    return root_extension_with_root(u, principal_root(u, n), n);
}

const char* torus_frame_name(TorusFrameKind k) {
    switch (k) {
        case TorusFrameKind::Hybrid: return "hybrid";
        case TorusFrameKind::Spectral: return "spectral";
        case TorusFrameKind::BumpProduct: return "bump-product";
    }
    return "unknown";
}

namespace {

long inverse_mod(long a, long m) {
    long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        const long qq = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (r != 1) throw Error(ErrorCode::NotCoprime, "no modular inverse");
    return ((t % m) + m) % m;
}

}  // namespace

TorusCover torus_cover(int m, int n, int k, int p, int q, TorusFrameKind kind) {
    if (m < 1 || n < 1 || q < 1) throw Error(ErrorCode::ConfigInvalid, "m, n, q must be positive");
    if (std::gcd(p, q) != 1) throw Error(ErrorCode::NotCoprime, "theta = p/q must be reduced");
    TorusCover out;
    out.m = m;
    out.n = n;
    out.k = k;
    out.p = p;
    out.q = q;
    out.theta = static_cast<double>(p) / q;
    long num = p + static_cast<long>(k) * q, den = static_cast<long>(q) * m * n;
    const long g = std::gcd(num, den);
    out.p_prime = static_cast<int>(num / g);
    out.q_prime = static_cast<int>(den / g);
    out.theta_prime = static_cast<double>(out.p_prime) / out.q_prime;
    const int qp = out.q_prime;
    if (qp % m != 0 || qp % n != 0)
        throw Error(ErrorCode::ConfigInvalid, "cover denominator must be divisible by m and n");
    out.rep = clock_shift(qp, out.p_prime);
    const Mat& U = out.rep.U;
    const Mat& V = out.rep.V;
    out.u = matrix_power(U, m);
    out.v = matrix_power(V, n);
    const cplx lam = std::exp(kI * (2.0 * kPi * out.theta));
    out.relation_residual = op_norm(out.u * out.v - lam * out.v * out.u);

    const long inv = inverse_mod(out.p_prime, qp);
    const int s = static_cast<int>(((-(qp / m) * inv) % qp + qp) % qp);
    const int t = static_cast<int>((((qp / n) * inv) % qp + qp) % qp);
    GaloisFrame& f = out.frame;
    f.ambient = qp;
    f.table = product_table(cyclic_table(m), cyclic_table(n));
    f.identity = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b) f.group.push_back(matrix_power(V, s * a) * matrix_power(U, t * b));
    const cplx wm = std::exp(kI * (2.0 * kPi / m)), wn = std::exp(kI * (2.0 * kPi / n));
    if (m > 1 || n > 1) {
        const Mat& ga = f.group[m > 1 ? n : 0];
        const Mat& gb = f.group[n > 1 ? 1 : 0];
        out.action_residual = std::max({op_norm(ga * U * ga.adjoint() - (m > 1 ? wm : 1.0) * U),
                                        op_norm(ga * V * ga.adjoint() - V),
                                        op_norm(gb * V * gb.adjoint() - (n > 1 ? wn : 1.0) * V),
                                        op_norm(gb * U * gb.adjoint() - U)});
    }

    StarAlgebra cover = StarAlgebra::full_matrix(qp);
    GroupAction action = action_from_unitaries(cover, f.table, 0, f.group);
    StarAlgebra fixed = fixed_point_algebra(cover, action);
    StarAlgebra base = StarAlgebra::generated_by({out.u, out.v}, qp, true);
    out.fixed_dim = fixed.dim();
    out.base_dim = base.dim();
    Mat both(fixed.basis_columns().rows(), fixed.dim() + base.dim());
    both << fixed.basis_columns(), base.basis_columns();
    out.combined_rank = numerical_rank(both);
    f.module_basis = cover.basis_columns();

    const double order = static_cast<double>(m) * n;
    switch (kind) {
        case TorusFrameKind::Hybrid: {
            Mat avg = Mat::Zero(qp, qp);
            for (int b = 0; b < n; ++b) avg += matrix_power(V, b);
            for (int i = 0; i < 2; ++i) {
                f.e.push_back(bump_of(out.u, i));
                f.xi.push_back(std::sqrt(static_cast<double>(m) / n) * avg * cover_bump_of(U, i, m));
            }
            break;
        }
        case TorusFrameKind::Spectral: {
            Mat sum = Mat::Zero(qp, qp);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < n; ++b) sum += matrix_power(U, a) * matrix_power(V, b);
            f.e.push_back(Mat::Identity(qp, qp));
            f.xi.push_back(sum / std::sqrt(order));
            break;
        }
        case TorusFrameKind::BumpProduct: {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    f.e.push_back(bump_of(out.u, i) * bump_of(out.v, j));
                    f.xi.push_back(std::sqrt(order) * cover_bump_of(U, i, m) * cover_bump_of(V, j, n));
                }
            break;
        }
    }
    return out;
}

MappingCone mapping_cone_cover(int n, int t_grid, int q) {
    if (n < 2) throw Error(ErrorCode::ConfigInvalid, "mapping cone needs n >= 2");
    if (t_grid < 2 || q % n != 0) throw Error(ErrorCode::ConfigInvalid, "need t_grid >= 2 and n | q");
    MappingCone out;
    out.n = n;
    out.t_grid = t_grid;
    out.q = q;
    const int d = t_grid * q;
    const Mat u = clock_shift(q, 1).U;
    const Mat un = matrix_power(u, n);
    std::vector<Mat> basis;
    Mat p = Mat::Identity(q, q);
    for (int j = 0; j < q / n; ++j) {
        Mat b = Mat::Zero(d, d);
        b.block(0, 0, q, q) = p;
        basis.push_back(b);
        p = p * un;
    }
    for (int t = 1; t < t_grid; ++t)
        for (int k = 0; k < q; ++k) {
            Mat b = Mat::Zero(d, d);
            b(t * q + k, t * q + k) = 1.0;
            basis.push_back(b);
        }
    out.base = StarAlgebra::span_of(basis, d);
    const Mat v = kron(Mat::Identity(t_grid, t_grid), u);
    const Mat vn = matrix_power(v, n);
    out.v_membership = out.base.membership_residual(v);
    out.vn_membership = out.base.membership_residual(vn);
    std::vector<Mat> fibre_span;
    Mat pw = Mat::Identity(q, q);
    for (int j = 0; j < q; ++j) {
        fibre_span.push_back(pw);
        pw = pw * un;
    }
    StarAlgebra fibre = StarAlgebra::span_of(fibre_span, q);
    for (const auto& b : out.base.basis_list())
        out.fiber0_residual = std::max(out.fiber0_residual, fibre.membership_residual(b.block(0, 0, q, q)));
    out.extension = root_extension_with_root(vn, v, n, basis);
    return out;
}

std::vector<Mat> su2_grid(int count) {
    std::vector<Mat> out;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double x = r * std::cos(golden * k), y = r * std::sin(golden * k);
        const double alpha = 0.3 + 2.2 * (k + 0.5) / count;
        Mat g(2, 2);
        const double c = std::cos(alpha), s = std::sin(alpha);
        g(0, 0) = cplx(c, s * z);
        g(0, 1) = cplx(s * y, s * x);
        g(1, 0) = cplx(-s * y, s * x);
        g(1, 1) = cplx(c, -s * z);
        out.push_back(g);
    }
    return out;
}

Su2Report su2_disconnect(int n, int grid) {
    Su2Report rep;
    rep.n = n;
    rep.grid = grid;
    const auto gs = su2_grid(grid);
    const int d = 2 * grid;
    const Mat u = block_diag(gs);
    std::vector<Mat> abasis;
    for (int k = 0; k < grid; ++k)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Mat e = Mat::Zero(d, d);
                e(2 * k + a, 2 * k + b) = 1.0;
                abasis.push_back(e);
            }
    RootExtension ext = root_extension_with_root(u, principal_root(u, n), n, abasis);
    rep.frame_report = check_frame(ext.frame);
    std::vector<Mat> embedded;
    for (const auto& a : abasis) embedded.push_back(kron(Mat::Identity(n, n), a));
    StarAlgebra sub = subordinated_algebra(ext.frame, embedded);
    rep.subordinated_dim = sub.dim();

    // Centre of the subordinated algebra: elements commuting with two generic elements, then
    // verified against the whole basis.
    const int big = n * d;
    std::mt19937_64 rng(7);
    const Mat a = sub.element(random_matrix(sub.dim(), 1, rng).col(0));
    const Mat b = sub.element(random_matrix(sub.dim(), 1, rng).col(0));
    const Eigen::Index nn = static_cast<Eigen::Index>(big) * big;
    Mat eq(2 * nn, sub.dim());
    for (int j = 0; j < sub.dim(); ++j) {
        Mat s = sub.basis(j);
        eq.block(0, j, nn, 1) = vec(s * a - a * s);
        eq.block(nn, j, nn, 1) = vec(s * b - b * s);
    }
    Mat centre = sub.basis_columns() * null_space(eq, 1e-9);
    Vec mix = Vec::Zero(nn);
    std::uniform_real_distribution<double> unif(1.0, 2.0);
    for (Eigen::Index c = 0; c < centre.cols(); ++c) mix += unif(rng) * centre.col(c);
    Mat z = unvec(mix, big, big);
    HermEig he = herm_eig(0.5 * (z + z.adjoint()));
    const double scale = std::max(1.0, he.values.cwiseAbs().maxCoeff());
    int start = 0;
    std::vector<cplx> block_labels;
    while (start < big) {
        int end = start + 1;
        while (end < big && std::abs(he.values(end) - he.values(start)) <= 1e-7 * scale) ++end;
        Mat w = he.vectors.middleCols(start, end - start);
        Mat proj = w * w.adjoint();
        if (sub.membership_residual(proj) <= 1e-6) {
            ++rep.central_blocks;
            block_labels.push_back((w.adjoint() * ext.v_hat * w).determinant());
        }
        start = end;
    }
    for (const auto& l : block_labels) {
        bool seen = false;
        for (const auto& x : rep.labels)
            if (std::abs(x - l) <= 1e-6) seen = true;
        if (!seen) rep.labels.push_back(l);
    }
    rep.label_groups = static_cast<int>(rep.labels.size());
    std::vector<bool> hit(n, false);
    bool ok = rep.label_groups == n;
    for (const auto& l : rep.labels) {
        bool matched = false;
        for (int k = 0; k < n; ++k)
            if (!hit[k] && std::abs(l - std::exp(kI * (2.0 * kPi * k / n))) <= 1e-6) {
                hit[k] = true;
                matched = true;
                break;
            }
        ok = ok && matched;
    }
    rep.labels_match = ok;
    rep.pass = rep.frame_report.pass && rep.labels_match;
    return rep;
}

}  // namespace nccover
