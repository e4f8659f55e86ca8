#include "nccover/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nccover {

namespace {
cplx phase(double theta, long k) { return std::exp(cplx(0.0, 2.0 * kPi * theta * static_cast<double>(k))); }
}  // namespace

TorusElement::TorusElement(double theta, int cutoff)
    : theta_(theta), cutoff_(cutoff), a_(static_cast<size_t>((2 * cutoff + 1) * (2 * cutoff + 1)), 0.0) {}

TorusElement TorusElement::unit(double theta, int cutoff) {
    TorusElement x(theta, cutoff);
    x.set(0, 0, 1.0);
    return x;
}

TorusElement TorusElement::monomial(double theta, int r, int s, cplx c) {
    TorusElement x(theta, std::max(std::abs(r), std::abs(s)));
    x.set(r, s, c);
    return x;
}

TorusElement TorusElement::random(double theta, int cutoff, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    TorusElement x(theta, cutoff);
    for (auto& c : x.a_) c = cplx(g(rng), g(rng));
    return x;
}

cplx TorusElement::coeff(int r, int s) const {
    if (std::abs(r) > cutoff_ || std::abs(s) > cutoff_) return 0.0;
    return a_[idx(r, s)];
}

void TorusElement::set(int r, int s, cplx c) { a_[idx(r, s)] = c; }

TorusElement TorusElement::adjoint() const {
    TorusElement out(theta_, cutoff_);
    for (int r = -cutoff_; r <= cutoff_; ++r)
        for (int s = -cutoff_; s <= cutoff_; ++s)
            out.set(r, s, phase(theta_, -static_cast<long>(r) * s) * std::conj(coeff(-r, -s)));
    return out;
}

TorusElement TorusElement::resized(int cutoff) const {
    TorusElement out(theta_, cutoff);
    const int m = std::min(cutoff, cutoff_);
    for (int r = -m; r <= m; ++r)
        for (int s = -m; s <= m; ++s) out.set(r, s, coeff(r, s));
    return out;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
    if (std::abs(theta_ - o.theta_) > 1e-15) throw Error(ErrorCode::ThetaMismatch, "theta differs");
    const int c = std::max(cutoff_, o.cutoff_);
    TorusElement out = resized(c);
    for (int r = -o.cutoff_; r <= o.cutoff_; ++r)
        for (int s = -o.cutoff_; s <= o.cutoff_; ++s) out.set(r, s, out.coeff(r, s) + o.coeff(r, s));
    return out;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + o * cplx(-1.0); }

TorusElement TorusElement::operator*(cplx c) const {
    TorusElement out = *this;
    for (auto& x : out.a_) x *= c;
    return out;
}

double TorusElement::max_abs() const {
    double m = 0.0;
    for (const auto& c : a_) m = std::max(m, std::abs(c));
    return m;
}

double TorusElement::boundary_shell_max() const {
    double m = 0.0;
    for (int r = -cutoff_; r <= cutoff_; ++r)
        for (int s = -cutoff_; s <= cutoff_; ++s)
            if (std::abs(r) == cutoff_ || std::abs(s) == cutoff_) m = std::max(m, std::abs(coeff(r, s)));
    return m;
}

TorusElement normal_product(const TorusElement& x, const TorusElement& y) {
    if (std::abs(x.theta() - y.theta()) > 1e-15) throw Error(ErrorCode::ThetaMismatch, "theta differs");
    const int rx = x.cutoff(), ry = y.cutoff();
    TorusElement out(x.theta(), rx + ry);
    for (int r1 = -rx; r1 <= rx; ++r1)
        for (int s1 = -rx; s1 <= rx; ++s1) {
            const cplx a = x.coeff(r1, s1);
            if (a == cplx(0.0)) continue;
            for (int r2 = -ry; r2 <= ry; ++r2) {
                const cplx ph = a * phase(x.theta(), -static_cast<long>(s1) * r2);
                for (int s2 = -ry; s2 <= ry; ++s2) {
                    const cplx b = y.coeff(r2, s2);
                    if (b == cplx(0.0)) continue;
                    out.set(r1 + r2, s1 + s2, out.coeff(r1 + r2, s1 + s2) + ph * b);
                }
            }
        }
    return out;
}

TruncatedProduct normal_product_truncated(const TorusElement& x, const TorusElement& y, int cutoff) {
    TorusElement full = normal_product(x, y);
    TruncatedProduct out{full.resized(cutoff), 0.0};
    for (int r = -full.cutoff(); r <= full.cutoff(); ++r)
        for (int s = -full.cutoff(); s <= full.cutoff(); ++s)
            if (std::abs(r) > cutoff || std::abs(s) > cutoff) out.discarded += std::abs(full.coeff(r, s));
    return out;
}

cplx tau0(const TorusElement& x) { return x.coeff(0, 0); }

std::pair<TorusElement, TorusElement> derivations(const TorusElement& x) {
    TorusElement d1(x.theta(), x.cutoff()), d2(x.theta(), x.cutoff());
    for (int r = -x.cutoff(); r <= x.cutoff(); ++r)
        for (int s = -x.cutoff(); s <= x.cutoff(); ++s) {
            d1.set(r, s, cplx(0.0, 2.0 * kPi * r) * x.coeff(r, s));
            d2.set(r, s, cplx(0.0, 2.0 * kPi * s) * x.coeff(r, s));
        }
    return {d1, d2};
}

DiracSpectrum dirac_spectrum(cplx tau_param, int cutoff) {
    if (tau_param.imag() == 0.0) throw Error(ErrorCode::DegenerateTau, "Im tau must be nonzero");
    DiracSpectrum out{tau_param, cutoff, {}};
    for (int r = -cutoff; r <= cutoff; ++r)
        for (int s = -cutoff; s <= cutoff; ++s) {
            const double lam = 2.0 * kPi * std::abs(cplx(r, 0.0) + tau_param * static_cast<double>(s));
            out.eigenvalues.push_back(lam);
            out.eigenvalues.push_back(-lam);
        }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

cplx ClockShiftRep::omega() const { return phase(static_cast<double>(p) / q, 1); }

ClockShiftRep clock_shift(int q, int p) {
    if (q < 1 || std::gcd(q, p) != 1)
        throw Error(ErrorCode::NotCoprime, "p and q must be coprime");
    ClockShiftRep rep;
    rep.q = q;
    rep.p = p;
    rep.U = Mat::Zero(q, q);
    rep.V = Mat::Zero(q, q);
    for (int j = 0; j < q; ++j) {
        const long k = ((static_cast<long>(p) * j) % q + q) % q;
        rep.U(j, j) = phase(static_cast<double>(k) / q, 1);
        rep.V((j + 1) % q, j) = 1.0;
    }
    return rep;
}

Mat evaluate(const TorusElement& x, const ClockShiftRep& rep) {
    if (std::abs(phase(x.theta(), 1) - rep.omega()) > 1e-12)
        throw Error(ErrorCode::ThetaIncompatible, "theta does not match the clock-shift phase");
    const int c = x.cutoff(), q = rep.q;
    auto powers = [&](const Mat& m) {
        std::vector<Mat> pw(2 * c + 1);
        pw[c] = Mat::Identity(q, q);
        for (int k = 1; k <= c; ++k) {
            pw[c + k] = pw[c + k - 1] * m;
            pw[c - k] = pw[c - k + 1] * m.adjoint();
        }
        return pw;
    };
    auto up = powers(rep.U), vp = powers(rep.V);
    Mat out = Mat::Zero(q, q);
    for (int r = -c; r <= c; ++r)
        for (int s = -c; s <= c; ++s) {
            const cplx a = x.coeff(r, s);
            if (a != cplx(0.0)) out += a * up[r + c] * vp[s + c];
        }
    return out;
}

BigradedOperator star_product(const BigradedOperator& x, const BigradedOperator& y, double theta) {
    BigradedOperator out;
    for (const auto& [n, xn] : x)
        for (const auto& [np, yn] : y) {
            const Bidegree d{n.first + np.first, n.second + np.second};
            Mat term = phase(theta, static_cast<long>(np.first) * n.second) * (xn * yn);
            auto it = out.find(d);
            if (it == out.end())
                out.emplace(d, term);
            else
                it->second += term;
        }
    return out;
}

BigradedOperator bigraded_sum(const BigradedOperator& x, const BigradedOperator& y) {
    BigradedOperator out = x;
    for (const auto& [d, m] : y) {
        auto it = out.find(d);
        if (it == out.end())
            out.emplace(d, m);
        else
            it->second += m;
    }
    return out;
}

double bigraded_distance(const BigradedOperator& x, const BigradedOperator& y) {
    double worst = 0.0;
    for (const auto& [d, m] : x) {
        auto it = y.find(d);
        worst = std::max(worst, it == y.end() ? m.norm() : (m - it->second).norm());
    }
    for (const auto& [d, m] : y)
        if (!x.count(d)) worst = std::max(worst, m.norm());
    return worst;
}

BigradedOperator homogeneous_parts(const Mat& m, const ModeSpace& space) {
    BigradedOperator out;
    const int n = space.dim();
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (m(i, j) == cplx(0.0)) continue;
            auto [a1, a2] = space.mode(i);
            auto [b1, b2] = space.mode(j);
            const Bidegree d{a1 - b1, a2 - b2};
            auto it = out.find(d);
            if (it == out.end()) it = out.emplace(d, Mat::Zero(n, n)).first;
            it->second(i, j) = m(i, j);
        }
    return out;
}

Mat grading_operator(const ModeSpace& space, int axis) {
    Mat p = Mat::Zero(space.dim(), space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        auto [m1, m2] = space.mode(k);
        p(k, k) = axis == 0 ? m1 : m2;
    }
    return p;
}

Mat left_twist(const BigradedOperator& x, const ModeSpace& space, double theta) {
    const int n = space.dim();
    Mat out = Mat::Zero(n, n);
    for (const auto& [d, xn] : x) {
        Vec diag(n);
        for (int k = 0; k < n; ++k) diag(k) = phase(theta, static_cast<long>(d.second) * space.mode(k).first);
        out += xn * diag.asDiagonal();
    }
    return out;
}

DimensionDiagnostic dimension_diagnostic(const DiracSpectrum& spec, int power) {
    const double radius = 2.0 * kPi * spec.cutoff * std::abs(spec.tau.imag()) /
                          std::max(1.0, std::abs(spec.tau));
    std::vector<double> v;
    for (double lam : spec.eigenvalues) {
        const double a = std::abs(lam);
        if (a > 0.0 && a < radius) v.push_back(std::pow(a, -power));
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    SingularSeries s(std::move(v), "dirac");
    DixmierEstimate est = log_regression(s);
    DimensionDiagnostic out;
    out.power = power;
    out.slope = est.slope;
    out.stderr_ = est.stderr_;
    const long lo = est.window.first, hi = est.window.second;
    out.ratio_growth = (s.cutoff_sum(hi) / std::log(double(hi))) / (s.cutoff_sum(lo) / std::log(double(lo)));
    return out;
}

}  // namespace nccover
