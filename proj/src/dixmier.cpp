#include "nccover/dixmier.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>


namespace nccover {

SingularSeries::SingularSeries(std::vector<double> values, std::string provenance, bool exhaustive)
    : values_(std::move(values)), provenance_(std::move(provenance)), exhaustive_(exhaustive) {
    for (size_t k = 1; k < values_.size(); ++k)
        if (values_[k] > values_[k - 1])
            throw Error(ErrorCode::ConfigInvalid, "singular series must be nonincreasing");
    for (double v : values_)
        if (!(v >= 0.0)) throw Error(ErrorCode::ConfigInvalid, "singular values must be nonnegative");
    prefix_.assign(values_.size() + 1, 0.0L);
    for (size_t k = 0; k < values_.size(); ++k) prefix_[k + 1] = prefix_[k] + values_[k];
}

double SingularSeries::cutoff_sum(long n) const {
    if (n <= 0) return 0.0;
    if (n > size()) {
        if (!exhaustive_) throw Error(ErrorCode::BeyondSeries, "cutoff exceeds series length");
        return static_cast<double>(prefix_.back());
    }
    return static_cast<double>(prefix_[n]);
}

double sigma(const SingularSeries& s, double lambda) {
    if (lambda <= 0.0) return 0.0;
    if (s.size() == 0) return 0.0;
    if (lambda <= 1.0) return lambda * s.values()[0];
    const long n = static_cast<long>(std::floor(lambda));
    const double t = lambda - static_cast<double>(n);
    if (t == 0.0) return s.cutoff_sum(n);
    return (1.0 - t) * s.cutoff_sum(n) + t * s.cutoff_sum(n + 1);
}

std::vector<double> tau_many(const SingularSeries& s, const std::vector<double>& lambdas) {
    using boost::math::quadrature::gauss;
    const double e = std::exp(1.0);
    std::vector<double> out;
    long double acc = 0.0L;
    double pos = e;
    auto integrand = [&](double u) { return sigma(s, u) / (u * std::log(u)); };
    auto integrate = [&](double a, double b) {
        // sigma is linear between integers, so split there and use fixed-order Gauss-Legendre.
        while (a < b) {
            const double next = std::min(b, std::floor(a) + 1.0);
            if (next > a) acc += gauss<double, 7>::integrate(integrand, a, next);
            a = next;
        }
    };
    for (double lam : lambdas) {
        if (!(lam > e)) throw Error(ErrorCode::ConfigInvalid, "tau needs lambda > e");
        if (lam < pos) throw Error(ErrorCode::ConfigInvalid, "lambdas must be ascending");
        integrate(pos, lam);
        pos = lam;
        out.push_back(static_cast<double>(acc) / std::log(lam));
    }
    return out;
}

double tau(const SingularSeries& s, double lambda) { return tau_many(s, {lambda})[0]; }

namespace {

struct Fit {
    double slope, intercept, stderr_;
};

Fit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t m = x.size();
    double mx = 0, my = 0;
    for (size_t k = 0; k < m; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (size_t k = 0; k < m; ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    Fit f{sxy / sxx, 0.0, 0.0};
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (size_t k = 0; k < m; ++k) {
        const double r = y[k] - f.intercept - f.slope * x[k];
        ssr += r * r;
    }
    f.stderr_ = m > 2 ? std::sqrt(ssr / (m - 2) / sxx) : 0.0;
    return f;
}

}  // namespace

DixmierEstimate log_regression(const SingularSeries& s) {
    const long nmax = s.size();
    if (nmax < 16) throw Error(ErrorCode::BeyondSeries, "series too short for regression");
    const long lo = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(nmax))));
    std::vector<long> ns;
    const int samples = 400;
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        const long n = std::lround(std::exp(std::log(double(lo)) * (1 - t) + std::log(double(nmax)) * t));
        if (ns.empty() || n > ns.back()) ns.push_back(n);
    }
    std::vector<double> x, y;
    for (long n : ns) {
        x.push_back(std::log(static_cast<double>(n)));
        y.push_back(s.cutoff_sum(n));
    }
    Fit f = ols(x, y);
    DixmierEstimate est;
    est.slope = f.slope;
    est.intercept = f.intercept;
    est.stderr_ = f.stderr_;
    est.window = {lo, nmax};
    const size_t half = x.size() / 2;
    est.lower_half_slope = ols({x.begin(), x.begin() + half}, {y.begin(), y.begin() + half}).slope;
    est.upper_half_slope = ols({x.begin() + half, x.end()}, {y.begin() + half, y.end()}).slope;

    std::vector<double> lams;
    const double e = std::exp(1.0);
    const double a = std::log(std::max<double>(lo, e + 1.0)), b = std::log(double(nmax));
    for (int k = 0; k < 50; ++k) lams.push_back(std::exp(a + (b - a) * k / 49.0));
    lams.back() = static_cast<double>(nmax);
    std::vector<double> taus = tau_many(s, lams);
    double tmin = taus[0], tmax = taus[0];
    for (size_t k = 0; k < lams.size(); ++k) {
        est.tau_curve.emplace_back(lams[k], taus[k]);
        tmin = std::min(tmin, taus[k]);
        tmax = std::max(tmax, taus[k]);
    }
    est.tau_oscillation = tmax - tmin;
    est.tau_final = taus.back();
    return est;
}

DixmierEstimate nc_integral(const SingularSeries& s) {
    if (s.size() < 1000) throw Error(ErrorCode::BeyondSeries, "nc_integral needs at least 1000 terms");
    DixmierEstimate est = log_regression(s);
    const double scale = std::max(1e-300, s.cutoff_sum(s.size()));
    if (est.slope <= 3.0 * est.stderr_ || est.slope <= 1e-12 * scale ||
        est.upper_half_slope < 0.5 * est.lower_half_slope)
        throw Error(ErrorCode::NotLogDivergent, "cutoff sums do not grow like log N");
    return est;
}

SingularSeries lift_series(const SingularSeries& s, int group_order) {
    if (group_order < 1) throw Error(ErrorCode::ConfigInvalid, "group order must be positive");
    std::vector<double> v;
    v.reserve(s.values().size() * group_order);
    for (double x : s.values())
        for (int k = 0; k < group_order; ++k) v.push_back(x);
    return SingularSeries(std::move(v), s.provenance() + "-lift", s.exhaustive());
}

SingularSeries series_of_matrix(const Mat& m) {
    const RVec sv = singular_values(m);
    std::vector<double> v(sv.data(), sv.data() + sv.size());
    return SingularSeries(std::move(v), "matrix", true);
}

SingularSeries circle_series(long n_max) {
    std::vector<double> v;
    v.reserve(n_max);
    for (long k = 1; static_cast<long>(v.size()) < n_max; ++k) {
        v.push_back(1.0 / k);
        if (static_cast<long>(v.size()) < n_max) v.push_back(1.0 / k);
    }
    return SingularSeries(std::move(v), "circle");
}

SingularSeries torus_series(cplx tau_param, int cutoff, int power) {
    if (tau_param.imag() == 0.0) throw Error(ErrorCode::DegenerateTau, "Im tau must be nonzero");
    const double im = std::abs(tau_param.imag());
    const double radius = cutoff * im / std::max(1.0, std::abs(tau_param));
    std::vector<double> v;
    for (int r = -cutoff; r <= cutoff; ++r)
        for (int s = -cutoff; s <= cutoff; ++s) {
            if (r == 0 && s == 0) continue;
            const double z = std::abs(cplx(r, 0.0) + tau_param * static_cast<double>(s));
            if (z >= radius) continue;
            const double mu = std::pow(2.0 * kPi * z, -power);
            v.push_back(mu);
            v.push_back(mu);
        }
    std::sort(v.begin(), v.end(), std::greater<>());
    return SingularSeries(std::move(v), "torus");
}

SingularSeries harmonic_series(double c, long n_max) {
    std::vector<double> v(n_max);
    for (long k = 0; k < n_max; ++k) v[k] = c / (k + 1);
    return SingularSeries(std::move(v), "harmonic");
}

CommutativeReport commutative_check(int m, cplx tau_param, long n_max, int cutoff) {
    CommutativeReport r;
    r.m = m;
    if (m == 0) {
        r.constant = kPi;
        r.estimate = nc_integral(circle_series(n_max)).slope;
        r.expected = 2.0 * kPi;
    } else if (m == 1) {
        r.constant = 2.0 * kPi;
        r.estimate = nc_integral(torus_series(tau_param, cutoff)).slope;
        r.expected = 1.0 / std::abs(tau_param.imag());
    } else {
        throw Error(ErrorCode::ConfigInvalid, "commutative_check supports m = 0 or 1");
    }
    r.value = r.constant * r.estimate;
    r.rel_error = std::abs(r.value - r.expected) / r.expected;
    return r;
}

}  // namespace nccover
