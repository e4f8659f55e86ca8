#include "nccover/circle.hpp"

#include <algorithm>
#include <cmath>

namespace nccover {

namespace {

constexpr double kBand = 0.1;

// Ramp angle chi in [0, pi/2]; 0 where sin phi >= 0.1, pi/2 where sin phi <= -0.1.
double ramp_t(double phi) {
    const double t = (kBand - std::sin(phi)) / (2.0 * kBand);
    return std::clamp(t, 0.0, 1.0);
}

double smoothstep5(double t) { return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t); }

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < -0.5 * period) r += period;
    if (r >= 0.5 * period) r -= period;
    return r;
}

}  // namespace

double bump_overlap_angle() { return std::asin(kBand); }

double bump_value(int i, double phi) {
    const double t = ramp_t(phi);
    if (i == 0) {
        if (t >= 1.0) return 0.0;
        if (t <= 0.0) return 1.0;
        return std::cos(0.5 * kPi * smoothstep5(t));
    }
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::sin(0.5 * kPi * smoothstep5(t));
}

double cover_bump_value(int i, int sheet, int n, double psi) {
    const double center = i == 0 ? 0.5 * kPi : -0.5 * kPi;
    const double x = psi - 2.0 * kPi * sheet / n;
    const double y = wrap(n * x - center, 2.0 * kPi * n);
    if (std::abs(y) >= kPi) return 0.0;
    return bump_value(i, y + center);
}

BumpPair make_bumps(int n) {
    if (n < 16) throw Error(ErrorCode::GridTooCoarse, "bump grid needs at least 16 points");
    BumpPair p;
    p.b1.n = p.b2.n = n;
    for (int k = 0; k < n; ++k) {
        const double phi = p.b1.angle(k);
        p.b1.samples.emplace_back(bump_value(0, phi), 0.0);
        p.b2.samples.emplace_back(bump_value(1, phi), 0.0);
    }
    return p;
}

double max_fd_derivative(const CircleFunction& f) {
    const double h = 2.0 * kPi / f.n;
    double m = 0.0;
    for (int k = 0; k < f.n; ++k)
        m = std::max(m, std::abs(f.samples[(k + 1) % f.n] - f.samples[k]) / h);
    return m;
}

double partition_residual(const BumpPair& b) {
    double r = 0.0;
    for (int k = 0; k < b.b1.n; ++k)
        r = std::max(r, std::abs(std::norm(b.b1.samples[k]) + std::norm(b.b2.samples[k]) - 1.0));
    return r;
}

double cover_partition_residual(int n_sheets, int grid) {
    double r = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double psi = -kPi + 2.0 * kPi * k / grid;
        double s = 0.0;
        for (int j = 0; j < n_sheets; ++j)
            for (int i = 0; i < 2; ++i) s += std::pow(cover_bump_value(i, j, n_sheets, psi), 2);
        r = std::max(r, std::abs(s - 1.0));
    }
    return r;
}

LineFunction lift_to_line(const CircleFunction& b, int component_offset, int window) {
    const int n = b.n;
    // Locate the longest run of zero samples; the support is its complement.
    int best_len = 0, best_end = -1;
    for (int start = 0; start < n; ++start) {
        if (b.samples[start] != cplx(0.0) || b.samples[(start + n - 1) % n] == cplx(0.0)) continue;
        int len = 0;
        while (len < n && b.samples[(start + len) % n] == cplx(0.0)) ++len;
        if (len > best_len) {
            best_len = len;
            best_end = start + len;
        }
    }
    if (best_len == 0)
        throw Error(ErrorCode::SupportWraps, "support covers the whole circle");
    LineFunction out;
    out.window = window;
    out.n = n;
    out.samples.assign(static_cast<size_t>((2 * window + 1) * n + 1), cplx(0.0));
    // Support indices first..first+len-1 (unwrapped); pick the representative centred in [-pi, pi).
    const int first = best_end % n;
    const int len = n - best_len;
    const double mid = b.angle(first) + kPi * (len - 1) / n;
    const int shift = mid >= kPi ? -1 : 0;
    for (int m = 0; m < len; ++m) {
        const int unwrapped = first + m;
        const int k = unwrapped % n;
        const int w = unwrapped / n + shift;
        const long j = static_cast<long>(k) + static_cast<long>(n) * (w + component_offset + window);
        if (j <= 0 || j >= out.size() - 1)
            throw Error(ErrorCode::WindowTooSmall, "lifted support leaves the window");
        out.samples[j] = b.samples[k];
    }
    return out;
}

double check_line_partition(const BumpPair& pair, int window) {
    if (window < 1) throw Error(ErrorCode::WindowTooSmall, "window must be at least 1");
    const int n = pair.b1.n;
    const int m = (2 * window + 1) * n + 1;
    std::vector<double> sum(m, 0.0);
    for (int i = 0; i < 2; ++i) {
        for (int c = -window; c <= window; ++c) {
            try {
                LineFunction z = lift_to_line(pair[i], c, window);
                for (int j = 0; j < m; ++j) sum[j] += std::norm(z.samples[j]);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::WindowTooSmall) throw;
            }
        }
    }
    LineFunction grid;
    grid.window = window;
    grid.n = n;
    double r = 0.0;
    for (int j = 0; j < m; ++j)
        if (std::abs(grid.position(j)) <= grid.valid_half_width() + 1e-12)
            r = std::max(r, std::abs(sum[j] - 1.0));
    return r;
}

std::vector<cplx> fourier_of(const CircleFunction& f, int cutoff) {
    std::vector<cplx> a;
    for (int k = -cutoff; k <= cutoff; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < f.n; ++j) s += f.samples[j] * std::exp(-kI * (k * f.angle(j)));
        a.push_back(s / static_cast<double>(f.n));
    }
    return a;
}

std::vector<cplx> fourier_reconstruct(const std::vector<cplx>& coeffs, int n) {
    const int cutoff = static_cast<int>(coeffs.size() / 2);
    std::vector<cplx> out(n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double phi = -kPi + 2.0 * kPi * j / n;
        for (int k = -cutoff; k <= cutoff; ++k) out[j] += coeffs[k + cutoff] * std::exp(kI * (k * phi));
    }
    return out;
}

}  // namespace nccover
