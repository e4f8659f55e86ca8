#pragma once

#include <vector>

#include "nccover/linalg.hpp"

namespace nccover {

struct CircleFunction {
    int n = 0;
    std::vector<cplx> samples;  // at phi_k = -pi + 2 pi k / n

    double angle(int k) const { return -kPi + 2.0 * kPi * k / n; }
};

struct LineFunction {
    int window = 0;  // support inside (-(2W+1)pi, (2W+1)pi)
    int n = 0;       // points per period
    std::vector<cplx> samples;

    int size() const { return static_cast<int>(samples.size()); }
    double position(int j) const { return -(2 * window + 1) * kPi + 2.0 * kPi * j / n; }
    double valid_half_width() const { return (2 * window - 1) * kPi; }
};

struct BumpPair {
    CircleFunction b1, b2;
    const CircleFunction& operator[](int i) const { return i == 0 ? b1 : b2; }
};

// Half-width in angle of the overlap band |sin phi| < 0.1 around 0 and pi.
double bump_overlap_angle();
// Closed-form bump b_i (i = 0, 1) at any angle.
double bump_value(int i, double phi);
// Lift of b_i to sheet j of the n-fold cover psi -> n psi.
double cover_bump_value(int i, int sheet, int n, double psi);

BumpPair make_bumps(int n);
double max_fd_derivative(const CircleFunction& f);
double partition_residual(const BumpPair& b);
double cover_partition_residual(int n_sheets, int grid);

LineFunction lift_to_line(const CircleFunction& b, int component_offset, int window);
double check_line_partition(const BumpPair& pair, int window);

std::vector<cplx> fourier_of(const CircleFunction& f, int cutoff);
std::vector<cplx> fourier_reconstruct(const std::vector<cplx>& coeffs, int n);

}  // namespace nccover
