#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nccover/linalg.hpp"

namespace nccover {

// Nonincreasing singular values with cached cutoff sums.
class SingularSeries {
public:
    SingularSeries() = default;
    // exhaustive: the series is the full spectrum of a finite operator, so values beyond the end are 0.
    SingularSeries(std::vector<double> values, std::string provenance, bool exhaustive = false);

    const std::vector<double>& values() const { return values_; }
    const std::string& provenance() const { return provenance_; }
    bool exhaustive() const { return exhaustive_; }
    int size() const { return static_cast<int>(values_.size()); }
    // sigma_n for integer n.
    double cutoff_sum(long n) const;

private:
    std::vector<double> values_;
    std::vector<long double> prefix_;
    std::string provenance_;
    bool exhaustive_ = false;
};

struct DixmierEstimate {
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
    std::pair<long, long> window{0, 0};
    std::vector<std::pair<double, double>> tau_curve;  // (lambda, tau_lambda)
    double tau_oscillation = 0.0;
    double tau_final = 0.0;
    double lower_half_slope = 0.0;
    double upper_half_slope = 0.0;
};

double sigma(const SingularSeries& s, double lambda);
double tau(const SingularSeries& s, double lambda);
// tau at several lambdas (ascending) sharing one pass of the quadrature.
std::vector<double> tau_many(const SingularSeries& s, const std::vector<double>& lambdas);

// Regression of sigma_N on log N over [sqrt(N_max), N_max] without verdict.
DixmierEstimate log_regression(const SingularSeries& s);
DixmierEstimate nc_integral(const SingularSeries& s);

SingularSeries lift_series(const SingularSeries& s, int group_order);
SingularSeries series_of_matrix(const Mat& m);
SingularSeries circle_series(long n_max);
// Nonzero eigenvalues 1/|lambda|^power of the torus Dirac operator inside the disk inscribed in
// the cutoff parallelogram, each listed twice (both chiral blocks).
SingularSeries torus_series(cplx tau_param, int cutoff, int power = 2);
SingularSeries harmonic_series(double c, long n_max);

struct CommutativeReport {
    int m = 0;
    double constant = 0.0;
    double estimate = 0.0;   // regression estimate of the integral
    double value = 0.0;      // constant * estimate
    double expected = 0.0;
    double rel_error = 0.0;
};

// m = 0: circle, constant pi, expected 2 pi. m = 1: torus with parameter tau, constant 2 pi,
// expected 1 / Im tau.
CommutativeReport commutative_check(int m, cplx tau_param = cplx(0.0, 1.0), long n_max = 1000000,
                                    int cutoff = 400);

}  // namespace nccover
