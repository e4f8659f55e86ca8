#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nccover/dixmier.hpp"
#include "nccover/linalg.hpp"

namespace nccover {

// Finite Fourier sum sum a_rs u^r v^s, |r|,|s| <= R, normal ordered (u powers left of v powers).
class TorusElement {
public:
    TorusElement() = default;
    TorusElement(double theta, int cutoff);

    static TorusElement unit(double theta, int cutoff = 0);
    static TorusElement monomial(double theta, int r, int s, cplx c = 1.0);
    static TorusElement random(double theta, int cutoff, std::mt19937_64& rng);

    double theta() const { return theta_; }
    int cutoff() const { return cutoff_; }
    cplx coeff(int r, int s) const;
    void set(int r, int s, cplx c);
    const std::vector<cplx>& coeffs() const { return a_; }

    TorusElement adjoint() const;
    TorusElement operator+(const TorusElement& o) const;
    TorusElement operator-(const TorusElement& o) const;
    TorusElement operator*(cplx c) const;
    TorusElement resized(int cutoff) const;
    double max_abs() const;
    double boundary_shell_max() const;

private:
    double theta_ = 0.0;
    int cutoff_ = 0;
    std::vector<cplx> a_;
    int idx(int r, int s) const { return (r + cutoff_) * (2 * cutoff_ + 1) + (s + cutoff_); }
};

TorusElement normal_product(const TorusElement& x, const TorusElement& y);
struct TruncatedProduct {
    TorusElement value;
    double discarded = 0.0;  // sum of |dropped coefficients|
};
TruncatedProduct normal_product_truncated(const TorusElement& x, const TorusElement& y, int cutoff);

cplx tau0(const TorusElement& x);
std::pair<TorusElement, TorusElement> derivations(const TorusElement& x);

struct DiracSpectrum {
    cplx tau;
    int cutoff = 0;
    std::vector<double> eigenvalues;  // ascending
};
DiracSpectrum dirac_spectrum(cplx tau_param, int cutoff);

struct ClockShiftRep {
    int q = 1, p = 0;
    Mat U, V;
    cplx omega() const;
};
ClockShiftRep clock_shift(int q, int p);
Mat evaluate(const TorusElement& x, const ClockShiftRep& rep);

// Homogeneous components indexed by bidegree.
using Bidegree = std::pair<int, int>;
using BigradedOperator = std::map<Bidegree, Mat>;

BigradedOperator star_product(const BigradedOperator& x, const BigradedOperator& y, double theta);
BigradedOperator bigraded_sum(const BigradedOperator& x, const BigradedOperator& y);
// Largest Frobenius norm of a componentwise difference; bounds the operator norm from above.
double bigraded_distance(const BigradedOperator& x, const BigradedOperator& y);

// Truncated mode space l2(Z^2), |m1|,|m2| <= modes; basis index of (m1, m2).
struct ModeSpace {
    int modes = 0;
    int dim() const { return (2 * modes + 1) * (2 * modes + 1); }
    int index(int m1, int m2) const { return (m1 + modes) * (2 * modes + 1) + (m2 + modes); }
    std::pair<int, int> mode(int k) const {
        return {k / (2 * modes + 1) - modes, k % (2 * modes + 1) - modes};
    }
};
// Components of a matrix on the mode space by the degree shift they carry.
BigradedOperator homogeneous_parts(const Mat& m, const ModeSpace& space);
Mat grading_operator(const ModeSpace& space, int axis);
// l(x) = sum_n x_n lambda^{n_2 p_1}.
Mat left_twist(const BigradedOperator& x, const ModeSpace& space, double theta);

struct DimensionDiagnostic {
    int power = 2;
    double slope = 0.0;
    double stderr_ = 0.0;
    double ratio_growth = 0.0;  // sigma_N / log N at N_max divided by the same at sqrt(N_max)
};
DimensionDiagnostic dimension_diagnostic(const DiracSpectrum& spec, int power);

}  // namespace nccover
