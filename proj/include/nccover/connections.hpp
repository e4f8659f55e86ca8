#pragma once

#include <utility>
#include <vector>

#include "nccover/frames.hpp"
#include "nccover/linalg.hpp"

namespace nccover {

// Symbolic universal 1-form sum a_k d(b_k); b_k is stored with its identity component removed.
struct OneForm {
    std::vector<std::pair<Mat, Mat>> terms;

    bool is_zero() const { return terms.empty(); }
    OneForm operator+(const OneForm& o) const;
    OneForm operator-(const OneForm& o) const;
    OneForm scaled(cplx c) const;
    // c * omega
    OneForm left_mult(const Mat& c) const;
    // omega * c, rewritten with a db c = a d(bc) - ab dc
    OneForm right_mult(const Mat& c) const;
};

OneForm d(const Mat& a);
Mat represent_form(const OneForm& w, const Mat& dirac, const Rep& rep);

// Projective module p A^k, p a k x k array of algebra elements.
struct FramedModule {
    int rank = 1;                         // k
    std::vector<std::vector<Mat>> p;      // p[j][l]
    double projection_defect() const;
    std::vector<Mat> project(const std::vector<Mat>& x) const;
};

FramedModule free_module(int rank, int dim);
std::vector<OneForm> grassmann_connection(const FramedModule& m, const std::vector<Mat>& xi);
// Represented Leibniz defect of nabla(xi a) - nabla(xi) a - xi (x) da.
double leibniz_residual(const FramedModule& m, const std::vector<Mat>& xi, const Mat& a,
                        const Mat& dirac, const Rep& rep);

struct LiftedDirac {
    Mat projection;     // p on H^J, J = G x I
    Mat range_basis;    // orthonormal basis of range(p)
    Mat full;           // p (1 (x) D) p on H^J
    Mat restricted;     // on range(p)
    std::vector<double> spectrum;  // ascending
    double equivariance = 0.0;
    double max_commutator = 0.0;   // max_i ||[D, rho(e_i)]||
};

LiftedDirac dirac_lift(const GaloisFrame& frame, const Mat& dirac, const Rep& rep, int rep_dim);

// Coordinates of x (x) h in H^J.
Vec module_coordinates(const GaloisFrame& frame, const Rep& rep, const Mat& x, const Vec& h);
// ||chi_U (D~(x (x) h) - x (x) Dh)|| in coordinates, normalised by ||D|| ||x (x) h||.
double locality_residual(const GaloisFrame& frame, const Rep& rep, const Mat& dirac, const Mat& x,
                         const Vec& h, const Mat& indicator);

// Sites k of a commutative base where every coordinate function rho(<y_j, x>) is constant on the
// cyclic stencil k - width .. k + width.
std::vector<int> flat_sites(const GaloisFrame& frame, const Rep& rep, const Mat& x, int width = 1);

}  // namespace nccover
