#pragma once

#include "nccover/linalg.hpp"

namespace test {

using nccover::cplx;
using nccover::Mat;

inline Mat diag(std::initializer_list<cplx> d) {
    Mat m = Mat::Zero(d.size(), d.size());
    int k = 0;
    for (cplx x : d) {
        m(k, k) = x;
        ++k;
    }
    return m;
}

inline Mat mat2(cplx a, cplx b, cplx c, cplx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline double dist(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace test
