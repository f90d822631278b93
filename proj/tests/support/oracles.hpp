#pragma once

// Reference formulas computed without the library's spectral code paths.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "qbounds/hilbert.hpp"

namespace qbounds::testing {

// Raw moments of a Gaussian with mean m and variance s2.
inline double gaussian_moment(int k, double m, double s2) {
    switch (k) {
    case 0:
        return 1.0;
    case 1:
        return m;
    case 2:
        return m * m + s2;
    case 3:
        return m * m * m + 3.0 * m * s2;
    case 4:
        return m * m * m * m + 6.0 * m * m * s2 + 3.0 * s2 * s2;
    default:
        return std::nan("");
    }
}

// <x^k> on the coherent state alpha e^{-it}: mean sqrt2 alpha cos t, variance 1/2.
inline double coherent_x_moment(int k, double t, double alpha) {
    return gaussian_moment(k, std::sqrt(2.0) * alpha * std::cos(t), 0.5);
}

// Fisher information of rho along d rho / d theta = -i [G, rho] / hbar, from
// the symmetric logarithmic derivative solving rho L + L rho = 2 d rho.
// rho must be full rank.
inline double sld_fisher(const Matrix &rho, const Matrix &G, double hbar = 1.0) {
    const auto d = rho.rows();
    const Matrix drho = cplx{0.0, -1.0 / hbar} * (G * rho - rho * G);
    const Matrix id = Matrix::Identity(d, d);
    // vec(rho L + L rho) = (I (x) rho + rho^T (x) I) vec(L), column-major vec
    Matrix sys = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            sys.block(j * d, i * d, d, d) += id(j, i) * rho;
            sys.block(j * d, i * d, d, d) += rho(i, j) * id;
        }
    Vector rhs = Eigen::Map<const Vector>((2.0 * drho).eval().data(), d * d);
    Vector vl = sys.partialPivLu().solve(rhs);
    Matrix L = Eigen::Map<Matrix>(vl.data(), d, d);
    return (rho * L * L).trace().real();
}

} // namespace qbounds::testing
