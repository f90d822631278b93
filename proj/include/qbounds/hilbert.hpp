#pragma once

// Truncated Fock-space linear algebra. Units: hbar = m = omega = 1.
//
// The Fock basis keeps levels 0 .. dim-1. Operator products are formed as
// products of the truncated matrices, so entries near the top of the basis
// carry truncation artifacts; check_convergence() is the guard against them.

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "qbounds/errors.hpp"

namespace qbounds {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double default_tail_tol = 1e-10;

class FockOperator {
  public:
    FockOperator() = default;
    explicit FockOperator(Matrix entries);

    static FockOperator identity(int dim);
    static FockOperator zero(int dim);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const Matrix &entries() const noexcept { return entries_; }
    cplx operator()(int row, int col) const { return entries_(row, col); }

    FockOperator adjoint() const;
    FockOperator hermitian_part() const;      // (A + A^dag)/2
    FockOperator anti_hermitian_part() const; // (A - A^dag)/2
    // Largest |A_ij - conj(A_ji)|.
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-10) const { return hermiticity_defect() <= tol; }

    FockOperator &operator+=(const FockOperator &rhs);
    FockOperator &operator-=(const FockOperator &rhs);
    FockOperator &operator*=(cplx s);

    friend FockOperator operator+(FockOperator lhs, const FockOperator &rhs) { return lhs += rhs; }
    friend FockOperator operator-(FockOperator lhs, const FockOperator &rhs) { return lhs -= rhs; }
    friend FockOperator operator*(FockOperator lhs, cplx s) { return lhs *= s; }
    friend FockOperator operator*(cplx s, FockOperator rhs) { return rhs *= s; }
    friend FockOperator operator*(const FockOperator &lhs, const FockOperator &rhs);
    friend Vector operator*(const FockOperator &op, const Vector &v);

    FockOperator pow(int exponent) const;

  private:
    Matrix entries_;
};

class StateVector {
  public:
    StateVector() = default;
    // norm_deficit is the probability mass known to be missing from the
    // truncated expansion (recorded before any renormalization).
    explicit StateVector(Vector amplitudes, double norm_deficit = 0.0);

    int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
    const Vector &amplitudes() const noexcept { return amplitudes_; }
    double norm_deficit() const noexcept { return norm_deficit_; }
    double squared_norm() const { return amplitudes_.squaredNorm(); }
    bool is_normalized(double tol = 1e-12) const { return std::abs(squared_norm() - 1.0) <= tol; }
    StateVector normalized() const;

    static StateVector basis(int dim, int level);

  private:
    Vector amplitudes_;
    double norm_deficit_ = 0.0;
};

class DensityMatrix {
  public:
    // Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalues >= -1e-10.
    explicit DensityMatrix(Matrix entries);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const Matrix &entries() const noexcept { return entries_; }
    cplx trace_with(const FockOperator &op) const { return (entries_ * op.entries()).trace(); }

  private:
    Matrix entries_;
};

struct SpectralDecomposition {
    RealVector eigenvalues; // ascending
    Matrix eigenvectors;    // orthonormal columns
};

struct LadderOperators {
    FockOperator a;
    FockOperator a_dagger;
};

LadderOperators ladder_ops(int dim);
FockOperator number_op(int dim);
// x = (a + a^dag)/sqrt2, p = i(a^dag - a)/sqrt2.
FockOperator position_op(int dim);
FockOperator momentum_op(int dim);

// Probability that a Poisson variable of the given mean is >= dim.
double poisson_tail(double mean, int dim);

// Coherent state |beta> in the truncated basis. Throws TruncationError when the
// Poisson tail beyond dim exceeds tail_tol. The returned vector is renormalized;
// norm_deficit holds the discarded tail.
StateVector coherent_state(cplx beta, int dim, double tail_tol = default_tail_tol);
inline StateVector coherent_state(double alpha, int dim, double tail_tol = default_tail_tol) {
    return coherent_state(cplx{alpha, 0.0}, dim, tail_tol);
}

// <state|op|state>, no normalization and no real-part extraction.
cplx expectation(const FockOperator &op, const StateVector &state);
cplx expectation(const FockOperator &op, const Vector &state);

SpectralDecomposition hermitian_eigendecompose(const FockOperator &op, double herm_tol = 1e-10);
SpectralDecomposition hermitian_eigendecompose(const Matrix &m, double herm_tol = 1e-10);

// max |B^dag B - I|
double orthonormality_defect(const Matrix &basis);

DensityMatrix density_from_probs(const RealVector &probs, const Matrix &basis);

// Completes a normalized vector to a unitary whose first column is the vector itself.
Matrix complete_basis(const Vector &first);

struct ConvergenceCheck {
    cplx at_dim;
    cplx at_double_dim;
    double delta = 0.0;
    double allowed = 0.0;
    bool converged() const { return delta <= allowed; }
};

// Evaluates f at dim and 2*dim; allowed deviation is 10 * tail_tol * max(1, |f(dim)|).
ConvergenceCheck check_convergence(const std::function<cplx(int)> &f, int dim,
                                   double tail_tol = default_tail_tol);
// Same, throwing TruncationError on failure.
cplx require_convergence(const std::function<cplx(int)> &f, int dim,
                         double tail_tol = default_tail_tol);

} // namespace qbounds
