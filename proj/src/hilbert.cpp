#include "qbounds/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbounds {

const char *to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::TruncationInsufficient: return "truncation-insufficient";
    case ErrorCode::NotHermitian: return "not-hermitian";
    case ErrorCode::NotOrthonormal: return "not-orthonormal";
    case ErrorCode::InvalidProbabilities: return "invalid-probabilities";
    case ErrorCode::Degenerate: return "degenerate-spectrum";
    case ErrorCode::InvalidEta: return "invalid-eta";
    case ErrorCode::UndefinedBound: return "undefined-bound";
    case ErrorCode::EnergyConvention: return "energy-convention";
    case ErrorCode::NoInformation: return "no-information";
    case ErrorCode::NotNormalized: return "not-normalized";
    }
    return "unknown";
}

namespace {

void require_square(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream msg;
        msg << "operator must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorCode::InvalidDimension, msg.str());
    }
}

void require_same_dim(int lhs, int rhs, const char *where) {
    if (lhs != rhs) {
        std::ostringstream msg;
        msg << where << ": dimension mismatch (" << lhs << " vs " << rhs << ")";
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
}

void require_ladder_dim(int dim) {
    if (dim < 2)
        throw Error(ErrorCode::InvalidDimension, "truncation dimension must be >= 2, got " + std::to_string(dim));
}

double hermiticity_defect_of(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(Matrix entries) : entries_(std::move(entries)) { require_square(entries_); }

FockOperator FockOperator::identity(int dim) {
    require_square(Matrix(dim, dim));
    return FockOperator(Matrix::Identity(dim, dim));
}

FockOperator FockOperator::zero(int dim) {
    require_square(Matrix(dim, dim));
    return FockOperator(Matrix::Zero(dim, dim));
}

FockOperator FockOperator::adjoint() const { return FockOperator(entries_.adjoint()); }

FockOperator FockOperator::hermitian_part() const { return FockOperator(0.5 * (entries_ + entries_.adjoint())); }

FockOperator FockOperator::anti_hermitian_part() const {
    return FockOperator(0.5 * (entries_ - entries_.adjoint()));
}

double FockOperator::hermiticity_defect() const { return hermiticity_defect_of(entries_); }

FockOperator &FockOperator::operator+=(const FockOperator &rhs) {
    require_same_dim(dim(), rhs.dim(), "operator sum");
    entries_ += rhs.entries_;
    return *this;
}

FockOperator &FockOperator::operator-=(const FockOperator &rhs) {
    require_same_dim(dim(), rhs.dim(), "operator difference");
    entries_ -= rhs.entries_;
    return *this;
}

FockOperator &FockOperator::operator*=(cplx s) {
    entries_ *= s;
    return *this;
}

FockOperator operator*(const FockOperator &lhs, const FockOperator &rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "operator product");
    return FockOperator(lhs.entries_ * rhs.entries_);
}

Vector operator*(const FockOperator &op, const Vector &v) {
    require_same_dim(op.dim(), static_cast<int>(v.size()), "operator-vector product");
    return op.entries_ * v;
}

FockOperator FockOperator::pow(int exponent) const {
    if (exponent < 0)
        throw Error(ErrorCode::InvalidDimension, "negative operator power");
    Matrix result = Matrix::Identity(dim(), dim());
    for (int k = 0; k < exponent; ++k)
        result = result * entries_;
    return FockOperator(std::move(result));
}

// ---------------------------------------------------------------------------
// StateVector / DensityMatrix

StateVector::StateVector(Vector amplitudes, double norm_deficit)
    : amplitudes_(std::move(amplitudes)), norm_deficit_(norm_deficit) {
    if (amplitudes_.size() < 1)
        throw Error(ErrorCode::InvalidDimension, "state vector must be non-empty");
    if (!(norm_deficit_ >= 0.0))
        throw Error(ErrorCode::NotNormalized, "norm deficit must be non-negative");
    double n2 = amplitudes_.squaredNorm();
    if (!(n2 > 0.0))
        throw Error(ErrorCode::NotNormalized, "state vector has zero norm");
}

StateVector StateVector::normalized() const {
    return StateVector(amplitudes_ / std::sqrt(squared_norm()), norm_deficit_);
}

StateVector StateVector::basis(int dim, int level) {
    if (dim < 1 || level < 0 || level >= dim)
        throw Error(ErrorCode::InvalidDimension, "basis level outside truncation");
    Vector v = Vector::Zero(dim);
    v(level) = 1.0;
    return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    require_square(entries_);
    double herm = hermiticity_defect_of(entries_);
    if (herm > 1e-12) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (max asymmetry " << herm << ")";
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
    double tr = entries_.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "density matrix trace is " << tr << ", expected 1";
        throw Error(ErrorCode::InvalidProbabilities, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << es.eigenvalues().minCoeff();
        throw Error(ErrorCode::InvalidProbabilities, msg.str());
    }
}

// ---------------------------------------------------------------------------
// Standard operators

LadderOperators ladder_ops(int dim) {
    require_ladder_dim(dim);
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    FockOperator lowering(std::move(a));
    return {lowering, lowering.adjoint()};
}

FockOperator number_op(int dim) {
    require_ladder_dim(dim);
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k)
        n(k, k) = static_cast<double>(k);
    return FockOperator(std::move(n));
}

FockOperator position_op(int dim) {
    auto [a, ad] = ladder_ops(dim);
    return (a + ad) * cplx{M_SQRT1_2, 0.0};
}

FockOperator momentum_op(int dim) {
    auto [a, ad] = ladder_ops(dim);
    return (ad - a) * cplx{0.0, M_SQRT1_2};
}

double poisson_tail(double mean, int dim) {
    if (dim <= 0)
        return 1.0;
    if (mean <= 0.0)
        return 0.0;
    const double log_mean = std::log(mean);
    double sum = 0.0;
    for (int n = dim;; ++n) {
        double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
        sum += term;
        if (n > mean && term <= 1e-20 * sum)
            break;
        if (term == 0.0 && n > mean)
            break;
    }
    return sum;
}

StateVector coherent_state(cplx beta, int dim, double tail_tol) {
    require_ladder_dim(dim);
    const double mean = std::norm(beta);
    const double tail = poisson_tail(mean, dim);
    if (tail > tail_tol) {
        std::ostringstream msg;
        msg << "coherent state |beta|=" << std::abs(beta) << " needs more than " << dim
            << " Fock levels: tail mass " << tail << " exceeds tolerance " << tail_tol;
        throw TruncationError(msg.str(), tail);
    }
    Vector c(dim);
    c(0) = std::exp(-0.5 * mean);
    for (int n = 1; n < dim; ++n)
        c(n) = c(n - 1) * beta / std::sqrt(static_cast<double>(n));
    c /= c.norm();
    return StateVector(std::move(c), tail);
}

cplx expectation(const FockOperator &op, const Vector &state) {
    require_same_dim(op.dim(), static_cast<int>(state.size()), "expectation");
    return state.dot(op.entries() * state);
}

cplx expectation(const FockOperator &op, const StateVector &state) { return expectation(op, state.amplitudes()); }

SpectralDecomposition hermitian_eigendecompose(const Matrix &m, double herm_tol) {
    require_square(m);
    double herm = hermiticity_defect_of(m);
    if (herm > herm_tol) {
        std::ostringstream msg;
        msg << "eigendecomposition requires a Hermitian operator (max asymmetry " << herm << ")";
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    return {es.eigenvalues(), es.eigenvectors()};
}

SpectralDecomposition hermitian_eigendecompose(const FockOperator &op, double herm_tol) {
    return hermitian_eigendecompose(op.entries(), herm_tol);
}

double orthonormality_defect(const Matrix &basis) {
    if (basis.cols() == 0)
        return 0.0;
    return (basis.adjoint() * basis - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

DensityMatrix density_from_probs(const RealVector &probs, const Matrix &basis) {
    require_square(basis);
    require_same_dim(static_cast<int>(probs.size()), static_cast<int>(basis.cols()), "density_from_probs");
    if (probs.minCoeff() < 0.0)
        throw Error(ErrorCode::InvalidProbabilities, "probabilities must be non-negative");
    if (std::abs(probs.sum() - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "probabilities sum to " << probs.sum() << ", expected 1";
        throw Error(ErrorCode::InvalidProbabilities, msg.str());
    }
    double defect = orthonormality_defect(basis);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "basis is not orthonormal (max defect " << defect << ")";
        throw Error(ErrorCode::NotOrthonormal, msg.str());
    }
    Matrix rho = basis * probs.cast<cplx>().asDiagonal() * basis.adjoint();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

Matrix complete_basis(const Vector &first) {
    if (std::abs(first.squaredNorm() - 1.0) > 1e-10)
        throw Error(ErrorCode::NotNormalized, "complete_basis needs a normalized vector");
    const auto n = first.size();
    Eigen::HouseholderQR<Matrix> qr{Matrix(first)};
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    q.col(0) = first;
    return q;
}

ConvergenceCheck check_convergence(const std::function<cplx(int)> &f, int dim, double tail_tol) {
    ConvergenceCheck out;
    out.at_dim = f(dim);
    out.at_double_dim = f(2 * dim);
    out.delta = std::abs(out.at_dim - out.at_double_dim);
    out.allowed = 10.0 * tail_tol * std::max(1.0, std::abs(out.at_dim));
    return out;
}

cplx require_convergence(const std::function<cplx(int)> &f, int dim, double tail_tol) {
    auto check = check_convergence(f, dim, tail_tol);
    if (!check.converged()) {
        std::ostringstream msg;
        msg << "value changes by " << check.delta << " between dim " << dim << " and " << 2 * dim
            << " (allowed " << check.allowed << ")";
        throw TruncationError(msg.str(), check.delta);
    }
    return check.at_dim;
}

} // namespace qbounds
