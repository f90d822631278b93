#include "qbounds/perturbation.hpp"

#include <cmath>
#include <sstream>

namespace qbounds {

namespace {

void require_dim(int expected, Eigen::Index got, const char *what) {
    if (got != expected) {
        std::ostringstream msg;
        msg << what << ": expected dimension " << expected << ", got " << got;
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
}

double spectral_norm(const Matrix &m) {
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

} // namespace

DeformedOperator::DeformedOperator(FockOperator k, FockOperator k1, double eta_)
    : K(std::move(k)), K1(std::move(k1)), eta(eta_) {
    require_dim(K.dim(), K1.dim(), "deformed operator K1");
    double herm = K.hermiticity_defect();
    if (herm > 1e-10) {
        std::ostringstream msg;
        msg << "undeformed operator K must be Hermitian (max asymmetry " << herm << ")";
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    if (!std::isfinite(eta))
        throw Error(ErrorCode::InvalidEta, "eta must be finite");
}

DeformedState::DeformedState(StateVector psi_, Vector psi1_, double eta_)
    : psi(std::move(psi_)), psi1(std::move(psi1_)), eta(eta_) {
    require_dim(psi.dim(), psi1.size(), "deformed state psi1");
    if (!(assembled().squaredNorm() > 0.0))
        throw Error(ErrorCode::InvalidEta, "assembled deformed state has zero norm");
}

DeformedDensity::DeformedDensity(RealVector p, RealVector p1, Matrix basis, Matrix corrections, DensityMatrix rho,
                                 Matrix rho1)
    : probs_(std::move(p)), prob_corrections_(std::move(p1)), basis_(std::move(basis)),
      basis_corrections_(std::move(corrections)), rho_(std::move(rho)), rho1_(std::move(rho1)) {}

DeformedDensity assemble_deformed_density(const RealVector &p, const RealVector &p1, const Matrix &basis,
                                          const Matrix &basis_corrections) {
    const int dim = static_cast<int>(basis.rows());
    require_dim(dim, basis.cols(), "basis columns");
    require_dim(dim, p.size(), "probabilities");
    require_dim(dim, p1.size(), "probability corrections");
    require_dim(dim, basis_corrections.rows(), "basis correction rows");
    require_dim(dim, basis_corrections.cols(), "basis correction columns");
    if (std::abs(p1.sum()) > 1e-10) {
        std::ostringstream msg;
        msg << "probability corrections must sum to 0, got " << p1.sum();
        throw Error(ErrorCode::InvalidProbabilities, msg.str());
    }
    // validates p and the basis
    DensityMatrix rho = density_from_probs(p, basis);

    Matrix corrections = basis_corrections;
    for (int i = 0; i < dim; ++i) {
        double re = basis.col(i).dot(corrections.col(i)).real();
        corrections.col(i) -= re * basis.col(i);
    }

    Matrix rho1 = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto ket = basis.col(i);
        const auto ket1 = corrections.col(i);
        rho1 += p(i) * (ket * ket1.adjoint() + ket1 * ket.adjoint()) + p1(i) * ket * ket.adjoint();
    }
    return DeformedDensity(p, p1, basis, std::move(corrections), std::move(rho), std::move(rho1));
}

DeformedDensity deformed_density_from_state(const DeformedState &state) {
    const int dim = state.psi.dim();
    StateVector psi = state.psi.normalized();
    Matrix basis = complete_basis(psi.amplitudes());
    RealVector p = RealVector::Zero(dim);
    p(0) = 1.0;
    Matrix corrections = Matrix::Zero(dim, dim);
    corrections.col(0) = state.psi1;
    return assemble_deformed_density(p, RealVector::Zero(dim), basis, corrections);
}

ModifiedVariation modified_variation(const DeformedOperator &dop, const DeformedDensity &dden) {
    require_dim(dden.dim(), dop.dim(), "modified_variation operator");
    const int dim = dop.dim();
    const Matrix &rho = dden.rho().entries();
    const Matrix id = Matrix::Identity(dim, dim);
    cplx mean_K = (rho * dop.K.entries()).trace();
    cplx mean_K1 = (rho * dop.K1.entries()).trace();
    cplx mean_K_1 = (dden.rho1() * dop.K.entries()).trace();
    return {FockOperator(dop.K.entries() - mean_K * id),
            FockOperator(dop.K1.entries() - (mean_K1 + mean_K_1) * id)};
}

VarianceParts deformed_variance(const DeformedOperator &dop, const DeformedDensity &dden) {
    auto [dK, d1K1] = modified_variation(dop, dden);
    const Matrix &rho = dden.rho().entries();
    const Matrix dK2 = dK.entries() * dK.entries();
    const Matrix anti = d1K1.entries() * dK.entries() + dK.entries() * d1K1.entries();
    VarianceParts parts;
    parts.baseline = (rho * dK2).trace().real();
    parts.cross = (rho * anti).trace().real();
    parts.rho1_term = (dden.rho1() * dK2).trace().real();
    return parts;
}

FirstOrderEigenvectors rayleigh_first_order(const FockOperator &H, const FockOperator &H1_herm, double gap_tol) {
    require_dim(H.dim(), H1_herm.dim(), "rayleigh_first_order perturbation");
    if (!H1_herm.is_hermitian()) {
        std::ostringstream msg;
        msg << "perturbation must be Hermitian (max asymmetry " << H1_herm.hermiticity_defect() << ")";
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    FirstOrderEigenvectors out;
    out.zeroth = hermitian_eigendecompose(H);
    const RealVector &E = out.zeroth.eigenvalues;
    const Matrix &V = out.zeroth.eigenvectors;
    const int dim = H.dim();
    for (int i = 0; i + 1 < dim; ++i) {
        double gap = E(i + 1) - E(i);
        if (gap < gap_tol) {
            std::ostringstream msg;
            msg << "near-degenerate levels " << i << " and " << i + 1 << ": gap " << gap << " below " << gap_tol;
            throw Error(ErrorCode::Degenerate, msg.str());
        }
    }
    const Matrix coupling = V.adjoint() * H1_herm.entries() * V; // <j|H1|i>
    Matrix mix = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (j != i)
                mix(j, i) = coupling(j, i) / (E(i) - E(j));
    out.corrections = V * mix;
    out.energy_shifts = coupling.diagonal().real();
    return out;
}

double first_order_indicator(const DeformedOperator &dop, const DeformedDensity &dden) {
    double k_norm = spectral_norm(dop.K.entries());
    double ratio = k_norm > 0.0 ? spectral_norm(dop.K1.entries()) / k_norm : 0.0;
    return std::abs(dop.eta) * std::max(spectral_norm(dden.rho1()), ratio);
}

} // namespace qbounds
