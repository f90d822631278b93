#pragma once

// First-order deformations: K_g = K + eta K1, |i_g> = |i> + eta |i1>,
// p_g = p + eta p1, rho_g = rho + eta rho1.

#include "qbounds/hilbert.hpp"

namespace qbounds {

struct DeformedOperator {
    FockOperator K;
    FockOperator K1; // may be non-Hermitian
    double eta = 0.0;

    // Requires K Hermitian to 1e-10 and matching dimensions.
    DeformedOperator(FockOperator k, FockOperator k1, double eta);

    int dim() const { return K.dim(); }
    FockOperator assembled() const { return K + K1 * cplx{eta, 0.0}; }
};

struct DeformedState {
    StateVector psi;
    Vector psi1; // not normalized on its own
    double eta = 0.0;

    DeformedState(StateVector psi, Vector psi1, double eta);

    Vector assembled() const { return psi.amplitudes() + eta * psi1; }
};

class DeformedDensity {
  public:
    const RealVector &probs() const noexcept { return probs_; }
    const RealVector &prob_corrections() const noexcept { return prob_corrections_; }
    const Matrix &basis() const noexcept { return basis_; }
    // Columns |i1>, stored in the gauge Re<i|i1> = 0.
    const Matrix &basis_corrections() const noexcept { return basis_corrections_; }
    const DensityMatrix &rho() const noexcept { return rho_; }
    const Matrix &rho1() const noexcept { return rho1_; }
    int dim() const { return rho_.dim(); }

    Matrix deformed_rho(double eta) const { return rho_.entries() + eta * rho1_; }
    RealVector deformed_probs(double eta) const { return probs_ + eta * prob_corrections_; }
    Matrix deformed_basis(double eta) const { return basis_ + eta * basis_corrections_; }

  private:
    friend DeformedDensity assemble_deformed_density(const RealVector &, const RealVector &, const Matrix &,
                                                     const Matrix &);
    DeformedDensity(RealVector p, RealVector p1, Matrix basis, Matrix corrections, DensityMatrix rho,
                    Matrix rho1);

    RealVector probs_;
    RealVector prob_corrections_;
    Matrix basis_;
    Matrix basis_corrections_;
    DensityMatrix rho_;
    Matrix rho1_;
};

// rho1 = sum_i [p_i(|i><i1| + |i1><i|) + p1_i |i><i|], after projecting each
// correction onto the gauge Re<i|i1> = 0.
DeformedDensity assemble_deformed_density(const RealVector &p, const RealVector &p1, const Matrix &basis,
                                          const Matrix &basis_corrections);

// Pure state psi with first-order correction psi1: p = (1, 0, ...), the basis
// completes psi, and |0_1> = psi1 (gauge-projected).
DeformedDensity deformed_density_from_state(const DeformedState &state);

struct ModifiedVariation {
    FockOperator delta_K;   // K - Tr(rho K)
    FockOperator delta1_K1; // K1 - Tr(rho K1) - Tr(rho1 K)
};

ModifiedVariation modified_variation(const DeformedOperator &dop, const DeformedDensity &dden);

// <(Delta_g K_g)^2>_g = baseline + eta (cross + rho1_term), real parts throughout.
struct VarianceParts {
    double baseline = 0.0;  // <(dK)^2>
    double cross = 0.0;     // <d1K1 dK + dK d1K1>
    double rho1_term = 0.0; // <(dK)^2>_1
    double correction() const { return cross + rho1_term; }
    double total(double eta) const { return baseline + eta * correction(); }
};

VarianceParts deformed_variance(const DeformedOperator &dop, const DeformedDensity &dden);

struct FirstOrderEigenvectors {
    SpectralDecomposition zeroth;
    Matrix corrections;        // column i is |i1>, with <i|i1> = 0
    RealVector energy_shifts;  // <i|H1|i>
};

// Rayleigh-Schroedinger first-order eigenvector corrections of H under H1_herm.
FirstOrderEigenvectors rayleigh_first_order(const FockOperator &H, const FockOperator &H1_herm,
                                            double gap_tol = 1e-8);

// eta * max(||rho1||, ||K1|| / ||K||) using spectral norms.
double first_order_indicator(const DeformedOperator &dop, const DeformedDensity &dden);
inline bool first_order_suspect(const DeformedOperator &dop, const DeformedDensity &dden,
                                double threshold = 0.1) {
    return first_order_indicator(dop, dden) > threshold;
}

} // namespace qbounds
