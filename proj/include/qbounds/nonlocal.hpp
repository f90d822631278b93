#pragma once

// Nonlocal harmonic oscillator, first order in eta:
//   H_g = (x^2 + p^2)/2 + eta (x^4/2 + 2 i x p + 1)
// evaluated on the coherent state of amplitude alpha and its polynomial
// first-order dressing psi1 = psi0 (c0 + c1 x + ... + c4 x^4).
//
// The closed-form energies (E0, E1, E2, n, B_t) drive every bound. The Fock
// space and quadrature evaluations below exist to audit those closed forms and
// only report residuals; they never feed back into the bounds.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qbounds/hilbert.hpp"
#include "qbounds/quadrature.hpp"

namespace qbounds {

struct NonlocalModel {
    double eta = 0.01;
    double a2 = 1.0;
    int dim = 64;

    NonlocalModel(double eta, double a2, int dim);
    // Above eta = 0.1 the first-order truncation is not trusted.
    bool first_order_regime() const { return eta < 0.1; }
};

struct NonlocalHamiltonians {
    FockOperator H;  // a^dag a + 1/2
    FockOperator H1; // x^4/2 + 2ixp + 1, truncated products
};

NonlocalHamiltonians hamiltonians(int dim);

// x, H and H1 at one truncation, built once and shared by sweep workers.
struct NonlocalOperators {
    int dim;
    FockOperator x;
    FockOperator H;
    FockOperator H1;
    explicit NonlocalOperators(int dim);
};

using AnsatzCoefficients = std::array<cplx, 5>;

AnsatzCoefficients coherent_wavefunction_coeffs(double t, double alpha, double a2);

// e^{-it/2} |alpha e^{-it}>, the zeroth-order solution at time t.
StateVector evolved_coherent_state(double t, double alpha, int dim, double tail_tol = default_tail_tol);

// sum_k c_k x^k psi0 with truncated powers of x.
Vector psi1_from(const AnsatzCoefficients &c, const StateVector &psi0, const FockOperator &x);

// psi1 at time t. Throws TruncationError when the coherent tail exceeds
// tail_tol or when <psi0|psi1> and <psi1|psi1> move between dim and 2*dim.
Vector psi1_state(double t, double alpha, double a2, int dim, double tail_tol = default_tail_tol);

struct ClosedFormEnergies {
    double E0 = 0.0;
    double E1 = 0.0;
    double E2 = 0.0;
    double n_t = 0.0;
    double B_t = 0.0;          // -E0 n + E1 + E2
    double B = 0.0;            // E0 + eta B_t
    double B_unexpanded = 0.0; // (E0 + eta (E1 + E2)) / (1 + eta n)
};

ClosedFormEnergies closed_form_energies(double t, double alpha, double eta);

struct TimeBound {
    double expanded = 0.0;   // first order in eta
    double unexpanded = 0.0; // from B_unexpanded
};

// Margolus-Levitin time (pi hbar / 2 E0)(1 - eta B_t/E0).
TimeBound tmin_bound(double t, double alpha, double eta, double hbar = 1.0);
// Heisenberg time resolution (hbar / E0)(1 - eta B_t/E0).
TimeBound heisenberg_dt(double t, double alpha, double eta, double hbar = 1.0);

// <psi0|psi1> and <psi1|H|psi0> by Fock algebra.
cplx fock_overlap_psi0_psi1(double t, double alpha, double a2, int dim, double tail_tol = default_tail_tol);
cplx fock_psi1_H_psi0(double t, double alpha, double a2, int dim, double tail_tol = default_tail_tol);
// The same integrals in position space: |psi0|^2 is a Gaussian centred at
// sqrt2 alpha cos t and H psi0 / psi0 is a quadratic, so the shifted
// Gauss-Hermite rule integrates them exactly.
cplx quadrature_overlap_psi0_psi1(double t, double alpha, double a2, const GaussHermiteRule &rule);
cplx quadrature_psi1_H_psi0(double t, double alpha, double a2, const GaussHermiteRule &rule);
cplx quadrature_psi0_H_psi0(double t, double alpha, const GaussHermiteRule &rule);

struct EnergyAudit {
    double t = 0.0;
    double alpha = 0.0;
    double eta = 0.0;
    double a2 = 0.0;
    int dim = 0;
    ClosedFormEnergies closed;

    double E0_numeric = 0.0;     // <psi|H|psi>
    double ReH1_numeric = 0.0;   // Re <psi|H1|psi>
    double cross_numeric = 0.0;  // <psi1|H|psi> + <psi|H|psi1>
    double norm_numeric = 0.0;   // 2 Re <psi|psi1>
    double energy_numeric = 0.0; // assembled <H_g>_g with N = 1 + eta norm_numeric

    // eta-weighted contributions to the energy mismatch
    double E0_residual = 0.0;
    double E1_residual = 0.0;
    double E2_residual = 0.0;
    double n_residual = 0.0;
    double B_residual = 0.0;

    double ratio_ReH1_over_E1 = 0.0;
    double convergence_delta = 0.0; // largest change of the numeric terms from dim to 2*dim

    // psi1 is linear in a2; these are the a2 = 1 values used for the a2 fit.
    double norm_per_a2 = 0.0;
    double cross_per_a2 = 0.0;
};

EnergyAudit oracle_energy_audit(double t, double alpha, double eta, double a2, int dim,
                                double tail_tol = default_tail_tol);
// Variant reusing operators built at dim and 2*dim.
EnergyAudit oracle_energy_audit(double t, double alpha, double eta, double a2, const NonlocalOperators &ops,
                                const NonlocalOperators &ops_double, double tail_tol = default_tail_tol);

struct A2Fit {
    double best_a2 = 0.0;       // grid minimizer
    double rms_residual = 0.0;  // at best_a2
    double least_squares_a2 = 0.0; // unconstrained closed-form minimizer
    std::vector<std::pair<double, double>> scan; // (a2, rms residual)
};

// Least-squares scan of a2 * per_a2[i] against target[i] over [lo, hi].
A2Fit fit_a2(std::span<const double> per_a2, std::span<const double> target, double lo = -2.0, double hi = 2.0,
             int points = 41);

} // namespace qbounds
