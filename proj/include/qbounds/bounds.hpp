#pragma once

// Generalized quantum Fisher information and the first-order modified speed
// limits: Mandelstam-Tamm, Margolus-Levitin, Heisenberg, Cramer-Rao, Lloyd.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbounds/perturbation.hpp"

namespace qbounds {

inline constexpr double default_prob_floor = 1e-12;

// Fubini-Study angle arccos|<psi|phi>| in [0, pi/2]; both inputs must be normalized to 1e-10.
double statistical_distance(const Vector &psi, const Vector &phi);
double statistical_distance(const StateVector &psi, const StateVector &phi);

// (2/hbar^2) sum_jk (p_j - p_k)^2/(p_j + p_k) |<j|G|k>|^2 over the eigenbasis of rho.
// G may be non-Hermitian. Pairs with p_j + p_k <= prob_floor are dropped.
double qfi_of_density(const Matrix &rho, const Matrix &generator, double hbar = 1.0,
                      double prob_floor = default_prob_floor);

// The Fisher sum evaluated at the deformed probabilities p + eta p1 and the
// deformed basis |j> + eta |j1>, with Delta_g K_g = dK + eta d1K1.
// Throws InvalidEta when a deformed probability is negative.
double generalized_qfi_direct(const DeformedDensity &dden, const DeformedOperator &dop, double hbar = 1.0,
                              double prob_floor = default_prob_floor);

// Linearization of generalized_qfi_direct in eta:
//   F = baseline + eta * (operator_term + probability_term)
// operator_term collects the change of |Delta_g K_g|_jk^2 (including the
// basis corrections), probability_term the change of the probability weights.
struct QfiExpansion {
    double baseline = 0.0;
    double operator_term = 0.0;
    double probability_term = 0.0;
    double eta = 0.0;
    double value() const { return baseline + eta * (operator_term + probability_term); }
};

QfiExpansion generalized_qfi_expanded(const DeformedDensity &dden, const DeformedOperator &dop, double hbar = 1.0,
                                      double prob_floor = default_prob_floor);

// A first-order bound together with its relative first-order correction,
// used by callers to judge whether the truncation in eta is trustworthy.
struct FirstOrderBound {
    double value = 0.0;
    double relative_correction = 0.0;
    bool suspect(double threshold = 0.1) const { return std::abs(relative_correction) > threshold; }
};

FirstOrderBound mandelstam_tamm_modified(const VarianceParts &parts, double eta, double hbar = 1.0);

// <K> = Tr(rho K), <K1> = Re Tr(rho K1), <K>_1 = Tr(rho1 K).
struct MeanInputs {
    double mean_K = 0.0;
    double mean_K1 = 0.0;
    double mean_K_1 = 0.0;
};

MeanInputs mean_inputs(const DeformedOperator &dop, const DeformedDensity &dden);

// (hbar pi / 2) |1/<K> - eta (<K1> + <K>_1)/<K>^2|. Requires <K> > 0.
FirstOrderBound margolus_levitin_modified(const MeanInputs &m, double eta, double hbar = 1.0);
// hbar |1/<K> - eta (<K1> + <K>_1)/<K>^2|
FirstOrderBound heisenberg_limit_modified(const MeanInputs &m, double eta, double hbar = 1.0);
// 1 / margolus_levitin_modified
FirstOrderBound lloyd_rate_modified(const MeanInputs &m, double eta, double hbar = 1.0);
// 1 / sqrt(nu F_g)
double cramer_rao_modified(double qfi_g, int nu);

// exp(-i K theta / hbar) psi for Hermitian K.
Vector evolve(const Vector &psi, const FockOperator &K, double theta, double hbar = 1.0);

// ds/dtheta at theta = 0+ for s(theta) = arccos|<psi|exp(-i K theta/hbar) psi>|.
// s is even in theta with a kink at 0, so the central difference is taken at
// theta = step: (s(2 step) - s(0)) / (2 step).
double distance_rate_at_origin(const Vector &psi, const FockOperator &K, double hbar = 1.0, double step = 1e-4);

struct SchwarzSample {
    double theta = 0.0;
    double rate = 0.0;  // finite-difference ds_g/dtheta
    double limit = 0.0; // |<K_g>_g| / hbar
};

struct SchwarzChainCheck {
    bool skipped = false;
    std::string reason;
    std::vector<SchwarzSample> samples;
    bool holds(double slack = 1e-6) const;
};

// Samples ds_g/dtheta along exp(-i K_g theta/hbar)|Psi_g> against |<K_g>_g|/hbar.
// Skipped (with a reason) when K1 is not Hermitian, since the propagator is then not unitary.
SchwarzChainCheck schwarz_chain_check(const DeformedState &state, const DeformedOperator &dop,
                                      std::span<const double> thetas, double hbar = 1.0, double step = 1e-4);

struct BoundEntry {
    std::optional<double> baseline; // eta = 0
    std::optional<double> modified;
    std::string note; // why a value is missing, or a first-order warning
};

struct BoundReport {
    double hbar = 1.0;
    double eta = 0.0;
    int nu = 1;
    BoundEntry qfi;          // direct Fisher sum
    BoundEntry qfi_expanded; // first-order expansion
    BoundEntry variance_bound;
    BoundEntry mandelstam_tamm;
    BoundEntry margolus_levitin;
    BoundEntry heisenberg;
    BoundEntry cramer_rao;
    BoundEntry lloyd;
    std::vector<std::string> warnings;

    // (name, entry) in report order.
    std::vector<std::pair<std::string, const BoundEntry *>> entries() const;
};

struct BoundOptions {
    double hbar = 1.0;
    int nu = 1;
    double prob_floor = default_prob_floor;
    double eta_warn_threshold = 0.1;
    // Replaces the trace-based inputs of the Margolus-Levitin family.
    std::optional<MeanInputs> mean_override;
};

BoundReport compute_bound_report(const DeformedDensity &dden, const DeformedOperator &dop,
                                 const BoundOptions &options = {});

// Largest relative difference between matching modified values; throws when
// the reports were computed with different hbar.
double max_relative_difference(const BoundReport &a, const BoundReport &b);

} // namespace qbounds
