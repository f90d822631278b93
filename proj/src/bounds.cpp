#include "qbounds/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qbounds {

namespace {

void require_normalized(const Vector &v, const char *which) {
    double n2 = v.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << which << " is not normalized (squared norm " << n2 << ")";
        throw Error(ErrorCode::NotNormalized, msg.str());
    }
}

void require_positive_hbar(double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw Error(ErrorCode::UndefinedBound, "hbar must be a positive finite constant");
}

// sum_jk w(p_j, p_k) |M_jk|^2 with the standard Fisher weight.
double fisher_sum(const RealVector &p, const Matrix &elements, double prob_floor) {
    const auto n = p.size();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            double s = p(j) + p(k);
            if (s <= prob_floor)
                continue;
            double d = p(j) - p(k);
            sum += d * d / s * std::norm(elements(j, k));
        }
    return sum;
}

Vector evolve_with(const SpectralDecomposition &spec, const Vector &psi, double theta, double hbar) {
    Vector coeffs = spec.eigenvectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs(k) *= std::exp(cplx{0.0, -spec.eigenvalues(k) * theta / hbar});
    return spec.eigenvectors * coeffs;
}

double distance_along(const SpectralDecomposition &spec, const Vector &psi, double theta, double hbar) {
    return statistical_distance(psi, evolve_with(spec, psi, theta, hbar));
}

FirstOrderBound inverse_mean_bound(const MeanInputs &m, double eta, double scale) {
    if (!(m.mean_K > 0.0)) {
        std::ostringstream msg;
        msg << "mean generator value " << m.mean_K
            << " must be positive; shift the energy origin to the ground state before evaluating";
        throw Error(ErrorCode::EnergyConvention, msg.str());
    }
    const double shift = m.mean_K1 + m.mean_K_1;
    FirstOrderBound out;
    out.value = scale * std::abs(1.0 / m.mean_K - eta * shift / (m.mean_K * m.mean_K));
    out.relative_correction = eta * shift / m.mean_K;
    return out;
}

} // namespace

double statistical_distance(const Vector &psi, const Vector &phi) {
    if (psi.size() != phi.size())
        throw Error(ErrorCode::DimensionMismatch, "statistical_distance: dimension mismatch");
    require_normalized(psi, "first state");
    require_normalized(phi, "second state");
    cplx overlap = psi.dot(phi);
    // atan2 form keeps precision for nearly parallel states
    double orth = (phi - overlap * psi).norm();
    return std::atan2(orth, std::abs(overlap));
}

double statistical_distance(const StateVector &psi, const StateVector &phi) {
    return statistical_distance(psi.amplitudes(), phi.amplitudes());
}

double qfi_of_density(const Matrix &rho, const Matrix &generator, double hbar, double prob_floor) {
    require_positive_hbar(hbar);
    if (rho.rows() != generator.rows())
        throw Error(ErrorCode::DimensionMismatch, "qfi_of_density: dimension mismatch");
    auto spec = hermitian_eigendecompose(rho, 1e-10);
    Matrix elements = spec.eigenvectors.adjoint() * generator * spec.eigenvectors;
    RealVector p = spec.eigenvalues.cwiseMax(0.0);
    return 2.0 / (hbar * hbar) * fisher_sum(p, elements, prob_floor);
}

double generalized_qfi_direct(const DeformedDensity &dden, const DeformedOperator &dop, double hbar,
                              double prob_floor) {
    require_positive_hbar(hbar);
    const double eta = dop.eta;
    RealVector pg = dden.deformed_probs(eta);
    for (Eigen::Index j = 0; j < pg.size(); ++j) {
        if (pg(j) < 0.0) {
            std::ostringstream msg;
            msg << "eta=" << eta << " makes deformed probability " << j << " negative (" << pg(j) << ")";
            throw Error(ErrorCode::InvalidEta, msg.str());
        }
    }
    auto [dK, d1K1] = modified_variation(dop, dden);
    Matrix delta_g = dK.entries() + eta * d1K1.entries();
    Matrix bg = dden.deformed_basis(eta);
    Matrix elements = bg.adjoint() * delta_g * bg;
    return 2.0 / (hbar * hbar) * fisher_sum(pg, elements, prob_floor);
}

QfiExpansion generalized_qfi_expanded(const DeformedDensity &dden, const DeformedOperator &dop, double hbar,
                                      double prob_floor) {
    require_positive_hbar(hbar);
    auto [dK, d1K1] = modified_variation(dop, dden);
    const Matrix &B = dden.basis();
    const Matrix &C = dden.basis_corrections();
    const Matrix m0 = B.adjoint() * dK.entries() * B;
    const Matrix m1 = B.adjoint() * d1K1.entries() * B + C.adjoint() * dK.entries() * B +
                      B.adjoint() * dK.entries() * C;
    const RealVector &p = dden.probs();
    const RealVector &p1 = dden.prob_corrections();

    double base = 0.0, op_term = 0.0, prob_term = 0.0;
    const auto n = p.size();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            double s = p(j) + p(k);
            if (s <= prob_floor)
                continue;
            double d = p(j) - p(k);
            double d1 = p1(j) - p1(k);
            double s1 = p1(j) + p1(k);
            double weight = d * d / s;
            double weight1 = (2.0 * d * d1 * s - d * d * s1) / (s * s);
            double m0sq = std::norm(m0(j, k));
            base += weight * m0sq;
            op_term += weight * 2.0 * (std::conj(m0(j, k)) * m1(j, k)).real();
            prob_term += weight1 * m0sq;
        }
    const double pref = 2.0 / (hbar * hbar);
    return {pref * base, pref * op_term, pref * prob_term, dop.eta};
}

FirstOrderBound mandelstam_tamm_modified(const VarianceParts &parts, double eta, double hbar) {
    require_positive_hbar(hbar);
    if (!(parts.baseline > 0.0)) {
        std::ostringstream msg;
        msg << "Mandelstam-Tamm bound undefined: baseline variance is " << parts.baseline;
        throw Error(ErrorCode::UndefinedBound, msg.str());
    }
    const double v = parts.baseline;
    FirstOrderBound out;
    out.value = std::numbers::pi * hbar / 2.0 * (1.0 / std::sqrt(v) - eta * parts.correction() / (2.0 * v * std::sqrt(v)));
    out.relative_correction = eta * parts.correction() / (2.0 * v);
    return out;
}

MeanInputs mean_inputs(const DeformedOperator &dop, const DeformedDensity &dden) {
    if (dop.dim() != dden.dim())
        throw Error(ErrorCode::DimensionMismatch, "mean_inputs: dimension mismatch");
    MeanInputs m;
    m.mean_K = dden.rho().trace_with(dop.K).real();
    m.mean_K1 = dden.rho().trace_with(dop.K1).real();
    m.mean_K_1 = (dden.rho1() * dop.K.entries()).trace().real();
    return m;
}

FirstOrderBound margolus_levitin_modified(const MeanInputs &m, double eta, double hbar) {
    require_positive_hbar(hbar);
    return inverse_mean_bound(m, eta, hbar * std::numbers::pi / 2.0);
}

FirstOrderBound heisenberg_limit_modified(const MeanInputs &m, double eta, double hbar) {
    require_positive_hbar(hbar);
    return inverse_mean_bound(m, eta, hbar);
}

FirstOrderBound lloyd_rate_modified(const MeanInputs &m, double eta, double hbar) {
    FirstOrderBound ml = margolus_levitin_modified(m, eta, hbar);
    if (!(ml.value > 0.0))
        throw Error(ErrorCode::UndefinedBound, "Lloyd rate undefined: Margolus-Levitin time vanishes");
    return {1.0 / ml.value, ml.relative_correction};
}

double cramer_rao_modified(double qfi_g, int nu) {
    if (nu < 1)
        throw Error(ErrorCode::UndefinedBound, "number of probes must be >= 1");
    if (!(qfi_g > 0.0)) {
        std::ostringstream msg;
        msg << "Cramer-Rao bound undefined: Fisher information " << qfi_g << " carries no information";
        throw Error(ErrorCode::NoInformation, msg.str());
    }
    return 1.0 / std::sqrt(nu * qfi_g);
}

Vector evolve(const Vector &psi, const FockOperator &K, double theta, double hbar) {
    require_positive_hbar(hbar);
    if (psi.size() != K.dim())
        throw Error(ErrorCode::DimensionMismatch, "evolve: dimension mismatch");
    return evolve_with(hermitian_eigendecompose(K), psi, theta, hbar);
}

double distance_rate_at_origin(const Vector &psi, const FockOperator &K, double hbar, double step) {
    require_positive_hbar(hbar);
    auto spec = hermitian_eigendecompose(K);
    double forward = distance_along(spec, psi, 2.0 * step, hbar);
    double origin = distance_along(spec, psi, 0.0, hbar);
    return (forward - origin) / (2.0 * step);
}

bool SchwarzChainCheck::holds(double slack) const {
    if (skipped)
        return true;
    for (const auto &s : samples)
        if (s.rate > s.limit + slack)
            return false;
    return true;
}

SchwarzChainCheck schwarz_chain_check(const DeformedState &state, const DeformedOperator &dop,
                                      std::span<const double> thetas, double hbar, double step) {
    require_positive_hbar(hbar);
    SchwarzChainCheck out;
    if (!dop.K1.is_hermitian()) {
        out.skipped = true;
        out.reason = "K1 is not Hermitian; the deformed propagator is not unitary";
        return out;
    }
    FockOperator kg = dop.assembled();
    Vector psi_g = state.assembled();
    psi_g /= psi_g.norm();
    auto spec = hermitian_eigendecompose(kg);
    double limit = std::abs(expectation(kg, psi_g)) / hbar;
    for (double theta : thetas) {
        double rate;
        if (theta <= step)
            rate = (distance_along(spec, psi_g, theta + 2.0 * step, hbar) - distance_along(spec, psi_g, theta, hbar)) /
                   (2.0 * step);
        else
            rate = (distance_along(spec, psi_g, theta + step, hbar) - distance_along(spec, psi_g, theta - step, hbar)) /
                   (2.0 * step);
        out.samples.push_back({theta, rate, limit});
    }
    return out;
}

std::vector<std::pair<std::string, const BoundEntry *>> BoundReport::entries() const {
    return {{"qfi", &qfi},
            {"qfi_expanded", &qfi_expanded},
            {"variance_bound", &variance_bound},
            {"mandelstam_tamm", &mandelstam_tamm},
            {"margolus_levitin", &margolus_levitin},
            {"heisenberg", &heisenberg},
            {"cramer_rao", &cramer_rao},
            {"lloyd", &lloyd}};
}

namespace {

template <class F> void fill_entry(BoundEntry &entry, F &&compute_pair) {
    try {
        compute_pair(entry);
    } catch (const Error &e) {
        if (!entry.note.empty())
            entry.note += "; ";
        entry.note += std::string(to_string(e.code())) + ": " + e.what();
    }
}

std::string suspect_note(const FirstOrderBound &b, double threshold) {
    if (!b.suspect(threshold))
        return {};
    std::ostringstream msg;
    msg << "first-order correction is " << b.relative_correction << " of the baseline";
    return msg.str();
}

} // namespace

BoundReport compute_bound_report(const DeformedDensity &dden, const DeformedOperator &dop,
                                 const BoundOptions &options) {
    require_positive_hbar(options.hbar);
    BoundReport r;
    r.hbar = options.hbar;
    r.eta = dop.eta;
    r.nu = options.nu;
    const double hbar = options.hbar;
    const double eta = dop.eta;
    const DeformedOperator base_op(dop.K, dop.K1, 0.0);

    if (first_order_suspect(dop, dden, options.eta_warn_threshold)) {
        std::ostringstream msg;
        msg << "eta * max(||rho1||, ||K1||/||K||) = " << first_order_indicator(dop, dden) << " exceeds "
            << options.eta_warn_threshold << "; first-order truncation is doubtful";
        r.warnings.push_back(msg.str());
    }

    fill_entry(r.qfi, [&](BoundEntry &e) {
        e.baseline = generalized_qfi_direct(dden, base_op, hbar, options.prob_floor);
        e.modified = generalized_qfi_direct(dden, dop, hbar, options.prob_floor);
    });
    fill_entry(r.qfi_expanded, [&](BoundEntry &e) {
        auto ex = generalized_qfi_expanded(dden, dop, hbar, options.prob_floor);
        e.baseline = ex.baseline;
        e.modified = ex.value();
    });

    const VarianceParts parts = deformed_variance(dop, dden);
    r.variance_bound.baseline = 4.0 * parts.baseline / (hbar * hbar);
    r.variance_bound.modified = 4.0 * parts.total(eta) / (hbar * hbar);

    fill_entry(r.mandelstam_tamm, [&](BoundEntry &e) {
        e.baseline = mandelstam_tamm_modified(parts, 0.0, hbar).value;
        auto b = mandelstam_tamm_modified(parts, eta, hbar);
        e.modified = b.value;
        e.note = suspect_note(b, options.eta_warn_threshold);
    });

    const MeanInputs means = options.mean_override ? *options.mean_override : mean_inputs(dop, dden);
    fill_entry(r.margolus_levitin, [&](BoundEntry &e) {
        e.baseline = margolus_levitin_modified(means, 0.0, hbar).value;
        auto b = margolus_levitin_modified(means, eta, hbar);
        e.modified = b.value;
        e.note = suspect_note(b, options.eta_warn_threshold);
    });
    fill_entry(r.heisenberg, [&](BoundEntry &e) {
        e.baseline = heisenberg_limit_modified(means, 0.0, hbar).value;
        e.modified = heisenberg_limit_modified(means, eta, hbar).value;
    });
    fill_entry(r.lloyd, [&](BoundEntry &e) {
        e.baseline = lloyd_rate_modified(means, 0.0, hbar).value;
        e.modified = lloyd_rate_modified(means, eta, hbar).value;
    });
    fill_entry(r.cramer_rao, [&](BoundEntry &e) {
        if (!r.qfi.baseline || !r.qfi.modified)
            throw Error(ErrorCode::NoInformation, "Fisher information unavailable");
        e.baseline = cramer_rao_modified(*r.qfi.baseline, options.nu);
        e.modified = cramer_rao_modified(*r.qfi.modified, options.nu);
    });
    return r;
}

double max_relative_difference(const BoundReport &a, const BoundReport &b) {
    if (a.hbar != b.hbar) {
        std::ostringstream msg;
        msg << "cannot compare reports computed with hbar=" << a.hbar << " and hbar=" << b.hbar;
        throw Error(ErrorCode::UndefinedBound, msg.str());
    }
    double worst = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        const auto &x = ea[i].second->modified;
        const auto &y = eb[i].second->modified;
        if (!x || !y)
            continue;
        double scale = std::max(std::abs(*x), std::abs(*y));
        if (scale > 0.0)
            worst = std::max(worst, std::abs(*x - *y) / scale);
    }
    return worst;
}

} // namespace qbounds
