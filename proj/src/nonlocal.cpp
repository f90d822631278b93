#include "qbounds/nonlocal.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qbounds {

namespace {

constexpr cplx I{0.0, 1.0};

cplx phase(double angle) { return std::exp(I * angle); }

void require_model_dim(int dim) {
    if (dim < 8)
        throw Error(ErrorCode::InvalidDimension, "nonlocal model needs dim >= 8, got " + std::to_string(dim));
}

cplx poly_at(const AnsatzCoefficients &c, double x) {
    return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

// Unit-a2 dressing; psi1 is linear in a2.
Vector unit_psi1(double t, double alpha, const StateVector &psi0, const FockOperator &x) {
    return psi1_from(coherent_wavefunction_coeffs(t, alpha, 1.0), psi0, x);
}

struct NumericTerms {
    double E0 = 0.0;
    double ReH1 = 0.0;
    double cross_unit = 0.0;
    double norm_unit = 0.0;
};

NumericTerms numeric_terms(double t, double alpha, const NonlocalOperators &ops, double tail_tol) {
    StateVector psi0 = evolved_coherent_state(t, alpha, ops.dim, tail_tol);
    Vector psi1 = unit_psi1(t, alpha, psi0, ops.x);
    const Vector &psi = psi0.amplitudes();
    Vector h_psi = ops.H * psi;
    NumericTerms out;
    out.E0 = psi.dot(h_psi).real();
    out.ReH1 = expectation(ops.H1, psi).real();
    out.cross_unit = (psi1.dot(h_psi) + psi.dot(ops.H * psi1)).real();
    out.norm_unit = 2.0 * psi.dot(psi1).real();
    return out;
}

} // namespace

NonlocalModel::NonlocalModel(double eta_, double a2_, int dim_) : eta(eta_), a2(a2_), dim(dim_) {
    if (!(eta >= 0.0) || !std::isfinite(eta))
        throw Error(ErrorCode::InvalidEta, "nonlocal model needs a finite eta >= 0");
    if (!std::isfinite(a2))
        throw Error(ErrorCode::InvalidEta, "a2 must be finite");
    require_model_dim(dim);
}

NonlocalHamiltonians hamiltonians(int dim) {
    require_model_dim(dim);
    FockOperator x = position_op(dim);
    FockOperator p = momentum_op(dim);
    FockOperator id = FockOperator::identity(dim);
    FockOperator H = number_op(dim) + id * cplx{0.5, 0.0};
    FockOperator H1 = x.pow(4) * cplx{0.5, 0.0} + (x * p) * cplx{0.0, 2.0} + id;
    return {std::move(H), std::move(H1)};
}

NonlocalOperators::NonlocalOperators(int dim_) : dim(dim_) {
    auto h = hamiltonians(dim_);
    x = position_op(dim_);
    H = std::move(h.H);
    H1 = std::move(h.H1);
}

AnsatzCoefficients coherent_wavefunction_coeffs(double t, double alpha, double a2) {
    const double a = alpha;
    const double a_2 = a * a;
    const double a_4 = a_2 * a_2;
    const cplx e2 = phase(2 * t), e4 = phase(4 * t), e6 = phase(6 * t), e8 = phase(8 * t);
    AnsatzCoefficients c;
    c[0] = a2 / 32.0 * phase(-8 * t) *
           (a_4 - 8.0 * a_4 * e2 + 8.0 * a_4 * e6 - a_4 * e8 - 6.0 * a_2 * e2 + 20.0 * a_2 * e4 - 14.0 * a_2 * e6 +
            28.0 * a_2 * e8 - 3.0 * e4 - 4.0 * e6 + 7.0 * e8);
    c[1] = -a * a2 / (4.0 * std::numbers::sqrt2) * phase(-7 * t) *
           (a_2 - 6.0 * a_2 * e2 + 3.0 * a_2 * e4 + 2.0 * a_2 * e6 - 3.0 * e2 + 4.0 * e4 - e6);
    c[2] = a2 / 8.0 * phase(-6 * t) * (3.0 * a_2 - 12.0 * a_2 * e2 + 9.0 * a_2 * e4 - 3.0 * e2 - 2.0 * e4 + 5.0 * e6);
    c[3] = -a * a2 / (2.0 * std::numbers::sqrt2) * phase(-5 * t) * (1.0 - e2) * (1.0 - e2);
    c[4] = a2 / 8.0 * phase(-4 * t) * (1.0 - e4);
    return c;
}

StateVector evolved_coherent_state(double t, double alpha, int dim, double tail_tol) {
    StateVector coh = coherent_state(alpha * phase(-t), dim, tail_tol);
    return StateVector(coh.amplitudes() * phase(-0.5 * t), coh.norm_deficit());
}

Vector psi1_from(const AnsatzCoefficients &c, const StateVector &psi0, const FockOperator &x) {
    Vector power = psi0.amplitudes();
    Vector out = c[0] * power;
    for (int k = 1; k < 5; ++k) {
        power = x * power;
        out += c[k] * power;
    }
    return out;
}

Vector psi1_state(double t, double alpha, double a2, int dim, double tail_tol) {
    auto build = [&](int d) {
        StateVector psi0 = evolved_coherent_state(t, alpha, d, tail_tol);
        return std::pair{psi0, psi1_from(coherent_wavefunction_coeffs(t, alpha, a2), psi0, position_op(d))};
    };
    require_convergence(
        [&](int d) {
            auto [psi0, psi1] = build(d);
            return psi0.amplitudes().dot(psi1);
        },
        dim, tail_tol);
    require_convergence([&](int d) { return cplx{build(d).second.squaredNorm(), 0.0}; }, dim, tail_tol);
    return build(dim).second;
}

ClosedFormEnergies closed_form_energies(double t, double alpha, double eta) {
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2;
    const double c2 = std::cos(2 * t);
    const double c4 = std::cos(4 * t);
    ClosedFormEnergies q;
    q.E0 = 0.5 + a2;
    q.E1 = (3.0 + 6.0 * a2 * (2.0 + a2) + 2.0 * a2 * ((6.0 + 4.0 * a2) * c2 + a2 * c4)) / 16.0;
    q.E2 = (7.0 + 18.0 * a2 + 44.0 * a4 - 2.0 * (1.0 - 3.0 * a2 + 6.0 * a4) * c2 + (5.0 + 10.0 * a2 + 4.0 * a4) * c4) /
           16.0;
    q.n_t = (7.0 + 12.0 * a2 + 2.0 * (-1.0 + a2) * c2 - 5.0 * c4) / 8.0;
    q.B_t = -q.E0 * q.n_t + q.E1 + q.E2;
    q.B = q.E0 + eta * q.B_t;
    q.B_unexpanded = (q.E0 + eta * (q.E1 + q.E2)) / (1.0 + eta * q.n_t);
    return q;
}

TimeBound tmin_bound(double t, double alpha, double eta, double hbar) {
    auto q = closed_form_energies(t, alpha, eta);
    const double scale = std::numbers::pi * hbar / 2.0;
    return {scale / q.E0 * (1.0 - eta * q.B_t / q.E0), scale / q.B_unexpanded};
}

TimeBound heisenberg_dt(double t, double alpha, double eta, double hbar) {
    auto q = closed_form_energies(t, alpha, eta);
    return {hbar / q.E0 * (1.0 - eta * q.B_t / q.E0), hbar / q.B_unexpanded};
}

cplx fock_overlap_psi0_psi1(double t, double alpha, double a2, int dim, double tail_tol) {
    StateVector psi0 = evolved_coherent_state(t, alpha, dim, tail_tol);
    return psi0.amplitudes().dot(psi1_state(t, alpha, a2, dim, tail_tol));
}

cplx fock_psi1_H_psi0(double t, double alpha, double a2, int dim, double tail_tol) {
    StateVector psi0 = evolved_coherent_state(t, alpha, dim, tail_tol);
    Vector psi1 = psi1_state(t, alpha, a2, dim, tail_tol);
    return psi1.dot(hamiltonians(dim).H * psi0.amplitudes());
}

namespace {

double centre(double t, double alpha) { return std::numbers::sqrt2 * alpha * std::cos(t); }

// H psi0 / psi0 = (1 + x^2 - (sqrt2 beta - x)^2) / 2
cplx h_ratio(double t, double alpha, double x) {
    cplx shifted = std::numbers::sqrt2 * alpha * phase(-t) - x;
    return 0.5 * (1.0 + x * x - shifted * shifted);
}

} // namespace

cplx quadrature_overlap_psi0_psi1(double t, double alpha, double a2, const GaussHermiteRule &rule) {
    auto c = coherent_wavefunction_coeffs(t, alpha, a2);
    cplx sum = rule.integrate([&](double x) { return poly_at(c, x); }, centre(t, alpha));
    return sum / std::sqrt(std::numbers::pi);
}

cplx quadrature_psi1_H_psi0(double t, double alpha, double a2, const GaussHermiteRule &rule) {
    auto c = coherent_wavefunction_coeffs(t, alpha, a2);
    cplx sum = rule.integrate([&](double x) { return std::conj(poly_at(c, x)) * h_ratio(t, alpha, x); },
                              centre(t, alpha));
    return sum / std::sqrt(std::numbers::pi);
}

cplx quadrature_psi0_H_psi0(double t, double alpha, const GaussHermiteRule &rule) {
    cplx sum = rule.integrate([&](double x) { return h_ratio(t, alpha, x); }, centre(t, alpha));
    return sum / std::sqrt(std::numbers::pi);
}

EnergyAudit oracle_energy_audit(double t, double alpha, double eta, double a2, const NonlocalOperators &ops,
                                const NonlocalOperators &ops_double, double tail_tol) {
    if (ops_double.dim != 2 * ops.dim)
        throw Error(ErrorCode::DimensionMismatch, "audit needs operators at dim and 2*dim");
    NumericTerms at = numeric_terms(t, alpha, ops, tail_tol);
    NumericTerms twice = numeric_terms(t, alpha, ops_double, tail_tol);

    const double vals[] = {at.E0, at.ReH1, at.cross_unit, at.norm_unit};
    const double vals2[] = {twice.E0, twice.ReH1, twice.cross_unit, twice.norm_unit};
    double delta = 0.0;
    for (int i = 0; i < 4; ++i) {
        double d = std::abs(vals[i] - vals2[i]);
        double allowed = 10.0 * tail_tol * std::max(1.0, std::abs(vals[i]));
        if (d > allowed) {
            std::ostringstream msg;
            msg << "audit term " << i << " changes by " << d << " between dim " << ops.dim << " and " << ops_double.dim;
            throw TruncationError(msg.str(), d);
        }
        delta = std::max(delta, d);
    }

    EnergyAudit a;
    a.t = t;
    a.alpha = alpha;
    a.eta = eta;
    a.a2 = a2;
    a.dim = ops.dim;
    a.closed = closed_form_energies(t, alpha, eta);
    a.E0_numeric = at.E0;
    a.ReH1_numeric = at.ReH1;
    a.cross_per_a2 = at.cross_unit;
    a.norm_per_a2 = at.norm_unit;
    a.cross_numeric = a2 * at.cross_unit;
    a.norm_numeric = a2 * at.norm_unit;
    a.energy_numeric = (a.E0_numeric + eta * (a.ReH1_numeric + a.cross_numeric)) / (1.0 + eta * a.norm_numeric);

    a.E0_residual = a.E0_numeric - a.closed.E0;
    a.E1_residual = eta * (a.ReH1_numeric - a.closed.E1);
    a.E2_residual = eta * (a.cross_numeric - a.closed.E2);
    a.n_residual = eta * (a.norm_numeric - a.closed.n_t);
    a.B_residual = a.energy_numeric - a.closed.B;
    a.ratio_ReH1_over_E1 = a.ReH1_numeric / a.closed.E1;
    a.convergence_delta = delta;
    return a;
}

EnergyAudit oracle_energy_audit(double t, double alpha, double eta, double a2, int dim, double tail_tol) {
    static_cast<void>(NonlocalModel{eta, a2, dim});
    return oracle_energy_audit(t, alpha, eta, a2, NonlocalOperators(dim), NonlocalOperators(2 * dim), tail_tol);
}

A2Fit fit_a2(std::span<const double> per_a2, std::span<const double> target, double lo, double hi, int points) {
    if (per_a2.size() != target.size() || per_a2.empty())
        throw Error(ErrorCode::DimensionMismatch, "fit_a2 needs matching, non-empty samples");
    if (points < 2 || !(hi > lo))
        throw Error(ErrorCode::InvalidDimension, "fit_a2 needs at least two scan points over a non-empty range");
    const double count = static_cast<double>(per_a2.size());
    auto rms = [&](double a2) {
        double s = 0.0;
        for (std::size_t i = 0; i < per_a2.size(); ++i) {
            double r = a2 * per_a2[i] - target[i];
            s += r * r;
        }
        return std::sqrt(s / count);
    };
    A2Fit fit;
    double gg = 0.0, gt = 0.0;
    for (std::size_t i = 0; i < per_a2.size(); ++i) {
        gg += per_a2[i] * per_a2[i];
        gt += per_a2[i] * target[i];
    }
    fit.least_squares_a2 = gg > 0.0 ? gt / gg : 0.0;
    fit.rms_residual = std::numeric_limits<double>::infinity();
    for (int k = 0; k < points; ++k) {
        double a2 = lo + (hi - lo) * k / (points - 1);
        double r = rms(a2);
        fit.scan.emplace_back(a2, r);
        if (r < fit.rms_residual) {
            fit.rms_residual = r;
            fit.best_a2 = a2;
        }
    }
    return fit;
}

} // namespace qbounds
