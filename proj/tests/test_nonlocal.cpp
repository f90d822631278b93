#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbounds/nonlocal.hpp"
#include "support/oracles.hpp"

using namespace qbounds;
using std::numbers::pi;

namespace {

void check_coeffs(const AnsatzCoefficients &got, const std::array<cplx, 5> &want) {
    for (int k = 0; k < 5; ++k) {
        CAPTURE(k);
        CHECK(std::abs(got[k] - want[k]) < 1e-13 * std::max(1.0, std::abs(want[k])));
    }
}

} // namespace

TEST_CASE("model parameters are validated") {
    CHECK_NOTHROW(NonlocalModel(0.01, 1.0, 8));
    CHECK_THROWS_AS(NonlocalModel(-0.01, 1.0, 64), Error);
    CHECK_THROWS_AS(NonlocalModel(0.01, 1.0, 4), Error);
    CHECK(NonlocalModel(0.01, 1.0, 64).first_order_regime());
    CHECK_FALSE(NonlocalModel(0.2, 1.0, 64).first_order_regime());
}

TEST_CASE("Hamiltonian pieces") {
    const int dim = 40;
    auto [H, H1] = hamiltonians(dim);
    CHECK(H.is_hermitian(0.0));
    for (int n = 0; n < dim; ++n)
        CHECK(H(n, n).real() == doctest::Approx(n + 0.5));
    // 2ixp + 1 is anti-Hermitian below the truncation edge
    CHECK_FALSE(H1.is_hermitian());
    auto vac = StateVector::basis(dim, 0);
    CHECK(expectation(H1, vac).real() == doctest::Approx(3.0 / 8.0).epsilon(1e-13));
    auto x = position_op(dim);
    FockOperator herm = x.pow(4) * cplx(0.5, 0.0);
    Matrix diff = (H1.hermitian_part() - herm).entries();
    CHECK(diff.topLeftCorner(dim - 1, dim - 1).norm() < 1e-12);
}

TEST_CASE("closed-form ansatz coefficients match the frozen references") {
    check_coeffs(coherent_wavefunction_coeffs(pi / 4, 0.0, 1.0), {cplx(0.3125, 0.125), 0.0, cplx(1.0, 0.25), 0.0, -0.25});
    check_coeffs(coherent_wavefunction_coeffs(pi / 3, 0.5, 1.0),
                 {cplx(0.4501953125, 0.24187818894760688), cplx(0.6297669769942689, 0.3253228564633908),
                  cplx(1.078125, -0.6765823467065927), cplx(-0.5303300858899106, 0.0),
                  cplx(-0.1875, 0.10825317547305482)});
    check_coeffs(coherent_wavefunction_coeffs(0.7, 1.3, 1.0),
                 {cplx(1.2504348711919027, -1.0164286712641133), cplx(-2.2662952854396923, 2.8293007325343273),
                  cplx(3.3368224605351497, -0.10004720392265012), cplx(-0.38519678036576455, -0.6586273832463495),
                  cplx(-0.24277779258358226, -0.04187351876948812)});
    // linear in a2
    auto one = coherent_wavefunction_coeffs(0.4, 0.8, 1.0);
    auto three = coherent_wavefunction_coeffs(0.4, 0.8, 3.0);
    for (int k = 0; k < 5; ++k)
        CHECK(std::abs(three[k] - 3.0 * one[k]) < 1e-13);
}

TEST_CASE("closed-form energies") {
    SUBCASE("ground state at t = 0") {
        auto q = closed_form_energies(0.0, 0.0, 0.01);
        CHECK(q.E0 == 0.5);
        CHECK(q.B_t / q.E0 == doctest::Approx(13.0 / 8.0).epsilon(1e-15));
        CHECK(q.B == doctest::Approx(0.5 + 0.01 * 13.0 / 16.0).epsilon(1e-15));
    }
    SUBCASE("B_t at alpha = 0 is 3/16 + (5/8) cos 4t") {
        for (double t : {0.0, 0.3, pi / 4, 1.9, 5.0})
            CHECK(closed_form_energies(t, 0.0, 0.0).B_t == doctest::Approx(3.0 / 16 + 0.625 * std::cos(4 * t)));
    }
    SUBCASE("E1 at alpha = 1, t = 0 is half of <x^4>/2") {
        CHECK(closed_form_energies(0.0, 1.0, 0.0).E1 == doctest::Approx(43.0 / 16.0).epsilon(1e-15));
    }
    SUBCASE("time bounds") {
        auto tb = tmin_bound(0.0, 1.0, 0.01);
        auto q = closed_form_energies(0.0, 1.0, 0.01);
        CHECK(tb.expanded == doctest::Approx(pi / (2 * q.E0) * (1 - 0.01 * q.B_t / q.E0)).epsilon(1e-15));
        CHECK(tb.unexpanded == doctest::Approx(pi / (2 * q.B_unexpanded)).epsilon(1e-15));
        auto hd = heisenberg_dt(0.0, 1.0, 0.01, 2.0);
        CHECK(hd.expanded == doctest::Approx(tmin_bound(0.0, 1.0, 0.01, 2.0).expanded * 2 / pi).epsilon(1e-15));
        CHECK(tmin_bound(0.3, 0.5, 0.0).expanded == doctest::Approx(pi / (2 * 0.75)).epsilon(1e-15));
    }
}

TEST_CASE("expanded and unexpanded time bounds differ at second order") {
    for (double alpha : {0.0, 0.5, 1.0, 2.0})
        for (double t : {0.0, 0.4, pi / 4, 2.0}) {
            auto gap = [&](double eta) {
                auto b = tmin_bound(t, alpha, eta);
                return std::abs(b.expanded - b.unexpanded);
            };
            CAPTURE(alpha);
            CAPTURE(t);
            const double ratio = gap(1e-3) / gap(5e-4);
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
}

TEST_CASE("evolved coherent state follows the phase rotation") {
    const int dim = 48;
    auto psi = evolved_coherent_state(0.9, 1.2, dim);
    auto [a, ad] = ladder_ops(dim);
    CHECK(std::abs(expectation(a, psi) - std::polar(1.2, -0.9)) < 1e-10);
    auto x = position_op(dim);
    CHECK(expectation(x, psi).real() == doctest::Approx(testing::coherent_x_moment(1, 0.9, 1.2)).epsilon(1e-10));
}

TEST_CASE("Gauss-Hermite rule") {
    GaussHermiteRule rule(64);
    CHECK(rule.size() == 64);
    for (int i = 1; i < rule.size(); ++i)
        CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    CHECK(rule.integrate([](double) { return 1.0; }) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
    CHECK(rule.integrate([](double x) { return x * x; }) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-14));
    // shifted Gaussian moments
    const double m = 0.8;
    for (int k = 0; k <= 4; ++k) {
        double v = rule.integrate([k](double x) { return std::pow(x, k); }, m) / std::sqrt(pi);
        CHECK(v == doctest::Approx(testing::gaussian_moment(k, m, 0.5)).epsilon(1e-13));
    }
    CHECK_THROWS(GaussHermiteRule(0));
}

TEST_CASE("Fock and quadrature overlaps agree") {
    GaussHermiteRule rule(64), rule2(128);
    for (double alpha : {0.0, 0.5, 1.0})
        for (double t : {0.0, pi / 4, pi / 2}) {
            CAPTURE(alpha);
            CAPTURE(t);
            cplx fo = fock_overlap_psi0_psi1(t, alpha, 1.0, 64);
            cplx qo = quadrature_overlap_psi0_psi1(t, alpha, 1.0, rule);
            CHECK(std::abs(fo - qo) < 1e-9);
            cplx fh = fock_psi1_H_psi0(t, alpha, 1.0, 64);
            cplx qh = quadrature_psi1_H_psi0(t, alpha, 1.0, rule);
            CHECK(std::abs(fh - qh) < 1e-9);
            CHECK(std::abs(qh - quadrature_psi1_H_psi0(t, alpha, 1.0, rule2)) < 1e-12);
            CHECK(quadrature_psi0_H_psi0(t, alpha, rule).real() == doctest::Approx(0.5 + alpha * alpha).epsilon(1e-13));
        }
}

TEST_CASE("normalization overlap frozen values") {
    auto norm = [](double t, double alpha) { return 2.0 * fock_overlap_psi0_psi1(t, alpha, 1.0, 64).real(); };
    CHECK(std::abs(norm(0.0, 0.0)) < 1e-12);
    CHECK(norm(pi / 4, 0.0) == doctest::Approx(1.25).epsilon(1e-11));
    CHECK(norm(pi / 4, 1.0) == doctest::Approx(2.75).epsilon(1e-11));
    CHECK(norm(0.5, 0.5) == doctest::Approx(1.1696728048878672688).epsilon(1e-11));
    // alpha = 0: (4 - 3 sin^2 t) sin^2 t, which is not a multiple of n(t)
    for (double t : {0.2, 1.0, 2.5}) {
        double s2 = std::sin(t) * std::sin(t);
        CHECK(norm(t, 0.0) == doctest::Approx((4 - 3 * s2) * s2).epsilon(1e-11));
    }
}

TEST_CASE("energy audit") {
    SUBCASE("eta = 0 residuals vanish") {
        for (double alpha : {0.0, 0.5, 1.0, 1.5})
            for (double t : {0.0, 0.7, 2.0}) {
                auto a = oracle_energy_audit(t, alpha, 0.0, 1.0, 48);
                CHECK(std::abs(a.E0_residual) <= 1e-9);
                CHECK(a.E1_residual == 0.0);
                CHECK(a.E2_residual == 0.0);
                CHECK(a.n_residual == 0.0);
                CHECK(std::abs(a.B_residual) <= 1e-9);
            }
    }
    SUBCASE("Re<H1> is twice E1") {
        for (double alpha : {0.0, 0.5, 1.0, 1.5})
            for (double t : {0.0, 0.3, pi / 4, 1.7, 3.0}) {
                auto a = oracle_energy_audit(t, alpha, 0.01, 1.0, 48);
                CHECK(a.ratio_ReH1_over_E1 == doctest::Approx(2.0).epsilon(1e-9));
            }
    }
    SUBCASE("insufficient truncation throws") {
        CHECK_THROWS_AS(oracle_energy_audit(0.0, 3.0, 0.01, 1.0, 16), TruncationError);
    }
    SUBCASE("a2 scales the psi1 terms") {
        auto one = oracle_energy_audit(0.4, 0.8, 0.01, 1.0, 48);
        auto two = oracle_energy_audit(0.4, 0.8, 0.01, 2.0, 48);
        CHECK(two.norm_numeric == doctest::Approx(2 * one.norm_numeric).epsilon(1e-12));
        CHECK(two.cross_per_a2 == doctest::Approx(one.cross_per_a2).epsilon(1e-12));
    }
}

TEST_CASE("a2 fit") {
    std::vector<double> unit{1.0, 2.0, -1.0, 0.5};
    std::vector<double> target{0.5, 1.0, -0.5, 0.25};
    auto fit = fit_a2(unit, target);
    CHECK(fit.best_a2 == doctest::Approx(0.5));
    CHECK(fit.least_squares_a2 == doctest::Approx(0.5));
    CHECK(fit.rms_residual < 1e-14);
    CHECK(fit.scan.size() == 41);
    CHECK_THROWS_AS(fit_a2(unit, std::vector<double>{1.0}), Error);
}
