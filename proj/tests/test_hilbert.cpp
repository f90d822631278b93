#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbounds/hilbert.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace qbounds;

TEST_CASE("ladder algebra holds away from the truncation edge") {
    for (int dim : {2, 3, 8, 33, 64, 256}) {
        auto [a, ad] = ladder_ops(dim);
        Matrix comm = (a * ad - ad * a).entries();
        for (int i = 0; i < dim - 1; ++i)
            CHECK(std::abs(comm(i, i) - 1.0) < 1e-12);
        CHECK(std::abs(comm(dim - 1, dim - 1) - cplx(1.0 - dim)) < 1e-12);
        Matrix off = comm;
        off.diagonal().setZero();
        CHECK(off.norm() < 1e-12);
        CHECK((ad * a - number_op(dim)).entries().norm() < 1e-12);
        CHECK((a.adjoint() - ad).entries().norm() == 0.0);
    }
}

TEST_CASE("position and momentum are Hermitian with the expected ground-state spread") {
    const int dim = 20;
    auto x = position_op(dim);
    auto p = momentum_op(dim);
    CHECK(x.is_hermitian(1e-14));
    CHECK(p.is_hermitian(1e-14));
    auto vac = StateVector::basis(dim, 0);
    CHECK(expectation(x * x, vac).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(expectation(p * p, vac).real() == doctest::Approx(0.5).epsilon(1e-14));
    // [x, p] = i below the edge
    Matrix comm = (x * p - p * x).entries();
    CHECK(std::abs(comm(3, 3) - cplx(0.0, 1.0)) < 1e-13);
}

TEST_CASE("operator algebra helpers") {
    testing::InstanceGenerator gen(11);
    FockOperator A(gen.gaussian(4, 4));
    CHECK((A.hermitian_part() + A.anti_hermitian_part() - A).entries().norm() < 1e-14);
    CHECK(A.hermitian_part().is_hermitian(1e-14));
    CHECK((A.pow(3) - A * A * A).entries().norm() < 1e-12);
    CHECK((A.pow(0) - FockOperator::identity(4)).entries().norm() == 0.0);
    CHECK_THROWS_AS(A.pow(-1), Error);
    CHECK_THROWS_AS(FockOperator(Matrix::Zero(2, 3)), Error);
    CHECK_THROWS_AS(A * FockOperator::identity(3), Error);
}

TEST_CASE("poisson tail matches the frozen reference") {
    CHECK(poisson_tail(4.0, 16) == doctest::Approx(4.8926107198778521554e-6).epsilon(1e-12));
    CHECK(poisson_tail(0.0, 1) == 0.0);
    CHECK(poisson_tail(1.0, 0) == doctest::Approx(1.0));
}

TEST_CASE("coherent states") {
    SUBCASE("normalization and mean number") {
        for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
            auto psi = coherent_state(alpha, 64);
            CHECK(psi.is_normalized(1e-13));
            CHECK(expectation(number_op(64), psi).real() == doctest::Approx(alpha * alpha).epsilon(1e-10));
            CHECK(psi.norm_deficit() <= 1e-10);
        }
    }
    SUBCASE("complex amplitude") {
        cplx beta{0.6, -0.8};
        auto psi = coherent_state(beta, 48);
        auto [a, ad] = ladder_ops(48);
        CHECK(std::abs(expectation(a, psi) - beta) < 1e-10);
    }
    SUBCASE("insufficient truncation is reported with the tail mass") {
        try {
            coherent_state(3.0, 10);
            FAIL("expected TruncationError");
        } catch (const TruncationError &e) {
            CHECK(e.code() == ErrorCode::TruncationInsufficient);
            CHECK(e.tail_mass() > 1e-10);
        }
    }
    SUBCASE("position moments follow the Gaussian formula") {
        const int dim = 80;
        auto x = position_op(dim);
        for (double alpha : {0.0, 0.5, 1.0, 1.5})
            for (double t : {0.0, 0.4, 1.3}) {
                auto psi = coherent_state(std::polar(alpha, -t), dim);
                for (int k = 1; k <= 4; ++k)
                    CHECK(expectation(x.pow(k), psi).real() ==
                          doctest::Approx(testing::coherent_x_moment(k, t, alpha)).epsilon(1e-10));
            }
        // alpha = 1, t = 0: <x^4>/2 = 43/8
        auto psi = coherent_state(1.0, dim);
        CHECK(0.5 * expectation(x.pow(4), psi).real() == doctest::Approx(43.0 / 8.0).epsilon(1e-12));
    }
}

TEST_CASE("density matrices are validated") {
    CHECK_NOTHROW(DensityMatrix(Matrix::Identity(3, 3) / 3.0));
    CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(3, 3) * 0.3), Error);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, Error);
    Matrix nh = Matrix::Identity(2, 2) / 2.0;
    nh(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{nh}, Error);

    RealVector p(2);
    p << 0.5, 0.4;
    try {
        density_from_probs(p, Matrix::Identity(2, 2));
        FAIL("expected InvalidProbabilities");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::InvalidProbabilities);
    }
    p << 0.5, 0.5;
    Matrix skew = Matrix::Identity(2, 2);
    skew(0, 1) = 0.2;
    CHECK_THROWS_AS(density_from_probs(p, skew), Error);
}

TEST_CASE("spectral decomposition and basis completion") {
    testing::InstanceGenerator gen(5);
    Matrix h = gen.hermitian(6);
    auto spec = hermitian_eigendecompose(h);
    CHECK(orthonormality_defect(spec.eigenvectors) < 1e-12);
    for (int i = 1; i < 6; ++i)
        CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i - 1));
    Matrix rebuilt = spec.eigenvectors * spec.eigenvalues.cast<cplx>().asDiagonal() * spec.eigenvectors.adjoint();
    CHECK((rebuilt - h).norm() < 1e-12);
    CHECK_THROWS_AS(hermitian_eigendecompose(gen.gaussian(3, 3)), Error);

    Vector v = gen.gaussian(5, 1).col(0);
    v.normalize();
    Matrix q = complete_basis(v);
    CHECK(orthonormality_defect(q) < 1e-12);
    CHECK((q.col(0) - v).norm() == 0.0);
    CHECK_THROWS_AS(complete_basis(2.0 * v), Error);
}

TEST_CASE("convergence checks compare dim and 2 dim") {
    auto mean_n = [](int d) { return expectation(number_op(d), coherent_state(1.0, d)); };
    CHECK(check_convergence(mean_n, 32).converged());
    auto drifting = [](int d) { return cplx(1.0 / d, 0.0); };
    CHECK_FALSE(check_convergence(drifting, 32).converged());
    CHECK_THROWS_AS(require_convergence(drifting, 32), TruncationError);
}
