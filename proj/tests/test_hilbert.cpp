#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "esd/hilbert.hpp"
#include "support.hpp"

using namespace esd;

TEST_CASE("SpaceLayout indexing is a bijection") {
    const SpaceLayout layout(3);
    CHECK(layout.dim_fock() == 4);
    CHECK(layout.dim_total() == 16);
    std::set<int> seen;
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n <= 3; ++n) {
                const int idx = layout.index(q1, q2, n);
                CHECK(idx >= 0);
                CHECK(idx < 16);
                seen.insert(idx);
            }
    CHECK(seen.size() == 16);
    CHECK_THROWS_AS(layout.index(2, 0, 0), InvalidLevel);
    CHECK_THROWS_AS(layout.index(0, 0, 4), DimensionMismatch);
    CHECK_THROWS_AS(SpaceLayout(-1), InvalidState);
}

TEST_CASE("annihilation operator ladder elements") {
    {
        const Matrix a = annihilation_op(SpaceLayout(1));
        CHECK(a(0, 1) == Complex(1.0, 0.0));
        CHECK(a.cwiseAbs().sum() == doctest::Approx(1.0));
    }
    {
        const Matrix a = annihilation_op(SpaceLayout(2));
        CHECK(a(1, 2).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        // a |0> = 0
        CHECK(a.col(0).norm() == 0.0);
    }
    {
        const SpaceLayout layout(2);
        const Matrix full = annihilation_op(layout, /*embedded=*/true);
        CHECK(full.rows() == layout.dim_total());
        CHECK(full(layout.index(1, 0, 0), layout.index(1, 0, 1)) == Complex(1.0, 0.0));
    }
}

TEST_CASE("ion operators") {
    const SpaceLayout layout(2);
    const Matrix saa = ion_op(IonLevel::a, IonLevel::a, 1, layout);
    const Matrix sbb = ion_op(IonLevel::b, IonLevel::b, 1, layout);
    const Matrix sab = ion_op(IonLevel::a, IonLevel::b, 1, layout);
    const Matrix sba = ion_op(IonLevel::b, IonLevel::a, 1, layout);

    CHECK((saa + sbb - Matrix::Identity(layout.dim_total(), layout.dim_total())).norm() ==
          0.0);
    CHECK((sab.adjoint() - sba).norm() == 0.0);
    CHECK((sab * sba - saa).norm() == 0.0);
    CHECK_THROWS_AS(ion_op(IonLevel::a, IonLevel::b, 3, layout), InvalidLevel);
}

TEST_CASE("tensor product") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK((tensor(i2, i2) - Matrix::Identity(4, 4)).norm() == 0.0);

    Matrix d10 = Matrix::Zero(2, 2);
    d10(0, 0) = 1.0;
    Matrix d01 = Matrix::Zero(2, 2);
    d01(1, 1) = 1.0;
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK((tensor(d10, d01) - expected).norm() == 0.0);

    std::mt19937 rng(17);
    const Matrix a = test::random_complex(2, rng);
    const Matrix b = test::random_complex(2, rng);
    const Matrix c = test::random_complex(2, rng);
    const Matrix d = test::random_complex(2, rng);
    // mixed-product property
    CHECK((tensor(a, b) * tensor(c, d) - tensor(a * c, b * d)).norm() <= 1e-12);
    // associativity up to index bookkeeping
    CHECK((tensor(tensor(a, b), c) - tensor(a, tensor(b, c))).norm() <= 1e-12);
}

TEST_CASE("partial trace over the Fock mode") {
    const SpaceLayout layout(4);
    std::mt19937 rng(23);
    const Matrix rho_q = test::random_density(4, rng);

    Matrix vacuum = Matrix::Zero(5, 5);
    vacuum(0, 0) = 1.0;
    CHECK((partial_trace_fock(tensor(rho_q, vacuum), layout) - rho_q).norm() == 0.0);

    Matrix mixed = Matrix::Zero(5, 5);
    mixed(0, 0) = 0.3;
    mixed(2, 2) = 0.25;
    mixed(4, 4) = 0.45;
    CHECK((partial_trace_fock(tensor(rho_q, mixed), layout) - rho_q).norm() <= 1e-12);

    // (|ab>|0> + |bb>|2>)/sqrt2: populations 1/2 on ab and bb, the ab<->bb
    // coherence dies because <0|2> = 0
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(layout.dim_total());
    psi(layout.index(0, 1, 0)) = 1.0 / std::sqrt(2.0);
    psi(layout.index(1, 1, 2)) = 1.0 / std::sqrt(2.0);
    const Matrix reduced = partial_trace_fock(psi * psi.adjoint(), layout);
    CHECK(reduced(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(reduced(3, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(reduced(0, 0)) < 1e-15);
    CHECK(std::abs(reduced(2, 2)) < 1e-15);
    CHECK(std::abs(reduced(1, 3)) < 1e-15);

    CHECK_THROWS_AS(partial_trace_fock(Matrix::Identity(7, 7), layout), DimensionMismatch);
}

TEST_CASE("partial trace is linear") {
    const SpaceLayout layout(2);
    std::mt19937 rng(29);
    const Matrix r1 = test::random_complex(layout.dim_total(), rng);
    const Matrix r2 = test::random_complex(layout.dim_total(), rng);
    const Complex alpha(0.3, -0.4);
    const Complex beta(1.1, 0.2);
    const Matrix lhs = partial_trace_fock(alpha * r1 + beta * r2, layout);
    const Matrix rhs =
        alpha * partial_trace_fock(r1, layout) + beta * partial_trace_fock(r2, layout);
    CHECK((lhs - rhs).norm() <= 1e-12);
}

TEST_CASE("partial transpose") {
    Matrix product = Matrix::Zero(4, 4);
    product(0, 0) = 1.0;
    CHECK((partial_transpose(product, 2) - product).norm() == 0.0);

    // Bell state (|ab> + |ba>)/sqrt2: PT spectrum {1/2, 1/2, 1/2, -1/2}
    Eigen::Vector4cd bell;
    bell << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
    const Matrix pt = partial_transpose(bell * bell.adjoint(), 2);
    const auto dec = hermitian_eigen(pt);
    CHECK(dec.eigenvalues(0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(dec.eigenvalues(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dec.eigenvalues(2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dec.eigenvalues(3) == doctest::Approx(0.5).epsilon(1e-14));

    std::mt19937 rng(31);
    const Matrix rho = test::random_density(4, rng);
    // involution, trace and Hermiticity preservation
    CHECK((partial_transpose(partial_transpose(rho, 2), 2) - rho).norm() == 0.0);
    const Matrix pt2 = partial_transpose(rho, 2);
    CHECK(std::abs(pt2.trace() - rho.trace()) == 0.0);
    CHECK((pt2 - pt2.adjoint()).norm() <= 1e-15);

    // spectra over subsystem 1 and 2 coincide
    const auto d1 = hermitian_eigen(partial_transpose(rho, 1));
    const auto d2 = hermitian_eigen(partial_transpose(rho, 2));
    CHECK((d1.eigenvalues - d2.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);

    CHECK_THROWS_AS(partial_transpose(Matrix::Identity(3, 3), 2), DimensionMismatch);
    CHECK_THROWS_AS(partial_transpose(rho, 3), InvalidLevel);
}
