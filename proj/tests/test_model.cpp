#include "doctest.h"

#include <cmath>
#include <random>

#include "esd/evolution.hpp"
#include "esd/model.hpp"
#include "support.hpp"

using namespace esd;

TEST_CASE("ModelParams validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.gamma = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidState);
    p.gamma = 0.0;
    p.n_max = 3;
    CHECK_THROWS_AS(p.validate(), InvalidState);
    p.n_max = 6;
    p.theta = std::nan("");
    CHECK_THROWS_AS(p.validate(), InvalidState);
}

TEST_CASE("effective Hamiltonian: all couplings zero gives the zero matrix") {
    ModelParams p;
    p.zeta1 = 0.0;
    p.zeta2 = 0.0;
    CHECK(build_effective_hamiltonian(p).norm() == 0.0);
}

TEST_CASE("effective Hamiltonian: ladder matrix elements") {
    ModelParams p;
    p.beta1 = 1.7;
    p.beta2 = 0.9;
    p.zeta1 = 1.3;
    p.zeta2 = 0.8;
    p.phi = 0.45;
    const Matrix h = build_effective_hamiltonian(p);
    const SpaceLayout layout = p.layout();
    const int i_ab0 = layout.index(0, 1, 0);
    const int i_bb2 = layout.index(1, 1, 2);
    const int i_ba0 = layout.index(1, 0, 0);

    // a†² |0> = sqrt2 |2>, so the ion-1 coupling element is sqrt2 zeta1
    CHECK(std::abs(h(i_bb2, i_ab0) - Complex(std::sqrt(2.0) * p.zeta1, 0.0)) <= 1e-12);
    // diagonal Stark term: a†a eigenvalue 2, beta1 per ion in |b>
    CHECK(std::abs(h(i_bb2, i_bb2) - Complex(4.0 * p.beta1, 0.0)) <= 1e-12);
    // ion-2 coupling carries the conjugate phase
    const Complex expected = std::sqrt(2.0) * p.zeta2 * std::polar(1.0, -p.phi);
    CHECK(std::abs(h(i_bb2, i_ba0) - expected) <= 1e-12);
}

TEST_CASE("effective Hamiltonian: Hermitian and conserves the excitation number") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int rep = 0; rep < 8; ++rep) {
        ModelParams p;
        p.beta1 = uni(rng);
        p.beta2 = uni(rng);
        p.zeta1 = uni(rng);
        p.zeta2 = uni(rng);
        p.phi = uni(rng);
        const Matrix h = build_effective_hamiltonian(p);
        CHECK((h - h.adjoint()).norm() <= 1e-12 * std::max(1.0, h.norm()));

        const Matrix n_exc = excitation_operator(p.layout());
        // structural zero, not just small
        CHECK((h * n_exc - n_exc * h).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("excitation operator diagonal values") {
    const SpaceLayout layout(6);
    const Matrix n_exc = excitation_operator(layout);
    CHECK(n_exc(layout.index(0, 1, 0), layout.index(0, 1, 0)) == Complex(2.0, 0.0));
    CHECK(n_exc(layout.index(1, 1, 2), layout.index(1, 1, 2)) == Complex(2.0, 0.0));
    CHECK(n_exc(layout.index(0, 0, 1), layout.index(0, 0, 1)) == Complex(5.0, 0.0));
}

TEST_CASE("initial density for the theta family") {
    const double pi = std::acos(-1.0);
    ModelParams p;
    const SpaceLayout layout = p.layout();
    const int i_ab0 = layout.index(0, 1, 0);
    const int i_ba0 = layout.index(1, 0, 0);

    Matrix rho = initial_density(p); // theta = 0
    CHECK(rho(i_ab0, i_ab0) == Complex(1.0, 0.0));
    CHECK(rho.trace() == Complex(1.0, 0.0));

    p.theta = pi / 4.0;
    rho = initial_density(p);
    CHECK(rho(i_ab0, i_ab0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rho(i_ba0, i_ba0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-15);

    p.theta = pi / 2.0;
    rho = initial_density(p);
    CHECK(rho(i_ba0, i_ba0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(rho(i_ab0, i_ab0)) < 1e-30);

    p.theta = 0.0;
    p.n0 = 1;
    rho = initial_density(p);
    CHECK(rho(layout.index(0, 1, 1), layout.index(0, 1, 1)) == Complex(1.0, 0.0));
}

TEST_CASE("stark_from_physical") {
    CHECK(stark_from_physical(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(stark_from_physical(2.0, 4.0) == doctest::Approx(1.0));
    CHECK(stark_from_physical(3.0, 2.0) == doctest::Approx(4.5));
    CHECK_THROWS_AS(stark_from_physical(1.0, 0.0), ZeroDetuning);
}

TEST_CASE("beta2 never enters the vacuum-family dynamics") {
    const double pi = std::acos(-1.0);
    std::vector<double> ts;
    for (int i = 0; i <= 10; ++i) ts.push_back(2.5 * i);
    for (double theta : {0.0, pi / 3.0}) {
        ModelParams p;
        p.beta1 = 2.0;
        p.gamma = 0.25;
        p.theta = theta;
        p.beta2 = 0.0;
        const auto base = evolve_series(p, ts);
        p.beta2 = 100.0;
        const auto shifted = evolve_series(p, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK(std::abs(base[i].negativity - shifted[i].negativity) <= 1e-12);
            CHECK(std::abs(base[i].purity - shifted[i].purity) <= 1e-12);
        }
    }
}

TEST_CASE("ion-exchange symmetry: swap couplings and theta -> pi/2 - theta") {
    const double pi = std::acos(-1.0);
    const double theta = 0.3;
    std::vector<double> t_phys;
    for (int i = 0; i <= 12; ++i) t_phys.push_back(0.7 * i);

    ModelParams a;
    a.zeta1 = 1.0;
    a.zeta2 = 1.5;
    a.theta = theta;
    a.beta1 = 0.8;
    const auto series_a = evolve_series(a, t_phys);

    ModelParams b = a;
    b.zeta1 = 1.5;
    b.zeta2 = 1.0;
    b.theta = pi / 2.0 - theta;
    // scaled time runs in units of zeta1, so matching physical times needs
    // the grid rescaled by the swapped coupling
    std::vector<double> t_scaled_eq;
    for (double t : t_phys) t_scaled_eq.push_back(1.5 * t);
    const auto series_b = evolve_series(b, t_scaled_eq);

    for (std::size_t i = 0; i < t_phys.size(); ++i)
        CHECK(std::abs(series_a[i].negativity - series_b[i].negativity) <= 1e-10);
}
