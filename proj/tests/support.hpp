// Shared generators for the test suites.

#pragma once

#include <random>

#include "esd/numerics.hpp"

namespace esd::test {

inline Matrix random_complex(Eigen::Index n, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline Matrix random_hermitian(Eigen::Index n, std::mt19937& rng) {
    const Matrix m = random_complex(n, rng);
    return 0.5 * (m + m.adjoint());
}

inline Matrix random_density(Eigen::Index n, std::mt19937& rng) {
    const Matrix g = random_complex(n, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline Matrix random_unitary(Eigen::Index n, std::mt19937& rng) {
    return hermitian_eigen(random_hermitian(n, rng)).eigenvectors;
}

} // namespace esd::test
