#include "esd/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "esd/hilbert.hpp"

namespace esd {

namespace {

// PT eigenvalues in (-kNegligible, 0) are round-off, not entanglement.
constexpr double kNegligible = 1e-12;

// Spectral dead zone for the concurrence construction: the states here are
// unit trace, so eigenvalues this small are round-off images of exact zeros,
// and taking their square root would turn eps-level noise into sqrt(eps)
// output noise.
constexpr double kSpectralDustFloor = 1e-13;

void validate_two_qubit_state(const Matrix& rho4, const char* who) {
    if (rho4.rows() != 4 || rho4.cols() != 4)
        throw DimensionMismatch(std::string(who) + ": expected a 4x4 matrix");
    if ((rho4 - rho4.adjoint()).norm() > 1e-8 * std::max(1.0, rho4.norm()))
        throw InvalidState(std::string(who) + ": state is not Hermitian");
    if (std::abs(rho4.trace().real() - 1.0) > 1e-8)
        throw InvalidState(std::string(who) + ": state trace is not 1");
    const auto dec = hermitian_eigen(0.5 * (rho4 + rho4.adjoint()));
    if (dec.eigenvalues.minCoeff() < -1e-8)
        throw InvalidState(std::string(who) + ": state is not positive semidefinite");
}

Matrix spin_flip(const Matrix& rho4) {
    Matrix yy = Matrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy * rho4.conjugate() * yy;
}

Matrix psd_sqrt(const Matrix& m) {
    const auto dec = hermitian_eigen(0.5 * (m + m.adjoint()));
    const Eigen::Index n = dec.eigenvalues.size();
    Matrix s = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double ev = dec.eigenvalues(j) > kSpectralDustFloor ? dec.eigenvalues(j) : 0.0;
        s += std::sqrt(ev) * dec.eigenvectors.col(j) * dec.eigenvectors.col(j).adjoint();
    }
    return s;
}

} // namespace

double negativity(const Matrix& rho4) {
    validate_two_qubit_state(rho4, "negativity");
    const auto dec = hermitian_eigen(partial_transpose(rho4, 2));
    double negative_sum = 0.0;
    for (Eigen::Index j = 0; j < dec.eigenvalues.size(); ++j)
        if (dec.eigenvalues(j) < -kNegligible) negative_sum += dec.eigenvalues(j);
    return 2.0 * std::max(0.0, -negative_sum);
}

double concurrence(const Matrix& rho4) {
    validate_two_qubit_state(rho4, "concurrence");
    // mu_i are the square roots of the eigenvalues of rho rho~, equal to the
    // eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).
    const Matrix s = psd_sqrt(rho4);
    const Matrix k = s * spin_flip(rho4) * s;
    const auto dec = hermitian_eigen(0.5 * (k + k.adjoint()));
    std::array<double, 4> mu{};
    for (int j = 0; j < 4; ++j)
        mu[static_cast<std::size_t>(j)] =
            dec.eigenvalues(j) > kSpectralDustFloor ? std::sqrt(dec.eigenvalues(j)) : 0.0;
    std::sort(mu.begin(), mu.end(), std::greater<double>());
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double xstate_negativity(const std::array<double, 4>& populations, Complex coherence) {
    double sum = 0.0;
    for (double pop : populations) {
        if (!std::isfinite(pop) || pop < -kNegligible)
            throw InvalidState("xstate_negativity: populations must be nonnegative");
        sum += pop;
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw InvalidState("xstate_negativity: populations must sum to 1");
    const double c2 = std::norm(coherence);
    if (c2 > populations[1] * populations[2] + 1e-12)
        throw InvalidState("xstate_negativity: coherence violates positivity");

    // PT moves the ab<->ba coherence into the {aa,bb} block; its smaller
    // eigenvalue is the only candidate negative one.
    const double p_aa = populations[0];
    const double p_bb = populations[3];
    const double lam =
        0.5 * (p_aa + p_bb - std::sqrt((p_aa - p_bb) * (p_aa - p_bb) + 4.0 * c2));
    if (lam >= -kNegligible) return 0.0;
    return 2.0 * (-lam);
}

void SubspaceState::validate() const {
    if (rho.rows() != 3 || rho.cols() != 3)
        throw DimensionMismatch("SubspaceState: expected a 3x3 matrix");
    if ((rho - rho.adjoint()).norm() > 1e-10 * std::max(1.0, rho.norm()))
        throw InvalidState("SubspaceState: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10)
        throw InvalidState("SubspaceState: trace is not 1");
    const auto dec = hermitian_eigen(0.5 * (rho + rho.adjoint()));
    if (dec.eigenvalues.minCoeff() < -1e-10)
        throw InvalidState("SubspaceState: not positive semidefinite");
}

Matrix subspace_hamiltonian(const ModelParams& p) {
    const double s2 = std::sqrt(2.0);
    const Complex phase = std::polar(1.0, p.phi);
    Matrix h3 = Matrix::Zero(3, 3);
    h3(0, 1) = s2 * p.zeta1;
    h3(1, 0) = s2 * p.zeta1;
    h3(1, 1) = 4.0 * p.beta1;
    h3(1, 2) = s2 * p.zeta2 * std::conj(phase);
    h3(2, 1) = s2 * p.zeta2 * phase;
    return h3;
}

std::vector<std::pair<double, double>>
oracle_negativity_series(const ModelParams& p, const std::vector<double>& scaled_times) {
    p.validate();
    if (p.n0 != 0)
        throw UnsupportedInitialState("oracle_negativity_series: requires n0 = 0");

    const Matrix h3 = subspace_hamiltonian(p);
    const double unit = lambda_unit(p);
    const auto dec = hermitian_eigen(h3);
    const Matrix& v = dec.eigenvectors;

    Matrix rho3 = Matrix::Zero(3, 3);
    rho3(0, 0) = std::cos(p.theta) * std::cos(p.theta); // |a,b,0>
    rho3(2, 2) = std::sin(p.theta) * std::sin(p.theta); // |b,a,0>
    const Matrix rt0 = v.adjoint() * rho3 * v;

    Eigen::Matrix3d gaps;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) gaps(j, k) = dec.eigenvalues(j) - dec.eigenvalues(k);

    std::vector<std::pair<double, double>> out;
    out.reserve(scaled_times.size());
    const double gamma = p.gamma / unit;
    for (double ts : scaled_times) {
        const double t = ts / unit;
        Matrix rt = rt0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                rt(j, k) *= std::exp(-0.5 * gamma * t * gaps(j, k) * gaps(j, k)) *
                            std::polar(1.0, -gaps(j, k) * t);
        SubspaceState state{v * rt * v.adjoint()};
        state.validate();
        // basis order (|a,b,0>, |b,b,2>, |b,a,0>); only the 0<->2 coherence
        // survives the Fock trace.
        const std::array<double, 4> pops{0.0, state.rho(0, 0).real(), state.rho(2, 2).real(),
                                         state.rho(1, 1).real()};
        out.emplace_back(ts, xstate_negativity(pops, state.rho(0, 2)));
    }
    return out;
}

} // namespace esd
