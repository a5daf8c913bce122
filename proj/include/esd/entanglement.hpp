// entanglement.hpp — negativity and concurrence of the reduced two-qubit
// state, the X-state shortcut, and the 3-dimensional invariant-subspace
// oracle used to cross-check the full pipeline.

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "esd/model.hpp"
#include "esd/numerics.hpp"

namespace esd {

// One time sample of the entanglement pipeline.
struct EntanglementRecord {
    double scaled_time = 0.0; // lambda * t
    double negativity = 0.0;
    double concurrence = 0.0;
    double purity = 0.0;      // Tr (rho_reduced)^2
    double trace_error = 0.0; // |Tr rho(t) - 1| of the full state
};

// Density matrix on span{|a,b,0>, |b,b,2>, |b,a,0>}, the invariant subspace
// reached from the vacuum initial family.
struct SubspaceState {
    Matrix rho; // 3x3 Hermitian, unit trace

    void validate() const;
};

// Negativity 2 max(0, -sum of negative eigenvalues) of the partial transpose
// over qubit 2. PT eigenvalues in (-1e-12, 0) count as zero so a sudden-death
// zero is reported as a clean zero.
double negativity(const Matrix& rho4);

// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4) from the spin-flipped
// state.
double concurrence(const Matrix& rho4);

// Closed-form negativity of an X-state with populations (aa, ab, ba, bb) and
// a single ab<->ba coherence. With zero |aa> population this reduces to
// sqrt(p_bb^2 + 4|c|^2) - p_bb.
double xstate_negativity(const std::array<double, 4>& populations, Complex coherence);

// Restriction of the effective Hamiltonian to the invariant subspace:
//   [[0, sqrt2 z1, 0], [sqrt2 z1, 4 b1, sqrt2 z2 e^{-i phi}],
//    [0, sqrt2 z2 e^{i phi}, 0]]
Matrix subspace_hamiltonian(const ModelParams& p);

// Analytic oracle: evolves the theta-mixture inside the 3-dimensional
// subspace with the spectral closed form, reconstructs the reduced X-state
// and applies the X-state shortcut. Requires n0 = 0.
std::vector<std::pair<double, double>>
oracle_negativity_series(const ModelParams& p, const std::vector<double>& scaled_times);

} // namespace esd
