// model.hpp — effective two-ion Hamiltonian with ac-Stark shifts and the
// theta-parameterised initial density operator.
//
// All energies are expressed in units of the coupling lambda (= zeta1 when the
// two couplings are equal, zeta1 otherwise); time is the dimensionless scaled
// time lambda*t and the dephasing rate gamma is in units of 1/lambda.

#pragma once

#include "esd/hilbert.hpp"
#include "esd/numerics.hpp"

namespace esd {

struct ModelParams {
    double beta1 = 0.0; // Stark shift of level b (units of lambda)
    double beta2 = 0.0; // Stark shift of level a (units of lambda)
    double zeta1 = 1.0; // two-phonon coupling, ion 1
    double zeta2 = 1.0; // two-phonon coupling, ion 2
    double phi = 0.0;   // laser phase on ion 2 (radians)
    double gamma = 0.0; // phase decoherence rate (units of 1/lambda)
    double theta = 0.0; // initial-state mixing angle (radians)
    int n_max = 6;      // Fock truncation
    int n0 = 0;         // initial phonon number

    // Throws InvalidState naming the first offending field.
    void validate() const;

    SpaceLayout layout() const { return SpaceLayout(n_max); }
};

// The scaled-time unit: |zeta1|, or 1 when zeta1 vanishes.
double lambda_unit(const ModelParams& p);

// H = a†a (b1 Sbb1 + b2 Saa1) + a†a (b1 Sbb2 + b2 Saa2)
//   + z1 (Sab1 a² + Sba1 a†²) + z2 (e^{i phi} Sab2 a² + e^{-i phi} Sba2 a†²)
// Hermitian; commutes with excitation_operator exactly.
Matrix build_effective_hamiltonian(const ModelParams& p);

// N = a†a + 2 (Saa1 + Saa2); diagonal with exact integer entries, so the
// commutator with the Hamiltonian is a structural zero.
Matrix excitation_operator(const SpaceLayout& layout);

// rho(0) = (cos²theta |ab><ab| + sin²theta |ba><ba|) ⊗ |n0><n0|
Matrix initial_density(const ModelParams& p);

// Stark shift from coupling and detuning: zeta² / delta.
double stark_from_physical(double zeta, double delta);

} // namespace esd
