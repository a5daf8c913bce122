// evolution.hpp — propagation of the density operator under the intrinsic
// dephasing master equation
//
//   d rho / dt = -i [H, rho] - (gamma / 2) [H, [H, rho]]
//
// by two independent routes: an exact spectral closed form (the production
// path) and the operator-sum series (a verification oracle). In the H
// eigenbasis the closed form reads
//
//   rho~_jk(t) = exp(-i (E_j - E_k) t) exp(-(gamma t / 2)(E_j - E_k)^2) rho~_jk(0);
//
// see docs/method.md for the derivation from the series.

#pragma once

#include <vector>

#include "esd/entanglement.hpp"
#include "esd/model.hpp"
#include "esd/numerics.hpp"

namespace esd {

struct Propagator {
    HermitianEigenDecomposition eigen;
    double gamma = 0.0;
    Eigen::MatrixXd gaps; // gaps(j,k) = E_j - E_k
};

Propagator make_propagator(const Matrix& h, double gamma);

// Exact spectral propagation; trace-preserving, Hermiticity-preserving,
// positive.
Matrix propagate_closed_form(const Matrix& rho0, const Propagator& prop, double t);

// Literal operator-sum series
//   rho(t) = sum_m ((gamma t)^m / m!) M_m rho(0) M_m†,
//   M_m = H^m exp(-i H t) exp(-(gamma t / 2) H^2),
// summed in increasing m. The terms are positive semidefinite and their
// traces sum to one, so the truncation tail is bounded by the missing trace;
// the sum stops once the added term's Frobenius norm is below tol and the
// accumulated trace is within tol of one. Matrix exponentials use scaling and
// squaring; no eigendecomposition is involved. Throws SeriesNotConverged when
// max_terms is reached first.
Matrix propagate_kraus_series(const Matrix& rho0, const Matrix& h, double gamma,
                              double t, double tol = 1e-12, int max_terms = 200);

// Series-route propagation for parameter regimes where the single-shot series
// is outside its floating-point convergence domain (gamma t E^2 large): the
// computation is restricted to the index set reachable from the state's
// support through the nonzero pattern of h (an exactly invariant subspace),
// and the channel's exact semigroup law splits the interval into substeps
// with gamma tau E^2 bounded, applying the literal series per substep.
Matrix propagate_kraus_stepped(const Matrix& rho0, const Matrix& h, double gamma,
                               double t, double tol = 1e-12);

// Full pipeline over an ascending time grid (scaled time units): one record
// per time, all from a single eigendecomposition.
std::vector<EntanglementRecord>
evolve_series(const ModelParams& p, const std::vector<double>& scaled_times);

} // namespace esd
