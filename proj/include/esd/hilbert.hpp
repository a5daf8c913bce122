// hilbert.hpp — composite space (qubit ⊗ qubit ⊗ truncated Fock), elementary
// operators, tensor products, partial trace and partial transpose.

#pragma once

#include "esd/numerics.hpp"

namespace esd {

// Canonical ordering: |a> -> 0, |b> -> 1, two-qubit basis |aa>,|ab>,|ba>,|bb>,
// Fock index fastest.
enum class IonLevel { a = 0, b = 1 };

struct SpaceLayout {
    int n_max = 0; // maximum Fock occupation

    explicit SpaceLayout(int n_max_);

    int dim_fock() const { return n_max + 1; }
    int dim_total() const { return 4 * (n_max + 1); }

    // index(q1, q2, n) = (2 q1 + q2) (n_max + 1) + n
    int index(int q1, int q2, int n) const;
};

// Ladder operator <n-1| a |n> = sqrt(n) on the bare Fock factor; with
// embedded = true the operator is lifted to the full space (identity on the
// qubits).
Matrix annihilation_op(const SpaceLayout& layout, bool embedded = false);

// |l><m| on the named ion (1 or 2), identity on the other ion and the Fock
// factor.
Matrix ion_op(IonLevel l, IonLevel m, int ion, const SpaceLayout& layout);

// Kronecker product, left factor major.
Matrix tensor(const Matrix& a, const Matrix& b);

// Trace over the Fock factor; input dim_total x dim_total, output 4x4 over
// |aa>,|ab>,|ba>,|bb>. Linear; the caller is responsible for feeding states
// of the intended trace.
Matrix partial_trace_fock(const Matrix& rho, const SpaceLayout& layout);

// Transpose the named qubit's indices of a 4x4 two-qubit operator.
Matrix partial_transpose(const Matrix& rho4, int subsystem = 2);

} // namespace esd
