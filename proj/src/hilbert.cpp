#include "esd/hilbert.hpp"

#include <cmath>
#include <string>

namespace esd {

SpaceLayout::SpaceLayout(int n_max_) : n_max(n_max_) {
    if (n_max < 0)
        throw InvalidState("SpaceLayout: n_max must be >= 0");
}

int SpaceLayout::index(int q1, int q2, int n) const {
    if (q1 < 0 || q1 > 1 || q2 < 0 || q2 > 1)
        throw InvalidLevel("SpaceLayout::index: qubit index must be 0 or 1");
    if (n < 0 || n > n_max)
        throw DimensionMismatch("SpaceLayout::index: Fock index out of range");
    return (2 * q1 + q2) * (n_max + 1) + n;
}

Matrix annihilation_op(const SpaceLayout& layout, bool embedded) {
    const int d = layout.dim_fock();
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    if (!embedded) return a;
    return tensor(Matrix::Identity(4, 4), a);
}

Matrix ion_op(IonLevel l, IonLevel m, int ion, const SpaceLayout& layout) {
    if (ion != 1 && ion != 2)
        throw InvalidLevel("ion_op: ion must be 1 or 2, got " + std::to_string(ion));
    Matrix p = Matrix::Zero(2, 2);
    p(static_cast<int>(l), static_cast<int>(m)) = 1.0;
    const Matrix i2 = Matrix::Identity(2, 2);
    const Matrix ifock = Matrix::Identity(layout.dim_fock(), layout.dim_fock());
    const Matrix qubits = (ion == 1) ? tensor(p, i2) : tensor(i2, p);
    return tensor(qubits, ifock);
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace_fock(const Matrix& rho, const SpaceLayout& layout) {
    const int d = layout.dim_fock();
    if (rho.rows() != layout.dim_total() || rho.cols() != layout.dim_total())
        throw DimensionMismatch("partial_trace_fock: expected dimension " +
                                std::to_string(layout.dim_total()));
    Matrix r4 = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r4(i, j) = rho.block(i * d, j * d, d, d).trace();
    return r4;
}

Matrix partial_transpose(const Matrix& rho4, int subsystem) {
    if (rho4.rows() != 4 || rho4.cols() != 4)
        throw DimensionMismatch("partial_transpose: expected a 4x4 matrix");
    if (subsystem != 1 && subsystem != 2)
        throw InvalidLevel("partial_transpose: subsystem must be 1 or 2");
    Matrix pt = Matrix::Zero(4, 4);
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int p1 = 0; p1 < 2; ++p1)
                for (int p2 = 0; p2 < 2; ++p2) {
                    // transpose the chosen qubit's pair of indices only
                    const int row = (subsystem == 2) ? 2 * q1 + p2 : 2 * p1 + q2;
                    const int col = (subsystem == 2) ? 2 * p1 + q2 : 2 * q1 + p2;
                    pt(row, col) = rho4(2 * q1 + q2, 2 * p1 + p2);
                }
    return pt;
}

} // namespace esd
