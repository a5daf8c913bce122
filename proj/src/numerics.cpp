#include "esd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace esd {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index p = 0; p < a.rows(); ++p)
        for (Eigen::Index q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

} // namespace

HermitianEigenDecomposition hermitian_eigen(const Matrix& m, int max_sweeps) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("hermitian_eigen: matrix must be square");
    const Eigen::Index n = m.rows();
    const double norm_m = m.norm();
    const double herm_defect = (m - m.adjoint()).norm();
    if (herm_defect > 1e-10 * std::max(1.0, norm_m))
        throw NonHermitianInput("hermitian_eigen: input is not Hermitian within tolerance");

    // Work on the symmetrised copy; the defect is within the input tolerance.
    Matrix a = 0.5 * (m + m.adjoint());
    Matrix v = Matrix::Identity(n, n);

    const double off_tol = norm_m > 0.0 ? 1e-12 * norm_m : 1e-12;
    // Pivots below this cannot push the off-diagonal norm above off_tol.
    const double pivot_tol = off_tol / (4.0 * static_cast<double>(std::max<Eigen::Index>(n, 1)));

    bool converged = off_diagonal_norm(a) <= off_tol;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= pivot_tol) continue;

                // Unitary 2x2 rotation zeroing a(p,q):
                //   J(p,p)=c, J(p,q)=s e^{i alpha}, J(q,p)=-s e^{-i alpha}, J(q,q)=c
                // with alpha = arg a(p,q) and t = tan(theta) the small root of
                // t^2 + 2dt - 1 = 0, d = (a(q,q)-a(p,p)) / (2|a(p,q)|).
                const double alpha = std::arg(a(p, q));
                const Complex ea = std::polar(1.0, alpha);
                const double d = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (d == 0.0)
                                     ? 1.0
                                     : ((d > 0.0 ? 1.0 : -1.0) / (std::abs(d) + std::hypot(d, 1.0)));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Eigen::VectorXcd col_p = c * a.col(p) - s * std::conj(ea) * a.col(q);
                const Eigen::VectorXcd col_q = s * ea * a.col(p) + c * a.col(q);
                a.col(p) = col_p;
                a.col(q) = col_q;
                const Eigen::RowVectorXcd row_p = c * a.row(p) - s * ea * a.row(q);
                const Eigen::RowVectorXcd row_q = s * std::conj(ea) * a.row(p) + c * a.row(q);
                a.row(p) = row_p;
                a.row(q) = row_q;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                const Eigen::VectorXcd vcol_p = c * v.col(p) - s * std::conj(ea) * v.col(q);
                const Eigen::VectorXcd vcol_q = s * ea * v.col(p) + c * v.col(q);
                v.col(p) = vcol_p;
                v.col(q) = vcol_q;
            }
        }
        converged = off_diagonal_norm(a) <= off_tol;
    }
    if (!converged)
        throw NoConvergence("hermitian_eigen: sweep budget exhausted");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigenDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        dec.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        dec.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    if (!dec.eigenvalues.allFinite() || !dec.eigenvectors.allFinite())
        throw NumericalFailure("hermitian_eigen: non-finite result");
    return dec;
}

namespace {

void require_unitary(const Matrix& v) {
    const Eigen::Index n = v.rows();
    if ((v.adjoint() * v - Matrix::Identity(n, n)).norm() > 1e-10)
        throw InvalidState("basis change: matrix is not unitary within tolerance");
}

} // namespace

Matrix to_eigenbasis(const Matrix& rho, const Matrix& v) {
    if (rho.rows() != rho.cols() || v.rows() != v.cols() || rho.rows() != v.rows())
        throw DimensionMismatch("to_eigenbasis: dimension mismatch");
    require_unitary(v);
    return v.adjoint() * rho * v;
}

Matrix from_eigenbasis(const Matrix& rho, const Matrix& v) {
    if (rho.rows() != rho.cols() || v.rows() != v.cols() || rho.rows() != v.rows())
        throw DimensionMismatch("from_eigenbasis: dimension mismatch");
    require_unitary(v);
    return v * rho * v.adjoint();
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("frobenius_distance: dimension mismatch");
    return (a - b).norm();
}

} // namespace esd
