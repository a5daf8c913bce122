#include "esd/model.hpp"

#include <cmath>

namespace esd {

void ModelParams::validate() const {
    const auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(beta1)) throw InvalidState("ModelParams: beta1 must be finite");
    if (!finite(beta2)) throw InvalidState("ModelParams: beta2 must be finite");
    if (!finite(zeta1)) throw InvalidState("ModelParams: zeta1 must be finite");
    if (!finite(zeta2)) throw InvalidState("ModelParams: zeta2 must be finite");
    if (!finite(phi)) throw InvalidState("ModelParams: phi must be finite");
    if (!finite(theta)) throw InvalidState("ModelParams: theta must be finite");
    if (!finite(gamma) || gamma < 0.0)
        throw InvalidState("ModelParams: gamma must be finite and >= 0");
    if (n0 < 0) throw InvalidState("ModelParams: n0 must be >= 0");
    if (n_max < n0 + 4)
        throw InvalidState("ModelParams: n_max must be >= n0 + 4");
}

double lambda_unit(const ModelParams& p) {
    return p.zeta1 != 0.0 ? std::abs(p.zeta1) : 1.0;
}

Matrix build_effective_hamiltonian(const ModelParams& p) {
    p.validate();
    const SpaceLayout layout = p.layout();
    const int dim = layout.dim_total();

    // Number operator as an exact diagonal rather than a†a, so the Stark term
    // carries exact integers and the excitation commutator vanishes exactly.
    Matrix number = Matrix::Zero(dim, dim);
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n <= layout.n_max; ++n)
                number(layout.index(q1, q2, n), layout.index(q1, q2, n)) = static_cast<double>(n);

    const Matrix a = annihilation_op(layout, /*embedded=*/true);
    const Matrix a2 = a * a;
    const Matrix ad2 = a2.adjoint();

    const Matrix saa1 = ion_op(IonLevel::a, IonLevel::a, 1, layout);
    const Matrix sbb1 = ion_op(IonLevel::b, IonLevel::b, 1, layout);
    const Matrix saa2 = ion_op(IonLevel::a, IonLevel::a, 2, layout);
    const Matrix sbb2 = ion_op(IonLevel::b, IonLevel::b, 2, layout);
    const Matrix sab1 = ion_op(IonLevel::a, IonLevel::b, 1, layout);
    const Matrix sba1 = ion_op(IonLevel::b, IonLevel::a, 1, layout);
    const Matrix sab2 = ion_op(IonLevel::a, IonLevel::b, 2, layout);
    const Matrix sba2 = ion_op(IonLevel::b, IonLevel::a, 2, layout);

    const Complex eip = std::polar(1.0, p.phi);

    Matrix h = number * (p.beta1 * sbb1 + p.beta2 * saa1) +
               number * (p.beta1 * sbb2 + p.beta2 * saa2);
    h += p.zeta1 * (sab1 * a2 + sba1 * ad2);
    h += p.zeta2 * (eip * sab2 * a2 + std::conj(eip) * sba2 * ad2);
    return h;
}

Matrix excitation_operator(const SpaceLayout& layout) {
    const int dim = layout.dim_total();
    Matrix n_exc = Matrix::Zero(dim, dim);
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n <= layout.n_max; ++n) {
                const int excited = (q1 == 0 ? 1 : 0) + (q2 == 0 ? 1 : 0);
                n_exc(layout.index(q1, q2, n), layout.index(q1, q2, n)) =
                    static_cast<double>(n + 2 * excited);
            }
    return n_exc;
}

Matrix initial_density(const ModelParams& p) {
    p.validate();
    const SpaceLayout layout = p.layout();
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    Matrix rho = Matrix::Zero(layout.dim_total(), layout.dim_total());
    const int i_ab = layout.index(0, 1, p.n0);
    const int i_ba = layout.index(1, 0, p.n0);
    rho(i_ab, i_ab) = c2;
    rho(i_ba, i_ba) = s2;
    return rho;
}

double stark_from_physical(double zeta, double delta) {
    if (delta == 0.0)
        throw ZeroDetuning("stark_from_physical: detuning must be nonzero");
    return zeta * zeta / delta;
}

} // namespace esd
