#include "esd/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esd/hilbert.hpp"

namespace esd {

namespace {

// exp(A) by scaling and squaring with a plain Taylor sum of the scaled matrix.
// Adequate for the normal matrices used here (-iHt and -(gamma t/2) H^2).
Matrix expm(const Matrix& a) {
    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
        squarings = std::min(squarings, 60);
    }
    const Matrix b = a / std::ldexp(1.0, squarings);
    Matrix sum = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.norm() <= 1e-18 * sum.norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

// Indices reachable from the support of rho0 through the nonzero pattern of
// h. The returned index set is closed under h (h is Hermitian, so its pattern
// is symmetric), hence span{e_i : i in set} is an exactly invariant subspace
// and every matrix function of h acts blockwise on it.
std::vector<Eigen::Index> pattern_closure(const Matrix& h, const Matrix& rho0) {
    const Eigen::Index n = h.rows();
    std::vector<bool> in_set(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> queue;
    for (Eigen::Index i = 0; i < n; ++i) {
        bool support = false;
        for (Eigen::Index j = 0; j < n && !support; ++j)
            support = rho0(i, j) != 0.0 || rho0(j, i) != 0.0;
        if (support && !in_set[static_cast<std::size_t>(i)]) {
            in_set[static_cast<std::size_t>(i)] = true;
            queue.push_back(i);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Eigen::Index i = queue[head];
        for (Eigen::Index j = 0; j < n; ++j) {
            if (in_set[static_cast<std::size_t>(j)]) continue;
            if (h(i, j) != 0.0 || h(j, i) != 0.0) {
                in_set[static_cast<std::size_t>(j)] = true;
                queue.push_back(j);
            }
        }
    }
    std::vector<Eigen::Index> set;
    for (Eigen::Index i = 0; i < n; ++i)
        if (in_set[static_cast<std::size_t>(i)]) set.push_back(i);
    return set;
}

Matrix gather(const Matrix& m, const std::vector<Eigen::Index>& set) {
    const Eigen::Index k = static_cast<Eigen::Index>(set.size());
    Matrix out(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c)
            out(r, c) = m(set[static_cast<std::size_t>(r)], set[static_cast<std::size_t>(c)]);
    return out;
}

} // namespace

Propagator make_propagator(const Matrix& h, double gamma) {
    if (!(gamma >= 0.0))
        throw InvalidState("make_propagator: gamma must be >= 0");
    Propagator prop;
    prop.eigen = hermitian_eigen(h);
    prop.gamma = gamma;
    const Eigen::Index n = prop.eigen.eigenvalues.size();
    prop.gaps.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            prop.gaps(j, k) = prop.eigen.eigenvalues(j) - prop.eigen.eigenvalues(k);
    return prop;
}

Matrix propagate_closed_form(const Matrix& rho0, const Propagator& prop, double t) {
    const Eigen::Index n = prop.eigen.eigenvectors.rows();
    if (rho0.rows() != n || rho0.cols() != n)
        throw DimensionMismatch("propagate_closed_form: dimension mismatch");
    if (!(t >= 0.0))
        throw InvalidState("propagate_closed_form: t must be >= 0");
    if (t == 0.0) return rho0;
    const Matrix& v = prop.eigen.eigenvectors;
    Matrix rt = v.adjoint() * rho0 * v;
    const Eigen::ArrayXXd gaps = prop.gaps.array();
    const Eigen::ArrayXXd decay = (-0.5 * prop.gamma * t * gaps.square()).exp();
    const Eigen::ArrayXXcd phase =
        (Complex(0.0, -1.0) * t * gaps.cast<Complex>()).exp();
    rt.array() *= decay.cast<Complex>() * phase;
    return v * rt * v.adjoint();
}

Matrix propagate_kraus_series(const Matrix& rho0, const Matrix& h, double gamma,
                              double t, double tol, int max_terms) {
    if (rho0.rows() != rho0.cols() || h.rows() != h.cols() || rho0.rows() != h.rows())
        throw DimensionMismatch("propagate_kraus_series: dimension mismatch");
    if (!(t >= 0.0))
        throw InvalidState("propagate_kraus_series: t must be >= 0");
    if (!(tol > 0.0))
        throw InvalidState("propagate_kraus_series: tol must be > 0");

    const Matrix u = expm(Complex(0.0, -1.0) * t * h);
    const Matrix g = expm((-0.5 * gamma * t) * (h * h));
    const Matrix damped = g * rho0 * g;
    Matrix term = u * damped * u.adjoint();
    Matrix sum = term;
    const double gt = gamma * t;

    const double full_trace = rho0.trace().real();
    for (int m = 1; m <= max_terms; ++m) {
        term = (gt / static_cast<double>(m)) * (h * term * h);
        sum += term;
        // The terms are PSD and their traces sum to Tr rho0, so the missing
        // trace bounds the Frobenius norm of the truncation tail.
        const double missing_trace = full_trace - sum.trace().real();
        if (term.norm() < tol && missing_trace < tol) return sum;
    }
    // A zero-decoherence or zero-time channel is the m = 0 term alone.
    if (gt == 0.0) return sum;
    throw SeriesNotConverged("propagate_kraus_series: max_terms reached before tol");
}

Matrix propagate_kraus_stepped(const Matrix& rho0, const Matrix& h, double gamma,
                               double t, double tol) {
    if (rho0.rows() != rho0.cols() || h.rows() != h.cols() || rho0.rows() != h.rows())
        throw DimensionMismatch("propagate_kraus_stepped: dimension mismatch");
    if (gamma * t == 0.0)
        return propagate_kraus_series(rho0, h, gamma, t, tol, 200);

    // Work inside the exactly invariant index set so the spectral scale is
    // the one the state actually explores; rounding noise outside would
    // otherwise be amplified by the series weights.
    const std::vector<Eigen::Index> set = pattern_closure(h, rho0);
    const Matrix h_s = gather(h, set);
    Matrix state = gather(rho0, set);

    // Per-step Poisson mass gamma tau E^2 <= ~6 keeps every weight within a
    // few decades of unity; each step then loses at most ~e^6 eps absolutely.
    const double bound = h_s.cwiseAbs().rowwise().sum().maxCoeff();
    const double x_total = gamma * t * bound * bound;
    long steps = std::max<long>(1, static_cast<long>(std::ceil(x_total / 6.0)));
    const double step_tol = std::max(tol / 100.0, 1e-15);

    for (int attempt = 0; attempt < 8; ++attempt) {
        const double tau = t / static_cast<double>(steps);
        Matrix acc = state;
        bool ok = true;
        for (long s = 0; s < steps; ++s) {
            try {
                acc = propagate_kraus_series(acc, h_s, gamma, tau, step_tol, 200);
            } catch (const SeriesNotConverged&) {
                ok = false;
                break;
            }
        }
        if (ok) {
            Matrix out = rho0;
            out.setZero();
            const Eigen::Index k = static_cast<Eigen::Index>(set.size());
            for (Eigen::Index r = 0; r < k; ++r)
                for (Eigen::Index c = 0; c < k; ++c)
                    out(set[static_cast<std::size_t>(r)], set[static_cast<std::size_t>(c)]) =
                        acc(r, c);
            return out;
        }
        steps *= 2;
    }
    throw SeriesNotConverged("propagate_kraus_stepped: no step size converged");
}

std::vector<EntanglementRecord>
evolve_series(const ModelParams& p, const std::vector<double>& scaled_times) {
    p.validate();
    for (std::size_t i = 0; i < scaled_times.size(); ++i) {
        if (!(scaled_times[i] >= 0.0))
            throw InvalidState("evolve_series: times must be nonnegative");
        if (i > 0 && scaled_times[i] < scaled_times[i - 1])
            throw InvalidState("evolve_series: times must be ascending");
    }

    const SpaceLayout layout = p.layout();
    const Matrix h = build_effective_hamiltonian(p);
    const Matrix rho0 = initial_density(p);
    // The dynamics never leave the initial state's invariant index set, so
    // the pipeline runs on the compressed block. Besides the obvious saving,
    // this keeps the results bit-identical under changes of parameters that
    // only touch unreachable sectors.
    const std::vector<Eigen::Index> set = pattern_closure(h, rho0);
    const Matrix h_s = gather(h, set);
    const Matrix rho_s = gather(rho0, set);

    // Parameters are in generic energy units; scaled time and gamma are in
    // lambda units, so both rescale by the unit when zeta1 != 1.
    const double unit = lambda_unit(p);
    const Propagator prop = make_propagator(h_s, p.gamma / unit);
    const Matrix& v = prop.eigen.eigenvectors;
    const Matrix rt0 = v.adjoint() * rho_s * v;
    const Eigen::ArrayXXd gaps = prop.gaps.array();

    std::vector<EntanglementRecord> records;
    records.reserve(scaled_times.size());
    Matrix rho_full = Matrix::Zero(layout.dim_total(), layout.dim_total());
    for (double ts : scaled_times) {
        const double t = ts / unit;
        const Eigen::ArrayXXd decay = (-0.5 * prop.gamma * t * gaps.square()).exp();
        const Eigen::ArrayXXcd phase =
            (Complex(0.0, -1.0) * t * gaps.cast<Complex>()).exp();
        Matrix rt = rt0;
        rt.array() *= decay.cast<Complex>() * phase;
        const Matrix rho_t = v * rt * v.adjoint();
        if (!rho_t.allFinite())
            throw NumericalFailure("evolve_series: non-finite state at lambda t = " +
                                   std::to_string(ts));
        for (std::size_t r = 0; r < set.size(); ++r)
            for (std::size_t c = 0; c < set.size(); ++c)
                rho_full(set[r], set[c]) = rho_t(static_cast<Eigen::Index>(r),
                                                 static_cast<Eigen::Index>(c));

        EntanglementRecord rec;
        rec.scaled_time = ts;
        rec.trace_error = std::abs(rho_t.trace().real() - 1.0);
        const Matrix reduced = partial_trace_fock(rho_full, layout);
        rec.negativity = negativity(reduced);
        rec.concurrence = concurrence(reduced);
        rec.purity = (reduced * reduced).trace().real();
        records.push_back(rec);
    }
    return records;
}

} // namespace esd
