#ifndef PHONSIM_LINDBLAD_HPP
#define PHONSIM_LINDBLAD_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <complex>
#include <stdexcept>
#include <vector>

#include "phonsim/fock.hpp"
#include "phonsim/params.hpp"

// Master-equation machinery: Liouvillian assembly in column-major
// vectorization, direct steady-state solve with a trace-row constraint,
// time propagation as a cross-check, and truncation-dimension control.

namespace phonsim {

using SparseCMatrix = Eigen::SparseMatrix<std::complex<double>>;
using Vector = Eigen::VectorXcd;

struct Liouvillian {
    int dim = 0;  // Fock dimension N; matrix is N^2 x N^2
    SparseCMatrix matrix;
};

namespace detail {

// Triplet accumulator for kron(B^T, A)-style products with dense factors.
inline void add_kron(std::vector<Eigen::Triplet<std::complex<double>>>& trip,
                     const Matrix& left, const Matrix& right,
                     std::complex<double> weight, double drop = 0.0) {
    const int n = static_cast<int>(right.rows());
    const int m = static_cast<int>(left.rows());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const std::complex<double> lij = left(i, j);
            if (std::abs(lij) <= drop) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const std::complex<double> v = weight * lij * right(k, l);
                    if (std::abs(v) > drop)
                        trip.emplace_back(i * n + k, j * n + l, v);
                }
        }
}

inline Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix devectorize(const Vector& v, int dim) {
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

}  // namespace detail

// L vec(rho) = vec(-i[H, rho] + gamma/2 (2 a rho a' - a'a rho - rho a'a))
// under column-major stacking, i.e.
//   L = -i (I (x) H - H^T (x) I)
//     + gamma/2 (2 conj(a) (x) a - I (x) a'a - (a'a)^T (x) I)
inline Liouvillian assemble_liouvillian(const Matrix& h, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be positive");
    if (h.rows() != h.cols() || h.rows() < 2)
        throw std::domain_error("Hamiltonian must be square, dim >= 2");
    if (!is_hermitian(h))
        throw std::domain_error("Hamiltonian must be Hermitian");
    const int n = static_cast<int>(h.rows());
    const Matrix a = annihilation(n);
    const Matrix num = number_operator(n);
    const Matrix eye = Matrix::Identity(n, n);
    const std::complex<double> i(0.0, 1.0);

    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(static_cast<std::size_t>(n) * n * n * 4);
    detail::add_kron(trip, eye, h, -i);
    detail::add_kron(trip, h.transpose(), eye, i);
    detail::add_kron(trip, a.conjugate(), a, gamma);
    detail::add_kron(trip, eye, num, -gamma / 2.0);
    detail::add_kron(trip, num.transpose(), eye, -gamma / 2.0);

    Liouvillian liou;
    liou.dim = n;
    liou.matrix.resize(n * n, n * n);
    liou.matrix.setFromTriplets(trip.begin(), trip.end());
    return liou;
}

// Unique steady state: solve L rho = 0 with row 0 replaced by the
// vectorized trace functional (tr rho = 1), then symmetrize.
inline Matrix steady_state(const Liouvillian& liou) {
    const int n = liou.dim;
    const int nn = n * n;
    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(static_cast<std::size_t>(liou.matrix.nonZeros()) + n);
    for (int col = 0; col < liou.matrix.outerSize(); ++col)
        for (SparseCMatrix::InnerIterator it(liou.matrix, col); it; ++it)
            if (it.row() != 0) trip.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < n; ++k)
        trip.emplace_back(0, k * n + k, std::complex<double>(1.0));

    SparseCMatrix constrained(nn, nn);
    constrained.setFromTriplets(trip.begin(), trip.end());
    constrained.makeCompressed();

    Eigen::SparseLU<SparseCMatrix> lu;
    lu.compute(constrained);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("steady-state factorization failed "
                                 "(degenerate Liouvillian nullspace?)");
    Vector b = Vector::Zero(nn);
    b(0) = 1.0;
    const Vector v = lu.solve(b);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("steady-state solve failed");

    const double residual = (liou.matrix * v).norm();
    if (residual > 1e-8 * liou.matrix.norm())
        throw std::runtime_error("steady-state residual above tolerance");

    Matrix rho = detail::devectorize(v, n);
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    rho /= rho.trace().real();
    return rho;
}

inline double steady_residual(const Liouvillian& liou, const Matrix& rho) {
    return (liou.matrix * detail::vectorize(rho)).norm();
}

// Fixed-step 4th-order propagation of the vectorized master equation.
// Returns rho sampled at every step; trace drift beyond 1e-6 aborts.
inline std::vector<Matrix> evolve_state(const Liouvillian& liou,
                                        const Matrix& rho0, double t_final,
                                        double dt) {
    if (rho0.rows() != liou.dim || rho0.cols() != liou.dim)
        throw std::invalid_argument("initial state dimension mismatch");
    if (!(dt > 0.0) || !(t_final >= 0.0))
        throw std::invalid_argument("time step and horizon must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt));
    std::vector<Matrix> out;
    out.reserve(steps + 1);
    Vector v = detail::vectorize(rho0);
    out.push_back(rho0);
    const SparseCMatrix& l = liou.matrix;
    for (std::size_t s = 0; s < steps; ++s) {
        const Vector k1 = l * v;
        const Vector k2 = l * (v + dt / 2.0 * k1);
        const Vector k3 = l * (v + dt / 2.0 * k2);
        const Vector k4 = l * (v + dt * k3);
        v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        Matrix rho = detail::devectorize(v, liou.dim);
        if (std::abs(rho.trace().real() - 1.0) > 1e-6)
            throw std::runtime_error("trace drift during propagation "
                                     "(unstable step size?)");
        out.push_back(std::move(rho));
    }
    return out;
}

struct ConvergedSolution {
    int dim = 0;
    Matrix rho;
    Matrix rho_check;  // solve at dim + 5, kept for a posteriori error checks
    double residual = 0.0;
};

namespace detail {
inline Matrix solve_at(const SystemParams& p, int dim, double* residual) {
    const Liouvillian liou = assemble_liouvillian(build_hamiltonian(p, dim),
                                                  p.gamma);
    Matrix rho = steady_state(liou);
    if (residual) *residual = steady_residual(liou, rho);
    return rho;
}

inline double mean_occupation(const Matrix& rho) {
    double m = 0.0;
    for (int k = 0; k < rho.rows(); ++k) m += k * rho(k, k).real();
    return m;
}
}  // namespace detail

// Probes N = start, start+5, ... and accepts the first N whose mean
// occupation is stable against N+5 and whose top-level population has
// emptied out. Throws once the hard cap is exceeded.
inline ConvergedSolution solve_converged(const SystemParams& p,
                                         int start_dim = 10, double tol = 1e-8,
                                         int hard_cap = 60) {
    validate(p);
    if (start_dim < 5)
        throw std::invalid_argument("start dimension must be at least 5");
    double res = 0.0;
    Matrix rho = detail::solve_at(p, start_dim, &res);
    double mean = detail::mean_occupation(rho);
    for (int n = start_dim; n <= hard_cap; n += 5) {
        double res_next = 0.0;
        Matrix rho_next = detail::solve_at(p, n + 5, &res_next);
        const double mean_next = detail::mean_occupation(rho_next);
        const bool stable =
            std::abs(mean - mean_next) <= tol * std::max(mean, 1e-12);
        const bool tail_empty = rho(n - 1, n - 1).real() < 1e-10;
        if (stable && tail_empty)
            return {n, std::move(rho), std::move(rho_next), res};
        rho = std::move(rho_next);
        mean = mean_next;
        res = res_next;
    }
    throw std::runtime_error("Fock truncation did not converge below cap");
}

inline int converged_dimension(const SystemParams& p, int start_dim = 10,
                               double tol = 1e-8, int hard_cap = 60) {
    return solve_converged(p, start_dim, tol, hard_cap).dim;
}

}  // namespace phonsim

#endif
