#ifndef PHONSIM_FOCK_HPP
#define PHONSIM_FOCK_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "phonsim/params.hpp"

namespace phonsim {

using Matrix = Eigen::MatrixXcd;

// Lowering operator on the truncated Fock space: a|n> = sqrt(n)|n-1>.
inline Matrix annihilation(int dim) {
    if (dim < 2)
        throw std::domain_error("Fock dimension must be at least 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix creation(int dim) { return annihilation(dim).adjoint(); }

inline Matrix number_operator(int dim) {
    if (dim < 2)
        throw std::domain_error("Fock dimension must be at least 2");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

// E_n / hbar = -n*Delta_L + n*Delta_F + (n^2 - n)*U
inline double eigenenergy(int n, double drive_detuning, double sagnac,
                          double u) {
    const double nd = static_cast<double>(n);
    return -nd * drive_detuning + nd * sagnac + (nd * nd - nd) * u;
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    const double scale = std::max(m.norm(), 1.0);
    return (m - m.adjoint()).norm() <= tol * scale;
}

// Driven Kerr Hamiltonian in the frame rotating at the drive frequency,
// all coefficients in gamma units:
//   H = (-Delta_L + Delta_F) a'a + U a'a'aa + xi (a' + a)
inline Matrix build_hamiltonian(const SystemParams& p, int dim) {
    validate(p);
    if (dim < 2)
        throw std::domain_error("Fock dimension must be at least 2");
    const double shift = sagnac_shift(p);
    Matrix h = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        h(n, n) = eigenenergy(n, p.drive_detuning, shift, p.nonlinearity_u);
    for (int n = 1; n < dim; ++n) {
        const double elem = p.drive_amp * std::sqrt(static_cast<double>(n));
        h(n - 1, n) = elem;
        h(n, n - 1) = elem;
    }
    return h;
}

}  // namespace phonsim

#endif
