#ifndef PHONSIM_ANALYTIC_HPP
#define PHONSIM_ANALYTIC_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "phonsim/fock.hpp"
#include "phonsim/params.hpp"

// Weak-drive truncated-amplitude model on {|0>,|1>,|2>} plus the
// closed-form correlation functions. Serves as an independent oracle
// for the full master-equation solver.

namespace phonsim {

struct Amplitudes {
    std::complex<double> c0{1.0, 0.0};
    std::complex<double> c1{0.0, 0.0};
    std::complex<double> c2{0.0, 0.0};
};

namespace detail {
// Effective detuning seen by the intracavity phonon. Both closed-form
// correlation functions use this same combination; it follows from the
// eigenenergy ladder.
inline double effective_detuning(const SystemParams& p) {
    return -p.drive_detuning + sagnac_shift(p);
}
}  // namespace detail

// Steady-state amplitudes of the damped three-level ladder. c0 is held
// at 1 (weak-drive normalization); pass normalized=true for the unit-norm
// variant.
inline Amplitudes steady_amplitudes(const SystemParams& p,
                                    bool normalized = false) {
    validate(p);
    const double shift = sagnac_shift(p);
    const double e1 = eigenenergy(1, p.drive_detuning, shift, p.nonlinearity_u);
    const double e2 = eigenenergy(2, p.drive_detuning, shift, p.nonlinearity_u);
    const std::complex<double> i(0.0, 1.0);
    Amplitudes amp;
    amp.c1 = -p.drive_amp / (e1 - i * p.gamma / 2.0);
    amp.c2 = -std::sqrt(2.0) * p.drive_amp * amp.c1 / (e2 - i * p.gamma);
    if (normalized) {
        const double norm = std::sqrt(std::norm(amp.c0) + std::norm(amp.c1) +
                                      std::norm(amp.c2));
        amp.c0 /= norm;
        amp.c1 /= norm;
        amp.c2 /= norm;
    }
    return amp;
}

// Integrates the three coupled linear amplitude equations with a classic
// fixed-step 4th-order scheme, starting from (1, 0, 0). Returns the
// trajectory sampled at every step (index 0 is the initial state).
inline std::vector<Amplitudes> evolve_amplitudes(const SystemParams& p,
                                                 double t_final, double dt,
                                                 const Amplitudes& initial) {
    validate(p);
    if (!(dt > 0.0) || !(t_final >= 0.0))
        throw std::invalid_argument("time step and horizon must be positive");
    const double shift = sagnac_shift(p);
    const double scale = std::max(
        {p.gamma, std::abs(-p.drive_detuning + shift), p.nonlinearity_u});
    if (dt >= 0.1 / scale)
        throw std::invalid_argument("time step too large for stable integration");

    const std::complex<double> i(0.0, 1.0);
    const double e1 = eigenenergy(1, p.drive_detuning, shift, p.nonlinearity_u);
    const double e2 = eigenenergy(2, p.drive_detuning, shift, p.nonlinearity_u);
    const std::complex<double> d1 = e1 - i * p.gamma / 2.0;
    const std::complex<double> d2 = e2 - i * p.gamma;
    const double xi = p.drive_amp;
    const double s2 = std::sqrt(2.0);

    using State = std::array<std::complex<double>, 3>;
    auto rhs = [&](const State& c) -> State {
        return {-i * xi * c[1],
                -i * d1 * c[1] - i * xi * c[0] - i * xi * s2 * c[2],
                -i * d2 * c[2] - i * xi * s2 * c[1]};
    };
    auto axpy = [](const State& c, double h, const State& k) -> State {
        return {c[0] + h * k[0], c[1] + h * k[1], c[2] + h * k[2]};
    };

    const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt));
    std::vector<Amplitudes> out;
    out.reserve(steps + 1);
    State c{initial.c0, initial.c1, initial.c2};
    out.push_back({c[0], c[1], c[2]});
    for (std::size_t s = 0; s < steps; ++s) {
        const State k1 = rhs(c);
        const State k2 = rhs(axpy(c, dt / 2.0, k1));
        const State k3 = rhs(axpy(c, dt / 2.0, k2));
        const State k4 = rhs(axpy(c, dt, k3));
        for (int j = 0; j < 3; ++j)
            c[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        out.push_back({c[0], c[1], c[2]});
    }
    return out;
}

inline std::vector<Amplitudes> evolve_amplitudes(const SystemParams& p,
                                                 double t_final, double dt) {
    return evolve_amplitudes(p, t_final, dt, Amplitudes{});
}

// Closed-form g2(0) of the weak-drive model:
//   [(delta)^2 + g^2/4] / [(delta + U)^2 + g^2/4],  delta = -Delta_L + Delta_F
inline double g2_analytic(const SystemParams& p) {
    validate(p);
    const double d = detail::effective_detuning(p);
    const double q = p.gamma * p.gamma / 4.0;
    const double u = p.nonlinearity_u;
    return (d * d + q) / ((d + u) * (d + u) + q);
}

// Closed-form g3(0):
//   [(delta)^2 + g^2/4]^2 / {[(delta+U)^2 + g^2/4][(delta+2U)^2 + g^2/4]}
inline double g3_analytic(const SystemParams& p) {
    validate(p);
    const double d = detail::effective_detuning(p);
    const double q = p.gamma * p.gamma / 4.0;
    const double u = p.nonlinearity_u;
    const double num = d * d + q;
    return num * num /
           (((d + u) * (d + u) + q) * ((d + 2.0 * u) * (d + 2.0 * u) + q));
}

// g2(0) from the populations of the truncated amplitude model,
// 2 P2 / (P1 + 2 P2)^2.
inline double g2_from_amplitudes(const Amplitudes& amp) {
    const double p1 = std::norm(amp.c1);
    const double p2 = std::norm(amp.c2);
    const double denom = p1 + 2.0 * p2;
    return 2.0 * p2 / (denom * denom);
}

}  // namespace phonsim

#endif
