#ifndef PHONSIM_PARAMS_HPP
#define PHONSIM_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace phonsim {

// Which waveguide port the drive enters from. The port fixes the
// circulation sense of the intracavity phonon and thereby the sign of
// the rotation-induced frequency shift.
enum class DriveDirection { LeftPort, RightPort };

inline const char* to_string(DriveDirection d) {
    return d == DriveDirection::LeftPort ? "left" : "right";
}

// All physical inputs of the model. Internally every rate is expressed
// in units of the cavity linewidth gamma (so gamma == 1 in normal use);
// conversion from SI happens at the I/O boundary only.
struct SystemParams {
    double omega = 0.0;           // cavity resonance (rad/s), SI side only
    double quality_factor = 0.0;  // Q, SI side only
    double gamma = 1.0;           // cavity dissipation rate
    double coupling_g = 0.0;      // spin-cavity coupling
    double detuning_big = 0.0;    // spin-cavity detuning
    double rabi = 0.0;            // Rabi frequency of the spin drive
    double nonlinearity_u = 0.0;  // Kerr strength U
    double drive_amp = 0.0;       // driving amplitude xi
    double drive_detuning = 0.0;  // Delta_L = omega_L - omega
    double rotation_omega = 0.0;  // rotator angular frequency, >= 0
    double chirality_mag = 0.12;  // |chi|
    DriveDirection direction = DriveDirection::LeftPort;
};

inline void validate(const SystemParams& p) {
    if (!(p.gamma > 0.0))
        throw std::domain_error("gamma must be positive");
    if (!(p.chirality_mag > 0.0))
        throw std::domain_error("chirality magnitude must be positive");
    if (p.rotation_omega < 0.0)
        throw std::domain_error("rotation frequency must be non-negative");
    if (!std::isfinite(p.nonlinearity_u) || !std::isfinite(p.drive_amp) ||
        !std::isfinite(p.drive_detuning))
        throw std::domain_error("non-finite rate in parameters");
}

// gamma = omega / Q
inline double linewidth(double omega, double quality_factor) {
    if (!(quality_factor > 0.0))
        throw std::domain_error("quality factor must be positive");
    return omega / quality_factor;
}

// Kerr strength induced by the dispersively coupled two-level spin:
// U = g^4 / (Omega_s * Delta^2). Requires the dispersive regime, so a
// vanishing Rabi frequency or detuning is rejected.
inline double nonlinearity_from_spin(double coupling_g, double rabi,
                                     double detuning_big) {
    if (!(rabi > 0.0))
        throw std::domain_error("Rabi frequency must be positive");
    if (detuning_big == 0.0)
        throw std::domain_error("spin-cavity detuning must be nonzero");
    const double g2 = coupling_g * coupling_g;
    return g2 * g2 / (rabi * detuning_big * detuning_big);
}

// Signed chirality chi = +|chi| for the left port, -|chi| for the right.
// This is the single place where the port-to-sign mapping lives.
inline double chirality(const SystemParams& p) {
    return p.direction == DriveDirection::LeftPort ? p.chirality_mag
                                                   : -p.chirality_mag;
}

// Rotation-induced resonance shift Delta_F = chi * Omega.
inline double sagnac_shift(const SystemParams& p) {
    return chirality(p) * p.rotation_omega;
}

inline SystemParams with_direction(SystemParams p, DriveDirection d) {
    p.direction = d;
    return p;
}

}  // namespace phonsim

#endif
