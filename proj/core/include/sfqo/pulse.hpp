#pragma once

#include <array>
#include <vector>

#include "sfqo/numerics.hpp"

namespace sfqo {

using Vec3 = std::array<double, 3>;

inline constexpr double speed_of_light = 137.035999084;

// sin^2-envelope pulse, linearly polarized along z, atomic units.
struct LaserPulse {
    double omega = 0.057;
    double e0 = 0.053;
    int n_cyc = 5;
    double cep = 0.0;
    Vec3 polarization{0.0, 0.0, 1.0};

    void validate() const;
    double duration() const;              // T = 2 pi n_cyc / omega
    double ponderomotive_energy() const;  // Up = e0^2 / (4 omega^2)
    double sqrt_up() const;
};

// Scalar components along the polarization axis.
double vector_potential_z(const LaserPulse& pulse, double t);
double electric_field_z(const LaserPulse& pulse, double t);

Vec3 vector_potential(const LaserPulse& pulse, double t);
Vec3 electric_field(const LaserPulse& pulse, double t);

// Unnormalized integral of eps.A(t) exp(-i omega_k t) over the pulse,
// composite Simpson on a grid of step 1/refine.
cplx spectral_amplitude(const LaserPulse& pulse, double omega_k, int refine = 1);

// A(t) written as sum_j amp_j sin(freq_j t + phase); gives closed-form
// primitives used by the action and displacement code.
class PulseIntegrals {
public:
    struct Component {
        double amp;
        double freq;
    };

    explicit PulseIntegrals(const LaserPulse& pulse);

    const LaserPulse& pulse() const { return pulse_; }
    const std::vector<Component>& components() const { return comps_; }

    double a(double t) const;                // A(t), zero outside [0, T]
    double int_a(double t) const;            // int_0^t A
    double int_a2(double t) const;           // int_0^t A^2
    // int_{t1}^{t2} exp(i w tau) int_0^tau A, for 0 <= t1 <= t2 <= T.
    cplx fourier_int_a(double w, double t1, double t2) const;

private:
    LaserPulse pulse_;
    std::vector<Component> comps_;
    double T_;
};

// Exact integrals of exp(i w s) and s exp(i w s) over [t1, t2], stable at w -> 0.
cplx exp_integral(double w, double t1, double t2);
cplx t_exp_integral(double w, double t1, double t2);

struct FieldCoupling {
    double gtilde = 5e-3;
    double lambda_scale = 0.2;
    double gamma_cutoff = 0.0;  // <= 0 disables the form factor

    void validate() const;
    // Gamma / sqrt(Gamma^2 + k^2), k = omega / c.
    double form_factor(double omega_k) const;
    // gtilde * lambda_scale * g(k)
    double effective(double omega_k) const;
};

}  // namespace sfqo
