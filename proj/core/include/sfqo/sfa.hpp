#pragma once

#include <array>
#include <vector>

#include "sfqo/numerics.hpp"
#include "sfqo/pulse.hpp"

namespace sfqo {

using CVec3 = std::array<cplx, 3>;

struct AtomModel {
    double ip = 0.5;
    double lam = 1.0;

    void validate() const;
};

// Bound-continuum dipole of the hydrogenic ground state.
CVec3 transition_dipole(const AtomModel& atom, const Vec3& v);
// Component along a momentum with parallel part v_par and |v_perp|^2 = v_perp2.
cplx transition_dipole_par(const AtomModel& atom, double v_par, double v_perp2 = 0.0);

// int_{t1}^{t2} [(p + A)^2/2 + Ip], closed form.
double semiclassical_action(const LaserPulse& pulse, const AtomModel& atom, const Vec3& p, double t1, double t2);
double semiclassical_action(const PulseIntegrals& pi, const AtomModel& atom, const Vec3& p, double t1, double t2);
// Same integral by composite Simpson with step <= h.
double semiclassical_action_quadrature(const LaserPulse& pulse, const AtomModel& atom, const Vec3& p, double t1,
                                       double t2, double h);

// b(p, t) without depletion; three-point Filon panels of width 0.25/refine.
cplx ionization_amplitude(const LaserPulse& pulse, const AtomModel& atom, const Vec3& p, double t, int refine = 1);

struct SurvivalSettings {
    int refine = 1;
    int n_pz = 121;
    double pz_max = 3.0;
    int n_perp = 800;       // points in u = p_perp^2
    double perp2_max = 8.0;
};

// a_g(t) on the time grid, Markov form, real part of the rate.
struct SurvivalTrace {
    UniformGrid times;
    std::vector<double> rate;      // Re W(t)
    std::vector<double> survival;  // a_g(t)
};
SurvivalTrace ground_survival_trace(const LaserPulse& pulse, const AtomModel& atom, const SurvivalSettings& s = {});
double ground_survival(const LaserPulse& pulse, const AtomModel& atom, double t, const SurvivalSettings& s = {});

struct DipoleTrace {
    UniformGrid times;
    std::vector<double> values;
};

// Symmetric momentum grid of n points over [-extent sqrt(Up), extent sqrt(Up)].
std::vector<double> momentum_grid(const LaserPulse& pulse, std::size_t n = 512, double extent = 4.0);

// <d(t)> along the polarization, 1-D momentum reduction.
DipoleTrace dipole_expectation(const LaserPulse& pulse, const AtomModel& atom, const std::vector<double>& p_grid,
                               int refine = 1);

}  // namespace sfqo
