#pragma once

#include <vector>

#include "sfqo/numerics.hpp"
#include "sfqo/pulse.hpp"
#include "sfqo/sfa.hpp"

namespace sfqo {

// Electron charge in atomic units; enters the continuum displacement coupling.
inline constexpr double electron_charge = -1.0;

struct ModeGrid {
    std::vector<double> omegas;
    FieldCoupling coupling;

    void validate() const;
    std::size_t size() const { return omegas.size(); }
    double g(std::size_t k) const { return coupling.effective(omegas[k]); }

    // Integer harmonics 1..n_max of omega_l.
    static ModeGrid harmonics(double omega_l, int n_max, FieldCoupling coupling);
};

// chi(omega_k, t_j) = -g int_0^{t_j} <d> exp(i omega_k tau), all grid times in one pass.
std::vector<cplx> chi_trace(const DipoleTrace& trace, double omega_k, double g);
// Same quantity at one time by direct trapezoid over [0, t] (linear partial panel).
cplx chi(const DipoleTrace& trace, double omega_k, double g, double t);

struct Spectrum {
    std::vector<double> orders;      // omega / omega_l
    std::vector<double> raw;         // N^2 |chi(omega, T)|^2
    std::vector<double> normalized;  // raw / raw at the fundamental
};

// Dense-frequency spectrum, orders from order_min to order_max in steps d_order.
Spectrum hhg_spectrum(const DipoleTrace& trace, double omega_l, double g, int n_atoms, double order_max = 30.0,
                      double d_order = 0.05);

struct HarmonicSummary {
    std::vector<int> odd_orders;
    std::vector<double> contrast_db;  // odd peak vs stronger even neighbour
    double mean_contrast_db = 0.0;
    double min_contrast_db = 0.0;
    int cutoff_order = 0;
    double cutoff_law = 0.0;          // (Ip + 3.17 Up) / omega
};

// Peak intensity per order is the maximum over order +- half_width.
HarmonicSummary analyze_harmonics(const Spectrum& s, const LaserPulse& pulse, const AtomModel& atom,
                                  double half_width = 0.25, int first_plateau_order = 5,
                                  double cutoff_drop_db = 10.0);

// Delta r(t) = int_0^t (p + A), closed form.
Vec3 electron_displacement(const LaserPulse& pulse, const Vec3& p, double t);
double electron_displacement_par(const PulseIntegrals& P, double p_par, double t);

// int_{t1}^{t} exp(i w tau) Delta r(tau) dtau along the polarization, closed form.
cplx displacement_fourier(const PulseIntegrals& P, double p_par, double t1, double t, double w);
// Same by trapezoid with step <= h.
cplx displacement_fourier_quadrature(const PulseIntegrals& P, double p_par, double t1, double t, double w, double h);

// delta = -e g [int_{t1}^{t} exp(i w tau) Delta r]^*.
cplx delta(const PulseIntegrals& P, double p_par, double t, double t1, double w, double g);

struct BchPhases {
    double phi = 0.0;
    double phi_chi_delta = 0.0;
};

// phi = g^2 int_{t1}^{t} dtau1 int_{t1}^{tau1} dtau2 Dr Dr sin(w (tau1 - tau2)); grid step <= h.
BchPhases bch_phases(const PulseIntegrals& P, double p_par, double t, double t1, double w, double g, cplx chi_val,
                     double h = 0.1);

// phi(t_end, t1_j) for every node t1_j of the grid (t_end = last node), O(n).
std::vector<double> bch_phase_profile(const PulseIntegrals& P, double p_par, const UniformGrid& grid, double w,
                                      double g);

// delta(t_end, t1_j, w) at every node, closed form.
std::vector<cplx> delta_profile(const PulseIntegrals& P, double p_par, const UniformGrid& grid, double w, double g);

}  // namespace sfqo
