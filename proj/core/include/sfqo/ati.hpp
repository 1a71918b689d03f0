#pragma once

#include <string>
#include <vector>

#include "sfqo/displacement.hpp"
#include "sfqo/numerics.hpp"
#include "sfqo/pulse.hpp"
#include "sfqo/sfa.hpp"

namespace sfqo {

struct AtiConfig {
    LaserPulse pulse{};
    AtomModel atom{};
    FieldCoupling coupling{};
    cplx alpha{0.0, 7.0};
    double p = 0.0;                 // canonical momentum along the polarization, a.u.
    int harmonic_max = 21;          // harmonic modes 2..harmonic_max
    double harmonic_cut = 1.5;      // orders >= cut count as harmonics
    std::size_t n_max = 0;          // 0: chosen from max |beta|
    double coarse_dt = 1.0;         // slow-trace grid
    int substeps = 20;              // fine grid = coarse_dt / substeps

    bool direct_regime() const { return std::abs(p) <= 0.46 * pulse.sqrt_up() + 1e-12; }
};

struct AtiAmplitudeTable {
    double p = 0.0;
    std::vector<cplx> amps;     // c_n, n = 0..n_max
    std::vector<double> probs;  // |c_n|^2 / norm
    double norm = 0.0;          // sum |c_n|^2
    double tail_bound = 0.0;    // worst-case Poisson tail beyond n_max over ionization times
    bool direct_regime = true;
    std::vector<std::string> warnings;
};

// Product over harmonic modes of exp(i phi_k) exp(-|delta_k|^2/2), chi neglected.
cplx c_hh_weight(const AtiConfig& cfg, double t_ion, double h = 0.05);

// C_HH at every node of `grid` (last node is the final time), O(n) per mode.
std::vector<cplx> c_hh_profile(const AtiConfig& cfg, const UniformGrid& grid);

AtiAmplitudeTable ati_fock_amplitudes(const AtiConfig& cfg);

double mean_photon(const AtiAmplitudeTable& table);

struct AtiEnsemble {
    std::vector<AtiAmplitudeTable> members;
    std::vector<double> weights;
    std::vector<double> probs;  // sum_i w_i P_i(n)
    double mean = 0.0;
};

// (weight, p) pairs; weights >= 0 and summing to 1.
AtiEnsemble ati_mixed_ensemble(const AtiConfig& base, const std::vector<std::pair<double, double>>& members);

struct PeakReport {
    std::vector<std::size_t> maxima;  // on the smoothed distribution
    std::size_t dominant = 0;
    double dominant_mass = 0.0;       // raw probability in the basin of the dominant maximum
};

// Binomial smoothing, maxima above rel_threshold * max, separated by >= min_separation.
PeakReport analyze_peaks(const std::vector<double>& probs, std::size_t min_separation = 3,
                         double rel_threshold = 0.05);

}  // namespace sfqo
