#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfqo/fock.hpp"
#include "sfqo/numerics.hpp"

namespace sfqo {

// Homodyne quadratures x = (a + a^dag)/sqrt2 (vacuum variance 1/2).
// Grids live in the beta plane: axes Re beta, Im beta with beta = (x + i p)/sqrt2,
// values W(beta) with int W d^2beta = 1 (coherent peak 2/pi).

struct GridSpec {
    double x_min = -6.0, x_max = 6.0;
    double p_min = -6.0, p_max = 6.0;
    std::size_t nx = 121, np = 121;

    static GridSpec centered(double half_width, std::size_t n) { return {-half_width, half_width, -half_width, half_width, n, n}; }
    double dx() const { return (x_max - x_min) / double(nx - 1); }
    double dp() const { return (p_max - p_min) / double(np - 1); }
    double x(std::size_t i) const { return x_min + dx() * double(i); }
    double p(std::size_t j) const { return p_min + dp() * double(j); }
};

struct WignerGrid {
    GridSpec spec;
    std::vector<double> values;  // row-major, values[j * nx + i] = W(x_i + i p_j)

    double at(std::size_t i, std::size_t j) const { return values[j * spec.nx + i]; }
    double integral() const;     // trapezoid
    double min() const;
    double max() const;
    std::pair<double, double> argmax() const;  // (Re beta, Im beta)
};

// Wigner function of a single-mode superposition at beta.
double wigner_beta(const CoherentSuperposition& s, cplx beta);

WignerGrid wigner_coherent(cplx alpha, const GridSpec& spec);
// Three-term closed form with N = 1 - exp(-|chi|^2).
WignerGrid wigner_cat(cplx alpha, cplx chi, const GridSpec& spec);
double wigner_cat_beta(cplx alpha, cplx chi, cplx beta);
WignerGrid wigner_state(const CoherentSuperposition& s, const GridSpec& spec);

// Probability density of x_phi = (a e^{-i phi} + a^dag e^{i phi})/sqrt2.
double quadrature_density(const CoherentSuperposition& s, double phi, double x);

enum class StateKind { Coherent, Cat };

struct HomodyneSampleSet {
    std::vector<double> phases;
    std::vector<double> x;
    std::uint64_t seed = 0;
};

struct HomodyneParams {
    StateKind kind = StateKind::Coherent;
    cplx alpha{2.0, 0.0};
    cplx chi{0.8, 0.0};
    bool stratified = true;
};

CoherentSuperposition homodyne_state(const HomodyneParams& params);
HomodyneSampleSet homodyne_sample(const HomodyneParams& params, std::size_t n_samples, std::uint64_t seed);

// K(z) = int_0^kc xi cos(xi z) dxi.
double fbp_kernel(double z, double kc);

// Filtered back-projection in quadrature units, W_xp = 1/(2 pi N) sum_k K(x cos phi_k + p sin phi_k - x_k),
// returned as W(beta) = 2 W_xp(sqrt2 Re beta, sqrt2 Im beta).
WignerGrid reconstruct_wigner(const HomodyneSampleSet& samples, double kc, const GridSpec& spec);

// Back-projection of exact marginals: n_phi phases, quadrature grid of step dx_quad.
WignerGrid reconstruct_from_marginals(const CoherentSuperposition& s, double kc, const GridSpec& spec,
                                      std::size_t n_phi = 180, double dx_quad = 0.02);

// int W |beta|^2 - 1/2; rejects grids whose integral is off by more than tol.
double mean_photon_from_wigner(const WignerGrid& w, double tol = 0.05);

enum class SweepProtocol { VsKc, VsNSamples, VsNbar };

struct SweepRow {
    double value = 0.0;
    double mean_error_pct = 0.0;
    double std_error_pct = 0.0;
    double mean_peak_error_pct = 0.0;
};

struct SweepSettings {
    std::vector<double> values;
    std::size_t n_seeds = 20;
    std::uint64_t seed = 1;
    double kc = 3.7;
    std::size_t n_samples = 10000;
    double nbar = 3.0;  // coherent state mean photon number
    GridSpec grid = GridSpec::centered(5.0, 81);
};

// Mean-photon error % and peak-amplitude error % over seeds for coherent states.
std::vector<SweepRow> error_sweep(SweepProtocol protocol, const SweepSettings& s);

SweepProtocol parse_sweep_protocol(const std::string& name);

}  // namespace sfqo
