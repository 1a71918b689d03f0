#pragma once

#include <string>
#include <vector>

#include "sfqo/numerics.hpp"

namespace sfqo {

struct CoherentTerm {
    cplx coeff;
    std::vector<cplx> amps;  // one amplitude per mode
};

// sum_i coeff_i |amps_i>, multimode coherent-state superposition.
class CoherentSuperposition {
public:
    CoherentSuperposition() = default;
    explicit CoherentSuperposition(std::size_t n_modes) : n_modes_(n_modes) {}
    CoherentSuperposition(std::size_t n_modes, std::vector<CoherentTerm> terms);

    static CoherentSuperposition coherent(cplx alpha);
    static CoherentSuperposition product(const std::vector<cplx>& amps);

    std::size_t n_modes() const { return n_modes_; }
    const std::vector<CoherentTerm>& terms() const { return terms_; }

    void add(cplx coeff, std::vector<cplx> amps);

    double norm2() const;
    CoherentSuperposition normalized() const;
    // Terms with amplitudes equal within tol are combined; zero coefficients dropped.
    CoherentSuperposition merged(double tol = 1e-12) const;

private:
    std::size_t n_modes_ = 0;
    std::vector<CoherentTerm> terms_;
};

// <alpha|beta>
cplx overlap(cplx alpha, cplx beta);
cplx overlap(const std::vector<cplx>& a, const std::vector<cplx>& b);
cplx inner(const CoherentSuperposition& a, const CoherentSuperposition& b);

// Gram matrix G_ij = <amps_i|amps_j> over the selected mode (all modes if mode < 0).
std::vector<std::vector<cplx>> gram_matrix(const CoherentSuperposition& s, int mode = -1);

struct FockDistribution {
    std::vector<double> probs;
    std::size_t n_max = 0;
    double tail = 0.0;  // probability mass beyond n_max (before renormalization)

    double mean() const;
    double variance() const;
};

// Default truncation ceil(max|a|^2 + 10 max|a|), at least 10.
std::size_t default_n_max(const CoherentSuperposition& s);

// <n|state> for n = 0..n_max, single mode, log-space factorials.
std::vector<cplx> fock_amplitudes(const CoherentSuperposition& s, std::size_t n_max);
FockDistribution photon_distribution(const CoherentSuperposition& s, std::size_t n_max);

// |a> (x) |b>, modes of a first.
CoherentSuperposition tensor(const CoherentSuperposition& a, const CoherentSuperposition& b);

// Amplitudes times exp(i phi) on one mode (all modes if mode < 0).
CoherentSuperposition phase_shifter(const CoherentSuperposition& s, double phi, int mode = -1);

// (b, c) -> (b cos + c sin, -c cos + b sin) on a two-mode state.
CoherentSuperposition beam_splitter(const CoherentSuperposition& s, double theta);

// Two-cat interferometer output with 50:50 splitters, phase phi on arm 2.
CoherentSuperposition interferometer_psi_f(cplx alpha0, cplx chi1, cplx chi2, cplx xi1, cplx xi2, double phi);
// Same state written out branch by branch.
CoherentSuperposition interferometer_psi_f_closed_form(cplx alpha0, cplx chi1, cplx chi2, cplx xi1, cplx xi2,
                                                       double phi);

// <a^dag a> on one mode, divided by the squared norm.
double mean_photon_number(const CoherentSuperposition& s, std::size_t mode);

// Tr[rho_mode^2] of a normalized two-mode pure state.
double reduced_purity(const CoherentSuperposition& s, int mode);

// JSON text: {"n_modes":..,"terms":[{"coeff":[re,im],"amps":[[re,im],..]},..]}
std::string to_json(const CoherentSuperposition& s);

}  // namespace sfqo
