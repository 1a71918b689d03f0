#include "sfqo/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfqo {

void LaserPulse::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("pulse.omega must be > 0");
    if (!(e0 >= 0.0)) throw std::invalid_argument("pulse.e0 must be >= 0");
    if (n_cyc < 1) throw std::invalid_argument("pulse.n_cyc must be >= 1");
    double nrm = std::sqrt(polarization[0] * polarization[0] + polarization[1] * polarization[1] +
                           polarization[2] * polarization[2]);
    if (std::abs(nrm - 1.0) > 1e-12) throw std::invalid_argument("pulse.polarization must be a unit vector");
}

double LaserPulse::duration() const { return 2.0 * pi * n_cyc / omega; }
double LaserPulse::ponderomotive_energy() const { return e0 * e0 / (4.0 * omega * omega); }
double LaserPulse::sqrt_up() const { return std::sqrt(ponderomotive_energy()); }

double vector_potential_z(const LaserPulse& p, double t) {
    if (t <= 0.0 || t >= p.duration()) return 0.0;
    double s = std::sin(p.omega * t / (2.0 * p.n_cyc));
    return p.e0 / p.omega * s * s * std::sin(p.omega * t + p.cep);
}

double electric_field_z(const LaserPulse& p, double t) {
    if (t <= 0.0 || t >= p.duration()) return 0.0;
    const double w = p.omega;
    const double n = p.n_cyc;
    double s = std::sin(w * t / (2.0 * n));
    double dA = p.e0 / w *
                ((w / (2.0 * n)) * std::sin(w * t / n) * std::sin(w * t + p.cep) +
                 w * s * s * std::cos(w * t + p.cep));
    return -dA;
}

namespace {
Vec3 along(const Vec3& e, double v) { return {e[0] * v, e[1] * v, e[2] * v}; }
}  // namespace

Vec3 vector_potential(const LaserPulse& p, double t) { return along(p.polarization, vector_potential_z(p, t)); }
Vec3 electric_field(const LaserPulse& p, double t) { return along(p.polarization, electric_field_z(p, t)); }

cplx spectral_amplitude(const LaserPulse& p, double omega_k, int refine) {
    const auto g = UniformGrid::spanning(0.0, p.duration(), 1.0 / std::max(refine, 1));
    std::vector<cplx> f(g.n);
    for (std::size_t j = 0; j < g.n; ++j) f[j] = vector_potential_z(p, g[j]) * std::exp(-I * (omega_k * g[j]));
    return simpson(f, g.h);
}

// ---------------------------------------------------------------------------

PulseIntegrals::PulseIntegrals(const LaserPulse& p) : pulse_(p), T_(p.duration()) {
    const double w = p.omega;
    const double we = w / p.n_cyc;
    const double a0 = p.e0 / (2.0 * w);
    comps_ = {{a0, w}, {-0.5 * a0, w + we}, {-0.5 * a0, w - we}};
}

double PulseIntegrals::a(double t) const { return vector_potential_z(pulse_, t); }

double PulseIntegrals::int_a(double t) const {
    t = std::clamp(t, 0.0, T_);
    const double c = pulse_.cep;
    double s = 0.0;
    for (const auto& k : comps_) {
        if (std::abs(k.freq) < 1e-14)
            s += k.amp * t * std::sin(c);
        else
            s += k.amp * (std::cos(c) - std::cos(k.freq * t + c)) / k.freq;
    }
    return s;
}

namespace {
// int_0^t cos(W s + C) ds
double cos_primitive(double W, double C, double t) {
    if (std::abs(W) < 1e-14) return t * std::cos(C);
    return (std::sin(W * t + C) - std::sin(C)) / W;
}
}  // namespace

double PulseIntegrals::int_a2(double t) const {
    t = std::clamp(t, 0.0, T_);
    const double c = pulse_.cep;
    double s = 0.0;
    for (const auto& ki : comps_)
        for (const auto& kj : comps_)
            s += 0.5 * ki.amp * kj.amp *
                 (cos_primitive(ki.freq - kj.freq, 0.0, t) - cos_primitive(ki.freq + kj.freq, 2.0 * c, t));
    return s;
}

cplx exp_integral(double w, double t1, double t2) {
    const double d = t2 - t1;
    const double x = w * d;
    cplx j0;
    if (std::abs(x) < 0.1) {
        cplx term = 1.0, sum = 0.0;
        for (int m = 0; m < 14; ++m) {
            sum += term / double(m + 1);
            term *= I * x / double(m + 1);
        }
        j0 = d * sum;
    } else {
        j0 = cplx(-2.0 * std::pow(std::sin(0.5 * x), 2), std::sin(x)) / (I * w);
    }
    return std::exp(I * (w * t1)) * j0;
}

cplx t_exp_integral(double w, double t1, double t2) {
    const double d = t2 - t1;
    const double x = w * d;
    // int_0^d s exp(i w s) ds
    cplx j1;
    if (std::abs(x) < 0.1) {
        cplx term = 1.0, sum = 0.0;
        double fact = 1.0;
        for (int m = 0; m < 14; ++m) {
            if (m > 0) {
                term *= I * x;
                fact *= m;
            }
            sum += term / (fact * (m + 2));
        }
        j1 = d * d * sum;
    } else {
        cplx ex = std::exp(I * x);
        j1 = d * ex / (I * w) + (ex - 1.0) / (w * w);
    }
    return std::exp(I * (w * t1)) * (t1 * exp_integral(w, 0.0, d) + j1);
}

cplx PulseIntegrals::fourier_int_a(double w, double t1, double t2) const {
    // int_0^tau A = sum_j amp_j (cos c - cos(f_j tau + c)) / f_j
    const double c = pulse_.cep;
    cplx s = 0.0;
    for (const auto& k : comps_) {
        if (std::abs(k.freq) < 1e-14) {
            s += k.amp * std::sin(c) * t_exp_integral(w, t1, t2);
            continue;
        }
        // cos(f tau + c) = (e^{i(f tau + c)} + e^{-i(f tau + c)}) / 2
        cplx cosint = 0.5 * (std::exp(I * c) * exp_integral(w + k.freq, t1, t2) +
                             std::exp(-I * c) * exp_integral(w - k.freq, t1, t2));
        s += k.amp / k.freq * (std::cos(c) * exp_integral(w, t1, t2) - cosint);
    }
    return s;
}

// ---------------------------------------------------------------------------

void FieldCoupling::validate() const {
    if (!(lambda_scale > 0.0 && lambda_scale <= 1.0))
        throw std::invalid_argument("coupling.lambda_scale must be in (0, 1]");
    if (!(gtilde >= 0.0)) throw std::invalid_argument("coupling.gtilde must be >= 0");
}

double FieldCoupling::form_factor(double omega_k) const {
    if (gamma_cutoff <= 0.0) return 1.0;
    double k = omega_k / speed_of_light;
    return gamma_cutoff / std::sqrt(gamma_cutoff * gamma_cutoff + k * k);
}

double FieldCoupling::effective(double omega_k) const { return gtilde * lambda_scale * form_factor(omega_k); }

}  // namespace sfqo
