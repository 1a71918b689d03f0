#include "sfqo/displacement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfqo {

void ModeGrid::validate() const {
    if (omegas.empty()) throw std::invalid_argument("mode grid is empty");
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        if (!(omegas[k] > 0.0)) throw std::invalid_argument("mode frequencies must be > 0");
        if (k > 0 && !(omegas[k] > omegas[k - 1])) throw std::invalid_argument("mode frequencies must ascend");
    }
    coupling.validate();
}

ModeGrid ModeGrid::harmonics(double omega_l, int n_max, FieldCoupling coupling) {
    ModeGrid m;
    m.coupling = coupling;
    for (int n = 1; n <= n_max; ++n) m.omegas.push_back(n * omega_l);
    return m;
}

std::vector<cplx> chi_trace(const DipoleTrace& tr, double w, double g) {
    std::vector<cplx> f(tr.values.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = tr.values[j] * std::exp(I * (w * tr.times[j]));
    auto c = cumtrapz(f, tr.times.h);
    for (auto& z : c) z *= -g;
    return c;
}

cplx chi(const DipoleTrace& tr, double w, double g, double t) {
    const auto& G = tr.times;
    if (t <= G.t0) return 0.0;
    t = std::min(t, G.back());
    auto last = static_cast<std::size_t>(std::floor((t - G.t0) / G.h + 1e-12));
    last = std::min(last, G.n - 1);
    auto f = [&](std::size_t j) { return tr.values[j] * std::exp(I * (w * G[j])); };
    cplx s = 0.0;
    for (std::size_t j = 1; j <= last; ++j) s += 0.5 * G.h * (f(j - 1) + f(j));
    double rem = t - G[last];
    if (rem > 1e-14 && last + 1 < G.n) {
        double u = rem / G.h;
        double dv = (1.0 - u) * tr.values[last] + u * tr.values[last + 1];
        s += 0.5 * rem * (f(last) + dv * std::exp(I * (w * t)));
    }
    return -g * s;
}

Spectrum hhg_spectrum(const DipoleTrace& tr, double omega_l, double g, int n_atoms, double order_max,
                      double d_order) {
    if (n_atoms < 1) throw std::invalid_argument("hhg_spectrum: n_atoms must be >= 1");
    Spectrum s;
    const auto n = static_cast<std::size_t>(std::llround(order_max / d_order));
    s.orders.resize(n);
    s.raw.resize(n);
    const double n2 = double(n_atoms) * double(n_atoms);
    const auto w = simpson_weights(tr.values.size(), tr.times.h);
    parallel_for(n, [&](std::size_t i) {
        double q = d_order * double(i + 1);
        double om = q * omega_l;
        cplx acc = 0.0;
        for (std::size_t j = 0; j < tr.values.size(); ++j) acc += w[j] * tr.values[j] * std::exp(I * (om * tr.times[j]));
        s.orders[i] = q;
        s.raw[i] = n2 * std::norm(g * acc);
    });
    // fundamental reference: nearest order to 1
    std::size_t i1 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(s.orders[i] - 1.0) < std::abs(s.orders[i1] - 1.0)) i1 = i;
    double ref = s.raw[i1] > 0.0 ? s.raw[i1] : 1.0;
    s.normalized.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.normalized[i] = s.raw[i] / ref;
    return s;
}

HarmonicSummary analyze_harmonics(const Spectrum& s, const LaserPulse& pulse, const AtomModel& atom,
                                  double half_width, int first_plateau_order, double cutoff_drop_db) {
    HarmonicSummary h;
    h.cutoff_law = (atom.ip + 3.17 * pulse.ponderomotive_energy()) / pulse.omega;
    auto peak = [&](double q) {
        double m = 0.0;
        for (std::size_t i = 0; i < s.orders.size(); ++i)
            if (std::abs(s.orders[i] - q) <= half_width + 1e-9) m = std::max(m, s.raw[i]);
        return m;
    };
    const int qmax = static_cast<int>(std::floor(s.orders.back() - half_width));
    // plateau level: median odd-order peak from first_plateau_order up to the cutoff law
    std::vector<double> lv;
    for (int q = first_plateau_order; q <= static_cast<int>(h.cutoff_law); q += 2) lv.push_back(peak(q));
    double plateau = 0.0;
    if (!lv.empty()) {
        std::nth_element(lv.begin(), lv.begin() + lv.size() / 2, lv.end());
        plateau = lv[lv.size() / 2];
    }
    const double floor_level = plateau * std::pow(10.0, -cutoff_drop_db / 10.0);
    h.cutoff_order = 0;
    for (int q = 1; q <= qmax; q += 2)
        if (peak(q) >= floor_level) h.cutoff_order = q;
    for (int q = first_plateau_order; q <= h.cutoff_order - 2; q += 2) {
        double even = std::max(peak(q - 1), peak(q + 1));
        double c = 10.0 * std::log10(std::max(peak(q), 1e-300) / std::max(even, 1e-300));
        h.odd_orders.push_back(q);
        h.contrast_db.push_back(c);
    }
    if (!h.contrast_db.empty()) {
        double sum = 0.0;
        h.min_contrast_db = h.contrast_db.front();
        for (double c : h.contrast_db) {
            sum += c;
            h.min_contrast_db = std::min(h.min_contrast_db, c);
        }
        h.mean_contrast_db = sum / double(h.contrast_db.size());
    }
    return h;
}

Vec3 electron_displacement(const LaserPulse& pulse, const Vec3& p, double t) {
    PulseIntegrals P(pulse);
    double ia = P.int_a(t);
    const auto& e = pulse.polarization;
    return {p[0] * t + ia * e[0], p[1] * t + ia * e[1], p[2] * t + ia * e[2]};
}

double electron_displacement_par(const PulseIntegrals& P, double p_par, double t) { return p_par * t + P.int_a(t); }

cplx displacement_fourier(const PulseIntegrals& P, double p_par, double t1, double t, double w) {
    return p_par * t_exp_integral(w, t1, t) + P.fourier_int_a(w, t1, t);
}

cplx displacement_fourier_quadrature(const PulseIntegrals& P, double p_par, double t1, double t, double w, double h) {
    if (t <= t1) return 0.0;
    auto g = UniformGrid::spanning(t1, t, h);
    std::vector<cplx> f(g.n);
    for (std::size_t j = 0; j < g.n; ++j) f[j] = std::exp(I * (w * g[j])) * electron_displacement_par(P, p_par, g[j]);
    return trapz(f, g.h);
}

cplx delta(const PulseIntegrals& P, double p_par, double t, double t1, double w, double g) {
    if (t1 > t) throw std::invalid_argument("delta: t1 must not exceed t");
    if (t1 == t) return 0.0;
    return -electron_charge * g * std::conj(displacement_fourier(P, p_par, t1, t, w));
}

std::vector<double> bch_phase_profile(const PulseIntegrals& P, double p_par, const UniformGrid& grid, double w,
                                      double g) {
    const std::size_t n = grid.n;
    std::vector<cplx> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = std::exp(I * (w * grid[j])) * electron_displacement_par(P, p_par, grid[j]);
    auto c = cumtrapz(f, grid.h);
    std::vector<cplx> fc(n);
    for (std::size_t j = 0; j < n; ++j) fc[j] = f[j] * std::conj(c[j]);
    auto Q = cumtrapz(fc, grid.h);
    std::vector<double> phi(n);
    const cplx cN = c[n - 1], QN = Q[n - 1];
    for (std::size_t i = 0; i < n; ++i) phi[i] = g * g * std::imag((QN - Q[i]) - std::conj(c[i]) * (cN - c[i]));
    return phi;
}

BchPhases bch_phases(const PulseIntegrals& P, double p_par, double t, double t1, double w, double g, cplx chi_val,
                     double h) {
    if (t1 > t) throw std::invalid_argument("bch_phases: t1 must not exceed t");
    BchPhases out;
    if (t1 == t) return out;
    auto grid = UniformGrid::spanning(t1, t, h);
    out.phi = bch_phase_profile(P, p_par, grid, w, g).front();
    out.phi_chi_delta = std::imag(delta(P, p_par, t, t1, w, g) * std::conj(chi_val));
    return out;
}

std::vector<cplx> delta_profile(const PulseIntegrals& P, double p_par, const UniformGrid& grid, double w, double g) {
    std::vector<cplx> d(grid.n);
    const double t = grid.back();
    for (std::size_t j = 0; j < grid.n; ++j) d[j] = delta(P, p_par, t, std::min(grid[j], t), w, g);
    return d;
}

}  // namespace sfqo
