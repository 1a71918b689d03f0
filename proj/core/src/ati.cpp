#include "sfqo/ati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfqo {

namespace {

struct ModeSplit {
    std::vector<double> harm_omegas;
    std::vector<double> harm_g;
    double omega_l = 0.0;
    double g_l = 0.0;
};

ModeSplit split_modes(const AtiConfig& cfg) {
    ModeSplit m;
    const double w = cfg.pulse.omega;
    m.omega_l = w;
    m.g_l = cfg.coupling.effective(w);
    for (int k = 2; k <= cfg.harmonic_max; ++k) {
        double om = k * w;
        if (om / w < cfg.harmonic_cut) continue;
        m.harm_omegas.push_back(om);
        m.harm_g.push_back(cfg.coupling.effective(om));
    }
    return m;
}

double poisson_tail_above(double mean, std::size_t n_max) {
    // P(N > n_max) by summing the upper terms in log space
    if (mean <= 0.0) return 0.0;
    double lm = std::log(mean);
    double s = 0.0;
    for (std::size_t n = n_max + 1; n < n_max + 2000; ++n) {
        double lt = -mean + double(n) * lm - std::lgamma(double(n) + 1.0);
        double t = std::exp(lt);
        s += t;
        if (double(n) > mean && t < 1e-18 * std::max(s, 1e-300)) break;
    }
    return s;
}

}  // namespace

std::vector<cplx> c_hh_profile(const AtiConfig& cfg, const UniformGrid& grid) {
    PulseIntegrals P(cfg.pulse);
    auto m = split_modes(cfg);
    std::vector<cplx> lg(grid.n, 0.0);
    for (std::size_t k = 0; k < m.harm_omegas.size(); ++k) {
        auto phi = bch_phase_profile(P, cfg.p, grid, m.harm_omegas[k], m.harm_g[k]);
        auto del = delta_profile(P, cfg.p, grid, m.harm_omegas[k], m.harm_g[k]);
        for (std::size_t j = 0; j < grid.n; ++j) lg[j] += I * phi[j] - 0.5 * std::norm(del[j]);
    }
    for (auto& z : lg) z = std::exp(z);
    return lg;
}

cplx c_hh_weight(const AtiConfig& cfg, double t_ion, double h) {
    const double T = cfg.pulse.duration();
    t_ion = std::clamp(t_ion, 0.0, T);
    if (t_ion >= T) return 1.0;
    auto grid = UniformGrid::spanning(t_ion, T, h);
    return c_hh_profile(cfg, grid).front();
}

AtiAmplitudeTable ati_fock_amplitudes(const AtiConfig& cfg) {
    cfg.pulse.validate();
    cfg.atom.validate();
    const double T = cfg.pulse.duration();
    const double h = cfg.coarse_dt / std::max(cfg.substeps, 1);
    const auto grid = UniformGrid::spanning(0.0, T, h);
    const std::size_t nt = grid.n;
    PulseIntegrals P(cfg.pulse);
    auto m = split_modes(cfg);

    AtiAmplitudeTable out;
    out.p = cfg.p;
    out.direct_regime = cfg.direct_regime();
    if (!out.direct_regime) out.warnings.push_back("|p| > 0.46 sqrt(Up): rescattering not negligible");

    // fundamental-mode displacement and phase
    auto d_l = delta_profile(P, cfg.p, grid, m.omega_l, m.g_l);
    auto phi_l = bch_phase_profile(P, cfg.p, grid, m.omega_l, m.g_l);

    // harmonic weight and field factor
    std::vector<cplx> chh_log(nt, 0.0), f1(nt, 0.0);
    std::vector<std::vector<cplx>> dk(m.harm_omegas.size());
    parallel_for(m.harm_omegas.size(), [&](std::size_t k) {
        dk[k] = delta_profile(P, cfg.p, grid, m.harm_omegas[k], m.harm_g[k]);
    });
    for (std::size_t k = 0; k < m.harm_omegas.size(); ++k) {
        auto phi = bch_phase_profile(P, cfg.p, grid, m.harm_omegas[k], m.harm_g[k]);
        for (std::size_t j = 0; j < nt; ++j) {
            chh_log[j] += I * phi[j] - 0.5 * std::norm(dk[k][j]);
            f1[j] += m.harm_g[k] * std::exp(-I * (m.harm_omegas[k] * grid[j])) * dk[k][j];
        }
    }

    // prefactor W(t') = d(p + A) exp(i S(0, t')) C_HH exp(i theta)
    std::vector<cplx> wfac(nt), beta(nt);
    double bmax = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
        const double t = grid[j];
        cplx d = transition_dipole_par(cfg.atom, cfg.p + P.a(t));
        double S = semiclassical_action(P, cfg.atom, {0.0, 0.0, cfg.p}, 0.0, t);
        double theta = phi_l[j] + std::imag(cfg.alpha * std::conj(d_l[j]));
        wfac[j] = d * std::exp(I * (S + theta) + chh_log[j]);
        beta[j] = cfg.alpha + d_l[j];
        bmax = std::max(bmax, std::abs(beta[j]));
    }

    std::size_t n_max = cfg.n_max;
    if (n_max == 0) n_max = std::max<std::size_t>(10, std::size_t(std::ceil(bmax * bmax + 10.0 * bmax)));
    out.tail_bound = poisson_tail_above(bmax * bmax, n_max);
    if (cfg.n_max != 0 && out.tail_bound > 1e-6)
        throw ConvergenceError("ati.n_max: too small, Poisson tail " + std::to_string(out.tail_bound) + " > 1e-6");

    const auto w = simpson_weights(nt, grid.h);
    std::vector<cplx> c(n_max + 1, 0.0);
    std::vector<double> sq(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) sq[n] = std::sqrt(double(n));
    for (std::size_t j = 0; j < nt; ++j) {
        const cplx b = beta[j];
        const cplx bc = std::conj(b);
        const cplx pre = w[j] * wfac[j];
        const cplx ib = 1.0 / b;
        cplx K = std::exp(-0.5 * std::norm(b));  // <n|beta> at n = 0
        for (std::size_t n = 0; n <= n_max; ++n) {
            if (n > 0) K *= b / sq[n];
            // F1 <n|beta> - g_l <n|D(beta)|1>
            c[n] += pre * K * (f1[j] - m.g_l * (double(n) * ib - bc));
        }
    }

    out.amps = c;
    out.probs.resize(n_max + 1);
    double s = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) s += (out.probs[n] = std::norm(c[n]));
    out.norm = s;
    if (s > 0.0)
        for (auto& p : out.probs) p /= s;
    return out;
}

double mean_photon(const AtiAmplitudeTable& t) {
    double m = 0.0;
    for (std::size_t n = 0; n < t.probs.size(); ++n) m += double(n) * t.probs[n];
    return m;
}

AtiEnsemble ati_mixed_ensemble(const AtiConfig& base, const std::vector<std::pair<double, double>>& members) {
    if (members.empty()) throw std::invalid_argument("ati_mixed_ensemble: empty member list");
    double ws = 0.0;
    for (auto& [wt, p] : members) {
        if (wt < 0.0) throw std::invalid_argument("ati_mixed_ensemble: negative weight");
        ws += wt;
    }
    if (std::abs(ws - 1.0) > 1e-9) throw std::invalid_argument("ati_mixed_ensemble: weights must sum to 1");
    AtiEnsemble e;
    e.members.resize(members.size());
    parallel_for(members.size(), [&](std::size_t i) {
        AtiConfig c = base;
        c.p = members[i].second;
        e.members[i] = ati_fock_amplitudes(c);
    });
    std::size_t n = 0;
    for (const auto& m : e.members) n = std::max(n, m.probs.size());
    e.probs.assign(n, 0.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        e.weights.push_back(members[i].first);
        for (std::size_t k = 0; k < e.members[i].probs.size(); ++k) e.probs[k] += members[i].first * e.members[i].probs[k];
        e.mean += members[i].first * mean_photon(e.members[i]);
    }
    return e;
}

PeakReport analyze_peaks(const std::vector<double>& P, std::size_t min_sep, double rel) {
    PeakReport r;
    const std::size_t n = P.size();
    if (n == 0) return r;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        double l = i > 0 ? P[i - 1] : 0.0, rr = i + 1 < n ? P[i + 1] : 0.0;
        s[i] = 0.25 * l + 0.5 * P[i] + 0.25 * rr;
    }
    double smax = *std::max_element(s.begin(), s.end());
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n; ++i) {
        double l = i > 0 ? s[i - 1] : -1.0, rr = i + 1 < n ? s[i + 1] : -1.0;
        if (s[i] > l && s[i] >= rr && s[i] >= rel * smax) cand.push_back(i);
    }
    // enforce separation, keeping the larger maximum
    std::sort(cand.begin(), cand.end(), [&](auto a, auto b) { return s[a] > s[b]; });
    for (auto c : cand) {
        bool ok = true;
        for (auto k : r.maxima) ok = ok && (c > k ? c - k : k - c) >= min_sep;
        if (ok) r.maxima.push_back(c);
    }
    std::sort(r.maxima.begin(), r.maxima.end());
    r.dominant = std::size_t(std::max_element(s.begin(), s.end()) - s.begin());
    std::size_t lo = r.dominant, hi = r.dominant;
    while (lo > 0 && s[lo - 1] <= s[lo]) --lo;
    while (hi + 1 < n && s[hi + 1] <= s[hi]) ++hi;
    for (std::size_t i = lo; i <= hi; ++i) r.dominant_mass += P[i];
    return r;
}

}  // namespace sfqo
