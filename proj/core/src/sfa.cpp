#include "sfqo/sfa.hpp"

#include <cmath>
#include <stdexcept>

namespace sfqo {

void AtomModel::validate() const {
    if (!(ip > 0.0)) throw std::invalid_argument("atom.ip must be > 0");
    if (!(lam > 0.0)) throw std::invalid_argument("atom.lam must be > 0");
}

namespace {
double dipole_prefactor(const AtomModel& a) {
    return std::sqrt(a.lam * a.lam * a.lam / pi) / std::pow(2.0 * pi, 1.5) * 32.0 * pi * a.lam;
}
}  // namespace

CVec3 transition_dipole(const AtomModel& atom, const Vec3& v) {
    double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    double den = atom.lam * atom.lam + v2;
    double s = dipole_prefactor(atom) / (den * den * den);
    return {-I * (s * v[0]), -I * (s * v[1]), -I * (s * v[2])};
}

cplx transition_dipole_par(const AtomModel& atom, double v_par, double v_perp2) {
    double den = atom.lam * atom.lam + v_par * v_par + v_perp2;
    return -I * (dipole_prefactor(atom) * v_par / (den * den * den));
}

double semiclassical_action(const PulseIntegrals& P, const AtomModel& atom, const Vec3& p, double t1, double t2) {
    const auto& e = P.pulse().polarization;
    double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    double ppar = p[0] * e[0] + p[1] * e[1] + p[2] * e[2];
    return (0.5 * p2 + atom.ip) * (t2 - t1) + ppar * (P.int_a(t2) - P.int_a(t1)) +
           0.5 * (P.int_a2(t2) - P.int_a2(t1));
}

double semiclassical_action(const LaserPulse& pulse, const AtomModel& atom, const Vec3& p, double t1, double t2) {
    return semiclassical_action(PulseIntegrals(pulse), atom, p, t1, t2);
}

double semiclassical_action_quadrature(const LaserPulse& pulse, const AtomModel& atom, const Vec3& p, double t1,
                                       double t2, double h) {
    if (t2 <= t1) return 0.0;
    auto g = UniformGrid::spanning(t1, t2, h);
    const auto& e = pulse.polarization;
    std::vector<double> f(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        double a = vector_potential_z(pulse, g[j]);
        double vx = p[0] + a * e[0], vy = p[1] + a * e[1], vz = p[2] + a * e[2];
        f[j] = 0.5 * (vx * vx + vy * vy + vz * vz) + atom.ip;
    }
    return simpson(f, g.h);
}

cplx ionization_amplitude(const LaserPulse& pulse, const AtomModel& atom, const Vec3& p, double t, int refine) {
    if (t <= 0.0) return 0.0;
    PulseIntegrals P(pulse);
    const auto& e = pulse.polarization;
    const double ppar = p[0] * e[0] + p[1] * e[1] + p[2] * e[2];
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double perp2 = std::max(0.0, p2 - ppar * ppar);
    auto g = UniformGrid::spanning(0.0, t, 0.25 / std::max(refine, 1));
    auto integrand = [&](double tt, double& ph) {
        ph = semiclassical_action(P, atom, p, 0.0, tt);
        return electric_field_z(pulse, tt) * transition_dipole_par(atom, ppar + P.a(tt), perp2);
    };
    std::vector<cplx> amp(g.n);
    std::vector<double> phase(g.n);
    for (std::size_t j = 0; j < g.n; ++j) amp[j] = integrand(g[j], phase[j]);
    cplx acc = 0.0;
    for (std::size_t j = 1; j < g.n; ++j) {
        double pm;
        cplx am = integrand(g[j - 1] + 0.5 * g.h, pm);
        // curvature of the phase goes into the midpoint amplitude
        am *= std::exp(I * (pm - 0.5 * (phase[j - 1] + phase[j])));
        acc += filon_panel3(amp[j - 1], am, amp[j], phase[j - 1], phase[j], g.h);
    }
    return I * std::exp(-I * phase.back()) * acc;
}

SurvivalTrace ground_survival_trace(const LaserPulse& pulse, const AtomModel& atom, const SurvivalSettings& s) {
    pulse.validate();
    atom.validate();
    PulseIntegrals P(pulse);
    auto g = UniformGrid::spanning(0.0, pulse.duration(), 1.0 / std::max(s.refine, 1));
    const std::size_t nt = g.n;
    std::vector<double> a(nt), ef(nt), ia(nt), ia2(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        a[j] = P.a(g[j]);
        ef[j] = electric_field_z(pulse, g[j]);
        ia[j] = P.int_a(g[j]);
        ia2[j] = P.int_a2(g[j]);
    }
    auto pz = UniformGrid::spanning(-s.pz_max, s.pz_max, 2.0 * s.pz_max / std::max(s.n_pz - 1, 1));
    auto uu = UniformGrid::spanning(0.0, s.perp2_max, s.perp2_max / std::max(s.n_perp - 1, 1));
    auto wz = simpson_weights(pz.n, pz.h);
    auto wu = simpson_weights(uu.n, uu.h);

    // Per-pz partial rates, reduced in fixed order afterwards.
    std::vector<std::vector<double>> part(pz.n, std::vector<double>(nt, 0.0));
    parallel_for(pz.n, [&](std::size_t iz) {
        const double p = pz[iz];
        std::vector<double> phz(nt);
        for (std::size_t j = 0; j < nt; ++j) phz[j] = (0.5 * p * p + atom.ip) * g[j] + p * ia[j] + 0.5 * ia2[j];
        std::vector<cplx> amp(nt);
        auto& out = part[iz];
        for (std::size_t iu = 0; iu < uu.n; ++iu) {
            const double u = uu[iu];
            const double w = wz[iz] * wu[iu] * pi;
            if (w == 0.0) continue;
            for (std::size_t j = 0; j < nt; ++j) amp[j] = ef[j] * transition_dipole_par(atom, p + a[j], u);
            cplx acc = 0.0;
            double ph_prev = phz[0];
            for (std::size_t j = 1; j < nt; ++j) {
                double ph = phz[j] + 0.5 * u * g[j];
                acc += filon_panel(amp[j - 1], amp[j], ph_prev, ph, g.h);
                ph_prev = ph;
                cplx G = amp[j] * std::exp(I * ph);
                out[j] += w * std::real(std::conj(G) * acc);
            }
        }
    });

    SurvivalTrace tr{g, std::vector<double>(nt, 0.0), std::vector<double>(nt, 1.0)};
    for (std::size_t iz = 0; iz < pz.n; ++iz)
        for (std::size_t j = 0; j < nt; ++j) tr.rate[j] += part[iz][j];
    auto cum = cumtrapz(tr.rate, g.h);
    for (std::size_t j = 0; j < nt; ++j) tr.survival[j] = std::exp(-cum[j]);
    return tr;
}

double ground_survival(const LaserPulse& pulse, const AtomModel& atom, double t, const SurvivalSettings& s) {
    if (t <= 0.0) return 1.0;
    auto tr = ground_survival_trace(pulse, atom, s);
    CubicSpline<double> sp(tr.times, tr.survival);
    return std::min(1.0, sp(std::min(t, tr.times.back())));
}

std::vector<double> momentum_grid(const LaserPulse& pulse, std::size_t n, double extent) {
    if (n < 2) throw std::invalid_argument("momentum grid needs at least 2 points");
    const double pmax = extent * pulse.sqrt_up();
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = -pmax + 2.0 * pmax * double(i) / double(n - 1);
    return p;
}

DipoleTrace dipole_expectation(const LaserPulse& pulse, const AtomModel& atom, const std::vector<double>& pg,
                               int refine) {
    if (pg.size() < 8) throw std::invalid_argument("dipole_expectation: momentum grid needs >= 8 points");
    const double pmax = pg.back();
    for (std::size_t i = 0; i < pg.size(); ++i)
        if (std::abs(pg[i] + pg[pg.size() - 1 - i]) > 1e-9 * std::max(1.0, pmax))
            throw std::invalid_argument("dipole_expectation: momentum grid must be symmetric about 0");
    if (pmax < 3.0 * pulse.sqrt_up() * (1.0 - 1e-12))
        throw std::invalid_argument("dipole_expectation: momentum grid must cover +-3 sqrt(Up)");

    PulseIntegrals P(pulse);
    auto g = UniformGrid::spanning(0.0, pulse.duration(), 1.0 / std::max(refine, 1));
    const std::size_t nt = g.n;
    std::vector<double> a(nt), ef(nt), ia(nt), ia2(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        a[j] = P.a(g[j]);
        ef[j] = electric_field_z(pulse, g[j]);
        ia[j] = P.int_a(g[j]);
        ia2[j] = P.int_a2(g[j]);
    }
    // trapezoid weights on the (uniform) momentum grid
    std::vector<double> wp(pg.size());
    for (std::size_t i = 0; i < pg.size(); ++i) {
        double lo = i > 0 ? pg[i] - pg[i - 1] : 0.0;
        double hi = i + 1 < pg.size() ? pg[i + 1] - pg[i] : 0.0;
        wp[i] = 0.5 * (lo + hi);
    }

    std::vector<std::vector<double>> part(pg.size(), std::vector<double>(nt, 0.0));
    parallel_for(pg.size(), [&](std::size_t ip) {
        const double p = pg[ip];
        auto& out = part[ip];
        cplx acc = 0.0;
        double ph_prev = 0.0;
        cplx amp_prev = ef[0] * transition_dipole_par(atom, p + a[0]);
        for (std::size_t j = 1; j < nt; ++j) {
            double ph = (0.5 * p * p + atom.ip) * g[j] + p * ia[j] + 0.5 * ia2[j];
            cplx dj = transition_dipole_par(atom, p + a[j]);
            cplx amp = ef[j] * dj;
            acc += filon_panel(amp_prev, amp, ph_prev, ph, g.h);
            amp_prev = amp;
            ph_prev = ph;
            cplx z = I * std::conj(dj) * std::exp(-I * ph) * acc;
            out[j] = wp[ip] * 2.0 * std::real(z);
        }
    });

    DipoleTrace tr{g, std::vector<double>(nt, 0.0)};
    for (std::size_t ip = 0; ip < pg.size(); ++ip)
        for (std::size_t j = 0; j < nt; ++j) tr.values[j] += part[ip][j];
    return tr;
}

}  // namespace sfqo
