// Prints one PASS/FAIL line per criterion and a tally; exit 1 unless all are met.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sfqo/ati.hpp"
#include "sfqo/config.hpp"
#include "sfqo/displacement.hpp"
#include "sfqo/fock.hpp"
#include "sfqo/qspec.hpp"
#include "sfqo/tomography.hpp"

using namespace sfqo;

namespace {

int n_pass = 0;

void report(int id, bool ok, const std::string& detail, double seconds) {
    if (ok) ++n_pass;
    std::printf("criterion %2d: %s  %s  [%.1f s]\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
    std::fflush(stdout);
}

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * double(i + j);
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto ra = ranks(a), rb = ranks(b);
    double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
    double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

void hhg() {
    Clock c;
    LaserPulse p;
    p.n_cyc = 10;
    AtomModel a;
    auto tr = dipole_expectation(p, a, momentum_grid(p, 512, 4.0));
    auto sp = hhg_spectrum(tr, p.omega, FieldCoupling{}.effective(p.omega), 1, 30.0, 0.05);
    auto hs = analyze_harmonics(sp, p, a, 0.25, 5, 10.0);
    double t = c.seconds();
    bool ok = hs.min_contrast_db >= 10.0 && std::abs(hs.cutoff_order - 21) <= 2 && t <= 120.0;
    report(1, ok,
           fmt("min odd/even contrast %.2f dB (mean %.2f), cutoff %d, law %.2f", hs.min_contrast_db,
               hs.mean_contrast_db, hs.cutoff_order, hs.cutoff_law),
           t);
}

void css() {
    Clock c;
    bool ok = true;
    std::string d;
    for (double al : {7.95, 8.73}) {
        auto f = photon_distribution(CoherentSuperposition::coherent(al), 300);
        ok &= std::abs(f.mean() - al * al) <= 1e-6 && std::abs(f.variance() - al * al) <= 1e-6;
        d += fmt("mean %.6f var %.6f; ", f.mean(), f.variance());
    }
    std::size_t peaks[2];
    int i = 0;
    for (double s2 : {-1.0, 1.0}) {
        CoherentSuperposition s(1);
        s.add(1.0, {7.0});
        s.add(s2, {9.0});
        s.add(0.75, {10.0});
        peaks[i++] = analyze_peaks(photon_distribution(s.normalized(), 300).probs, 3, 0.05).maxima.size();
    }
    ok &= peaks[0] >= 3 && peaks[1] < peaks[0];
    report(2, ok, d + fmt("maxima (1,-1,0.75): %zu, (1,1,0.75): %zu", peaks[0], peaks[1]), c.seconds());
}

void hierarchy() {
    Clock c;
    LaserPulse p;
    auto tr = dipole_expectation(p, AtomModel{}, momentum_grid(p, 512, 4.0));
    PulseIntegrals P(p);
    const double T = p.duration(), pz = 0.93 * p.sqrt_up();
    FieldCoupling cp;
    std::string d;
    bool ok = true;
    for (int n : {1, 2, 3}) {
        double w = n * p.omega, g = cp.effective(w), worst = 1e300;
        for (int j = 0; j <= 100; ++j) {
            double t1 = T * (0.25 + 0.5 * j / 100.0);
            worst = std::min(worst, std::abs(delta(P, pz, T, t1, w, g)) / std::abs(chi(tr, w, g, t1)));
        }
        ok &= worst >= 100.0;
        d += fmt("n=%d min %.0f; ", n, worst);
    }
    report(3, ok && c.seconds() <= 60.0, "|delta|/|chi| " + d, c.seconds());
}

void ati_sign() {
    Clock c;
    AtiConfig base;
    const double su = base.pulse.sqrt_up();
    std::vector<double> mag, dev;
    int agree = 0, total = 0;
    for (int i = 0; i < 19; ++i) {
        double f = -0.46 + 0.92 * i / 18.0;
        if (std::abs(f) < 0.1 - 1e-9) continue;
        AtiConfig cfg = base;
        cfg.p = f * su;
        double m = mean_photon(ati_fock_amplitudes(cfg));
        ++total;
        if ((m - 49.0) * f > 0) ++agree;
        mag.push_back(std::abs(f));
        dev.push_back(std::abs(m - 49.0));
    }
    double frac = double(agree) / total, rho = spearman(mag, dev);
    double t = c.seconds();
    report(4, frac >= 0.9 && rho >= 0.8 && t <= 600.0,
           fmt("sign agreement %.2f over %d points with |p| >= 0.1, Spearman %.2f", frac, total, rho), t);
}

void ati_peaks() {
    Clock c;
    AtiConfig base;
    const double su = base.pulse.sqrt_up();
    bool ok = true;
    std::string d;
    for (double f : {-0.14, 0.14}) {
        AtiConfig cfg = base;
        cfg.p = f * su;
        auto pk = analyze_peaks(ati_fock_amplitudes(cfg).probs);
        ok &= pk.maxima.size() >= 2;
        d += fmt("p=%+.2f: %zu maxima; ", f, pk.maxima.size());
    }
    for (double f : {-0.32, 0.32}) {
        AtiConfig cfg = base;
        cfg.p = f * su;
        auto pk = analyze_peaks(ati_fock_amplitudes(cfg).probs);
        ok &= pk.dominant_mass >= 0.6;
        d += fmt("p=%+.2f: dominant mass %.2f; ", f, pk.dominant_mass);
    }
    report(5, ok, d, c.seconds());
}

void cat_wigner_check() {
    Clock c;
    auto spec = GridSpec::centered(6.0, 241);
    bool ok = true;
    std::string d;
    for (double x : {0.8, 0.1}) {
        auto w = wigner_cat(2.0, x, spec);
        ok &= w.min() < 0.0 && std::abs(w.integral() - 1.0) <= 1e-3;
        d += fmt("chi=%.1f min %.3f integral %.6f; ", x, w.min(), w.integral());
    }
    // along Re beta through the two lobes
    double lo = 2.4, v0 = wigner_cat_beta(2.0, 0.8, lo);
    double left = 0, right = 0;
    for (double x = 0.0; x <= 2.4; x += 0.01) left = std::max(left, wigner_cat_beta(2.0, 0.8, x));
    for (double x = 2.4; x <= 5.0; x += 0.01) right = std::max(right, wigner_cat_beta(2.0, 0.8, x));
    bool dip = v0 < left && v0 < right;
    ok &= dip;
    report(6, ok, d + fmt("centre %.3f between lobes %.3f / %.3f", v0, left, right), c.seconds());
}

void tomography_fidelity() {
    Clock c;
    SweepSettings st;
    st.values = {5000, 10000};
    st.n_seeds = 20;
    st.kc = 3.7;
    st.nbar = 3.0;
    st.grid = GridSpec::centered(5.0, 81);
    auto rows = error_sweep(SweepProtocol::VsNSamples, st);
    // peak error on the |alpha| = 2 coherent state
    SweepSettings pk = st;
    pk.nbar = 4.0;
    auto prow = error_sweep(SweepProtocol::VsNSamples, pk);
    bool ok = prow[1].mean_peak_error_pct <= 1.5 && prow[0].mean_peak_error_pct <= 5.0 &&
              rows[0].mean_error_pct <= 1.5 && rows[1].mean_error_pct <= 1.5;
    double t = c.seconds();
    report(7, ok && t <= 300.0,
           fmt("peak error %.2f%% @1e4, %.2f%% @5e3; <n>=3 error %.2f%% @5e3, %.2f%% @1e4",
               prow[1].mean_peak_error_pct, prow[0].mean_peak_error_pct, rows[0].mean_error_pct,
               rows[1].mean_error_pct),
           t);
}

void radon() {
    Clock c;
    auto coarse = wigner_cat(2.0, 0.8, GridSpec::centered(5.0, 201));
    auto [bx, by] = coarse.argmax();
    GridSpec local{bx - 0.1, bx + 0.1, by - 0.1, by + 0.1, 11, 11};
    double exact = wigner_cat(2.0, 0.8, GridSpec{bx - 0.1, bx + 0.1, by - 0.1, by + 0.1, 101, 101}).max();
    CoherentSuperposition s(1);
    s.add(1.0, {2.8});
    s.add(-overlap(2.0, 2.8), {2.0});
    auto rec = reconstruct_from_marginals(s.normalized(), 3.7, local, 180, 0.02);
    double err = std::abs(rec.max() - exact) / exact * 100.0;
    report(8, err < 3.0, fmt("peak %.4f vs closed form %.4f: %.2f%%", rec.max(), exact, err), c.seconds());
}

void spectrometer() {
    Clock c;
    int good = 0, seeds = 8;
    bool exact_band = true;
    std::string d;
    for (int seed = 1; seed <= seeds; ++seed) {
        QspecModel m;
        m.seed = std::uint64_t(seed);
        auto stable = balance(stability_filter(generate_shots(m), 0.01));
        Selection sel;
        try {
            sel = anticorrelation_select(stable, m.w_j, stable.size());
        } catch (const std::runtime_error&) {
            d += fmt("s%d: empty; ", seed);
            continue;
        }
        exact_band &= sel.w_ant == m.w_j / std::sqrt(double(stable.size()));
        auto st = selection_stats(stable, sel.shots);
        auto h = p_ir_histogram(sel.shots, 0.002);
        bool ok = st.enrichment >= 10.0 && h.peaks.size() >= 2 &&
                  std::abs(h.mean_spacing() - m.ladder_spacing()) <= 0.002;
        good += ok;
        d += fmt("s%d: enrich %.0f spacing %.4f; ", seed, st.enrichment, h.peaks.size() >= 2 ? h.mean_spacing() : 0.0);
    }
    report(9, good == seeds && exact_band, fmt("%d/%d seeds recover the ladder; ", good, seeds) + d, c.seconds());
}

void invariants() {
    Clock c;
    bool ok = true;
    std::string d;

    LaserPulse p;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, p.duration() - 0.01);
    double fd_worst = 0, h = 1e-4;
    for (int i = 0; i < 1000; ++i) {
        double t = u(rng);
        double fd = (vector_potential_z(p, t + h) - vector_potential_z(p, t - h)) / (2 * h);
        fd_worst = std::max(fd_worst, std::abs(electric_field_z(p, t) + fd));
    }
    ok &= fd_worst <= 1e-6;
    d += fmt("E+dA/dt %.1e; ", fd_worst);

    auto s = CoherentSuperposition::product({cplx(1.0, 0.5), cplx(-0.3, 2.0)});
    double bs_worst = 0;
    for (double th : {0.3, pi / 4, 1.2}) {
        auto o = beam_splitter(s, th);
        double ein = std::norm(s.terms()[0].amps[0]) + std::norm(s.terms()[0].amps[1]);
        double eout = std::norm(o.terms()[0].amps[0]) + std::norm(o.terms()[0].amps[1]);
        bs_worst = std::max(bs_worst, std::abs(ein - eout));
    }
    ok &= bs_worst <= 1e-12;
    d += fmt("BS energy %.1e; ", bs_worst);

    double ov_worst = 0;
    for (auto [a, b] : {std::pair{cplx(2, 0), cplx(2.8, 0)}, {cplx(0.5, 1.0), cplx(-0.3, 0.9)}, {cplx(0, 7), cplx(0.2, 6.5)}}) {
        cplx acc = 0.0;
        double lf = 0.0;
        for (int n = 0; n <= 200; ++n) {
            if (n > 0) lf += std::log(double(n));
            acc += std::exp(-0.5 * (std::norm(a) + std::norm(b)) - lf) * std::pow(std::conj(a) * b, n);
        }
        ov_worst = std::max(ov_worst, std::abs(overlap(a, b) - acc));
    }
    ok &= ov_worst <= 1e-10;
    d += fmt("overlap %.1e; ", ov_worst);

    auto tr = dipole_expectation(p, AtomModel{}, momentum_grid(p, 256, 4.0));
    double chi_worst = 0;
    for (double w : {0.057, 0.171, 0.627}) {
        auto cs = chi_trace(tr, w, 1e-3);
        for (std::size_t j = 0; j < tr.times.n; j += 7)
            chi_worst = std::max(chi_worst, std::abs(cs[j] - chi(tr, w, 1e-3, tr.times[j])));
    }
    ok &= chi_worst <= 1e-10;
    d += fmt("chi prefix %.1e; ", chi_worst);

    QspecModel m;
    m.n_shots = 50000;
    std::ostringstream a1, a2;
    write_shots_csv(a1, generate_shots(m));
    write_shots_csv(a2, generate_shots(m));
    HomodyneParams hp;
    hp.kind = StateKind::Cat;
    auto h1 = homodyne_sample(hp, 2000, 9), h2 = homodyne_sample(hp, 2000, 9);
    bool repro = a1.str() == a2.str() && h1.x == h2.x && h1.phases == h2.phases;
    ok &= repro;
    d += std::string("seeded streams ") + (repro ? "identical" : "differ");
    report(10, ok, d, c.seconds());
}

}  // namespace

int main() {
    std::printf("sfqo %s acceptance\n", version());
    hhg();
    css();
    hierarchy();
    ati_sign();
    ati_peaks();
    cat_wigner_check();
    tomography_fidelity();
    radon();
    spectrometer();
    invariants();
    std::printf("%d/10 met\n", n_pass);
    return n_pass == 10 ? 0 : 1;
}
