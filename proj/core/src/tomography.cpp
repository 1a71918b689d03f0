#include "sfqo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sfqo {

double WignerGrid::integral() const {
    const auto& s = spec;
    double sum = 0.0;
    for (std::size_t j = 0; j < s.np; ++j) {
        double wj = (j == 0 || j + 1 == s.np) ? 0.5 : 1.0;
        for (std::size_t i = 0; i < s.nx; ++i) {
            double wi = (i == 0 || i + 1 == s.nx) ? 0.5 : 1.0;
            sum += wi * wj * at(i, j);
        }
    }
    return sum * s.dx() * s.dp();
}

double WignerGrid::min() const { return *std::min_element(values.begin(), values.end()); }
double WignerGrid::max() const { return *std::max_element(values.begin(), values.end()); }

std::pair<double, double> WignerGrid::argmax() const {
    auto k = std::size_t(std::max_element(values.begin(), values.end()) - values.begin());
    return {spec.x(k % spec.nx), spec.p(k / spec.nx)};
}

namespace {
template <class F>
WignerGrid fill(const GridSpec& spec, F&& f) {
    WignerGrid w{spec, std::vector<double>(spec.nx * spec.np)};
    for (std::size_t j = 0; j < spec.np; ++j)
        for (std::size_t i = 0; i < spec.nx; ++i) w.values[j * spec.nx + i] = f(spec.x(i), spec.p(j));
    return w;
}
}  // namespace

double wigner_beta(const CoherentSuperposition& s, cplx beta) {
    if (s.n_modes() != 1) throw std::invalid_argument("wigner_beta needs a single-mode state");
    cplx acc = 0.0;
    for (const auto& ti : s.terms())
        for (const auto& tj : s.terms()) {
            cplx ai = ti.amps[0], aj = tj.amps[0];
            acc += ti.coeff * std::conj(tj.coeff) * overlap(aj, ai) *
                   std::exp(-2.0 * (beta - ai) * (std::conj(beta) - std::conj(aj)));
        }
    return 2.0 / pi * std::real(acc) / s.norm2();
}

WignerGrid wigner_coherent(cplx alpha, const GridSpec& spec) {
    return fill(spec, [&](double x, double p) { return 2.0 / pi * std::exp(-2.0 * std::norm(cplx(x, p) - alpha)); });
}

double wigner_cat_beta(cplx alpha, cplx chi, cplx beta) {
    if (std::abs(chi) == 0.0) throw std::invalid_argument("wigner_cat: chi must be nonzero");
    const double c2 = std::norm(chi);
    const double N = -std::expm1(-c2);
    cplx d = beta - alpha;
    double g0 = std::exp(-2.0 * std::norm(d));
    double t1 = std::exp(-2.0 * std::norm(d - chi));
    double t2 = std::exp(-c2) * g0;
    double t3 = 2.0 * std::real(std::exp(2.0 * d * std::conj(chi))) * std::exp(-c2) * g0;
    return 2.0 / (pi * N) * (t1 + t2 - t3);
}

WignerGrid wigner_cat(cplx alpha, cplx chi, const GridSpec& spec) {
    if (std::abs(chi) == 0.0) throw std::invalid_argument("wigner_cat: chi must be nonzero");
    return fill(spec, [&](double x, double p) { return wigner_cat_beta(alpha, chi, cplx(x, p)); });
}

WignerGrid wigner_state(const CoherentSuperposition& s, const GridSpec& spec) {
    return fill(spec, [&](double x, double p) { return wigner_beta(s, cplx(x, p)); });
}

double quadrature_density(const CoherentSuperposition& s, double phi, double x) {
    static const double c = std::pow(pi, -0.25);
    const double r2 = std::sqrt(2.0);
    cplx psi = 0.0;
    cplx rot = std::exp(-I * phi);
    for (const auto& t : s.terms()) {
        cplx a = t.amps[0] * rot;
        psi += t.coeff * c * std::exp(-0.5 * x * x + r2 * a * x - 0.5 * a * a - 0.5 * std::norm(a));
    }
    return std::norm(psi) / s.norm2();
}

CoherentSuperposition homodyne_state(const HomodyneParams& prm) {
    if (prm.kind == StateKind::Coherent) return CoherentSuperposition::coherent(prm.alpha);
    CoherentSuperposition s(1);
    s.add(1.0, {prm.alpha + prm.chi});
    s.add(-overlap(prm.alpha, prm.alpha + prm.chi), {prm.alpha});
    return s.normalized();
}

HomodyneSampleSet homodyne_sample(const HomodyneParams& prm, std::size_t n, std::uint64_t seed) {
    HomodyneSampleSet out;
    out.seed = seed;
    out.phases.resize(n);
    out.x.resize(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k)
        out.phases[k] = prm.stratified ? pi * (double(k) + uni(rng)) / double(n) : pi * uni(rng);

    if (prm.kind == StateKind::Coherent) {
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        for (std::size_t k = 0; k < n; ++k) {
            double mean = std::sqrt(2.0) * std::real(prm.alpha * std::exp(-I * out.phases[k]));
            out.x[k] = mean + gauss(rng);
        }
        return out;
    }
    // inverse CDF of the exact marginal on a quadrature grid
    auto st = homodyne_state(prm);
    double reach = std::sqrt(2.0) * (std::abs(prm.alpha) + std::abs(prm.chi)) + 7.0;
    auto g = UniformGrid::spanning(-reach, reach, 0.005);
    std::vector<double> cdf(g.n);
    for (std::size_t k = 0; k < n; ++k) {
        double phi = out.phases[k];
        cdf[0] = 0.0;
        double prev = quadrature_density(st, phi, g[0]);
        for (std::size_t i = 1; i < g.n; ++i) {
            double cur = quadrature_density(st, phi, g[i]);
            cdf[i] = cdf[i - 1] + 0.5 * g.h * (prev + cur);
            prev = cur;
        }
        double u = uni(rng) * cdf.back();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::size_t i = std::clamp<std::size_t>(std::size_t(it - cdf.begin()), 1, g.n - 1);
        double f = (u - cdf[i - 1]) / std::max(cdf[i] - cdf[i - 1], 1e-300);
        out.x[k] = g[i - 1] + f * g.h;
    }
    return out;
}

double fbp_kernel(double z, double kc) {
    const double u = kc * z;
    if (std::abs(u) < 1e-3) return kc * kc * (0.5 - u * u / 8.0 + u * u * u * u / 144.0);
    const double s = std::sin(0.5 * u);
    return kc * kc * (u * std::sin(u) - 2.0 * s * s) / (u * u);
}

namespace {

// Tabulated kernel with linear interpolation.
class KernelTable {
public:
    KernelTable(double kc, double zmax, double dz = 5e-4) : dz_(dz), zmax_(zmax) {
        auto n = std::size_t(std::ceil(zmax / dz)) + 2;
        v_.resize(n);
        for (std::size_t i = 0; i < n; ++i) v_[i] = fbp_kernel(double(i) * dz, kc);
    }
    double operator()(double z) const {
        z = std::abs(z);
        double u = z / dz_;
        auto i = std::size_t(u);
        if (i + 1 >= v_.size()) return 0.0;
        double f = u - double(i);
        return v_[i] + f * (v_[i + 1] - v_[i]);
    }
    double zmax() const { return zmax_; }

private:
    double dz_, zmax_;
    std::vector<double> v_;
};

double grid_radius(const GridSpec& s) {
    double a = std::max(std::abs(s.x_min), std::abs(s.x_max));
    double b = std::max(std::abs(s.p_min), std::abs(s.p_max));
    return std::sqrt(2.0 * (a * a + b * b));
}

}  // namespace

WignerGrid reconstruct_wigner(const HomodyneSampleSet& smp, double kc, const GridSpec& spec) {
    if (smp.x.empty()) throw std::invalid_argument("reconstruct_wigner: empty sample set");
    if (!(kc > 0.0)) throw std::invalid_argument("reconstruct_wigner: kc must be > 0");
    const std::size_t n = smp.x.size();
    double xmax = 0.0;
    for (double v : smp.x) xmax = std::max(xmax, std::abs(v));
    KernelTable K(kc, grid_radius(spec) + xmax + 1.0);
    std::vector<double> cs(n), sn(n);
    for (std::size_t k = 0; k < n; ++k) {
        cs[k] = std::cos(smp.phases[k]);
        sn[k] = std::sin(smp.phases[k]);
    }
    WignerGrid w{spec, std::vector<double>(spec.nx * spec.np, 0.0)};
    const double norm = 1.0 / (pi * double(n));
    const double r2 = std::sqrt(2.0);
    parallel_for(spec.np, [&](std::size_t j) {
        const double p = r2 * spec.p(j);
        for (std::size_t i = 0; i < spec.nx; ++i) {
            const double x = r2 * spec.x(i);
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += K(x * cs[k] + p * sn[k] - smp.x[k]);
            w.values[j * spec.nx + i] = acc * norm;
        }
    });
    return w;
}

WignerGrid reconstruct_from_marginals(const CoherentSuperposition& s, double kc, const GridSpec& spec,
                                      std::size_t n_phi, double dx_quad) {
    double amax = 0.0;
    for (const auto& t : s.terms()) amax = std::max(amax, std::abs(t.amps[0]));
    const double reach = std::sqrt(2.0) * amax + 7.0;
    auto g = UniformGrid::spanning(-reach, reach, dx_quad);
    KernelTable K(kc, grid_radius(spec) + reach + 1.0);
    WignerGrid w{spec, std::vector<double>(spec.nx * spec.np, 0.0)};
    auto wq = simpson_weights(g.n, g.h);
    const double r2 = std::sqrt(2.0);
    for (std::size_t m = 0; m < n_phi; ++m) {
        const double phi = pi * (double(m) + 0.5) / double(n_phi);
        const double c = std::cos(phi), sn = std::sin(phi);
        std::vector<double> dens(g.n);
        for (std::size_t i = 0; i < g.n; ++i) dens[i] = wq[i] * quadrature_density(s, phi, g[i]);
        parallel_for(spec.np, [&](std::size_t j) {
            const double p = r2 * spec.p(j);
            for (std::size_t i = 0; i < spec.nx; ++i) {
                const double z0 = r2 * spec.x(i) * c + p * sn;
                double acc = 0.0;
                for (std::size_t q = 0; q < g.n; ++q) acc += dens[q] * K(z0 - g[q]);
                w.values[j * spec.nx + i] += acc;
            }
        });
    }
    const double norm = 2.0 / (2.0 * pi * pi) * (pi / double(n_phi));
    for (auto& v : w.values) v *= norm;
    return w;
}

double mean_photon_from_wigner(const WignerGrid& w, double tol) {
    double z = w.integral();
    if (std::abs(z - 1.0) > tol)
        throw std::invalid_argument("mean_photon_from_wigner: grid integral " + std::to_string(z) + " is not 1");
    const auto& s = w.spec;
    double sum = 0.0;
    for (std::size_t j = 0; j < s.np; ++j) {
        double wj = (j == 0 || j + 1 == s.np) ? 0.5 : 1.0;
        for (std::size_t i = 0; i < s.nx; ++i) {
            double wi = (i == 0 || i + 1 == s.nx) ? 0.5 : 1.0;
            double x = s.x(i), p = s.p(j);
            sum += wi * wj * w.at(i, j) * 2.0 * (x * x + p * p);
        }
    }
    return 0.5 * sum * s.dx() * s.dp() - 0.5;
}

SweepProtocol parse_sweep_protocol(const std::string& name) {
    if (name == "vs_kc") return SweepProtocol::VsKc;
    if (name == "vs_nsamples") return SweepProtocol::VsNSamples;
    if (name == "vs_nbar") return SweepProtocol::VsNbar;
    throw std::invalid_argument("unknown sweep protocol '" + name + "'");
}

std::vector<SweepRow> error_sweep(SweepProtocol protocol, const SweepSettings& st) {
    std::vector<SweepRow> rows;
    for (double v : st.values) {
        double kc = st.kc, nbar = st.nbar;
        std::size_t ns = st.n_samples;
        if (protocol == SweepProtocol::VsKc) kc = v;
        if (protocol == SweepProtocol::VsNSamples) ns = std::size_t(v);
        if (protocol == SweepProtocol::VsNbar) nbar = v;
        HomodyneParams prm;
        prm.kind = StateKind::Coherent;
        prm.alpha = std::sqrt(nbar);
        const double peak_th = 2.0 / pi;
        std::vector<double> err(st.n_seeds), perr(st.n_seeds);
        for (std::size_t s = 0; s < st.n_seeds; ++s) {
            auto smp = homodyne_sample(prm, ns, st.seed + s);
            auto w = reconstruct_wigner(smp, kc, st.grid);
            double nrec = mean_photon_from_wigner(w, 0.2);
            err[s] = 100.0 * std::abs(nrec - nbar) / nbar;
            perr[s] = 100.0 * std::abs(w.max() - peak_th) / peak_th;
        }
        SweepRow r;
        r.value = v;
        for (std::size_t s = 0; s < st.n_seeds; ++s) {
            r.mean_error_pct += err[s] / double(st.n_seeds);
            r.mean_peak_error_pct += perr[s] / double(st.n_seeds);
        }
        for (double e : err) r.std_error_pct += (e - r.mean_error_pct) * (e - r.mean_error_pct);
        r.std_error_pct = st.n_seeds > 1 ? std::sqrt(r.std_error_pct / double(st.n_seeds - 1)) : 0.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace sfqo
