#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sfqo/ati.hpp"
#include "sfqo/conditioning.hpp"
#include "sfqo/config.hpp"
#include "sfqo/displacement.hpp"
#include "sfqo/fock.hpp"
#include "sfqo/pulse.hpp"
#include "sfqo/qspec.hpp"
#include "sfqo/sfa.hpp"
#include "sfqo/tomography.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sfqo;

namespace {

enum Exit { Ok = 0, Failure = 1, NoConfig = 2, BadConfig = 3, NoConvergence = 4 };

// Files are held in memory and written only after the subcommand succeeds.
class OutputSet {
public:
    void add(const std::string& name, std::string content) { files_.push_back({name, std::move(content)}); }

    void commit(const fs::path& dir, const std::string& subcommand, const RunConfig& cfg) {
        json m;
        m["program"] = "sfqo";
        m["version"] = version();
        m["subcommand"] = subcommand;
        m["config_hash"] = cfg.hash();
        m["seed"] = cfg.integer("run.seed");
        m["refine"] = cfg.integer("run.refine");
        add("config_resolved.ini", cfg.canonical());
        std::vector<std::string> names;
        for (const auto& f : files_) names.push_back(f.name);
        names.push_back("manifest.json");
        m["outputs"] = names;
        add("manifest.json", m.dump(2) + "\n");
        fs::create_directories(dir);
        for (const auto& f : files_) {
            std::ofstream os(dir / f.name, std::ios::binary | std::ios::trunc);
            if (!os) throw std::runtime_error("cannot write " + (dir / f.name).string());
            os << f.content;
        }
    }

private:
    struct File {
        std::string name, content;
    };
    std::vector<File> files_;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) {
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }
    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << "\n";
    }
    std::string str() const { return out_.str(); }

private:
    static std::string cell(double v) { return num(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string& s) { return s; }
    std::ostringstream out_;
};

LaserPulse pulse_from(const RunConfig& c) {
    LaserPulse p;
    p.omega = c.real("pulse.omega");
    p.e0 = c.real("pulse.e0");
    p.n_cyc = int(c.integer("pulse.n_cycles"));
    p.cep = c.real("pulse.cep");
    p.validate();
    return p;
}

AtomModel atom_from(const RunConfig& c) {
    AtomModel a{c.real("atom.ip"), c.real("atom.lam")};
    a.validate();
    return a;
}

FieldCoupling coupling_from(const RunConfig& c) {
    FieldCoupling f{c.real("coupling.gtilde"), c.real("coupling.lambda_scale"), c.real("coupling.gamma_cutoff")};
    f.validate();
    return f;
}

int refine_from(const RunConfig& c) {
    long r = c.integer("run.refine");
    if (r < 1) throw ConfigError("run.refine", "must be >= 1");
    return int(r);
}

std::size_t positive(const RunConfig& c, const std::string& path) {
    long v = c.integer(path);
    if (v < 1) throw ConfigError(path, "must be >= 1");
    return std::size_t(v);
}

DipoleTrace dipole_from(const RunConfig& c, const LaserPulse& p, const AtomModel& a) {
    auto grid = momentum_grid(p, positive(c, "dipole.n_momentum"), c.real("dipole.momentum_extent"));
    return dipole_expectation(p, a, grid, refine_from(c));
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

void cmd_dipole(const RunConfig& c, OutputSet& out) {
    auto p = pulse_from(c);
    auto a = atom_from(c);
    auto tr = dipole_from(c, p, a);
    Csv csv({"t", "dipole", "field"});
    double dmax = 0.0;
    for (std::size_t i = 0; i < tr.values.size(); ++i) {
        csv.row(tr.times[i], tr.values[i], electric_field_z(p, tr.times[i]));
        dmax = std::max(dmax, std::abs(tr.values[i]));
    }
    out.add("dipole.csv", csv.str());
    json s{{"n_times", tr.values.size()}, {"dt", tr.times.h}, {"max_abs_dipole", dmax}};
    out.add("summary.json", s.dump(2) + "\n");
}

void cmd_hhg(const RunConfig& c, OutputSet& out) {
    auto p = pulse_from(c);
    auto a = atom_from(c);
    auto g = coupling_from(c).effective(p.omega);
    auto tr = dipole_from(c, p, a);
    long n_atoms = c.integer("hhg.n_atoms");
    auto sp = hhg_spectrum(tr, p.omega, g, int(n_atoms), c.real("hhg.order_max"), c.real("hhg.d_order"));
    auto hs = analyze_harmonics(sp, p, a, c.real("hhg.half_width"), 5, c.real("hhg.cutoff_drop_db"));
    Csv csv({"order", "raw", "normalized"});
    for (std::size_t i = 0; i < sp.orders.size(); ++i) csv.row(sp.orders[i], sp.raw[i], sp.normalized[i]);
    out.add("spectrum.csv", csv.str());
    json s{{"cutoff_order", hs.cutoff_order},
           {"cutoff_law", hs.cutoff_law},
           {"mean_contrast_db", hs.mean_contrast_db},
           {"min_contrast_db", hs.min_contrast_db},
           {"odd_orders", hs.odd_orders},
           {"contrast_db", hs.contrast_db}};
    out.add("summary.json", s.dump(2) + "\n");
}

void cmd_chi_delta(const RunConfig& c, OutputSet& out) {
    auto p = pulse_from(c);
    auto a = atom_from(c);
    auto cp = coupling_from(c);
    auto tr = dipole_from(c, p, a);
    PulseIntegrals P(p);
    const double T = p.duration();
    const double pz = c.real("chi_delta.p_sqrt_up") * p.sqrt_up();
    const std::size_t n_t1 = positive(c, "chi_delta.n_t1");
    Csv csv({"order", "t1", "delta_re", "delta_im", "abs_delta", "abs_chi", "ratio", "phi_bch"});
    json per = json::array();
    for (long n : c.integers("chi_delta.orders")) {
        if (n < 1) throw ConfigError("chi_delta.orders", "orders must be >= 1");
        const double w = double(n) * p.omega, g = cp.effective(w);
        double min_ratio = 1e300;
        for (std::size_t j = 0; j < n_t1; ++j) {
            double t1 = T * (double(j) + 0.5) / double(n_t1);
            cplx d = delta(P, pz, T, t1, w, g);
            cplx x = chi(tr, w, g, t1);
            double ratio = std::abs(d) / std::abs(x);
            auto ph = bch_phases(P, pz, T, t1, w, g, x);
            csv.row(n, t1, d.real(), d.imag(), std::abs(d), std::abs(x), ratio, ph.phi);
            if (t1 >= 0.25 * T && t1 <= 0.75 * T) min_ratio = std::min(min_ratio, ratio);
        }
        per.push_back({{"order", n}, {"g", g}, {"min_ratio_central_half", min_ratio}});
    }
    out.add("chi_delta.csv", csv.str());
    out.add("summary.json", json{{"p", pz}, {"modes", per}}.dump(2) + "\n");
}

void cmd_css(const RunConfig& c, OutputSet& out) {
    const std::size_t n_max = positive(c, "css.n_max");
    std::vector<std::string> header{"n"};
    std::vector<FockDistribution> cols;
    json js = json::object();
    json coh = json::array();
    for (double al : c.reals("css.alphas")) {
        auto d = photon_distribution(CoherentSuperposition::coherent(al), n_max);
        header.push_back("coherent_" + num(al));
        cols.push_back(d);
        coh.push_back({{"alpha", al}, {"mean", d.mean()}, {"variance", d.variance()}, {"tail", d.tail}});
    }
    js["coherent"] = coh;
    auto amps = c.reals("css.sup_alphas");
    json sup = json::array();
    for (const char* key : {"css.coeffs_a", "css.coeffs_b"}) {
        auto cf = c.reals(key);
        if (cf.size() != amps.size()) throw ConfigError(key, "needs one coefficient per entry of css.sup_alphas");
        CoherentSuperposition s(1);
        for (std::size_t i = 0; i < cf.size(); ++i) s.add(cf[i], {cplx(amps[i], 0.0)});
        auto d = photon_distribution(s.normalized(), n_max);
        auto pk = analyze_peaks(d.probs, 3, 0.05);
        header.push_back(std::string("superposition_") + (key[9] == 'a' ? "a" : "b"));
        cols.push_back(d);
        sup.push_back({{"coefficients", cf}, {"mean", d.mean()}, {"local_maxima", pk.maxima.size()}, {"tail", d.tail}});
    }
    js["superpositions"] = sup;
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (std::size_t n = 0; n <= n_max; ++n) {
        os << n;
        for (const auto& d : cols) os << "," << num(d.probs[n]);
        os << "\n";
    }
    out.add("photon_distributions.csv", os.str());
    out.add("summary.json", js.dump(2) + "\n");
}

void cmd_ati(const RunConfig& c, OutputSet& out) {
    AtiConfig base;
    base.pulse = pulse_from(c);
    base.atom = atom_from(c);
    base.coupling = coupling_from(c);
    base.alpha = cplx(c.real("ati.alpha_re"), c.real("ati.alpha_im"));
    base.harmonic_max = int(c.integer("ati.harmonic_max"));
    base.harmonic_cut = c.real("ati.harmonic_cut");
    long nm = c.integer("ati.n_max");
    if (nm < 0) throw ConfigError("ati.n_max", "must be >= 0");
    base.n_max = std::size_t(nm);
    base.coarse_dt = c.real("ati.coarse_dt");
    if (!(base.coarse_dt > 0.0)) throw ConfigError("ati.coarse_dt", "must be > 0");
    base.substeps = int(positive(c, "ati.substeps")) * refine_from(c);
    Csv csv({"p_sqrt_up", "n", "probability"});
    json rows = json::array();
    for (double f : c.reals("ati.p_sqrt_up")) {
        AtiConfig cfg = base;
        cfg.p = f * base.pulse.sqrt_up();
        auto t = ati_fock_amplitudes(cfg);
        auto pk = analyze_peaks(t.probs);
        for (std::size_t n = 0; n < t.probs.size(); ++n) csv.row(f, n, t.probs[n]);
        rows.push_back({{"p_sqrt_up", f},
                        {"p", cfg.p},
                        {"mean", mean_photon(t)},
                        {"norm", t.norm},
                        {"n_max", t.amps.size() - 1},
                        {"tail_bound", t.tail_bound},
                        {"direct_regime", t.direct_regime},
                        {"local_maxima", pk.maxima.size()},
                        {"dominant_mass", pk.dominant_mass},
                        {"warnings", t.warnings}});
    }
    out.add("ati_photon.csv", csv.str());
    out.add("summary.json", json{{"initial_mean", std::norm(base.alpha)}, {"points", rows}}.dump(2) + "\n");
}

void cmd_cat_wigner(const RunConfig& c, OutputSet& out) {
    const cplx alpha(c.real("cat_wigner.alpha_re"), c.real("cat_wigner.alpha_im"));
    const double hw = c.real("cat_wigner.half_width");
    if (!(hw > 0.0)) throw ConfigError("cat_wigner.half_width", "must be > 0");
    std::size_t n = positive(c, "cat_wigner.grid_points");
    if (n < 3) throw ConfigError("cat_wigner.grid_points", "must be >= 3");
    auto spec = GridSpec::centered(hw, n);
    json rows = json::array();
    std::size_t idx = 0;
    for (double mag : c.reals("cat_wigner.chi_values")) {
        cplx chi_v = std::polar(mag, c.real("cat_wigner.chi_phase"));
        if (std::abs(chi_v) == 0.0) throw ConfigError("cat_wigner.chi_values", "shift must be nonzero");
        auto w = wigner_cat(alpha, chi_v, spec);
        Csv csv({"re_beta", "im_beta", "w"});
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) csv.row(spec.x(i), spec.p(j), w.at(i, j));
        std::string name = "cat_wigner_" + std::to_string(idx++) + ".csv";
        out.add(name, csv.str());
        auto am = w.argmax();
        cplx mid = alpha + 0.5 * chi_v;
        rows.push_back({{"file", name},
                        {"chi", cjson(chi_v)},
                        {"min", w.min()},
                        {"max", w.max()},
                        {"integral", w.integral()},
                        {"argmax", {am.first, am.second}},
                        {"w_at_midpoint", wigner_cat_beta(alpha, chi_v, mid)}});
    }
    out.add("summary.json", json{{"alpha", cjson(alpha)}, {"states", rows}}.dump(2) + "\n");
}

void cmd_tomo(const RunConfig& c, OutputSet& out) {
    HomodyneParams prm;
    auto kind = c.text("tomography.state");
    if (kind == "coherent") prm.kind = StateKind::Coherent;
    else if (kind == "cat") prm.kind = StateKind::Cat;
    else throw ConfigError("tomography.state", "expected coherent or cat, got '" + kind + "'");
    prm.alpha = cplx(c.real("tomography.alpha_re"), c.real("tomography.alpha_im"));
    prm.chi = cplx(c.real("tomography.chi_re"), c.real("tomography.chi_im"));
    if (prm.kind == StateKind::Cat && std::abs(prm.chi) == 0.0)
        throw ConfigError("tomography.chi_re", "cat shift must be nonzero");
    prm.stratified = c.flag("tomography.stratified");
    const double kc = c.real("tomography.kc");
    if (!(kc > 0.0)) throw ConfigError("tomography.kc", "must be > 0");
    const double hw = c.real("tomography.half_width");
    if (!(hw > 0.0)) throw ConfigError("tomography.half_width", "must be > 0");
    const std::size_t ng = positive(c, "tomography.grid_points");
    const std::size_t ns = positive(c, "tomography.n_samples");
    if (ns < 100) throw ConfigError("tomography.n_samples", "must be >= 100");
    const auto seed = std::uint64_t(c.integer("run.seed"));
    auto spec = GridSpec::centered(hw, ng);

    auto smp = homodyne_sample(prm, ns, seed);
    auto rec = reconstruct_wigner(smp, kc, spec);
    auto state = homodyne_state(prm);
    auto th = wigner_state(state, spec);
    Csv sc({"phi", "x"});
    for (std::size_t k = 0; k < ns; ++k) sc.row(smp.phases[k], smp.x[k]);
    out.add("samples.csv", sc.str());
    Csv wc({"re_beta", "im_beta", "w_reconstructed", "w_exact"});
    for (std::size_t j = 0; j < ng; ++j)
        for (std::size_t i = 0; i < ng; ++i) wc.row(spec.x(i), spec.p(j), rec.at(i, j), th.at(i, j));
    out.add("wigner.csv", wc.str());

    double n_th = photon_distribution(state, default_n_max(state)).mean();
    json s{{"state", kind},
           {"n_samples", ns},
           {"kc", kc},
           {"peak_exact", th.max()},
           {"peak_reconstructed", rec.max()},
           {"peak_error_pct", 100.0 * std::abs(rec.max() - th.max()) / th.max()},
           {"integral_reconstructed", rec.integral()},
           {"mean_photon_exact", n_th}};
    try {
        double n_rec = mean_photon_from_wigner(rec);
        s["mean_photon_reconstructed"] = n_rec;
        s["mean_photon_error_pct"] = 100.0 * std::abs(n_rec - n_th) / n_th;
    } catch (const std::invalid_argument& e) {
        s["mean_photon_reconstructed"] = nullptr;
        s["mean_photon_note"] = e.what();
    }

    auto protocol = c.text("tomography.protocol");
    if (protocol != "none") {
        SweepSettings st;
        try {
            st.values = c.reals("tomography.sweep_values");
            auto pr = parse_sweep_protocol(protocol);
            st.n_seeds = positive(c, "tomography.n_seeds");
            st.seed = seed;
            st.kc = kc;
            st.n_samples = ns;
            st.nbar = c.real("tomography.nbar");
            st.grid = spec;
            Csv sw({"value", "mean_error_pct", "std_error_pct", "mean_peak_error_pct"});
            for (const auto& r : error_sweep(pr, st)) sw.row(r.value, r.mean_error_pct, r.std_error_pct, r.mean_peak_error_pct);
            out.add("sweep_" + protocol + ".csv", sw.str());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("tomography.protocol", e.what());
        }
    }
    out.add("summary.json", s.dump(2) + "\n");
}

void cmd_qspec(const RunConfig& c, OutputSet& out) {
    QspecModel m;
    m.w_j = c.real("qspec.w_j");
    m.w_ir0 = c.real("qspec.w_ir0");
    m.f_corr = c.real("qspec.f_corr");
    m.q_orders.clear();
    for (long q : c.integers("qspec.q_orders")) m.q_orders.push_back(int(q));
    m.a_const = c.real("qspec.a_const");
    m.n_mean = c.real("qspec.n_mean");
    m.poisson = c.flag("qspec.poisson");
    long ns = c.integer("qspec.n_shots");
    if (ns < 1000) throw ConfigError("qspec.n_shots", "must be >= 1000");
    m.n_shots = std::size_t(ns);
    m.seed = std::uint64_t(c.integer("run.seed"));
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("", e.what());
    }
    auto chan_name = c.text("qspec.channel");
    ProductChannel ch;
    if (chan_name == "xuv") ch = ProductChannel::Xuv;
    else if (chan_name == "ati_pos") ch = ProductChannel::AtiPos;
    else if (chan_name == "ati_neg") ch = ProductChannel::AtiNeg;
    else throw ConfigError("qspec.channel", "expected xuv, ati_pos or ati_neg");
    const double bw = c.real("qspec.bin_width");
    if (!(bw > 0.0)) throw ConfigError("qspec.bin_width", "must be > 0");

    auto shots = generate_shots(m);
    auto stable = balance(stability_filter(shots, c.real("qspec.stability_tol")));
    if (stable.empty()) throw ConfigError("qspec.stability_tol", "no shot passes the stability filter");
    long kp = c.integer("qspec.k_points");
    std::size_t k = kp > 0 ? std::size_t(kp) : stable.size();
    auto sel = anticorrelation_select(stable, m.w_j, k, ch);
    auto hist = p_ir_histogram(sel.shots, bw);
    auto st = selection_stats(stable, sel.shots);

    std::ostringstream so;
    write_shots_csv(so, sel.shots);
    out.add("selected_shots.csv", so.str());
    if (c.flag("qspec.write_all_shots")) {
        std::ostringstream sa;
        write_shots_csv(sa, shots);
        out.add("shots.csv", sa.str());
    }
    std::ostringstream sh;
    write_histogram_csv(sh, hist);
    out.add("p_ir_histogram.csv", sh.str());
    json s{{"n_shots", shots.size()},
           {"n_stable", stable.size()},
           {"retained_fraction", double(stable.size()) / double(shots.size())},
           {"k_points", k},
           {"w_ant", sel.w_ant},
           {"n_selected", st.n_selected},
           {"n_correlated_selected", st.n_correlated},
           {"precision", st.precision},
           {"enrichment", st.enrichment},
           {"peaks", hist.peaks},
           {"mean_peak_spacing", hist.mean_spacing()},
           {"programmed_spacing", m.ladder_spacing()}};
    out.add("summary.json", s.dump(2) + "\n");
}

void cmd_optics(const RunConfig& c, OutputSet& out) {
    const cplx a0(c.real("optics.alpha0_re"), c.real("optics.alpha0_im"));
    const cplx x1(c.real("optics.chi1_re"), c.real("optics.chi1_im"));
    const cplx x2(c.real("optics.chi2_re"), c.real("optics.chi2_im"));
    const double phi = c.real("optics.phi");
    cplx xi1(c.real("optics.xi1_re"), c.real("optics.xi1_im"));
    cplx xi2(c.real("optics.xi2_re"), c.real("optics.xi2_im"));
    const cplx arm = a0 / std::sqrt(2.0);
    if (c.flag("optics.auto_xi")) {
        xi1 = -overlap(arm, arm + x1);
        xi2 = -overlap(arm, arm + x2);
    }
    auto psi = interferometer_psi_f(a0, x1, x2, xi1, xi2, phi);
    auto closed = interferometer_psi_f_closed_form(a0, x1, x2, xi1, xi2, phi);
    double nrm = psi.norm2();
    if (!(nrm > 0.0)) throw ConfigError("optics.xi1_re", "output state has zero norm");
    double fid = std::norm(inner(psi, closed)) / (psi.norm2() * closed.norm2());
    auto psin = psi.normalized();
    json s{{"xi1", cjson(xi1)},
           {"xi2", cjson(xi2)},
           {"norm2", nrm},
           {"fidelity_closed_form", fid},
           {"purity_mode0", reduced_purity(psin, 0)},
           {"purity_mode1", reduced_purity(psin, 1)},
           {"mean_photons_transmitted", mean_photon_number(psin, 0)},
           {"mean_photons_reflected", mean_photon_number(psin, 1)}};
    out.add("psi_f.json", to_json(psi) + "\n");
    out.add("psi_f_closed_form.json", to_json(closed) + "\n");
    out.add("summary.json", s.dump(2) + "\n");
}

std::string schema_markdown() {
    std::ostringstream os;
    os << "# Configuration reference\n\n"
       << "Files are INI-style: `[section]` headers, `key = value` lines, `#` comments.\n"
       << "Lists are comma separated. Any key can be overridden with `--set section.key=value`.\n"
       << "Unknown keys and values of the wrong type are rejected (exit code 3).\n";
    std::string section;
    for (const auto& f : config_schema()) {
        auto dot = f.path.find('.');
        auto sec = f.path.substr(0, dot);
        if (sec != section) {
            section = sec;
            os << "\n## [" << section << "]\n\n| key | type | default | meaning |\n|---|---|---|---|\n";
        }
        os << "| `" << f.path.substr(dot + 1) << "` | " << type_name(f.type) << " | `" << f.default_value << "` | "
           << f.doc << " |\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong-field quantum-optics simulations"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir;
    std::vector<std::string> sets;
    long seed = 0, refine = 0;
    auto* o_seed = app.add_option("--seed", seed, "override run.seed");
    auto* o_ref = app.add_option("--refine", refine, "override run.refine");
    auto* o_cfg = app.add_option("--config", config_path, "config file (defaults used if omitted)");
    auto* o_out = app.add_option("--out", out_dir, "output directory");
    app.add_option("--set", sets, "section.key=value override (repeatable)");

    using Handler = void (*)(const RunConfig&, OutputSet&);
    const std::vector<std::pair<std::string, std::pair<Handler, std::string>>> commands = {
        {"dipole", {cmd_dipole, "time-dependent dipole expectation"}},
        {"hhg-spectrum", {cmd_hhg, "harmonic spectrum and plateau summary"}},
        {"chi-delta", {cmd_chi_delta, "HHG shift vs electron displacement and phases"}},
        {"css-photon", {cmd_css, "photon statistics of coherent superpositions"}},
        {"ati-photon", {cmd_ati, "IR photon distributions conditioned on ATI"}},
        {"cat-wigner", {cmd_cat_wigner, "analytic cat-state Wigner functions"}},
        {"tomo", {cmd_tomo, "homodyne sampling, reconstruction and error sweeps"}},
        {"qspec", {cmd_qspec, "synthetic quantum-spectrometer pipeline"}},
        {"optics", {cmd_optics, "two-cat interferometer output state"}},
    };
    for (const auto& [name, h] : commands) app.add_subcommand(name, h.second);
    app.add_subcommand("schema", "print the configuration reference as markdown");
    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "schema") {
        std::cout << schema_markdown();
        return Ok;
    }
    RunConfig cfg;
    try {
        if (o_cfg->count()) {
            if (!fs::is_regular_file(config_path)) {
                std::cerr << "error: config file '" << config_path << "' not found\n";
                return NoConfig;
            }
            cfg = RunConfig::load(config_path);
        } else {
            cfg = RunConfig::defaults();
        }
        for (const auto& s : sets) cfg.apply_override(s);
        if (o_seed->count()) cfg.set("run.seed", std::to_string(seed));
        if (o_ref->count()) cfg.set("run.refine", std::to_string(refine));
        if (o_out->count()) cfg.set("run.out_dir", out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return BadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return NoConfig;
    }

    try {
        OutputSet out;
        for (const auto& [name, h] : commands)
            if (name == sub) h.first(cfg, out);
        out.commit(cfg.text("run.out_dir"), sub, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return BadConfig;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return NoConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return BadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return Ok;
}
