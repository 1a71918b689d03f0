#include "sfqo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#ifndef SFQO_VERSION_STRING
#define SFQO_VERSION_STRING "0.0.0"
#endif

namespace sfqo {

const char* version() { return SFQO_VERSION_STRING; }

const std::vector<FieldSpec>& config_schema() {
    using T = FieldType;
    static const std::vector<FieldSpec> schema = {
        {"run.seed", T::Integer, "1", "seed for every stochastic stage"},
        {"run.refine", T::Integer, "1", "quadrature refinement level (>= 1)"},
        {"run.out_dir", T::Text, "out", "output directory, overridden by --out"},

        {"pulse.omega", T::Real, "0.057", "carrier frequency (a.u.)"},
        {"pulse.e0", T::Real, "0.053", "peak field amplitude (a.u.)"},
        {"pulse.n_cycles", T::Integer, "5", "sin^2 envelope length in optical cycles"},
        {"pulse.cep", T::Real, "0", "carrier-envelope phase (rad)"},

        {"atom.ip", T::Real, "0.5", "ionization potential (a.u.)"},
        {"atom.lam", T::Real, "1", "dipole matrix element scale"},

        {"coupling.gtilde", T::Real, "0.005", "bare light-matter coupling"},
        {"coupling.lambda_scale", T::Real, "0.2", "coupling scaling factor in (0, 1]"},
        {"coupling.gamma_cutoff", T::Real, "0", "form-factor cutoff wavenumber (<= 0 disables)"},

        {"dipole.n_momentum", T::Integer, "512", "momentum nodes"},
        {"dipole.momentum_extent", T::Real, "4", "momentum window half-width in sqrt(Up)"},

        {"hhg.n_atoms", T::Integer, "1", "number of emitters"},
        {"hhg.order_max", T::Real, "30", "highest harmonic order in the spectrum"},
        {"hhg.d_order", T::Real, "0.05", "spectral step in harmonic orders"},
        {"hhg.half_width", T::Real, "0.25", "peak search half-width in orders"},
        {"hhg.cutoff_drop_db", T::Real, "10", "drop below the median plateau peak that ends the plateau (dB)"},

        {"chi_delta.orders", T::IntList, "1,2,3", "mode orders n (omega_k = n omega)"},
        {"chi_delta.p_sqrt_up", T::Real, "0.93", "electron momentum in sqrt(Up)"},
        {"chi_delta.n_t1", T::Integer, "41", "ionization times across the pulse"},

        {"css.alphas", T::RealList, "7.95,8.73", "coherent amplitudes"},
        {"css.sup_alphas", T::RealList, "7,9,10", "amplitudes of the superposition branches"},
        {"css.coeffs_a", T::RealList, "1,-1,0.75", "first coefficient set"},
        {"css.coeffs_b", T::RealList, "1,1,0.75", "second coefficient set"},
        {"css.n_max", T::Integer, "300", "Fock truncation"},

        {"ati.alpha_re", T::Real, "0", "initial IR amplitude, real part"},
        {"ati.alpha_im", T::Real, "7", "initial IR amplitude, imaginary part"},
        {"ati.p_sqrt_up", T::RealList,
         "-0.46,-0.4089,-0.3578,-0.3067,-0.2556,-0.2044,-0.1533,-0.1022,-0.0511,0,0.0511,0.1022,0.1533,0.2044,0.2556,"
         "0.3067,0.3578,0.4089,0.46",
         "final momenta in sqrt(Up)"},
        {"ati.harmonic_max", T::Integer, "21", "highest harmonic mode"},
        {"ati.harmonic_cut", T::Real, "1.5", "lowest order treated as a harmonic"},
        {"ati.n_max", T::Integer, "0", "Fock truncation (0 = automatic)"},
        {"ati.coarse_dt", T::Real, "1", "slow-trace step (a.u.)"},
        {"ati.substeps", T::Integer, "20", "fine steps per coarse step"},

        {"cat_wigner.alpha_re", T::Real, "2", "cat displacement, real part"},
        {"cat_wigner.alpha_im", T::Real, "0", "cat displacement, imaginary part"},
        {"cat_wigner.chi_values", T::RealList, "0.8,0.1", "shift magnitudes"},
        {"cat_wigner.chi_phase", T::Real, "0", "shift phase (rad)"},
        {"cat_wigner.half_width", T::Real, "6", "grid half-width (beta units)"},
        {"cat_wigner.grid_points", T::Integer, "241", "points per axis"},

        {"tomography.state", T::Text, "coherent", "coherent | cat"},
        {"tomography.alpha_re", T::Real, "2", "state amplitude, real part"},
        {"tomography.alpha_im", T::Real, "0", "state amplitude, imaginary part"},
        {"tomography.chi_re", T::Real, "0.8", "cat shift, real part"},
        {"tomography.chi_im", T::Real, "0", "cat shift, imaginary part"},
        {"tomography.kc", T::Real, "3.7", "kernel cutoff"},
        {"tomography.n_samples", T::Integer, "10000", "homodyne samples"},
        {"tomography.stratified", T::Bool, "true", "stratified phases"},
        {"tomography.half_width", T::Real, "5", "grid half-width (beta units)"},
        {"tomography.grid_points", T::Integer, "81", "points per axis"},
        {"tomography.protocol", T::Text, "vs_nsamples", "vs_kc | vs_nsamples | vs_nbar | none"},
        {"tomography.sweep_values", T::RealList, "1000,2000,5000,10000,20000", "sweep abscissae"},
        {"tomography.n_seeds", T::Integer, "20", "seeds per sweep point"},
        {"tomography.nbar", T::Real, "3", "coherent mean photon number for sweeps"},

        {"qspec.w_j", T::Real, "0.05", "relative jitter of s_ir and product channels"},
        {"qspec.w_ir0", T::Real, "0.01", "relative jitter of the reference channel"},
        {"qspec.f_corr", T::Real, "0.001", "correlated-shot fraction"},
        {"qspec.q_orders", T::IntList, "11,13,15,17,19,21", "harmonic orders of the ladder"},
        {"qspec.a_const", T::Real, "5e-07", "signal per photon"},
        {"qspec.n_mean", T::Real, "10000", "mean photon number per order"},
        {"qspec.poisson", T::Bool, "true", "Poisson photon numbers (else fixed)"},
        {"qspec.n_shots", T::Integer, "500000", "laser shots"},
        {"qspec.stability_tol", T::Real, "0.01", "reference-energy tolerance"},
        {"qspec.k_points", T::Integer, "0", "k in w_ant = w_j/sqrt(k) (0 = stable shot count)"},
        {"qspec.bin_width", T::Real, "0.002", "IR-loss histogram bin"},
        {"qspec.channel", T::Text, "xuv", "xuv | ati_pos | ati_neg"},
        {"qspec.write_all_shots", T::Bool, "false", "also write every generated shot"},

        {"optics.alpha0_re", T::Real, "2", "input amplitude, real part"},
        {"optics.alpha0_im", T::Real, "0", "input amplitude, imaginary part"},
        {"optics.chi1_re", T::Real, "0.8", "arm-1 shift, real part"},
        {"optics.chi1_im", T::Real, "0", "arm-1 shift, imaginary part"},
        {"optics.chi2_re", T::Real, "0.8", "arm-2 shift, real part"},
        {"optics.chi2_im", T::Real, "0", "arm-2 shift, imaginary part"},
        {"optics.auto_xi", T::Bool, "true", "xi_i = -<a_i|a_i + chi_i> (cat weights)"},
        {"optics.xi1_re", T::Real, "-1", "arm-1 weight, real part (auto_xi = false)"},
        {"optics.xi1_im", T::Real, "0", "arm-1 weight, imaginary part"},
        {"optics.xi2_re", T::Real, "-1", "arm-2 weight, real part"},
        {"optics.xi2_im", T::Real, "0", "arm-2 weight, imaginary part"},
        {"optics.phi", T::Real, "0", "arm-2 phase (rad)"},
    };
    return schema;
}

std::string type_name(FieldType t) {
    switch (t) {
        case FieldType::Real: return "real";
        case FieldType::Integer: return "integer";
        case FieldType::Bool: return "bool";
        case FieldType::Text: return "string";
        case FieldType::RealList: return "list of reals";
        case FieldType::IntList: return "list of integers";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const FieldSpec* find_field(const std::string& path) {
    for (const auto& f : config_schema())
        if (f.path == path) return &f;
    return nullptr;
}

bool parse_real(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

bool parse_int(const std::string& s, long& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtol(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

// shortest text that round-trips
std::string fmt_real(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// Returns the normalized text or throws.
std::string normalize(const FieldSpec& f, const std::string& value) {
    const std::string v = trim(value);
    auto bad = [&]() { return ConfigError(f.path, "expected " + type_name(f.type) + ", got '" + v + "'"); };
    switch (f.type) {
        case FieldType::Real: {
            double d;
            if (!parse_real(v, d)) throw bad();
            return fmt_real(d);
        }
        case FieldType::Integer: {
            long i;
            if (!parse_int(v, i)) throw bad();
            return std::to_string(i);
        }
        case FieldType::Bool:
            if (v == "true" || v == "1") return "true";
            if (v == "false" || v == "0") return "false";
            throw bad();
        case FieldType::Text:
            return v;
        case FieldType::RealList:
        case FieldType::IntList: {
            std::string out;
            auto items = split_list(v);
            if (items.empty()) throw bad();
            for (const auto& it : items) {
                if (!out.empty()) out += ",";
                if (f.type == FieldType::RealList) {
                    double d;
                    if (!parse_real(it, d)) throw bad();
                    out += fmt_real(d);
                } else {
                    long i;
                    if (!parse_int(it, i)) throw bad();
                    out += std::to_string(i);
                }
            }
            return out;
        }
    }
    throw bad();
}

}  // namespace

RunConfig RunConfig::defaults() {
    RunConfig c;
    for (const auto& f : config_schema()) c.values_[f.path] = normalize(f, f.default_value);
    return c;
}

void RunConfig::set(const std::string& path, const std::string& value) {
    const FieldSpec* f = find_field(path);
    if (!f) throw ConfigError(path, "unknown key");
    values_[path] = normalize(*f, value);
}

void RunConfig::apply_override(const std::string& a) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw ConfigError("", "override '" + a + "' is not of the form section.key=value");
    set(trim(a.substr(0, eq)), a.substr(eq + 1));
}

RunConfig RunConfig::parse(std::istream& in, const std::string& origin) {
    RunConfig c = defaults();
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("", where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", where + ": expected key = value");
        if (section.empty()) throw ConfigError("", where + ": key outside any section");
        std::string path = section + "." + trim(line.substr(0, eq));
        try {
            c.set(path, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path, std::string(e.what()).substr(path.size() + 2) + " (" + where + ")");
        }
    }
    return c;
}

RunConfig RunConfig::load(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read config file '" + file + "'");
    return parse(in, file);
}

const std::string& RunConfig::raw(const std::string& path, FieldType expect) const {
    const FieldSpec* f = find_field(path);
    if (!f) throw ConfigError(path, "unknown key");
    if (f->type != expect) throw ConfigError(path, "is " + type_name(f->type) + ", not " + type_name(expect));
    return values_.at(path);
}

double RunConfig::real(const std::string& path) const { return std::strtod(raw(path, FieldType::Real).c_str(), nullptr); }
long RunConfig::integer(const std::string& path) const {
    return std::strtol(raw(path, FieldType::Integer).c_str(), nullptr, 10);
}
bool RunConfig::flag(const std::string& path) const { return raw(path, FieldType::Bool) == "true"; }
std::string RunConfig::text(const std::string& path) const { return raw(path, FieldType::Text); }

std::vector<double> RunConfig::reals(const std::string& path) const {
    std::vector<double> out;
    for (const auto& s : split_list(raw(path, FieldType::RealList))) out.push_back(std::strtod(s.c_str(), nullptr));
    return out;
}

std::vector<long> RunConfig::integers(const std::string& path) const {
    std::vector<long> out;
    for (const auto& s : split_list(raw(path, FieldType::IntList))) out.push_back(std::strtol(s.c_str(), nullptr, 10));
    return out;
}

std::string RunConfig::canonical() const {
    std::string out, section;
    for (const auto& [k, v] : values_) {
        if (k == "run.out_dir") continue;
        const auto dot = k.find('.');
        if (k.compare(0, dot, section) != 0 || section.size() != dot) {
            section = k.substr(0, dot);
            out += (out.empty() ? "[" : "\n[") + section + "]\n";
        }
        out += k.substr(dot + 1) + " = " + v + "\n";
    }
    return out;
}

std::string RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace sfqo
