#include "sfqo/fock.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace sfqo {

CoherentSuperposition::CoherentSuperposition(std::size_t n_modes, std::vector<CoherentTerm> terms)
    : n_modes_(n_modes), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.amps.size() != n_modes_) throw std::invalid_argument("coherent term has wrong mode count");
}

CoherentSuperposition CoherentSuperposition::coherent(cplx alpha) { return CoherentSuperposition(1, {{1.0, {alpha}}}); }

CoherentSuperposition CoherentSuperposition::product(const std::vector<cplx>& amps) {
    return CoherentSuperposition(amps.size(), {{1.0, amps}});
}

void CoherentSuperposition::add(cplx coeff, std::vector<cplx> amps) {
    if (amps.size() != n_modes_) throw std::invalid_argument("coherent term has wrong mode count");
    terms_.push_back({coeff, std::move(amps)});
}

cplx overlap(cplx a, cplx b) { return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b); }

cplx overlap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    // single exponential keeps many-mode products from underflowing early
    cplx e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e += -0.5 * std::norm(a[k]) - 0.5 * std::norm(b[k]) + std::conj(a[k]) * b[k];
    return std::exp(e);
}

cplx inner(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    if (a.n_modes() != b.n_modes()) throw std::invalid_argument("inner: mode count mismatch");
    cplx s = 0.0;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) s += std::conj(ta.coeff) * tb.coeff * overlap(ta.amps, tb.amps);
    return s;
}

double CoherentSuperposition::norm2() const { return std::real(inner(*this, *this)); }

CoherentSuperposition CoherentSuperposition::normalized() const {
    double n2 = norm2();
    if (!(n2 > 0.0)) throw std::domain_error("cannot normalize a zero-norm state");
    CoherentSuperposition out(*this);
    double s = 1.0 / std::sqrt(n2);
    for (auto& t : out.terms_) t.coeff *= s;
    return out;
}

CoherentSuperposition CoherentSuperposition::merged(double tol) const {
    CoherentSuperposition out(n_modes_);
    for (const auto& t : terms_) {
        bool found = false;
        for (auto& u : out.terms_) {
            bool same = true;
            for (std::size_t k = 0; k < n_modes_ && same; ++k) same = std::abs(u.amps[k] - t.amps[k]) <= tol;
            if (same) {
                u.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) out.terms_.push_back(t);
    }
    std::erase_if(out.terms_, [](const CoherentTerm& t) { return std::abs(t.coeff) == 0.0; });
    return out;
}

std::vector<std::vector<cplx>> gram_matrix(const CoherentSuperposition& s, int mode) {
    const auto& T = s.terms();
    std::vector<std::vector<cplx>> G(T.size(), std::vector<cplx>(T.size()));
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < T.size(); ++j)
            G[i][j] = mode < 0 ? overlap(T[i].amps, T[j].amps) : overlap(T[i].amps[mode], T[j].amps[mode]);
    return G;
}

double FockDistribution::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) m += double(n) * probs[n];
    return m;
}

double FockDistribution::variance() const {
    double m = mean(), v = 0.0;
    for (std::size_t n = 0; n < probs.size(); ++n) v += (double(n) - m) * (double(n) - m) * probs[n];
    return v;
}

std::size_t default_n_max(const CoherentSuperposition& s) {
    double amax = 0.0;
    for (const auto& t : s.terms())
        for (auto a : t.amps) amax = std::max(amax, std::abs(a));
    return std::max<std::size_t>(10, static_cast<std::size_t>(std::ceil(amax * amax + 10.0 * amax)));
}

std::vector<cplx> fock_amplitudes(const CoherentSuperposition& s, std::size_t n_max) {
    if (s.n_modes() != 1) throw std::invalid_argument("photon statistics need a single-mode state");
    auto lf = log_factorials(n_max);
    std::vector<cplx> amp(n_max + 1, 0.0);
    for (const auto& t : s.terms()) {
        cplx a = t.amps[0];
        if (std::abs(a) == 0.0) {
            amp[0] += t.coeff;
            continue;
        }
        cplx la = std::log(a);
        double base = -0.5 * std::norm(a);
        for (std::size_t n = 0; n <= n_max; ++n) amp[n] += t.coeff * std::exp(base + double(n) * la - 0.5 * lf[n]);
    }
    return amp;
}

FockDistribution photon_distribution(const CoherentSuperposition& s, std::size_t n_max) {
    auto amp = fock_amplitudes(s, n_max);
    FockDistribution d;
    d.n_max = n_max;
    d.probs.resize(n_max + 1);
    double sum = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) sum += (d.probs[n] = std::norm(amp[n]));
    double n2 = s.norm2();
    d.tail = n2 > 0.0 ? std::max(0.0, 1.0 - sum / n2) : 0.0;
    if (sum > 0.0)
        for (auto& p : d.probs) p /= sum;
    return d;
}

CoherentSuperposition phase_shifter(const CoherentSuperposition& s, double phi, int mode) {
    CoherentSuperposition out(s.n_modes());
    cplx ph = std::exp(I * phi);
    for (auto t : s.terms()) {
        for (std::size_t k = 0; k < t.amps.size(); ++k)
            if (mode < 0 || int(k) == mode) t.amps[k] *= ph;
        out.add(t.coeff, t.amps);
    }
    return out;
}

CoherentSuperposition beam_splitter(const CoherentSuperposition& s, double theta) {
    if (s.n_modes() != 2) throw std::invalid_argument("beam_splitter needs exactly two modes");
    const double c = std::cos(theta), sn = std::sin(theta);
    CoherentSuperposition out(2);
    for (const auto& t : s.terms()) {
        cplx b = t.amps[0], g = t.amps[1];
        out.add(t.coeff, {b * c + g * sn, -g * c + b * sn});
    }
    return out;
}

CoherentSuperposition tensor(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    CoherentSuperposition out(a.n_modes() + b.n_modes());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms()) {
            auto amps = ta.amps;
            amps.insert(amps.end(), tb.amps.begin(), tb.amps.end());
            out.add(ta.coeff * tb.coeff, std::move(amps));
        }
    return out;
}

CoherentSuperposition interferometer_psi_f(cplx alpha0, cplx chi1, cplx chi2, cplx xi1, cplx xi2, double phi) {
    // BS1 on |alpha0>|0> gives equal arms |alpha0/sqrt2>|alpha0/sqrt2>
    auto arms = beam_splitter(CoherentSuperposition::product({alpha0, 0.0}), pi / 4.0);
    const cplx a1 = arms.terms()[0].amps[0];
    const cplx a2 = arms.terms()[0].amps[1];
    // HHG conditioning per arm: |a + chi> + xi |a>
    CoherentSuperposition cat1(1), cat2(1);
    cat1.add(1.0, {a1 + chi1});
    cat1.add(xi1, {a1});
    cat2.add(1.0, {a2 + chi2});
    cat2.add(xi2, {a2});
    cat2 = phase_shifter(cat2, phi);
    return beam_splitter(tensor(cat1, cat2), pi / 4.0);
}

CoherentSuperposition interferometer_psi_f_closed_form(cplx alpha0, cplx chi1, cplx chi2, cplx xi1, cplx xi2,
                                                       double phi) {
    const double r = 1.0 / std::sqrt(2.0);
    cplx a1 = alpha0 * r;
    cplx e = std::exp(I * phi);
    auto t_amp = [&](cplx x1, cplx x2) { return r * (a1 * (1.0 + e) + x1 + x2 * e); };
    auto r_amp = [&](cplx x1, cplx x2) { return r * (a1 * (1.0 - e) + x1 - x2 * e); };
    CoherentSuperposition out(2);
    out.add(1.0, {t_amp(chi1, chi2), r_amp(chi1, chi2)});
    out.add(xi2, {t_amp(chi1, 0.0), r_amp(chi1, 0.0)});
    out.add(xi1, {t_amp(0.0, chi2), r_amp(0.0, chi2)});
    out.add(xi1 * xi2, {t_amp(0.0, 0.0), r_amp(0.0, 0.0)});
    return out;
}

double reduced_purity(const CoherentSuperposition& s, int mode) {
    if (s.n_modes() != 2) throw std::invalid_argument("reduced_purity needs a two-mode state");
    if (mode != 0 && mode != 1) throw std::invalid_argument("reduced_purity: mode must be 0 or 1");
    if (std::abs(s.norm2() - 1.0) > 1e-9) throw std::invalid_argument("reduced_purity needs a normalized state");
    const int other = 1 - mode;
    auto Gk = gram_matrix(s, mode);
    auto Go = gram_matrix(s, other);
    const auto& T = s.terms();
    // rho = sum_ij c_i c_j^* <o_j|o_i> |k_i><k_j|
    // Tr rho^2 = sum_ijkl c_i c_j^* c_k c_l^* Go[j][i] Gk[j][k] Go[l][k] Gk[l][i]
    const std::size_t n = T.size();
    cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx a = T[i].coeff * std::conj(T[j].coeff) * Go[j][i];
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    tr += a * T[k].coeff * std::conj(T[l].coeff) * Go[l][k] * Gk[j][k] * Gk[l][i];
        }
    return std::real(tr);
}

double mean_photon_number(const CoherentSuperposition& s, std::size_t mode) {
    if (mode >= s.n_modes()) throw std::invalid_argument("mean_photon_number: mode out of range");
    cplx acc = 0.0;
    for (const auto& a : s.terms())
        for (const auto& b : s.terms())
            acc += std::conj(a.coeff) * b.coeff * overlap(a.amps, b.amps) * std::conj(a.amps[mode]) * b.amps[mode];
    return std::real(acc) / s.norm2();
}

std::string to_json(const CoherentSuperposition& s) {
    nlohmann::json j;
    j["n_modes"] = s.n_modes();
    j["terms"] = nlohmann::json::array();
    for (const auto& t : s.terms()) {
        nlohmann::json a = nlohmann::json::array();
        for (auto z : t.amps) a.push_back({z.real(), z.imag()});
        j["terms"].push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"amps", a}});
    }
    return j.dump();
}

}  // namespace sfqo
