#include "sfqo/qspec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sfqo/numerics.hpp"

namespace sfqo {

void QspecModel::validate() const {
    if (!(w_j > 0.0)) throw std::invalid_argument("qspec.w_j must be > 0");
    if (!(w_ir0 >= 0.0)) throw std::invalid_argument("qspec.w_ir0 must be >= 0");
    if (!(f_corr >= 0.0 && f_corr <= 1.0)) throw std::invalid_argument("qspec.f_corr must be in [0, 1]");
    if (q_orders.empty()) throw std::invalid_argument("qspec.q_orders must not be empty");
    for (int q : q_orders)
        if (q <= 0) throw std::invalid_argument("qspec.q_orders must be positive");
    if (!(a_const > 0.0)) throw std::invalid_argument("qspec.a_const must be > 0");
    if (!(n_mean > 0.0)) throw std::invalid_argument("qspec.n_mean must be > 0");
    if (n_shots < 1000) throw std::invalid_argument("qspec.n_shots must be >= 1000");
}

double QspecModel::ladder_spacing() const {
    if (q_orders.size() < 2) return 0.0;
    auto q = q_orders;
    std::sort(q.begin(), q.end());
    return double(q[1] - q[0]) * a_const * n_mean;
}

std::vector<ShotRecord> generate_shots(const QspecModel& m) {
    m.validate();
    constexpr std::size_t chunk = 1 << 16;
    const std::size_t n_chunks = (m.n_shots + chunk - 1) / chunk;
    std::vector<ShotRecord> shots(m.n_shots);
    parallel_for(n_chunks, [&](std::size_t c) {
        std::seed_seq sq{std::uint64_t(m.seed), std::uint64_t(c), std::uint64_t(0x51ec)};
        std::mt19937_64 rng(sq);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> pick(0, m.q_orders.size() - 1);
        std::poisson_distribution<long> pois(m.n_mean);
        const std::size_t end = std::min(m.n_shots, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            ShotRecord r;
            r.s_ir0 = std::max(0.0, 1.0 + m.w_ir0 * gauss(rng));
            r.s_ati_pos = std::max(0.0, 1.0 + m.w_j * gauss(rng));
            r.s_ati_neg = std::max(0.0, 1.0 + m.w_j * gauss(rng));
            double jir = gauss(rng), jx = gauss(rng);
            if (uni(rng) < m.f_corr) {
                int q = m.q_orders[pick(rng)];
                double n = m.poisson ? double(pois(rng)) : m.n_mean;
                double loss = double(q) * m.a_const * n;
                r.s_ir = std::max(0.0, 1.0 - loss);
                r.s_xuv = 1.0 + loss;
                r.label = q;
            } else {
                r.s_ir = std::max(0.0, 1.0 + m.w_j * jir);
                r.s_xuv = std::max(0.0, 1.0 + m.w_j * jx);
            }
            shots[i] = r;
        }
    });
    return shots;
}

std::vector<ShotRecord> stability_filter(const std::vector<ShotRecord>& shots, double tol) {
    std::vector<ShotRecord> out;
    for (const auto& s : shots)
        if (std::abs(s.s_ir0 - 1.0) <= tol) out.push_back(s);
    return out;
}

std::vector<ShotRecord> balance(const std::vector<ShotRecord>& shots) {
    if (shots.empty()) return {};
    double m_ir = 0, m_x = 0, m_p = 0, m_n = 0;
    for (const auto& s : shots) {
        m_ir += s.s_ir;
        m_x += s.s_xuv;
        m_p += s.s_ati_pos;
        m_n += s.s_ati_neg;
    }
    const double n = double(shots.size());
    auto out = shots;
    for (auto& s : out) {
        s.s_ir = std::max(0.0, s.s_ir + 1.0 - m_ir / n);
        s.s_xuv = std::max(0.0, s.s_xuv + 1.0 - m_x / n);
        s.s_ati_pos = std::max(0.0, s.s_ati_pos + 1.0 - m_p / n);
        s.s_ati_neg = std::max(0.0, s.s_ati_neg + 1.0 - m_n / n);
    }
    return out;
}

Selection anticorrelation_select(const std::vector<ShotRecord>& shots, double w_j, std::size_t k,
                                 ProductChannel ch) {
    if (k == 0) throw std::invalid_argument("anticorrelation_select: k_points must be > 0");
    if (!(w_j > 0.0)) throw std::invalid_argument("anticorrelation_select: w_j must be > 0");
    Selection sel;
    sel.w_ant = w_j / std::sqrt(double(k));
    for (const auto& s : shots) {
        double prod = ch == ProductChannel::Xuv ? s.s_xuv : ch == ProductChannel::AtiPos ? s.s_ati_pos : s.s_ati_neg;
        if (std::abs((prod - 1.0) + (s.s_ir - 1.0)) <= 0.5 * sel.w_ant) sel.shots.push_back(s);
    }
    if (sel.shots.empty())
        throw std::runtime_error("anticorrelation_select: empty selection; increase n_shots or f_corr");
    return sel;
}

double Histogram::mean_spacing() const {
    if (peaks.size() < 2) return 0.0;
    return (peaks.back() - peaks.front()) / double(peaks.size() - 1);
}

Histogram p_ir_histogram(const std::vector<ShotRecord>& sel, double bw, double rel) {
    if (sel.empty()) throw std::invalid_argument("p_ir_histogram: empty selection");
    if (!(bw > 0.0)) throw std::invalid_argument("p_ir_histogram: bin width must be > 0");
    double lo = 1e300, hi = -1e300;
    for (const auto& s : sel) {
        lo = std::min(lo, 1.0 - s.s_ir);
        hi = std::max(hi, 1.0 - s.s_ir);
    }
    Histogram h;
    h.bin_width = bw;
    h.origin = std::floor(lo / bw) * bw;
    auto nb = std::size_t(std::floor((hi - h.origin) / bw)) + 1;
    h.counts.assign(nb, 0);
    for (const auto& s : sel) {
        auto b = std::size_t(std::floor((1.0 - s.s_ir - h.origin) / bw));
        h.counts[std::min(b, nb - 1)]++;
    }
    for (std::size_t b = 0; b < nb; ++b) h.centers.push_back(h.origin + (double(b) + 0.5) * bw);
    const std::size_t cmax = *std::max_element(h.counts.begin(), h.counts.end());
    const double thr = rel * double(cmax);
    for (std::size_t b = 0; b < nb; ++b) {
        std::size_t c = h.counts[b];
        if (double(c) < thr || c == 0) continue;
        std::size_t left = b > 0 ? h.counts[b - 1] : 0;
        std::size_t right = b + 1 < nb ? h.counts[b + 1] : 0;
        if (c > left && c >= right) h.peaks.push_back(h.centers[b]);
    }
    return h;
}

SelectionStats selection_stats(const std::vector<ShotRecord>& input, const std::vector<ShotRecord>& selected) {
    SelectionStats st;
    std::size_t n_in_corr = 0;
    for (const auto& s : input) n_in_corr += s.label != 0;
    st.n_selected = selected.size();
    for (const auto& s : selected) st.n_correlated += s.label != 0;
    if (st.n_selected) st.precision = double(st.n_correlated) / double(st.n_selected);
    if (n_in_corr) st.enrichment = st.precision / (double(n_in_corr) / double(input.size()));
    return st;
}

void write_shots_csv(std::ostream& os, const std::vector<ShotRecord>& shots) {
    os << "s_ir0,s_ir,s_xuv,s_ati_pos,s_ati_neg,label\n";
    char buf[160];
    for (const auto& s : shots) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.s_ir0, s.s_ir, s.s_xuv, s.s_ati_pos,
                      s.s_ati_neg, s.label);
        os << buf;
    }
}

std::vector<ShotRecord> read_shots_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("s_ir0,s_ir,s_xuv,s_ati_pos,s_ati_neg,label", 0) != 0)
        throw std::runtime_error("shots csv: bad header");
    std::vector<ShotRecord> out;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        ShotRecord r;
        char comma;
        std::istringstream ss(line);
        ss >> r.s_ir0 >> comma >> r.s_ir >> comma >> r.s_xuv >> comma >> r.s_ati_pos >> comma >> r.s_ati_neg >> comma >>
            r.label;
        if (!ss) throw std::runtime_error("shots csv: malformed row " + std::to_string(row));
        out.push_back(r);
    }
    return out;
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "ir_loss,count,is_peak\n";
    char buf[96];
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        bool pk = std::find(h.peaks.begin(), h.peaks.end(), h.centers[b]) != h.peaks.end();
        std::snprintf(buf, sizeof buf, "%.6f,%zu,%d\n", h.centers[b], h.counts[b], pk ? 1 : 0);
        os << buf;
    }
}

}  // namespace sfqo
