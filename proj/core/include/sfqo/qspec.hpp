#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sfqo {

struct ShotRecord {
    double s_ir0 = 1.0;
    double s_ir = 1.0;
    double s_xuv = 1.0;
    double s_ati_pos = 1.0;
    double s_ati_neg = 1.0;
    int label = 0;  // 0 background, otherwise the harmonic order of a correlated shot
};

struct QspecModel {
    double w_j = 0.05;          // relative jitter of s_ir and product channels
    double w_ir0 = 0.01;        // relative jitter of the reference energy channel
    double f_corr = 1e-3;
    std::vector<int> q_orders = {11, 13, 15, 17, 19, 21};
    double a_const = 5e-7;      // signal per photon
    double n_mean = 1e4;        // mean photon number per order
    bool poisson = true;        // N_q ~ Poisson(n_mean), else fixed
    std::size_t n_shots = 500000;
    std::uint64_t seed = 7;

    void validate() const;
    // Spacing of the IR-loss ladder for consecutive entries of q_orders.
    double ladder_spacing() const;
};

enum class ProductChannel { Xuv, AtiPos, AtiNeg };

std::vector<ShotRecord> generate_shots(const QspecModel& model);

std::vector<ShotRecord> stability_filter(const std::vector<ShotRecord>& shots, double tol = 0.01);

// Additive shift of s_ir and the product channels to unit mean.
std::vector<ShotRecord> balance(const std::vector<ShotRecord>& shots);

struct Selection {
    std::vector<ShotRecord> shots;
    double w_ant = 0.0;
};

// Keeps |(s_prod - 1) + (s_ir - 1)| <= w_ant / 2, w_ant = w_j / sqrt(k). Input must be balanced.
Selection anticorrelation_select(const std::vector<ShotRecord>& shots, double w_j, std::size_t k_points,
                                 ProductChannel channel = ProductChannel::Xuv);

struct Histogram {
    double bin_width = 0.0;
    double origin = 0.0;
    std::vector<double> centers;
    std::vector<std::size_t> counts;
    std::vector<double> peaks;  // centers of resolved maxima
    double mean_spacing() const;
};

// Histogram of the IR loss 1 - s_ir; maxima must exceed rel * max count.
Histogram p_ir_histogram(const std::vector<ShotRecord>& selected, double bin_width, double rel = 0.25);

struct SelectionStats {
    std::size_t n_selected = 0;
    std::size_t n_correlated = 0;
    double precision = 0.0;   // correlated fraction of the selection
    double enrichment = 0.0;  // precision / correlated fraction of the input
};
SelectionStats selection_stats(const std::vector<ShotRecord>& input, const std::vector<ShotRecord>& selected);

void write_shots_csv(std::ostream& os, const std::vector<ShotRecord>& shots);
std::vector<ShotRecord> read_shots_csv(std::istream& is);
void write_histogram_csv(std::ostream& os, const Histogram& h);

}  // namespace sfqo
