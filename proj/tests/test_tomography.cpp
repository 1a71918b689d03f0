#include <doctest.h>

#include <cmath>

#include "sfqo/fock.hpp"
#include "sfqo/tomography.hpp"

using namespace sfqo;

TEST_CASE("kernel closed form vs numeric quadrature of its definition") {
    for (double kc : {2.0, 3.7, 5.0})
        for (double z : {0.0, 1e-6, 5e-5, 0.3, 1.0, -2.5, 7.0}) {
            double v = adaptive_simpson([&](double xi) { return xi * std::cos(xi * z); }, 0.0, kc, 1e-13);
            CHECK(fbp_kernel(z, kc) == doctest::Approx(v).epsilon(1e-9).scale(1.0));
            CHECK(fbp_kernel(-z, kc) == fbp_kernel(z, kc));
        }
    CHECK(fbp_kernel(0.0, 3.7) == doctest::Approx(3.7 * 3.7 / 2));
    // both sides of the series switch against the Taylor expansion
    for (double z : {0.99e-3 / 3.7, 1.01e-3 / 3.7, 1e-2}) {
        double k2 = 3.7 * 3.7, taylor = k2 / 2 - k2 * k2 * z * z / 8 + k2 * k2 * k2 * std::pow(z, 4) / 144;
        CHECK(fbp_kernel(z, 3.7) == doctest::Approx(taylor).epsilon(1e-12));
    }
}

TEST_CASE("coherent Wigner") {
    auto spec = GridSpec::centered(6.0, 241);
    auto w = wigner_coherent(cplx(1.0, -0.5), spec);
    CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(w.max() == doctest::Approx(2.0 / pi).epsilon(1e-12));
    auto am = w.argmax();
    CHECK(am.first == doctest::Approx(1.0));
    CHECK(am.second == doctest::Approx(-0.5));
    // marginal over Im beta: Gaussian with variance 1/4
    double m0 = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < spec.nx; ++i) {
        double col = 0;
        for (std::size_t j = 0; j < spec.np; ++j) col += w.at(i, j) * spec.dp();
        double x = spec.x(i);
        m0 += col * spec.dx();
        m1 += col * x * spec.dx();
        m2 += col * x * x * spec.dx();
    }
    CHECK(m2 / m0 - std::pow(m1 / m0, 2) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("cat Wigner closed form equals the general superposition formula") {
    auto spec = GridSpec::centered(6.0, 121);
    for (cplx chi : {cplx(0.8, 0), cplx(0.1, 0), cplx(0.3, 0.5)}) {
        auto w = wigner_cat(2.0, chi, spec);
        CoherentSuperposition s(1);
        s.add(1.0, {2.0 + chi});
        s.add(-overlap(2.0, 2.0 + chi), {2.0});
        auto g = wigner_state(s, spec);
        double worst = 0;
        for (std::size_t k = 0; k < w.values.size(); ++k) worst = std::max(worst, std::abs(w.values[k] - g.values[k]));
        CHECK(worst < 1e-12);
        CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(w.min() < 0.0);
    }
    CHECK_THROWS(wigner_cat(2.0, 0.0, spec));
    auto big = wigner_cat(2.0, 6.0, GridSpec::centered(10.0, 2001));
    CHECK(std::abs(big.argmax().first - 8.0) < 1e-3);
}

TEST_CASE("quadrature density is the marginal of the Wigner function") {
    CoherentSuperposition s(1);
    s.add(1.0, {2.8});
    s.add(-overlap(2.0, 2.8), {2.0});
    s = s.normalized();
    // phi = 0: P(x) = int W(beta) dIm beta with Re beta = x/sqrt2, Jacobian 1/sqrt2
    for (double x : {1.0, 3.9, 4.2}) {
        double acc = 0, dp = 0.005;
        for (double p = -8; p <= 8; p += dp) acc += wigner_beta(s, cplx(x / std::sqrt(2.0), p)) * dp;
        CHECK(quadrature_density(s, 0.0, x) == doctest::Approx(acc / std::sqrt(2.0)).epsilon(1e-6));
    }
    // dip near the centre for the chi = 0.8 cat at phi aligned with chi
    double c = std::sqrt(2.0) * 2.4;
    CHECK(quadrature_density(s, 0.0, c) < quadrature_density(s, 0.0, c + 0.8));
}

TEST_CASE("homodyne sampling statistics and reproducibility") {
    HomodyneParams h;
    h.alpha = 2.0;
    auto a = homodyne_sample(h, 20000, 11), b = homodyne_sample(h, 20000, 11);
    CHECK(a.x == b.x);
    CHECK(a.phases == b.phases);
    for (std::size_t k = 1; k < a.phases.size(); ++k) CHECK(a.phases[k] >= a.phases[k - 1]);
    CHECK(a.phases.front() >= 0.0);
    CHECK(a.phases.back() < pi);
    double v = 0;
    for (std::size_t k = 0; k < a.x.size(); ++k) v += std::pow(a.x[k] - std::sqrt(2.0) * 2.0 * std::cos(a.phases[k]), 2);
    v /= double(a.x.size());
    CHECK(std::abs(v - 0.5) < 3 * std::sqrt(2.0 / 20000));

    HomodyneParams cat;
    cat.kind = StateKind::Cat;
    auto c1 = homodyne_sample(cat, 500, 4), c2 = homodyne_sample(cat, 500, 4);
    CHECK(c1.x == c2.x);
}

TEST_CASE("reconstruction is linear in the sample set") {
    HomodyneParams h;
    auto a = homodyne_sample(h, 300, 1), b = homodyne_sample(h, 200, 2);
    HomodyneSampleSet u = a;
    u.x.insert(u.x.end(), b.x.begin(), b.x.end());
    u.phases.insert(u.phases.end(), b.phases.begin(), b.phases.end());
    auto spec = GridSpec::centered(4.0, 21);
    auto wa = reconstruct_wigner(a, 3.7, spec), wb = reconstruct_wigner(b, 3.7, spec), wu = reconstruct_wigner(u, 3.7, spec);
    for (std::size_t k = 0; k < wu.values.size(); ++k)
        CHECK(wu.values[k] == doctest::Approx(0.6 * wa.values[k] + 0.4 * wb.values[k]).epsilon(1e-9).scale(1e-9));
    CHECK_THROWS(reconstruct_wigner(HomodyneSampleSet{}, 3.7, spec));
    CHECK_THROWS(reconstruct_wigner(a, 0.0, spec));
}

TEST_CASE("few samples still locate the peak") {
    HomodyneParams h;
    h.alpha = 2.0;
    int hits = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto w = reconstruct_wigner(homodyne_sample(h, 100, 100 + s), 3.7, GridSpec::centered(4.0, 41));
        auto am = w.argmax();
        if (std::hypot(am.first - 2.0, am.second) <= 0.5 / std::sqrt(2.0) + 0.1) ++hits;
    }
    CHECK(hits >= 8);
}

TEST_CASE("noiseless back-projection of a coherent state: cutoff-limited peak") {
    auto w = reconstruct_from_marginals(CoherentSuperposition::coherent(2.0), 3.7, GridSpec{1.5, 2.5, -0.5, 0.5, 21, 21}, 120, 0.02);
    // sharp cutoff at k_c in quadrature units: peak * (1 - exp(-k_c^2/4))
    CHECK(w.max() == doctest::Approx(2.0 / pi * (1 - std::exp(-3.7 * 3.7 / 4))).epsilon(2e-3));
}

TEST_CASE("mean photon number from a Wigner grid") {
    auto spec = GridSpec::centered(6.0, 241);
    CHECK(std::abs(mean_photon_from_wigner(wigner_coherent(0.0, spec))) < 1e-3);
    CHECK(mean_photon_from_wigner(wigner_coherent(2.0, spec)) == doctest::Approx(4.0).epsilon(0.02));
    CoherentSuperposition s(1);
    s.add(1.0, {2.8});
    s.add(-overlap(2.0, 2.8), {2.0});
    double fock = photon_distribution(s.normalized(), 80).mean();
    CHECK(mean_photon_from_wigner(wigner_cat(2.0, 0.8, spec)) == doctest::Approx(fock).epsilon(0.02));
    auto bad = wigner_coherent(0.0, spec);
    for (auto& v : bad.values) v *= 2;
    CHECK_THROWS(mean_photon_from_wigner(bad));
}

TEST_CASE("error sweep table") {
    SweepSettings st;
    st.values = {500, 2000};
    st.n_seeds = 3;
    st.grid = GridSpec::centered(4.0, 33);
    auto rows = error_sweep(SweepProtocol::VsNSamples, st);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].value == 500);
    CHECK(rows[0].mean_error_pct >= 0.0);
    CHECK(parse_sweep_protocol("vs_kc") == SweepProtocol::VsKc);
    CHECK_THROWS(parse_sweep_protocol("bogus"));
}
