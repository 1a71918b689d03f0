#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "sfqo/fock.hpp"

using namespace sfqo;

namespace {
// <alpha|beta> by direct Fock summation
cplx overlap_by_fock(cplx a, cplx b, int n_max) {
    cplx acc = 0.0;
    double lf = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) lf += std::log(double(n));
        cplx ca = std::exp(-0.5 * std::norm(a)) * std::pow(std::conj(a), n) / std::exp(0.5 * lf);
        cplx cb = std::exp(-0.5 * std::norm(b)) * std::pow(b, n) / std::exp(0.5 * lf);
        acc += ca * cb;
    }
    return acc;
}
}  // namespace

TEST_CASE("overlap closed form") {
    CHECK(std::abs(overlap(cplx(1.2, -0.3), cplx(1.2, -0.3)) - 1.0) < 1e-15);
    cplx chi(0.6, 0.2);
    CHECK(std::abs(overlap(0.0, chi) - std::exp(-0.5 * std::norm(chi))) < 1e-15);
    CHECK(std::abs(overlap(2.0, 2.8) - std::exp(-0.32)) < 1e-14);
    for (auto [a, b] : {std::pair{cplx(2, 0), cplx(2.8, 0)}, {cplx(0.5, 1.0), cplx(-0.3, 0.9)}, {cplx(0, 7), cplx(0.2, 6.5)}})
        CHECK(std::abs(overlap(a, b) - overlap_by_fock(a, b, 200)) <= 1e-10);
}

TEST_CASE("superposition norm and normalization") {
    CoherentSuperposition s(1);
    s.add(1.0, {2.8});
    s.add(-overlap(2.0, 2.8), {2.0});
    CHECK(s.norm2() == doctest::Approx(1 - std::exp(-0.64)).epsilon(1e-12));
    CHECK(s.normalized().norm2() == doctest::Approx(1.0).epsilon(1e-12));
    CoherentSuperposition bad(2);
    CHECK_THROWS(bad.add(1.0, {1.0}));
}

TEST_CASE("coherent photon statistics") {
    for (double a : {7.95, 8.73}) {
        auto d = photon_distribution(CoherentSuperposition::coherent(a), 200);
        CHECK(d.mean() == doctest::Approx(a * a).epsilon(1e-6 / (a * a)));
        CHECK(std::abs(d.variance() - a * a) <= 1e-6);
    }
    auto v = photon_distribution(CoherentSuperposition::coherent(0.0), 10);
    CHECK(v.probs[0] == doctest::Approx(1.0));
    CHECK(default_n_max(CoherentSuperposition::coherent(3.0)) == 39);
}

TEST_CASE("three-branch superposition") {
    CoherentSuperposition s(1);
    s.add(1.0, {7.0});
    s.add(-1.0, {9.0});
    s.add(0.75, {10.0});
    auto sn = s.normalized();
    auto d = photon_distribution(sn, 300);
    // direct Fock summation oracle
    double lf = 0.0, mean = 0.0, tot = 0.0;
    for (int n = 0; n <= 300; ++n) {
        if (n > 0) lf += std::log(double(n));
        cplx amp = 0.0;
        for (const auto& t : sn.terms())
            amp += t.coeff * std::exp(-0.5 * std::norm(t.amps[0]) + double(n) * std::log(t.amps[0]) - 0.5 * lf);
        tot += std::norm(amp);
        mean += n * std::norm(amp);
        CHECK(d.probs[n] == doctest::Approx(std::norm(amp)).epsilon(1e-9).scale(1e-12));
    }
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.mean() == doctest::Approx(mean).epsilon(1e-10));
    CHECK(d.mean() == doctest::Approx(63.2).epsilon(0.01));
    int maxima = 0;
    for (int n = 1; n < 300; ++n)
        if (d.probs[n] > d.probs[n - 1] && d.probs[n] >= d.probs[n + 1] && d.probs[n] > 1e-3) ++maxima;
    CHECK(maxima >= 3);
}

TEST_CASE("phase shifter") {
    CoherentSuperposition s(1);
    s.add(1.0, {cplx(1, 2)});
    s.add(0.5, {cplx(-1, 0.3)});
    auto same = phase_shifter(s, 0.0);
    auto neg = phase_shifter(s, pi);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(same.terms()[i].amps[0] - s.terms()[i].amps[0]) < 1e-15);
        CHECK(std::abs(neg.terms()[i].amps[0] + s.terms()[i].amps[0]) < 1e-15);
    }
    CHECK(phase_shifter(s, 1.1).norm2() == doctest::Approx(s.norm2()).epsilon(1e-12));
}

TEST_CASE("beam splitter") {
    auto s = CoherentSuperposition::product({cplx(1.0, 0.5), cplx(-0.3, 2.0)});
    auto z = beam_splitter(s, 0.0);
    CHECK(std::abs(z.terms()[0].amps[0] - cplx(1.0, 0.5)) < 1e-15);
    CHECK(std::abs(z.terms()[0].amps[1] - cplx(0.3, -2.0)) < 1e-15);
    for (double th : {0.3, pi / 4, 1.2}) {
        auto o = beam_splitter(s, th);
        double ein = std::norm(s.terms()[0].amps[0]) + std::norm(s.terms()[0].amps[1]);
        double eout = std::norm(o.terms()[0].amps[0]) + std::norm(o.terms()[0].amps[1]);
        CHECK(std::abs(ein - eout) <= 1e-12);
    }
    CoherentSuperposition cat(2);
    cat.add(1.0, {2.0, 0.5});
    cat.add(-0.4, {1.0, 0.2});
    CHECK(beam_splitter(cat, 0.7).norm2() == doctest::Approx(cat.norm2()).epsilon(1e-12));
}

TEST_CASE("cat x cat through a beam splitter: four branches") {
    cplx g1(2.0, 0.1), b1(1.5, 0), g2(0.3, 1.0), b2(0, 0.4), x1(-0.4, 0.1), x2(0.7, 0);
    CoherentSuperposition c1(1), c2(1);
    c1.add(1.0, {g1});
    c1.add(x1, {b1});
    c2.add(1.0, {g2});
    c2.add(x2, {b2});
    double th = 0.6, c = std::cos(th), s = std::sin(th);
    auto out = beam_splitter(tensor(c1, c2), th);
    REQUIRE(out.terms().size() == 4);
    auto f = [&](cplx u, cplx v) { return std::pair{u * c + v * s, -v * c + u * s}; };
    std::vector<std::pair<cplx, std::pair<cplx, cplx>>> expect = {
        {1.0, f(g1, g2)}, {x2, f(g1, b2)}, {x1, f(b1, g2)}, {x1 * x2, f(b1, b2)}};
    for (const auto& [coef, amps] : expect) {
        bool found = false;
        for (const auto& t : out.terms())
            if (std::abs(t.amps[0] - amps.first) < 1e-14 && std::abs(t.amps[1] - amps.second) < 1e-14 &&
                std::abs(t.coeff - coef) < 1e-14)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("interferometer: composition equals closed form") {
    for (double phi : {0.0, 0.4, 2.0}) {
        cplx a0(2.0, 0.3), x1(0.8, 0.1), x2(-0.3, 0.5), xi1(-0.6, 0.1), xi2(0.2, -0.4);
        auto comp = interferometer_psi_f(a0, x1, x2, xi1, xi2, phi);
        auto closed = interferometer_psi_f_closed_form(a0, x1, x2, xi1, xi2, phi);
        REQUIRE(comp.terms().size() == closed.terms().size());
        for (std::size_t i = 0; i < comp.terms().size(); ++i) {
            CHECK(std::abs(comp.terms()[i].coeff - closed.terms()[i].coeff) <= 1e-12);
            for (int m = 0; m < 2; ++m) CHECK(std::abs(comp.terms()[i].amps[m] - closed.terms()[i].amps[m]) <= 1e-12);
        }
    }
    // phi = 0: reflected amplitude of the xi1 xi2 branch vanishes
    auto z = interferometer_psi_f_closed_form(2.0, 0.8, 0.5, -0.5, -0.5, 0.0);
    CHECK(std::abs(z.terms()[3].amps[1]) < 1e-15);
    // no shifts: a single product state after merging
    auto m = interferometer_psi_f(2.0, 0.0, 0.0, -0.3, 0.2, 0.7).merged();
    CHECK(m.terms().size() == 1);
}

TEST_CASE("reduced purity") {
    auto prod = CoherentSuperposition::product({1.0, cplx(0, 2)});
    CHECK(reduced_purity(prod, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CoherentSuperposition far(2);
    far.add(1.0, {3.0, 3.0});
    far.add(1.0, {-3.0, -3.0});
    auto fn = far.normalized();
    CHECK(reduced_purity(fn, 1) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS(reduced_purity(far, 0));  // not normalized
}

TEST_CASE("gram matrix is positive semidefinite") {
    CoherentSuperposition s(1);
    for (double a : {0.0, 0.3, 0.6, 1.5, cplx(0.2, 0.9).real()}) s.add(1.0, {cplx(a, 0.5 * a)});
    auto G = gram_matrix(s);
    const std::size_t n = G.size();
    // Cholesky with jitter for ties
    std::vector<std::vector<cplx>> L(n, std::vector<cplx>(n, 0.0));
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            cplx sum = G[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= L[i][k] * std::conj(L[j][k]);
            if (i == j) {
                if (sum.real() < -1e-12) ok = false;
                L[i][i] = std::sqrt(std::max(sum.real(), 1e-14));
            } else {
                L[i][j] = sum / L[j][j];
            }
        }
    CHECK(ok);
}

TEST_CASE("json export") {
    auto j = nlohmann::json::parse(to_json(CoherentSuperposition::product({cplx(1, 2), 0.5})));
    CHECK(j["n_modes"] == 2);
    CHECK(j["terms"][0]["amps"][0][1] == 2.0);
}

TEST_CASE("mean photon number of a superposition matches the Fock distribution") {
    CoherentSuperposition s(1);
    s.add(1.0, {2.8});
    s.add(-overlap(2.0, 2.8), {2.0});
    auto d = photon_distribution(s.normalized(), 80);
    CHECK(mean_photon_number(s, 0) == doctest::Approx(d.mean()).epsilon(1e-10));
}
