#include "sfqo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace sfqo {

std::vector<double> UniformGrid::points() const {
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = (*this)[j];
    return t;
}

UniformGrid UniformGrid::spanning(double a, double b, double h_max) {
    if (!(b > a)) return UniformGrid{a, h_max, 1};
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / h_max - 1e-9));
    return UniformGrid{a, (b - a) / double(panels), panels + 1};
}

namespace {

template <class T>
std::vector<T> cumtrapz_impl(const std::vector<T>& f, double h) {
    std::vector<T> c(f.size(), T{});
    for (std::size_t j = 1; j < f.size(); ++j) c[j] = c[j - 1] + 0.5 * h * (f[j] + f[j - 1]);
    return c;
}

template <class T>
T trapz_impl(const std::vector<T>& f, double h) {
    if (f.size() < 2) return T{};
    T s = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
    return s * h;
}

template <class T>
T simpson_impl(const std::vector<T>& f, double h) {
    const auto w = simpson_weights(f.size(), h);
    T s{};
    for (std::size_t j = 0; j < f.size(); ++j) s += w[j] * f[j];
    return s;
}

}  // namespace

std::vector<double> cumtrapz(const std::vector<double>& f, double h) { return cumtrapz_impl(f, h); }
std::vector<cplx> cumtrapz(const std::vector<cplx>& f, double h) { return cumtrapz_impl(f, h); }
double trapz(const std::vector<double>& f, double h) { return trapz_impl(f, h); }
cplx trapz(const std::vector<cplx>& f, double h) { return trapz_impl(f, h); }
double simpson(const std::vector<double>& f, double h) { return simpson_impl(f, h); }
cplx simpson(const std::vector<cplx>& f, double h) { return simpson_impl(f, h); }

std::vector<double> simpson_weights(std::size_t n, double h) {
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    std::size_t panels = n - 1;
    std::size_t even = panels - panels % 2;
    for (std::size_t j = 0; j + 2 <= even; j += 2) {
        w[j] += h / 3.0;
        w[j + 1] += 4.0 * h / 3.0;
        w[j + 2] += h / 3.0;
    }
    if (panels % 2) {
        w[n - 2] += 0.5 * h;
        w[n - 1] += 0.5 * h;
    }
    return w;
}

namespace {

double asr(const std::function<double(double)>& f, double a, double b, double fa, double fm,
           double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return asr(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           asr(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return asr(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

cplx filon_panel(cplx a0, cplx a1, double p0, double p1, double h) {
    const double x = p1 - p0;
    cplx e0, e1;
    if (std::abs(x) < 0.2) {
        // series in (ix)
        cplx term = 1.0;
        e0 = 0.0;
        e1 = 0.0;
        double fact = 1.0;
        for (int m = 0; m < 14; ++m) {
            if (m > 0) {
                term *= I * x;
                fact *= m;
            }
            e0 += term / (fact * (m + 1));
            e1 += term / (fact * (m + 2));
        }
    } else {
        cplx ex = std::exp(I * x);
        e0 = (ex - 1.0) / (I * x);
        e1 = ex / (I * x) + (ex - 1.0) / (x * x);
    }
    return h * std::exp(I * p0) * (a0 * (e0 - e1) + a1 * e1);
}

cplx filon_panel3(cplx a0, cplx am, cplx a1, double p0, double p1, double h) {
    const double x = p1 - p0;
    cplx m[3];
    if (std::abs(x) < 1.0) {
        for (int n = 0; n < 3; ++n) {
            cplx term = 1.0;
            m[n] = 0.0;
            for (int k = 0; k < 24; ++k) {
                if (k > 0) term *= I * x / double(k);
                m[n] += term / double(n + k + 1);
            }
        }
    } else {
        const cplx ex = std::exp(I * x), ix = I * x;
        m[0] = (ex - 1.0) / ix;
        m[1] = (ex - m[0]) / ix;
        m[2] = (ex - 2.0 * m[1]) / ix;
    }
    // Lagrange basis on u = 0, 1/2, 1
    cplx w0 = 2.0 * m[2] - 3.0 * m[1] + m[0];
    cplx wm = 4.0 * m[1] - 4.0 * m[2];
    cplx w1 = 2.0 * m[2] - m[1];
    return h * std::exp(I * p0) * (a0 * w0 + am * wm + a1 * w1);
}

template <class T>
CubicSpline<T>::CubicSpline(UniformGrid grid, std::vector<T> values)
    : grid_(grid), y_(std::move(values)), m_(y_.size(), T{}) {
    const std::size_t n = y_.size();
    if (n != grid_.n || n < 2) throw std::invalid_argument("CubicSpline: size mismatch");
    if (n == 2) return;
    // Thomas algorithm for 1,4,1 system with natural ends.
    const double h = grid_.h;
    std::vector<double> c(n, 0.0);
    std::vector<T> d(n, T{});
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h * h);
    std::vector<double> cp(n, 0.0);
    std::vector<T> dp(n, T{});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double denom = 4.0 - (i > 1 ? cp[i - 1] : 0.0);
        cp[i] = 1.0 / denom;
        dp[i] = (d[i] - (i > 1 ? dp[i - 1] : T{})) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = dp[i] - cp[i] * m_[i + 1];
        if (i == 1) break;
    }
}

template <class T>
T CubicSpline<T>::operator()(double t) const {
    const double h = grid_.h;
    double u = (t - grid_.t0) / h;
    std::size_t n = y_.size();
    std::size_t j = u <= 0.0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(u), n - 2);
    double a = (grid_[j + 1] - t) / h;
    double b = 1.0 - a;
    return a * y_[j] + b * y_[j + 1] +
           ((a * a * a - a) * m_[j] + (b * b * b - b) * m_[j + 1]) * (h * h / 6.0);
}

template class CubicSpline<double>;
template class CubicSpline<cplx>;

std::vector<double> log_factorials(std::size_t n_max) {
    std::vector<double> lf(n_max + 1, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) lf[n] = lf[n - 1] + std::log(double(n));
    return lf;
}

unsigned thread_count() {
    if (const char* s = std::getenv("SFQO_THREADS")) {
        try {
            int v = std::stoi(s);
            if (v >= 1) return unsigned(v);
        } catch (...) {
        }
    }
    return 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned nt = std::min<std::size_t>(thread_count(), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned k = 0; k < nt; ++k) {
        pool.emplace_back([&, k] {
            for (std::size_t i = k; i < n; i += nt) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace sfqo
