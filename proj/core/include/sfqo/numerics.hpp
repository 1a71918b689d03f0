#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sfqo {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Uniform grid t_j = t0 + j*h, j = 0..n-1.
struct UniformGrid {
    double t0 = 0.0;
    double h = 1.0;
    std::size_t n = 0;

    double operator[](std::size_t j) const { return t0 + h * double(j); }
    double back() const { return (*this)[n - 1]; }
    std::vector<double> points() const;

    // Grid spanning [a, b] with spacing at most h_max.
    static UniformGrid spanning(double a, double b, double h_max);
};

// Cumulative trapezoid, out[0] = 0.
std::vector<double> cumtrapz(const std::vector<double>& f, double h);
std::vector<cplx> cumtrapz(const std::vector<cplx>& f, double h);

double trapz(const std::vector<double>& f, double h);
cplx trapz(const std::vector<cplx>& f, double h);

// Composite Simpson; falls back to trapezoid on the last panel when the
// interval count is odd.
double simpson(const std::vector<double>& f, double h);
cplx simpson(const std::vector<cplx>& f, double h);

// Simpson weights matching simpson().
std::vector<double> simpson_weights(std::size_t n, double h);

// Adaptive Simpson for smooth scalar integrands.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

// Integral of (a0 + (a1-a0)s) exp(i(p0 + (p1-p0)s)) h ds over s in [0,1].
// Exact for linear amplitude and linear phase; reduces to trapezoid when the
// phase step is small.
cplx filon_panel(cplx a0, cplx a1, double p0, double p1, double h);
// Quadratic amplitude through start, midpoint and end; linear phase.
cplx filon_panel3(cplx a0, cplx am, cplx a1, double p0, double p1, double h);

// Natural cubic spline on a uniform grid.
template <class T>
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(UniformGrid grid, std::vector<T> values);

    T operator()(double t) const;
    const UniformGrid& grid() const { return grid_; }

private:
    UniformGrid grid_{};
    std::vector<T> y_;
    std::vector<T> m_;  // second derivatives
};

extern template class CubicSpline<double>;
extern template class CubicSpline<cplx>;

// log(n!) table for n = 0..n_max.
std::vector<double> log_factorials(std::size_t n_max);

// A numerical tolerance could not be met.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thread count from SFQO_THREADS (default 1).
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index must write only to its own slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sfqo
