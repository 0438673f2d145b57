#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "spinmem/errors.hpp"

namespace spinmem
{

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

// (1 - e^{-z}) / z, entire; 4th-order series near the removable singularity.
inline cplx phi1(cplx z)
{
    if(std::abs(z) < 1e-4) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0 + z * z * z * z / 120.0;
    return (1.0 - std::exp(-z)) / z;
}

// (z - 1 + e^{-z}) / z^2 = (1 - phi1(z)) / z; power series for small |z|.
inline cplx phi2(cplx z)
{
    if(std::abs(z) < 0.5)
    {
        cplx term = 0.5, sum = 0.5;
        for(int k = 1; k < 14; ++k)
        {
            term *= -z / static_cast<double>(k + 2);
            sum += term;
        }
        return sum;
    }
    return (z - 1.0 + std::exp(-z)) / (z * z);
}

inline double phi1(double t)
{
    if(t == 0.0) return 1.0;
    return -std::expm1(-t) / t;
}

// Gauss-Legendre rule mapped to [0, 1]; nodes from Newton iteration on P_n.
template <std::size_t N>
const std::array<std::pair<double, double>, N>& gauss_legendre_unit()
{
    static const auto rule = [] {
        std::array<std::pair<double, double>, N> r{};
        for(std::size_t i = 0; i < N; ++i)
        {
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
            double dp = 0.0;
            for(int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = x;
                for(std::size_t k = 2; k <= N; ++k)
                {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                    p0 = p1;
                    p1 = pk;
                }
                dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if(std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            r[i] = {0.5 * (1.0 - x), 0.5 * w};
        }
        return r;
    }();
    return rule;
}

struct QuadratureResult
{
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    std::size_t panels = 0;
};

// Relative tolerance for frequency integrals; SPINMEM_TOL overrides.
inline double default_tolerance()
{
    if(const char* env = std::getenv("SPINMEM_TOL"))
    {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if(end != env && v > 0.0) return v;
    }
    return 1e-8;
}

struct QuadratureOptions
{
    double rel_tol = default_tolerance();
    double accept_tol = 1e-6;  // relative error still accepted when the panel budget runs out
    double abs_tol = 1e-14;
    std::size_t max_panels = 10000;
    double scale = 1.0;        // omega = scale * tan(theta)
    std::vector<double> hints; // characteristic frequencies, used as initial breakpoints
    bool even = false;         // f(-w) == f(w): integrate the half line and double
};

namespace detail
{

struct Panel
{
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// 15-point Kronrod / 7-point Gauss pair with the QUADPACK error heuristic.
template <class F>
Panel gk15(F& f, double a, double b)
{
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv1[7], fv2[7];
    const double fc = f(center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);
    for(int j = 0; j < 7; ++j)
    {
        const double dx = half * xgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += wgk[j] * sum;
        resabs += wgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if(j % 2 == 1) resg += wg[j / 2] * sum;
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for(int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg * half));
    if(resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if(resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk, err};
}

} // namespace detail

// Integral of f over the real frequency axis divided by 2 pi, via
// omega = scale * tan(theta) and globally adaptive Gauss-Kronrod subdivision.
template <class F>
QuadratureResult integrate_infinite(F&& f, const QuadratureOptions& opt = {})
{
    const double s = opt.scale;
    std::size_t evaluations = 0;
    auto mapped = [&](double theta) {
        ++evaluations;
        const double c = std::cos(theta);
        const double w = s * std::tan(theta);
        const double fw = f(w);
        return fw == 0.0 ? 0.0 : fw * s / (c * c);
    };

    constexpr double half_pi = std::numbers::pi / 2.0;
    std::vector<double> breaks{0.0, half_pi};
    if(!opt.even) breaks.push_back(-half_pi);
    // Each hint gets a ladder of breakpoints so that the algebraic tail of a
    // narrow feature is not hidden inside one wide panel.
    for(double h : opt.hints)
    {
        if(!(h > 0.0) || !std::isfinite(h)) continue;
        for(double k : {0.1, 1.0, 10.0, 100.0, 1000.0})
        {
            const double t = std::atan(k * h / s);
            breaks.push_back(t);
            if(!opt.even) breaks.push_back(-t);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                 breaks.end());

    std::priority_queue<detail::Panel> queue;
    double total = 0.0, total_err = 0.0;
    for(std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        auto p = detail::gk15(mapped, breaks[i], breaks[i + 1]);
        total += p.value;
        total_err += p.error;
        queue.push(p);
    }

    while(total_err > std::max(opt.rel_tol * std::abs(total), opt.abs_tol) && queue.size() < opt.max_panels)
    {
        const auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(mapped, worst.a, mid);
        auto right = detail::gk15(mapped, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    total_err = 0.0;
    const std::size_t panels = queue.size();
    while(!queue.empty())
    {
        total += queue.top().value;
        total_err += queue.top().error;
        queue.pop();
    }

    const double factor = opt.even ? 1.0 / std::numbers::pi : 0.5 / std::numbers::pi;
    QuadratureResult r{total * factor, total_err * factor, evaluations, panels};
    if(!std::isfinite(r.value) || r.error_estimate > std::max(std::max(opt.accept_tol, opt.rel_tol) * std::abs(r.value), opt.abs_tol))
        throw QuadratureFailure("frequency integral did not converge: value " + std::to_string(r.value) +
                                ", error estimate " + std::to_string(r.error_estimate) + " after " +
                                std::to_string(panels) + " panels");
    return r;
}

// Bisection to a relative tolerance on the abscissa.
template <class G>
double find_root_bracketed(G&& g, double lo, double hi, double rel_tol = 1e-9)
{
    double glo = g(lo);
    const double ghi = g(hi);
    if(glo == 0.0) return lo;
    if(ghi == 0.0) return hi;
    if((glo > 0.0) == (ghi > 0.0)) throw NoBracket();
    for(int it = 0; it < 400; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if(std::abs(hi - lo) <= rel_tol * std::max(std::abs(lo), std::abs(hi))) return mid;
        const double gm = g(mid);
        if(gm == 0.0) return mid;
        if((gm > 0.0) == (glo > 0.0))
        {
            lo = mid;
            glo = gm;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Smallest omega in (0, max_omega] where g changes sign from its value at
// omega -> 0, located by doubling from `start` and refined by bisection.
template <class G>
std::optional<double> first_crossing(G&& g, double start, double max_omega, double rel_tol = 1e-9)
{
    const bool negative_start = g(0.0) < 0.0;
    double lo = 0.0;
    for(double hi = start; hi <= max_omega; hi *= 2.0)
    {
        if((g(hi) < 0.0) != negative_start) return find_root_bracketed(g, lo, hi, rel_tol);
        lo = hi;
    }
    return std::nullopt;
}

struct OptimumResult
{
    double x = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
OptimumResult golden_section_maximize(F&& f, double lo, double hi, double abs_tol = 1e-6)
{
    if(!(lo <= hi)) throw BoundsError("lower bound exceeds upper bound");
    std::size_t evals = 0;
    auto eval = [&](double x) {
        ++evals;
        return f(x);
    };
    if(lo == hi) return {lo, eval(lo), evals};

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(c), fd = eval(d);
    while(b - a > abs_tol)
    {
        if(fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
    }
    // Endpoints are candidates too: the maximum may sit on a bound.
    OptimumResult best{c, fc, 0};
    if(fd > best.value) best = {d, fd, 0};
    for(double x : {lo, hi})
    {
        const double fx = eval(x);
        if(fx > best.value) best = {x, fx, 0};
    }
    best.evaluations = evals;
    return best;
}

// Runs fn(i) for i in [0, n) on the available hardware threads. The first
// exception thrown by any worker is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    if(workers <= 1)
    {
        for(std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for(std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try
                {
                    for(std::size_t i = w; i < n; i += workers) fn(i);
                }
                catch(...)
                {
                    std::lock_guard lock(failure_mutex);
                    if(!failure) failure = std::current_exception();
                }
            });
    }
    if(failure) std::rethrow_exception(failure);
}

} // namespace spinmem
