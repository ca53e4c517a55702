#include "uniexp/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uniexp {

double chernoff_h(double x) {
    if (x < 1.0) throw std::domain_error("chernoff_h requires x >= 1");
    if (x == 1.0) return 0.0;
    return 1.0 - x + x * std::log(x);
}

namespace {

constexpr double kGammaRelTol = 1e-16;
constexpr int kGammaMaxIter = 10000;

// Series representation, valid (and fast) for x < a + 1.
double gamma_p_series(double a, double x) {
    if (x <= 0.0) return 0.0;
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kGammaMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaRelTol)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_p series failed to converge");
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i <= kGammaMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < kGammaRelTol)
            return f * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("gamma_q continued fraction failed to converge");
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw std::domain_error("gamma_p requires a > 0");
    if (x < 0.0) throw std::domain_error("gamma_p requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double poisson_tail(std::int64_t m, double rho) {
    if (m < 0) throw std::domain_error("poisson_tail requires m >= 0");
    if (rho < 0.0) throw std::domain_error("poisson_tail requires rho >= 0");
    if (rho == 0.0) return 0.0;
    return gamma_p(static_cast<double>(m) + 1.0, rho);
}

BoundSet bound_set(double rho, double eps) {
    if (rho <= 0.0) throw std::domain_error("bound_set requires rho > 0");
    if (eps <= 0.0 || eps >= 1.0) throw std::domain_error("bound_set requires eps in (0,1)");

    BoundSet bs;
    const double log_eps = std::log(eps);
    bs.m_plus = rho - log_eps / 3.0 * (1.0 + std::sqrt(1.0 - 18.0 * rho / log_eps)) - 1.0;

    if (eps < 0.04) {
        bs.A = 2.0 * rho * chernoff_h((bs.m_plus + 1.0) / rho);
        const double inner = -std::log(eps * std::sqrt(2.0 * M_PI)) -
                             1.5 * std::log(bs.A) + std::log(bs.A - 1.0);
        if (bs.A > 1.0 && inner >= 0.0) {
            bs.m_minus = rho + std::sqrt(2.0 * rho) * std::sqrt(inner);
            bs.m_minus_ok = true;
        }
    }
    if (bs.m_minus_ok && -std::expm1(-rho) > eps) {
        bs.B = -0.5 * std::log(4.0 * M_PI * rho * chernoff_h(bs.m_minus / rho));
        const double gap = bs.B - log_eps;
        if (gap > 0.0) {
            bs.m_plus_plus = rho + gap / 3.0 * (1.0 + std::sqrt(1.0 + 18.0 * rho / gap));
            bs.m_plus_plus_ok = true;
        }
    }
    return bs;
}

std::int64_t m_eps(double rho, double eps, std::optional<std::int64_t> lower_hint) {
    if (rho < 0.0) throw std::domain_error("m_eps requires rho >= 0");
    if (eps <= 0.0 || eps >= 1.0) throw std::domain_error("m_eps requires eps in (0,1)");
    if (rho == 0.0 || -std::expm1(-rho) <= eps) return 0;

    const BoundSet bs = bound_set(rho, eps);
    std::int64_t lo = 0;
    if (bs.m_minus_ok)
        lo = std::max<std::int64_t>(lo, static_cast<std::int64_t>(std::floor(bs.m_minus)));
    if (lower_hint) lo = std::max(lo, std::max<std::int64_t>(*lower_hint, 0));
    double hi_real = std::ceil(bs.m_plus);
    if (bs.m_plus_plus_ok) hi_real = std::min(hi_real, std::ceil(bs.m_plus_plus));
    std::int64_t hi = std::max<std::int64_t>(lo, static_cast<std::int64_t>(hi_real));

    // Bounds should always bracket the quantile; widen/shrink anyway in case
    // a caller passed an overlarge hint or rounding nudged a bound.
    while (poisson_tail(hi, rho) > eps) {
        lo = hi + 1;
        hi = 2 * hi + 16;
    }
    while (lo > 0 && poisson_tail(lo - 1, rho) <= eps)
        lo = lo / 2;

    // smallest m in [lo, hi] with tail <= eps; predicate is monotone in m
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (poisson_tail(mid, rho) <= eps)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

TruncationWindow two_tailed_window(double rho_t, double eps,
                                   std::optional<std::int64_t> lower_hint) {
    TruncationWindow w;
    w.eps = eps;
    w.rho_t = rho_t;
    // Upper index at the full eps budget; the skipped lower tail is strictly
    // smaller than the upper one, so the combined loss stays below 2*eps.
    w.m_hi = m_eps(rho_t, eps, lower_hint);
    const std::int64_t centre2 =
        2 * static_cast<std::int64_t>(std::floor(rho_t - 0.5));
    w.m_lo = std::max<std::int64_t>(0, centre2 - w.m_hi);
    return w;
}

}  // namespace uniexp
