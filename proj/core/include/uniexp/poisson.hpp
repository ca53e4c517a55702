#pragma once

#include <cstdint>
#include <optional>

namespace uniexp {

// h(x) = 1 - x + x log x for x >= 1; h(1)=0, strictly increasing.
double chernoff_h(double x);

// Closed-form brackets for the Poisson tail quantile.
struct BoundSet {
    double m_plus = 0.0;        // always valid
    double m_minus = 0.0;       // valid iff m_minus_ok
    double m_plus_plus = 0.0;   // valid iff m_plus_plus_ok
    double A = 0.0;
    double B = 0.0;
    bool m_minus_ok = false;
    bool m_plus_plus_ok = false;
};
BoundSet bound_set(double rho, double eps);

// Prob{Poisson(rho) > m} = P(m+1, rho), the regularized lower
// incomplete gamma function.
double poisson_tail(std::int64_t m, double rho);

// Smallest m with poisson_tail(m, rho) <= eps.  lower_hint seeds the
// search bracket for ascending-time sweeps.
std::int64_t m_eps(double rho, double eps,
                   std::optional<std::int64_t> lower_hint = std::nullopt);

struct TruncationWindow {
    std::int64_t m_lo = 0;
    std::int64_t m_hi = 0;
    double eps = 0.0;
    double rho_t = 0.0;
};

// m_hi = m_eps(rho_t), m_lo = max(0, 2*floor(rho_t - 0.5) - m_hi).
// The skipped lower tail is strictly smaller than the upper one, so the
// combined discarded mass stays below 2*eps.
TruncationWindow two_tailed_window(double rho_t, double eps,
                                   std::optional<std::int64_t> lower_hint = std::nullopt);

// Regularized lower incomplete gamma P(a, x); series for x < a+1,
// continued fraction otherwise.
double gamma_p(double a, double x);

}  // namespace uniexp
