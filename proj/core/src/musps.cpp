#include "uniexp/musps.hpp"

#include <cmath>
#include <stdexcept>

namespace uniexp {

TimeGrid TimeGrid::linspace(double t_max, int n) {
    if (n < 1 || t_max <= 0.0)
        throw std::invalid_argument("linspace requires n >= 1 and t_max > 0");
    TimeGrid g;
    g.times.reserve(n);
    for (int i = 1; i <= n; ++i)
        g.times.push_back(t_max * static_cast<double>(i) / n);
    return g;
}

void TimeGrid::check() const {
    if (times.empty()) throw std::invalid_argument("time grid is empty");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev)) throw std::invalid_argument("times not ascending");
        prev = t;
    }
}

std::vector<SpsResult> musps_expmv(const std::vector<double>& nu,
                                   const RateMatrix& Q, const TimeGrid& grid,
                                   double eps) {
    MuspsOptions opts;
    opts.eps = eps;
    return musps_expmv(nu, Q, grid, opts);
}

std::vector<SpsResult> musps_expmv(const std::vector<double>& nu,
                                   const RateMatrix& Q, const TimeGrid& grid,
                                   const MuspsOptions& opts) {
    grid.check();
    if (opts.eps <= 0.0 || opts.eps >= 1.0)
        throw std::invalid_argument("musps_expmv requires eps in (0,1)");
    if (static_cast<int>(nu.size()) != Q.dim())
        throw std::invalid_argument("musps_expmv: dimension mismatch");
    for (double x : nu)
        if (x < 0.0 || std::isnan(x))
            throw std::invalid_argument("musps_expmv requires nonnegative nu");
    {
        const ValidationReport report = Q.validate(ValidationMode::substochastic);
        if (!report.ok())
            throw std::invalid_argument("musps_expmv: invalid rate matrix: " +
                                        report.violations.front().message);
    }

    const int n = static_cast<int>(grid.times.size());
    const std::size_t d = nu.size();
    const double rho = Q.rho();
    const double input_sum = vector_sum(nu);

    std::vector<SpsResult> out(n);
    for (SpsResult& r : out) {
        r.renormalized = true;
        r.input_sum = input_sum;
    }
    if (input_sum == 0.0) {
        for (SpsResult& r : out) {
            r.dist.assign(d, 0.0);
            r.degenerate_input = true;
        }
        return out;
    }
    if (rho == 0.0) {
        for (SpsResult& r : out) r.dist = nu;
        return out;
    }

    // per-time windows; ascending grid warms each quantile search
    std::vector<std::int64_t> m_hi(n), m_lo(n);
    std::optional<std::int64_t> hint;
    for (int i = 0; i < n; ++i) {
        const TruncationWindow w = two_tailed_window(rho * grid.times[i], opts.eps, hint);
        m_hi[i] = w.m_hi;
        m_lo[i] = w.m_lo;
        hint = w.m_hi;
        out[i].m_used = w.m_hi;
        out[i].m_lo_used = w.m_lo;
        out[i].n_sparse = w.m_hi;
    }
    const std::int64_t m_max = m_hi[n - 1];

    const ShiftedKernel kernel = shift(Q, 1.0);  // P = Q + rho*I, unscaled by t

    const double b_start = input_sum;
    double b = b_start;
    std::vector<double> v_pro = nu;
    if (b > opts.big) {
        for (double& x : v_pro) x /= b;
        b = 1.0;
    }
    std::vector<std::vector<double>> v_sum(n);
    std::vector<double> g(n, 1.0);

    int i = 0;
    while (i < n && m_lo[i] == 0) {
        v_sum[i] = v_pro;  // includes the j = 0 term
        ++i;
    }
    for (int k = i; k < n; ++k) v_sum[k].assign(d, 0.0);
    int i_hi = i - 1;  // may be -1: no time active yet
    int i_lo = 0;

    std::vector<double> scratch(d);
    for (std::int64_t j = 1; j <= m_max; ++j) {
        while (i_hi + 1 < n && m_lo[i_hi + 1] <= j) ++i_hi;
        while (i_lo < n && m_hi[i_lo] < j) ++i_lo;

        left_multiply(std::span<const double>(v_pro), kernel.P,
                      std::span<double>(scratch));
        v_pro.swap(scratch);
        b *= rho;
        if (i_hi >= 0) {
            const double scale = grid.times[i_hi] / static_cast<double>(j);
            for (double& x : v_pro) x *= scale;
            b *= scale;
        }

        // The b < small test matters on widely spaced grids: while no time is
        // active the running product keeps shrinking and v_pro would underflow
        // to zero before the next window opens.
        if (b > opts.big || b < opts.small ||
            (i_lo <= i_hi && g[i_lo] < opts.small)) {
            for (int k = i_lo; k <= i_hi; ++k) {
                const double inv = 1.0 / (b * g[k]);
                for (double& x : v_sum[k]) x *= inv;
                g[k] = 1.0;
            }
            const double inv_b = 1.0 / b;
            for (double& x : v_pro) x *= inv_b;
            b = 1.0;
            for (int k = i_lo; k <= i_hi; ++k) ++out[k].renorm_events;
        }

        for (int k = i_lo; k <= i_hi; ++k) {
            const double gk = (g[k] *= grid.times[k] / grid.times[i_hi]);
            const std::vector<double>& src = v_pro;
            std::vector<double>& dst = v_sum[k];
            for (std::size_t s = 0; s < d; ++s) dst[s] += gk * src[s];
        }
    }

    for (int k = 0; k < n; ++k) {
        const double total = l1_norm(v_sum[k]);
        const double scale = b_start / total;
        out[k].dist = std::move(v_sum[k]);
        for (double& x : out[k].dist) x *= scale;
    }
    return out;
}

std::vector<SpsResult> sequential_sps(const std::vector<double>& nu,
                                      const RateMatrix& Q, const TimeGrid& grid,
                                      const SpsOptions& opts) {
    grid.check();
    std::vector<SpsResult> out;
    out.reserve(grid.times.size());
    std::vector<double> current = nu;
    double prev_t = 0.0;
    for (double t : grid.times) {
        out.push_back(sps_expmv(current, Q, t - prev_t, opts));
        current = out.back().dist;
        prev_t = t;
    }
    return out;
}

}  // namespace uniexp
