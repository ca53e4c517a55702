#include "uniexp/sps.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uniexp {

SpsResult sps_expmv(const std::vector<double>& nu, const RateMatrix& Q,
                    double t, const SpsOptions& opts) {
    if (t < 0.0) throw std::invalid_argument("sps_expmv requires t >= 0");
    if (opts.eps <= 0.0 || opts.eps >= 1.0)
        throw std::invalid_argument("sps_expmv requires eps in (0,1)");
    if (static_cast<int>(nu.size()) != Q.dim())
        throw std::invalid_argument("sps_expmv: dimension mismatch");
    for (double x : nu)
        if (x < 0.0 || std::isnan(x))
            throw std::invalid_argument("sps_expmv requires nonnegative nu");
    {
        const ValidationReport report = Q.validate(ValidationMode::substochastic);
        if (!report.ok())
            throw std::invalid_argument("sps_expmv: invalid rate matrix: " +
                                        report.violations.front().message);
    }

    SpsResult res;
    res.renormalized = opts.renormalize;
    res.input_sum = vector_sum(nu);
    if (res.input_sum == 0.0) {
        res.dist.assign(nu.size(), 0.0);
        res.raw_sum = res.dist;
        res.degenerate_input = true;
        return res;
    }

    const double rho = t * Q.rho();
    if (rho == 0.0) {
        res.dist = nu;
        if (!opts.renormalize) res.raw_sum = nu;
        return res;
    }

    std::int64_t m = 0, m_lo = 0;
    if (opts.two_tailed) {
        const TruncationWindow w = two_tailed_window(rho, opts.eps);
        m = w.m_hi;
        m_lo = w.m_lo;
    } else {
        m = m_eps(rho, opts.eps);
    }

    const ShiftedKernel kernel = shift(Q, t);  // P = Qt + rho*I

    double b = res.input_sum;
    double c = 0.0;
    std::vector<double> v_pro = nu;
    if (b > opts.big) {
        for (double& x : v_pro) x /= b;
        c += std::log(b);
        b = 1.0;
        ++res.renorm_events;
    }
    std::vector<double> v_sum;
    if (m_lo == 0)
        v_sum = v_pro;
    else
        v_sum.assign(nu.size(), 0.0);

    std::vector<double> scratch(nu.size());
    for (std::int64_t j = 1; j <= m; ++j) {
        const double f = static_cast<double>(j);
        left_multiply(std::span<const double>(v_pro), kernel.P,
                      std::span<double>(scratch));
        const double inv_f = 1.0 / f;
        for (std::size_t i = 0; i < v_pro.size(); ++i) v_pro[i] = scratch[i] * inv_f;
        b *= rho * inv_f;
        if (j >= m_lo)
            for (std::size_t i = 0; i < v_sum.size(); ++i) v_sum[i] += v_pro[i];
        if (b > opts.big) {
            const double inv_b = 1.0 / b;
            for (std::size_t i = 0; i < v_pro.size(); ++i) {
                v_pro[i] *= inv_b;
                v_sum[i] *= inv_b;
            }
            c += std::log(b);
            b = 1.0;
            ++res.renorm_events;
        }
    }

    res.m_used = m;
    res.m_lo_used = m_lo;
    res.n_sparse = m;
    if (opts.renormalize) {
        const double total = vector_sum(v_sum);
        const double scale = res.input_sum / total;
        res.dist = std::move(v_sum);
        for (double& x : res.dist) x *= scale;
    } else {
        res.log_offset = c - rho;
        const double scale = std::exp(res.log_offset);
        res.dist.resize(v_sum.size());
        for (std::size_t i = 0; i < v_sum.size(); ++i) res.dist[i] = v_sum[i] * scale;
        res.raw_sum = std::move(v_sum);
    }
    return res;
}

LogEntry log_sum(const SpsResult& result, int entry) {
    if (entry < 0 || entry >= static_cast<int>(result.dist.size()))
        throw std::out_of_range("log_sum: entry index out of range");
    LogEntry out;
    if (result.renormalized || result.raw_sum.empty()) {
        const double p = result.dist[entry];
        if (p == 0.0) {
            out.is_zero = true;
            out.value = -std::numeric_limits<double>::infinity();
        } else {
            out.value = std::log(p);
        }
        return out;
    }
    const double raw = result.raw_sum[entry];
    if (raw == 0.0) {
        out.is_zero = true;
        out.value = -std::numeric_limits<double>::infinity();
    } else {
        out.value = std::log(raw) + result.log_offset;
    }
    return out;
}

}  // namespace uniexp
