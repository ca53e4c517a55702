#pragma once

#include <cstdint>
#include <vector>

#include "uniexp/poisson.hpp"
#include "uniexp/rate_matrix.hpp"

namespace uniexp {

struct SpsOptions {
    bool renormalize = false;  // variant "r"
    bool two_tailed = false;   // variant "2"
    double eps = 1e-16;
    double big = 1e100;        // overflow guard threshold; test hook
};

struct SpsResult {
    std::vector<double> dist;
    std::int64_t m_used = 0;
    std::int64_t m_lo_used = 0;
    std::int64_t n_sparse = 0;      // vector-matrix multiplications
    std::int64_t renorm_events = 0; // guard firings
    bool renormalized = false;
    bool degenerate_input = false;  // nu was the zero vector
    double input_sum = 0.0;

    // non-renormalized runs keep the raw accumulator and the log offset
    // c - rho so tiny entries stay representable on the log scale
    std::vector<double> raw_sum;
    double log_offset = 0.0;
};

// nu^T exp(Q t) with missing mass at most eps.
SpsResult sps_expmv(const std::vector<double>& nu, const RateMatrix& Q,
                    double t, const SpsOptions& opts = {});

struct LogEntry {
    double value = 0.0;    // -inf when the entry is zero
    bool is_zero = false;
};
// log of entry i, computed as log(raw_sum[i]) + c - rho for
// non-renormalized runs so underflowing probabilities stay usable.
LogEntry log_sum(const SpsResult& result, int entry);

}  // namespace uniexp
