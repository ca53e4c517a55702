#pragma once

#include <vector>

#include "uniexp/sps.hpp"

namespace uniexp {

struct TimeGrid {
    std::vector<double> times;  // strictly ascending, all > 0

    static TimeGrid linspace(double t_max, int n);  // n points on (0, t_max]
    void check() const;                             // throws when invalid
};

struct MuspsOptions {
    double eps = 1e-16;
    double big = 1e100;    // test hooks
    double small = 1e-100;
};

// Simultaneous nu^T exp(Q t_i) for every grid time from one series pass,
// two-tailed and renormalized (the 2r flavour).  Outputs are per-time
// probability vectors whose entries sum to sum(nu).
std::vector<SpsResult> musps_expmv(const std::vector<double>& nu,
                                   const RateMatrix& Q, const TimeGrid& grid,
                                   const MuspsOptions& opts = {});
std::vector<SpsResult> musps_expmv(const std::vector<double>& nu,
                                   const RateMatrix& Q, const TimeGrid& grid,
                                   double eps);

// Baseline: chain sps_expmv over the increments t_i - t_{i-1}.
std::vector<SpsResult> sequential_sps(const std::vector<double>& nu,
                                      const RateMatrix& Q, const TimeGrid& grid,
                                      const SpsOptions& opts = {});

}  // namespace uniexp
