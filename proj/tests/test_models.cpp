#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "uniexp/models.hpp"
#include "uniexp/sps.hpp"

using namespace uniexp;

TEST_SUITE("models") {

TEST_CASE("statespace size formulas") {
    for (int n : {3, 10, 40, 100}) {
        CHECK(build_sir(n, 0.1, 0.2).map.size() == (n + 1) * (n + 2) / 2);
        CHECK(build_seirs(n, 0.1, 0.2, 0.3, 0.4).map.size() ==
              (n + 1) * (n + 2) * (n + 3) / 6);
        CHECK(build_imm_death(n, 0.1, 0.2).map.size() == n + 1);
        CHECK(build_moran(n, 1.0, 1.0, 0.1, 0.1).map.size() == n + 1);
    }
}

TEST_CASE("builders produce valid conservative generators") {
    CHECK(build_imm_death(20, 0.3, 0.1).Q.validate(ValidationMode::conservative).ok());
    CHECK(build_moran(20, 1.0, 2.0, 0.05, 0.02).Q.validate(ValidationMode::conservative).ok());
    CHECK(build_sir(15, 0.2, 0.5).Q.validate(ValidationMode::conservative).ok());
    CHECK(build_seirs(8, 0.2, 0.5, 0.4, 0.1).Q.validate(ValidationMode::conservative).ok());
    CHECK(build_sir_birth(254, 7, 235, 14, kEyamBeta, kEyamGamma)
              .Q.validate(ValidationMode::conservative)
              .ok());
}

TEST_CASE("state map round trips") {
    const auto model = build_sir(10, 0.2, 0.5);
    for (int i = 0; i < model.map.size(); ++i)
        CHECK(model.map.index_of(model.map.state_of(i)) == i);
    CHECK(model.map.index_of({99, 99, 0}) == -1);
}

TEST_CASE("immigration death closed form") {
    const int n = 100;
    const double mu = 0.05, gamma = 0.01;
    for (double t : {0.5, 5.0, 50.0}) {
        const auto exact = imm_death_exact(n, mu, gamma, t);
        CHECK(vector_sum(exact) == doctest::Approx(1.0).epsilon(1e-14));
        std::vector<double> nu(n + 1, 0.0);
        nu[n] = 1.0;
        SpsOptions o;
        o.renormalize = true;
        o.two_tailed = true;
        const auto r = sps_expmv(nu, build_imm_death(n, mu, gamma).Q, t, o);
        double l1 = 0.0;
        for (int i = 0; i <= n; ++i) l1 += std::abs(r.dist[i] - exact[i]);
        CHECK(l1 <= 1e-13);
    }
}

TEST_CASE("moran matches the dense oracle") {
    const auto model = build_moran(12, 1.5, 0.8, 0.02, 0.05);
    std::vector<double> nu(model.Q.dim(), 0.0);
    nu[6] = 1.0;
    const auto want = oracle::dense_expmv(nu, model.Q, 1.7);
    const auto got = sps_expmv(nu, model.Q, 1.7);
    for (int i = 0; i < model.Q.dim(); ++i)
        CHECK(got.dist[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("seirs waning flag changes only the fourth reaction") {
    const auto conventional = build_seirs(6, 0.2, 0.5, 0.4, 0.3, false);
    const auto printed = build_seirs(6, 0.2, 0.5, 0.4, 0.3, true);
    CHECK(conventional.map.size() == printed.map.size());
    // with eta = 0 the flag is irrelevant
    const auto a = build_seirs(6, 0.2, 0.5, 0.4, 0.0, false);
    const auto b = build_seirs(6, 0.2, 0.5, 0.4, 0.0, true);
    CHECK(a.Q.entries().size() == b.Q.entries().size());
}

TEST_CASE("sir birth statespace reproduces the plague table") {
    const EyamData& data = eyam_data();
    const int expect_d[] = {261, 946, 2059, 1387, 289, 197, 346};
    const double expect_rho[] = {101.5, 171.4, 217.1, 170.1, 83.1, 53.6, 106.3};
    for (int k = 0; k + 1 < static_cast<int>(data.times.size()); ++k) {
        const auto model = build_sir_birth(data.S[k], data.I[k], data.S[k + 1],
                                           data.I[k + 1], kEyamBeta, kEyamGamma);
        CHECK(model.map.size() == expect_d[k]);
        const double rho_t = (data.times[k + 1] - data.times[k]) * model.Q.rho();
        CHECK(std::abs(rho_t - expect_rho[k]) <= 0.05);
    }
    const auto jump = build_sir_birth(data.S.front(), data.I.front(), data.S.back(),
                                      data.I.back(), kEyamBeta, kEyamGamma);
    CHECK(jump.map.size() == 30789);
    CHECK(std::abs(4.0 * jump.Q.rho() - 3439.5) <= 0.05);
}

TEST_CASE("sir birth pruning only removes unreachable mass") {
    SpsOptions o;
    o.eps = 1e-14;
    const auto full = build_sir_birth(50, 5, 40, 8, 0.02, 1.0, false);
    const auto pruned = build_sir_birth(50, 5, 40, 8, 0.02, 1.0, true);
    CHECK(pruned.map.size() < full.map.size());
    std::vector<double> nu_f(full.map.size(), 0.0), nu_p(pruned.map.size(), 0.0);
    nu_f[full.map.index_of({0, 0, 0})] = 1.0;
    nu_p[pruned.map.index_of({0, 0, 0})] = 1.0;
    const auto rf = sps_expmv(nu_f, full.Q, 0.5, o);
    const auto rp = sps_expmv(nu_p, pruned.Q, 0.5, o);
    const int target_f = full.map.index_of({10, 7, 0});
    const int target_p = pruned.map.index_of({10, 7, 0});
    CHECK(rf.dist[target_f] == doctest::Approx(rp.dist[target_p]).epsilon(1e-10));
}

TEST_CASE("eyam likelihood stable across tolerances") {
    SpsOptions o;
    o.renormalize = true;
    o.two_tailed = true;
    const auto tight = eyam_loglik(1e-16, o);
    const auto loose = eyam_loglik(1e-9, o);
    CHECK(std::abs(tight.loglik - loose.loglik) <= 1e-7);
    REQUIRE(tight.transitions.size() == 7);
    const auto jump = eyam_loglik(1e-16, o, true);
    REQUIRE(jump.transitions.size() == 1);
    CHECK(jump.transitions[0].d == 30789);
}

TEST_CASE("seirs summaries") {
    const auto model = build_seirs(5, 0.2, 0.5, 0.4, 0.1);
    std::vector<double> dist(model.map.size(), 0.0);
    dist[model.map.index_of({5, 0, 0})] = 1.0;
    const auto all_out = seirs_summary(dist, model.map);
    CHECK(all_out.extinction_prob == doctest::Approx(1.0));
    CHECK_FALSE(all_out.load_defined);
    CHECK(all_out.conditional_load == 0.0);

    std::vector<double> nu(model.map.size(), 0.0);
    nu[model.map.index_of({4, 1, 0})] = 1.0;
    const auto r = sps_expmv(nu, model.Q, 1e-6);
    const auto s = seirs_summary(r.dist, model.map);
    CHECK(s.extinction_prob < 1e-5);  // initial state has E = 1
    CHECK(s.load_defined);
}

TEST_CASE("seirs ode conservation and fixed points") {
    const TimeGrid grid{{1.0, 2.0, 5.0}};
    // no infection pressure, nobody exposed/infected/recovered: constant
    const auto flat = seirs_ode(40, {0.0, 0.5, 0.4, 0.1}, {40.0, 0.0, 0.0}, grid);
    for (const auto& p : flat) {
        CHECK(p[0] == doctest::Approx(40.0));
        CHECK(p[1] == 0.0);
        CHECK(p[2] == 0.0);
    }
}

TEST_CASE("gillespie cross check on a small sir chain") {
    const int n_pop = 10;
    const double beta = 0.3, gamma = 1.0, t = 1.0;
    const auto model = build_sir(n_pop, beta, gamma);
    std::vector<double> nu(model.Q.dim(), 0.0);
    nu[model.map.index_of({n_pop - 1, 1, 0})] = 1.0;
    SpsOptions o;
    o.renormalize = true;
    o.two_tailed = true;
    const auto kernel = sps_expmv(nu, model.Q, t, o);

    const std::int64_t paths = 1000000;
    const auto emp = oracle::gillespie_sir(n_pop - 1, 1, beta, gamma, t, paths, 20260823);

    // aggregate bins whose expected count is below 5 into one pool
    double pool_expected = 0.0;
    std::int64_t pool_observed = 0;
    int checked = 0;
    for (int i = 0; i < model.Q.dim(); ++i) {
        const auto& st = model.map.state_of(i);
        const double expected = kernel.dist[i] * static_cast<double>(paths);
        auto it = emp.counts.find({st[0], st[1]});
        const std::int64_t observed = it == emp.counts.end() ? 0 : it->second;
        if (expected < 5.0) {
            pool_expected += expected;
            pool_observed += observed;
            continue;
        }
        const double p = kernel.dist[i];
        const double se = std::sqrt(p * (1.0 - p) * static_cast<double>(paths));
        CHECK(std::abs(static_cast<double>(observed) - expected) <= 3.0 * se);
        ++checked;
    }
    CHECK(checked > 5);
    if (pool_expected >= 5.0) {
        const double p = pool_expected / static_cast<double>(paths);
        const double se = std::sqrt(p * (1.0 - p) * static_cast<double>(paths));
        CHECK(std::abs(static_cast<double>(pool_observed) - pool_expected) <= 3.0 * se);
    }
}

}  // TEST_SUITE
