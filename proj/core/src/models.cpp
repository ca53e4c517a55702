#include "uniexp/models.hpp"

#include <cmath>
#include <stdexcept>

namespace uniexp {

namespace {

std::int64_t pack_state(const std::array<int, 3>& s) {
    return (static_cast<std::int64_t>(s[0]) << 42) |
           (static_cast<std::int64_t>(s[1]) << 21) | static_cast<std::int64_t>(s[2]);
}

void add_reaction(std::vector<Triplet>& entries, std::vector<double>& diag,
                  int from, int to, double rate) {
    if (rate <= 0.0) return;
    entries.push_back({from, to, rate});
    diag[from] -= rate;
}

RateMatrix assemble(int d, std::vector<Triplet> entries, const std::vector<double>& diag) {
    for (int i = 0; i < d; ++i)
        if (diag[i] != 0.0) entries.push_back({i, i, diag[i]});
    return RateMatrix(d, std::move(entries));
}

}  // namespace

StateSpaceMap::StateSpaceMap(Kind kind, std::vector<std::array<int, 3>> states,
                             std::optional<int> coffin)
    : kind_(kind), states_(std::move(states)), coffin_(coffin) {
    lookup_.reserve(states_.size());
    for (int i = 0; i < static_cast<int>(states_.size()); ++i) {
        if (coffin_ && i == *coffin_) continue;
        lookup_.emplace(pack_state(states_[i]), i);
    }
}

int StateSpaceMap::index_of(const std::array<int, 3>& state) const {
    auto it = lookup_.find(pack_state(state));
    return it == lookup_.end() ? -1 : it->second;
}

Model build_imm_death(int n, double mu, double gamma) {
    if (n < 1) throw std::invalid_argument("build_imm_death requires n >= 1");
    if (mu < 0.0 || gamma < 0.0)
        throw std::invalid_argument("build_imm_death requires nonnegative rates");
    const int d = n + 1;
    std::vector<Triplet> entries;
    std::vector<double> diag(d, 0.0);
    std::vector<std::array<int, 3>> states(d);
    for (int x = 0; x <= n; ++x) {
        states[x] = {x, 0, 0};
        if (x > 0) add_reaction(entries, diag, x, x - 1, mu * x);
        if (x < n) add_reaction(entries, diag, x, x + 1, gamma * (n - x));
    }
    return {assemble(d, std::move(entries), diag),
            StateSpaceMap(StateSpaceMap::Kind::imm_death, std::move(states))};
}

std::vector<double> imm_death_exact(int n, double mu, double gamma, double t) {
    const long double rate = static_cast<long double>(gamma) + mu;
    long double p;
    if (rate == 0.0L)
        p = 1.0L;
    else
        p = (gamma + mu * std::exp(-rate * static_cast<long double>(t))) / rate;
    // Binomial(n, p) pmf in log space
    std::vector<double> out(n + 1);
    const long double lp = std::log(p);
    const long double lq = std::log1p(-p);
    const long double lgn = std::lgamma(static_cast<long double>(n) + 1.0L);
    for (int i = 0; i <= n; ++i) {
        if (p == 1.0L) {
            out[i] = (i == n) ? 1.0 : 0.0;
            continue;
        }
        if (p == 0.0L) {
            out[i] = (i == 0) ? 1.0 : 0.0;
            continue;
        }
        const long double logpmf = lgn - std::lgamma(static_cast<long double>(i) + 1.0L) -
                                   std::lgamma(static_cast<long double>(n - i) + 1.0L) +
                                   i * lp + (n - i) * lq;
        out[i] = static_cast<double>(std::exp(logpmf));
    }
    return out;
}

Model build_moran(int n_pop, double alpha, double beta, double u, double v) {
    if (n_pop < 1) throw std::invalid_argument("build_moran requires n_pop >= 1");
    if (alpha < 0.0 || beta < 0.0 || u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
        throw std::invalid_argument("build_moran: invalid parameters");
    const int d = n_pop + 1;
    std::vector<Triplet> entries;
    std::vector<double> diag(d, 0.0);
    std::vector<std::array<int, 3>> states(d);
    for (int x = 0; x <= n_pop; ++x) {
        states[x] = {x, 0, 0};
        const double f = static_cast<double>(x) / n_pop;
        const double up = (1.0 - f) * (alpha * f * (1.0 - u) + beta * (1.0 - f) * v);
        const double down = f * (beta * (1.0 - f) * (1.0 - v) + alpha * f * u);
        if (x < n_pop) add_reaction(entries, diag, x, x + 1, up);
        if (x > 0) add_reaction(entries, diag, x, x - 1, down);
    }
    return {assemble(d, std::move(entries), diag),
            StateSpaceMap(StateSpaceMap::Kind::moran, std::move(states))};
}

Model build_sir(int n_pop, double beta, double gamma) {
    if (n_pop < 1) throw std::invalid_argument("build_sir requires n_pop >= 1");
    if (beta < 0.0 || gamma < 0.0)
        throw std::invalid_argument("build_sir requires nonnegative rates");
    std::vector<std::array<int, 3>> states;
    states.reserve(static_cast<std::size_t>(n_pop + 1) * (n_pop + 2) / 2);
    for (int s = n_pop; s >= 0; --s)
        for (int i = 0; i + s <= n_pop; ++i) states.push_back({s, i, 0});
    StateSpaceMap map(StateSpaceMap::Kind::sir, std::move(states));

    const int d = map.size();
    std::vector<Triplet> entries;
    std::vector<double> diag(d, 0.0);
    for (int idx = 0; idx < d; ++idx) {
        const auto& st = map.state_of(idx);
        const int s = st[0], i = st[1];
        if (s > 0 && i > 0)
            add_reaction(entries, diag, idx, map.index_of({s - 1, i + 1, 0}),
                         beta * s * i);
        if (i > 0)
            add_reaction(entries, diag, idx, map.index_of({s, i - 1, 0}), gamma * i);
    }
    return {assemble(d, std::move(entries), diag), std::move(map)};
}

Model build_seirs(int n_pop, double beta, double delta, double gamma, double eta,
                  bool waning_rate_uses_infected) {
    if (n_pop < 1) throw std::invalid_argument("build_seirs requires n_pop >= 1");
    if (beta < 0.0 || delta < 0.0 || gamma < 0.0 || eta < 0.0)
        throw std::invalid_argument("build_seirs requires nonnegative rates");
    std::vector<std::array<int, 3>> states;
    for (int s = n_pop; s >= 0; --s)
        for (int e = 0; e + s <= n_pop; ++e)
            for (int i = 0; i + e + s <= n_pop; ++i) states.push_back({s, e, i});
    StateSpaceMap map(StateSpaceMap::Kind::seirs, std::move(states));

    const int d = map.size();
    std::vector<Triplet> entries;
    std::vector<double> diag(d, 0.0);
    for (int idx = 0; idx < d; ++idx) {
        const auto& st = map.state_of(idx);
        const int s = st[0], e = st[1], i = st[2];
        const int r = n_pop - s - e - i;
        if (s > 0 && i > 0)
            add_reaction(entries, diag, idx, map.index_of({s - 1, e + 1, i}),
                         beta * s * i);
        if (e > 0)
            add_reaction(entries, diag, idx, map.index_of({s, e - 1, i + 1}),
                         delta * e);
        if (i > 0)
            add_reaction(entries, diag, idx, map.index_of({s, e, i - 1}), gamma * i);
        if (r > 0) {
            const double waning = eta * (waning_rate_uses_infected ? i : r);
            add_reaction(entries, diag, idx, map.index_of({s + 1, e, i}), waning);
        }
    }
    return {assemble(d, std::move(entries), diag), std::move(map)};
}

Model build_sir_birth(int S0, int I0, int S1, int I1, double beta, double gamma,
                      bool prune) {
    if (S1 > S0 || S1 + I1 > S0 + I0)
        throw std::invalid_argument("build_sir_birth: inconsistent observation pair");
    const int nI = S0 - S1;              // infection births
    const int nR = S0 + I0 - (S1 + I1);  // recovery births

    std::vector<std::array<int, 3>> states;
    for (int bi = 0; bi <= nI; ++bi)
        for (int br = 0; br <= nR; ++br) {
            if (prune && br > I0 + bi) continue;  // would imply I(t) < 0
            states.push_back({bi, br, 0});
        }
    const int coffin = static_cast<int>(states.size());
    states.push_back({-1, -1, 0});
    StateSpaceMap map(StateSpaceMap::Kind::sir_birth, std::move(states), coffin);

    const int d = map.size();
    std::vector<Triplet> entries;
    std::vector<double> diag(d, 0.0);
    for (int idx = 0; idx < d; ++idx) {
        if (idx == coffin) continue;  // coffin row is all zero
        const auto& st = map.state_of(idx);
        const int bi = st[0], br = st[1];
        const int s = S0 - bi;
        const int i = I0 + bi - br;
        if (i <= 0) continue;  // unreachable corner of the box, or epidemic over
        double coffin_rate = 0.0;  // both reactions may route here; merge
        const double inf_rate = beta * s * i;
        if (inf_rate > 0.0) {
            int to = (bi + 1 <= nI) ? map.index_of({bi + 1, br, 0}) : coffin;
            if (to < 0) to = coffin;
            if (to == coffin)
                coffin_rate += inf_rate;
            else
                add_reaction(entries, diag, idx, to, inf_rate);
        }
        const double rec_rate = gamma * i;
        if (rec_rate > 0.0) {
            int to = (br + 1 <= nR) ? map.index_of({bi, br + 1, 0}) : coffin;
            if (to < 0) to = coffin;
            if (to == coffin)
                coffin_rate += rec_rate;
            else
                add_reaction(entries, diag, idx, to, rec_rate);
        }
        if (coffin_rate > 0.0) add_reaction(entries, diag, idx, coffin, coffin_rate);
    }
    return {assemble(d, std::move(entries), diag), std::move(map)};
}

const EyamData& eyam_data() {
    static const EyamData data{
        {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0},
        {254, 235, 201, 153, 121, 110, 97, 83},
        {7, 14, 22, 29, 20, 8, 8, 0},
    };
    return data;
}

EyamReport eyam_loglik(double eps, const SpsOptions& opts, bool jump_only) {
    const EyamData& data = eyam_data();
    EyamReport report;
    SpsOptions run_opts = opts;
    run_opts.eps = eps;

    std::vector<std::pair<int, int>> pairs;
    if (jump_only) {
        pairs.emplace_back(0, static_cast<int>(data.times.size()) - 1);
    } else {
        for (int k = 0; k + 1 < static_cast<int>(data.times.size()); ++k)
            pairs.emplace_back(k, k + 1);
    }

    for (auto [a, b] : pairs) {
        const int S0 = data.S[a], I0 = data.I[a];
        const int S1 = data.S[b], I1 = data.I[b];
        const double dt = data.times[b] - data.times[a];
        Model model = build_sir_birth(S0, I0, S1, I1, kEyamBeta, kEyamGamma);

        std::vector<double> nu(model.map.size(), 0.0);
        nu[model.map.index_of({0, 0, 0})] = 1.0;
        const SpsResult res = sps_expmv(nu, model.Q, dt, run_opts);

        const int target = model.map.index_of({S0 - S1, S0 + I0 - S1 - I1, 0});
        const LogEntry le = log_sum(res, target);

        EyamTransition tr;
        tr.t0 = data.times[a];
        tr.t1 = data.times[b];
        tr.d = model.map.size();
        tr.rho_t = dt * model.Q.rho();
        tr.m_lo = res.m_lo_used;
        tr.m_hi = res.m_used;
        tr.log_prob = le.value;
        report.transitions.push_back(tr);
        report.loglik += le.value;
    }
    return report;
}

SeirsSummary seirs_summary(const std::vector<double>& dist, const StateSpaceMap& map) {
    SeirsSummary out;
    double extinct = 0.0, load = 0.0, alive = 0.0;
    for (int idx = 0; idx < map.size(); ++idx) {
        const auto& st = map.state_of(idx);
        const int ei = st[1] + st[2];
        if (ei == 0) {
            extinct += dist[idx];
        } else {
            alive += dist[idx];
            load += ei * dist[idx];
        }
    }
    out.extinction_prob = extinct;
    if (alive > 0.0) {
        out.conditional_load = load / alive;
    } else {
        out.conditional_load = 0.0;
        out.load_defined = false;
    }
    return out;
}

std::vector<SeirsSummary> seirs_summaries(const std::vector<SpsResult>& results,
                                          const StateSpaceMap& map) {
    std::vector<SeirsSummary> out;
    out.reserve(results.size());
    for (const SpsResult& r : results) out.push_back(seirs_summary(r.dist, map));
    return out;
}

std::vector<std::array<double, 3>> seirs_ode(int n_pop,
                                             const std::array<double, 4>& params,
                                             const std::array<double, 3>& init,
                                             const TimeGrid& grid, double max_step) {
    grid.check();
    const auto rhs = [&](const std::array<double, 3>& y) {
        const double S = y[0], E = y[1], I = y[2];
        const double R = n_pop - S - E - I;
        return std::array<double, 3>{-params[0] * S * I + params[3] * R,
                                     params[0] * S * I - params[1] * E,
                                     params[1] * E - params[2] * I};
    };
    const auto rk4_step = [&](std::array<double, 3>& y, double h) {
        const auto k1 = rhs(y);
        std::array<double, 3> tmp;
        for (int c = 0; c < 3; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
        const auto k2 = rhs(tmp);
        for (int c = 0; c < 3; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
        const auto k3 = rhs(tmp);
        for (int c = 0; c < 3; ++c) tmp[c] = y[c] + h * k3[c];
        const auto k4 = rhs(tmp);
        for (int c = 0; c < 3; ++c)
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    };

    std::vector<std::array<double, 3>> out;
    out.reserve(grid.times.size());
    std::array<double, 3> y = init;
    double t = 0.0;
    for (double target : grid.times) {
        const double span = target - t;
        const int steps = std::max(1, static_cast<int>(std::ceil(span / max_step)));
        const double h = span / steps;
        for (int s = 0; s < steps; ++s) rk4_step(y, h);
        t = target;
        out.push_back(y);
    }
    return out;
}

}  // namespace uniexp
