#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "uniexp/musps.hpp"
#include "uniexp/rate_matrix.hpp"
#include "uniexp/sps.hpp"

namespace uniexp {

// Bijection between model state tuples and matrix indices 0..d-1.
// Unused tuple slots are zero.
class StateSpaceMap {
public:
    enum class Kind { imm_death, moran, sir, seirs, sir_birth };

    StateSpaceMap(Kind kind, std::vector<std::array<int, 3>> states,
                  std::optional<int> coffin = std::nullopt);

    Kind kind() const { return kind_; }
    int size() const { return static_cast<int>(states_.size()); }
    std::optional<int> coffin() const { return coffin_; }
    const std::array<int, 3>& state_of(int index) const { return states_.at(index); }
    int index_of(const std::array<int, 3>& state) const;  // -1 when absent

private:
    Kind kind_;
    std::vector<std::array<int, 3>> states_;
    std::unordered_map<std::int64_t, int> lookup_;
    std::optional<int> coffin_;
};

struct Model {
    RateMatrix Q;
    StateSpaceMap map;
};

// X -> 0 at rate mu*X, 0 -> X at rate gamma*(n-X); states X = 0..n.
Model build_imm_death(int n, double mu, double gamma);

// Exact distribution of X(t) from X(0)=n: Binomial(n, p(t)) with
// p(t) = (gamma + mu e^{-(gamma+mu)t}) / (gamma + mu).
std::vector<double> imm_death_exact(int n, double mu, double gamma, double t);

// Moran allele-frequency chain on X = 0..n_pop.
Model build_moran(int n_pop, double alpha, double beta, double u, double v);

// SIR: states (S, I) with S + I <= n_pop, enumerated S descending then
// I ascending; infection beta*S*I, recovery gamma*I.
Model build_sir(int n_pop, double beta, double gamma);

// SEIRS: states (S, E, I) with S+E+I <= n_pop, R implicit.
// waning_rate_uses_infected reproduces the eta*I reading of the fourth
// reaction; the default is the conventional eta*R.
Model build_seirs(int n_pop, double beta, double delta, double gamma, double eta,
                  bool waning_rate_uses_infected = false);

// Birth-count statespace between two exact SIR observations, with a
// coffin state absorbing births that would contradict the second
// observation.  States are (n_I, n_R) cumulative birth counts; the coffin
// is the last index.
Model build_sir_birth(int S0, int I0, int S1, int I1, double beta, double gamma,
                      bool prune = false);

struct EyamTransition {
    double t0 = 0.0, t1 = 0.0;
    int d = 0;                 // statespace size including coffin
    double rho_t = 0.0;        // t * rho of the interval generator
    std::int64_t m_lo = 0, m_hi = 0;
    double log_prob = 0.0;
};

struct EyamReport {
    double loglik = 0.0;
    std::vector<EyamTransition> transitions;
};

struct EyamData {
    std::vector<double> times;
    std::vector<int> S;
    std::vector<int> I;
};
const EyamData& eyam_data();
constexpr double kEyamBeta = 0.0196;
constexpr double kEyamGamma = 3.204;

EyamReport eyam_loglik(double eps, const SpsOptions& opts, bool jump_only = false);

// Extinction probability and conditional infection load from a SEIRS
// distribution.
struct SeirsSummary {
    double extinction_prob = 0.0;
    double conditional_load = 0.0;
    bool load_defined = true;  // false when extinction_prob == 1
};
SeirsSummary seirs_summary(const std::vector<double>& dist, const StateSpaceMap& map);
std::vector<SeirsSummary> seirs_summaries(const std::vector<SpsResult>& results,
                                          const StateSpaceMap& map);

// Fixed-step classical Runge-Kutta for the deterministic SEIRS system;
// params = (beta, delta, gamma, eta), init = (S, E, I).
std::vector<std::array<double, 3>> seirs_ode(int n_pop,
                                             const std::array<double, 4>& params,
                                             const std::array<double, 3>& init,
                                             const TimeGrid& grid,
                                             double max_step = 0.01);

}  // namespace uniexp
