// Command-line surface for the uniexp library: matrix-exponential actions,
// truncation quantiles, model/graph emitters and the validation/benchmark
// harness.  Exit codes: 0 ok, 2 input/validation, 3 I/O, 4 internal.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uniexp/graphs.hpp"
#include "uniexp/matrix_io.hpp"
#include "uniexp/models.hpp"
#include "uniexp/musps.hpp"
#include "uniexp/poisson.hpp"
#include "uniexp/sps.hpp"

using json = nlohmann::json;
using namespace uniexp;

namespace {

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    std::ostringstream ss;
    ss << std::hex << h;
    return ss.str();
}

std::string variant_label(const SpsOptions& o) {
    std::string s = "sps";
    if (o.two_tailed) s += "2";
    if (o.renormalize) s += "r";
    return s;
}

void write_report(const std::string& path, const json& record) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw IoError("cannot open report file: " + path);
    out << record.dump() << "\n";
}

std::vector<double> must_load_vector(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw IoError("cannot open vector file: " + path);
    probe.close();
    return load_vector(path);
}

RateMatrix must_load_matrix(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw IoError("cannot open matrix file: " + path);
    probe.close();
    return load_matrix(path);
}

int worker_count() {
    if (const char* env = std::getenv("UNIEXP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Runs units 0..n-1 on the worker pool; results must be stored by index
// inside fn so aggregation is order-independent.
void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- expmv

struct ExpmvArgs {
    std::string matrix, nu, out, report;
    double t = 0.0, eps = 1e-16;
    bool renorm = false, two_tailed = false;
};

int run_expmv(const ExpmvArgs& a) {
    const RateMatrix Q = must_load_matrix(a.matrix);
    const std::vector<double> nu = must_load_vector(a.nu);
    SpsOptions opts;
    opts.renormalize = a.renorm;
    opts.two_tailed = a.two_tailed;
    opts.eps = a.eps;

    const double t0 = now_ms();
    const SpsResult res = sps_expmv(nu, Q, a.t, opts);
    const double wall = now_ms() - t0;

    store_vector(res.dist, a.out);

    json rec{{"command", "expmv"},
             {"matrix", a.matrix},
             {"matrix_digest", file_digest(a.matrix)},
             {"nu_digest", file_digest(a.nu)},
             {"t", a.t},
             {"eps", a.eps},
             {"variant", variant_label(opts)},
             {"m_lo", res.m_lo_used},
             {"m_hi", res.m_used},
             {"n_sparse", res.n_sparse},
             {"wall_ms", wall},
             {"out", a.out}};
    write_report(a.report.empty() ? a.out + ".report.jsonl" : a.report, rec);
    return 0;
}

// ---------------------------------------------------------------- musps

struct MuspsArgs {
    std::string matrix, nu, times, out_prefix, index, report;
    double eps = 1e-16;
};

int run_musps(const MuspsArgs& a) {
    const RateMatrix Q = must_load_matrix(a.matrix);
    const std::vector<double> nu = must_load_vector(a.nu);
    TimeGrid grid;
    grid.times = must_load_vector(a.times);
    try {
        grid.check();
    } catch (const std::invalid_argument& e) {
        throw UserError(e.what());
    }

    const double t0 = now_ms();
    const auto results = musps_expmv(nu, Q, grid, a.eps);
    const double wall = now_ms() - t0;

    std::ofstream index(a.index);
    if (!index) throw IoError("cannot open index file: " + a.index);
    index << "time,file,m_lo,m_hi,sum\n";
    for (std::size_t k = 0; k < results.size(); ++k) {
        const std::string file = a.out_prefix + "_" + std::to_string(k) + ".vec";
        store_vector(results[k].dist, file);
        index << format_full(grid.times[k]) << "," << file << ","
              << results[k].m_lo_used << "," << results[k].m_used << ","
              << format_full(vector_sum(results[k].dist)) << "\n";
    }

    json rec{{"command", "musps"},
             {"matrix_digest", file_digest(a.matrix)},
             {"nu_digest", file_digest(a.nu)},
             {"n_times", results.size()},
             {"eps", a.eps},
             {"variant", "musps2r"},
             {"m_lo", results.front().m_lo_used},
             {"m_hi", results.back().m_used},
             {"n_sparse", results.back().n_sparse},
             {"wall_ms", wall},
             {"index", a.index}};
    write_report(a.report.empty() ? a.index + ".report.jsonl" : a.report, rec);
    return 0;
}

// -------------------------------------------------------------- quantile

int run_quantile(double rho, double eps, bool two_tailed) {
    const BoundSet bs = (rho > 0.0) ? bound_set(rho, eps)
                                    : BoundSet{};
    if (two_tailed) {
        const TruncationWindow w = two_tailed_window(rho, eps);
        std::cout << "m_lo,m_hi,m_plus,m_minus,m_plus_plus,m_minus_ok,m_plus_plus_ok\n";
        std::cout << w.m_lo << "," << w.m_hi << "," << format_full(bs.m_plus) << ","
                  << format_full(bs.m_minus) << "," << format_full(bs.m_plus_plus)
                  << "," << (bs.m_minus_ok ? 1 : 0) << ","
                  << (bs.m_plus_plus_ok ? 1 : 0) << "\n";
    } else {
        const std::int64_t m = m_eps(rho, eps);
        std::cout << "m,m_plus,m_minus,m_plus_plus,m_minus_ok,m_plus_plus_ok\n";
        std::cout << m << "," << format_full(bs.m_plus) << ","
                  << format_full(bs.m_minus) << "," << format_full(bs.m_plus_plus)
                  << "," << (bs.m_minus_ok ? 1 : 0) << ","
                  << (bs.m_plus_plus_ok ? 1 : 0) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- model

struct ModelArgs {
    std::string kind;
    std::string out, map_out;
    int n = 0;
    double mu = 0.0, gamma = 0.0, beta = 0.0, delta = 0.0, eta = 0.0;
    double alpha = 0.0, moran_beta = 0.0, u = 0.0, v = 0.0;
    int s0 = 0, i0 = 0, s1 = 0, i1 = 0;
    bool prune = false;
    bool waning_uses_infected = false;
    int ba_m = 1;
    std::uint64_t seed = 1;
};

void store_map(const StateSpaceMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open map file: " + path);
    out << "index,s0,s1,s2,coffin\n";
    for (int i = 0; i < map.size(); ++i) {
        const auto& st = map.state_of(i);
        const bool coffin = map.coffin() && *map.coffin() == i;
        out << i + 1 << "," << st[0] << "," << st[1] << "," << st[2] << ","
            << (coffin ? 1 : 0) << "\n";
    }
}

int run_model(const ModelArgs& a) {
    if (a.kind == "ba") {
        const WeightedGraph g = barabasi_albert(a.n, a.ba_m, a.seed);
        store_graph(g, a.out);
        return 0;
    }
    Model model = [&]() -> Model {
        if (a.kind == "imm-death") return build_imm_death(a.n, a.mu, a.gamma);
        if (a.kind == "moran")
            return build_moran(a.n, a.alpha, a.moran_beta, a.u, a.v);
        if (a.kind == "sir") return build_sir(a.n, a.beta, a.gamma);
        if (a.kind == "seirs")
            return build_seirs(a.n, a.beta, a.delta, a.gamma, a.eta,
                               a.waning_uses_infected);
        if (a.kind == "sir-birth")
            return build_sir_birth(a.s0, a.i0, a.s1, a.i1, a.beta, a.gamma, a.prune);
        throw UserError("unknown model kind: " + a.kind);
    }();
    store_matrix(model.Q, a.out, {"kind " + a.kind});
    if (!a.map_out.empty()) store_map(model.map, a.map_out);
    return 0;
}

// --------------------------------------------------------------- validate

int run_validate(int n, double mu, double gamma, double t, double eps,
                 const std::string& variant) {
    SpsOptions opts;
    opts.eps = eps;
    opts.two_tailed = variant.find('2') != std::string::npos;
    opts.renormalize = variant.find('r') != std::string::npos;

    const Model model = build_imm_death(n, mu, gamma);
    std::vector<double> nu(model.map.size(), 0.0);
    nu[n] = 1.0;  // X(0) = n
    const SpsResult res = sps_expmv(nu, model.Q, t, opts);
    const std::vector<double> exact = imm_death_exact(n, mu, gamma, t);
    double err = 0.0;
    for (int i = 0; i <= n; ++i) err += std::abs(res.dist[i] - exact[i]);
    std::cout << "l1_error," << format_full(err) << "\n";
    return 0;
}

// ------------------------------------------------------------------ eyam

int run_eyam(double eps, const std::string& variant, bool jump_only) {
    SpsOptions opts;
    opts.eps = eps;
    opts.two_tailed = variant.find('2') != std::string::npos;
    opts.renormalize = variant.find('r') != std::string::npos;
    const EyamReport report = eyam_loglik(eps, opts, jump_only);
    std::cout << "t0,t1,d,rho_t,m_lo,m_hi,log_prob\n";
    for (const EyamTransition& tr : report.transitions)
        std::cout << tr.t0 << "," << tr.t1 << "," << tr.d << ","
                  << format_full(tr.rho_t) << "," << tr.m_lo << "," << tr.m_hi << ","
                  << format_full(tr.log_prob) << "\n";
    std::cout << "loglik," << format_full(report.loglik) << "\n";
    return 0;
}

// -------------------------------------------------------------- diffusion

int run_diffusion(int n, int m, std::uint64_t seed_a, std::uint64_t seed_b,
                  double t_max, int n_times, double eps, const std::string& out) {
    const WeightedGraph ga = barabasi_albert(n, m, seed_a);
    const WeightedGraph gb = barabasi_albert(n, m, seed_b);
    const WeightedGraph joined[4] = {
        join_graphs(ga, gb, JoinMode::hh, m), join_graphs(ga, gb, JoinMode::hl, m),
        join_graphs(ga, gb, JoinMode::lh, m), join_graphs(ga, gb, JoinMode::ll, m)};
    const TimeGrid grid = TimeGrid::linspace(t_max, n_times);

    std::vector<double> nu(joined[0].n_nodes, 0.0);
    nu[joined[0].highest_degree_node] = 1.0;

    std::vector<std::vector<SpsResult>> runs(4);
    parallel_for(4, [&](int g) {
        runs[g] = musps_expmv(nu, graph_laplacian(joined[g]), grid, eps);
    });

    std::ofstream csv(out);
    if (!csv) throw IoError("cannot open output file: " + out);
    csv << "time,d12,d13,d14,d23,d24,d34\n";
    const std::pair<int, int> pairs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (std::size_t k = 0; k < grid.times.size(); ++k) {
        csv << format_full(grid.times[k]);
        for (const auto& [x, y] : pairs) {
            double sum = 0.0;
            for (std::size_t i = 0; i < nu.size(); ++i)
                sum += std::abs(runs[x][k].dist[i] - runs[y][k].dist[i]);
            csv << "," << format_full(sum);
        }
        csv << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- bench

struct BenchArgs {
    std::string model = "imm-death";
    std::string mode = "single";  // single | multi
    std::string out;
    double eps = 1e-16;
    double t_max = 40.27;
    int n_times = 50;
    int repeats = 3;
};

Model build_bench_model(const std::string& name) {
    if (name == "imm-death") return build_imm_death(1000, 0.05, 0.01);
    if (name == "moran") return build_moran(1000, 210.0, 20.0, 0.002, 0.0);
    if (name == "sir") return build_sir(100, 0.01, 0.25);
    if (name == "seirs")
        return build_seirs(40, 1.5 / 40.0, 1.5, 0.375, 0.075);
    throw UserError("unknown bench model: " + name);
}

std::vector<double> bench_initial(const std::string& name, const Model& model) {
    std::vector<double> nu(model.map.size(), 0.0);
    if (name == "imm-death") nu[model.map.index_of({1000, 0, 0})] = 1.0;
    if (name == "moran") nu[model.map.index_of({50, 0, 0})] = 1.0;
    if (name == "sir") nu[model.map.index_of({99, 1, 0})] = 1.0;
    if (name == "seirs") nu[model.map.index_of({39, 1, 0})] = 1.0;
    return nu;
}

struct Timing {
    double median = 0.0, min = 0.0, max = 0.0;
};

Timing time_repeats(int repeats, const std::function<void()>& fn) {
    std::vector<double> times;
    times.reserve(repeats);
    for (int r = 0; r < repeats; ++r) {
        const double t0 = now_ms();
        fn();
        times.push_back(now_ms() - t0);
    }
    std::sort(times.begin(), times.end());
    Timing t;
    t.min = times.front();
    t.max = times.back();
    t.median = times[times.size() / 2];
    return t;
}

int run_bench(const BenchArgs& a) {
    const Model model = build_bench_model(a.model);
    const std::vector<double> nu = bench_initial(a.model, model);

    std::ofstream csv(a.out);
    if (!csv) throw IoError("cannot open output file: " + a.out);
    csv << "variant,model,rho_t,n_sparse,wall_ms,wall_ms_min,wall_ms_max,error\n";

    if (a.mode == "single") {
        // logarithmically spaced times, four option variants each; the error
        // column is the L1 discrepancy against SPS2r at eps 1e-16
        std::vector<double> times;
        for (int k = 0; k < a.n_times; ++k)
            times.push_back(a.t_max *
                            std::pow(10.0, -3.0 * (1.0 - static_cast<double>(k) /
                                                             (a.n_times - 1))));
        const SpsOptions variants[4] = {
            {false, false, a.eps}, {true, false, a.eps},
            {false, true, a.eps}, {true, true, a.eps}};

        struct Row {
            std::string text;
        };
        std::vector<Row> rows(times.size() * 4);
        parallel_for(static_cast<int>(times.size()), [&](int ti) {
            const double t = times[ti];
            SpsOptions ref_opts{true, true, 1e-16};
            const SpsResult ref = sps_expmv(nu, model.Q, t, ref_opts);
            for (int v = 0; v < 4; ++v) {
                SpsResult res = sps_expmv(nu, model.Q, t, variants[v]);
                const Timing timing = time_repeats(
                    a.repeats, [&] { res = sps_expmv(nu, model.Q, t, variants[v]); });
                double err = 0.0;
                for (std::size_t i = 0; i < nu.size(); ++i)
                    err += std::abs(res.dist[i] - ref.dist[i]);
                std::ostringstream line;
                line << variant_label(variants[v]) << "," << a.model << ","
                     << format_full(t * model.Q.rho()) << "," << res.n_sparse << ","
                     << format_full(timing.median) << "," << format_full(timing.min)
                     << "," << format_full(timing.max) << "," << format_full(err);
                rows[static_cast<std::size_t>(ti) * 4 + v].text = line.str();
            }
        });
        for (const Row& r : rows) csv << r.text << "\n";
    } else if (a.mode == "multi") {
        const TimeGrid grid = TimeGrid::linspace(a.t_max, a.n_times);
        std::vector<SpsResult> mres, sres;
        const Timing mt = time_repeats(
            a.repeats, [&] { mres = musps_expmv(nu, model.Q, grid, a.eps); });
        SpsOptions sopts{true, true, a.eps};
        const Timing st = time_repeats(
            a.repeats, [&] { sres = sequential_sps(nu, model.Q, grid, sopts); });
        double max_gap = 0.0;
        for (std::size_t k = 0; k < mres.size(); ++k) {
            double gap = 0.0;
            for (std::size_t i = 0; i < nu.size(); ++i)
                gap += std::abs(mres[k].dist[i] - sres[k].dist[i]);
            max_gap = std::max(max_gap, gap);
        }
        const double rho_t = model.Q.rho() * a.t_max;
        csv << "musps2r," << a.model << "," << format_full(rho_t) << ","
            << mres.back().n_sparse << "," << format_full(mt.median) << ","
            << format_full(mt.min) << "," << format_full(mt.max) << ","
            << format_full(max_gap) << "\n";
        std::int64_t seq_n_sparse = 0;
        for (const SpsResult& r : sres) seq_n_sparse += r.n_sparse;
        csv << "sequential-sps2r," << a.model << "," << format_full(rho_t) << ","
            << seq_n_sparse << "," << format_full(st.median) << ","
            << format_full(st.min) << "," << format_full(st.max) << ","
            << format_full(max_gap) << "\n";
        csv << "musps-over-sequential," << a.model << "," << format_full(rho_t)
            << ",0," << format_full(mt.median / st.median) << ",,,\n";
    } else {
        throw UserError("unknown bench mode: " + a.mode);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniexp: distributions of sparse continuous-time Markov chains "
                 "via the positive uniformization series"};
    app.require_subcommand(1);

    ExpmvArgs ex;
    CLI::App* expmv = app.add_subcommand("expmv", "nu^T exp(Qt) at one time");
    expmv->add_option("--matrix", ex.matrix)->required();
    expmv->add_option("--nu", ex.nu)->required();
    expmv->add_option("--t", ex.t)->required();
    expmv->add_option("--eps", ex.eps);
    expmv->add_flag("--renorm", ex.renorm);
    expmv->add_flag("--two-tailed", ex.two_tailed);
    expmv->add_option("--out", ex.out)->required();
    expmv->add_option("--report", ex.report);

    MuspsArgs mu;
    CLI::App* musps = app.add_subcommand("musps", "nu^T exp(Qt_i) on a time grid");
    musps->add_option("--matrix", mu.matrix)->required();
    musps->add_option("--nu", mu.nu)->required();
    musps->add_option("--times", mu.times)->required();
    musps->add_option("--eps", mu.eps);
    musps->add_option("--out-prefix", mu.out_prefix)->required();
    musps->add_option("--index", mu.index)->required();
    musps->add_option("--report", mu.report);

    double q_rho = 0.0, q_eps = 1e-16;
    bool q_two = false;
    CLI::App* quant = app.add_subcommand("quantile", "Poisson tail quantile and bounds");
    quant->add_option("--rho", q_rho)->required();
    quant->add_option("--eps", q_eps)->required();
    quant->add_flag("--two-tailed", q_two);

    ModelArgs mo;
    CLI::App* model = app.add_subcommand("model", "emit a model generator or graph");
    model->add_option("--kind", mo.kind)->required();
    model->add_option("--out", mo.out)->required();
    model->add_option("--map", mo.map_out);
    model->add_option("--n", mo.n);
    model->add_option("--mu", mo.mu);
    model->add_option("--gamma", mo.gamma);
    model->add_option("--beta", mo.beta);
    model->add_option("--delta", mo.delta);
    model->add_option("--eta", mo.eta);
    model->add_option("--alpha", mo.alpha);
    model->add_option("--moran-beta", mo.moran_beta);
    model->add_option("--u", mo.u);
    model->add_option("--v", mo.v);
    model->add_option("--s0", mo.s0);
    model->add_option("--i0", mo.i0);
    model->add_option("--s1", mo.s1);
    model->add_option("--i1", mo.i1);
    model->add_flag("--prune", mo.prune);
    model->add_flag("--waning-uses-infected", mo.waning_uses_infected);
    model->add_option("--m", mo.ba_m);
    model->add_option("--seed", mo.seed);

    int v_n = 1000;
    double v_mu = 0.05, v_gamma = 0.01, v_t = 20.0, v_eps = 1e-16;
    std::string v_variant = "sps2r";
    CLI::App* validate =
        app.add_subcommand("validate", "L1 error against the tractable model");
    validate->add_option("--n", v_n);
    validate->add_option("--mu", v_mu);
    validate->add_option("--gamma", v_gamma);
    validate->add_option("--t", v_t);
    validate->add_option("--eps", v_eps);
    validate->add_option("--variant", v_variant);

    double e_eps = 1e-16;
    std::string e_variant = "sps2r";
    bool e_jump = false;
    CLI::App* eyam = app.add_subcommand("eyam", "plague-data log-likelihood");
    eyam->add_option("--eps", e_eps);
    eyam->add_option("--variant", e_variant);
    eyam->add_flag("--jump-only", e_jump);

    int d_n = 1000, d_m = 6, d_times = 200;
    std::uint64_t d_seed_a = 1, d_seed_b = 2;
    double d_tmax = 600.0, d_eps = 1e-16;
    std::string d_out;
    CLI::App* diffusion =
        app.add_subcommand("diffusion", "graph diffusion discrepancy curves");
    diffusion->add_option("--n", d_n);
    diffusion->add_option("--m", d_m);
    diffusion->add_option("--seed-a", d_seed_a);
    diffusion->add_option("--seed-b", d_seed_b);
    diffusion->add_option("--t-max", d_tmax);
    diffusion->add_option("--n-times", d_times);
    diffusion->add_option("--eps", d_eps);
    diffusion->add_option("--out", d_out)->required();

    BenchArgs be;
    CLI::App* bench = app.add_subcommand("bench", "repeat-timed kernel comparisons");
    bench->add_option("--model", be.model);
    bench->add_option("--mode", be.mode);
    bench->add_option("--eps", be.eps);
    bench->add_option("--t-max", be.t_max);
    bench->add_option("--n-times", be.n_times);
    bench->add_option("--repeats", be.repeats);
    bench->add_option("--out", be.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*expmv) return run_expmv(ex);
        if (*musps) return run_musps(mu);
        if (*quant) return run_quantile(q_rho, q_eps, q_two);
        if (*model) return run_model(mo);
        if (*validate) return run_validate(v_n, v_mu, v_gamma, v_t, v_eps, v_variant);
        if (*eyam) return run_eyam(e_eps, e_variant, e_jump);
        if (*diffusion)
            return run_diffusion(d_n, d_m, d_seed_a, d_seed_b, d_tmax, d_times,
                                 d_eps, d_out);
        if (*bench) return run_bench(be);
    } catch (const IoError& e) {
        std::cerr << "{\"error\":\"io\",\"message\":" << json(e.what()).dump() << "}\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "{\"error\":\"parse\",\"message\":" << json(e.what()).dump()
                  << "}\n";
        return 2;
    } catch (const UserError& e) {
        std::cerr << "{\"error\":\"input\",\"message\":" << json(e.what()).dump()
                  << "}\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\":\"validation\",\"message\":" << json(e.what()).dump()
                  << "}\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "{\"error\":\"validation\",\"message\":" << json(e.what()).dump()
                  << "}\n";
        return 2;
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        const bool io = msg.find("cannot open") != std::string::npos ||
                        msg.find("write failure") != std::string::npos;
        std::cerr << "{\"error\":\"" << (io ? "io" : "internal")
                  << "\",\"message\":" << json(msg).dump() << "}\n";
        return io ? 3 : 4;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":" << json(e.what()).dump()
                  << "}\n";
        return 4;
    }
    return 4;
}
