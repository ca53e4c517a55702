#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "uniexp/graphs.hpp"

using namespace uniexp;

TEST_SUITE("graphs") {

TEST_CASE("preferential attachment structure") {
    const int n = 300, m = 4;
    const auto g = barabasi_albert(n, m, 7);
    CHECK(g.n_nodes == n);
    CHECK(g.last_added_node == n - 1);
    // seed node pair starts with 2m parallel edges; every later node adds m
    std::int64_t total_weight = 0;
    for (const auto& e : g.edges) {
        CHECK(e.u < e.v);
        CHECK(e.weight >= 1);
        total_weight += e.weight;
    }
    CHECK(total_weight == static_cast<std::int64_t>(m) * n);
    const auto deg = g.weighted_degrees();
    for (int i = 2; i < n; ++i) CHECK(deg[i] >= m);
    CHECK(deg[g.highest_degree_node] == *std::max_element(deg.begin(), deg.end()));

    // same seed, same graph; different seed, different graph
    const auto g2 = barabasi_albert(n, m, 7);
    CHECK(g2.edges.size() == g.edges.size());
    CHECK(std::equal(g.edges.begin(), g.edges.end(), g2.edges.begin(),
                     [](const auto& a, const auto& b) {
                         return a.u == b.u && a.v == b.v && a.weight == b.weight;
                     }));
    const auto g3 = barabasi_albert(n, m, 8);
    CHECK_FALSE(std::equal(g.edges.begin(), g.edges.end(), g3.edges.begin(),
                           [](const auto& a, const auto& b) {
                               return a.u == b.u && a.v == b.v && a.weight == b.weight;
                           }));
    CHECK_THROWS_AS(barabasi_albert(1, 2, 0), std::invalid_argument);
}

TEST_CASE("degree survival tail exponent in the scale free band") {
    const auto g = barabasi_albert(5000, 6, 42);
    auto deg = g.weighted_degrees();
    std::sort(deg.begin(), deg.end());
    // slope of log survival vs log degree over the upper tail; the density
    // exponent is the slope magnitude plus one
    std::vector<double> xs, ys;
    const int n = static_cast<int>(deg.size());
    for (int k : {30, 60, 120, 240, 480}) {
        xs.push_back(std::log(static_cast<double>(deg[n - 1 - k])));
        ys.push_back(std::log(static_cast<double>(k + 1) / n));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double exponent = -sxy / sxx + 1.0;
    CHECK(exponent >= 2.5);
    CHECK(exponent <= 3.5);
}

TEST_CASE("join modes pick the right endpoints") {
    const auto ga = barabasi_albert(60, 3, 1);
    const auto gb = barabasi_albert(60, 3, 2);
    const auto da = ga.weighted_degrees();
    const auto db = gb.weighted_degrees();
    struct Case {
        JoinMode mode;
        int a, b;
    };
    const Case cases[] = {
        {JoinMode::hh, ga.highest_degree_node, gb.highest_degree_node},
        {JoinMode::hl, ga.highest_degree_node, gb.last_added_node},
        {JoinMode::lh, ga.last_added_node, gb.highest_degree_node},
        {JoinMode::ll, ga.last_added_node, gb.last_added_node},
    };
    for (const auto& c : cases) {
        const auto j = join_graphs(ga, gb, c.mode, 3);
        CHECK(j.n_nodes == 120);
        CHECK(j.edges.size() == ga.edges.size() + gb.edges.size() + 1);
        const auto& bridge = j.edges.back();
        const int b_global = c.b + ga.n_nodes;
        CHECK(bridge.u == std::min(c.a, b_global));
        CHECK(bridge.v == std::max(c.a, b_global));
        CHECK(bridge.weight == 3);
        const auto dj = j.weighted_degrees();
        CHECK(dj[c.a] == da[c.a] + 3);
        CHECK(dj[c.b + ga.n_nodes] == db[c.b] + 3);
    }
}

TEST_CASE("laplacian generator") {
    WeightedGraph g;
    g.n_nodes = 2;
    g.edges = {{0, 1, 3}};
    const auto q = graph_laplacian(g);
    const auto dense = q.to_dense();
    CHECK(dense[0] == -3.0);
    CHECK(dense[1] == 3.0);
    CHECK(dense[2] == 3.0);
    CHECK(dense[3] == -3.0);
    CHECK(q.validate(ValidationMode::conservative).ok());

    const auto big = graph_laplacian(barabasi_albert(100, 3, 5));
    CHECK(big.validate(ValidationMode::conservative).ok());
    const auto d = big.to_dense();
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < i; ++j) CHECK(d[i * 100 + j] == d[j * 100 + i]);

    WeightedGraph loop;
    loop.n_nodes = 1;
    loop.edges = {{0, 0, 1}};
    CHECK_THROWS_AS(graph_laplacian(loop), std::invalid_argument);
}

TEST_CASE("identical graphs have zero discrepancy") {
    const auto g = barabasi_albert(80, 3, 11);
    std::vector<double> nu(g.n_nodes, 0.0);
    nu[g.highest_degree_node] = 1.0;
    const auto grid = TimeGrid::linspace(2.0, 12);
    const auto d = diffusion_discrepancy(nu, g, g, grid, 1e-16);
    for (double x : d) CHECK(x <= 2e-13);
}

TEST_CASE("symmetric diffusion washes out") {
    const auto g1 = barabasi_albert(80, 3, 21);
    const auto g2 = barabasi_albert(80, 3, 22);
    std::vector<double> nu(g1.n_nodes, 0.0);
    nu[g1.highest_degree_node] = 1.0;
    const TimeGrid grid{{0.1, 1.0, 10.0, 100.0, 400.0}};
    const auto d = diffusion_discrepancy(nu, g1, g2, grid, 1e-16);
    CHECK(d[1] > 1e-3);   // distinct graphs separate at moderate times
    CHECK(d.back() < 1e-6);  // but both relax to uniform
}

TEST_CASE("graph file round trip") {
    const auto g = barabasi_albert(40, 2, 99);
    const auto path = std::filesystem::temp_directory_path() / "uniexp_g.edges";
    store_graph(g, path.string());
    const auto back = load_graph(path.string());
    CHECK(back.n_nodes == g.n_nodes);
    CHECK(back.seed == g.seed);
    REQUIRE(back.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(back.edges[i].u == g.edges[i].u);
        CHECK(back.edges[i].v == g.edges[i].v);
        CHECK(back.edges[i].weight == g.edges[i].weight);
    }
    std::filesystem::remove(path);
}

}  // TEST_SUITE
