#include "uniexp/graphs.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace uniexp {

std::vector<std::int64_t> WeightedGraph::weighted_degrees() const {
    std::vector<std::int64_t> deg(n_nodes, 0);
    for (const Edge& e : edges) {
        deg[e.u] += e.weight;
        deg[e.v] += e.weight;
    }
    return deg;
}

WeightedGraph barabasi_albert(int n, int m, std::uint64_t seed) {
    if (n < 2 || m < 1)
        throw std::invalid_argument("barabasi_albert requires n >= 2 and m >= 1");

    std::mt19937_64 rng(seed);
    // urn holds one entry per unit of degree
    std::vector<int> urn;
    urn.reserve(static_cast<std::size_t>(2) * m * n);
    for (int k = 0; k < 2 * m; ++k) {
        urn.push_back(0);
        urn.push_back(1);
    }
    std::map<std::pair<int, int>, int> weights;
    weights[{0, 1}] = 2 * m;

    for (int node = 2; node < n; ++node) {
        const std::size_t frozen = urn.size();  // excludes this node's own stubs
        std::vector<int> targets;
        targets.reserve(m);
        for (int e = 0; e < m; ++e) {
            // targets drawn from existing nodes only; their degree updates
            // between draws via the appended urn entries
            std::uniform_int_distribution<std::size_t> pick(0, frozen + e - 1);
            const int target = urn[pick(rng)];
            targets.push_back(target);
            urn.push_back(target);
        }
        for (int t : targets) {
            auto key = std::minmax(node, t);
            ++weights[{key.first, key.second}];
        }
        for (int e = 0; e < m; ++e) urn.push_back(node);
    }

    WeightedGraph g;
    g.n_nodes = n;
    g.seed = seed;
    g.last_added_node = n - 1;
    for (const auto& [key, w] : weights) g.edges.push_back({key.first, key.second, w});

    const auto deg = g.weighted_degrees();
    std::int64_t best = -1;
    for (int i = 0; i < n; ++i)
        if (deg[i] > best) {
            best = deg[i];
            g.highest_degree_node = i;
        }
    return g;
}

WeightedGraph join_graphs(const WeightedGraph& ga, const WeightedGraph& gb,
                          JoinMode mode, int m) {
    WeightedGraph g;
    g.n_nodes = ga.n_nodes + gb.n_nodes;
    g.edges = ga.edges;
    for (const WeightedGraph::Edge& e : gb.edges)
        g.edges.push_back({e.u + ga.n_nodes, e.v + ga.n_nodes, e.weight});

    const int end_a = (mode == JoinMode::hh || mode == JoinMode::hl)
                          ? ga.highest_degree_node
                          : ga.last_added_node;
    const int end_b_local = (mode == JoinMode::hh || mode == JoinMode::lh)
                                ? gb.highest_degree_node
                                : gb.last_added_node;
    const int end_b = end_b_local + ga.n_nodes;
    auto key = std::minmax(end_a, end_b);
    g.edges.push_back({key.first, key.second, m});

    const auto deg = g.weighted_degrees();
    std::int64_t best = -1;
    for (int i = 0; i < g.n_nodes; ++i)
        if (deg[i] > best) {
            best = deg[i];
            g.highest_degree_node = i;
        }
    g.last_added_node = gb.last_added_node + ga.n_nodes;
    return g;
}

RateMatrix graph_laplacian(const WeightedGraph& g) {
    std::vector<Triplet> entries;
    std::vector<double> diag(g.n_nodes, 0.0);
    for (const WeightedGraph::Edge& e : g.edges) {
        if (e.u == e.v) throw std::invalid_argument("graph has a self-loop");
        const double w = static_cast<double>(e.weight);
        entries.push_back({e.u, e.v, w});
        entries.push_back({e.v, e.u, w});
        diag[e.u] -= w;
        diag[e.v] -= w;
    }
    for (int i = 0; i < g.n_nodes; ++i)
        if (diag[i] != 0.0) entries.push_back({i, i, diag[i]});
    return RateMatrix(g.n_nodes, entries);
}

std::vector<double> diffusion_discrepancy(const std::vector<double>& nu,
                                          const WeightedGraph& g1,
                                          const WeightedGraph& g2,
                                          const TimeGrid& grid, double eps) {
    if (g1.n_nodes != g2.n_nodes)
        throw std::invalid_argument("diffusion_discrepancy: node count mismatch");
    const RateMatrix q1 = graph_laplacian(g1);
    const RateMatrix q2 = graph_laplacian(g2);
    const auto r1 = musps_expmv(nu, q1, grid, eps);
    const auto r2 = musps_expmv(nu, q2, grid, eps);
    std::vector<double> out(grid.times.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < nu.size(); ++i)
            sum += std::abs(r1[k].dist[i] - r2[k].dist[i]);
        out[k] = sum;
    }
    return out;
}

void store_graph(const WeightedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open graph file for writing: " + path);
    out << "# seed " << g.seed << "\n";
    out << "# nodes " << g.n_nodes << "\n";
    for (const WeightedGraph::Edge& e : g.edges)
        out << e.u << " " << e.v << " " << e.weight << "\n";
    if (!out) throw std::runtime_error("write failure: " + path);
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    WeightedGraph g;
    std::string line;
    int max_node = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            ss >> key;
            if (key == "seed") ss >> g.seed;
            if (key == "nodes") ss >> g.n_nodes;
            continue;
        }
        std::istringstream ss(line);
        WeightedGraph::Edge e;
        if (!(ss >> e.u >> e.v >> e.weight))
            throw std::runtime_error("malformed edge line: " + line);
        g.edges.push_back(e);
        max_node = std::max({max_node, e.u, e.v});
    }
    if (g.n_nodes == 0) g.n_nodes = max_node + 1;
    return g;
}

}  // namespace uniexp
