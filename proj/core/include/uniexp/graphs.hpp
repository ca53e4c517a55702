#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniexp/musps.hpp"
#include "uniexp/rate_matrix.hpp"

namespace uniexp {

// Undirected weighted graph; one stored edge per unordered pair, u < v,
// integer weight >= 1.
struct WeightedGraph {
    int n_nodes = 0;
    struct Edge {
        int u = 0, v = 0;
        int weight = 1;
    };
    std::vector<Edge> edges;

    std::uint64_t seed = 0;        // generator seed, recorded for output metadata
    int highest_degree_node = -1;  // ties broken by lowest index
    int last_added_node = -1;

    std::vector<std::int64_t> weighted_degrees() const;
};

// Preferential-attachment graph: starts from 2 nodes joined by 2m edges;
// each new node draws m edge endpoints proportional to current degree,
// degrees updating between draws; multi-edges merge into weights.
WeightedGraph barabasi_albert(int n, int m, std::uint64_t seed);

enum class JoinMode { hh, hl, lh, ll };

// Disjoint union of ga and gb plus one bridge edge of weight m between
// the selected endpoints (h = highest-degree node, l = last added).
WeightedGraph join_graphs(const WeightedGraph& ga, const WeightedGraph& gb,
                          JoinMode mode, int m);

// Negative graph Laplacian -(D - A) as a conservative generator.
RateMatrix graph_laplacian(const WeightedGraph& g);

// Per-time L1 distance between nu^T exp(-L1 t) and nu^T exp(-L2 t).
std::vector<double> diffusion_discrepancy(const std::vector<double>& nu,
                                          const WeightedGraph& g1,
                                          const WeightedGraph& g2,
                                          const TimeGrid& grid, double eps);

void store_graph(const WeightedGraph& g, const std::string& path);
WeightedGraph load_graph(const std::string& path);

}  // namespace uniexp
