#ifndef DRN_TANNER_HPP
#define DRN_TANNER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "drn/gf2.hpp"

namespace drn {

/// Bipartite check/variable graph of a parity-check matrix. One edge per
/// 1-entry of H; edge id = lexicographic rank of (check, var). Edge ids of
/// one check are therefore contiguous.
struct TannerGraph {
    struct Edge {
        std::uint32_t check;
        std::uint32_t var;
    };

    std::uint32_t n_vars = 0;
    std::uint32_t n_checks = 0;
    std::vector<Edge> edges;                   // sorted by (check, var)
    std::vector<std::uint32_t> check_offsets;  // size n_checks+1; M(c) = edge ids [off[c], off[c+1])
    std::vector<std::uint32_t> var_edges;      // var-adjacency edge ids, ascending per var
    std::vector<std::uint32_t> var_offsets;    // size n_vars+1

    std::size_t edge_count() const { return edges.size(); }
    std::uint32_t check_degree(std::uint32_t c) const { return check_offsets[c + 1] - check_offsets[c]; }
    std::uint32_t var_degree(std::uint32_t v) const { return var_offsets[v + 1] - var_offsets[v]; }
    std::span<const std::uint32_t> var_adjacency(std::uint32_t v) const {
        return {var_edges.data() + var_offsets[v], var_offsets[v + 1] - var_offsets[v]};
    }
};

struct TannerBuildResult {
    TannerGraph graph;
    std::vector<std::string> warnings;  // empty rows/columns (isolated nodes)
};

TannerBuildResult build_tanner(const Gf2Matrix& h);

/// ones / (rows * cols)
double density(const Gf2Matrix& h);

/// A loaded code: H, its graph, and a systematic encoder.
struct CodeSpec {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    Gf2Matrix h;
    TannerGraph graph;
    double rate = 0.0;
    GeneratorMatrix generator;
};

/// Builds a CodeSpec from H. If expected_k >= 0 it is cross-checked against
/// n - rank(H); a mismatch is a hard error.
CodeSpec make_code(std::string name, const Gf2Matrix& h, long expected_k = -1);

}  // namespace drn

#endif
