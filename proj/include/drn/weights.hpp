#ifndef DRN_WEIGHTS_HPP
#define DRN_WEIGHTS_HPP

#include <span>
#include <string>
#include <vector>

#include "drn/config.hpp"
#include "drn/tanner.hpp"

namespace drn {

/// Per-iteration scaling weights of the unfolded sum-product decoder:
/// w_in[t][v] on the channel LLR and w_edge[t][e] on each consumed
/// check-to-variable message of the variable update, plus one final output
/// layer (w_out[v], w_out_edge[e]). All weights start at 1, which reduces
/// the decoder to plain sum-product.
struct NbpWeights {
    unsigned iterations = 0;
    std::size_t n_vars = 0;
    std::size_t n_edges = 0;
    std::vector<std::vector<Real>> w_in;    // [T][n]
    std::vector<std::vector<Real>> w_edge;  // [T][E]
    std::vector<Real> w_out;                // [n]
    std::vector<Real> w_out_edge;           // [E]

    static NbpWeights ones(const TannerGraph& graph, unsigned iterations);
    std::size_t parameter_count() const { return iterations * (n_vars + n_edges) + n_vars + n_edges; }

    // Flat layout: per t {w_in, w_edge}, then w_out, w_out_edge.
    std::vector<Real> flatten() const;
    void unflatten(std::span<const Real> flat);
};

/// One weight per check node per decoding block, shared across all edges of
/// that check within the block.
struct DrnWeights {
    unsigned iterations = 0;
    std::size_t n_checks = 0;
    std::vector<std::vector<Real>> w;  // [T][checks]

    static DrnWeights ones(std::size_t n_checks, unsigned iterations);
    std::size_t parameter_count() const { return iterations * n_checks; }

    std::vector<Real> flatten() const;
    void unflatten(std::span<const Real> flat);
};

/// Checkpoint files are JSON with a required format tag:
/// {"format": "drn-weights-v1", "variant", "code", "iterations", "shape", "values"}.
void save_nbp_weights(const NbpWeights& w, const std::string& code_name, const std::string& path);
void save_drn_weights(const DrnWeights& w, const std::string& code_name, const std::string& path);

struct LoadedWeights {
    std::string variant;  // "nbp" or "drn"
    std::string code;
    NbpWeights nbp;
    DrnWeights drn;
};
LoadedWeights load_weights(const std::string& path);

}  // namespace drn

#endif
