#ifndef DRN_NBP_HPP
#define DRN_NBP_HPP

#include "drn/decoder.hpp"
#include "drn/weights.hpp"

namespace drn {

/// Forward intermediates of one unfolded sum-product pass, enough to replay
/// the decode bit-exactly in the reverse pass.
struct NbpTape {
    struct Iter {
        std::vector<Real> v2c;              // post-clip variable-to-check messages
        std::vector<std::uint8_t> v2c_clipped;
        std::vector<Real> tanh_half;        // tanh(v2c / 2)
        std::vector<Real> ext_prod;         // extrinsic tanh product, post arctanh-guard
        std::vector<std::uint8_t> prod_clipped;
        std::vector<Real> c2v;              // post-clip check-to-variable messages
        std::vector<std::uint8_t> c2v_clipped;
    };
    std::vector<Iter> iters;
    std::vector<Real> llr;
    // Smallest |clip_bound - |pre-clip value|| seen anywhere; finite-difference
    // checks reject samples whose forward grazes a clip boundary.
    Real min_clip_margin = 0;
};

/// Weighted unfolded sum-product (flooding schedule). The soft output layer
/// is evaluated every iteration so the trajectory and convergence check are
/// defined per block; the loss consumes only the final entry. With all
/// weights at 1 this reduces to decode_sum_product.
DecodeResult decode_nbp(std::span<const Real> llr, const TannerGraph& graph, const NbpWeights& weights,
                        unsigned iterations, NbpTape* tape = nullptr);

/// DRN block state recorded for the reverse pass.
struct DrnTape {
    struct Block {
        std::vector<Real> a;                // post-clip residual inputs s - u
        std::vector<std::uint8_t> a_clipped;
        std::vector<Real> act;              // unweighted extrinsic sign * min per edge
        std::vector<Real> m;                // post-clip weighted messages
        std::vector<std::uint8_t> m_clipped;
        std::vector<detail::MinSumBook> books;  // per check
    };
    std::vector<Block> blocks;
    Real min_clip_margin = 0;
    Real min_tie_gap = 0;  // smallest |min2 - min1| across all checks/blocks
};

/// Doubly residual decoder: per block, residual inputs a = s - u feed a
/// weighted min-sum check activation m = h(w, a); the block output is the
/// residual b = a + m and the soft value telescopes as
/// s += sum_c (m - u_prev). With all weights at 1 this matches
/// decode_min_sum on the full soft trajectory.
DecodeResult decode_drn(std::span<const Real> llr, const TannerGraph& graph, const DrnWeights& weights,
                        unsigned iterations, DrnTape* tape = nullptr);

}  // namespace drn

#endif
