#ifndef DRN_DECODER_HPP
#define DRN_DECODER_HPP

#include <optional>
#include <span>
#include <vector>

#include "drn/config.hpp"
#include "drn/tanner.hpp"

namespace drn {

/// Per-edge messages are clipped to [-kMessageClip, kMessageClip]. Soft
/// values s are sums of the clipped messages with the channel LLR and are
/// left unclipped so the residual-form and message-form recursions stay
/// algebraically identical when clipping engages (|s| <= |l| + deg * clip).
inline constexpr Real kMessageClip = Real(20);
/// arctanh argument guard; inactive for messages within the clip bound since
/// tanh(kMessageClip / 2) < 1 - 1e-12 already.
inline constexpr Real kAtanhEps = Real(1e-12);

inline Real clip_message(Real x) {
    if (x > kMessageClip) return kMessageClip;
    if (x < -kMessageClip) return -kMessageClip;
    return x;
}

/// bit = 1 iff s < 0; a tie (exactly zero) decides 0.
BitVec hard_decision(std::span<const Real> s);

/// True iff every check's parity over the given bits is even.
bool syndrome_ok(const TannerGraph& graph, const BitVec& bits);

/// 2*artanh(prod tanh(x/2)) over the given extrinsic inputs, artanh argument
/// clipped to +-(1 - kAtanhEps). Empty input acts as a fully confident zero
/// parity (product 1).
Real check_sum_product(std::span<const Real> inputs);

/// w * (prod sign) * min |x|; sign(0) := +1. Empty input yields w * clip bound.
Real check_min_sum(std::span<const Real> inputs, Real w);

struct DecodeResult {
    BitVec hard_bits;
    std::vector<std::vector<Real>> soft_trajectory;  // T+1 entries, [0] = s at init
    std::optional<unsigned> converged_at;            // first t >= 1 with zero syndrome
};

/// Full per-iteration state of a message-form decode, for diagnostics.
struct DecoderState {
    std::vector<std::vector<Real>> v2c;  // per iteration t = 1..T, per edge
    std::vector<std::vector<Real>> c2v;
    std::vector<std::vector<Real>> s;  // t = 0..T
};

/// Flooding sum-product over the Tanner graph. Messages are clipped; the
/// variable update reuses the running soft value: u_{v->c} = s_v - u_{c->v}.
DecodeResult decode_sum_product(std::span<const Real> llr, const TannerGraph& graph, unsigned iterations,
                                DecoderState* state = nullptr);

/// Same schedule with the min-sum check update at unit weight.
DecodeResult decode_min_sum(std::span<const Real> llr, const TannerGraph& graph, unsigned iterations,
                            DecoderState* state = nullptr);

namespace detail {

/// Extrinsic sum-product messages for one check: out[i] excludes inputs[i].
/// Uses prefix/suffix products of tanh(x/2).
void check_sum_product_extrinsic(std::span<const Real> inputs, std::span<Real> out);

/// Extrinsic min-sum. Records the two smallest magnitudes and their
/// positions plus the total sign product when bookkeeping pointers are given
/// (the reverse pass reroutes gradients through them). act_out, when given,
/// receives the unweighted extrinsic value sign * min per edge, so that
/// out[i] = clip(w * act_out[i]). argmin1 = kNoArgmin marks a degree-1 check
/// whose extrinsic min is the constant clip bound.
inline constexpr std::uint32_t kNoArgmin = 0xffffffffu;
struct MinSumBook {
    std::uint32_t argmin1 = 0;
    std::uint32_t argmin2 = 0;
    Real min1 = 0;
    Real min2 = 0;
    int sign_all = 1;
};
void check_min_sum_extrinsic(std::span<const Real> inputs, Real w, std::span<Real> out, MinSumBook* book = nullptr,
                             Real* act_out = nullptr);

inline int sgn(Real x) { return x < Real(0) ? -1 : 1; }

}  // namespace detail

}  // namespace drn

#endif
