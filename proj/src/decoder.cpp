#include "drn/decoder.hpp"

#include <cmath>
#include <limits>

namespace drn {

BitVec hard_decision(std::span<const Real> s) {
    BitVec bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) bits[i] = s[i] < Real(0) ? 1 : 0;
    return bits;
}

namespace detail {

void check_sum_product_extrinsic(std::span<const Real> inputs, std::span<Real> out) {
    const std::size_t d = inputs.size();
    if (d == 0) return;
    static thread_local std::vector<Real> tanh_buf, prefix, suffix;
    tanh_buf.resize(d);
    prefix.resize(d + 1);
    suffix.resize(d + 1);
    for (std::size_t i = 0; i < d; ++i) tanh_buf[i] = std::tanh(inputs[i] / Real(2));
    prefix[0] = Real(1);
    for (std::size_t i = 0; i < d; ++i) prefix[i + 1] = prefix[i] * tanh_buf[i];
    suffix[d] = Real(1);
    for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] * tanh_buf[i];
    for (std::size_t i = 0; i < d; ++i) {
        Real prod = prefix[i] * suffix[i + 1];
        if (prod > Real(1) - kAtanhEps) prod = Real(1) - kAtanhEps;
        if (prod < Real(-1) + kAtanhEps) prod = Real(-1) + kAtanhEps;
        out[i] = Real(2) * std::atanh(prod);
    }
}

void check_min_sum_extrinsic(std::span<const Real> inputs, Real w, std::span<Real> out, MinSumBook* book,
                             Real* act_out) {
    const std::size_t d = inputs.size();
    if (d == 0) return;
    // Two smallest magnitudes; ties keep the lowest index.
    Real min1 = std::numeric_limits<Real>::infinity();
    Real min2 = std::numeric_limits<Real>::infinity();
    std::size_t idx1 = 0, idx2 = 0;
    int sign_all = 1;
    for (std::size_t i = 0; i < d; ++i) {
        const Real mag = std::fabs(inputs[i]);
        sign_all *= sgn(inputs[i]);
        if (mag < min1) {
            min2 = min1;
            idx2 = idx1;
            min1 = mag;
            idx1 = i;
        } else if (mag < min2) {
            min2 = mag;
            idx2 = i;
        }
    }
    if (d == 1) {
        // Empty extrinsic set: fully confident parity at the clip bound.
        const Real act = kMessageClip;
        out[0] = clip_message(w * act);
        if (book) *book = {kNoArgmin, kNoArgmin, kMessageClip, kMessageClip, sign_all};
        if (act_out) act_out[0] = act;
        return;
    }
    for (std::size_t i = 0; i < d; ++i) {
        const Real mag = (i == idx1) ? min2 : min1;
        const int sign = sign_all * sgn(inputs[i]);  // divide out this edge's sign
        const Real act = static_cast<Real>(sign) * mag;
        out[i] = clip_message(w * act);
        if (act_out) act_out[i] = act;
    }
    if (book) *book = {static_cast<std::uint32_t>(idx1), static_cast<std::uint32_t>(idx2), min1, min2, sign_all};
}

}  // namespace detail

Real check_sum_product(std::span<const Real> inputs) {
    Real prod = Real(1);
    for (Real x : inputs) prod *= std::tanh(x / Real(2));
    if (prod > Real(1) - kAtanhEps) prod = Real(1) - kAtanhEps;
    if (prod < Real(-1) + kAtanhEps) prod = Real(-1) + kAtanhEps;
    return Real(2) * std::atanh(prod);
}

Real check_min_sum(std::span<const Real> inputs, Real w) {
    if (inputs.empty()) return w * kMessageClip;
    Real min_mag = std::numeric_limits<Real>::infinity();
    int sign = 1;
    for (Real x : inputs) {
        sign *= detail::sgn(x);
        min_mag = std::min(min_mag, std::fabs(x));
    }
    return w * static_cast<Real>(sign) * min_mag;
}

bool syndrome_ok(const TannerGraph& graph, const BitVec& bits) {
    for (std::uint32_t c = 0; c < graph.n_checks; ++c) {
        std::uint8_t parity = 0;
        for (std::uint32_t e = graph.check_offsets[c]; e < graph.check_offsets[c + 1]; ++e)
            parity ^= bits[graph.edges[e].var];
        if (parity) return false;
    }
    return true;
}

namespace {

enum class CheckKind { SumProduct, MinSum };

DecodeResult decode_message_form(std::span<const Real> llr, const TannerGraph& graph, unsigned iterations,
                                 CheckKind kind, DecoderState* state) {
    if (llr.size() != graph.n_vars) throw ShapeMismatch("decode: llr length != n_vars");
    const std::size_t E = graph.edge_count();

    std::vector<Real> s(llr.begin(), llr.end());
    std::vector<Real> u_c2v(E, Real(0));
    std::vector<Real> u_v2c(E);

    DecodeResult result;
    result.soft_trajectory.reserve(iterations + 1);
    result.soft_trajectory.emplace_back(s);
    if (state) {
        state->v2c.clear();
        state->c2v.clear();
        state->s.clear();
        state->s.push_back(s);
    }

    for (unsigned t = 1; t <= iterations; ++t) {
        // Variable update: u_{v->c} = l_v + sum_{c' != c} u_{c'->v} = s_v - u_{c->v}.
        for (std::size_t e = 0; e < E; ++e) u_v2c[e] = clip_message(s[graph.edges[e].var] - u_c2v[e]);

        // Check update over each check's contiguous edge range.
        for (std::uint32_t c = 0; c < graph.n_checks; ++c) {
            const std::uint32_t begin = graph.check_offsets[c];
            const std::uint32_t count = graph.check_offsets[c + 1] - begin;
            if (count == 0) continue;
            std::span<const Real> in(&u_v2c[begin], count);
            std::span<Real> out(&u_c2v[begin], count);
            if (kind == CheckKind::SumProduct) {
                detail::check_sum_product_extrinsic(in, out);
                for (std::uint32_t i = 0; i < count; ++i) out[i] = clip_message(out[i]);
            } else {
                detail::check_min_sum_extrinsic(in, Real(1), out);
            }
        }

        // Soft output: s_v = l_v + sum of incoming messages.
        for (std::uint32_t v = 0; v < graph.n_vars; ++v) {
            Real acc = llr[v];
            for (std::uint32_t idx = graph.var_offsets[v]; idx < graph.var_offsets[v + 1]; ++idx)
                acc += u_c2v[graph.var_edges[idx]];
            s[v] = acc;
        }

        result.soft_trajectory.emplace_back(s);
        if (state) {
            state->v2c.push_back(u_v2c);
            state->c2v.push_back(u_c2v);
            state->s.push_back(s);
        }
        if (!result.converged_at && syndrome_ok(graph, hard_decision(s))) result.converged_at = t;
    }

    result.hard_bits = hard_decision(s);
    return result;
}

}  // namespace

DecodeResult decode_sum_product(std::span<const Real> llr, const TannerGraph& graph, unsigned iterations,
                                DecoderState* state) {
    return decode_message_form(llr, graph, iterations, CheckKind::SumProduct, state);
}

DecodeResult decode_min_sum(std::span<const Real> llr, const TannerGraph& graph, unsigned iterations,
                            DecoderState* state) {
    return decode_message_form(llr, graph, iterations, CheckKind::MinSum, state);
}

}  // namespace drn
