#include "drn/nbp.hpp"

#include <cmath>
#include <limits>

namespace drn {

namespace {

inline Real clip_tracked(Real x, std::uint8_t& clipped, Real& margin) {
    const Real mag = std::fabs(x);
    const Real gap = std::fabs(kMessageClip - mag);
    if (gap < margin) margin = gap;
    if (mag > kMessageClip) {
        clipped = 1;
        return x > Real(0) ? kMessageClip : -kMessageClip;
    }
    clipped = 0;
    return x;
}

}  // namespace

DecodeResult decode_nbp(std::span<const Real> llr, const TannerGraph& graph, const NbpWeights& weights,
                        unsigned iterations, NbpTape* tape) {
    if (llr.size() != graph.n_vars) throw ShapeMismatch("decode_nbp: llr length != n_vars");
    if (weights.iterations != iterations || weights.n_vars != graph.n_vars ||
        weights.n_edges != graph.edge_count())
        throw ShapeMismatch("decode_nbp: weights not shaped for (graph, iterations)");

    const std::size_t E = graph.edge_count();
    const std::uint32_t n = graph.n_vars;

    std::vector<Real> u_c2v(E, Real(0));
    std::vector<Real> v2c(E), tanh_half(E), ext_prod(E), s(n);
    std::vector<std::uint8_t> scratch_mask(E);
    Real margin = std::numeric_limits<Real>::infinity();

    if (tape) {
        tape->iters.clear();
        tape->iters.resize(iterations);
        tape->llr.assign(llr.begin(), llr.end());
    }

    auto output_layer = [&](std::vector<Real>& out) {
        for (std::uint32_t v = 0; v < n; ++v) {
            Real acc = weights.w_out[v] * llr[v];
            for (std::uint32_t idx = graph.var_offsets[v]; idx < graph.var_offsets[v + 1]; ++idx) {
                const std::uint32_t e = graph.var_edges[idx];
                acc += weights.w_out_edge[e] * u_c2v[e];
            }
            out[v] = acc;
        }
    };

    DecodeResult result;
    result.soft_trajectory.reserve(iterations + 1);
    output_layer(s);  // u = 0: s0 = w_out .* llr
    result.soft_trajectory.emplace_back(s);

    for (unsigned t = 1; t <= iterations; ++t) {
        const auto& w_in = weights.w_in[t - 1];
        const auto& w_edge = weights.w_edge[t - 1];
        NbpTape::Iter* rec = tape ? &tape->iters[t - 1] : nullptr;
        if (rec) {
            rec->v2c_clipped.resize(E);
            rec->prod_clipped.resize(E);
            rec->c2v_clipped.resize(E);
        }

        // Variable layer: weighted extrinsic sums, accumulated in edge order.
        for (std::size_t e = 0; e < E; ++e) {
            const std::uint32_t v = graph.edges[e].var;
            Real acc = w_in[v] * llr[v];
            for (std::uint32_t idx = graph.var_offsets[v]; idx < graph.var_offsets[v + 1]; ++idx) {
                const std::uint32_t in_edge = graph.var_edges[idx];
                if (in_edge == e) continue;
                acc += w_edge[in_edge] * u_c2v[in_edge];
            }
            std::uint8_t clipped = 0;
            v2c[e] = clip_tracked(acc, clipped, margin);
            if (rec) rec->v2c_clipped[e] = clipped;
        }

        // Check layer: 2 artanh(prod tanh(./2)), extrinsic per edge.
        for (std::size_t e = 0; e < E; ++e) tanh_half[e] = std::tanh(v2c[e] / Real(2));
        for (std::uint32_t c = 0; c < graph.n_checks; ++c) {
            const std::uint32_t begin = graph.check_offsets[c];
            const std::uint32_t count = graph.check_offsets[c + 1] - begin;
            if (count == 0) continue;
            static thread_local std::vector<Real> prefix, suffix;
            prefix.resize(count + 1);
            suffix.resize(count + 1);
            prefix[0] = Real(1);
            for (std::uint32_t i = 0; i < count; ++i) prefix[i + 1] = prefix[i] * tanh_half[begin + i];
            suffix[count] = Real(1);
            for (std::uint32_t i = count; i-- > 0;) suffix[i] = suffix[i + 1] * tanh_half[begin + i];
            for (std::uint32_t i = 0; i < count; ++i) {
                Real prod = prefix[i] * suffix[i + 1];
                std::uint8_t pclipped = 0;
                if (prod > Real(1) - kAtanhEps) {
                    prod = Real(1) - kAtanhEps;
                    pclipped = 1;
                } else if (prod < Real(-1) + kAtanhEps) {
                    prod = Real(-1) + kAtanhEps;
                    pclipped = 1;
                }
                ext_prod[begin + i] = prod;
                std::uint8_t clipped = 0;
                u_c2v[begin + i] = clip_tracked(Real(2) * std::atanh(prod), clipped, margin);
                if (rec) {
                    rec->prod_clipped[begin + i] = pclipped;
                    rec->c2v_clipped[begin + i] = clipped;
                }
            }
        }

        output_layer(s);
        result.soft_trajectory.emplace_back(s);
        if (!result.converged_at && syndrome_ok(graph, hard_decision(s))) result.converged_at = t;

        if (rec) {
            rec->v2c = v2c;
            rec->tanh_half = tanh_half;
            rec->ext_prod = ext_prod;
            rec->c2v = u_c2v;
        }
    }

    if (tape) tape->min_clip_margin = margin;
    result.hard_bits = hard_decision(s);
    return result;
}

DecodeResult decode_drn(std::span<const Real> llr, const TannerGraph& graph, const DrnWeights& weights,
                        unsigned iterations, DrnTape* tape) {
    if (llr.size() != graph.n_vars) throw ShapeMismatch("decode_drn: llr length != n_vars");
    if (weights.iterations != iterations || weights.n_checks != graph.n_checks)
        throw ShapeMismatch("decode_drn: weights not shaped (iterations, n_checks)");

    const std::size_t E = graph.edge_count();
    const std::uint32_t n = graph.n_vars;

    std::vector<Real> s(llr.begin(), llr.end());
    std::vector<Real> u(E, Real(0));  // previous block's messages m^{t-1}
    std::vector<Real> a(E), m(E), act(E);
    Real margin = std::numeric_limits<Real>::infinity();
    Real tie_gap = std::numeric_limits<Real>::infinity();

    if (tape) {
        tape->blocks.clear();
        tape->blocks.resize(iterations);
    }

    DecodeResult result;
    result.soft_trajectory.reserve(iterations + 1);
    result.soft_trajectory.emplace_back(s);

    for (unsigned t = 1; t <= iterations; ++t) {
        DrnTape::Block* rec = tape ? &tape->blocks[t - 1] : nullptr;
        if (rec) {
            rec->a_clipped.resize(E);
            rec->m_clipped.resize(E);
            rec->books.resize(graph.n_checks);
        }

        // Residual input per edge.
        for (std::size_t e = 0; e < E; ++e) {
            std::uint8_t clipped = 0;
            a[e] = clip_tracked(s[graph.edges[e].var] - u[e], clipped, margin);
            if (rec) rec->a_clipped[e] = clipped;
        }

        // Learned check activation: weighted extrinsic min-sum per check.
        const auto& w_block = weights.w[t - 1];
        for (std::uint32_t c = 0; c < graph.n_checks; ++c) {
            const std::uint32_t begin = graph.check_offsets[c];
            const std::uint32_t count = graph.check_offsets[c + 1] - begin;
            if (count == 0) continue;
            detail::MinSumBook book;
            detail::check_min_sum_extrinsic({&a[begin], count}, w_block[c], {&m[begin], count},
                                            rec ? &rec->books[c] : &book, &act[begin]);
            const detail::MinSumBook& b = rec ? rec->books[c] : book;
            if (b.argmin1 != detail::kNoArgmin) {
                const Real gap = b.min2 - b.min1;
                if (gap < tie_gap) tie_gap = gap;
            }
        }
        if (rec) {
            for (std::size_t e = 0; e < E; ++e) {
                const Real pre = weights.w[t - 1][graph.edges[e].check] * act[e];
                rec->m_clipped[e] = std::fabs(pre) > kMessageClip ? 1 : 0;
                const Real gap = std::fabs(kMessageClip - std::fabs(pre));
                if (gap < margin) margin = gap;
            }
        }

        // Soft update telescopes so that s stays l + sum_c m without storing l.
        for (std::uint32_t v = 0; v < n; ++v) {
            Real delta = Real(0);
            for (std::uint32_t idx = graph.var_offsets[v]; idx < graph.var_offsets[v + 1]; ++idx) {
                const std::uint32_t e = graph.var_edges[idx];
                delta += m[e] - u[e];
            }
            s[v] += delta;
        }
        u = m;

        result.soft_trajectory.emplace_back(s);
        if (!result.converged_at && syndrome_ok(graph, hard_decision(s))) result.converged_at = t;
        if (rec) {
            rec->a = a;
            rec->act = act;
            rec->m = m;
        }
    }

    if (tape) {
        tape->min_clip_margin = margin;
        tape->min_tie_gap = tie_gap;
    }
    result.hard_bits = hard_decision(s);
    return result;
}

}  // namespace drn
