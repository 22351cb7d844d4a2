#include "drn/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "drn/channel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drn {

BceResult bce_loss(std::span<const Real> s_final, std::span<const std::uint8_t> target_bits) {
    if (s_final.size() != target_bits.size()) throw LengthMismatch("bce_loss: lengths differ");
    constexpr double kProbFloor = 1e-12;
    double loss = 0.0;
    std::vector<Real> grad(s_final.size());
    for (std::size_t v = 0; v < s_final.size(); ++v) {
        const double o = 1.0 / (1.0 + std::exp(static_cast<double>(s_final[v])));  // sigmoid(-s) = P(bit 1)
        const double oc = std::clamp(o, kProbFloor, 1.0 - kProbFloor);
        const double x = static_cast<double>(target_bits[v]);
        loss -= x * std::log(oc) + (1.0 - x) * std::log(1.0 - oc);
        grad[v] = static_cast<Real>(x - o);
    }
    return {loss, std::move(grad)};
}

std::vector<Real> backward_drn(const DrnTape& tape, const TannerGraph& graph, const DrnWeights& weights,
                               std::span<const Real> dloss_ds) {
    const std::size_t E = graph.edge_count();
    const unsigned T = weights.iterations;
    if (tape.blocks.size() != T) throw TapeMismatch("backward_drn: tape block count != iterations");
    if (dloss_ds.size() != graph.n_vars) throw TapeMismatch("backward_drn: dloss_ds length != n_vars");
    for (const auto& b : tape.blocks)
        if (b.a.size() != E || b.books.size() != graph.n_checks)
            throw TapeMismatch("backward_drn: tape not recorded on this graph");

    std::vector<Real> grad(weights.parameter_count(), Real(0));
    std::vector<Real> ds(dloss_ds.begin(), dloss_ds.end());
    std::vector<Real> du(E, Real(0));  // gradient w.r.t. u^t = m^t
    std::vector<Real> da(E);

    for (unsigned t = T; t >= 1; --t) {
        const auto& blk = tape.blocks[t - 1];
        const auto& w_block = weights.w[t - 1];
        Real* gw = grad.data() + static_cast<std::size_t>(t - 1) * graph.n_checks;

        std::fill(da.begin(), da.end(), Real(0));
        for (std::uint32_t c = 0; c < graph.n_checks; ++c) {
            const std::uint32_t begin = graph.check_offsets[c];
            const std::uint32_t count = graph.check_offsets[c + 1] - begin;
            const auto& book = blk.books[c];
            for (std::uint32_t i = 0; i < count; ++i) {
                const std::uint32_t e = begin + i;
                const Real dm = du[e] + ds[graph.edges[e].var];
                if (blk.m_clipped[e]) continue;
                gw[c] += dm * blk.act[e];
                if (book.argmin1 == detail::kNoArgmin) continue;  // degree-1: constant activation
                const Real dact = dm * w_block[c];
                // Route the min subgradient to the recorded argmin of M(c)\e.
                const std::uint32_t star = (i == book.argmin1) ? book.argmin2 : book.argmin1;
                const std::uint32_t e_star = begin + star;
                const int s_excl = book.sign_all * detail::sgn(blk.a[e]);
                da[e_star] += dact * static_cast<Real>(s_excl * detail::sgn(blk.a[e_star]));
            }
        }

        // du_prev collects -ds (soft update) and -da (residual input).
        for (std::size_t e = 0; e < E; ++e) {
            Real g = -ds[graph.edges[e].var];
            if (!blk.a_clipped[e]) g -= da[e];
            du[e] = g;
        }
        // ds_prev = ds + da through the unclipped residual inputs.
        for (std::size_t e = 0; e < E; ++e)
            if (!blk.a_clipped[e]) ds[graph.edges[e].var] += da[e];
    }
    return grad;
}

std::vector<Real> backward_nbp(const NbpTape& tape, const TannerGraph& graph, const NbpWeights& weights,
                               std::span<const Real> dloss_ds) {
    const std::size_t E = graph.edge_count();
    const std::uint32_t n = graph.n_vars;
    const unsigned T = weights.iterations;
    if (tape.iters.size() != T) throw TapeMismatch("backward_nbp: tape iteration count != iterations");
    if (dloss_ds.size() != n || tape.llr.size() != n) throw TapeMismatch("backward_nbp: length mismatch");
    for (const auto& it : tape.iters)
        if (it.v2c.size() != E) throw TapeMismatch("backward_nbp: tape not recorded on this graph");

    NbpWeights g;  // gradient holder in weight layout
    g.iterations = T;
    g.n_vars = n;
    g.n_edges = E;
    g.w_in.assign(T, std::vector<Real>(n, Real(0)));
    g.w_edge.assign(T, std::vector<Real>(E, Real(0)));
    g.w_out.assign(n, Real(0));
    g.w_out_edge.assign(E, Real(0));

    const auto& llr = tape.llr;
    std::vector<Real> du(E, Real(0));
    std::vector<Real> du_prev(E);
    std::vector<Real> dtanh(E);

    // Output layer: only the final iteration's s feeds the loss.
    const auto& last = tape.iters[T - 1];
    for (std::uint32_t v = 0; v < n; ++v) {
        const Real dsv = dloss_ds[v];
        g.w_out[v] += dsv * llr[v];
        for (std::uint32_t idx = graph.var_offsets[v]; idx < graph.var_offsets[v + 1]; ++idx) {
            const std::uint32_t e = graph.var_edges[idx];
            g.w_out_edge[e] += dsv * last.c2v[e];
            du[e] += dsv * weights.w_out_edge[e];
        }
    }

    for (unsigned t = T; t >= 1; --t) {
        const auto& it = tape.iters[t - 1];
        const Real* u_prev = (t >= 2) ? tape.iters[t - 2].c2v.data() : nullptr;

        // Check layer: u = clip(2 artanh(P)), P the guarded extrinsic product.
        std::fill(dtanh.begin(), dtanh.end(), Real(0));
        static thread_local std::vector<Real> reduced, pre, suf;
        for (std::uint32_t c = 0; c < graph.n_checks; ++c) {
            const std::uint32_t begin = graph.check_offsets[c];
            const std::uint32_t count = graph.check_offsets[c + 1] - begin;
            for (std::uint32_t i = 0; i < count; ++i) {
                const std::uint32_t e = begin + i;
                if (it.c2v_clipped[e] || it.prod_clipped[e]) continue;
                const Real dq = du[e];
                if (dq == Real(0)) continue;
                const Real p = it.ext_prod[e];
                const Real dprod = dq * Real(2) / (Real(1) - p * p);
                // d prod / d tanh_{e'} = product excluding both e and e':
                // prefix/suffix products over M(c) \ e.
                reduced.clear();
                for (std::uint32_t j = 0; j < count; ++j)
                    if (j != i) reduced.push_back(it.tanh_half[begin + j]);
                const std::size_t r = reduced.size();
                pre.resize(r + 1);
                suf.resize(r + 1);
                pre[0] = Real(1);
                for (std::size_t j = 0; j < r; ++j) pre[j + 1] = pre[j] * reduced[j];
                suf[r] = Real(1);
                for (std::size_t j = r; j-- > 0;) suf[j] = suf[j + 1] * reduced[j];
                std::size_t pos = 0;
                for (std::uint32_t j = 0; j < count; ++j) {
                    if (j == i) continue;
                    dtanh[begin + j] += dprod * pre[pos] * suf[pos + 1];
                    ++pos;
                }
            }
        }

        // tanh and the clipped variable layer.
        std::fill(du_prev.begin(), du_prev.end(), Real(0));
        const auto& w_edge = weights.w_edge[t - 1];
        for (std::size_t e = 0; e < E; ++e) {
            if (dtanh[e] == Real(0) || it.v2c_clipped[e]) continue;
            const Real tau = it.tanh_half[e];
            const Real dx = dtanh[e] * (Real(1) - tau * tau) / Real(2);
            const std::uint32_t v = graph.edges[e].var;
            g.w_in[t - 1][v] += dx * llr[v];
            for (std::uint32_t idx = graph.var_offsets[v]; idx < graph.var_offsets[v + 1]; ++idx) {
                const std::uint32_t in_edge = graph.var_edges[idx];
                if (in_edge == e) continue;
                const Real u_val = u_prev ? u_prev[in_edge] : Real(0);
                g.w_edge[t - 1][in_edge] += dx * u_val;
                du_prev[in_edge] += dx * w_edge[in_edge];
            }
        }
        du.swap(du_prev);
    }
    return g.flatten();
}

void rmsprop_step(std::span<Real> params, std::span<const Real> grads, OptimizerState& state, double lr, double rho,
                  double eps) {
    if (params.size() != grads.size()) throw ShapeMismatch("rmsprop_step: params/grads size mismatch");
    if (state.v.empty()) state.v.assign(params.size(), 0.0);
    if (state.v.size() != params.size()) throw ShapeMismatch("rmsprop_step: optimizer state size mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double gi = static_cast<double>(grads[i]);
        state.v[i] = rho * state.v[i] + (1.0 - rho) * gi * gi;
        params[i] -= static_cast<Real>(lr * gi / (std::sqrt(state.v[i]) + eps));
    }
    ++state.step;
}

void TrainConfig::validate() const {
    if (snr_grid.empty()) throw ConfigError("train: snr_grid must be nonempty");
    if (batch_size != snr_grid.size() * samples_per_snr)
        throw ConfigError("train: batch_size must equal |snr_grid| * samples_per_snr");
    if (iterations < 1) throw ConfigError("train: iterations must be >= 1");
}

Batch make_batch(const CodeSpec& code, const TrainConfig& config, std::uint64_t step_index) {
    config.validate();
    Batch batch;
    batch.count = config.batch_size;
    batch.n = code.n;
    batch.llr.resize(batch.count * code.n);
    batch.targets.resize(batch.count * code.n);

    std::vector<std::uint8_t> message(code.k);
    for (std::size_t snr_idx = 0; snr_idx < config.snr_grid.size(); ++snr_idx) {
        const double sigma = sigma_from_snr(config.snr_grid[snr_idx], code.rate);
        for (unsigned j = 0; j < config.samples_per_snr; ++j) {
            const std::size_t sample = snr_idx * config.samples_per_snr + j;
            Rng rng = make_stream(config.seed, step_index, sample);
            BitVec codeword;
            if (config.codeword_source == CodewordSource::all_zero) {
                codeword.assign(code.n, 0);
            } else {
                for (auto& bit : message) bit = rng.bit();
                codeword = encode(code.generator, message);
            }
            auto symbols = modulate(codeword);
            auto received = transmit(symbols, sigma, rng);
            auto llr = llr_from_received(received, sigma);
            std::copy(llr.begin(), llr.end(), batch.llr.begin() + sample * code.n);
            std::copy(codeword.begin(), codeword.end(), batch.targets.begin() + sample * code.n);
        }
    }
    return batch;
}

void tree_reduce_inplace(std::vector<std::vector<Real>>& per_sample) {
    const std::size_t count = per_sample.size();
    for (std::size_t stride = 1; stride < count; stride *= 2) {
        for (std::size_t i = 0; i + stride < count; i += 2 * stride) {
            auto& dst = per_sample[i];
            const auto& src = per_sample[i + stride];
            for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
        }
    }
}

namespace {

double tree_reduce_scalars(std::vector<double>& values) {
    const std::size_t count = values.size();
    for (std::size_t stride = 1; stride < count; stride *= 2)
        for (std::size_t i = 0; i + stride < count; i += 2 * stride) values[i] += values[i + stride];
    return values.empty() ? 0.0 : values[0];
}

int resolve_workers(unsigned requested) {
#ifdef _OPENMP
    return requested == 0 ? omp_get_max_threads() : static_cast<int>(requested);
#else
    (void)requested;
    return 1;
#endif
}

// Shared driver; Variant supplies forward+backward for one sample.
template <typename W, typename SampleFn>
TrainResult<W> train_loop(const CodeSpec& code, const TrainConfig& config, W initial, SampleFn&& sample_fn,
                          ProgressFn progress) {
    config.validate();
    TrainResult<W> result{std::move(initial), {}, false, 0};
    std::vector<Real> flat = result.weights.flatten();
    std::vector<Real> last_good = flat;
    OptimizerState opt;

    const std::size_t count = config.batch_size;
    std::vector<std::vector<Real>> grads(count);
    std::vector<double> losses(count);
    const int workers = resolve_workers(config.workers);

    const auto t0 = std::chrono::steady_clock::now();
    auto wall_ms = [&t0] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    for (unsigned step = 0; step < config.steps; ++step) {
        result.weights.unflatten(flat);
        Batch batch = make_batch(code, config, step);

        if (workers == 1) {
            for (std::size_t i = 0; i < count; ++i)
                sample_fn(result.weights, batch, i, grads[i], losses[i]);
        } else {
#pragma omp parallel for schedule(static) num_threads(workers)
            for (long i = 0; i < static_cast<long>(count); ++i)
                sample_fn(result.weights, batch, static_cast<std::size_t>(i), grads[static_cast<std::size_t>(i)],
                          losses[static_cast<std::size_t>(i)]);
        }

        std::vector<double> loss_copy = losses;
        const double mean_loss = tree_reduce_scalars(loss_copy) / static_cast<double>(count);
        tree_reduce_inplace(grads);
        auto& total_grad = grads[0];
        bool finite = std::isfinite(mean_loss);
        for (const Real gval : total_grad)
            if (!std::isfinite(static_cast<double>(gval))) finite = false;

        if (!finite) {
            result.diverged = true;
            result.weights.unflatten(last_good);
            result.log.push_back({step, mean_loss, wall_ms()});
            return result;
        }

        last_good = flat;
        result.last_good_step = step;
        if (step % config.log_every == 0 || step + 1 == config.steps) {
            TrainLogEntry entry{step, mean_loss, wall_ms()};
            result.log.push_back(entry);
            if (progress) progress(entry);
        }

        const Real inv = static_cast<Real>(1.0 / static_cast<double>(count));
        for (auto& gval : total_grad) gval *= inv;
        rmsprop_step(flat, total_grad, opt, config.learning_rate, config.rho, config.epsilon);
    }
    result.weights.unflatten(flat);
    return result;
}

}  // namespace

TrainResult<DrnWeights> train_drn(const CodeSpec& code, const TrainConfig& config, ProgressFn progress) {
    auto sample_fn = [&code](const DrnWeights& w, const Batch& batch, std::size_t i, std::vector<Real>& grad,
                             double& loss) {
        std::span<const Real> llr(batch.llr.data() + i * batch.n, batch.n);
        std::span<const std::uint8_t> target(batch.targets.data() + i * batch.n, batch.n);
        DrnTape tape;
        DecodeResult dec = decode_drn(llr, code.graph, w, w.iterations, &tape);
        BceResult bce = bce_loss(dec.soft_trajectory.back(), target);
        loss = bce.loss;
        grad = backward_drn(tape, code.graph, w, bce.dloss_ds);
    };
    return train_loop(code, config, DrnWeights::ones(code.graph.n_checks, config.iterations), sample_fn, progress);
}

TrainResult<NbpWeights> train_nbp(const CodeSpec& code, const TrainConfig& config, ProgressFn progress) {
    auto sample_fn = [&code](const NbpWeights& w, const Batch& batch, std::size_t i, std::vector<Real>& grad,
                             double& loss) {
        std::span<const Real> llr(batch.llr.data() + i * batch.n, batch.n);
        std::span<const std::uint8_t> target(batch.targets.data() + i * batch.n, batch.n);
        NbpTape tape;
        DecodeResult dec = decode_nbp(llr, code.graph, w, w.iterations, &tape);
        BceResult bce = bce_loss(dec.soft_trajectory.back(), target);
        loss = bce.loss;
        grad = backward_nbp(tape, code.graph, w, bce.dloss_ds);
    };
    return train_loop(code, config, NbpWeights::ones(code.graph, config.iterations), sample_fn, progress);
}

}  // namespace drn
