#ifndef DRN_TRAIN_HPP
#define DRN_TRAIN_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "drn/nbp.hpp"
#include "drn/tanner.hpp"

namespace drn {

/// Multi-label binary cross entropy on the final soft values. The bit-1
/// probability is o_v = sigmoid(-s_v) under the internal LLR convention;
/// probabilities are clamped to [1e-12, 1 - 1e-12] for the loss value while
/// the gradient is the exact unclamped x_v - o_v.
struct BceResult {
    double loss;
    std::vector<Real> dloss_ds;
};
BceResult bce_loss(std::span<const Real> s_final, std::span<const std::uint8_t> target_bits);

/// Reverse pass through a recorded DRN decode. Returns the gradient in
/// DrnWeights::flatten() order. Min subgradients route to the recorded
/// argmin (lowest edge id on ties); clipped values propagate zero gradient;
/// sign factors are treated as locally constant.
std::vector<Real> backward_drn(const DrnTape& tape, const TannerGraph& graph, const DrnWeights& weights,
                               std::span<const Real> dloss_ds);

/// Reverse pass through a recorded NBP decode, NbpWeights::flatten() order.
/// d artanh(x)/dx = 1/(1 - x^2) is evaluated at the forward's guarded x.
std::vector<Real> backward_nbp(const NbpTape& tape, const TannerGraph& graph, const NbpWeights& weights,
                               std::span<const Real> dloss_ds);

struct OptimizerState {
    std::vector<double> v;  // second-moment accumulator
    std::uint64_t step = 0;
};

/// v <- rho v + (1-rho) g^2 ; theta <- theta - lr g / (sqrt(v) + eps).
void rmsprop_step(std::span<Real> params, std::span<const Real> grads, OptimizerState& state, double lr, double rho,
                  double eps);

enum class CodewordSource { random_message, all_zero };

struct TrainConfig {
    unsigned batch_size = 384;  // |snr_grid| * samples_per_snr
    std::vector<double> snr_grid = {1, 2, 3, 4, 5, 6};
    unsigned samples_per_snr = 64;
    double learning_rate = 1e-3;
    double rho = 0.9;            // RMSprop decay
    double epsilon = 1e-8;       // RMSprop denominator guard
    unsigned steps = 20000;
    unsigned iterations = 5;     // decoder blocks T
    std::uint64_t seed = 1;
    CodewordSource codeword_source = CodewordSource::random_message;
    unsigned log_every = 50;
    unsigned workers = 0;  // 0 = library default (all available)

    void validate() const;
};

/// One training batch: samples_per_snr codewords at every SNR of the grid.
/// Sample i draws from an rng stream keyed on (seed, step, i), so batches
/// are identical regardless of worker count.
struct Batch {
    std::size_t count = 0;
    std::size_t n = 0;
    std::vector<Real> llr;             // count * n
    std::vector<std::uint8_t> targets;  // count * n codeword bits
};
Batch make_batch(const CodeSpec& code, const TrainConfig& config, std::uint64_t step_index);

/// Deterministic pairwise tree reduction over per-sample buffers; the result
/// does not depend on evaluation order or worker count.
void tree_reduce_inplace(std::vector<std::vector<Real>>& per_sample);

struct TrainLogEntry {
    unsigned step;
    double loss;
    double wall_ms;
};

template <typename W>
struct TrainResult {
    W weights;
    std::vector<TrainLogEntry> log;
    bool diverged = false;
    unsigned last_good_step = 0;
};

using ProgressFn = std::function<void(const TrainLogEntry&)>;

/// steps x (make_batch -> forward -> bce on final s -> backward -> rmsprop).
/// The loss is averaged over the batch. On divergence the last finite-loss
/// weights are returned with diverged = true.
TrainResult<DrnWeights> train_drn(const CodeSpec& code, const TrainConfig& config, ProgressFn progress = nullptr);
TrainResult<NbpWeights> train_nbp(const CodeSpec& code, const TrainConfig& config, ProgressFn progress = nullptr);

}  // namespace drn

#endif
