#ifndef DRN_EVAL_HPP
#define DRN_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "drn/nbp.hpp"
#include "drn/tanner.hpp"

namespace drn {

struct ZeroBer : Error {
    using Error::Error;
};

enum class Variant { bp, minsum, nbp, drn };
std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);

/// A decoder ready to run: classical variants need no weights; nbp/drn
/// borrow their weight tables.
struct DecoderSetup {
    Variant variant = Variant::bp;
    unsigned iterations = 5;
    const NbpWeights* nbp = nullptr;
    const DrnWeights* drn = nullptr;
};
DecodeResult run_decoder(const DecoderSetup& setup, std::span<const Real> llr, const TannerGraph& graph);

struct SnrPoint {
    double snr_db = 0.0;
    std::uint64_t codewords = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double neg_ln_ber = 0.0;  // lower bound -ln(1/bits) when zero errors
    double ci_low = 0.0;      // Wilson 95% interval on the bit error rate
    double ci_high = 0.0;
    bool cap_reached = false;
    bool zero_errors = false;
};

struct EvalConfig {
    std::uint64_t min_bit_errors = 100;
    std::uint64_t max_codewords = 10000000;
    std::uint64_t seed = 1;
    unsigned workers = 0;    // 0 = library default, 1 = serial reference path
    bool noiseless = false;  // bypass noise: llr = +-clip bound (sanity lane)
};

/// Monte Carlo BER/FER at one SNR: random messages through the systematic
/// encoder, BPSK over AWGN, decode, count. Stops at batch granularity once
/// min_bit_errors is reached or the codeword cap hits (cap_reached flagged).
/// Sample i draws from a stream keyed on (seed, snr bits, i): the outcome is
/// identical for every worker count.
SnrPoint estimate_ber(const DecoderSetup& setup, const CodeSpec& code, double snr_db, const EvalConfig& config);

struct EvalReport {
    std::string code;
    std::string variant;
    unsigned iterations = 0;
    std::uint64_t seed = 0;
    std::vector<SnrPoint> points;
    double wall_seconds = 0.0;
};

/// Natural logarithm; throws ZeroBer for ber <= 0 (callers report the
/// 1/bits-simulated lower bound instead).
double neg_ln(double ber);

/// Wilson 95% score interval for x successes in n trials.
void wilson_interval(std::uint64_t x, std::uint64_t n, double& low, double& high);

struct SvsLRow {
    double snr_db;
    SnrPoint using_s;  // hard decision from s after 1 BP iteration
    SnrPoint using_l;  // hard decision from the channel LLR alone
};
/// Both lanes run on the same noise realizations; sampling continues until
/// each lane holds min_bit_errors (or the cap).
std::vector<SvsLRow> s_vs_l_diagnostic(const CodeSpec& code, std::span<const double> snr_list,
                                       const EvalConfig& config);

// Documented FLOP convention: every add/sub, multiply, compare, sign or abs
// counts 1; tanh and arctanh count kCostTanh each. Updates are costed as
// written, one extrinsic evaluation per edge, without partial-product reuse.
// Message clipping and syndrome checks are excluded.
inline constexpr std::uint64_t kCostTanh = 5;

struct FlopBreakdown {
    std::uint64_t variable_update = 0;
    std::uint64_t check_update = 0;
    std::uint64_t output = 0;
    std::uint64_t total() const { return variable_update + check_update + output; }
};

struct CostReport {
    std::size_t parameter_count = 0;
    std::size_t parameter_bytes = 0;  // 4 bytes per weight
    FlopBreakdown flops;              // per decoded codeword, all T iterations
};
CostReport cost_report(Variant variant, const CodeSpec& code, unsigned iterations);

/// CSV with header: code,variant,snr_db,codewords,bit_errors,ber,neg_ln_ber,ci_low,ci_high
std::string eval_csv(const std::vector<EvalReport>& reports);

/// JSON mirroring the reports plus per-variant cost accounting.
std::string eval_json(const std::vector<EvalReport>& reports, const std::vector<CostReport>& costs);

/// Gnuplot-ready columns: snr_db ber neg_ln_ber ci_low ci_high.
std::string gnuplot_curve(const EvalReport& report);

}  // namespace drn

#endif
