#include "drn/eval.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "drn/channel.hpp"
#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drn {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::bp: return "bp";
        case Variant::minsum: return "minsum";
        case Variant::nbp: return "nbp";
        case Variant::drn: return "drn";
    }
    return "?";
}

Variant variant_from_string(const std::string& name) {
    if (name == "bp") return Variant::bp;
    if (name == "minsum") return Variant::minsum;
    if (name == "nbp") return Variant::nbp;
    if (name == "drn") return Variant::drn;
    throw ConfigError("unknown decoder variant '" + name + "' (want bp|minsum|nbp|drn)");
}

DecodeResult run_decoder(const DecoderSetup& setup, std::span<const Real> llr, const TannerGraph& graph) {
    switch (setup.variant) {
        case Variant::bp: return decode_sum_product(llr, graph, setup.iterations);
        case Variant::minsum: return decode_min_sum(llr, graph, setup.iterations);
        case Variant::nbp:
            if (!setup.nbp) throw ConfigError("nbp decoder needs weights");
            return decode_nbp(llr, graph, *setup.nbp, setup.iterations);
        case Variant::drn:
            if (!setup.drn) throw ConfigError("drn decoder needs weights");
            return decode_drn(llr, graph, *setup.drn, setup.iterations);
    }
    throw ConfigError("bad variant");
}

double neg_ln(double ber) {
    if (!(ber > 0.0)) throw ZeroBer("neg_ln: ber must be positive");
    return -std::log(ber);
}

void wilson_interval(std::uint64_t x, std::uint64_t n, double& low, double& high) {
    if (n == 0) {
        low = high = 0.0;
        return;
    }
    constexpr double z = 1.959963984540054;  // 97.5th normal percentile
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(x) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    low = std::max(0.0, center - half);
    high = std::min(1.0, center + half);
}

namespace {

int resolve_workers(unsigned requested) {
#ifdef _OPENMP
    return requested == 0 ? omp_get_max_threads() : static_cast<int>(requested);
#else
    (void)requested;
    return 1;
#endif
}

constexpr std::uint64_t kEvalBatch = 1024;

std::uint64_t snr_stream_key(double snr_db) { return std::bit_cast<std::uint64_t>(snr_db); }

void finish_point(SnrPoint& pt, std::size_t n, std::uint64_t min_bit_errors) {
    const std::uint64_t bits = pt.codewords * n;
    pt.ber = bits ? static_cast<double>(pt.bit_errors) / static_cast<double>(bits) : 0.0;
    pt.fer = pt.codewords ? static_cast<double>(pt.frame_errors) / static_cast<double>(pt.codewords) : 0.0;
    pt.zero_errors = pt.bit_errors == 0;
    pt.cap_reached = pt.bit_errors < min_bit_errors;
    pt.neg_ln_ber = pt.zero_errors ? neg_ln(1.0 / static_cast<double>(bits)) : neg_ln(pt.ber);
    wilson_interval(pt.bit_errors, bits, pt.ci_low, pt.ci_high);
}

}  // namespace

SnrPoint estimate_ber(const DecoderSetup& setup, const CodeSpec& code, double snr_db, const EvalConfig& config) {
    const double sigma = sigma_from_snr(snr_db, code.rate);
    const std::uint64_t key = snr_stream_key(snr_db);
    const int workers = resolve_workers(config.workers);

    SnrPoint pt;
    pt.snr_db = snr_db;

    std::vector<std::uint32_t> bit_err(kEvalBatch);
    std::vector<std::uint8_t> frame_err(kEvalBatch);

    std::uint64_t next_index = 0;
    while (pt.bit_errors < config.min_bit_errors && pt.codewords < config.max_codewords) {
        const std::uint64_t batch =
            std::min<std::uint64_t>(kEvalBatch, config.max_codewords - pt.codewords);

        auto run_one = [&](std::uint64_t slot) {
            const std::uint64_t index = next_index + slot;
            Rng rng = make_stream(config.seed, key, index);
            std::vector<std::uint8_t> msg(code.k);
            for (auto& bit : msg) bit = rng.bit();
            const BitVec codeword = encode(code.generator, msg);
            const auto symbols = modulate(codeword);
            std::vector<Real> llr;
            if (config.noiseless) {
                llr.resize(code.n);
                for (std::size_t i = 0; i < code.n; ++i)
                    llr[i] = symbols[i] > Real(0) ? kMessageClip : -kMessageClip;
            } else {
                auto received = transmit(symbols, sigma, rng);
                llr = llr_from_received(received, sigma);
            }
            const DecodeResult dec = run_decoder(setup, llr, code.graph);
            std::uint32_t errors = 0;
            for (std::size_t i = 0; i < code.n; ++i) errors += dec.hard_bits[i] != codeword[i];
            bit_err[slot] = errors;
            frame_err[slot] = errors > 0;
        };

        if (workers == 1) {
            for (std::uint64_t slot = 0; slot < batch; ++slot) run_one(slot);
        } else {
#pragma omp parallel for schedule(static) num_threads(workers)
            for (long slot = 0; slot < static_cast<long>(batch); ++slot)
                run_one(static_cast<std::uint64_t>(slot));
        }

        for (std::uint64_t slot = 0; slot < batch; ++slot) {
            pt.bit_errors += bit_err[slot];
            pt.frame_errors += frame_err[slot];
        }
        pt.codewords += batch;
        next_index += batch;
    }

    finish_point(pt, code.n, config.min_bit_errors);
    return pt;
}

std::vector<SvsLRow> s_vs_l_diagnostic(const CodeSpec& code, std::span<const double> snr_list,
                                       const EvalConfig& config) {
    const int workers = resolve_workers(config.workers);
    std::vector<SvsLRow> rows;
    for (double snr_db : snr_list) {
        const double sigma = sigma_from_snr(snr_db, code.rate);
        const std::uint64_t key = snr_stream_key(snr_db) ^ 0x735f53764c646961ULL;

        SvsLRow row;
        row.snr_db = snr_db;
        row.using_s.snr_db = snr_db;
        row.using_l.snr_db = snr_db;

        std::vector<std::uint32_t> s_err(kEvalBatch), l_err(kEvalBatch);
        std::uint64_t next_index = 0;
        while ((row.using_s.bit_errors < config.min_bit_errors || row.using_l.bit_errors < config.min_bit_errors) &&
               row.using_s.codewords < config.max_codewords) {
            const std::uint64_t batch =
                std::min<std::uint64_t>(kEvalBatch, config.max_codewords - row.using_s.codewords);

            auto run_one = [&](std::uint64_t slot) {
                const std::uint64_t index = next_index + slot;
                Rng rng = make_stream(config.seed, key, index);
                std::vector<std::uint8_t> msg(code.k);
                for (auto& bit : msg) bit = rng.bit();
                const BitVec codeword = encode(code.generator, msg);
                const auto symbols = modulate(codeword);
                const auto received = transmit(symbols, sigma, rng);
                const auto llr = llr_from_received(received, sigma);
                const DecodeResult dec = decode_sum_product(llr, code.graph, 1);
                const BitVec from_l = hard_decision(llr);
                std::uint32_t se = 0, le = 0;
                for (std::size_t i = 0; i < code.n; ++i) {
                    se += dec.hard_bits[i] != codeword[i];
                    le += from_l[i] != codeword[i];
                }
                s_err[slot] = se;
                l_err[slot] = le;
            };

            if (workers == 1) {
                for (std::uint64_t slot = 0; slot < batch; ++slot) run_one(slot);
            } else {
#pragma omp parallel for schedule(static) num_threads(workers)
                for (long slot = 0; slot < static_cast<long>(batch); ++slot)
                    run_one(static_cast<std::uint64_t>(slot));
            }

            for (std::uint64_t slot = 0; slot < batch; ++slot) {
                row.using_s.bit_errors += s_err[slot];
                row.using_l.bit_errors += l_err[slot];
                row.using_s.frame_errors += s_err[slot] > 0;
                row.using_l.frame_errors += l_err[slot] > 0;
            }
            row.using_s.codewords += batch;
            row.using_l.codewords += batch;
            next_index += batch;
        }
        finish_point(row.using_s, code.n, config.min_bit_errors);
        finish_point(row.using_l, code.n, config.min_bit_errors);
        rows.push_back(row);
    }
    return rows;
}

CostReport cost_report(Variant variant, const CodeSpec& code, unsigned iterations) {
    const TannerGraph& g = code.graph;
    const std::uint64_t T = iterations;
    const std::uint64_t E = g.edge_count();

    std::uint64_t sum_dv2 = 0;  // sum over v of d_v (d_v - 1)
    for (std::uint32_t v = 0; v < g.n_vars; ++v) {
        const std::uint64_t d = g.var_degree(v);
        sum_dv2 += d * (d - 1);
    }

    // Per-edge check-update cost, one extrinsic evaluation per edge as the
    // update is written.
    std::uint64_t chk_sp = 0, chk_ms = 0, chk_drn = 0;
    for (std::uint32_t c = 0; c < g.n_checks; ++c) {
        const std::uint64_t d = g.check_degree(c);
        if (d == 0) continue;
        if (d == 1) {
            chk_sp += kCostTanh + 1;  // artanh of the empty product, doubling
            chk_ms += 1;              // constant emit
            chk_drn += 2;             // constant emit + weight multiply
            continue;
        }
        // sum-product per edge: (d-1) tanh + (d-1) halvings + (d-2) products
        // + 1 artanh + 1 doubling.
        chk_sp += d * ((d - 1) * (kCostTanh + 1) + (d - 2) + kCostTanh + 1);
        // min-sum per edge: (d-1) signs + (d-1) abs + (d-2) compares
        // + (d-2) sign products + 1 sign apply.
        chk_ms += d * (4 * d - 5);
        chk_drn += d * (4 * d - 4);  // + 1 weight multiply per edge
    }

    CostReport report;
    FlopBreakdown& f = report.flops;
    switch (variant) {
        case Variant::bp:
            f.variable_update = T * sum_dv2;
            f.check_update = T * chk_sp;
            f.output = T * E;
            break;
        case Variant::minsum:
            f.variable_update = T * sum_dv2;
            f.check_update = T * chk_ms;
            f.output = T * E;
            break;
        case Variant::nbp:
            // weighted extrinsic sums: one multiply per consumed message plus
            // w_in * l per edge; weighted output layer every block.
            f.variable_update = T * (2 * sum_dv2 + E);
            f.check_update = T * chk_sp;
            f.output = T * (2 * E + g.n_vars);
            report.parameter_count = T * (g.n_vars + E) + g.n_vars + E;
            break;
        case Variant::drn:
            f.variable_update = T * E;  // residual inputs a = s - u
            f.check_update = T * chk_drn;
            f.output = T * 2 * E;  // telescoping soft update
            report.parameter_count = T * g.n_checks;
            break;
    }
    report.parameter_bytes = 4 * report.parameter_count;
    return report;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::string eval_csv(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    out << "code,variant,snr_db,codewords,bit_errors,ber,neg_ln_ber,ci_low,ci_high\n";
    for (const auto& r : reports)
        for (const auto& p : r.points)
            out << r.code << ',' << r.variant << ',' << fmt_double(p.snr_db) << ',' << p.codewords << ','
                << p.bit_errors << ',' << fmt_double(p.ber) << ',' << fmt_double(p.neg_ln_ber) << ','
                << fmt_double(p.ci_low) << ',' << fmt_double(p.ci_high) << '\n';
    return out.str();
}

std::string eval_json(const std::vector<EvalReport>& reports, const std::vector<CostReport>& costs) {
    nlohmann::json j;
    j["reports"] = nlohmann::json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        nlohmann::json jr;
        jr["code"] = r.code;
        jr["variant"] = r.variant;
        jr["iterations"] = r.iterations;
        jr["seed"] = r.seed;
        jr["wall_seconds"] = r.wall_seconds;
        jr["points"] = nlohmann::json::array();
        for (const auto& p : r.points) {
            jr["points"].push_back({{"snr_db", p.snr_db},
                                    {"codewords", p.codewords},
                                    {"bit_errors", p.bit_errors},
                                    {"frame_errors", p.frame_errors},
                                    {"ber", p.ber},
                                    {"fer", p.fer},
                                    {"neg_ln_ber", p.neg_ln_ber},
                                    {"ci_low", p.ci_low},
                                    {"ci_high", p.ci_high},
                                    {"cap_reached", p.cap_reached},
                                    {"zero_errors", p.zero_errors}});
        }
        if (i < costs.size()) {
            jr["cost"] = {{"parameter_count", costs[i].parameter_count},
                          {"parameter_bytes", costs[i].parameter_bytes},
                          {"flops",
                           {{"variable_update", costs[i].flops.variable_update},
                            {"check_update", costs[i].flops.check_update},
                            {"output", costs[i].flops.output},
                            {"total", costs[i].flops.total()}}},
                          {"flop_convention",
                           "add/mul/compare/sign count 1, tanh/arctanh count " + std::to_string(kCostTanh) +
                               "; per-edge extrinsic evaluation as written, clipping excluded"}};
        }
        j["reports"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::string gnuplot_curve(const EvalReport& report) {
    std::ostringstream out;
    out << "# " << report.code << " " << report.variant << " T=" << report.iterations << "\n";
    out << "# snr_db ber neg_ln_ber ci_low ci_high\n";
    for (const auto& p : report.points)
        out << fmt_double(p.snr_db) << ' ' << fmt_double(p.ber) << ' ' << fmt_double(p.neg_ln_ber) << ' '
            << fmt_double(p.ci_low) << ' ' << fmt_double(p.ci_high) << '\n';
    return out.str();
}

}  // namespace drn
