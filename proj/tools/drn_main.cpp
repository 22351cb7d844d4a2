// Command-line front end: code inspection, decoder training, Monte Carlo
// evaluation sweeps, and the diagnostic suites.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

#include "CLI11.hpp"
#include "drn/channel.hpp"
#include "drn/eval.hpp"
#include "drn/registry.hpp"
#include "drn/train.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitDivergence = 4;

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw drn::ConfigError("cannot open for checksum: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        const auto dash = token.find('-', 1);
        if (dash != std::string::npos) {
            const double lo = std::stod(token.substr(0, dash));
            const double hi = std::stod(token.substr(dash + 1));
            for (double v = lo; v <= hi + 1e-9; v += 1.0) out.push_back(v);
        } else if (!token.empty()) {
            out.push_back(std::stod(token));
        }
    }
    if (out.empty()) throw drn::ConfigError("empty SNR list");
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw drn::ConfigError("cannot write " + path.string());
    out << text;
}

struct CommonArgs {
    std::string code;
    std::string codes_dir = drn::default_codes_dir();
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string config_file;
};

// Flags beat config-file values beat defaults. The config file is a flat
// JSON object keyed by long option name without dashes.
void apply_config_file(CLI::App* cmd, const std::string& config_file) {
    if (config_file.empty()) return;
    std::ifstream in(config_file);
    if (!in) throw drn::ConfigError("cannot open config file: " + config_file);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw drn::ConfigError("config file: " + std::string(e.what()));
    }
    for (auto& [key, value] : j.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (!opt) throw drn::ConfigError("config file: unknown option '" + key + "'");
        if (opt->count() > 0) continue;  // explicit flag wins
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command, const CommonArgs& common,
                    const nlohmann::json& resolved, const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["tool"] = "drn";
    j["version"] = drn::kToolVersion;
    j["command"] = command;
    const std::string code_path = drn::resolve_code_path(common.code, common.codes_dir);
    j["code"] = {{"name", common.code}, {"path", code_path}, {"fnv1a64", hex64(fnv1a64_file(code_path))}};
    j["seed"] = common.seed;
    j["workers"] = common.workers;
    j["config"] = resolved;
    j["outputs"] = outputs;
    write_text(out_dir / "manifest.json", j.dump(2) + "\n");
}

int cmd_info(const CommonArgs& common) {
    drn::CodeSpec code = drn::resolve_code(common.code, common.codes_dir);
    const auto& g = code.graph;
    std::cout << "code:     " << code.name << "\n";
    std::cout << "n:        " << code.n << "\n";
    std::cout << "k:        " << code.k << "\n";
    std::cout << "rate:     " << code.rate << "\n";
    std::cout << "checks:   " << g.n_checks << " (H rows; n-k = " << (code.n - code.k) << ")\n";
    std::cout << "edges:    " << g.edge_count() << "\n";
    std::cout << "density:  " << drn::density(code.h) << "\n";

    std::map<std::uint32_t, std::uint32_t> var_hist, chk_hist;
    for (std::uint32_t v = 0; v < g.n_vars; ++v) ++var_hist[g.var_degree(v)];
    for (std::uint32_t c = 0; c < g.n_checks; ++c) ++chk_hist[g.check_degree(c)];
    std::cout << "variable degree histogram:";
    for (auto [d, count] : var_hist) std::cout << "  " << d << ":" << count;
    std::cout << "\ncheck degree histogram:   ";
    for (auto [d, count] : chk_hist) std::cout << "  " << d << ":" << count;
    std::cout << "\n";
    return kExitOk;
}

int cmd_train(const CommonArgs& common, const std::string& variant, drn::TrainConfig cfg) {
    drn::CodeSpec code = drn::resolve_code(common.code, common.codes_dir);
    cfg.seed = common.seed;
    cfg.workers = common.workers;
    cfg.batch_size = static_cast<unsigned>(cfg.snr_grid.size()) * cfg.samples_per_snr;
    cfg.validate();

    const std::filesystem::path out_dir(common.out_dir);
    std::filesystem::create_directories(out_dir);

    std::ostringstream log_csv;
    log_csv << "step,loss,wall_ms\n";
    auto progress = [&log_csv](const drn::TrainLogEntry& e) {
        log_csv << e.step << ',' << e.loss << ',' << e.wall_ms << '\n';
        std::cout << "step " << e.step << "  loss " << e.loss << "\n";
    };

    bool diverged = false;
    const std::string weights_path = (out_dir / "weights.json").string();
    if (variant == "drn") {
        auto result = drn::train_drn(code, cfg, progress);
        diverged = result.diverged;
        drn::save_drn_weights(result.weights, code.name, weights_path);
    } else if (variant == "nbp") {
        auto result = drn::train_nbp(code, cfg, progress);
        diverged = result.diverged;
        drn::save_nbp_weights(result.weights, code.name, weights_path);
    } else {
        throw drn::ConfigError("train: variant must be nbp or drn");
    }
    write_text(out_dir / "train_log.csv", log_csv.str());

    nlohmann::json resolved;
    resolved["variant"] = variant;
    resolved["steps"] = cfg.steps;
    resolved["batch_size"] = cfg.batch_size;
    resolved["samples_per_snr"] = cfg.samples_per_snr;
    resolved["snr_grid"] = cfg.snr_grid;
    resolved["lr"] = cfg.learning_rate;
    resolved["rho"] = cfg.rho;
    resolved["epsilon"] = cfg.epsilon;
    resolved["iterations"] = cfg.iterations;
    resolved["source"] = cfg.codeword_source == drn::CodewordSource::all_zero ? "all_zero" : "random_message";
    write_manifest(out_dir, "train", common, resolved, {"weights.json", "train_log.csv"});

    if (diverged) {
        std::cerr << "training diverged; last good checkpoint written\n";
        return kExitDivergence;
    }
    return kExitOk;
}

struct EvalArgs {
    std::vector<std::string> variants;
    std::string nbp_weights;
    std::string drn_weights;
    std::string snr_text = "1-6";
    unsigned iterations = 5;
    std::uint64_t min_errors = 100;
    std::uint64_t max_codewords = 10000000;
    bool noiseless = false;
};

int cmd_eval(const CommonArgs& common, const EvalArgs& args) {
    drn::CodeSpec code = drn::resolve_code(common.code, common.codes_dir);
    const auto snrs = parse_snr_list(args.snr_text);

    drn::NbpWeights nbp_w;
    drn::DrnWeights drn_w;
    std::vector<drn::EvalReport> reports;
    std::vector<drn::CostReport> costs;

    for (const auto& name : args.variants) {
        const drn::Variant variant = drn::variant_from_string(name);
        drn::DecoderSetup setup{variant, args.iterations, nullptr, nullptr};
        if (variant == drn::Variant::nbp) {
            if (args.nbp_weights.empty()) {
                nbp_w = drn::NbpWeights::ones(code.graph, args.iterations);
            } else {
                auto loaded = drn::load_weights(args.nbp_weights);
                if (loaded.variant != "nbp") throw drn::ConfigError("--nbp-weights file is not an nbp checkpoint");
                nbp_w = loaded.nbp;
            }
            setup.nbp = &nbp_w;
        }
        if (variant == drn::Variant::drn) {
            if (args.drn_weights.empty()) {
                drn_w = drn::DrnWeights::ones(code.graph.n_checks, args.iterations);
            } else {
                auto loaded = drn::load_weights(args.drn_weights);
                if (loaded.variant != "drn") throw drn::ConfigError("--drn-weights file is not a drn checkpoint");
                drn_w = loaded.drn;
            }
            setup.drn = &drn_w;
        }

        drn::EvalConfig ecfg;
        ecfg.min_bit_errors = args.min_errors;
        ecfg.max_codewords = args.max_codewords;
        ecfg.seed = common.seed;
        ecfg.workers = common.workers;
        ecfg.noiseless = args.noiseless;

        drn::EvalReport report;
        report.code = code.name;
        report.variant = name;
        report.iterations = args.iterations;
        report.seed = common.seed;
        const auto t0 = std::chrono::steady_clock::now();
        for (double snr : snrs) {
            auto pt = drn::estimate_ber(setup, code, snr, ecfg);
            if (pt.cap_reached)
                std::cerr << "note: " << name << " @ " << snr << " dB hit the codeword cap with " << pt.bit_errors
                          << " bit errors\n";
            report.points.push_back(pt);
        }
        report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        reports.push_back(report);
        costs.push_back(drn::cost_report(variant, code, args.iterations));
    }

    const std::filesystem::path out_dir(common.out_dir);
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> outputs = {"report.csv", "report.json"};
    write_text(out_dir / "report.csv", drn::eval_csv(reports));
    write_text(out_dir / "report.json", drn::eval_json(reports, costs));
    for (const auto& r : reports) {
        const std::string curve = r.code + "_" + r.variant + ".dat";
        write_text(out_dir / curve, drn::gnuplot_curve(r));
        outputs.push_back(curve);
    }

    // Table-style matrix on stdout: -ln(BER), one row per variant.
    std::cout << "-ln(BER) on " << code.name << " (T=" << args.iterations << ")\nvariant";
    for (double snr : snrs) std::cout << "\t" << snr << "dB";
    std::cout << "\n";
    for (const auto& r : reports) {
        std::cout << r.variant;
        for (const auto& p : r.points) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f%s", p.neg_ln_ber, p.cap_reached ? "*" : "");
            std::cout << "\t" << buf;
        }
        std::cout << "\n";
    }
    if (std::any_of(reports.begin(), reports.end(), [](const drn::EvalReport& r) {
            return std::any_of(r.points.begin(), r.points.end(), [](const drn::SnrPoint& p) { return p.cap_reached; });
        }))
        std::cout << "(* codeword cap reached before the error target)\n";

    nlohmann::json resolved;
    resolved["variants"] = args.variants;
    resolved["snr"] = snrs;
    resolved["iterations"] = args.iterations;
    resolved["min_errors"] = args.min_errors;
    resolved["max_codewords"] = args.max_codewords;
    resolved["noiseless"] = args.noiseless;
    if (!args.nbp_weights.empty()) resolved["nbp_weights"] = args.nbp_weights;
    if (!args.drn_weights.empty()) resolved["drn_weights"] = args.drn_weights;
    write_manifest(out_dir, "eval", common, resolved, outputs);
    return kExitOk;
}

int cmd_diag(const CommonArgs& common, unsigned trials, unsigned grad_points, const std::string& snr_text,
             std::uint64_t min_errors) {
    drn::CodeSpec code = drn::resolve_code(common.code, common.codes_dir);
    const unsigned T = 5;
    bool all_ok = true;
    std::mt19937_64 gen(common.seed);

    // Unit-weight reductions on full soft trajectories.
    {
        auto nbp_w = drn::NbpWeights::ones(code.graph, T);
        auto drn_w = drn::DrnWeights::ones(code.graph.n_checks, T);
        double worst_nbp = 0.0, worst_drn = 0.0;
        std::normal_distribution<double> noise(0.0, 3.0);
        for (unsigned trial = 0; trial < trials; ++trial) {
            std::vector<drn::Real> llr(code.n);
            for (auto& v : llr) v = static_cast<drn::Real>(noise(gen));
            auto bp = drn::decode_sum_product(llr, code.graph, T);
            auto nbp = drn::decode_nbp(llr, code.graph, nbp_w, T);
            auto ms = drn::decode_min_sum(llr, code.graph, T);
            auto dr = drn::decode_drn(llr, code.graph, drn_w, T);
            for (unsigned t = 0; t <= T; ++t)
                for (std::size_t v = 0; v < code.n; ++v) {
                    worst_nbp = std::max(worst_nbp, std::abs(static_cast<double>(bp.soft_trajectory[t][v] -
                                                                                 nbp.soft_trajectory[t][v])));
                    worst_drn = std::max(worst_drn, std::abs(static_cast<double>(ms.soft_trajectory[t][v] -
                                                                                 dr.soft_trajectory[t][v])));
                }
        }
        const bool ok = worst_nbp < 1e-9 && worst_drn < 1e-9;
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " unit-weight reductions: max |bp-nbp(1)| = " << worst_nbp
                  << ", max |minsum-drn(1)| = " << worst_drn << " (tolerance 1e-9, " << trials << " trials)\n";
    }

    // Gradient check against central finite differences. Zero-mean llr and
    // random targets keep the probed gradients large enough for the 64-bit
    // oracle; coordinates with negligible gradient are resampled.
    for (const std::string variant : {"drn", "nbp"}) {
        double worst_rel = 0.0;
        unsigned checked = 0;
        std::normal_distribution<double> noise(0.0, 1.5);
        std::uniform_real_distribution<double> jitter(-0.08, 0.08);
        unsigned attempts = 0;
        while (checked < grad_points && attempts < grad_points * 20) {
            ++attempts;
            std::vector<drn::Real> llr(code.n);
            std::vector<std::uint8_t> target(code.n);
            for (auto& v : llr) v = static_cast<drn::Real>(noise(gen));
            for (auto& b : target) b = gen() & 1;
            const double h = 1e-5;

            if (variant == "drn") {
                auto w = drn::DrnWeights::ones(code.graph.n_checks, T);
                auto flat = w.flatten();
                for (auto& x : flat) x += static_cast<drn::Real>(jitter(gen));
                w.unflatten(flat);
                drn::DrnTape tape;
                auto dec = drn::decode_drn(llr, code.graph, w, T, &tape);
                if (tape.min_tie_gap < 1e-3 || tape.min_clip_margin < 1e-3) continue;
                auto bce = drn::bce_loss(dec.soft_trajectory.back(), target);
                auto grad = drn::backward_drn(tape, code.graph, w, bce.dloss_ds);
                std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
                std::size_t i = pick(gen);
                for (int rs = 0; rs < 20 && std::abs(static_cast<double>(grad[i])) < 1e-4; ++rs) i = pick(gen);
                auto probe = [&](double delta) {
                    auto f2 = flat;
                    f2[i] += static_cast<drn::Real>(delta);
                    drn::DrnWeights w2 = w;
                    w2.unflatten(f2);
                    auto d2 = drn::decode_drn(llr, code.graph, w2, T);
                    return drn::bce_loss(d2.soft_trajectory.back(), target).loss;
                };
                const double fd = (probe(h) - probe(-h)) / (2 * h);
                const double an = static_cast<double>(grad[i]);
                const double rel = std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-8});
                worst_rel = std::max(worst_rel, rel);
                ++checked;
            } else {
                auto w = drn::NbpWeights::ones(code.graph, T);
                auto flat = w.flatten();
                for (auto& x : flat) x += static_cast<drn::Real>(jitter(gen));
                w.unflatten(flat);
                drn::NbpTape tape;
                auto dec = drn::decode_nbp(llr, code.graph, w, T, &tape);
                if (tape.min_clip_margin < 1e-3) continue;
                auto bce = drn::bce_loss(dec.soft_trajectory.back(), target);
                auto grad = drn::backward_nbp(tape, code.graph, w, bce.dloss_ds);
                std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
                std::size_t i = pick(gen);
                for (int rs = 0; rs < 20 && std::abs(static_cast<double>(grad[i])) < 1e-4; ++rs) i = pick(gen);
                auto probe = [&](double delta) {
                    auto f2 = flat;
                    f2[i] += static_cast<drn::Real>(delta);
                    drn::NbpWeights w2 = w;
                    w2.unflatten(f2);
                    auto d2 = drn::decode_nbp(llr, code.graph, w2, T);
                    return drn::bce_loss(d2.soft_trajectory.back(), target).loss;
                };
                const double fd = (probe(h) - probe(-h)) / (2 * h);
                const double an = static_cast<double>(grad[i]);
                const double rel = std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-8});
                worst_rel = std::max(worst_rel, rel);
                ++checked;
            }
        }
        const bool ok = checked >= grad_points && worst_rel < 1e-4;
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " gradient check (" << variant << "): worst rel err = " << worst_rel
                  << " over " << checked << " points (tolerance 1e-4)\n";
    }

    // Soft-output-vs-channel-LLR decision quality after one iteration.
    {
        drn::EvalConfig ecfg;
        ecfg.min_bit_errors = min_errors;
        ecfg.seed = common.seed;
        ecfg.workers = common.workers;
        auto rows = drn::s_vs_l_diagnostic(code, parse_snr_list(snr_text), ecfg);
        std::cout << "snr_db\tber_s\tber_l\n";
        bool ok = true;
        for (const auto& row : rows) {
            std::cout << row.snr_db << '\t' << row.using_s.ber << '\t' << row.using_l.ber << '\n';
            if (!(row.using_s.ci_high < row.using_l.ci_low)) ok = false;
        }
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL")
                  << " s-vs-l ordering: s-decision 95% interval below l-decision interval at every listed SNR\n";
    }

    return all_ok ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Belief-propagation and learned min-sum decoders for block codes"};
    app.set_version_flag("--version", drn::kToolVersion);
    app.require_subcommand(1);

    CommonArgs common;
    EvalArgs eval_args;
    drn::TrainConfig train_cfg;
    std::string train_variant = "drn";
    std::string train_source = "random_message";
    std::string train_snr = "1,2,3,4,5,6";
    unsigned diag_trials = 100, diag_grad_points = 20;
    std::string diag_snr = "3,4,5";
    std::uint64_t diag_min_errors = 200;

    auto add_common = [&common](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--code", common.code, "registry code name or alist path")->required();
        cmd->add_option("--codes-dir", common.codes_dir, "registry directory (env DRN_CODES_DIR)");
        cmd->add_option("--seed", common.seed, "master seed");
        cmd->add_option("--workers", common.workers, "worker threads (0 = all, 1 = serial)");
        cmd->add_option("--config", common.config_file, "JSON config file (flags override it)");
        if (needs_out) cmd->add_option("--out", common.out_dir, "output directory");
    };

    CLI::App* info = app.add_subcommand("info", "print structural statistics of a code");
    add_common(info, false);

    CLI::App* train = app.add_subcommand("train", "train nbp or drn weights");
    add_common(train, true);
    train->add_option("--variant", train_variant, "nbp|drn");
    train->add_option("--steps", train_cfg.steps, "optimizer steps");
    train->add_option("--lr", train_cfg.learning_rate, "learning rate");
    train->add_option("--rho", train_cfg.rho, "RMSprop decay");
    train->add_option("--samples-per-snr", train_cfg.samples_per_snr, "samples per SNR per batch");
    train->add_option("--snr", train_snr, "training SNR grid, comma separated");
    train->add_option("--iterations", train_cfg.iterations, "decoder iterations T");
    train->add_option("--source", train_source, "random_message|all_zero");
    train->add_option("--log-every", train_cfg.log_every, "log cadence in steps");

    CLI::App* eval_cmd = app.add_subcommand("eval", "Monte Carlo BER of one decoder");
    add_common(eval_cmd, true);
    std::string eval_variant = "bp";
    eval_cmd->add_option("--variant", eval_variant, "bp|minsum|nbp|drn");
    eval_cmd->add_option("--weights", eval_args.nbp_weights, "weight checkpoint for nbp/drn")
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--snr", eval_args.snr_text, "SNR list: '4,5,6' or '1-6'");
    eval_cmd->add_option("--iterations", eval_args.iterations, "decoder iterations T");
    eval_cmd->add_option("--min-errors", eval_args.min_errors, "bit errors to collect per SNR");
    eval_cmd->add_option("--max-codewords", eval_args.max_codewords, "codeword cap per SNR");
    eval_cmd->add_flag("--noiseless", eval_args.noiseless, "bypass channel noise (sanity path)");

    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo BER matrix across decoders");
    add_common(sweep, true);
    std::string sweep_variants = "bp,minsum,drn";
    sweep->add_option("--variants", sweep_variants, "comma-separated: bp,minsum,nbp,drn");
    sweep->add_option("--nbp-weights", eval_args.nbp_weights, "nbp checkpoint")->check(CLI::ExistingFile);
    sweep->add_option("--drn-weights", eval_args.drn_weights, "drn checkpoint")->check(CLI::ExistingFile);
    sweep->add_option("--snr", eval_args.snr_text, "SNR list: '4,5,6' or '1-6'");
    sweep->add_option("--iterations", eval_args.iterations, "decoder iterations T");
    sweep->add_option("--min-errors", eval_args.min_errors, "bit errors to collect per SNR");
    sweep->add_option("--max-codewords", eval_args.max_codewords, "codeword cap per SNR");

    CLI::App* diag = app.add_subcommand("diag", "run the invariant suites and print pass/fail");
    add_common(diag, false);
    diag->add_option("--trials", diag_trials, "unit-weight equivalence trials");
    diag->add_option("--grad-points", diag_grad_points, "finite-difference gradient probes per variant");
    diag->add_option("--snr", diag_snr, "SNR list for the s-vs-l lanes");
    diag->add_option("--min-errors", diag_min_errors, "bit errors per s-vs-l lane");

    try {
        app.parse(argc, argv);
        for (CLI::App* cmd : {info, train, eval_cmd, sweep, diag})
            if (cmd->parsed()) apply_config_file(cmd, common.config_file);

        if (info->parsed()) return cmd_info(common);
        if (train->parsed()) {
            train_cfg.snr_grid = parse_snr_list(train_snr);
            train_cfg.codeword_source = train_source == "all_zero" ? drn::CodewordSource::all_zero
                                                                   : drn::CodewordSource::random_message;
            return cmd_train(common, train_variant, train_cfg);
        }
        if (eval_cmd->parsed()) {
            eval_args.variants = {eval_variant};
            eval_args.drn_weights = eval_args.nbp_weights;  // single --weights flag serves either variant
            return cmd_eval(common, eval_args);
        }
        if (sweep->parsed()) {
            eval_args.variants.clear();
            std::istringstream ss(sweep_variants);
            std::string token;
            while (std::getline(ss, token, ',')) eval_args.variants.push_back(token);
            return cmd_eval(common, eval_args);
        }
        if (diag->parsed()) return cmd_diag(common, diag_trials, diag_grad_points, diag_snr, diag_min_errors);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const drn::DivergenceDetected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const drn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
