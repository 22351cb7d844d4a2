// Throughput comparison of the serial reference path against the
// OpenMP-parallel Monte Carlo driver, per decoder variant.

#include <chrono>
#include <iostream>

#include "drn/eval.hpp"
#include "drn/registry.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
    const std::string code_name = argc > 1 ? argv[1] : "ldpc_49_24";
    const std::uint64_t codewords = argc > 2 ? std::stoull(argv[2]) : 20000;

    drn::CodeSpec code = drn::resolve_code(code_name, drn::default_codes_dir());
    const unsigned T = 5;
    auto nbp_w = drn::NbpWeights::ones(code.graph, T);
    auto drn_w = drn::DrnWeights::ones(code.graph.n_checks, T);

#ifdef _OPENMP
    const int max_workers = omp_get_max_threads();
#else
    const int max_workers = 1;
#endif
    std::cout << "code " << code.name << ", " << codewords << " codewords per lane, T=" << T << ", "
              << max_workers << " worker(s) available\n";
    std::cout << "variant\tserial_kcw_s\tparallel_kcw_s\tspeedup\tchecksum_match\n";

    for (const auto variant : {drn::Variant::bp, drn::Variant::minsum, drn::Variant::nbp, drn::Variant::drn}) {
        drn::DecoderSetup setup{variant, T, &nbp_w, &drn_w};
        drn::EvalConfig cfg;
        cfg.min_bit_errors = UINT64_MAX;  // fixed workload: run to the cap
        cfg.max_codewords = codewords;
        cfg.seed = 7;

        auto timed = [&](unsigned workers, drn::SnrPoint& out) {
            cfg.workers = workers;
            const auto t0 = std::chrono::steady_clock::now();
            out = drn::estimate_ber(setup, code, 3.0, cfg);
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };

        drn::SnrPoint serial_pt, parallel_pt;
        const double serial_s = timed(1, serial_pt);
        const double parallel_s = timed(0, parallel_pt);
        const bool match = serial_pt.bit_errors == parallel_pt.bit_errors &&
                           serial_pt.frame_errors == parallel_pt.frame_errors;
        std::printf("%s\t%.1f\t%.1f\t%.2fx\t%s\n", drn::to_string(variant).c_str(),
                    codewords / serial_s / 1000.0, codewords / parallel_s / 1000.0, serial_s / parallel_s,
                    match ? "yes" : "NO");
    }
    return 0;
}
