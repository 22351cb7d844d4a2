// Writes the bundled code registry: array LDPC, primitive BCH, polar, and
// two toy codes, as alist files plus a manifest. Fully deterministic.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "drn/alist.hpp"
#include "drn/codegen.hpp"
#include "drn/tanner.hpp"
#include "json.hpp"

namespace {

struct Entry {
    std::string name, family, source;
    drn::Gf2Matrix h;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string out_dir = argc > 1 ? argv[1] : "codes";
    constexpr double kPolarDesignSnrDb = 2.0;

    std::vector<Entry> entries;
    auto add = [&entries](std::string family, std::string source, drn::Gf2Matrix h, std::string name = "") {
        entries.push_back({std::move(name), std::move(family), std::move(source), std::move(h)});
    };

    add("ldpc", "array code, p=7 gamma=4 (overcomplete quasi-cyclic H)", drn::array_ldpc_h(4, 7));
    add("ldpc", "array code, p=11 gamma=6 (overcomplete quasi-cyclic H)", drn::array_ldpc_h(6, 11));
    add("ldpc", "array code, p=11 gamma=5 (overcomplete quasi-cyclic H)", drn::array_ldpc_h(5, 11));
    add("ldpc", "array code, p=11 gamma=4 (overcomplete quasi-cyclic H)", drn::array_ldpc_h(4, 11));
    add("bch", "primitive BCH, t=3, H from parity polynomial shifts", drn::bch_h(5, 3));
    add("bch", "primitive BCH, t=5, H from parity polynomial shifts", drn::bch_h(6, 5));
    add("bch", "primitive BCH, t=3, H from parity polynomial shifts", drn::bch_h(6, 3));
    add("bch", "primitive BCH, t=2, H from parity polynomial shifts", drn::bch_h(6, 2));
    add("polar", "polar dual-basis H, Bhattacharyya design @ 2 dB", drn::polar_h(64, 32, kPolarDesignSnrDb));
    add("polar", "polar dual-basis H, Bhattacharyya design @ 2 dB", drn::polar_h(64, 48, kPolarDesignSnrDb));
    add("polar", "polar dual-basis H, Bhattacharyya design @ 2 dB", drn::polar_h(128, 64, kPolarDesignSnrDb));
    add("polar", "polar dual-basis H, Bhattacharyya design @ 2 dB", drn::polar_h(128, 86, kPolarDesignSnrDb));
    add("polar", "polar dual-basis H, Bhattacharyya design @ 2 dB", drn::polar_h(128, 96, kPolarDesignSnrDb));
    add("misc", "Hamming code, binary-counter columns", drn::hamming_7_4_h(), "hamming_7_4");
    add("misc", "single parity check", drn::spc_h(3), "spc_3_2");

    nlohmann::json manifest;
    manifest["codes"] = nlohmann::json::array();

    for (auto& e : entries) {
        const auto rr = drn::row_reduce(e.h);
        const std::size_t n = e.h.cols();
        const std::size_t k = n - rr.rank;
        if (e.name.empty()) e.name = e.family + "_" + std::to_string(n) + "_" + std::to_string(k);
        const std::string rel = e.family + "/" + std::to_string(n) + "_" + std::to_string(k) + ".alist";
        write_file(std::filesystem::path(out_dir) / rel, drn::to_alist(e.h));
        manifest["codes"].push_back({{"name", e.name},
                                     {"family", e.family},
                                     {"n", n},
                                     {"k", k},
                                     {"path", rel},
                                     {"source", e.source}});
        std::cout << e.name << "  rows=" << e.h.rows() << "  edges=" << e.h.count_ones()
                  << "  density=" << drn::density(e.h) << "\n";
    }

    write_file(std::filesystem::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << entries.size() << " codes to " << out_dir << "\n";
    return 0;
}
