#include "drn/registry.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "drn/alist.hpp"
#include "json.hpp"

namespace drn {

std::vector<RegistryEntry> load_manifest(const std::string& codes_dir) {
    const std::filesystem::path manifest = std::filesystem::path(codes_dir) / "manifest.json";
    std::ifstream in(manifest);
    if (!in) throw ConfigError("cannot open registry manifest: " + manifest.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("registry manifest: " + std::string(e.what()));
    }
    std::vector<RegistryEntry> entries;
    for (const auto& item : j.at("codes")) {
        RegistryEntry e;
        e.name = item.at("name").get<std::string>();
        e.family = item.at("family").get<std::string>();
        e.n = item.at("n").get<std::size_t>();
        e.k = item.at("k").get<std::size_t>();
        e.path = item.at("path").get<std::string>();
        e.source = item.value("source", "");
        entries.push_back(std::move(e));
    }
    return entries;
}

CodeSpec resolve_code(const std::string& name_or_path, const std::string& codes_dir) {
    if (std::filesystem::exists(name_or_path) && std::filesystem::is_regular_file(name_or_path)) {
        Gf2Matrix h = read_alist_file(name_or_path);
        return make_code(std::filesystem::path(name_or_path).stem().string(), h);
    }
    for (const auto& e : load_manifest(codes_dir)) {
        if (e.name == name_or_path) {
            const auto file = std::filesystem::path(codes_dir) / e.path;
            Gf2Matrix h = read_alist_file(file.string());
            if (h.cols() != e.n)
                throw ConfigError("registry code '" + e.name + "': file has n=" + std::to_string(h.cols()) +
                                  ", manifest says " + std::to_string(e.n));
            return make_code(e.name, h, static_cast<long>(e.k));
        }
    }
    throw ConfigError("unknown code '" + name_or_path + "' (not a file, not in " + codes_dir + "/manifest.json)");
}

std::string resolve_code_path(const std::string& name_or_path, const std::string& codes_dir) {
    if (std::filesystem::exists(name_or_path) && std::filesystem::is_regular_file(name_or_path))
        return name_or_path;
    for (const auto& e : load_manifest(codes_dir)) {
        if (e.name == name_or_path) return (std::filesystem::path(codes_dir) / e.path).string();
    }
    throw ConfigError("unknown code '" + name_or_path + "' (not a file, not in " + codes_dir + "/manifest.json)");
}

std::string default_codes_dir() {
    if (const char* env = std::getenv("DRN_CODES_DIR")) return env;
    return "codes";
}

}  // namespace drn
