#ifndef DRN_REGISTRY_HPP
#define DRN_REGISTRY_HPP

#include <string>
#include <vector>

#include "drn/tanner.hpp"

namespace drn {

/// Directory layout: codes/<family>/<n>_<k>.alist plus codes/manifest.json
/// listing {name, family, n, k, path, source}.
struct RegistryEntry {
    std::string name;
    std::string family;
    std::size_t n = 0;
    std::size_t k = 0;
    std::string path;  // relative to the registry directory
    std::string source;
};

std::vector<RegistryEntry> load_manifest(const std::string& codes_dir);

/// Accepts either a registry name ("ldpc_49_24") or a filesystem path to an
/// alist file. Registry loads cross-check the declared k against n - rank(H).
CodeSpec resolve_code(const std::string& name_or_path, const std::string& codes_dir);

/// Filesystem path the same argument resolves to.
std::string resolve_code_path(const std::string& name_or_path, const std::string& codes_dir);

/// Default registry directory: $DRN_CODES_DIR if set, else "codes".
std::string default_codes_dir();

}  // namespace drn

#endif
