#include "drn/weights.hpp"

#include <fstream>

#include "drn/errors.hpp"
#include "json.hpp"

namespace drn {

NbpWeights NbpWeights::ones(const TannerGraph& graph, unsigned iterations) {
    NbpWeights w;
    w.iterations = iterations;
    w.n_vars = graph.n_vars;
    w.n_edges = graph.edge_count();
    w.w_in.assign(iterations, std::vector<Real>(w.n_vars, Real(1)));
    w.w_edge.assign(iterations, std::vector<Real>(w.n_edges, Real(1)));
    w.w_out.assign(w.n_vars, Real(1));
    w.w_out_edge.assign(w.n_edges, Real(1));
    return w;
}

std::vector<Real> NbpWeights::flatten() const {
    std::vector<Real> flat;
    flat.reserve(parameter_count());
    for (unsigned t = 0; t < iterations; ++t) {
        flat.insert(flat.end(), w_in[t].begin(), w_in[t].end());
        flat.insert(flat.end(), w_edge[t].begin(), w_edge[t].end());
    }
    flat.insert(flat.end(), w_out.begin(), w_out.end());
    flat.insert(flat.end(), w_out_edge.begin(), w_out_edge.end());
    return flat;
}

void NbpWeights::unflatten(std::span<const Real> flat) {
    if (flat.size() != parameter_count()) throw ShapeMismatch("NbpWeights::unflatten: size mismatch");
    std::size_t pos = 0;
    for (unsigned t = 0; t < iterations; ++t) {
        std::copy_n(flat.begin() + pos, n_vars, w_in[t].begin());
        pos += n_vars;
        std::copy_n(flat.begin() + pos, n_edges, w_edge[t].begin());
        pos += n_edges;
    }
    std::copy_n(flat.begin() + pos, n_vars, w_out.begin());
    pos += n_vars;
    std::copy_n(flat.begin() + pos, n_edges, w_out_edge.begin());
}

DrnWeights DrnWeights::ones(std::size_t n_checks, unsigned iterations) {
    DrnWeights w;
    w.iterations = iterations;
    w.n_checks = n_checks;
    w.w.assign(iterations, std::vector<Real>(n_checks, Real(1)));
    return w;
}

std::vector<Real> DrnWeights::flatten() const {
    std::vector<Real> flat;
    flat.reserve(parameter_count());
    for (const auto& block : w) flat.insert(flat.end(), block.begin(), block.end());
    return flat;
}

void DrnWeights::unflatten(std::span<const Real> flat) {
    if (flat.size() != parameter_count()) throw ShapeMismatch("DrnWeights::unflatten: size mismatch");
    for (unsigned t = 0; t < iterations; ++t)
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(t) * n_checks, n_checks, w[t].begin());
}

namespace {

constexpr const char* kFormatTag = "drn-weights-v1";

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write weight file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace

void save_nbp_weights(const NbpWeights& w, const std::string& code_name, const std::string& path) {
    nlohmann::json j;
    j["format"] = kFormatTag;
    j["variant"] = "nbp";
    j["code"] = code_name;
    j["iterations"] = w.iterations;
    j["shape"] = {{"vars", w.n_vars}, {"edges", w.n_edges}};
    j["values"] = {{"w_in", w.w_in}, {"w_edge", w.w_edge}, {"w_out", w.w_out}, {"w_out_edge", w.w_out_edge}};
    write_json(j, path);
}

void save_drn_weights(const DrnWeights& w, const std::string& code_name, const std::string& path) {
    nlohmann::json j;
    j["format"] = kFormatTag;
    j["variant"] = "drn";
    j["code"] = code_name;
    j["iterations"] = w.iterations;
    j["shape"] = {{"checks", w.n_checks}};
    j["values"] = {{"w", w.w}};
    write_json(j, path);
}

LoadedWeights load_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open weight file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("weight file: " + std::string(e.what()));
    }
    if (!j.contains("format") || j["format"] != kFormatTag)
        throw ParseError("weight file: missing or unsupported format tag (want " + std::string(kFormatTag) + ")");

    LoadedWeights loaded;
    loaded.variant = j.at("variant").get<std::string>();
    loaded.code = j.value("code", "");
    const unsigned iterations = j.at("iterations").get<unsigned>();
    if (loaded.variant == "nbp") {
        NbpWeights& w = loaded.nbp;
        w.iterations = iterations;
        w.n_vars = j.at("shape").at("vars").get<std::size_t>();
        w.n_edges = j.at("shape").at("edges").get<std::size_t>();
        w.w_in = j.at("values").at("w_in").get<std::vector<std::vector<Real>>>();
        w.w_edge = j.at("values").at("w_edge").get<std::vector<std::vector<Real>>>();
        w.w_out = j.at("values").at("w_out").get<std::vector<Real>>();
        w.w_out_edge = j.at("values").at("w_out_edge").get<std::vector<Real>>();
        if (w.w_in.size() != iterations || w.w_edge.size() != iterations)
            throw ShapeMismatch("weight file: iteration count disagrees with values");
    } else if (loaded.variant == "drn") {
        DrnWeights& w = loaded.drn;
        w.iterations = iterations;
        w.n_checks = j.at("shape").at("checks").get<std::size_t>();
        w.w = j.at("values").at("w").get<std::vector<std::vector<Real>>>();
        if (w.w.size() != iterations) throw ShapeMismatch("weight file: iteration count disagrees with values");
    } else {
        throw ParseError("weight file: unknown variant '" + loaded.variant + "'");
    }
    return loaded;
}

}  // namespace drn
