#include "drn/tanner.hpp"

#include <utility>

namespace drn {

TannerBuildResult build_tanner(const Gf2Matrix& h) {
    TannerBuildResult res;
    TannerGraph& g = res.graph;
    g.n_vars = static_cast<std::uint32_t>(h.cols());
    g.n_checks = static_cast<std::uint32_t>(h.rows());

    g.check_offsets.assign(g.n_checks + 1, 0);
    for (std::uint32_t c = 0; c < g.n_checks; ++c) {
        for (std::uint32_t v = 0; v < g.n_vars; ++v) {
            if (h.get(c, v)) g.edges.push_back({c, v});
        }
        g.check_offsets[c + 1] = static_cast<std::uint32_t>(g.edges.size());
        if (g.check_offsets[c + 1] == g.check_offsets[c])
            res.warnings.push_back("check " + std::to_string(c) + " has no edges (empty H row)");
    }

    g.var_offsets.assign(g.n_vars + 1, 0);
    for (const auto& e : g.edges) ++g.var_offsets[e.var + 1];
    for (std::uint32_t v = 0; v < g.n_vars; ++v) {
        g.var_offsets[v + 1] += g.var_offsets[v];
        if (g.var_offsets[v + 1] == g.var_offsets[v])
            res.warnings.push_back("variable " + std::to_string(v) +
                                   " has no edges (isolated: receives no check messages)");
    }
    g.var_edges.resize(g.edges.size());
    std::vector<std::uint32_t> cursor(g.n_vars, 0);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        const std::uint32_t v = g.edges[e].var;
        g.var_edges[g.var_offsets[v] + cursor[v]] = e;
        ++cursor[v];
    }
    return res;
}

double density(const Gf2Matrix& h) {
    return static_cast<double>(h.count_ones()) / (static_cast<double>(h.rows()) * static_cast<double>(h.cols()));
}

CodeSpec make_code(std::string name, const Gf2Matrix& h, long expected_k) {
    CodeSpec spec{std::move(name), h.cols(), 0, h, {}, 0.0, {}};
    spec.generator = generator_from_parity(h);
    spec.k = spec.generator.k;
    if (expected_k >= 0 && static_cast<std::size_t>(expected_k) != spec.k)
        throw ConfigError("code '" + spec.name + "': declared k=" + std::to_string(expected_k) +
                          " but n - rank(H) = " + std::to_string(spec.k));
    spec.rate = static_cast<double>(spec.k) / static_cast<double>(spec.n);
    spec.graph = build_tanner(h).graph;
    return spec;
}

}  // namespace drn
