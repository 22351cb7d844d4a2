#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "drn/alist.hpp"
#include "drn/codegen.hpp"
#include "drn/tanner.hpp"

using namespace drn;

namespace {

const char* kSmallAlist =
    "3 2\n"
    "1 2\n"
    "1 2 1\n"
    "2 2\n"
    "1\n"
    "1 2\n"
    "2\n"
    "1 2\n"
    "2 3\n";

}  // namespace

TEST_CASE("parse_alist transcribes a small matrix") {
    // H = [[1,1,0],[0,1,1]]
    Gf2Matrix h = parse_alist(kSmallAlist);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 3);
    CHECK(h.get(0, 0) == 1);
    CHECK(h.get(0, 1) == 1);
    CHECK(h.get(0, 2) == 0);
    CHECK(h.get(1, 0) == 0);
    CHECK(h.get(1, 1) == 1);
    CHECK(h.get(1, 2) == 1);
}

TEST_CASE("parse_alist accepts zero padding") {
    const char* padded =
        "3 2\n"
        "2 2\n"
        "1 2 1\n"
        "2 2\n"
        "1 0\n"
        "1 2\n"
        "2 0\n"
        "1 2\n"
        "2 3\n";
    Gf2Matrix h = parse_alist(padded);
    CHECK(h.count_ones() == 4);
}

TEST_CASE("parse_alist rejects inconsistent row/column lists") {
    const char* bad =
        "3 2\n"
        "1 2\n"
        "1 2 1\n"
        "2 2\n"
        "1\n"
        "1 2\n"
        "2\n"
        "1 2\n"
        "1 3\n";  // row 2 claims column 1, column lists say column 2
    CHECK_THROWS_AS(parse_alist(bad), InconsistentAdjacency);
}

TEST_CASE("parse_alist rejects malformed counts and bad indices") {
    CHECK_THROWS_AS(parse_alist("3\n1 2\n"), ParseError);
    const char* out_of_range =
        "3 2\n"
        "1 2\n"
        "1 2 1\n"
        "2 2\n"
        "5\n"
        "1 2\n"
        "2\n"
        "1 2\n"
        "2 3\n";
    CHECK_THROWS_AS(parse_alist(out_of_range), IndexOutOfRange);
}

TEST_CASE("Hamming(7,4) alist round-trips and has rank 3") {
    auto h = hamming_7_4_h();
    Gf2Matrix reparsed = parse_alist(to_alist(h));
    CHECK(reparsed == h);
    CHECK(row_reduce(reparsed).rank == 3);
}

TEST_CASE("alist round-trip property on random matrices") {
    std::mt19937 gen(19);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t rows = 1 + gen() % 12, cols = 1 + gen() % 20;
        Gf2Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, (gen() % 4) == 0);
        CHECK(parse_alist(to_alist(m)) == m);
    }
}

TEST_CASE("build_tanner on a single check") {
    Gf2Matrix h(1, 3);
    for (int j = 0; j < 3; ++j) h.set(0, j, 1);
    auto built = build_tanner(h);
    const TannerGraph& g = built.graph;
    CHECK(g.edge_count() == 3);
    CHECK(g.check_degree(0) == 3);
    for (std::uint32_t v = 0; v < 3; ++v) CHECK(g.var_degree(v) == 1);
    CHECK(built.warnings.empty());
}

TEST_CASE("build_tanner identity: all degrees one") {
    auto built = build_tanner(Gf2Matrix::identity(3));
    CHECK(built.graph.edge_count() == 3);
    for (std::uint32_t v = 0; v < 3; ++v) {
        CHECK(built.graph.var_degree(v) == 1);
        CHECK(built.graph.check_degree(v) == 1);
    }
}

TEST_CASE("build_tanner warns on empty rows and columns") {
    Gf2Matrix h(2, 3);
    h.set(0, 0, 1);
    h.set(0, 1, 1);  // row 1 empty; column 2 isolated
    auto built = build_tanner(h);
    CHECK(built.warnings.size() == 2);
}

TEST_CASE("LDPC(49,24) edge count equals the H ones count") {
    auto h = array_ldpc_h(4, 7);
    std::size_t ones = 0;
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c) ones += static_cast<std::size_t>(h.get(r, c));
    auto built = build_tanner(h);
    CHECK(built.graph.edge_count() == ones);
    CHECK(built.graph.edge_count() == 196);
}

TEST_CASE("edge ids recover the same (check, var) from both adjacencies") {
    auto h = array_ldpc_h(4, 7);
    const TannerGraph g = build_tanner(h).graph;
    // via check ranges
    std::vector<std::pair<std::uint32_t, std::uint32_t>> from_check(g.edge_count());
    for (std::uint32_t c = 0; c < g.n_checks; ++c)
        for (std::uint32_t e = g.check_offsets[c]; e < g.check_offsets[c + 1]; ++e)
            from_check[e] = {c, g.edges[e].var};
    // via var adjacency
    for (std::uint32_t v = 0; v < g.n_vars; ++v)
        for (std::uint32_t e : g.var_adjacency(v)) {
            CHECK(from_check[e].first == g.edges[e].check);
            CHECK(from_check[e].second == v);
        }
}

TEST_CASE("edge ids are the lexicographic rank of (check, var)") {
    auto g = build_tanner(bch_h(5, 3)).graph;
    for (std::size_t e = 1; e < g.edge_count(); ++e) {
        const auto& prev = g.edges[e - 1];
        const auto& cur = g.edges[e];
        CHECK((prev.check < cur.check || (prev.check == cur.check && prev.var < cur.var)));
    }
}

TEST_CASE("density") {
    CHECK(density(Gf2Matrix::identity(4)) == doctest::Approx(0.25));
    Gf2Matrix ones(2, 3);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) ones.set(r, c, 1);
    CHECK(density(ones) == doctest::Approx(1.0));
    CHECK(density(hamming_7_4_h()) == doctest::Approx(12.0 / 21.0));
}

TEST_CASE("make_code cross-checks k") {
    auto h = hamming_7_4_h();
    CHECK_NOTHROW(make_code("hamming", h, 4));
    CHECK_THROWS_AS(make_code("hamming", h, 3), ConfigError);
    auto spec = make_code("hamming", h);
    CHECK(spec.k == 4);
    CHECK(spec.rate == doctest::Approx(4.0 / 7.0));
}

TEST_CASE("generated code families have the advertised (n, k)") {
    struct Expect {
        Gf2Matrix h;
        std::size_t n, k, rows;
    };
    const Expect cases[] = {
        {array_ldpc_h(4, 7), 49, 24, 28},   {array_ldpc_h(6, 11), 121, 60, 66},
        {array_ldpc_h(5, 11), 121, 70, 55}, {array_ldpc_h(4, 11), 121, 80, 44},
        {bch_h(5, 3), 31, 16, 15},          {bch_h(6, 5), 63, 36, 27},
        {bch_h(6, 3), 63, 45, 18},          {bch_h(6, 2), 63, 51, 12},
        {polar_h(64, 32, 2.0), 64, 32, 32}, {polar_h(128, 86, 2.0), 128, 86, 42},
    };
    for (const auto& c : cases) {
        CHECK(c.h.cols() == c.n);
        CHECK(c.h.rows() == c.rows);
        CHECK(c.n - row_reduce(c.h).rank == c.k);
    }
}

TEST_CASE("cyclic BCH structure: shifted codewords stay codewords") {
    auto h = bch_h(6, 2);
    auto gen = generator_from_parity(h);
    std::mt19937 rng(11);
    BitVec msg(gen.k);
    for (auto& b : msg) b = rng() & 1;
    BitVec cw = encode(gen, msg);
    BitVec shifted(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i) shifted[(i + 1) % cw.size()] = cw[i];
    CHECK(syndrome(h, shifted) == BitVec(h.rows(), 0));
}
