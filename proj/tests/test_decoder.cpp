#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "drn/channel.hpp"
#include "drn/codegen.hpp"
#include "drn/nbp.hpp"
#include "drn/registry.hpp"
#include "oracles.hpp"

using namespace drn;

namespace {

std::vector<Real> random_llr(std::size_t n, std::mt19937& gen, double stddev = 3.0) {
    std::normal_distribution<double> dist(0.0, stddev);
    std::vector<Real> llr(n);
    for (auto& v : llr) v = static_cast<Real>(dist(gen));
    return llr;
}

CodeSpec tree_code() {
    // H = [[1,1,0,0],[0,1,1,1]] is cycle-free with one shared variable.
    Gf2Matrix h(2, 4);
    h.set(0, 0, 1);
    h.set(0, 1, 1);
    h.set(1, 1, 1);
    h.set(1, 2, 1);
    h.set(1, 3, 1);
    return make_code("tree", h);
}

}  // namespace

TEST_CASE("check_sum_product pinned and symmetry properties") {
    std::vector<Real> two{2.0, 2.0};
    // 2 artanh(tanh(1)^2), independent high-precision evaluation
    CHECK(check_sum_product(two) == doctest::Approx(1.3250027473578644).epsilon(1e-12));

    std::vector<Real> with_zero{0.0, 1.7, -2.3};
    CHECK(check_sum_product(with_zero) == Real(0));

    std::mt19937 gen(13);
    std::uniform_real_distribution<double> dist(0.1, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Real> x(3);
        for (auto& v : x) v = static_cast<Real>(dist(gen));
        const Real base = check_sum_product(x);
        auto flipped = x;
        flipped[trial % 3] = -flipped[trial % 3];
        CHECK(check_sum_product(flipped) == doctest::Approx(-base).epsilon(1e-12));
    }
}

TEST_CASE("check_min_sum pinned values and over-estimate property") {
    std::vector<Real> in{3.0, -2.0, 0.5};
    CHECK(check_min_sum(in, 1.0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(check_min_sum(in, 0.0) == Real(0));

    std::mt19937 gen(29);
    std::normal_distribution<double> dist(0.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Real> x(2 + trial % 5);
        for (auto& v : x) v = static_cast<Real>(dist(gen));
        CHECK(std::fabs(check_min_sum(x, 1.0)) >= std::fabs(check_sum_product(x)) - 1e-12);
    }
}

TEST_CASE("hard_decision: sign rule and zero ties") {
    std::vector<Real> s{-1.0, 0.5};
    CHECK(hard_decision(s) == BitVec{1, 0});
    std::vector<Real> zeros(4, Real(0));
    CHECK(hard_decision(zeros) == BitVec(4, 0));
}

TEST_CASE("sum-product on the (3,2) single parity check code is exact after 1 iteration") {
    auto code = make_code("spc", spc_h(3));
    const auto codewords = oracles::enumerate_codewords(code.h);
    CHECK(codewords.size() == 4);
    std::mt19937 gen(101);
    for (int trial = 0; trial < 300; ++trial) {
        auto llr = random_llr(3, gen);
        auto result = decode_sum_product(llr, code.graph, 1);
        std::vector<double> dl(llr.begin(), llr.end());
        auto exact = oracles::map_posterior_llr(codewords, dl);
        for (int v = 0; v < 3; ++v)
            CHECK(static_cast<double>(result.soft_trajectory[1][v]) == doctest::Approx(exact[v]).epsilon(1e-9));
    }
}

TEST_CASE("sum-product on a cycle-free H matches the exhaustive bitwise-MAP oracle") {
    auto code = tree_code();
    const auto codewords = oracles::enumerate_codewords(code.h);
    std::mt19937 gen(555);
    for (int trial = 0; trial < 300; ++trial) {
        auto llr = random_llr(4, gen, 2.0);
        auto result = decode_sum_product(llr, code.graph, 2);  // diameter iterations
        std::vector<double> dl(llr.begin(), llr.end());
        auto exact = oracles::map_posterior_llr(codewords, dl);
        for (int v = 0; v < 4; ++v)
            CHECK(static_cast<double>(result.soft_trajectory[2][v]) == doctest::Approx(exact[v]).epsilon(1e-9));
    }
}

TEST_CASE("noiseless llr decodes immediately with converged_at = 1") {
    auto code = make_code("hamming", hamming_7_4_h());
    std::mt19937 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        BitVec msg(code.k);
        for (auto& b : msg) b = gen() & 1;
        BitVec cw = encode(code.generator, msg);
        std::vector<Real> llr(code.n);
        for (std::size_t i = 0; i < code.n; ++i) llr[i] = cw[i] ? Real(-18) : Real(18);
        for (int variant = 0; variant < 4; ++variant) {
            DecodeResult res;
            switch (variant) {
                case 0: res = decode_sum_product(llr, code.graph, 5); break;
                case 1: res = decode_min_sum(llr, code.graph, 5); break;
                case 2:
                    res = decode_nbp(llr, code.graph, NbpWeights::ones(code.graph, 5), 5);
                    break;
                default:
                    res = decode_drn(llr, code.graph, DrnWeights::ones(code.graph.n_checks, 5), 5);
                    break;
            }
            CHECK(res.hard_bits == cw);
            CHECK(res.converged_at == 1);
        }
    }
}

TEST_CASE("min-sum magnitudes dominate sum-product on the (3,2) tree code, signs equal") {
    auto code = make_code("spc", spc_h(3));
    std::mt19937 gen(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto llr = random_llr(3, gen, 2.0);
        auto sp = decode_sum_product(llr, code.graph, 1);
        auto ms = decode_min_sum(llr, code.graph, 1);
        for (int v = 0; v < 3; ++v) {
            // Degree-1 variables: s - l is exactly the single check message.
            const double extr_sp = sp.soft_trajectory[1][v] - llr[v];
            const double extr_ms = ms.soft_trajectory[1][v] - llr[v];
            CHECK(std::fabs(extr_ms) >= std::fabs(extr_sp) - 1e-12);
            if (std::fabs(extr_sp) > 1e-9) CHECK(extr_sp * extr_ms >= 0.0);
        }
    }
}

TEST_CASE("unit-weight reductions on Hamming(7,4) and LDPC(49,24)") {
    std::mt19937 gen(2025);
    for (const auto& h : {hamming_7_4_h(), array_ldpc_h(4, 7)}) {
        auto code = make_code("c", h);
        auto nbp_w = NbpWeights::ones(code.graph, 5);
        auto drn_w = DrnWeights::ones(code.graph.n_checks, 5);
        double worst_nbp = 0.0, worst_drn = 0.0;
        for (int trial = 0; trial < 120; ++trial) {
            auto llr = random_llr(code.n, gen, 4.0);
            auto bp = decode_sum_product(llr, code.graph, 5);
            auto nbp = decode_nbp(llr, code.graph, nbp_w, 5);
            auto ms = decode_min_sum(llr, code.graph, 5);
            auto dr = decode_drn(llr, code.graph, drn_w, 5);
            for (int t = 0; t <= 5; ++t)
                for (std::size_t v = 0; v < code.n; ++v) {
                    worst_nbp = std::max(worst_nbp,
                                         std::abs(static_cast<double>(bp.soft_trajectory[t][v] -
                                                                      nbp.soft_trajectory[t][v])));
                    worst_drn = std::max(worst_drn,
                                         std::abs(static_cast<double>(ms.soft_trajectory[t][v] -
                                                                      dr.soft_trajectory[t][v])));
                }
            // Hard decisions agree except at exact soft-value ties, where the
            // two algebraic routes may land on opposite sides of zero.
            for (std::size_t v = 0; v < code.n; ++v) {
                if (std::fabs(static_cast<double>(ms.soft_trajectory[5][v])) > 1e-9)
                    CHECK(ms.hard_bits[v] == dr.hard_bits[v]);
                if (std::fabs(static_cast<double>(bp.soft_trajectory[5][v])) > 1e-9)
                    CHECK(bp.hard_bits[v] == nbp.hard_bits[v]);
            }
        }
        CHECK(worst_nbp < 1e-9);
        CHECK(worst_drn < 1e-9);
    }
}

TEST_CASE("residual-input identity: s_prev - u_prev equals the v-to-c message") {
    auto code = make_code("ldpc", array_ldpc_h(4, 7));
    std::mt19937 gen(4242);
    for (int trial = 0; trial < 20; ++trial) {
        auto llr = random_llr(code.n, gen, 2.5);
        DecoderState state;
        decode_sum_product(llr, code.graph, 5, &state);
        for (unsigned t = 1; t <= 5; ++t) {
            for (std::size_t e = 0; e < code.graph.edge_count(); ++e) {
                const auto v = code.graph.edges[e].var;
                const double u_prev = t >= 2 ? state.c2v[t - 2][e] : 0.0;
                const double direct = state.s[t - 1][v] - u_prev;
                // Also the direct extrinsic sum route (the update as written).
                double extr = llr[v];
                for (std::uint32_t idx = code.graph.var_offsets[v]; idx < code.graph.var_offsets[v + 1]; ++idx) {
                    const std::uint32_t in_edge = code.graph.var_edges[idx];
                    if (in_edge != e && t >= 2) extr += state.c2v[t - 2][in_edge];
                }
                if (std::fabs(direct) < static_cast<double>(kMessageClip)) {
                    CHECK(state.v2c[t - 1][e] == doctest::Approx(direct).epsilon(1e-12));
                    CHECK(state.v2c[t - 1][e] == doctest::Approx(extr).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("channel symmetry: codeword sign patterns commute with all decoders") {
    // Sign-equivariance holds for sign patterns that satisfy every parity
    // check, i.e. modulated codewords; each check then sees an even number
    // of flips on its extrinsic inputs. All-ones negation is the special
    // case where the all-ones word is in the code (covered below).
    auto code = make_code("ldpc", array_ldpc_h(4, 7));
    std::mt19937 gen(31337);
    std::uniform_real_distribution<double> wdist(0.6, 1.4);

    auto nbp_w = NbpWeights::ones(code.graph, 4);
    auto drn_w = DrnWeights::ones(code.graph.n_checks, 4);
    for (auto& row : drn_w.w)
        for (auto& w : row) w = static_cast<Real>(wdist(gen));
    for (auto& row : nbp_w.w_edge)
        for (auto& w : row) w = static_cast<Real>(wdist(gen));

    for (int trial = 0; trial < 30; ++trial) {
        auto llr = random_llr(code.n, gen, 3.0);
        BitVec pattern_bits(code.k);
        for (auto& b : pattern_bits) b = gen() & 1;
        const BitVec cw = encode(code.generator, pattern_bits);
        auto flipped = llr;
        for (std::size_t v = 0; v < code.n; ++v)
            if (cw[v]) flipped[v] = -flipped[v];

        for (int variant = 0; variant < 4; ++variant) {
            DecodeResult pos, res;
            switch (variant) {
                case 0:
                    pos = decode_sum_product(llr, code.graph, 4);
                    res = decode_sum_product(flipped, code.graph, 4);
                    break;
                case 1:
                    pos = decode_min_sum(llr, code.graph, 4);
                    res = decode_min_sum(flipped, code.graph, 4);
                    break;
                case 2:
                    pos = decode_nbp(llr, code.graph, nbp_w, 4);
                    res = decode_nbp(flipped, code.graph, nbp_w, 4);
                    break;
                default:
                    pos = decode_drn(llr, code.graph, drn_w, 4);
                    res = decode_drn(flipped, code.graph, drn_w, 4);
                    break;
            }
            for (int t = 0; t <= 4; ++t)
                for (std::size_t v = 0; v < code.n; ++v) {
                    const double expected = (cw[v] ? -1.0 : 1.0) * static_cast<double>(pos.soft_trajectory[t][v]);
                    CHECK(static_cast<double>(res.soft_trajectory[t][v]) ==
                          doctest::Approx(expected).epsilon(1e-12));
                }
            for (std::size_t v = 0; v < code.n; ++v) {
                if (std::fabs(static_cast<double>(pos.soft_trajectory[4][v])) > 1e-12)
                    CHECK(res.hard_bits[v] == (pos.hard_bits[v] ^ cw[v]));
            }
        }
    }
}

TEST_CASE("channel symmetry: full negation on a code containing the all-ones word") {
    auto code = make_code("hamming", hamming_7_4_h());
    BitVec ones(code.n, 1);
    REQUIRE(syndrome(code.h, ones) == BitVec(code.h.rows(), 0));
    std::mt19937 gen(404);
    for (int trial = 0; trial < 50; ++trial) {
        auto llr = random_llr(code.n, gen, 3.0);
        auto neg = llr;
        for (auto& v : neg) v = -v;
        auto pos = decode_sum_product(llr, code.graph, 5);
        auto negres = decode_sum_product(neg, code.graph, 5);
        for (int t = 0; t <= 5; ++t)
            for (std::size_t v = 0; v < code.n; ++v)
                CHECK(static_cast<double>(negres.soft_trajectory[t][v]) ==
                      doctest::Approx(-static_cast<double>(pos.soft_trajectory[t][v])).epsilon(1e-12));
    }
}

TEST_CASE("nbp: zero input weights at t=1 zero the first v-to-c layer") {
    auto code = make_code("hamming", hamming_7_4_h());
    auto w = NbpWeights::ones(code.graph, 2);
    for (auto& x : w.w_in[0]) x = Real(0);
    for (auto& x : w.w_edge[0]) x = Real(0);
    std::mt19937 gen(8);
    auto llr = random_llr(code.n, gen);
    NbpTape tape;
    decode_nbp(llr, code.graph, w, 2, &tape);
    for (Real v : tape.iters[0].v2c) CHECK(v == Real(0));
}

TEST_CASE("nbp rejects mis-shaped weights") {
    auto code = make_code("hamming", hamming_7_4_h());
    auto w = NbpWeights::ones(code.graph, 3);
    std::vector<Real> llr(code.n, Real(1));
    CHECK_THROWS_AS(decode_nbp(llr, code.graph, w, 5), ShapeMismatch);
    auto spc = make_code("spc", spc_h(3));
    std::vector<Real> llr3(3, Real(1));
    CHECK_THROWS_AS(decode_nbp(llr3, spc.graph, w, 3), ShapeMismatch);
}

TEST_CASE("drn rejects mis-shaped weights") {
    auto code = make_code("hamming", hamming_7_4_h());
    auto w = DrnWeights::ones(code.graph.n_checks, 3);
    std::vector<Real> llr(code.n, Real(1));
    CHECK_THROWS_AS(decode_drn(llr, code.graph, w, 5), ShapeMismatch);
    auto w2 = DrnWeights::ones(code.graph.n_checks + 1, 5);
    CHECK_THROWS_AS(decode_drn(llr, code.graph, w2, 5), ShapeMismatch);
}

TEST_CASE("drn single block on the (3,2) code matches the hand computation") {
    auto code = make_code("spc", spc_h(3));
    auto w = DrnWeights::ones(1, 1);
    std::vector<Real> llr{1.5, -0.75, 2.25};
    DrnTape tape;
    auto res = decode_drn(llr, code.graph, w, 1, &tape);

    // Hand-evaluated residual inputs, activations, and block outputs:
    // a = l; m = extrinsic sign*min; b = a + m.
    const auto& blk = tape.blocks[0];
    CHECK(blk.a[0] == doctest::Approx(1.5));
    CHECK(blk.a[1] == doctest::Approx(-0.75));
    CHECK(blk.a[2] == doctest::Approx(2.25));
    CHECK(blk.m[0] == doctest::Approx(-0.75));   // sign(-0.75)sign(2.25)min(0.75,2.25)
    CHECK(blk.m[1] == doctest::Approx(1.5));     // sign(1.5)sign(2.25)min(1.5,2.25)
    CHECK(blk.m[2] == doctest::Approx(-0.75));   // sign(1.5)sign(-0.75)min(1.5,0.75)
    const double b0 = blk.a[0] + blk.m[0];
    const double b1 = blk.a[1] + blk.m[1];
    const double b2 = blk.a[2] + blk.m[2];
    CHECK(b0 == doctest::Approx(0.75));
    CHECK(b1 == doctest::Approx(0.75));
    CHECK(b2 == doctest::Approx(1.5));
    // Soft output telescopes to l + m.
    CHECK(res.soft_trajectory[1][0] == doctest::Approx(1.5 - 0.75));
    CHECK(res.soft_trajectory[1][1] == doctest::Approx(-0.75 + 1.5));
    CHECK(res.soft_trajectory[1][2] == doctest::Approx(2.25 - 0.75));
}

TEST_CASE("decoders are pure: shared graph and weights across calls") {
    auto code = make_code("ldpc", array_ldpc_h(4, 7));
    auto w = DrnWeights::ones(code.graph.n_checks, 5);
    std::mt19937 gen(17);
    auto llr = random_llr(code.n, gen);
    auto first = decode_drn(llr, code.graph, w, 5);
    auto second = decode_drn(llr, code.graph, w, 5);
    CHECK(first.hard_bits == second.hard_bits);
    for (int t = 0; t <= 5; ++t) CHECK(first.soft_trajectory[t] == second.soft_trajectory[t]);
}
