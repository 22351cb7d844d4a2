#include "drn/codegen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace drn {

Gf2Matrix array_ldpc_h(unsigned gamma, unsigned p) {
    if (gamma < 1 || gamma > p) throw ConfigError("array_ldpc_h: need 1 <= gamma <= p");
    const std::size_t n = static_cast<std::size_t>(p) * p;
    Gf2Matrix h(static_cast<std::size_t>(gamma) * p, n);
    for (unsigned i = 0; i < gamma; ++i)
        for (unsigned j = 0; j < p; ++j)
            for (unsigned r = 0; r < p; ++r) h.set(i * p + r, j * p + (r + i * j) % p, 1);
    return h;
}

namespace {

struct Gf2m {
    unsigned m;
    unsigned size;  // 2^m
    std::vector<unsigned> exp_table;
    std::vector<unsigned> log_table;

    explicit Gf2m(unsigned m_, unsigned primitive) : m(m_), size(1u << m_) {
        exp_table.assign(2 * size, 0);
        log_table.assign(size, 0);
        unsigned x = 1;
        for (unsigned i = 0; i < size - 1; ++i) {
            exp_table[i] = x;
            log_table[x] = i;
            x <<= 1;
            if (x & size) x ^= primitive;
        }
        for (unsigned i = size - 1; i < 2 * size; ++i) exp_table[i] = exp_table[i - (size - 1)];
    }

    unsigned mul(unsigned a, unsigned b) const {
        if (a == 0 || b == 0) return 0;
        return exp_table[log_table[a] + log_table[b]];
    }
};

unsigned primitive_poly(unsigned m) {
    switch (m) {
        case 3: return 0b1011;      // x^3+x+1
        case 4: return 0b10011;     // x^4+x+1
        case 5: return 0b100101;    // x^5+x^2+1
        case 6: return 0b1000011;   // x^6+x+1
        case 7: return 0b10001001;  // x^7+x^3+1
        default: throw ConfigError("bch: unsupported field degree");
    }
}

// Binary polynomials, coefficients degree-ascending.
std::vector<std::uint8_t> poly_mul(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::vector<std::uint8_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= b[j];
    return r;
}

std::vector<std::uint8_t> poly_div_exact(std::vector<std::uint8_t> num, const std::vector<std::uint8_t>& den) {
    const std::size_t dn = den.size() - 1;
    std::vector<std::uint8_t> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        if (!num[i]) continue;
        q[i - dn] = 1;
        for (std::size_t j = 0; j < den.size(); ++j) num[i - dn + j] ^= den[j];
    }
    for (auto v : num)
        if (v) throw ConfigError("bch: x^n - 1 not divisible by g(x)");
    return q;
}

}  // namespace

std::vector<std::uint8_t> bch_generator_poly(unsigned m, unsigned t) {
    const unsigned n = (1u << m) - 1;
    Gf2m field(m, primitive_poly(m));

    std::vector<std::uint8_t> g{1};
    std::set<unsigned> covered;
    for (unsigned i = 1; i <= 2 * t; i += 2) {
        std::vector<unsigned> coset;
        unsigned j = i % n;
        while (!std::count(coset.begin(), coset.end(), j)) {
            coset.push_back(j);
            j = (2 * j) % n;
        }
        if (covered.count(coset.front())) continue;
        bool seen = false;
        for (unsigned e : coset) seen = seen || covered.count(e);
        if (seen) continue;
        for (unsigned e : coset) covered.insert(e);

        // Minimal polynomial of alpha^i: product of (x + alpha^e) over the coset.
        std::vector<unsigned> mp{1};  // field-valued coefficients, ascending
        for (unsigned e : coset) {
            std::vector<unsigned> next(mp.size() + 1, 0);
            const unsigned a = field.exp_table[e];
            for (std::size_t d = 0; d < mp.size(); ++d) {
                next[d + 1] ^= mp[d];
                next[d] ^= field.mul(mp[d], a);
            }
            mp = next;
        }
        std::vector<std::uint8_t> mp2(mp.size());
        for (std::size_t d = 0; d < mp.size(); ++d) {
            if (mp[d] > 1) throw ConfigError("bch: minimal polynomial not binary");
            mp2[d] = static_cast<std::uint8_t>(mp[d]);
        }
        g = poly_mul(g, mp2);
    }
    return g;
}

Gf2Matrix bch_h(unsigned m, unsigned t) {
    const unsigned n = (1u << m) - 1;
    auto g = bch_generator_poly(m, t);
    const unsigned r = static_cast<unsigned>(g.size()) - 1;  // n - k
    const unsigned k = n - r;

    std::vector<std::uint8_t> xn1(n + 1, 0);
    xn1[0] = 1;
    xn1[n] = 1;
    auto hpoly = poly_div_exact(xn1, g);  // degree k

    // Row i: coefficients h_{k+i-j} at column j (shifted reversed h).
    Gf2Matrix H(r, n);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < n; ++j) {
            const long idx = static_cast<long>(k) + i - j;
            if (idx >= 0 && idx <= static_cast<long>(k) && hpoly[static_cast<std::size_t>(idx)]) H.set(i, j, 1);
        }
    return H;
}

Gf2Matrix polar_h(unsigned n, unsigned k, double design_snr_db) {
    if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("polar_h: n must be a power of two");
    if (k < 1 || k >= n) throw ConfigError("polar_h: need 1 <= k < n");
    unsigned levels = 0;
    while ((1u << levels) < n) ++levels;

    const double rate = static_cast<double>(k) / n;
    const double z0 = std::exp(-rate * std::pow(10.0, design_snr_db / 10.0));
    std::vector<double> z{z0};
    for (unsigned level = 0; level < levels; ++level) {
        std::vector<double> next(z.size() * 2);
        for (std::size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];
            next[2 * i + 1] = z[i] * z[i];
        }
        z = std::move(next);
    }

    // Freeze the n-k least reliable synthetic channels (largest z).
    std::vector<unsigned> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&z](unsigned a, unsigned b) { return z[a] > z[b]; });
    std::vector<unsigned> frozen(order.begin(), order.begin() + (n - k));
    std::sort(frozen.begin(), frozen.end());

    // F^(m)[i][j] = 1 iff j is a bitwise subset of i; x invertible through the
    // same transform, so u_f = sum over i superset of f of x_i.
    Gf2Matrix H(n - k, n);
    for (std::size_t row = 0; row < frozen.size(); ++row) {
        const unsigned f = frozen[row];
        for (unsigned i = 0; i < n; ++i)
            if ((i & f) == f) H.set(row, i, 1);
    }
    return H;
}

Gf2Matrix hamming_7_4_h() {
    Gf2Matrix h(3, 7);
    for (unsigned col = 0; col < 7; ++col) {
        const unsigned val = col + 1;
        for (unsigned bit = 0; bit < 3; ++bit)
            if (val & (1u << bit)) h.set(bit, col, 1);
    }
    return h;
}

Gf2Matrix spc_h(unsigned n) {
    Gf2Matrix h(1, n);
    for (unsigned j = 0; j < n; ++j) h.set(0, j, 1);
    return h;
}

}  // namespace drn
