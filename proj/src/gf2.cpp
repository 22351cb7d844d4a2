#include "drn/gf2.hpp"

#include <algorithm>
#include <bit>

namespace drn {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), words_(rows * words_per_row_, 0) {
    if (rows == 0 || cols == 0) throw ShapeMismatch("Gf2Matrix requires rows >= 1 and cols >= 1");
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void Gf2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
    std::uint64_t* d = &words_[dst * words_per_row_];
    const std::uint64_t* s = &words_[src * words_per_row_];
    for (std::size_t w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(words_.begin() + a * words_per_row_, words_.begin() + (a + 1) * words_per_row_,
                     words_.begin() + b * words_per_row_);
}

std::size_t Gf2Matrix::count_ones() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t Gf2Matrix::row_weight(std::size_t r) const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_per_row_; ++w)
        total += static_cast<std::size_t>(std::popcount(words_[r * words_per_row_ + w]));
    return total;
}

bool Gf2Matrix::operator==(const Gf2Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

RowReduceResult row_reduce(const Gf2Matrix& m) {
    RowReduceResult res{m, 0, {}};
    Gf2Matrix& a = res.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = a.rows();
        for (std::size_t r = row; r < a.rows(); ++r) {
            if (a.get(r, col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == a.rows()) continue;
        a.swap_rows(row, pivot);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r != row && a.get(r, col)) a.xor_row_into(row, r);
        }
        res.pivot_columns.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

GeneratorMatrix generator_from_parity(const Gf2Matrix& h) {
    const std::size_t n = h.cols();
    RowReduceResult rr = row_reduce(h);
    if (rr.rank >= n) throw DegenerateCode("rank(H) = n: code has no information bits");
    const std::size_t k = n - rr.rank;

    // Free (non-pivot) columns carry the message; pivot columns are parity.
    std::vector<std::size_t> free_cols;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : rr.pivot_columns) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    GeneratorMatrix gen;
    gen.k = k;
    gen.n = n;
    gen.g = Gf2Matrix(k, n);
    for (std::size_t j = 0; j < k; ++j) {
        gen.g.set(j, free_cols[j], 1);
        // Pivot variable i satisfies x_{pivot_i} = sum_j R[i][free_j] x_{free_j}.
        for (std::size_t i = 0; i < rr.rank; ++i) {
            if (rr.reduced.get(i, free_cols[j])) gen.g.set(j, rr.pivot_columns[i], 1);
        }
    }
    gen.column_permutation.reserve(n);
    gen.column_permutation.insert(gen.column_permutation.end(), free_cols.begin(), free_cols.end());
    gen.column_permutation.insert(gen.column_permutation.end(), rr.pivot_columns.begin(), rr.pivot_columns.end());
    return gen;
}

BitVec encode(const GeneratorMatrix& gen, std::span<const std::uint8_t> message) {
    if (message.size() != gen.k) throw LengthMismatch("encode: message length != k");
    BitVec x(gen.n, 0);
    for (std::size_t j = 0; j < gen.k; ++j) {
        if (!message[j]) continue;
        for (std::size_t c = 0; c < gen.n; ++c) x[c] ^= static_cast<std::uint8_t>(gen.g.get(j, c));
    }
    return x;
}

BitVec syndrome(const Gf2Matrix& h, std::span<const std::uint8_t> word) {
    if (word.size() != h.cols()) throw LengthMismatch("syndrome: word length != cols(H)");
    BitVec s(h.rows(), 0);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c = 0; c < h.cols(); ++c) acc ^= static_cast<std::uint8_t>(h.get(r, c) & word[c]);
        s[r] = acc;
    }
    return s;
}

Gf2Matrix gf2_multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("gf2_multiply: inner dimensions disagree");
    Gf2Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t t = 0; t < a.cols(); ++t) {
            if (!a.get(i, t)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b.get(t, j)) out.set(i, j, out.get(i, j) ^ 1);
            }
        }
    }
    return out;
}

Gf2Matrix transpose(const Gf2Matrix& m) {
    Gf2Matrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out.set(c, r, 1);
    return out;
}

}  // namespace drn
