#ifndef DRN_GF2_HPP
#define DRN_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "drn/errors.hpp"

namespace drn {

/// Dense bit-packed binary matrix. Row-major, 64 columns per word.
class Gf2Matrix {
  public:
    Gf2Matrix() : rows_(0), cols_(0), words_per_row_(0) {}  // empty placeholder
    Gf2Matrix(std::size_t rows, std::size_t cols);

    static Gf2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int get(std::size_t r, std::size_t c) const {
        return static_cast<int>((words_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1u);
    }
    void set(std::size_t r, std::size_t c, int v) {
        std::uint64_t& w = words_[r * words_per_row_ + (c >> 6)];
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        w = v ? (w | mask) : (w & ~mask);
    }

    void xor_row_into(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t count_ones() const;
    std::size_t row_weight(std::size_t r) const;

    bool operator==(const Gf2Matrix& other) const;

  private:
    std::size_t rows_, cols_, words_per_row_;
    std::vector<std::uint64_t> words_;
};

using BitVec = std::vector<std::uint8_t>;

struct RowReduceResult {
    Gf2Matrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_columns;  // strictly increasing
};

/// Reduced row-echelon form over GF(2). All-zero input yields rank 0.
RowReduceResult row_reduce(const Gf2Matrix& m);

/// Systematic encoder derived from a parity-check matrix.
///
/// column_permutation maps permuted positions to original columns: the first
/// k entries are the systematic (message-carrying) columns of the code, in
/// increasing column order. G itself is expressed in the original column
/// order, so encode() outputs codewords directly compatible with H.
struct GeneratorMatrix {
    Gf2Matrix g;  // k x n
    std::vector<std::size_t> column_permutation;
    std::size_t k = 0;
    std::size_t n = 0;
};

/// Derives G with G*H^T = 0 from H. Redundant H rows are allowed; k is
/// n - rank(H). Throws DegenerateCode when rank(H) = n.
GeneratorMatrix generator_from_parity(const Gf2Matrix& h);

/// message (length k) -> codeword (length n, original column order).
BitVec encode(const GeneratorMatrix& g, std::span<const std::uint8_t> message);

/// H * word^T over GF(2); zero iff word is a codeword.
BitVec syndrome(const Gf2Matrix& h, std::span<const std::uint8_t> word);

/// a (p x q) times b (q x r) over GF(2). Test oracle and G*H^T checks.
Gf2Matrix gf2_multiply(const Gf2Matrix& a, const Gf2Matrix& b);

Gf2Matrix transpose(const Gf2Matrix& m);

}  // namespace drn

#endif
