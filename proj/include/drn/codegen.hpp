#ifndef DRN_CODEGEN_HPP
#define DRN_CODEGEN_HPP

#include <cstdint>
#include <vector>

#include "drn/gf2.hpp"

namespace drn {

/// Quasi-cyclic array code: gamma*p x p^2 with block (i,j) = P^(i*j),
/// P the p x p single-step circulant. Full column weight gamma, row weight
/// p, girth >= 6. Over GF(2) the rank is gamma*p - gamma + 1, so
/// k = p^2 - gamma*p + gamma - 1. Rows are kept overcomplete.
Gf2Matrix array_ldpc_h(unsigned gamma, unsigned p);

/// Binary primitive BCH code of length 2^m - 1 designed for the given
/// error-correcting radius t. H is the (n-k) x n Toeplitz matrix of shifts
/// of the reversed parity polynomial h(x) = (x^n - 1)/g(x).
Gf2Matrix bch_h(unsigned m, unsigned t);

/// Generator polynomial coefficients (degree ascending) of the same code;
/// exposed for cross-checking the cyclic structure.
std::vector<std::uint8_t> bch_generator_poly(unsigned m, unsigned t);

/// Polar code parity checks: rows are the columns of F^(m), F=[[1,0],[1,1]],
/// at the n-k frozen indices. Frozen set chosen by Bhattacharyya-parameter
/// recursion (z -> {2z - z^2, z^2}) for a BPSK/AWGN channel at the given
/// design Eb/N0.
Gf2Matrix polar_h(unsigned n, unsigned k, double design_snr_db);

/// Hamming(7,4) in the standard column-as-binary-counter form.
Gf2Matrix hamming_7_4_h();

/// Single parity check code [1 1 ... 1] of length n.
Gf2Matrix spc_h(unsigned n);

}  // namespace drn

#endif
