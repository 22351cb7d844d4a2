#ifndef DRN_ALIST_HPP
#define DRN_ALIST_HPP

#include <string>
#include <string_view>

#include "drn/gf2.hpp"

namespace drn {

/// Parses the standard alist layout:
///   line 1: "n m"           (columns, rows)
///   line 2: max column / max row degree
///   line 3: n column degrees
///   line 4: m row degrees
///   next n lines: 1-based row indices per column (zero padding ignored)
///   next m lines: 1-based column indices per row
/// Column and row lists must describe the same matrix.
Gf2Matrix parse_alist(std::string_view text);

Gf2Matrix read_alist_file(const std::string& path);

/// Canonical alist serialization (neighbor lists ascending, no padding).
std::string to_alist(const Gf2Matrix& h);

}  // namespace drn

#endif
