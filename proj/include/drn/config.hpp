#ifndef DRN_CONFIG_HPP
#define DRN_CONFIG_HPP

namespace drn {

#ifdef DRN_REAL_FLOAT
using Real = float;
#else
using Real = double;
#endif

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace drn

#endif
