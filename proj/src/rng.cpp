#include "drn/rng.hpp"

#include <cmath>
#include <numbers>

namespace drn {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t s = master_seed;
    std::uint64_t key = splitmix64(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    key ^= splitmix64(s);
    s ^= b + 0xd1b54a32d192ed03ULL;
    key ^= splitmix64(s);
    s ^= c + 0x8bb84b93962eacc9ULL;
    key ^= splitmix64(s);
    return Rng(key);
}

}  // namespace drn
