#ifndef DRN_RNG_HPP
#define DRN_RNG_HPP

#include <cstdint>

namespace drn {

/// SplitMix64 step (Steele, Lea & Flood): used both as a stream-key mixer and
/// to expand seeds into xoshiro state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman & Vigna) with Box-Muller Gaussians. Each Monte
/// Carlo sample owns a stream keyed on (master seed, sample coordinates), so
/// results do not depend on how samples are sharded across workers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
        have_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in (0, 1].
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Box-Muller transform (pairs cached).
    double gaussian();

    /// Uniform bit.
    std::uint8_t bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool have_spare_;
    double spare_;
};

/// Derives an independent stream from a master seed and up to three sample
/// coordinates (e.g. step, lane, sample index). Pure function of its inputs.
Rng make_stream(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace drn

#endif
