#ifndef DRN_CHANNEL_HPP
#define DRN_CHANNEL_HPP

#include <span>
#include <vector>

#include "drn/config.hpp"
#include "drn/errors.hpp"
#include "drn/rng.hpp"

namespace drn {

// LLR convention used throughout: L_v = log P(x_v = 0 | r_v) - log P(x_v = 1 | r_v).
// Positive favors bit 0; hard decision is 1 iff L_v < 0 (ties decide 0).

struct ChannelParams {
    double snr_db = 0.0;
    double rate = 0.0;
    double sigma = 0.0;  // noise std deviation per real dimension
};

/// SNR is Eb/N0 with unit-energy BPSK: sigma = 1/sqrt(2 * rate * 10^(snr/10)).
double sigma_from_snr(double snr_db, double rate);

ChannelParams make_channel(double snr_db, double rate);

/// BPSK: bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<Real> modulate(std::span<const std::uint8_t> bits);

/// received[i] = symbols[i] + sigma * z_i, z_i iid standard normal from rng.
std::vector<Real> transmit(std::span<const Real> symbols, double sigma, Rng& rng);

/// L_v = 2 r_v / sigma^2 under the convention above.
std::vector<Real> llr_from_received(std::span<const Real> received, double sigma);

}  // namespace drn

#endif
