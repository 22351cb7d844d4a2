#include "drn/channel.hpp"

#include <cmath>

namespace drn {

double sigma_from_snr(double snr_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0) throw InvalidRate("rate must be in (0, 1]");
    return 1.0 / std::sqrt(2.0 * rate * std::pow(10.0, snr_db / 10.0));
}

ChannelParams make_channel(double snr_db, double rate) {
    return {snr_db, rate, sigma_from_snr(snr_db, rate)};
}

std::vector<Real> modulate(std::span<const std::uint8_t> bits) {
    std::vector<Real> symbols(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) symbols[i] = bits[i] ? Real(-1) : Real(1);
    return symbols;
}

std::vector<Real> transmit(std::span<const Real> symbols, double sigma, Rng& rng) {
    std::vector<Real> received(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        received[i] = symbols[i] + static_cast<Real>(sigma * rng.gaussian());
    return received;
}

std::vector<Real> llr_from_received(std::span<const Real> received, double sigma) {
    const Real scale = static_cast<Real>(2.0 / (sigma * sigma));
    std::vector<Real> llr(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) llr[i] = scale * received[i];
    return llr;
}

}  // namespace drn
