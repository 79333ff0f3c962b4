#include "uavpls/random_stream.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace uavpls {

namespace {

std::uint64_t splitmix64(std::uint64_t& x)
{
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_key(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t x = a;
    std::uint64_t h = splitmix64(x);
    x = h ^ std::rotl(b, 17) ^ 0x6a09e667f3bcc909ULL;
    return splitmix64(x);
}

// Inversion is exact but its cost grows with the mean; larger means are
// split into equal parts and summed.
constexpr double kMaxInversionMean = 200.0;

std::uint64_t poisson_inversion(RandomStream& rng, double mean)
{
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    const auto cap = static_cast<std::uint64_t>(mean + 40.0 * std::sqrt(mean) + 100.0);
    while (u >= cdf && k < cap) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id)
{
    std::uint64_t x = mix_key(seed, stream_id);
    for (auto& word : state_)
        word = splitmix64(x);
}

RandomStream RandomStream::child(std::uint64_t index) const
{
    return RandomStream(seed_, mix_key(stream_id_, index + 1));
}

std::uint64_t RandomStream::next_u64()
{
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomStream::uniform_open()
{
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform_open()); }

std::uint64_t RandomStream::poisson(double mean)
{
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::domain_error("poisson: mean must be finite and non-negative");
    if (mean == 0.0)
        return 0;
    const auto parts = static_cast<std::uint64_t>(std::ceil(mean / kMaxInversionMean));
    const double part_mean = mean / static_cast<double>(parts);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < parts; ++i)
        total += poisson_inversion(*this, part_mean);
    return total;
}

}  // namespace uavpls
