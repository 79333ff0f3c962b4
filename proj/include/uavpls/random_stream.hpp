#pragma once

#include <array>
#include <cstdint>

namespace uavpls {

/**
 * Reproducible random stream keyed by (seed, stream_id).
 *
 * The engine is xoshiro256** seeded through splitmix64, and all variate
 * transforms are implemented here rather than through <random> distributions,
 * so a given key yields the same draws on every platform and standard
 * library. Streams are plain values; copy one to fork its state.
 */
class RandomStream
{
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Independent stream derived from this key and `index`. Does not
    /// depend on (or advance) the current state.
    RandomStream child(std::uint64_t index) const;

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    /// Unit-mean exponential.
    double exponential();
    /// Poisson count with the given mean (exact inversion).
    std::uint64_t poisson(double mean);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace uavpls
