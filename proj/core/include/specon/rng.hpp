#pragma once

#include <cstdint>
#include <string_view>

namespace specon {

std::uint64_t splitmix64(std::uint64_t x);

/// Key of an independent random stream. Streams are derived from a root seed
/// by hashing a name and an index, so adding a new stream never shifts the
/// draws of an existing one.
struct StreamKey {
    std::uint64_t value{0};

    static StreamKey root(std::uint64_t seed);
    StreamKey derive(std::string_view name, std::uint64_t index = 0) const;

    /// Counter-based draws: the same (key, counter) always yields the same value.
    double uniform_at(std::uint64_t counter) const;
    double normal_at(std::uint64_t counter) const;
};

/// Sequential generator over a stream key.
class Rng {
public:
    explicit Rng(StreamKey key) : key_(key) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

private:
    StreamKey key_;
    std::uint64_t counter_{0};
};

}  // namespace specon
