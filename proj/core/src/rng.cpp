#include <specon/rng.hpp>

#include <cmath>
#include <numbers>

namespace specon {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

// 53 random mantissa bits.
double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double box_muller(double u1, double u2) {
    // u1 in (0, 1]
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

StreamKey StreamKey::root(std::uint64_t seed) {
    return StreamKey{splitmix64(seed)};
}

StreamKey StreamKey::derive(std::string_view name, std::uint64_t index) const {
    // FNV-1a over the name, then mixed with the parent key and index.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return StreamKey{mix(mix(value, h), index)};
}

double StreamKey::uniform_at(std::uint64_t counter) const {
    return to_unit(mix(value, counter));
}

double StreamKey::normal_at(std::uint64_t counter) const {
    double u1 = 1.0 - to_unit(mix(value, 2 * counter));
    double u2 = to_unit(mix(value, 2 * counter + 1));
    return box_muller(u1, u2);
}

std::uint64_t Rng::next_u64() {
    return mix(key_.value, counter_++);
}

double Rng::uniform() {
    return to_unit(next_u64());
}

double Rng::normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return box_muller(u1, u2);
}

}  // namespace specon
