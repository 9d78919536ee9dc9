#pragma once

#include <cstdint>
#include <string_view>

namespace horolab::rng {

// Counter-based random stream: the k-th variate of a named stream is a pure
// function of (seed, stream, k).  Parallel consumers drawing disjoint counter
// ranges reproduce the serial stream exactly.
std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t stream_id(std::string_view name);

struct Stream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    Stream() = default;
    Stream(std::uint64_t seed_, std::string_view name) : seed(seed_), stream(stream_id(name)) {}
    Stream(std::uint64_t seed_, std::uint64_t stream_) : seed(seed_), stream(stream_) {}

    std::uint64_t bits(std::uint64_t counter) const { return mix(seed, stream, counter); }

    // uniform in [0,1)
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // independent slot within one counter (rejection retries, vector components)
    double uniform(std::uint64_t counter, std::uint32_t slot) const {
        return static_cast<double>(mix(seed ^ (0x9e3779b97f4a7c15ull * (slot + 1)), stream, counter) >> 11) *
               0x1.0p-53;
    }

    Stream substream(std::uint64_t tag) const {
        return Stream(seed, stream ^ (tag * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull));
    }
};

// standard normal via Box-Muller on two slots
double normal(const Stream& s, std::uint64_t counter, std::uint32_t slot_pair);

}  // namespace horolab::rng
