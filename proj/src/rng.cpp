#include "horolab/rng.hpp"

#include <cmath>
#include <numbers>

namespace horolab::rng {

namespace {
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmix(a);
    h = splitmix(h ^ (b + 0x632be59bd9b4e019ull));
    h = splitmix(h ^ (c + 0xd6e8feb86659fd93ull));
    return h;
}

std::uint64_t stream_id(std::string_view name) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

double normal(const Stream& s, std::uint64_t counter, std::uint32_t slot_pair) {
    double u1 = s.uniform(counter, 2 * slot_pair);
    double u2 = s.uniform(counter, 2 * slot_pair + 1);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace horolab::rng
