// Seeded randomness. mt19937_64 output is fixed by the standard; the bounded
// draws below avoid std::uniform_int_distribution, whose output differs
// between standard library implementations.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace smsm {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Seed for the named substream of a master seed ("codebook", "network", ...).
inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view name)
{
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return splitmix64(seed ^ splitmix64(h));
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view name, std::uint64_t index)
{
    return splitmix64(substream_seed(seed, name) + splitmix64(index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound); bound > 0.
    std::uint64_t uniform(std::uint64_t bound)
    {
        if (bound <= 1)
            return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool bit() { return engine_() >> 63; }

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[uniform(i)]);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace smsm
