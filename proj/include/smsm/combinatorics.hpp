#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace smsm {

// C(n, r), saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r)
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

// base^exp, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp)
{
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

// Calls fn(indices) for every r-subset of {0..n-1} in lexicographic order.
// Stops early when fn returns false.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t r, Fn&& fn)
{
    if (r > n)
        return;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i)
        idx[i] = i;
    while (true) {
        if (!fn(static_cast<const std::vector<std::size_t>&>(idx)))
            return;
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// Mixed-radix digits of index, most significant first.
inline void index_to_digits(std::uint64_t index, std::uint64_t radix, std::vector<std::uint32_t>& digits)
{
    for (std::size_t i = digits.size(); i > 0; --i) {
        digits[i - 1] = static_cast<std::uint32_t>(index % radix);
        index /= radix;
    }
}

inline std::uint64_t digits_to_index(const std::vector<std::uint32_t>& digits, std::uint64_t radix)
{
    std::uint64_t idx = 0;
    for (auto d : digits)
        idx = idx * radix + d;
    return idx;
}

}  // namespace smsm
