// Bit-packed elimination for GF(2). Must agree entry-for-entry with
// detail::rref_generic; the gf tests compare the two on random input.

#include "smsm/gf.hpp"

#include <bit>

namespace smsm::detail {

RowEchelon rref_packed_binary(const Matrix& m)
{
    if (m.field().order() != 2)
        throw std::invalid_argument("packed elimination needs GF(2)");
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(rows * words, 0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (m(r, c))
                bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);

    auto word = [&](std::size_t r, std::size_t w) -> std::uint64_t& { return bits[r * words + w]; };

    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t p = lead;
        while (p < rows && !(word(p, w) & mask))
            ++p;
        if (p == rows)
            continue;
        if (p != lead)
            for (std::size_t j = 0; j < words; ++j)
                std::swap(word(p, j), word(lead, j));
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || !(word(r, w) & mask))
                continue;
            for (std::size_t j = w; j < words; ++j)
                word(r, j) ^= word(lead, j);
        }
        pivots.push_back(c);
        ++lead;
    }

    Matrix out(m.field(), rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out(r, c) = (word(r, c / 64) >> (c % 64)) & 1u;
    return {std::move(out), std::move(pivots)};
}

}  // namespace smsm::detail
