#include "smsm/gf.hpp"

#include <array>
#include <string>

namespace smsm {

namespace {

// Primitive polynomials, index m. Same table as most RS/BCH codecs use.
constexpr std::array<std::uint32_t, 17> kPrimitive = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,   0x11D,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

int binary_degree(std::uint32_t q)
{
    if (q < 2 || (q & (q - 1)) != 0)
        return -1;
    int m = 0;
    while ((1u << m) != q)
        ++m;
    return m;
}

}  // namespace

namespace detail {

struct FieldTables {
    std::uint32_t modulus = 0;
    // GF(2^m): exp has 2(q-1) entries so log a + log b never needs a wrap.
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> inverse;
};

}  // namespace detail

bool is_supported_field_order(std::uint32_t q)
{
    if (q < 2 || q > 65536)
        return false;
    return is_prime(q) || binary_degree(q) > 0;
}

Field::Field(std::uint32_t order) : order_(order), characteristic_(0)
{
    if (!is_supported_field_order(order))
        throw std::invalid_argument("unsupported field order " + std::to_string(order) +
                                    " (need a prime or 2^m with m <= 16)");
    auto t = std::make_shared<detail::FieldTables>();
    int m = binary_degree(order);
    if (m > 0) {
        characteristic_ = 2;
        t->modulus = kPrimitive[static_cast<std::size_t>(m)];
        std::uint32_t n = order - 1;
        t->exp.resize(2 * static_cast<std::size_t>(n));
        t->log.assign(order, 0);
        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            t->exp[i] = x;
            t->log[x] = i;
            x <<= 1;
            if (x & order)
                x ^= t->modulus;
        }
        if (x != 1)
            throw std::logic_error("reduction polynomial is not primitive");
        for (std::uint32_t i = n; i < 2 * n; ++i)
            t->exp[i] = t->exp[i - n];
    } else {
        characteristic_ = order;
        t->inverse.assign(order, 0);
        // Extended Euclid per element; q <= 65521 keeps this cheap.
        for (std::uint32_t a = 1; a < order; ++a) {
            std::int64_t r0 = order, r1 = a, s0 = 0, s1 = 1;
            while (r1 != 0) {
                std::int64_t qt = r0 / r1;
                std::int64_t r2 = r0 - qt * r1;
                r0 = r1;
                r1 = r2;
                std::int64_t s2 = s0 - qt * s1;
                s0 = s1;
                s1 = s2;
            }
            std::int64_t inv = s0 % static_cast<std::int64_t>(order);
            if (inv < 0)
                inv += order;
            t->inverse[a] = static_cast<std::uint32_t>(inv);
        }
    }
    tables_ = std::move(t);
}

std::uint32_t Field::modulus() const { return tables_->modulus; }

Element Field::mul(Element a, Element b) const
{
    if (characteristic_ == 2) {
        if (a == 0 || b == 0)
            return 0;
        if (order_ == 2)
            return 1;
        return tables_->exp[tables_->log[a] + tables_->log[b]];
    }
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % order_);
}

Element Field::inv(Element a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero");
    if (characteristic_ == 2) {
        if (order_ == 2)
            return 1;
        return tables_->exp[(order_ - 1) - tables_->log[a]];
    }
    return tables_->inverse[a];
}

}  // namespace smsm
