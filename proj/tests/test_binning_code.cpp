#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "smsm/adversary.hpp"
#include "smsm/binning_code.hpp"
#include "smsm/combinatorics.hpp"
#include "smsm/rng.hpp"

using namespace smsm;

namespace {

std::vector<Element> bits_msb(std::uint64_t v, std::size_t n)
{
    std::vector<Element> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<Element>((v >> (n - 1 - i)) & 1);
    return out;
}

}  // namespace

TEST(binning_code, delta_convention)
{
    EXPECT_EQ(delta_for(1, 4, 0.0), 2u);
    EXPECT_EQ(delta_for(1, 3, 0.5), 8u);  // 2^(1 + ceil(1.5))
    EXPECT_EQ(delta_for(2, 8, 0.25), 16u);
    EXPECT_EQ(delta_for(1, 10, 0.1), 4u);  // n*eps = 1 exactly despite rounding
}

TEST(binning_code, individual_shapes)
{
    auto cb = generate_individual(4, 1, 0.0, 1);
    EXPECT_EQ(cb.bin_count(), 8u);
    EXPECT_EQ(cb.delta(), 2u);
    EXPECT_EQ(cb.n(), 4u);
    EXPECT_EQ(cb.slots().size(), 16u);

    auto p = generate_individual(2, 1, 0.0, 1, Construction::partition);
    EXPECT_EQ(p.bin_count(), 2u);
    EXPECT_EQ(p.delta(), 2u);
    std::set<std::uint64_t> words(p.slots().begin(), p.slots().end());
    EXPECT_EQ(words.size(), 4u);
    EXPECT_TRUE(p.injective());

    EXPECT_EQ(generate_individual(5, 2, 0.2, 77), generate_individual(5, 2, 0.2, 77));
    EXPECT_FALSE(generate_individual(5, 2, 0.2, 77) == generate_individual(5, 2, 0.2, 78));
    EXPECT_THROW(generate_individual(3, 1, 0.5, 1, Construction::partition), std::invalid_argument);
    EXPECT_THROW(generate_individual(30, 1, 0.0, 1), ResourceLimit);
}

TEST(binning_code, strong_shapes)
{
    auto cb = generate_strong(2, 1, 0.5, 4);
    EXPECT_EQ(cb.n(), 3u);
    EXPECT_EQ(cb.bin_count(), 4u);
    EXPECT_EQ(cb.delta(), 8u);

    auto small = generate_strong(1, 1, 0.0, 4);
    EXPECT_EQ(small.n(), 2u);
    EXPECT_EQ(small.bin_count(), 2u);
    EXPECT_EQ(small.delta(), 2u);
    EXPECT_EQ(generate_strong(3, 2, 0.2, 9), generate_strong(3, 2, 0.2, 9));
}

TEST(binning_code, partition_bijective_exhaustive)
{
    for (std::size_t k = 2; k <= 12; ++k) {
        auto cb = generate_individual(k, 1 + k / 4, 0.0, k, Construction::partition);
        std::set<std::uint64_t> seen;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
            auto m = bits_msb(v, k);
            auto x = encode_individual(cb, m);
            auto d = decode_individual(cb, x);
            ASSERT_EQ(d.status, DecodeStatus::unique);
            ASSERT_EQ(d.message, m);
            seen.insert(pack_bits(x));
        }
        EXPECT_EQ(seen.size(), std::uint64_t{1} << k);
    }
}

TEST(binning_code, zero_message_takes_first_slot)
{
    auto cb = generate_individual(4, 1, 0.0, 3);
    auto x = encode_individual(cb, std::vector<Element>(4, 0));
    EXPECT_EQ(pack_bits(x), cb.codeword(0, 0));
}

TEST(binning_code, forced_duplicate_is_ambiguous)
{
    // k=2, w=1: bins {00, 11} and {11, 01}; 11 appears in both.
    std::vector<std::uint64_t> slots{0b00, 0b11, 0b11, 0b10};
    BinCodebook cb(BinMode::individual, Construction::iid, 2, 1, 2, 0.0, 0, 2, slots);
    auto d = decode_individual(cb, unpack_bits(0b11, 2));
    EXPECT_EQ(d.status, DecodeStatus::ambiguous);
    ASSERT_EQ(d.candidates.size(), 2u);
    EXPECT_EQ(d.candidates[0], (BinCandidate{0, 1}));
    EXPECT_EQ(d.candidates[1], (BinCandidate{1, 0}));
    EXPECT_FALSE(cb.injective());
    EXPECT_EQ(decode_individual(cb, unpack_bits(0b01, 2)).status, DecodeStatus::not_found);
}

TEST(binning_code, strong_round_trip)
{
    // At n = 5 the 32 sampled words fill GF(2)^5, so a collision-free i.i.d.
    // draw is hopeless; n = 8 leaves room.
    std::uint64_t seed = 0;
    BinCodebook cb = generate_strong(3, 2, 0.0, seed, 8);
    while (!cb.bins_disjoint() && seed < 1000)
        cb = generate_strong(3, 2, 0.0, ++seed, 8);
    ASSERT_TRUE(cb.bins_disjoint());
    EXPECT_EQ(cb.delta(), 4u);
    for (std::uint64_t v = 0; v < 8; ++v) {
        auto m = bits_msb(v, 3);
        EXPECT_EQ(pack_bits(encode_strong(cb, m, 0)), cb.codeword(v, 0));
        for (std::uint64_t r = 0; r < cb.delta(); ++r) {
            auto d = decode_strong(cb, encode_strong(cb, m, r));
            ASSERT_EQ(d.status, DecodeStatus::unique);
            EXPECT_EQ(d.message, m);
        }
    }
    EXPECT_THROW(encode_strong(cb, bits_msb(0, 3), cb.delta()), std::invalid_argument);
}

TEST(binning_code, shell_partition_counts_are_one)
{
    auto cb = generate_individual(2, 1, 0.0, 5, Construction::partition);
    // With only two bins of two words, every coordinate observation must be
    // hit once per bin exactly when each bin holds complementary bits there;
    // the coset construction guarantees this.
    auto coset = codebook_from_coset_code(CosetCode::from_generator(Matrix::from_rows(Field(2), {{1, 1}})));
    for (std::size_t pos = 0; pos < 2; ++pos)
        for (Element val = 0; val < 2; ++val) {
            std::vector<std::size_t> p{pos};
            std::vector<Element> v{val};
            auto r = shell_report(coset, p, v);
            for (auto c : r.per_bin)
                EXPECT_EQ(c, 1u);
            EXPECT_EQ(r.total, 2u);
        }
    // The random partition still accounts for every word once.
    std::vector<std::size_t> p{0};
    std::vector<Element> v{1};
    EXPECT_EQ(shell_report(cb, p, v).total, 2u);
}

TEST(binning_code, shell_accounting_matches_direct_enumeration)
{
    auto cb = generate_individual(8, 2, 0.25, 12);
    Rng rng(8);
    for (int it = 0; it < 50; ++it) {
        std::vector<std::size_t> pos;
        for_each_combination(8, 2, [&](const std::vector<std::size_t>& s) {
            if (rng.uniform(6) == 0 && pos.empty())
                pos = s;
            return true;
        });
        if (pos.empty())
            pos = {0, 1};
        std::vector<Element> val{static_cast<Element>(rng.uniform(2)), static_cast<Element>(rng.uniform(2))};
        auto r = shell_report(cb, pos, val);
        std::uint64_t direct = 0;
        for (std::uint64_t word : cb.slots())
            direct += ((word >> pos[0]) & 1) == val[0] && ((word >> pos[1]) & 1) == val[1];
        EXPECT_EQ(r.total, direct);
        std::uint64_t sum = 0;
        for (auto c : r.per_bin)
            sum += c;
        EXPECT_EQ(sum, r.total);
        // The shell itself: words of GF(2)^8 matching the observation.
        std::uint64_t shell = 0;
        for (std::uint64_t word = 0; word < 256; ++word)
            shell += ((word >> pos[0]) & 1) == val[0] && ((word >> pos[1]) & 1) == val[1];
        EXPECT_EQ(shell, 64u);
    }
}

TEST(binning_code, shell_mean_matches_expectation)
{
    auto cb = generate_individual(8, 2, 0.25, 21);
    EXPECT_DOUBLE_EQ(cb.expected_shell_count(), 4.0);  // 2^(k eps)
    Rng rng(4);
    double sum = 0;
    int n = 0;
    for (int it = 0; it < 200; ++it) {
        std::size_t a = rng.uniform(8), b = rng.uniform(7);
        if (b >= a)
            ++b;
        std::vector<std::size_t> pos{a, b};
        std::vector<Element> val{static_cast<Element>(rng.uniform(2)), static_cast<Element>(rng.uniform(2))};
        sum += shell_report(cb, pos, val).mean;
        ++n;
    }
    double mean = sum / n;
    EXPECT_GT(mean, 2.0);
    EXPECT_LT(mean, 6.0);
}

TEST(binning_code, impossible_observation_gives_zero_counts)
{
    std::vector<std::uint64_t> slots{0b00, 0b00, 0b00, 0b00};
    BinCodebook cb(BinMode::individual, Construction::iid, 2, 1, 2, 0.0, 0, 2, slots);
    std::vector<std::size_t> p{1};
    std::vector<Element> v{1};
    auto r = shell_report(cb, p, v);
    EXPECT_EQ(r.total, 0u);
    EXPECT_EQ(r.max, 0u);
}

TEST(binning_code, concentration)
{
    auto part = generate_individual(6, 2, 0.0, 1, Construction::partition);
    auto res = concentration_check(part, 50, 0.01, 0.0, 1);
    EXPECT_DOUBLE_EQ(res.expected, 1.0);
    // Partition bins are random, so only the coset construction pins counts at 1.
    auto coset = codebook_from_coset_code(
        CosetCode::from_generator(Matrix::from_rows(Field(2), {{1, 1, 1, 1}})));
    auto cres = concentration_check(coset, 50, 0.01, 1.0, 1);
    EXPECT_TRUE(cres.pass);
    EXPECT_EQ(cres.min_count, 1u);

    auto big = generate_individual(12, 2, 0.25, 6);
    auto bres = concentration_check(big, 100, 0.5, 0.9, 6);
    EXPECT_TRUE(bres.pass) << bres.fraction_within;

    // Every bin identical: all counts equal the bin-0 count, 0 or 2*E.
    std::vector<std::uint64_t> same;
    std::size_t bins = 8;
    std::uint64_t delta = 2;
    for (std::size_t b = 0; b < bins; ++b)
        for (std::uint64_t s = 0; s < delta; ++s)
            same.push_back(s == 0 ? 0b0000 : 0b0011);
    BinCodebook dup(BinMode::individual, Construction::iid, 4, 1, 4, 0.0, 0, delta, same);
    EXPECT_FALSE(concentration_check(dup, 100, 0.5, 0.9, 2).pass);
}

TEST(binning_code, coset_codebook_leaks_nothing_on_index)
{
    auto code = CosetCode::from_generator(Matrix::from_rows(Field(2), {{1, 1, 1}}));
    auto cb = codebook_from_coset_code(code);
    auto enc = make_encoder(cb);
    std::vector<std::size_t> idx{0, 1};
    for (std::size_t p = 0; p < 3; ++p) {
        std::vector<std::size_t> pos{p};
        auto mi = exact_mutual_information(*enc, coordinate_functionals(Field(2), 3, pos), idx);
        EXPECT_TRUE(mi.exact_zero);
    }
}

TEST(binning_code, dump_round_trip)
{
    for (auto cb : {generate_individual(5, 2, 0.2, 3), generate_strong(2, 1, 0.5, 3)}) {
        std::stringstream ss;
        write_codebook(ss, cb);
        EXPECT_EQ(read_codebook(ss), cb);
    }
    std::istringstream bad("codebook mode=individual k=2\n");
    EXPECT_THROW(read_codebook(bad), std::exception);
}
