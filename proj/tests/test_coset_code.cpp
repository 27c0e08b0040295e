#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "smsm/adversary.hpp"
#include "smsm/combinatorics.hpp"
#include "smsm/coset_code.hpp"
#include "smsm/rng.hpp"

using namespace smsm;

namespace {

std::vector<Element> digits(std::uint64_t idx, std::uint32_t q, std::size_t n)
{
    std::vector<Element> v(n);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = static_cast<Element>(idx % q);
        idx /= q;
    }
    return v;
}

CosetCode k2_code() { return CosetCode::from_generator(Matrix::from_rows(Field(2), {{1, 1}})); }

void expect_invariants(const CosetCode& c)
{
    const Field& f = c.field();
    EXPECT_EQ(rank(c.parity_check()), c.k() - c.w());
    EXPECT_EQ(rank(c.generator()), c.w());
    if (c.w() > 0 && c.k() > c.w())
        EXPECT_TRUE(multiply(c.parity_check(), c.generator().transpose()).is_zero());
    if (c.k() > c.w())
        EXPECT_EQ(multiply(c.parity_check(), c.complement().transpose()), Matrix::identity(f, c.k() - c.w()));
    EXPECT_TRUE(invert(vstack(c.complement(), c.generator())).has_value());
}

}  // namespace

TEST(coset_code, two_source_construction)
{
    auto c = k2_code();
    EXPECT_EQ(c.parity_check(), Matrix::from_rows(Field(2), {{1, 1}}));
    EXPECT_EQ(c.complement(), Matrix::from_rows(Field(2), {{1, 0}}));
    expect_invariants(c);
}

TEST(coset_code, systematic_generator)
{
    Field f(3);
    Matrix g = Matrix::from_rows(f, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    auto c = CosetCode::from_generator(g);
    expect_invariants(c);
    // H must vanish on the first two coordinates.
    for (std::size_t r = 0; r < c.parity_check().rows(); ++r) {
        EXPECT_EQ(c.parity_check()(r, 0), 0u);
        EXPECT_EQ(c.parity_check()(r, 1), 0u);
    }
}

TEST(coset_code, rejects_bad_generators)
{
    Field f(2);
    EXPECT_THROW(CosetCode::from_generator(Matrix::from_rows(f, {{1, 1}, {1, 1}})), InvalidGenerator);
    EXPECT_THROW(CosetCode::from_generator(Matrix::identity(f, 2)), InvalidGenerator);
}

TEST(coset_code, k2_encode_decode_examples)
{
    auto c = k2_code();
    using V = std::vector<Element>;
    EXPECT_EQ(c.encode_column(V{0, 0}), (V{0, 0}));
    EXPECT_EQ(c.encode_column(V{1, 0}), (V{1, 0}));
    EXPECT_EQ(c.encode_column(V{1, 1}), (V{0, 1}));
    EXPECT_EQ(c.decode_column(V{0, 1}), (V{1, 1}));
    EXPECT_EQ(c.decode_column(V{0, 0}), (V{0, 0}));
    // Both x=(1,0) and x=(0,1) solve H x = 1; the encoder picks one of them.
    Matrix h = c.parity_check();
    for (V m : {V{1, 0}, V{1, 1}}) {
        auto x = c.encode_column(m);
        EXPECT_EQ(multiply(h, x), (V{m[0]}));
    }
}

TEST(coset_code, bijective_and_syndrome_law_exhaustive)
{
    Rng rng(2);
    for (std::uint32_t q : {2u, 3u, 4u}) {
        Field f(q);
        for (std::size_t k = 2; k <= 5; ++k) {
            for (std::size_t w = 1; w < k; ++w) {
                Matrix g(f, w, k);
                do {
                    for (std::size_t i = 0; i < w; ++i)
                        for (std::size_t j = 0; j < k; ++j)
                            g(i, j) = static_cast<Element>(rng.uniform(q));
                } while (rank(g) < w);
                auto c = CosetCode::from_generator(g);
                expect_invariants(c);
                std::uint64_t total = saturating_pow(q, k);
                if (total > 4096)
                    continue;
                std::set<std::vector<Element>> seen;
                for (std::uint64_t idx = 0; idx < total; ++idx) {
                    auto m = digits(idx, q, k);
                    auto x = c.encode_column(m);
                    ASSERT_EQ(c.decode_column(x), m);
                    auto s = c.syndrome(x);
                    ASSERT_EQ(s, std::vector<Element>(m.begin(), m.begin() + static_cast<long>(k - w)));
                    seen.insert(x);
                    // Adding any codeword of C stays in the same coset.
                    std::vector<Element> y = x;
                    auto shift = multiply(g.transpose(), digits(idx % saturating_pow(q, w), q, w));
                    for (std::size_t j = 0; j < k; ++j)
                        y[j] = f.add(y[j], shift[j]);
                    ASSERT_EQ(c.syndrome(y), s);
                }
                EXPECT_EQ(seen.size(), total);
            }
        }
    }
}

TEST(coset_code, matrix_round_trip)
{
    Field f(2);
    auto c = CosetCode::from_generator(Matrix::from_rows(f, {{1, 1, 0}}));
    Rng rng(9);
    Matrix m(f, 3, 5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            m(i, j) = static_cast<Element>(rng.uniform(2));
    auto x = c.encode_matrix({0, m});
    EXPECT_EQ(c.decode_matrix(x).data, m);
    for (std::size_t j = 0; j < 5; ++j)
        EXPECT_EQ(x.data.column(j), c.encode_column(m.column(j)));
    EXPECT_TRUE(c.encode_matrix({0, Matrix(f, 3, 4)}).data.is_zero());
    EXPECT_THROW(c.encode_matrix({0, Matrix(f, 2, 4)}), std::invalid_argument);
}

TEST(coset_code, column_check_examples)
{
    Field f(2);
    EXPECT_TRUE(check_lemma2(Matrix::from_rows(f, {{1, 1}})));
    EXPECT_FALSE(check_lemma2(Matrix::from_rows(f, {{1, 0}})));
    EXPECT_FALSE(check_lemma2(Matrix::from_rows(f, {{1, 0, 1, 1}, {0, 1, 1, 0}})));
}

TEST(coset_code, min_k_bound_examples)
{
    EXPECT_EQ(min_k_bound(2, 1), 2u);
    EXPECT_EQ(min_k_bound(4, 2), 2u);
    EXPECT_EQ(min_k_bound(3, 2), 3u);
    EXPECT_THROW(min_k_bound(2, 2), Infeasible);
    EXPECT_THROW(min_k_bound(1, 3), Infeasible);
}

TEST(coset_code, search_examples)
{
    auto r = search_code(2, 1, Field(2), kUnlimitedBudget);
    ASSERT_TRUE(r.code);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.code->generator(), Matrix::from_rows(Field(2), {{1, 1}}));

    // A [3,2] binary code whose every pair of columns is independent exists:
    // columns (0,1), (1,0), (1,1).
    auto b3 = search_code(3, 2, Field(2), kUnlimitedBudget);
    ASSERT_TRUE(b3.code);
    EXPECT_TRUE(check_lemma2(*b3.code));

    // Over GF(2) only three nonzero columns exist in dimension 2, so k=4 fails.
    auto b4 = search_code(4, 2, Field(2), kUnlimitedBudget);
    EXPECT_FALSE(b4.code);
    EXPECT_TRUE(b4.exhaustive);

    auto t = search_code(3, 2, Field(3), kUnlimitedBudget);
    ASSERT_TRUE(t.code);
    EXPECT_TRUE(check_lemma2(*t.code));

    auto sampled = search_code(6, 2, Field(16), 2000, 4);
    ASSERT_TRUE(sampled.code);
    EXPECT_FALSE(sampled.exhaustive);
    EXPECT_TRUE(check_lemma2(*sampled.code));
}

// Independent brute-force count of generators passing the column condition.
TEST(coset_code, search_agrees_with_brute_force)
{
    Field f(2);
    std::size_t k = 3, w = 2, passing = 0;
    for (std::uint64_t idx = 0; idx < 64; ++idx) {
        auto d = digits(idx, 2, 6);
        Matrix g(f, w, k, d);
        if (rank(g) < w)
            continue;
        bool ok = true;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                bool ca = g(0, a) || g(1, a), cb = g(0, b) || g(1, b);
                bool same = g(0, a) == g(0, b) && g(1, a) == g(1, b);
                ok = ok && ca && cb && !same;
            }
        passing += ok;
        EXPECT_EQ(check_lemma2(g), ok);
    }
    EXPECT_EQ(passing, 6u);  // orderings of the three nonzero columns
}

TEST(coset_code, checker_agrees_with_leakage_oracle)
{
    Rng rng(31);
    for (std::uint32_t q : {2u, 3u}) {
        Field f(q);
        for (std::size_t k = 2; k <= 5; ++k)
            for (std::size_t w = 1; w <= 2 && w < k; ++w)
                for (int it = 0; it < 8; ++it) {
                    Matrix g(f, w, k);
                    do {
                        for (std::size_t i = 0; i < w; ++i)
                            for (std::size_t j = 0; j < k; ++j)
                                g(i, j) = static_cast<Element>(rng.uniform(q));
                    } while (rank(g) < w);
                    auto code = CosetCode::from_generator(g);
                    auto enc = make_encoder(code);
                    std::vector<std::size_t> coset_index(k - w);
                    for (std::size_t i = 0; i < k - w; ++i)
                        coset_index[i] = i;
                    bool oracle_zero = true;
                    bool counts_full = true;
                    for_each_combination(k, w, [&](const std::vector<std::size_t>& pos) {
                        Matrix fn = coordinate_functionals(f, k, pos);
                        auto mi = exact_mutual_information(*enc, fn, coset_index);
                        oracle_zero = oracle_zero && mi.exact_zero;
                        // Every observation must be consistent with all q^(k-w) cosets.
                        std::vector<Element> zeros(w, 0);
                        counts_full = counts_full &&
                                      coset_consistency_count(code, fn, zeros) == saturating_pow(q, k - w);
                        return true;
                    });
                    EXPECT_EQ(check_lemma2(code), oracle_zero) << to_string(g);
                    EXPECT_EQ(check_lemma2(code), counts_full) << to_string(g);
                }
    }
}

TEST(coset_code, descriptor_round_trip)
{
    auto c = CosetCode::from_generator(Matrix::from_rows(Field(3), {{1, 1, 1}, {0, 1, 2}}));
    std::stringstream ss;
    write_coset_code(ss, c);
    auto back = read_coset_code(ss);
    EXPECT_EQ(back.generator(), c.generator());
    EXPECT_EQ(back.parity_check(), c.parity_check());
    EXPECT_EQ(back.complement(), c.complement());

    // Corrupt Gstar: H Gstar^T no longer the identity.
    std::istringstream bad("2 2 1\n2 1 2\n1 1\n2 1 2\n1 1\n2 1 2\n1 1\n");
    EXPECT_THROW(read_coset_code(bad), std::exception);
}

TEST(coset_code, degenerate_identity)
{
    Field f(2);
    auto c = CosetCode::from_parts(Matrix::identity(f, 3), Matrix(f, 0, 3), Matrix::identity(f, 3));
    EXPECT_TRUE(c.degenerate());
    std::vector<Element> m{1, 0, 1};
    EXPECT_EQ(c.encode_column(m), m);
}
