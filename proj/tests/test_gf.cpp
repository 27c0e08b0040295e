#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "smsm/gf.hpp"
#include "smsm/rng.hpp"

using namespace smsm;

namespace {

// Schoolbook polynomial product reduced by the field's modulus.
Element slow_mul_binary(Element a, Element b, std::uint32_t modulus, std::uint32_t order)
{
    std::uint32_t acc = 0;
    for (int i = 0; i < 32; ++i)
        if ((b >> i) & 1)
            acc ^= static_cast<std::uint32_t>(a) << i;
    int deg = 0;
    while ((modulus >> (deg + 1)) != 0)
        ++deg;
    for (int i = 31; i >= deg; --i)
        if ((acc >> i) & 1)
            acc ^= modulus << (i - deg);
    EXPECT_LT(acc, order);
    return static_cast<Element>(acc);
}

Element oracle_mul(const Field& f, Element a, Element b)
{
    if (f.is_binary_extension())
        return f.order() == 2 ? (a & b) : slow_mul_binary(a, b, f.modulus(), f.order());
    return static_cast<Element>((std::uint64_t{a} * b) % f.order());
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng)
{
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = static_cast<Element>(rng.uniform(f.order()));
    return m;
}

// Every vector in the row space of a small GF(q) matrix.
std::set<std::vector<Element>> span_of(const Matrix& m)
{
    const Field& f = m.field();
    std::set<std::vector<Element>> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        total *= f.order();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Element> v(m.cols(), 0);
        std::uint64_t x = idx;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Element c = static_cast<Element>(x % f.order());
            x /= f.order();
            for (std::size_t j = 0; j < m.cols(); ++j)
                v[j] = f.add(v[j], f.mul(c, m(i, j)));
        }
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST(gf, field_axioms_exhaustive_small)
{
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 11u, 13u, 16u}) {
        Field f(q);
        for (Element a = 0; a < q; ++a) {
            EXPECT_EQ(f.add(a, 0), a);
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.add(a, f.neg(a)), 0u);
            if (a != 0)
                EXPECT_EQ(f.mul(a, f.inv(a)), 1u) << "q=" << q << " a=" << a;
            for (Element b = 0; b < q; ++b) {
                EXPECT_EQ(f.mul(a, b), oracle_mul(f, a, b));
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.sub(f.add(a, b), b), a);
                for (Element c = 0; c < q; ++c) {
                    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST(gf, field_axioms_random_large)
{
    for (std::uint32_t q : {256u, 251u, 65536u, 65521u}) {
        Field f(q);
        Rng rng(q);
        for (int i = 0; i < 10000; ++i) {
            Element a = static_cast<Element>(rng.uniform(q));
            Element b = static_cast<Element>(rng.uniform(q));
            Element c = static_cast<Element>(rng.uniform(q));
            ASSERT_EQ(f.mul(a, b), oracle_mul(f, a, b));
            ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if (a != 0)
                ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
        }
    }
}

TEST(gf, rejects_unsupported_orders)
{
    for (std::uint32_t q : {0u, 1u, 6u, 9u, 12u, 65537u, 131072u})
        EXPECT_THROW(Field{q}, std::invalid_argument) << q;
    EXPECT_FALSE(is_supported_field_order(6));
    EXPECT_TRUE(is_supported_field_order(256));
}

TEST(gf, rank_examples)
{
    Field f(2);
    EXPECT_EQ(rank(Matrix::identity(f, 3)), 3u);
    EXPECT_EQ(rank(Matrix(f, 2, 4)), 0u);
    EXPECT_EQ(rank(Matrix::from_rows(f, {{1, 1}, {1, 1}})), 1u);
}

TEST(gf, rref_examples)
{
    Field f(2);
    auto p = rref(Matrix::from_rows(f, {{0, 1}, {1, 0}}));
    EXPECT_EQ(p.reduced, Matrix::identity(f, 2));
    EXPECT_EQ(p.pivots, (std::vector<std::size_t>{0, 1}));

    Matrix m = Matrix::from_rows(f, {{1, 1, 0}, {1, 1, 1}});
    auto e = rref(m);
    EXPECT_EQ(e.reduced, Matrix::from_rows(f, {{1, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(span_of(e.reduced), span_of(m));

    auto z = rref(Matrix(f, 2, 3));
    EXPECT_TRUE(z.reduced.is_zero());
    EXPECT_TRUE(z.pivots.empty());
}

TEST(gf, rref_properties_random)
{
    Rng rng(11);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        Field f(q);
        for (int it = 0; it < 60; ++it) {
            Matrix m = random_matrix(f, 1 + rng.uniform(4), 1 + rng.uniform(5), rng);
            auto e = rref(m);
            EXPECT_EQ(rref(e.reduced).reduced, e.reduced);
            EXPECT_EQ(rank(m), e.pivots.size());
            EXPECT_EQ(span_of(e.reduced), span_of(m));
            for (std::size_t i = 0; i < e.pivots.size(); ++i) {
                std::size_t c = e.pivots[i];
                for (std::size_t r = 0; r < e.reduced.rows(); ++r)
                    EXPECT_EQ(e.reduced(r, c), r == i ? 1u : 0u);
            }
        }
    }
}

TEST(gf, packed_binary_matches_generic)
{
    Field f(2);
    Rng rng(5);
    for (int it = 0; it < 300; ++it) {
        Matrix m = random_matrix(f, 1 + rng.uniform(40), 1 + rng.uniform(130), rng);
        auto a = detail::rref_generic(m);
        auto b = detail::rref_packed_binary(m);
        ASSERT_EQ(a.reduced, b.reduced);
        ASSERT_EQ(a.pivots, b.pivots);
    }
}

TEST(gf, nullspace_examples)
{
    Field f(2);
    auto n = nullspace_basis(Matrix::from_rows(f, {{1, 1}}));
    ASSERT_EQ(n.rows(), 1u);
    // Brute force: the only nonzero solution of x0 + x1 = 0 over GF(2).
    EXPECT_EQ(n, Matrix::from_rows(f, {{1, 1}}));
    EXPECT_EQ(nullspace_basis(Matrix::identity(f, 4)).rows(), 0u);
    auto all = nullspace_basis(Matrix(f, 1, 3));
    EXPECT_EQ(all.rows(), 3u);
    EXPECT_EQ(rank(all), 3u);
}

TEST(gf, nullspace_orthogonal_random)
{
    Rng rng(3);
    for (std::uint32_t q : {2u, 3u, 256u}) {
        Field f(q);
        for (int it = 0; it < 50; ++it) {
            Matrix m = random_matrix(f, 1 + rng.uniform(5), 1 + rng.uniform(7), rng);
            Matrix n = nullspace_basis(m);
            EXPECT_EQ(n.rows(), m.cols() - rank(m));
            if (n.rows() > 0) {
                EXPECT_TRUE(multiply(m, n.transpose()).is_zero());
                EXPECT_EQ(rank(n), n.rows());
            }
        }
    }
}

TEST(gf, solve_particular_examples)
{
    Field f(2);
    std::vector<Element> b{1, 0, 1};
    EXPECT_EQ(solve_particular(Matrix::identity(f, 3), b), b);

    Matrix a = Matrix::from_rows(f, {{1, 1}});
    std::vector<Element> one{1};
    auto x = solve_particular(a, one);
    ASSERT_TRUE(x);
    EXPECT_TRUE(*x == (std::vector<Element>{1, 0}) || *x == (std::vector<Element>{0, 1}));
    EXPECT_EQ(multiply(a, *x), one);

    std::vector<Element> b2{0, 1};
    EXPECT_FALSE(solve_particular(Matrix::from_rows(f, {{1, 0}, {1, 0}}), b2));
}

TEST(gf, solve_particular_random)
{
    Rng rng(17);
    Field f(5);
    for (int it = 0; it < 100; ++it) {
        Matrix a = random_matrix(f, 1 + rng.uniform(4), 1 + rng.uniform(4), rng);
        std::vector<Element> x0(a.cols());
        for (auto& v : x0)
            v = static_cast<Element>(rng.uniform(5));
        auto b = multiply(a, x0);
        auto x = solve_particular(a, b);
        ASSERT_TRUE(x);
        EXPECT_EQ(multiply(a, *x), b);
    }
}

TEST(gf, mul_and_invert)
{
    Field f(2);
    Matrix a = Matrix::from_rows(f, {{1, 0, 1}, {0, 1, 1}});
    EXPECT_EQ(a * Matrix::identity(f, 3), a);
    Matrix u = Matrix::from_rows(f, {{1, 1}, {0, 1}});
    auto inv = invert(u);
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv, u);
    EXPECT_EQ(u * *inv, Matrix::identity(f, 2));
    EXPECT_FALSE(invert(Matrix::from_rows(f, {{1, 1}, {1, 1}})));
    EXPECT_THROW(invert(a), std::invalid_argument);
    EXPECT_THROW(a * a, std::invalid_argument);
}

TEST(gf, invertible_iff_full_rank)
{
    Rng rng(23);
    for (std::uint32_t q : {2u, 3u, 16u, 257u}) {
        if (!is_supported_field_order(q))
            continue;
        Field f(q);
        for (int it = 0; it < 200; ++it) {
            std::size_t n = 1 + rng.uniform(5);
            Matrix m = random_matrix(f, n, n, rng);
            auto inv = invert(m);
            EXPECT_EQ(inv.has_value(), rank(m) == n);
            if (inv)
                EXPECT_EQ(m * *inv, Matrix::identity(f, n));
        }
    }
}

TEST(gf, matrix_text_round_trip)
{
    Field f(3);
    Matrix m = Matrix::from_rows(f, {{0, 1, 2}, {2, 2, 0}});
    std::stringstream ss;
    write_matrix(ss, m);
    EXPECT_EQ(read_matrix(ss), m);

    std::istringstream bad("3 1 2\n0 5\n");
    EXPECT_THROW(read_matrix(bad), std::exception);
    std::istringstream comment("# fixture\n2 1 2 # header\n1 1\n");
    EXPECT_EQ(read_matrix(comment), Matrix::from_rows(Field(2), {{1, 1}}));
}
