#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "smsm/gossip.hpp"
#include "smsm/rng.hpp"

using namespace smsm;

namespace {

GossipConfig config16(std::uint64_t seed)
{
    GossipConfig c;
    c.nodes = 16;
    c.exchange = Exchange::push_pull;
    c.q = 2;
    c.sources = {0, 1};
    c.k = 4;
    c.payload = 2;
    c.seed = seed;
    return c;
}

std::vector<Matrix> random_rows(const GossipConfig& c, std::uint64_t seed)
{
    Field f(c.q);
    Rng rng(seed);
    std::vector<Matrix> rows;
    for (std::size_t i = 0; i < c.sources.size(); ++i) {
        Matrix m(f, c.k, c.payload);
        for (std::size_t r = 0; r < c.k; ++r)
            for (std::size_t j = 0; j < c.payload; ++j)
                m(r, j) = static_cast<Element>(rng.uniform(c.q));
        rows.push_back(m);
    }
    return rows;
}

}  // namespace

TEST(gossip, exchange_parsing)
{
    EXPECT_EQ(parse_exchange("push"), Exchange::push);
    EXPECT_EQ(parse_exchange("pull"), Exchange::pull);
    EXPECT_EQ(parse_exchange("push-pull"), Exchange::push_pull);
    EXPECT_THROW(parse_exchange("shout"), std::invalid_argument);
}

TEST(gossip, config_validation)
{
    GossipConfig c;
    c.nodes = 1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.nodes = 4;
    c.sources = {4};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.sources = {1, 1};
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(gossip, calls_are_uniform_peers)
{
    for (std::size_t round = 1; round < 50; ++round) {
        auto calls = round_calls(9, round, 7);
        ASSERT_EQ(calls.size(), 7u);
        for (std::size_t v = 0; v < 7; ++v) {
            EXPECT_NE(calls[v], v);
            EXPECT_LT(calls[v], 7u);
        }
        EXPECT_EQ(calls, round_calls(9, round, 7));
    }
}

TEST(gossip, two_nodes_push_one_round)
{
    GossipConfig c;
    c.nodes = 2;
    c.exchange = Exchange::push;
    c.sources = {0};
    c.k = 1;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        c.seed = seed;
        auto t = run(c);
        ASSERT_TRUE(t.completion_round);
        EXPECT_EQ(*t.completion_round, 1u);
    }
}

TEST(gossip, no_sources_complete_at_zero)
{
    GossipConfig c;
    c.nodes = 5;
    auto t = run(c);
    ASSERT_TRUE(t.completion_round);
    EXPECT_EQ(*t.completion_round, 0u);
}

TEST(gossip, golden_v16)
{
    auto c = config16(7);
    auto t = run(c, random_rows(c, 7));
    ASSERT_TRUE(t.completion_round);
    // Recorded from this seed.
    EXPECT_EQ(*t.completion_round, 11u);
}

TEST(gossip, ranks_monotone_and_decode)
{
    for (auto ex : {Exchange::push, Exchange::pull, Exchange::push_pull}) {
        auto c = config16(3);
        c.exchange = ex;
        auto rows = random_rows(c, 3);
        auto t = run(c, rows);
        ASSERT_TRUE(t.completion_round) << to_string(ex);
        for (std::size_t r = 1; r < t.ranks.size(); ++r)
            for (std::size_t v = 0; v < c.nodes; ++v)
                ASSERT_GE(t.ranks[r][v], t.ranks[r - 1][v]);
        const auto& last = t.ranks[*t.completion_round];
        for (auto rk : last)
            EXPECT_EQ(rk, c.k * c.sources.size());
        for (std::size_t v = 0; v < c.nodes; ++v) {
            auto d = decode_node(t, v);
            ASSERT_TRUE(d);
            for (std::size_t i = 0; i < rows.size(); ++i)
                EXPECT_EQ((*d)[i], rows[i]);
        }
    }
}

TEST(gossip, oblivious_to_payloads)
{
    auto c = config16(11);
    auto a = run(c, random_rows(c, 1));
    auto b = run(c, random_rows(c, 2));
    std::size_t common = std::min(a.calls.size(), b.calls.size());
    ASSERT_GT(common, 0u);
    for (std::size_t r = 0; r < common; ++r)
        EXPECT_EQ(a.calls[r], b.calls[r]);
    // Same seed, permuted sources' payloads: coding vectors and ranks are unchanged.
    auto rows = random_rows(c, 5);
    std::swap(rows[0], rows[1]);
    auto p = run(c, rows);
    auto q = run(c, random_rows(c, 5));
    EXPECT_EQ(p.completion_round, q.completion_round);
    EXPECT_EQ(p.ranks, q.ranks);
}

TEST(gossip, flooding_scale)
{
    GossipConfig c;
    c.nodes = 16;
    c.exchange = Exchange::push_pull;
    c.seed = 5;
    auto e16 = estimate_flooding(c, 100);
    EXPECT_GE(e16.t_hat, 4.0);
    EXPECT_LE(e16.t_hat, 16.0);
    EXPECT_GT(e16.alpha_hat, 0.0);
    c.nodes = 32;
    auto e32 = estimate_flooding(c, 100);
    EXPECT_LE(std::abs(e32.t_hat - e16.t_hat - 1.0), 2.0);

    c.nodes = 2;
    auto e2 = estimate_flooding(c, 100);
    EXPECT_EQ(e2.t_hat, 1.0);
    EXPECT_TRUE(e2.lower_bound);
    for (double t : e2.tail)
        EXPECT_EQ(t, 0.0);
}

TEST(gossip, round_bound_examples)
{
    EXPECT_NEAR(theorem3_rounds(5, 1, 1, 1, 0.5, 2), 7.0, 1e-12);
    EXPECT_NEAR(theorem3_rounds(5, 1, 1, 1, 1.0 / 3, 3), 7.0, 1e-12);
    EXPECT_NEAR(theorem3_rounds(5, 2, 0, 1, 0.25, 2), 5.0 + 2.0 / 2.0, 1e-12);
    double one = theorem3_rounds(3, 0.5, 2, 2, 0.1, 2);
    double two = theorem3_rounds(3, 0.5, 4, 2, 0.1, 2);
    EXPECT_NEAR(two - one, 4.0 / 0.5, 1e-12);
    EXPECT_THROW(theorem3_rounds(3, 0, 1, 1, 0.1, 2), std::invalid_argument);
    EXPECT_THROW(theorem3_rounds(3, 1, 1, 1, 1.0, 2), std::invalid_argument);
}

TEST(gossip, mann_whitney_reference)
{
    // Two-sided normal approximation with continuity correction:
    // U = 0, mean 4.5, sd sqrt(5.25), z = -4 / sqrt(5.25).
    auto r = mann_whitney({1, 2, 3}, {4, 5, 6});
    EXPECT_NEAR(std::abs(r.z), 4.0 / std::sqrt(5.25), 1e-9);
    EXPECT_NEAR(r.p_value, std::erfc(4.0 / std::sqrt(5.25) / std::sqrt(2.0)), 1e-12);
    auto same = mann_whitney({1, 1, 2, 2}, {1, 1, 2, 2});
    EXPECT_NEAR(same.p_value, 1.0, 1e-12);
    auto tied = mann_whitney({3, 3, 3}, {3, 3, 3});
    EXPECT_EQ(tied.p_value, 1.0);
}

TEST(gossip, percentile_nearest_rank)
{
    std::vector<double> v{10, 1, 9, 2, 8, 3, 7, 4, 6, 5};
    EXPECT_EQ(percentile(v, 50), 5.0);
    EXPECT_EQ(percentile(v, 95), 10.0);
    EXPECT_EQ(percentile(v, 10), 1.0);
    EXPECT_EQ(percentile(v, 100), 10.0);
}

TEST(gossip, secure_experiment_small)
{
    GossipConfig c;
    c.nodes = 16;
    c.exchange = Exchange::push_pull;
    c.q = 2;
    c.sources = {0};
    c.k = 2;
    c.seed = 21;
    auto code = CosetCode::from_generator(Matrix::from_rows(Field(2), {{1, 1}}));
    auto rep = secure_gossip_experiment(c, code, 1, 30);
    EXPECT_EQ(rep.coded_rounds.size(), 30u);
    EXPECT_EQ(rep.uncoded_rounds.size(), 30u);
    EXPECT_EQ(rep.decode_failures, 0u);
    EXPECT_EQ(rep.incomplete, 0u);
    EXPECT_TRUE(rep.secure());
    EXPECT_EQ(rep.audited_trials, 30u);

    auto none = secure_gossip_experiment(c, code, 0, 5);
    EXPECT_TRUE(none.secure());
    EXPECT_EQ(none.max_mi_all, 0.0);
}

TEST(gossip, full_capture_leaks)
{
    // Eve holding k independent rows of a source sees the whole codeword.
    auto code = CosetCode::from_generator(Matrix::from_rows(Field(2), {{1, 1}}));
    SourceLayout layout{{0}, {2}, 2};
    std::vector<Packet> taps{{0, {1, 0}, {0}}, {1, {1, 1}, {0}}};
    auto obs = canonicalize(Field(2), 2, 1, taps);
    AuditOptions o;
    o.w = 2;
    o.k_s = 1;
    auto entries = audit_capture(obs, layout, {make_encoder(code)}, o, "two calls");
    bool leaked = false;
    for (const auto& e : entries)
        leaked = leaked || (e.subset.size() == 1 && !e.mi.exact_zero);
    EXPECT_TRUE(leaked);
}

TEST(gossip, trace_csv)
{
    GossipConfig c;
    c.nodes = 3;
    c.sources = {0};
    c.seed = 2;
    auto t = run(c);
    std::ostringstream os;
    write_trace(os, t);
    std::string s = os.str();
    EXPECT_EQ(s.rfind("round,caller,callee,direction,from,to,coding,payload_digest\n", 0), 0u);
    std::size_t lines = static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
    EXPECT_EQ(lines, t.transfers.size() + 1);
}
