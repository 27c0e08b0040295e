#include <gtest/gtest.h>

#include <sstream>

#include "smsm/pipeline.hpp"
#include "smsm/scenario.hpp"

using namespace smsm;

namespace {

Scenario parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

const char* kTiny = R"(smsm-scenario 1
kind multicast
field 2
payload 3
edge s a
edge s b
edge a d
edge b d
source s 2
destination d
code search
wiretap 1
seed 4
)";

}  // namespace

TEST(scenario, parses_multicast)
{
    auto sc = parse(kTiny);
    EXPECT_EQ(sc.kind, ScenarioKind::multicast);
    EXPECT_EQ(sc.q, 2u);
    EXPECT_EQ(sc.seed, 4u);
    EXPECT_EQ(sc.w, 1u);
    ASSERT_TRUE(sc.network);
    EXPECT_EQ(sc.network->edges().size(), 4u);
    EXPECT_EQ(sc.network->payload_length(), 3u);
    EXPECT_EQ(sc.network->sources().size(), 1u);
    EXPECT_EQ(sc.code.kind, CodeSelection::Kind::search);
}

TEST(scenario, parses_gossip)
{
    auto sc = parse("smsm-scenario 1\nkind gossip\nfield 2\nnodes 8\nexchange pull\nsource 0 3\nsource 5 3\n"
                    "wiretap 1\nseed 9\n");
    EXPECT_EQ(sc.kind, ScenarioKind::gossip);
    EXPECT_EQ(sc.gossip.nodes, 8u);
    EXPECT_EQ(sc.gossip.exchange, Exchange::pull);
    EXPECT_EQ(sc.gossip.sources, (std::vector<std::size_t>{0, 5}));
    EXPECT_EQ(sc.gossip.k, 3u);
    EXPECT_EQ(sc.gossip.seed, 9u);
}

TEST(scenario, rejects_malformed_input)
{
    EXPECT_THROW(parse(""), std::exception);
    EXPECT_THROW(parse("smsm-scenario 2\nkind multicast\n"), std::exception);
    EXPECT_THROW(parse("smsm-scenario 1\nkind multicast\ncolour blue\n"), std::exception);
    EXPECT_THROW(parse("smsm-scenario 1\nkind multicast\nfield 6\n"), std::exception);
    EXPECT_THROW(parse("smsm-scenario 1\nkind multicast\nedge a\n"), std::exception);
    EXPECT_THROW(parse("smsm-scenario 1\nkind gossip\nnodes 4\nsource 0 2\nsource 1 3\n"), std::exception);
    try {
        parse("smsm-scenario 1\nkind multicast\nwiretap many\n");
        FAIL() << "expected a parse error";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find('3'), std::string::npos) << e.what();
    }
}

TEST(scenario, codec_search_and_binning)
{
    auto sc = parse(kTiny);
    auto codec = resolve_codec(sc, 2);
    EXPECT_EQ(codec.k(), 2u);
    Matrix m = Matrix::from_rows(Field(2), {{1, 0, 1}, {1, 1, 0}});
    auto back = codec.decode(codec.encode(m));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, m);

    auto bin = parse(std::string(kTiny) + "code binning 0 partition\n");
    auto bc = resolve_codec(bin, 2);
    auto bb = bc.decode(bc.encode(m));
    ASSERT_TRUE(bb);
    EXPECT_EQ(*bb, m);

    // No binary code hides the coset index of k=4 from 2 coordinates.
    auto none = parse(std::string(kTiny) + "wiretap 2\n");
    EXPECT_THROW(resolve_codec(none, 4), std::runtime_error);
}

TEST(scenario, multicast_pipeline)
{
    auto sc = parse(kTiny);
    MulticastOptions o;
    o.trials = 3;
    auto r = run_multicast(sc, o);
    EXPECT_EQ(r.trials.size(), 3u);
    EXPECT_TRUE(r.secure_protected());
}

TEST(scenario, infeasible_refused_without_force)
{
    auto sc = parse(std::string(kTiny).replace(std::string(kTiny).find("source s 2"), 10, "source s 3"));
    MulticastOptions o;
    try {
        run_multicast(sc, o);
        FAIL() << "expected refusal";
    } catch (const Infeasible& e) {
        EXPECT_NE(std::string(e.what()).find("rho(s,d) >= k"), std::string::npos) << e.what();
    }
    o.force = true;
    o.trials = 1;
    auto r = run_multicast(sc, o);
    EXPECT_EQ(r.decoded_trials(), 0u);
}
