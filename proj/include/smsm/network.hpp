// Directed unit-capacity multicast networks and random linear network coding.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smsm/coset_code.hpp"
#include "smsm/gf.hpp"

namespace smsm {

class UnsupportedTopology : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
};

struct SourceSpec {
    std::size_t node = 0;
    std::size_t k = 0;  // messages held by this source
};

// Capacity > 1 is modelled as parallel unit edges; every entry of edges()
// is one unit of capacity and carries one packet per run.
class NetworkSpec {
public:
    explicit NetworkSpec(Field field, std::size_t payload_length = 1)
        : field_(std::move(field)), payload_length_(payload_length)
    {
    }

    const Field& field() const { return field_; }
    std::size_t payload_length() const { return payload_length_; }
    void set_payload_length(std::size_t c) { payload_length_ = c; }

    std::size_t add_node(const std::string& name);
    // Throws std::invalid_argument for unknown names.
    std::size_t node(const std::string& name) const;
    std::optional<std::size_t> find_node(const std::string& name) const;
    std::size_t node_count() const { return names_.size(); }
    const std::string& node_name(std::size_t v) const { return names_.at(v); }

    // Adds `multiplicity` parallel unit edges. Throws on a self loop or
    // when the (from, to) link was already declared.
    void add_link(std::size_t from, std::size_t to, std::size_t multiplicity = 1);
    const std::vector<Edge>& edges() const { return edges_; }
    // "from->to" plus "#i" for the i-th parallel copy when multiplicity > 1.
    std::string edge_label(std::size_t e) const;

    void add_source(std::size_t node, std::size_t k);
    void add_destination(std::size_t node);
    const std::vector<SourceSpec>& sources() const { return sources_; }
    const std::vector<std::size_t>& destinations() const { return destinations_; }
    // A node listed both as source and destination; permitted but reported.
    bool sources_overlap_destinations() const;

    bool is_acyclic() const;
    // Kahn order, lowest index first. Throws UnsupportedTopology on a cycle.
    std::vector<std::size_t> topological_order() const;

private:
    Field field_;
    std::size_t payload_length_;
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> copy_index_;
    std::vector<std::size_t> copies_;
    std::vector<SourceSpec> sources_;
    std::vector<std::size_t> destinations_;
};

// The topology used throughout the tests and bundled scenarios: sources s1,
// s2; relays r1..r4 with s1 -> {r1, r2}, s2 -> {r3, r4}; every relay feeds
// each of d1..d4. rho(s, d) = 2, rho({s1, s2}, d) = 4.
NetworkSpec two_source_four_sink_network(Field field, std::size_t k = 2, std::size_t payload = 1);

// Max flow with unit capacities from a (virtual super-)source over `from`.
std::size_t min_cut(const NetworkSpec& spec, const std::vector<std::size_t>& from, std::size_t to);
// Max flow from `from` into a virtual sink z fed with infinite capacity by
// every wiretapped edge.
std::size_t eve_min_cut(const NetworkSpec& spec, const std::vector<std::size_t>& from,
                        const std::vector<std::size_t>& wiretap_edges);

struct CutCondition {
    std::string name;     // e.g. "rho(s,d) >= k"
    std::string subject;  // e.g. "s1 -> d3"
    std::size_t required = 0;
    std::size_t actual = 0;
    bool holds() const { return actual >= required; }
};

struct FeasibilityReport {
    std::size_t w = 0;
    std::vector<CutCondition> individual;    // rho(s,d) >= k, rho(S,d) >= k|S|
    std::vector<CutCondition> naive_strong;  // rho(s,d) >= k+w, rho(S,d) >= (k+w)|S|
    bool individual_feasible = false;
    bool naive_strong_feasible = false;
    std::string text() const;
    // First violated individual condition, if any.
    std::optional<CutCondition> first_violation() const;
};

// Uses each source's own k. An instance without sources or destinations is
// reported infeasible.
FeasibilityReport feasibility_check(const NetworkSpec& spec, std::size_t w);
// Same with every source carrying k messages.
FeasibilityReport feasibility_check(const NetworkSpec& spec, std::size_t k, std::size_t w);

struct Packet {
    std::size_t edge = 0;
    std::vector<Element> coding;   // global coding vector over all source rows
    std::vector<Element> payload;  // length c
};

struct NodeState {
    std::size_t node = 0;
    std::vector<Packet> received;
    // Stacked coding vectors of `received`.
    Matrix decoding_matrix() const;
    std::size_t rank() const;
    std::size_t dimension = 0;  // total source rows
    Field field{2};
};

enum class CoefficientRule {
    // Uniform over the nonzero vectors of the sender's span (zero only when
    // the sender knows nothing).
    uniform_nonzero,
    // Plain uniform combination; the zero packet is possible.
    uniform,
};

struct RlncOptions {
    CoefficientRule rule = CoefficientRule::uniform_nonzero;
};

// Layout of the global coding vector: source i owns columns
// [offset[i], offset[i] + rows[i]).
struct SourceLayout {
    std::vector<std::size_t> offset;
    std::vector<std::size_t> rows;
    std::size_t total = 0;
};

struct RlncRun {
    SourceLayout layout;
    std::vector<NodeState> states;  // indexed by node
    std::vector<Packet> log;        // one per unit edge, in transmission order
};

// codewords[i] belongs to spec.sources()[i]; each is (rows x c) over spec.field().
RlncRun rlnc_run(const NetworkSpec& spec, const std::vector<CodewordMatrix>& codewords,
                 std::uint64_t seed, RlncOptions options = {});

// Every logged payload equals coding * stacked codeword rows.
bool packets_consistent(const RlncRun& run, const std::vector<CodewordMatrix>& codewords);

struct DecodeOutcome {
    std::size_t rank = 0;
    std::size_t needed = 0;
    std::optional<std::vector<CodewordMatrix>> codewords;
    bool complete() const { return codewords.has_value(); }
};

DecodeOutcome decode_at(const NodeState& state, const SourceLayout& layout);

// rho_sd - rho_sz + w, clamped at 0.
std::size_t converse_bound(std::size_t rho_sd, std::size_t rho_sz, std::size_t w);

struct ConverseEntry {
    std::vector<std::size_t> wiretap;
    std::size_t rho_sz = 0;
    std::size_t bound = 0;
};

struct ConverseReport {
    std::size_t rho_sd = 0;
    std::size_t worst_rho_sz = 0;
    std::size_t bound = 0;  // with the worst (largest) rho_sz
    std::vector<ConverseEntry> per_set;
    bool exhaustive = true;
};

// Enumerates wiretap sets of `eve_links` edges (up to `set_cap` of them).
ConverseReport converse_bound(const NetworkSpec& spec, std::size_t source, std::size_t destination,
                              std::size_t w, std::size_t eve_links, std::uint64_t set_cap = 100000);

struct WiretapSets {
    std::vector<std::vector<std::size_t>> sets;
    bool exhaustive = true;
};

// All edge subsets of size 1..w (sizes in increasing order, each
// lexicographic) when their count fits in cap; otherwise cap seeded random
// subsets of size exactly w.
WiretapSets enumerate_wiretap_sets(std::size_t edge_count, std::size_t w, std::uint64_t cap,
                                   std::uint64_t seed);

}  // namespace smsm
