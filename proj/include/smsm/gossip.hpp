// Algebraic gossip on the random phone call model.
//
// Rounds are synchronous: every node picks a peer, and packets are computed
// from the subspaces held at the start of the round. Calls depend only on
// (seed, round), never on the data being gossiped.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smsm/adversary.hpp"
#include "smsm/coset_code.hpp"
#include "smsm/gf.hpp"
#include "smsm/network.hpp"

namespace smsm {

enum class Exchange { push, pull, push_pull };
std::string to_string(Exchange e);
Exchange parse_exchange(const std::string& s);

struct GossipConfig {
    std::size_t nodes = 16;
    Exchange exchange = Exchange::push_pull;
    std::uint32_t q = 2;
    std::vector<std::size_t> sources;  // node ids, distinct
    std::size_t k = 1;                 // rows per source
    std::size_t payload = 1;
    std::uint64_t seed = 0;
    std::size_t max_rounds = 100000;
    // uniform_nonzero: a sender never transmits the zero combination.
    CoefficientRule rule = CoefficientRule::uniform_nonzero;

    // Throws std::invalid_argument on a bad configuration.
    void validate() const;
};

// callees[v] = peer called by v in this round (complete graph, uniform over
// the other nodes). A pure function of (seed, round).
std::vector<std::size_t> round_calls(std::uint64_t seed, std::size_t round, std::size_t nodes);

enum class Direction { push, pull };

struct Transfer {
    std::size_t round = 0;  // 1-based
    std::size_t caller = 0;
    std::size_t callee = 0;
    Direction direction = Direction::push;
    std::size_t from = 0;
    std::size_t to = 0;
    Packet packet;
};

struct GossipTrace {
    std::vector<std::vector<std::size_t>> calls;  // per round: callee of every node
    std::vector<Transfer> transfers;
    std::vector<std::vector<std::size_t>> ranks;  // ranks[t][v] after round t; t = 0 is the start
    std::optional<std::size_t> completion_round;
    SourceLayout layout;
    // Final rref basis [coding | payload] per node.
    std::vector<Matrix> final_basis;
};

// rows[i] is the (k x payload) matrix source i starts with (codewords when
// coded, raw messages otherwise). Empty `rows` means zero payloads.
GossipTrace run(const GossipConfig& config, const std::vector<Matrix>& rows = {});

// Source rows recovered at a node, or nullopt if it is not full rank.
std::optional<std::vector<Matrix>> decode_node(const GossipTrace& trace, std::size_t node);

struct FloodingEstimate {
    double t_hat = 0;      // max over start vertices of the median stopping round
    double alpha_hat = 0;  // base-q slope of the tail
    double alpha_min = 0;  // min over j of -log_q P[S_F >= T + j] / j
    bool lower_bound = false;  // tail empty: alpha_hat only bounds the true value from below
    std::vector<double> tail;       // P[S_F >= T + j], j = 1, 2, ... (max over vertices)
    std::vector<double> residuals;  // fit residuals, same indexing
    std::vector<std::size_t> samples;  // stopping rounds, all vertices, trial order
};

// Uncoded single-message flooding from every vertex, `trials` runs each.
FloodingEstimate estimate_flooding(const GossipConfig& config, std::size_t trials);
// Stopping round of one uncoded flood of a single message started at `start`.
std::size_t flood_once(const GossipConfig& config, std::size_t start, std::uint64_t seed);

// T + (k |S| + log_q(1/eps)) / alpha. Throws on alpha <= 0 or eps outside (0, 1).
double theorem3_rounds(double t, double alpha, std::size_t k, std::size_t num_sources, double eps,
                       std::uint32_t q);

struct MannWhitney {
    double u = 0;
    double z = 0;
    double p_value = 1;
};

// Two-sided, normal approximation with tie correction and continuity correction.
MannWhitney mann_whitney(const std::vector<double>& a, const std::vector<double>& b);

// Nearest-rank percentile, p in (0, 100].
double percentile(std::vector<double> values, double p);

struct SecureGossipReport {
    std::size_t trials = 0;
    std::size_t w = 0;
    std::vector<std::size_t> coded_rounds;
    std::vector<std::size_t> uncoded_rounds;
    std::size_t incomplete = 0;     // runs that hit max_rounds
    std::size_t decode_failures = 0;  // coded runs where some node recovered wrong messages
    std::size_t leaking_trials = 0;   // protected subsets leaked in this many trials
    std::size_t audited_trials = 0;
    double max_mi_protected = 0;
    double max_mi_all = 0;
    bool audit_exhaustive = true;
    MannWhitney test;
    double significance = 0.01;
    std::optional<GossipTrace> first_trace;  // coded run of trial 0
    bool indistinguishable() const { return test.p_value >= significance; }
    bool secure() const { return leaking_trials == 0; }

    std::string text() const;
    void write_csv(std::ostream& out) const;
};

struct SecureGossipOptions {
    std::size_t k_s = 1;
    CaptureModel capture = CaptureModel::row_access;
    double significance = 0.01;
    std::size_t threads = 1;
    MiCache* cache = nullptr;
};

// Sources coset-encode uniform messages and gossip; Eve taps w transfers
// chosen uniformly without replacement; a second batch with independent seeds
// gossips the raw messages as the uncoded baseline.
SecureGossipReport secure_gossip_experiment(const GossipConfig& config, const CosetCode& code, std::size_t w,
                                            std::size_t trials, const SecureGossipOptions& options = {});

// One line per transfer: round,caller,callee,direction,from,to,coding,payload digest.
void write_trace(std::ostream& out, const GossipTrace& trace);

}  // namespace smsm
