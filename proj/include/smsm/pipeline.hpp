// End-to-end multicast run: encode, disseminate, decode, audit.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "smsm/adversary.hpp"
#include "smsm/network.hpp"
#include "smsm/scenario.hpp"

namespace smsm {

struct DestinationDecode {
    std::size_t destination = 0;  // node id
    std::size_t rank = 0;
    std::size_t needed = 0;
    bool correct = false;  // every source's messages recovered exactly
};

struct MulticastTrial {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::vector<DestinationDecode> decodes;
    bool all_decoded = false;
    bool audited = false;
    LeakageReport leakage;
};

struct MulticastOptions {
    std::size_t trials = 1;
    std::size_t threads = 1;
    bool force = false;
    bool audit = true;
    // Audit only the first trial; the rest only decode.
    bool audit_first_only = false;
    MiCache* cache = nullptr;
};

struct MulticastResult {
    FeasibilityReport feasibility;
    std::vector<std::string> codes;  // per source
    std::vector<MulticastTrial> trials;
    RlncRun first_run;  // packet log of trial 0

    std::size_t decoded_trials() const;
    bool secure_protected() const;
    bool secure_all() const;
    double max_mi_protected() const;
    double max_mi() const;

    std::string text(const NetworkSpec& spec) const;
    void write_decode_csv(std::ostream& out, const NetworkSpec& spec) const;
    void write_packet_csv(std::ostream& out, const NetworkSpec& spec) const;
};

// Throws Infeasible naming the first violated reliability condition unless
// options.force is set.
MulticastResult run_multicast(const Scenario& sc, const MulticastOptions& options);

// Seed of trial t; trial 0 uses the scenario seed itself.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

}  // namespace smsm
