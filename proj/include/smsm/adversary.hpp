// Eavesdropper model and exact leakage oracle.
//
// Everything here works on one message column: columns of a message matrix
// are independent and uniformly distributed, so I(M_J; Z) for one column
// scales linearly with c.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "smsm/binning_code.hpp"
#include "smsm/coset_code.hpp"
#include "smsm/gf.hpp"
#include "smsm/network.hpp"

namespace smsm {

class EnumerationInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// Maps a message column m (length k) and a randomness index r in
// [0, randomness_count()) to a codeword column x (length n).
class ColumnEncoder {
public:
    virtual ~ColumnEncoder() = default;
    virtual std::string name() const = 0;
    virtual const Field& field() const = 0;
    virtual std::size_t message_length() const = 0;
    virtual std::size_t codeword_length() const = 0;
    virtual std::uint64_t randomness_count() const { return 1; }
    // Messages the scheme is meant to hide: indices [0, protected_count()).
    virtual std::size_t protected_count() const = 0;
    virtual void encode(std::span<const Element> m, std::uint64_t r, std::vector<Element>& x) const = 0;
};

using EncoderPtr = std::shared_ptr<const ColumnEncoder>;

EncoderPtr make_encoder(const CosetCode& code);
// Individual mode: n = k, no randomness. Strong mode: randomness picks the slot.
EncoderPtr make_encoder(const BinCodebook& codebook);
// Concatenation of independent encoders: m, r and x are the concatenations
// of the parts. Used for joint multi-source leakage.
EncoderPtr make_product_encoder(std::vector<EncoderPtr> parts);

struct MutualInformation {
    bool exact_zero = true;
    double bits = 0;
    std::uint64_t outcomes = 0;  // enumerated (m, r) pairs
};

// I(M_J; F x) under uniform m and r, by full enumeration. F has n columns.
// Throws EnumerationInfeasible when q^k * randomness_count() exceeds cap.
MutualInformation exact_mutual_information(const ColumnEncoder& encoder, const Matrix& functionals,
                                           std::span<const std::size_t> subset,
                                           std::uint64_t cap = kDefaultEnumerationCap);

struct WiretapObservation {
    std::vector<std::size_t> edges;
    std::size_t captured = 0;
    std::size_t discarded = 0;  // captures dependent on earlier ones
    Matrix functionals{Field(2), 0, 0};  // rref of the captured coding vectors, rank x dimension
    Matrix values{Field(2), 0, 0};       // matching payload rows, rank x c
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return functionals.rows(); }
};

WiretapObservation canonicalize(const Field& field, std::size_t dimension, std::size_t payload_length,
                                std::span<const Packet> packets);

// How a capture of coding vectors turns into knowledge of one source's codeword.
//   row_access:        Eve is handed the codeword rows at the pivot columns of
//                      the rref of the source's block (the Gaussian-elimination
//                      idealisation, rank preserved).
//   exact_functionals: Eve sees exactly the captured combinations, with the
//                      other sources' contributions removed.
enum class CaptureModel { row_access, exact_functionals };
std::string to_string(CaptureModel m);

// Per-source functionals (rows over the source's codeword rows) implied by an
// observation. Both models give other sources' data to Eve for free.
Matrix project_functionals(const WiretapObservation& obs, const SourceLayout& layout, std::size_t source,
                           CaptureModel model);

// Memo of oracle results keyed by (encoder, functionals, subset). Thread safe.
class MiCache {
public:
    MutualInformation get(const ColumnEncoder& encoder, const Matrix& functionals,
                          std::span<const std::size_t> subset, std::uint64_t cap);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, MutualInformation> memo_;
};

struct LeakageEntry {
    std::string wiretap;
    std::size_t source = 0;
    std::vector<std::size_t> subset;
    bool protected_subset = false;  // subset within the protected (coset-index) messages
    bool joint = false;             // subset = all messages of the source
    std::size_t rank = 0;           // functionals available on this source
    MutualInformation mi;
};

struct LeakageReport {
    std::string encoder;
    std::string capture;
    std::size_t w = 0;
    std::size_t k_s = 0;
    std::size_t wiretap_sets = 0;
    bool exhaustive = true;
    std::vector<LeakageEntry> entries;

    // Over entries with |J| <= k_s.
    double max_mi() const;
    double max_mi_protected() const;
    // No protected subset of size <= k_s leaks.
    bool secure_protected() const;
    // No subset of size <= k_s leaks.
    bool secure_all() const;
    // First entry that breaks secure_protected(), if any.
    const LeakageEntry* witness() const;

    std::string text() const;
    void write_csv(std::ostream& out) const;
};

struct AuditOptions {
    std::size_t w = 1;
    std::size_t k_s = 1;
    CaptureModel capture = CaptureModel::row_access;
    std::uint64_t wiretap_cap = 100000;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::size_t threads = 1;
    std::uint64_t seed = 0;
    // Adds the all-messages subset per source for the chain-rule check.
    bool include_joint = true;
    MiCache* cache = nullptr;
};

// Audits a set of captured packets (already chosen) against per-source encoders.
std::vector<LeakageEntry> audit_capture(const WiretapObservation& obs, const SourceLayout& layout,
                                        const std::vector<EncoderPtr>& encoders,
                                        const AuditOptions& options, const std::string& label);

// Every wiretap set of at most w edges (sampled when over the cap), worst-case
// capture: every packet the logged run sent over the tapped edges.
LeakageReport individual_security_audit(const NetworkSpec& spec, const RlncRun& run,
                                        const std::vector<EncoderPtr>& encoders,
                                        const AuditOptions& options);

// Eve reads w coordinates of the codeword column directly. Every w-subset of
// positions is audited for every subset J of size <= k_s.
LeakageReport coordinate_audit(const EncoderPtr& encoder, const AuditOptions& options);

struct StrongAuditResult {
    std::size_t n = 0;
    std::size_t w = 0;
    std::size_t position_sets = 0;
    bool exhaustive = true;
    double worst_mi = 0;
    double mean_mi = 0;
    bool any_exact_zero = false;
    bool all_exact_zero = false;
    bool decodable = false;  // every word maps back to a single bin
    std::vector<std::pair<std::vector<std::size_t>, MutualInformation>> per_set;
};

// I(M; x_P) for w-subsets P of positions, joint over the within-bin randomness.
// Samples `trials` subsets when there are more.
StrongAuditResult strong_security_audit(const BinCodebook& codebook, std::size_t w, std::size_t trials,
                                        std::uint64_t seed = 0,
                                        std::uint64_t cap = kDefaultEnumerationCap);

// Number of cosets holding a word x with F x = values.
std::uint64_t coset_consistency_count(const CosetCode& code, const Matrix& functionals,
                                      std::span<const Element> values,
                                      std::uint64_t cap = kDefaultEnumerationCap);

// Rows of the identity at the given positions.
Matrix coordinate_functionals(const Field& field, std::size_t n, std::span<const std::size_t> positions);

}  // namespace smsm
