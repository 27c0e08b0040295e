// Scenario files.
//
//   smsm-scenario 1
//   kind multicast            # multicast | gossip | code-audit
//   field 256
//   edge s1 r1 [multiplicity]
//   source s1 2               # multicast: node name and k; gossip: node index and k
//   destination d1
//   code search [budget]      # or: code file PATH, code binning EPSILON [iid|partition|coset]
//   wiretap 1                 # w
//   seed 1
//
// One key per line, '#' starts a comment. Unknown keys are errors.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smsm/adversary.hpp"
#include "smsm/binning_code.hpp"
#include "smsm/coset_code.hpp"
#include "smsm/gossip.hpp"
#include "smsm/network.hpp"

namespace smsm {

enum class ScenarioKind { multicast, gossip, code_audit };
std::string to_string(ScenarioKind k);

struct CodeSelection {
    enum class Kind { search, file, binning };
    Kind kind = Kind::search;
    std::string path;  // resolved against the scenario's directory
    std::uint64_t budget = 1000000;
    double epsilon = 0;
    Construction construction = Construction::iid;
};

struct Scenario {
    int version = 1;
    ScenarioKind kind = ScenarioKind::multicast;
    std::uint32_t q = 2;
    std::uint64_t seed = 0;
    std::size_t w = 1;
    std::size_t k_s = 1;
    std::size_t k = 0;  // code-audit and gossip; multicast takes k from each source line
    std::uint64_t wiretap_cap = 100000;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    CaptureModel capture = CaptureModel::row_access;
    CoefficientRule rule = CoefficientRule::uniform_nonzero;
    std::size_t trials = 1;
    std::size_t flood_trials = 200;
    CodeSelection code;
    std::optional<NetworkSpec> network;  // multicast
    GossipConfig gossip;                 // gossip
};

// Throws ParseError (with the line number) on malformed input and
// std::invalid_argument on semantic errors.
Scenario parse_scenario(std::istream& in, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

// Message codec for one source: coset code or individual binning codebook.
class SourceCodec {
public:
    explicit SourceCodec(CosetCode code);
    explicit SourceCodec(BinCodebook codebook);

    EncoderPtr encoder() const { return encoder_; }
    std::size_t k() const;
    // k x c message matrix -> k x c codeword matrix.
    Matrix encode(const Matrix& messages) const;
    // nullopt when a column cannot be decoded uniquely.
    std::optional<Matrix> decode(const Matrix& codewords) const;
    // Descriptor text (coset codes) or codebook dump.
    std::string describe() const;
    const std::variant<CosetCode, BinCodebook>& code() const { return code_; }

private:
    std::variant<CosetCode, BinCodebook> code_;
    EncoderPtr encoder_;
};

// Builds the codec selected by the scenario for k messages (w from the scenario).
// Throws std::runtime_error when a search finds nothing.
SourceCodec resolve_codec(const Scenario& sc, std::size_t k);

}  // namespace smsm
