// Random-binning codebooks over GF(2).
//
// individual: 2^(k-w) bins of Delta length-k codewords. The first k-w
//             message bits pick the bin, the last w bits the slot.
// strong:     2^k bins (one per message column) of Delta length-n
//             codewords, n >= k+w; the slot is drawn from fresh randomness.
//
// Delta = 2^(w + ceil(n * epsilon)). Codewords are packed into a uint64
// with coordinate j at bit j; message bit strings are read most
// significant first.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "smsm/coset_code.hpp"
#include "smsm/gf.hpp"

namespace smsm {

enum class BinMode { individual, strong };

// iid: every slot an independent Bernoulli(1/2) word.
// partition: epsilon = 0, a seeded permutation of GF(2)^k cut into bins.
// coset: bins are the cosets of a binary linear code.
enum class Construction { iid, partition, coset };

std::string to_string(BinMode m);
std::string to_string(Construction c);

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultCellCap = std::uint64_t{1} << 24;

class BinCodebook {
public:
    // slots.size() must equal bin_count * delta. Throws std::invalid_argument
    // on any inconsistency.
    BinCodebook(BinMode mode, Construction construction, std::size_t k, std::size_t w,
                std::size_t n, double epsilon, std::uint64_t seed, std::uint64_t delta,
                std::vector<std::uint64_t> slots);

    BinMode mode() const { return mode_; }
    Construction construction() const { return construction_; }
    std::size_t k() const { return k_; }
    std::size_t w() const { return w_; }
    std::size_t n() const { return n_; }
    double epsilon() const { return epsilon_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t delta() const { return delta_; }
    std::uint64_t bin_count() const { return bin_count_; }
    // Message bits that select the bin: k-w (individual) or k (strong).
    std::size_t bin_bits() const { return mode_ == BinMode::individual ? k_ - w_ : k_; }
    // Delta / 2^w: expected number of words per bin agreeing with w observed bits.
    double expected_shell_count() const;

    std::uint64_t codeword(std::uint64_t bin, std::uint64_t slot) const
    {
        return slots_[bin * delta_ + slot];
    }
    const std::vector<std::uint64_t>& slots() const { return slots_; }

    // (bin, slot) pairs holding exactly this word, in slot order.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> lookup(std::uint64_t word) const;
    // No word appears in two different bins.
    bool bins_disjoint() const;
    // Every stored word is distinct.
    bool injective() const;

    friend bool operator==(const BinCodebook& a, const BinCodebook& b);

private:
    BinMode mode_;
    Construction construction_;
    std::size_t k_, w_, n_;
    double epsilon_;
    std::uint64_t seed_;
    std::uint64_t delta_;
    std::uint64_t bin_count_;
    std::vector<std::uint64_t> slots_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> index_;  // (word, flat slot), sorted
};

// 2^(w + ceil(n*epsilon)); n*epsilon within 1e-9 of an integer counts as that integer.
std::uint64_t delta_for(std::size_t w, std::size_t n, double epsilon);

BinCodebook generate_individual(std::size_t k, std::size_t w, double epsilon, std::uint64_t seed,
                                Construction construction = Construction::iid,
                                std::uint64_t cell_cap = kDefaultCellCap);
// n = 0 selects the minimum k + w.
BinCodebook generate_strong(std::size_t k, std::size_t w, double epsilon, std::uint64_t seed,
                            std::size_t n = 0, std::uint64_t cell_cap = kDefaultCellCap);
// Individual-mode codebook whose bins are the cosets of a GF(2) code.
BinCodebook codebook_from_coset_code(const CosetCode& code);

std::uint64_t pack_bits(std::span<const Element> bits);
std::vector<Element> unpack_bits(std::uint64_t word, std::size_t n);

enum class DecodeStatus { unique, ambiguous, not_found };

struct BinCandidate {
    std::uint64_t bin = 0;
    std::uint64_t slot = 0;
    friend bool operator==(const BinCandidate&, const BinCandidate&) = default;
};

struct BinDecode {
    DecodeStatus status = DecodeStatus::not_found;
    std::vector<Element> message;  // set when unique
    std::vector<BinCandidate> candidates;
};

std::vector<Element> encode_individual(const BinCodebook& cb, std::span<const Element> message);
BinDecode decode_individual(const BinCodebook& cb, std::span<const Element> codeword);
std::vector<Element> encode_strong(const BinCodebook& cb, std::span<const Element> message,
                                   std::uint64_t randomness);
// Unique iff every candidate lies in one bin (slot choice is not part of the message).
BinDecode decode_strong(const BinCodebook& cb, std::span<const Element> codeword);

struct ShellReport {
    std::vector<std::size_t> positions;
    std::vector<Element> values;
    std::vector<std::uint64_t> per_bin;
    std::uint64_t total = 0;
    double mean = 0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;
};

ShellReport shell_report(const BinCodebook& cb, std::span<const std::size_t> positions,
                         std::span<const Element> values);

struct ConcentrationResult {
    bool pass = false;
    double fraction_within = 0;
    double expected = 0;
    double mean_count = 0;
    std::uint64_t min_count = 0;
    std::uint64_t max_count = 0;
    std::uint64_t pairs = 0;
};

// Draws `trials` observations (random w positions, random values) and
// measures how many (observation, bin) counts fall inside
// [(1-varepsilon) E, (1+varepsilon) E], E = expected_shell_count().
ConcentrationResult concentration_check(const BinCodebook& cb, std::size_t trials,
                                        double varepsilon, double threshold, std::uint64_t seed);

// Header line with mode, construction, k, w, n, epsilon, seed, delta; then
// one line per bin of space-separated bit strings (coordinate 0 first).
void write_codebook(std::ostream& out, const BinCodebook& cb);
BinCodebook read_codebook(std::istream& in);

}  // namespace smsm
