// Linear coset code for individual security.
//
// A (k, w) code C with generator G (w x k) partitions GF(q)^k into q^(k-w)
// cosets. A message column m = (m_1..m_k) is laid out as
//   m_1 .. m_{k-w}    coset index (the syndrome H x)
//   m_{k-w+1} .. m_k  position inside the coset
// and encoded as x^T = m^T [Gstar; G].

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "smsm/gf.hpp"

namespace smsm {

class InvalidGenerator : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidCode : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Infeasible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct MessageMatrix {
    std::size_t source = 0;
    Matrix data;  // k x c, one message per row
};

struct CodewordMatrix {
    std::size_t source = 0;
    Matrix data;  // n x c
};

class CosetCode {
public:
    // H spans the null space of G; Gstar is the rref right inverse of H.
    // Throws InvalidGenerator when rank(G) < rows(G) or rows(G) >= cols(G).
    static CosetCode from_generator(const Matrix& generator);
    // Validates every invariant; throws InvalidCode.
    static CosetCode from_parts(Matrix parity_check, Matrix generator, Matrix complement);

    const Field& field() const { return h_.field(); }
    std::size_t k() const { return h_.cols(); }
    std::size_t w() const { return g_.rows(); }
    std::size_t coset_bits() const { return h_.rows(); }
    bool degenerate() const { return w() == 0; }

    const Matrix& parity_check() const { return h_; }
    const Matrix& generator() const { return g_; }
    const Matrix& complement() const { return gstar_; }
    // [Gstar; G], k x k.
    const Matrix& stacked() const { return stacked_; }

    std::vector<Element> encode_column(std::span<const Element> message) const;
    std::vector<Element> decode_column(std::span<const Element> codeword) const;
    std::vector<Element> syndrome(std::span<const Element> codeword) const;

    // Column-by-column; throws std::invalid_argument on a shape mismatch.
    CodewordMatrix encode_matrix(const MessageMatrix& m) const;
    MessageMatrix decode_matrix(const CodewordMatrix& x) const;

private:
    CosetCode(Matrix h, Matrix g, Matrix gstar);

    Matrix h_;
    Matrix g_;
    Matrix gstar_;
    Matrix stacked_;
    Matrix encoder_;  // stacked^T
    Matrix decoder_;  // (stacked^-1)^T
};

// Every w-subset of columns of G has rank w.
bool check_lemma2(const Matrix& generator);
inline bool check_lemma2(const CosetCode& code) { return check_lemma2(code.generator()); }

// ceil(rho_sd / (rho_sd - rho_sz)); throws Infeasible when rho_sz >= rho_sd.
std::uint64_t min_k_bound(std::uint64_t rho_sd, std::uint64_t rho_sz);

struct SearchResult {
    std::optional<CosetCode> code;
    std::uint64_t tried = 0;
    bool exhaustive = false;
};

constexpr std::uint64_t kUnlimitedBudget = std::numeric_limits<std::uint64_t>::max();

// Exhaustive over all q^(wk) generators when that fits in budget (entry
// (0,0) is the most significant digit), otherwise `budget` seeded random
// draws. The returned code passes check_lemma2.
SearchResult search_code(std::size_t k, std::size_t w, const Field& field, std::uint64_t budget,
                         std::uint64_t seed = 0);

// Descriptor: "q k w" then H, G, Gstar in the matrix text format.
CosetCode read_coset_code(std::istream& in);
void write_coset_code(std::ostream& out, const CosetCode& code);

}  // namespace smsm
