#include "smsm/coset_code.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "smsm/combinatorics.hpp"
#include "smsm/rng.hpp"

namespace smsm {

namespace {

Matrix right_inverse_rows(const Matrix& h)
{
    // Row i solves H y = e_i with free variables zero.
    Matrix gstar(h.field(), 0, h.cols());
    std::vector<Element> e(h.rows(), 0);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::fill(e.begin(), e.end(), 0);
        e[i] = 1;
        auto y = solve_particular(h, e);
        if (!y)
            throw std::logic_error("parity-check matrix lost full row rank");
        gstar.append_row(*y);
    }
    return gstar;
}

}  // namespace

CosetCode::CosetCode(Matrix h, Matrix g, Matrix gstar)
    : h_(std::move(h)),
      g_(std::move(g)),
      gstar_(std::move(gstar)),
      stacked_(vstack(gstar_, g_)),
      encoder_(stacked_.transpose()),
      decoder_(stacked_)
{
    auto inv = invert(stacked_);
    if (!inv)
        throw InvalidCode("[Gstar; G] is singular");
    decoder_ = inv->transpose();
}

CosetCode CosetCode::from_generator(const Matrix& generator)
{
    const std::size_t w = generator.rows();
    const std::size_t k = generator.cols();
    if (k == 0 || w >= k)
        throw InvalidGenerator("generator must have fewer rows than columns (w < k), got " +
                               std::to_string(w) + "x" + std::to_string(k));
    if (rank(generator) != w)
        throw InvalidGenerator("generator rows are linearly dependent");
    Matrix h = nullspace_basis(generator);
    Matrix gstar = right_inverse_rows(h);
    return CosetCode(std::move(h), generator, std::move(gstar));
}

CosetCode CosetCode::from_parts(Matrix parity_check, Matrix generator, Matrix complement)
{
    const std::size_t k = parity_check.cols();
    const std::size_t kp = parity_check.rows();
    const std::size_t w = generator.rows();
    const Field& f = parity_check.field();
    if (!(generator.field() == f) || !(complement.field() == f))
        throw InvalidCode("H, G and Gstar must share one field");
    if (generator.cols() != k || complement.cols() != k || complement.rows() != kp)
        throw InvalidCode("H, G, Gstar shapes disagree");
    if (kp + w != k || w >= k)
        throw InvalidCode("need rows(H) + rows(G) = k and w < k");
    if (rank(parity_check) != kp)
        throw InvalidCode("rank(H) != k - w");
    if (rank(generator) != w)
        throw InvalidCode("rank(G) != w");
    if (!multiply(parity_check, generator.transpose()).is_zero())
        throw InvalidCode("H G^T != 0");
    if (!(multiply(parity_check, complement.transpose()) == Matrix::identity(f, kp)))
        throw InvalidCode("H Gstar^T != I");
    return CosetCode(std::move(parity_check), std::move(generator), std::move(complement));
}

std::vector<Element> CosetCode::encode_column(std::span<const Element> message) const
{
    if (message.size() != k())
        throw std::invalid_argument("encode_column: message length != k");
    return multiply(encoder_, message);
}

std::vector<Element> CosetCode::decode_column(std::span<const Element> codeword) const
{
    if (codeword.size() != k())
        throw std::invalid_argument("decode_column: codeword length != k");
    return multiply(decoder_, codeword);
}

std::vector<Element> CosetCode::syndrome(std::span<const Element> codeword) const
{
    return multiply(h_, codeword);
}

CodewordMatrix CosetCode::encode_matrix(const MessageMatrix& m) const
{
    if (m.data.rows() != k() || !(m.data.field() == field()))
        throw std::invalid_argument("encode_matrix: message matrix must be k x c over the code field");
    return {m.source, multiply(encoder_, m.data)};
}

MessageMatrix CosetCode::decode_matrix(const CodewordMatrix& x) const
{
    if (x.data.rows() != k() || !(x.data.field() == field()))
        throw std::invalid_argument("decode_matrix: codeword matrix must be k x c over the code field");
    return {x.source, multiply(decoder_, x.data)};
}

bool check_lemma2(const Matrix& generator)
{
    const std::size_t w = generator.rows();
    bool ok = true;
    for_each_combination(generator.cols(), w, [&](const std::vector<std::size_t>& cols) {
        if (rank(generator.select_columns(cols)) != w)
            ok = false;
        return ok;
    });
    return ok;
}

std::uint64_t min_k_bound(std::uint64_t rho_sd, std::uint64_t rho_sz)
{
    if (rho_sz >= rho_sd)
        throw Infeasible("eavesdropper cut " + std::to_string(rho_sz) +
                         " >= destination cut " + std::to_string(rho_sd) +
                         ": no positive-rate secure code");
    const std::uint64_t gap = rho_sd - rho_sz;
    return (rho_sd + gap - 1) / gap;
}

SearchResult search_code(std::size_t k, std::size_t w, const Field& field, std::uint64_t budget,
                         std::uint64_t seed)
{
    if (w >= k)
        throw std::invalid_argument("search_code: need w < k");
    SearchResult result;
    const std::uint64_t q = field.order();
    const std::uint64_t space = saturating_pow(q, w * k);
    std::vector<std::uint32_t> digits(w * k);

    auto attempt = [&](const std::vector<std::uint32_t>& d) -> bool {
        ++result.tried;
        Matrix g(field, w, k, std::vector<Element>(d.begin(), d.end()));
        if (rank(g) != w || !check_lemma2(g))
            return false;
        result.code = CosetCode::from_generator(g);
        return true;
    };

    if (space != std::numeric_limits<std::uint64_t>::max() && space <= budget) {
        result.exhaustive = true;
        for (std::uint64_t idx = 0; idx < space; ++idx) {
            index_to_digits(idx, q, digits);
            if (attempt(digits))
                return result;
        }
        return result;
    }
    Rng rng(substream_seed(seed, "search-code"));
    for (std::uint64_t t = 0; t < budget; ++t) {
        for (auto& d : digits)
            d = static_cast<std::uint32_t>(rng.uniform(q));
        if (attempt(digits))
            return result;
    }
    return result;
}

namespace {

std::uint64_t read_header_value(std::istream& in, const char* what)
{
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::getline(in, tok);
            continue;
        }
        try {
            std::size_t pos = 0;
            auto v = std::stoull(tok, &pos);
            if (pos == tok.size() && tok[0] != '-')
                return v;
        } catch (const std::exception&) {
        }
        throw ParseError(std::string("bad ") + what + " in code descriptor: '" + tok + "'");
    }
    throw ParseError(std::string("missing ") + what + " in code descriptor");
}

}  // namespace

CosetCode read_coset_code(std::istream& in)
{
    auto q = read_header_value(in, "field order");
    auto k = read_header_value(in, "k");
    auto w = read_header_value(in, "w");
    Matrix h = read_matrix(in);
    Matrix g = read_matrix(in);
    Matrix gstar = read_matrix(in);
    if (h.field().order() != q || g.field().order() != q || gstar.field().order() != q)
        throw InvalidCode("descriptor matrices are not over GF(" + std::to_string(q) + ")");
    if (h.cols() != k || g.rows() != w)
        throw InvalidCode("descriptor header (k, w) disagrees with matrix shapes");
    return CosetCode::from_parts(std::move(h), std::move(g), std::move(gstar));
}

void write_coset_code(std::ostream& out, const CosetCode& code)
{
    out << "# coset code descriptor: q k w, then H, G, Gstar\n";
    out << code.field().order() << ' ' << code.k() << ' ' << code.w() << '\n';
    write_matrix(out, code.parity_check());
    write_matrix(out, code.generator());
    write_matrix(out, code.complement());
}

}  // namespace smsm
