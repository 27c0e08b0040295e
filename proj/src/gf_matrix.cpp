#include "smsm/gf.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace smsm {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0)
{
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("matrix entry count does not match rows*cols");
    for (Element e : entries_)
        if (!field_.contains(e))
            throw std::invalid_argument("matrix entry " + std::to_string(e) + " outside GF(" +
                                        std::to_string(field_.order()) + ")");
}

Matrix Matrix::identity(Field field, std::size_t n)
{
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Element>>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<Element> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw std::invalid_argument("ragged row list");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Matrix(std::move(field), rows.size(), cols, std::move(flat));
}

void Matrix::set(std::size_t r, std::size_t c, Element value)
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    if (!field_.contains(value))
        throw std::invalid_argument("value outside field");
    (*this)(r, c) = value;
}

std::vector<Element> Matrix::column(std::size_t c) const
{
    std::vector<Element> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const
{
    Matrix out(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(r, j) = (*this)(r, cols[j]);
    return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const
{
    Matrix out(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto src = row(rows[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

void Matrix::append_row(std::span<const Element> values)
{
    if (values.size() != cols_)
        throw std::invalid_argument("append_row: width mismatch");
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
}

bool Matrix::is_zero() const
{
    for (Element e : entries_)
        if (e != 0)
            return false;
    return true;
}

namespace detail {

RowEchelon rref_generic(const Matrix& m)
{
    const Field& f = m.field();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
        std::size_t p = lead;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != lead)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(lead, j));
        Element s = f.inv(a(lead, c));
        if (s != 1)
            for (std::size_t j = c; j < a.cols(); ++j)
                a(lead, j) = f.mul(a(lead, j), s);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead || a(r, c) == 0)
                continue;
            Element factor = a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(r, j) = f.sub(a(r, j), f.mul(factor, a(lead, j)));
        }
        pivots.push_back(c);
        ++lead;
    }
    return {std::move(a), std::move(pivots)};
}

}  // namespace detail

RowEchelon rref(const Matrix& m)
{
    if (m.field().order() == 2)
        return detail::rref_packed_binary(m);
    return detail::rref_generic(m);
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix nullspace_basis(const Matrix& m)
{
    auto [red, pivots] = rref(m);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    Matrix basis(f, 0, m.cols());
    std::vector<Element> v(m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::fill(v.begin(), v.end(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = f.neg(red(i, free));
        basis.append_row(v);
    }
    return basis;
}

std::optional<std::vector<Element>> solve_particular(const Matrix& a, std::span<const Element> b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_particular: rhs length != rows");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            aug(r, c) = a(r, c);
        if (!a.field().contains(b[r]))
            throw std::invalid_argument("solve_particular: rhs outside field");
        aug(r, a.cols()) = b[r];
    }
    auto [red, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    std::vector<Element> x(a.cols(), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = red(i, a.cols());
    return x;
}

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (!(a.field() == b.field()))
        throw std::invalid_argument("multiply: field mismatch");
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions differ (" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                    ")");
    const Field& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Element s = a(i, k);
            if (s == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = f.add(out(i, j), f.mul(s, b(k, j)));
        }
    return out;
}

std::vector<Element> multiply(const Matrix& a, std::span<const Element> v)
{
    if (v.size() != a.cols())
        throw std::invalid_argument("multiply: vector length != cols");
    const Field& f = a.field();
    std::vector<Element> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Element acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc = f.add(acc, f.mul(a(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b)
{
    if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("add: shape or field mismatch");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a.field().add(a(r, c), b(r, c));
    return out;
}

std::optional<Matrix> invert(const Matrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("invert: matrix is not square");
    std::size_t n = a.rows();
    Matrix aug(a.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    auto [red, pivots] = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
        return std::nullopt;
    Matrix inv(a.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = red(r, n + c);
    return inv;
}

Matrix vstack(const Matrix& top, const Matrix& bottom)
{
    if (!(top.field() == bottom.field()) || top.cols() != bottom.cols())
        throw std::invalid_argument("vstack: width or field mismatch");
    Matrix out = top;
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        out.append_row(bottom.row(r));
    return out;
}

namespace {

// Strips '#' comments so fixtures can be annotated.
std::string next_token(std::istream& in)
{
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        auto hash = tok.find('#');
        if (hash != std::string::npos) {
            std::string rest;
            std::getline(in, rest);
            tok.resize(hash);
        }
        return tok;
    }
    return {};
}

std::uint64_t parse_uint(const std::string& tok, const char* what)
{
    if (tok.empty())
        throw ParseError(std::string("unexpected end of input reading ") + what);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + ": '" + tok + "'");
    }
    if (pos != tok.size() || tok[0] == '-')
        throw ParseError(std::string("bad ") + what + ": '" + tok + "'");
    return v;
}

}  // namespace

Matrix read_matrix(std::istream& in)
{
    auto q = parse_uint(next_token(in), "field order");
    auto rows = parse_uint(next_token(in), "row count");
    auto cols = parse_uint(next_token(in), "column count");
    if (q > 65536 || !is_supported_field_order(static_cast<std::uint32_t>(q)))
        throw ParseError("unsupported field order " + std::to_string(q));
    if (rows * cols > (1u << 24))
        throw ParseError("matrix too large");
    Field f(static_cast<std::uint32_t>(q));
    std::vector<Element> entries;
    entries.reserve(rows * cols);
    for (std::uint64_t i = 0; i < rows * cols; ++i) {
        auto v = parse_uint(next_token(in), "matrix entry");
        if (v >= q)
            throw ParseError("matrix entry " + std::to_string(v) + " outside GF(" +
                             std::to_string(q) + ")");
        entries.push_back(static_cast<Element>(v));
    }
    return Matrix(f, rows, cols, std::move(entries));
}

void write_matrix(std::ostream& out, const Matrix& m)
{
    out << m.field().order() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c)
                out << ' ';
            out << m(r, c);
        }
        out << '\n';
    }
}

std::string to_string(const Matrix& m)
{
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

}  // namespace smsm
