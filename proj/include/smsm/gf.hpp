// Finite-field scalars and dense linear algebra over GF(q).
//
// Supported orders: primes q <= 65521 and binary extensions 2^m, m <= 16.
// Elements are the integers [0, q). For GF(2^m) an element is the
// polynomial whose coefficients are its bits, reduced by the fixed
// primitive polynomial returned by Field::modulus().

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smsm {

using Element = std::uint32_t;

namespace detail {
struct FieldTables;
}

class Field {
public:
    // Throws std::invalid_argument when q is not a supported prime power.
    explicit Field(std::uint32_t order);

    std::uint32_t order() const { return order_; }
    std::uint32_t characteristic() const { return characteristic_; }
    bool is_binary_extension() const { return characteristic_ == 2; }
    // Reduction polynomial for GF(2^m) (bit i = coefficient of x^i), 0 for prime fields.
    std::uint32_t modulus() const;

    Element add(Element a, Element b) const
    {
        if (characteristic_ == 2)
            return a ^ b;
        Element s = a + b;
        return s >= order_ ? s - order_ : s;
    }
    Element sub(Element a, Element b) const
    {
        if (characteristic_ == 2)
            return a ^ b;
        return a >= b ? a - b : a + order_ - b;
    }
    Element neg(Element a) const { return sub(0, a); }
    Element mul(Element a, Element b) const;
    // Throws std::domain_error on a == 0.
    Element inv(Element a) const;
    Element div(Element a, Element b) const { return mul(a, inv(b)); }

    bool contains(Element a) const { return a < order_; }

    friend bool operator==(const Field& a, const Field& b) { return a.order_ == b.order_; }

private:
    std::uint32_t order_;
    std::uint32_t characteristic_;
    std::shared_ptr<const detail::FieldTables> tables_;
};

// True when q is accepted by Field's constructor.
bool is_supported_field_order(std::uint32_t q);

class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols);
    // Throws std::invalid_argument on a size mismatch or an out-of-field entry.
    Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Element> entries);

    static Matrix identity(Field field, std::size_t n);
    static Matrix from_rows(Field field, const std::vector<std::vector<Element>>& rows);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    Element operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Element& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    // Bounds- and field-checked write.
    void set(std::size_t r, std::size_t c, Element value);

    std::span<const Element> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::span<Element> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    std::vector<Element> column(std::size_t c) const;
    const std::vector<Element>& entries() const { return entries_; }

    Matrix transpose() const;
    Matrix select_columns(std::span<const std::size_t> cols) const;
    Matrix select_rows(std::span<const std::size_t> rows) const;
    void append_row(std::span<const Element> values);

    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> entries_;
};

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of row i, ascending
};

// Reduced row-echelon form. Pivot = first nonzero entry in column order.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Rows form a basis of {v : m * v^T = 0}, one row per free column of rref(m).
Matrix nullspace_basis(const Matrix& m);
// Some x with A x = b, free variables set to zero; nullopt when inconsistent.
std::optional<std::vector<Element>> solve_particular(const Matrix& a, std::span<const Element> b);

// Throws std::invalid_argument on a dimension or field mismatch.
Matrix multiply(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }
std::vector<Element> multiply(const Matrix& a, std::span<const Element> v);
Matrix add(const Matrix& a, const Matrix& b);
// nullopt iff rank < dimension. Throws std::invalid_argument for non-square input.
std::optional<Matrix> invert(const Matrix& a);
// [top; bottom]
Matrix vstack(const Matrix& top, const Matrix& bottom);

// Text fixture format: "q rows cols" followed by rows*cols integers.
// '#' starts a comment running to end of line.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);
std::string to_string(const Matrix& m);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
// Both paths are exposed so tests can compare them on the same input.
RowEchelon rref_generic(const Matrix& m);
RowEchelon rref_packed_binary(const Matrix& m);
}  // namespace detail

}  // namespace smsm
