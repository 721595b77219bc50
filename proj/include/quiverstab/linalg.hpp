#pragma once

#include "quiverstab/errors.hpp"
#include "quiverstab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace quiverstab {

/// Arithmetic in Z/p for a prime p < 2^31; products fit in 64 bits.
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const noexcept { return p_; }

    value_type zero() const noexcept { return 0; }
    value_type one() const noexcept { return 1; }
    bool is_zero(value_type a) const noexcept { return a == 0; }

    value_type add(value_type a, value_type b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<value_type>(s >= p_ ? s - p_ : s);
    }
    value_type sub(value_type a, value_type b) const noexcept {
        return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
    }
    value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const noexcept {
        return static_cast<value_type>(std::uint64_t{a} * b % p_);
    }
    value_type inv(value_type a) const;

    value_type from_int(long long v) const noexcept;
    /// Throws Error("field.denominator") when the denominator vanishes mod p.
    value_type from_rational(const Rational& q) const;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

/// Exact field of rationals, with the same interface as PrimeField.
struct RationalField {
    using value_type = Rational;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return a == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const;
    value_type from_int(long long v) const { return value_type(v); }
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error("linalg.shape", "matrix entry count does not match its shape");
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }
    std::vector<T>& data() noexcept { return data_; }

    void append_row(std::span<const T> values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using FpMatrix = Matrix<std::uint32_t>;
using FpVector = std::vector<std::uint32_t>;
using QMatrix = Matrix<Rational>;

template <class Field>
struct RrefResult {
    Matrix<typename Field::value_type> matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form, computed exactly.
template <class Field>
RrefResult<Field> rref(const Field& f, Matrix<typename Field::value_type> m) {
    using V = typename Field::value_type;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    RrefResult<Field> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && f.is_zero(m(pivot, c))) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(r, k));
        }
        const V inv = f.inv(m(r, c));
        for (std::size_t k = c; k < cols; ++k) m(r, k) = f.mul(m(r, k), inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            const V factor = m(i, c);
            for (std::size_t k = c; k < cols; ++k) {
                m(i, k) = f.sub(m(i, k), f.mul(factor, m(r, k)));
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.matrix = std::move(m);
    return out;
}

/// Basis of the right null space, one vector per free column.
template <class Field>
std::vector<std::vector<typename Field::value_type>> kernel_basis(
    const Field& f, const Matrix<typename Field::value_type>& m) {
    using V = typename Field::value_type;
    const auto red = rref(f, m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : red.pivots) is_pivot[c] = true;
    std::vector<std::vector<V>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<V> x(cols, f.zero());
        x[free] = f.one();
        for (std::size_t r = 0; r < red.rank; ++r) {
            x[red.pivots[r]] = f.neg(red.matrix(r, free));
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

template <class Field>
Matrix<typename Field::value_type> multiply(const Field& f, const Matrix<typename Field::value_type>& a,
                                            const Matrix<typename Field::value_type>& b) {
    if (a.cols() != b.rows()) {
        throw Error("linalg.shape", "matrix product of incompatible shapes");
    }
    Matrix<typename Field::value_type> out(a.rows(), b.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (f.is_zero(a(i, k))) continue;
            const auto aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
            }
        }
    }
    return out;
}

template <class Field>
Matrix<typename Field::value_type> identity_matrix(const Field& f, std::size_t n) {
    Matrix<typename Field::value_type> m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

template <class Field>
bool is_zero_matrix(const Field& f, const Matrix<typename Field::value_type>& m) {
    for (const auto& x : m.data()) {
        if (!f.is_zero(x)) return false;
    }
    return true;
}

FpVector apply(const PrimeField& f, const FpMatrix& m, std::span<const std::uint32_t> x);

/// A linear subspace of F_p^n, stored canonically as a reduced row echelon
/// basis. Two subspaces are equal iff their bases are identical.
class Subspace {
public:
    Subspace(PrimeField field, std::size_t ambient_dim);

    static Subspace zero(PrimeField field, std::size_t ambient_dim) { return {field, ambient_dim}; }
    static Subspace full(PrimeField field, std::size_t ambient_dim);
    /// Span of the rows of `generators`.
    static Subspace span(PrimeField field, std::size_t ambient_dim, const FpMatrix& generators);
    /// Wraps a matrix already known to be in RREF with no zero rows.
    static Subspace from_rref(PrimeField field, std::size_t ambient_dim, FpMatrix basis);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const FpMatrix& basis() const noexcept { return basis_; }
    std::vector<std::size_t> pivots() const;

    bool contains(std::span<const std::uint32_t> v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of `v` in the RREF basis (its entries at the pivot columns).
    /// Assumes `contains(v)`.
    FpVector coordinates(std::span<const std::uint32_t> v) const;
    /// Reduces `v` modulo the subspace in place (pivot entries become zero).
    void reduce(std::span<std::uint32_t> v) const;

    bool operator==(const Subspace&) const = default;

private:
    Subspace(PrimeField field, std::size_t ambient_dim, FpMatrix basis)
        : field_(field), ambient_(ambient_dim), basis_(std::move(basis)) {}

    PrimeField field_;
    std::size_t ambient_;
    FpMatrix basis_;
};

/// Right null space of `m` as a subspace of F_p^{cols}.
Subspace kernel(const PrimeField& f, const FpMatrix& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b);
/// Image of `s` under the linear map `m` (m.cols() == s.ambient_dim()).
Subspace image(const FpMatrix& m, const Subspace& s);

/// Number of k-dimensional subspaces of F_p^n.
BigInt gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t p);

inline constexpr std::size_t kDefaultSubspaceCap = 1'000'000;

/// Every subspace of F_p^d exactly once, ordered by dimension, then pivot
/// columns, then free entries. Throws CapExceeded if there are more than `cap`.
std::vector<Subspace> enumerate_all_subspaces(std::size_t ambient_dim, PrimeField field,
                                              std::size_t cap = kDefaultSubspaceCap);

} // namespace quiverstab
