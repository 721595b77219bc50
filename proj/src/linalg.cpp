#include "quiverstab/linalg.hpp"

#include <boost/multiprecision/integer.hpp>

#include <limits>

namespace quiverstab {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (std::uint32_t{1} << 31) || !is_prime(p)) {
        throw Error("field.not_prime", std::to_string(p) + " is not a prime below 2^31");
    }
}

PrimeField::value_type PrimeField::inv(value_type a) const {
    if (a == 0) {
        throw Error("field.division_by_zero", "zero has no inverse");
    }
    long long t = 0, new_t = 1;
    long long r = p_, new_r = a;
    while (new_r != 0) {
        const long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
}

PrimeField::value_type PrimeField::from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_rational(const Rational& q) const {
    const BigInt p = p_;
    BigInt num = boost::multiprecision::numerator(q) % p;
    BigInt den = boost::multiprecision::denominator(q) % p;
    if (num < 0) num += p;
    if (den == 0) {
        throw Error("field.denominator", "denominator of " + to_string(q) + " vanishes mod " +
                                             std::to_string(p_));
    }
    return mul(static_cast<value_type>(num), inv(static_cast<value_type>(den)));
}

RationalField::value_type RationalField::inv(const value_type& a) const {
    if (a == 0) {
        throw Error("field.division_by_zero", "zero has no inverse");
    }
    return 1 / a;
}

FpVector apply(const PrimeField& f, const FpMatrix& m, std::span<const std::uint32_t> x) {
    FpVector y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < m.cols(); ++k) {
            acc += std::uint64_t{m(i, k)} * x[k] % f.modulus();
        }
        y[i] = static_cast<std::uint32_t>(acc % f.modulus());
    }
    return y;
}

Subspace::Subspace(PrimeField field, std::size_t ambient_dim)
    : field_(field), ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim) {
    return Subspace(field, ambient_dim, identity_matrix(field, ambient_dim));
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim, const FpMatrix& generators) {
    if (generators.rows() == 0) return zero(field, ambient_dim);
    if (generators.cols() != ambient_dim) {
        throw Error("linalg.dimension_mismatch", "generators have the wrong ambient dimension");
    }
    auto red = rref(field, generators);
    auto& m = red.matrix;
    m.data().resize(red.rank * ambient_dim);
    return Subspace(field, ambient_dim, FpMatrix(red.rank, ambient_dim, std::move(m.data())));
}

Subspace Subspace::from_rref(PrimeField field, std::size_t ambient_dim, FpMatrix basis) {
    return Subspace(field, ambient_dim, std::move(basis));
}

std::vector<std::size_t> Subspace::pivots() const {
    std::vector<std::size_t> out;
    out.reserve(basis_.rows());
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t c = 0;
        while (basis_(r, c) == 0) ++c;
        out.push_back(c);
    }
    return out;
}

void Subspace::reduce(std::span<std::uint32_t> v) const {
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t c = 0;
        while (basis_(r, c) == 0) ++c;
        const std::uint32_t factor = v[c];
        if (factor == 0) continue;
        for (std::size_t k = c; k < ambient_; ++k) {
            v[k] = field_.sub(v[k], field_.mul(factor, basis_(r, k)));
        }
    }
}

bool Subspace::contains(std::span<const std::uint32_t> v) const {
    if (v.size() != ambient_) {
        throw Error("linalg.dimension_mismatch", "vector has the wrong ambient dimension");
    }
    FpVector w(v.begin(), v.end());
    reduce(w);
    for (auto x : w) {
        if (x != 0) return false;
    }
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_ || !(other.field_ == field_)) {
        throw Error("linalg.dimension_mismatch", "subspaces live in different ambient spaces");
    }
    if (other.dim() > dim()) return false;
    for (std::size_t r = 0; r < other.dim(); ++r) {
        if (!contains(other.basis_.row(r))) return false;
    }
    return true;
}

FpVector Subspace::coordinates(std::span<const std::uint32_t> v) const {
    FpVector out;
    out.reserve(dim());
    for (std::size_t c : pivots()) out.push_back(v[c]);
    return out;
}

Subspace kernel(const PrimeField& f, const FpMatrix& m) {
    const auto basis = kernel_basis(f, m);
    FpMatrix gens(0, m.cols());
    for (const auto& v : basis) gens.append_row(v);
    return Subspace::span(f, m.cols(), gens);
}

namespace {

void check_compatible(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field())) {
        throw Error("linalg.dimension_mismatch", "subspaces live in different ambient spaces");
    }
}

} // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    if (b.dim() == 0 || a.contains(b)) return a;
    if (a.dim() == 0) return b;
    FpMatrix stacked(a.dim() + b.dim(), a.ambient_dim());
    std::copy(a.basis().data().begin(), a.basis().data().end(), stacked.data().begin());
    std::copy(b.basis().data().begin(), b.basis().data().end(),
              stacked.data().begin() + static_cast<std::ptrdiff_t>(a.basis().data().size()));
    return Subspace::span(a.field(), a.ambient_dim(), stacked);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    // a ∩ b = (a^⊥ + b^⊥)^⊥ for the standard bilinear form.
    const PrimeField& f = a.field();
    const std::size_t n = a.ambient_dim();
    FpMatrix perp(0, n);
    for (const auto& v : kernel_basis(f, a.basis().rows() ? a.basis() : FpMatrix(0, n))) perp.append_row(v);
    for (const auto& v : kernel_basis(f, b.basis().rows() ? b.basis() : FpMatrix(0, n))) perp.append_row(v);
    if (perp.rows() == 0) return Subspace::full(f, n);
    return kernel(f, perp);
}

Subspace image(const FpMatrix& m, const Subspace& s) {
    if (m.cols() != s.ambient_dim()) {
        throw Error("linalg.dimension_mismatch", "map and subspace have incompatible dimensions");
    }
    FpMatrix gens(0, m.rows());
    for (std::size_t r = 0; r < s.dim(); ++r) gens.append_row(apply(s.field(), m, s.basis().row(r)));
    return Subspace::span(s.field(), m.rows(), gens);
}

BigInt gaussian_binomial(std::size_t n, std::size_t k, std::uint64_t p) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    BigInt q = p;
    for (std::size_t i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(q, static_cast<unsigned>(n - i)) - 1;
        den *= boost::multiprecision::pow(q, static_cast<unsigned>(i + 1)) - 1;
    }
    return num / den;
}

namespace {

void enumerate_rref(const PrimeField& f, std::size_t n, const std::vector<std::size_t>& pivots,
                    std::vector<Subspace>& out) {
    const std::size_t k = pivots.size();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    // Free positions: row r, column c > pivot r, c not a pivot column.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = pivots[r] + 1; c < n; ++c) {
            if (!is_pivot[c]) free.emplace_back(r, c);
        }
    }
    std::vector<std::uint32_t> digits(free.size(), 0);
    const std::uint32_t p = f.modulus();
    while (true) {
        FpMatrix m(k, n, 0);
        for (std::size_t r = 0; r < k; ++r) m(r, pivots[r]) = 1;
        for (std::size_t i = 0; i < free.size(); ++i) m(free[i].first, free[i].second) = digits[i];
        out.push_back(Subspace::from_rref(f, n, std::move(m)));
        std::size_t i = free.size();
        while (i > 0) {
            --i;
            if (++digits[i] < p) break;
            digits[i] = 0;
            if (i == 0) return;
        }
        if (free.empty()) return;
    }
}

void enumerate_pivot_sets(const PrimeField& f, std::size_t n, std::size_t k, std::size_t start,
                          std::vector<std::size_t>& pivots, std::vector<Subspace>& out) {
    if (pivots.size() == k) {
        enumerate_rref(f, n, pivots, out);
        return;
    }
    for (std::size_t c = start; c < n; ++c) {
        pivots.push_back(c);
        enumerate_pivot_sets(f, n, k, c + 1, pivots, out);
        pivots.pop_back();
    }
}

} // namespace

std::vector<Subspace> enumerate_all_subspaces(std::size_t ambient_dim, PrimeField field,
                                              std::size_t cap) {
    BigInt total = 0;
    for (std::size_t k = 0; k <= ambient_dim; ++k) {
        total += gaussian_binomial(ambient_dim, k, field.modulus());
    }
    if (total > cap) {
        throw CapExceeded("linalg.subspace_cap",
                          "F_" + std::to_string(field.modulus()) + "^" + std::to_string(ambient_dim) +
                              " has " + total.str() + " subspaces, above the cap of " + std::to_string(cap),
                          0);
    }
    std::vector<Subspace> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<std::size_t> pivots;
    for (std::size_t k = 0; k <= ambient_dim; ++k) {
        enumerate_pivot_sets(field, ambient_dim, k, 0, pivots, out);
    }
    return out;
}

} // namespace quiverstab
