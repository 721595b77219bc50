#include "quiverstab/knum.hpp"

#include "quiverstab/errors.hpp"

namespace quiverstab {

EulerMatrix::EulerMatrix(std::size_t n, std::vector<long long> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) {
        throw Error("knum.shape", "Euler matrix needs n*n entries");
    }
}

EulerMatrix EulerMatrix::identity(std::size_t n) {
    std::vector<long long> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return EulerMatrix(n, std::move(e));
}

long long EulerMatrix::chi(const DimensionVector& d, const DimensionVector& e) const {
    if (d.size() != n_ || e.size() != n_) {
        throw Error("knum.length_mismatch", "class length does not match the Euler matrix");
    }
    long long s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (d[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) s += d[i] * entries_[i * n_ + j] * e[j];
    }
    return s;
}

TorTable::TorTable(std::size_t vertex_count, std::size_t global_dimension)
    : n_(vertex_count), gldim_(global_dimension) {}

void TorTable::set(std::size_t degree, std::size_t i, std::size_t j, long long multiplicity) {
    if (i >= n_ || j >= n_) {
        throw Error("knum.tor_invalid", "Tor entry references a missing vertex");
    }
    entries_[{degree, i, j}] = multiplicity;
}

long long TorTable::get(std::size_t degree, std::size_t i, std::size_t j) const {
    auto it = entries_.find({degree, i, j});
    if (it != entries_.end()) return it->second;
    return degree == 0 && i == j ? 1 : 0;
}

std::size_t TorTable::max_degree() const {
    std::size_t m = 0;
    for (const auto& [k, v] : entries_) {
        if (v != 0) m = std::max(m, std::get<0>(k));
    }
    return m;
}

void TorTable::validate() const {
    for (const auto& [k, v] : entries_) {
        if (v < 0) {
            throw Error("knum.tor_invalid", "Tor multiplicities must be nonnegative");
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (get(0, i, j) != (i == j ? 1 : 0)) {
                throw Error("knum.tor_invalid", "degree-0 Tor multiplicities must be the identity");
            }
        }
    }
}

TorTable TorTable::hereditary(const Quiver& q) {
    TorTable t(q.vertex_count(), q.arrow_count() > 0 ? 1 : 0);
    for (const auto& a : q.arrows()) {
        t.set(1, a.source, a.target, t.get(1, a.source, a.target) + 1);
    }
    return t;
}

EulerMatrix euler_form_acyclic(const QuiverPresentation& pres) {
    const Quiver& q = pres.quiver();
    if (!is_acyclic(q) || !pres.relations().empty()) {
        throw Error("knum.not_hereditary",
                    "closed-form Euler matrix needs an acyclic quiver without relations; "
                    "supply Tor data and use euler_form_from_tor");
    }
    const std::size_t n = q.vertex_count();
    std::vector<long long> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    for (const auto& a : q.arrows()) e[a.source * n + a.target] -= 1;
    return EulerMatrix(n, std::move(e));
}

EulerMatrix euler_form_from_tor(const TorTable& tor) {
    tor.validate();
    const std::size_t n = tor.vertex_count();
    std::vector<long long> e(n * n, 0);
    const std::size_t top = tor.max_degree();
    for (std::size_t l = 0; l <= std::min(top, tor.global_dimension()); ++l) {
        const long long sign = l % 2 == 0 ? 1 : -1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e[i * n + j] += sign * tor.get(l, i, j);
    }
    EulerMatrix out(n, std::move(e));
    out.set_truncated(top > tor.global_dimension());
    return out;
}

Rational pairing(std::span<const Rational> theta, const DimensionVector& d) {
    if (theta.size() != d.size()) {
        throw Error("knum.length_mismatch", "covector and class have different lengths");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] != 0) s += theta[i] * d[i];
    }
    return s;
}

PairingReport verify_perfect_pairing(const PresentationPtr& pres, std::uint32_t p, const EulerMatrix* euler) {
    const Quiver& q = pres->quiver();
    if (!is_acyclic(q)) {
        throw Error("knum.unsupported", "perfect-pairing check needs an acyclic quiver");
    }
    const EulerMatrix e = euler ? *euler : euler_form_acyclic(*pres);
    const std::size_t n = q.vertex_count();
    const PrimeField field(p);
    PairingReport report;
    report.passed = true;
    for (std::size_t j = 0; j < n; ++j) {
        report.projective_dims.push_back(projective_module(pres, field, j).dim());
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<long long> row;
        for (std::size_t i = 0; i < n; ++i) {
            const long long v = e.chi(report.projective_dims[j], DimensionVector::unit(n, i));
            row.push_back(v);
            if (v != (i == j ? 1 : 0)) report.passed = false;
        }
        report.gram.push_back(std::move(row));
    }
    return report;
}

} // namespace quiverstab
