#pragma once

#include "quiverstab/quiver.hpp"
#include "quiverstab/rational.hpp"
#include "quiverstab/representation.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

namespace quiverstab {

/// Euler form on the simple basis: chi(d, e) = d^T E e.
class EulerMatrix {
public:
    EulerMatrix() = default;
    EulerMatrix(std::size_t n, std::vector<long long> entries);

    static EulerMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    long long operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<long long>& entries() const noexcept { return entries_; }

    long long chi(const DimensionVector& d, const DimensionVector& e) const;

    /// True when the matrix came from a Tor table that had entries above its
    /// declared global dimension (they were dropped).
    bool truncated() const noexcept { return truncated_; }
    void set_truncated(bool t) noexcept { truncated_ = t; }

    bool operator==(const EulerMatrix& other) const { return n_ == other.n_ && entries_ == other.entries_; }

private:
    std::size_t n_ = 0;
    std::vector<long long> entries_;
    bool truncated_ = false;
};

/// Multiplicities d^l_{ij} of A e_i ⊗ e_j A in the l-th term of the minimal
/// projective bimodule resolution. d^0 = identity unless overridden.
class TorTable {
public:
    TorTable(std::size_t vertex_count, std::size_t global_dimension);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t global_dimension() const noexcept { return gldim_; }

    void set(std::size_t degree, std::size_t i, std::size_t j, long long multiplicity);
    long long get(std::size_t degree, std::size_t i, std::size_t j) const;
    std::size_t max_degree() const;

    /// Throws Error("knum.tor_invalid") unless d^0 is the identity and all
    /// multiplicities are nonnegative.
    void validate() const;

    /// d^0 = identity, d^1_{ij} = number of arrows i -> j.
    static TorTable hereditary(const Quiver& q);

private:
    std::size_t n_;
    std::size_t gldim_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, long long> entries_;
};

/// E_{ij} = δ_{ij} - #arrows(i -> j). Requires an acyclic quiver without relations.
EulerMatrix euler_form_acyclic(const QuiverPresentation& pres);
/// E_{ij} = Σ_{l ≤ gldim} (-1)^l d^l_{ij}; higher degrees are dropped and flagged.
EulerMatrix euler_form_from_tor(const TorTable& tor);

/// θ(d) = Σ θ_i d_i, θ written in the basis dual to the simples.
Rational pairing(std::span<const Rational> theta, const DimensionVector& d);

struct PairingReport {
    std::vector<DimensionVector> projective_dims;
    /// gram[j][i] = chi([P_j], [S_i]).
    std::vector<std::vector<long long>> gram;
    bool passed = false;
};

/// Checks chi([P_j], [S_i]) = δ_{ij} with the given Euler matrix (the
/// hereditary closed form when omitted).
PairingReport verify_perfect_pairing(const PresentationPtr& pres, std::uint32_t p,
                                     const EulerMatrix* euler = nullptr);

} // namespace quiverstab
