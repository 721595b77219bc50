#pragma once

#include "quiverstab/quiver.hpp"
#include "quiverstab/rational.hpp"
#include "quiverstab/representation.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace quiverstab {

/// Exact value of a central charge, re + i·im.
struct ChargeValue {
    Rational re;
    Rational im;

    bool operator==(const ChargeValue&) const = default;
};

/// (θ, λ, ξ) together with the fixed class v. Invariants: λ_i > 0 for every
/// vertex and θ(v) = 0.
class StabilityParams {
public:
    /// Throws Error("stability.params") when an invariant fails.
    static StabilityParams create(std::vector<Rational> theta, std::vector<Rational> lambda, Rational xi,
                                  DimensionVector v);
    /// λ = (1, ..., 1), ξ = 0.
    static StabilityParams king(std::vector<Rational> theta, DimensionVector v);

    const std::vector<Rational>& theta() const noexcept { return theta_; }
    const std::vector<Rational>& lambda() const noexcept { return lambda_; }
    const Rational& xi() const noexcept { return xi_; }
    const DimensionVector& v() const noexcept { return v_; }
    std::size_t vertex_count() const noexcept { return theta_.size(); }

    /// Sign of θ(d).
    int theta_sign(const DimensionVector& d) const;
    /// Phase comparison of Z(a) and Z(b) for nonzero nonnegative classes.
    std::strong_ordering compare_phase(const DimensionVector& a, const DimensionVector& b) const;

private:
    StabilityParams() = default;
    void build_integer_forms();

    std::vector<Rational> theta_;
    std::vector<Rational> lambda_;
    Rational xi_;
    DimensionVector v_;

    // Positive common multiples of θ, θ + ξλ and λ: exact, and sign- and
    // ray-preserving.
    bool small_ = true;
    std::vector<long long> theta_int_, re_int_, im_int_;
    std::vector<BigInt> theta_big_, re_big_, im_big_;
};

/// Z(d) = θ(d) + (i + ξ)·λ(d).
ChargeValue central_charge(const StabilityParams& params, const DimensionVector& d);

/// Orders phases in (0, 1] by the sign of re2·im1 − re1·im2; a charge with
/// im = 0 and re < 0 has phase 1. Throws for zero or out-of-range charges.
std::strong_ordering phase_compare(const ChargeValue& z1, const ChargeValue& z2);

struct StabilityOptions {
    std::size_t submodule_cap = kDefaultSubmoduleCap;
    std::size_t iso_cap = kDefaultIsoCap;
};

/// King semistability: θ(N) ≥ 0 for every nonzero proper submodule.
/// Requires dim(m) = v.
bool is_theta_semistable(const Representation& m, const StabilityParams& params,
                         const StabilityOptions& options = {});
bool is_theta_semistable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice);
bool is_theta_stable(const Representation& m, const StabilityParams& params, const StabilityOptions& options = {});
bool is_theta_stable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice);

/// No nonzero proper submodule of strictly larger phase. Any nonzero class.
bool is_sigma_semistable(const Representation& m, const StabilityParams& params,
                         const StabilityOptions& options = {});
bool is_sigma_semistable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice);
bool is_sigma_stable(const Representation& m, const StabilityParams& params, const StabilityOptions& options = {});
bool is_sigma_stable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice);

struct HNFiltration {
    /// 0 = chain[0] ⊂ chain[1] ⊂ ... ⊂ chain.back() = m.
    std::vector<Submodule> chain;
    std::vector<DimensionVector> factor_dims;
    std::vector<ChargeValue> factor_charges;
    std::vector<Representation> factors;

    std::size_t length() const noexcept { return factors.size(); }
};

/// Each step takes the maximal destabilizing submodule of what remains:
/// greatest phase first, then greatest total dimension. A residual tie
/// raises InvariantViolation("stability.hn_tie").
HNFiltration hn_filtration(const Representation& m, const StabilityParams& params,
                           const StabilityOptions& options = {});
HNFiltration hn_filtration(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice);

/// Stable factors of a semistable module, grouped into isomorphism classes.
struct JHMultiset {
    struct Entry {
        Representation representative;
        std::size_t multiplicity;
    };
    std::vector<Entry> entries;

    std::size_t total_count() const;
    DimensionVector total_dim() const;
};

/// Repeatedly peels off a minimal-dimension submodule of the same phase
/// (ties broken by canonical submodule order). Throws for unstable input.
JHMultiset jh_factors(const Representation& m, const StabilityParams& params, const StabilityOptions& options = {});
JHMultiset jh_factors(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice,
                      const StabilityOptions& options = {});

/// Equal JH multisets up to isomorphism. Both inputs must be semistable of
/// the same phase.
bool s_equivalent(const Representation& m, const Representation& n, const StabilityParams& params,
                  const StabilityOptions& options = {});
bool same_jh_class(const JHMultiset& a, const JHMultiset& b, std::size_t iso_cap = kDefaultIsoCap);

/// min_i λ_i, the constant in |Z(E)| ≥ C·‖[E]‖_∞.
Rational support_constant(const StabilityParams& params);

struct GenericityReport {
    bool generic = true;
    std::optional<DimensionVector> witness;
};

/// Sufficient check: θ(w) ≠ 0 on every potential wall. A false verdict may
/// still be generic if the wall is never realized by a module.
GenericityReport is_generic(const StabilityParams& params);

} // namespace quiverstab
