#pragma once

#include "quiverstab/linalg.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/rational.hpp"
#include "quiverstab/representation.hpp"
#include "quiverstab/stability.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace quiverstab {

/// Sparse polynomial in s, t over F_p; (i, j) indexes the monomial s^i t^j.
/// Zero coefficients are never stored.
struct BivariatePoly {
    std::map<std::pair<int, int>, std::uint32_t> terms;

    bool is_zero() const noexcept { return terms.empty(); }
    /// Coefficients for s^d, s^(d-1) t, ..., t^d.
    static BivariatePoly from_coefficients(const PrimeField& field, std::span<const long long> coeffs);
    std::uint32_t evaluate(const PrimeField& field, std::uint32_t s, std::uint32_t t) const;
    bool operator==(const BivariatePoly&) const = default;
};

BivariatePoly poly_add(const PrimeField& field, const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly poly_mul(const PrimeField& field, const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly poly_scale(const PrimeField& field, const BivariatePoly& a, std::uint32_t c);
/// e.g. "2*s^2*t + t^3"; "0" for the zero polynomial.
std::string to_string(const BivariatePoly& f);

/// A family of representations over P^1: vertex bundles T_i split as
/// ⊕_k O(a_{i,k}), and arrow i→j has a v_j × v_i matrix whose (k, l) entry is
/// homogeneous of degree a_{j,k} − a_{i,l} (zero if that is negative).
class FamilyOverP1 {
public:
    /// Verifies shapes, the degree pattern and that every relation vanishes
    /// as a polynomial matrix. Throws Error("families.shape" | "families.degree"
    /// | "families.relation").
    static FamilyOverP1 create(std::string name, PresentationPtr pres, PrimeField field,
                               std::vector<std::vector<int>> splitting,
                               std::vector<std::vector<BivariatePoly>> arrows);

    const std::string& name() const noexcept { return name_; }
    const PresentationPtr& presentation_ptr() const noexcept { return pres_; }
    const QuiverPresentation& presentation() const noexcept { return *pres_; }
    const PrimeField& field() const noexcept { return field_; }
    const std::vector<std::vector<int>>& splitting() const noexcept { return splitting_; }
    /// Row-major entries of the matrix of one arrow.
    const std::vector<BivariatePoly>& arrow_entries(std::size_t arrow) const { return arrows_.at(arrow); }
    const BivariatePoly& entry(std::size_t arrow, std::size_t row, std::size_t col) const;
    /// Ranks of the vertex bundles: the class v of every fiber.
    DimensionVector rank_vector() const;

private:
    FamilyOverP1() : field_(2) {}
    std::string name_;
    PresentationPtr pres_;
    PrimeField field_;
    std::vector<std::vector<int>> splitting_;
    std::vector<std::vector<BivariatePoly>> arrows_;
};

/// The same family with every splitting-type entry shifted by c.
FamilyOverP1 twisted(const FamilyOverP1& fam, int c);

/// A point [s:t] of P^1(F_p), normalized to [1:c] or [0:1].
struct P1Point {
    std::uint32_t s = 1;
    std::uint32_t t = 0;
    std::string to_string() const;
    bool operator==(const P1Point&) const = default;
};

/// [1:0], [1:1], ..., [1:p−1], [0:1].
std::vector<P1Point> points_of_p1(const PrimeField& field);

/// Evaluates every entry at (s, t). Throws for (0, 0).
Representation fiber_at(const FamilyOverP1& fam, P1Point point);

/// Throws Error("families.unstable_fiber") naming the first point of P^1(F_p)
/// whose fiber is not θ-semistable; returns the checked points otherwise.
std::vector<P1Point> check_family(const FamilyOverP1& fam, const StabilityParams& params,
                                  const StabilityOptions& options = {});

/// deg det T_i = Σ_k a_{i,k}.
std::vector<long long> det_degrees(const FamilyOverP1& fam);

/// u_i = v_i + deg det T_i: rank plus degree on a genus-0 curve.
std::vector<long long> knum_class(const FamilyOverP1& fam);

struct NefNumber {
    Rational value;
    /// 1 / ((ξ² + 1) λ(v)).
    Rational c;
};

Rational nef_constant(const StabilityParams& params);

/// c · Σ_i θ_i deg det T_i.
NefNumber ell_dot_C_determinant(const FamilyOverP1& fam, const StabilityParams& params);

/// Im(Z(u) / −Z(v)) in exact rational arithmetic.
NefNumber ell_dot_C_charge(const FamilyOverP1& fam, const StabilityParams& params);

enum class DichotomyVerdict { confirmed_positive, confirmed_zero, flagged };

const char* to_string(DichotomyVerdict v);

struct PositivityReport {
    NefNumber determinant;
    NefNumber charge;
    bool routes_agree = false;
    bool nonnegative = false;
    std::vector<P1Point> points;
    std::vector<Representation> fibers;
    std::vector<JHMultiset> jh;
    /// equivalent[a][b]: fibers at points a and b have the same JH factors.
    std::vector<std::vector<bool>> equivalent;
    bool all_s_equivalent = false;
    /// No two distinct points have S-equivalent fibers.
    bool pairwise_non_equivalent = false;
    DichotomyVerdict verdict = DichotomyVerdict::flagged;
};

/// Both ℓ·C routes, JH factors at every point of P^1(F_p) and the check
/// ℓ·C = 0 ⟺ all fibers S-equivalent. Anything inconsistent is flagged.
PositivityReport positivity_report(const FamilyOverP1& fam, const StabilityParams& params,
                                   const StabilityOptions& options = {}, unsigned jobs = 1);

} // namespace quiverstab
