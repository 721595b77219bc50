#pragma once

#include "quiverstab/quiver.hpp"
#include "quiverstab/rational.hpp"
#include "quiverstab/representation.hpp"
#include "quiverstab/stability.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quiverstab {

/// The hyperplane {θ ∈ Θ_v : θ(w) = 0}. Every dimension vector cutting out the
/// same hyperplane of Θ_v is listed in `members` (w and v − w always are);
/// `w` is the member of least total dimension, ties going to the
/// lexicographically greatest. A degenerate wall has w proportional to v and
/// contains all of Θ_v.
struct Wall {
    DimensionVector w;
    std::vector<DimensionVector> members;
    bool degenerate = false;
};

/// Integer basis b_j = v_k e_j − v_j e_k (j ≠ k) of Θ_v, where k is the first
/// vertex with v_k ≠ 0.
std::vector<std::vector<long long>> theta_v_basis(const DimensionVector& v);

/// All hyperplanes θ(w) = 0 for 0 ≤ w ≤ v, w ∉ {0, v}.
std::vector<Wall> potential_walls(const DimensionVector& v);

struct Chamber {
    /// One of '+', '-' per wall; '0' for degenerate walls.
    std::string signs;
    /// Integral interior point with θ(v) = 0.
    std::vector<Rational> witness;
};

struct ChamberLimits {
    std::size_t max_walls = 24;
    std::size_t max_vertices = 6;
};

/// Every realizable strict sign vector on the non-degenerate walls, found by
/// exact Fourier–Motzkin feasibility.
std::vector<Chamber> chambers(const DimensionVector& v, const std::vector<Wall>& walls,
                              const ChamberLimits& limits = {});

/// A second interior point of the same chamber, distinct from its witness.
std::vector<Rational> perturbed_witness(const DimensionVector& v, const std::vector<Wall>& walls,
                                        const Chamber& chamber, std::uint64_t seed);

/// Sign string of θ against the wall list ('0' where θ(w) = 0).
std::string sign_vector(std::span<const Rational> theta, const std::vector<Wall>& walls);

/// a · y ≥ b.
struct LinearConstraint {
    std::vector<Rational> a;
    Rational b;
};

/// A point satisfying every constraint, or nullopt if none exists.
std::optional<std::vector<Rational>> find_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                         std::size_t variables);

enum class StabilityClass { stable, strictly_semistable, unstable };

const char* to_string(StabilityClass c);

struct CensusEntry {
    Representation representative;
    std::size_t count = 0;
    StabilityClass verdict = StabilityClass::unstable;
};

struct Census {
    std::vector<CensusEntry> classes;
    std::size_t representations = 0;
    std::size_t relation_rejected = 0;
    /// Set when an isomorphism test hit its cap; the affected classes are
    /// listed separately even if they might coincide.
    bool grouping_incomplete = false;

    std::size_t count(StabilityClass c) const;
};

inline constexpr std::size_t kDefaultCensusCap = 1'000'000;

/// All representations of dimension v over F_p, classified at θ and grouped
/// by isomorphism. Throws CapExceeded when p^(matrix entries) > cap.
Census census(const PresentationPtr& pres, const DimensionVector& v, std::span<const Rational> theta,
              std::uint32_t p, std::size_t cap = kDefaultCensusCap, const StabilityOptions& options = {},
              unsigned jobs = 1);

struct WallStatus {
    Wall wall;
    bool actual = false;
    std::vector<Rational> point;
    std::size_t strictly_semistable_classes = 0;
};

/// A wall is actual iff the census at an interior point of the wall, off all
/// other walls, contains a strictly semistable module.
std::vector<WallStatus> actual_walls(const PresentationPtr& pres, const DimensionVector& v,
                                     const std::vector<Wall>& walls, std::uint32_t p,
                                     std::size_t cap = kDefaultCensusCap, const StabilityOptions& options = {},
                                     unsigned jobs = 1);

} // namespace quiverstab
