#pragma once

#include "quiverstab/description.hpp"
#include "quiverstab/stability.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace quiverstab {

/// Seeded draw of (θ, λ, ξ) for the class v: θ is a small integer
/// combination of the Θ_v basis, λ_i ∈ {1/2, 1, ..., 4}, ξ ∈ [−3, 3] with
/// denominators up to 3.
StabilityParams random_params(const DimensionVector& v, std::mt19937_64& rng);

struct SweepCheck {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
};

struct SweepReport {
    std::vector<SweepCheck> checks;
    /// One line per violation, for diagnosis.
    std::vector<std::string> failures;
    bool passed() const noexcept { return failures.empty(); }
};

/// Randomized invariant suites over the modules and families of a document:
/// θ/σ agreement, the support inequality, HN structure, positive rescaling,
/// equality of the two ℓ·C routes and twist invariance.
SweepReport run_sweep(const Description& doc, std::uint64_t seed, std::size_t draws,
                      const StabilityOptions& options = {}, unsigned jobs = 1);

} // namespace quiverstab
