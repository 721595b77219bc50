#pragma once

#include "quiverstab/description.hpp"
#include "quiverstab/linalg.hpp"
#include "quiverstab/representation.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace quiverstab::testing {

/// Absolute path of a bundled description file.
std::string corpus_path(const std::string& file);

Description load(const std::string& file);

PresentationPtr presentation_of(const std::string& file);

/// Every dimension vector with the given number of vertices and total
/// dimension at most `max_total` (the zero vector included).
std::vector<DimensionVector> dimension_vectors(std::size_t vertices, int max_total);

/// Number of F_p-matrix entries of a representation of class d.
std::size_t entry_count(const Quiver& q, const DimensionVector& d);

struct Enumeration {
    std::size_t visited = 0;
    bool exhaustive = true;
};

/// Visits every representation of class d over F_p when there are at most
/// `budget` candidate matrix tuples, else `budget` seeded random ones.
/// Relation-violating tuples are skipped. For a square-zero loop the
/// candidates are generated directly as x = U G Q with im x ⊆ ker x.
Enumeration for_each_representation(const PresentationPtr& pres, const PrimeField& field, const DimensionVector& d,
                                    std::size_t budget, std::uint64_t seed,
                                    const std::function<void(const Representation&)>& visit);

/// Submodules found by brute force: every tuple of vertex subspaces that
/// the arrows preserve.
std::vector<Submodule> brute_force_submodules(const Representation& m);

/// Representation with the same isomorphism class, conjugated by random
/// invertible matrices at each vertex.
Representation random_conjugate(const Representation& m, std::mt19937_64& rng);

FpMatrix random_invertible(const PrimeField& field, std::size_t n, std::mt19937_64& rng);

/// Hom(m, n) − Ext^1(m, n) for a path algebra without relations, with Ext^1
/// the cokernel of ⊕_i Hom(m_i, n_i) → ⊕_{a: i→j} Hom(m_i, n_j).
long long hom_minus_ext(const Representation& m, const Representation& n);

std::size_t ext1_dimension(const Representation& m, const Representation& n);

} // namespace quiverstab::testing
