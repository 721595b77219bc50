#pragma once

#include "quiverstab/linalg.hpp"
#include "quiverstab/quiver.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace quiverstab {

using PresentationPtr = std::shared_ptr<const QuiverPresentation>;

inline constexpr std::size_t kDefaultSubmoduleCap = 50'000;
inline constexpr std::size_t kDefaultIsoCap = 100'000;

/// A finite-dimensional left module over kQ/I with k = F_p: one matrix per
/// arrow, of shape dim[target] x dim[source]. Relations are checked on
/// construction.
class Representation {
public:
    /// Throws Error("representation.shape") or Error("representation.relation_violated").
    static Representation create(PresentationPtr pres, PrimeField field, DimensionVector dim,
                                 std::vector<FpMatrix> maps);

    const QuiverPresentation& presentation() const noexcept { return *pres_; }
    const PresentationPtr& presentation_ptr() const noexcept { return pres_; }
    const Quiver& quiver() const noexcept { return pres_->quiver(); }
    const PrimeField& field() const noexcept { return field_; }
    const DimensionVector& dim() const noexcept { return dim_; }
    const FpMatrix& map(std::size_t arrow) const { return maps_.at(arrow); }
    const std::vector<FpMatrix>& maps() const noexcept { return maps_; }

    /// Matrix by which the path acts (identity for a trivial path).
    FpMatrix evaluate(const Path& path) const;
    FpMatrix evaluate(const Relation& relation) const;

    /// Same presentation (by identity or value) and same prime.
    bool same_algebra(const Representation& other) const;

    /// Byte encoding of dimension vector and all entries; equal keys mean
    /// identical matrices.
    std::string key() const;

private:
    Representation(PresentationPtr pres, PrimeField field, DimensionVector dim, std::vector<FpMatrix> maps)
        : pres_(std::move(pres)), field_(field), dim_(std::move(dim)), maps_(std::move(maps)) {}

    PresentationPtr pres_;
    PrimeField field_;
    DimensionVector dim_;
    std::vector<FpMatrix> maps_;
};

/// Builds and relation-checks a representation from row-major arrow matrices.
Representation make_representation(PresentationPtr pres, std::uint32_t p, DimensionVector dim,
                                   std::vector<FpMatrix> maps);

Representation zero_representation(PresentationPtr pres, PrimeField field);
Representation vertex_simple(PresentationPtr pres, PrimeField field, std::size_t vertex);
/// P_i = A e_i. Only for acyclic quivers; relations are quotiented out.
Representation projective_module(PresentationPtr pres, PrimeField field, std::size_t vertex);
Representation direct_sum(const Representation& m, const Representation& n);

/// Per-vertex subspaces of a representation's vertex spaces.
struct Submodule {
    std::vector<Subspace> spaces;

    DimensionVector dim() const;
    int total_dim() const;
    bool contains(const Submodule& other) const;
    std::string key() const;

    bool operator==(const Submodule&) const = default;
};

Submodule zero_submodule(const Representation& m);
Submodule whole_submodule(const Representation& m);
/// True iff every arrow maps the subspace at its source into the subspace at its target.
bool is_submodule(const Representation& m, const Submodule& n);
/// Smallest submodule containing the given per-vertex subspaces.
Submodule invariant_closure(const Representation& m, Submodule seed);
/// The cyclic submodule generated by `v` placed at `vertex`.
Submodule cyclic_submodule(const Representation& m, std::size_t vertex, std::span<const std::uint32_t> v);
Submodule submodule_sum(const Submodule& a, const Submodule& b);

/// Complete submodule lattice, 0 and m included, duplicate-free, sorted by
/// (total dimension, dimension vector, key). Built as the join closure of the
/// cyclic submodules. Throws CapExceeded past `cap` elements.
std::vector<Submodule> all_submodules(const Representation& m, std::size_t cap = kDefaultSubmoduleCap);

/// A submodule lattice with the dimension vector of each element cached.
struct SubmoduleLattice {
    std::vector<Submodule> elements;
    std::vector<DimensionVector> dims;

    std::size_t size() const noexcept { return elements.size(); }
};

SubmoduleLattice submodule_lattice(const Representation& m, std::size_t cap = kDefaultSubmoduleCap);
SubmoduleLattice make_lattice(std::vector<Submodule> elements);

/// The submodule as a representation in the RREF bases of its vertex spaces.
Representation restrict_to(const Representation& m, const Submodule& n);
/// Quotient on the pivot-free coordinates of each RREF basis.
Representation quotient(const Representation& m, const Submodule& n);
/// upper / lower, for submodules lower ⊆ upper of m.
Representation subquotient(const Representation& m, const Submodule& lower, const Submodule& upper);

/// Basis of Hom_A(m, n): per-vertex matrices (n.dim[i] x m.dim[i]) commuting
/// with every arrow.
struct HomSpace {
    std::vector<std::vector<FpMatrix>> basis;

    std::size_t dim() const noexcept { return basis.size(); }
};

HomSpace hom_space(const Representation& m, const Representation& n);

/// Decides m ≅ n. Scans all p^h elements of Hom(m, n) when p^h <= cap, else
/// tries `cap` seeded random elements and throws CapExceeded if none is invertible.
bool are_isomorphic(const Representation& m, const Representation& n, std::size_t cap = kDefaultIsoCap,
                    std::uint64_t seed = 0x5eed);

/// True iff every cyclic path of length 1..max_cycle_len acts as zero; with
/// `nilpotent`, iff every such cycle acts nilpotently. A bounded check only.
bool cycles_act_as_zero(const Representation& m, std::size_t max_cycle_len, bool nilpotent = false);

} // namespace quiverstab
