#pragma once

#include "quiverstab/families.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/quiver.hpp"
#include "quiverstab/rational.hpp"
#include "quiverstab/representation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quiverstab {

struct ParseWarning {
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

struct NamedRepresentation {
    std::string name;
    Representation rep;
};

/// A `params` line. Missing λ defaults to all ones, ξ to 0 and v to the class
/// of whatever module the parameters are applied to.
struct ParamsSpec {
    std::vector<Rational> theta;
    std::optional<std::vector<Rational>> lambda;
    std::optional<Rational> xi;
    std::optional<DimensionVector> v;
};

/// Everything a quiver description document can declare.
struct Description {
    PresentationPtr presentation;
    std::optional<TorTable> tor;
    std::vector<NamedRepresentation> reps;
    std::vector<ParamsSpec> params;
    std::vector<FamilyOverP1> families;
    std::vector<ParseWarning> warnings;

    const NamedRepresentation* find_rep(std::string_view name) const;
    const FamilyOverP1* find_family(std::string_view name) const;
};

/// Line-oriented grammar:
///
///     vertices 1 2
///     arrow a 1 2
///     relation g*f - 1/2*h        # paths read right-to-left
///     tor gldim 2                 # or: tor 2
///     tor_entry 1 1 2 2           # degree, vertex, vertex, multiplicity
///     rep m p=3 dim 1 1
///     mat a 1 1: 1
///     params theta -1 1 lambda 1 1 xi 0 v 1 1
///     family taut p=3
///     split 2 1
///     poly a 1 1: 1 0             # coefficients of s^d, ..., t^d
///     poly b 1 1: t               # or a homogeneous expression in s, t
///
/// `mat`, `split` and `poly` lines attach to the nearest preceding `rep` or
/// `family`. Arrows without a `mat` act by zero; family entries without a
/// `poly` are zero. Throws ParseError with the offending line and column.
Description parse_description(std::string_view text);

/// The quiver with relations only; the other blocks are still validated.
QuiverPresentation parse_presentation(std::string_view text);

/// Inverse of parse_description for everything except comments and layout.
std::string render_description(const Description& doc);

/// Parses a single polynomial entry as `poly` lines do.
BivariatePoly parse_polynomial(std::string_view text, const PrimeField& field);

} // namespace quiverstab
