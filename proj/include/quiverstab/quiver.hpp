#pragma once

#include "quiverstab/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quiverstab {

/// Per-vertex nonnegative integers; the class of a module in the simple basis.
class DimensionVector {
public:
    DimensionVector() = default;
    explicit DimensionVector(std::vector<int> entries);

    static DimensionVector zero(std::size_t n) { return DimensionVector(std::vector<int>(n, 0)); }
    static DimensionVector unit(std::size_t n, std::size_t i);

    std::size_t size() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    int total() const noexcept;
    int max_norm() const noexcept;
    bool is_zero() const noexcept;
    /// Componentwise `<=`.
    bool leq(const DimensionVector& other) const;

    friend DimensionVector operator+(const DimensionVector& a, const DimensionVector& b);
    /// Throws if a componentwise difference goes negative.
    friend DimensionVector operator-(const DimensionVector& a, const DimensionVector& b);

    /// Lexicographic.
    auto operator<=>(const DimensionVector&) const = default;

    std::string to_string() const;

private:
    std::vector<int> entries_;
};

struct Arrow {
    std::string name;
    std::size_t source;
    std::size_t target;

    bool operator==(const Arrow&) const = default;
};

/// Finite quiver. Vertex identifiers are arbitrary tokens; internally every
/// vertex is its dense index in `vertices()`.
class Quiver {
public:
    Quiver() = default;

    static Quiver create(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t arrow_count() const noexcept { return arrows_.size(); }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::string& vertex_id(std::size_t i) const { return vertices_.at(i); }

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::optional<std::size_t> find_arrow(std::string_view name) const;

    std::size_t arrow_count_between(std::size_t source, std::size_t target) const;

    bool operator==(const Quiver&) const = default;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

/// A path in the quiver. Arrows are stored in the order they are applied;
/// the textual form is written right-to-left, so "g*f" applies f first.
class Path {
public:
    static Path trivial(std::size_t vertex);
    /// Throws Error("quiver.not_composable") if consecutive arrows do not compose.
    static Path from_arrows(const Quiver& q, std::vector<std::size_t> arrows);

    std::size_t source() const noexcept { return source_; }
    std::size_t target() const noexcept { return target_; }
    std::size_t length() const noexcept { return arrows_.size(); }
    bool is_trivial() const noexcept { return arrows_.empty(); }
    const std::vector<std::size_t>& arrows() const noexcept { return arrows_; }

    /// `q` first applied, then this path.
    Path after(const Quiver& q, const Path& first) const;

    std::string render(const Quiver& q) const;

    bool operator==(const Path&) const = default;
    /// Length first, then source, then the arrow sequence.
    std::strong_ordering operator<=>(const Path& other) const;

private:
    Path(std::size_t source, std::size_t target, std::vector<std::size_t> arrows)
        : source_(source), target_(target), arrows_(std::move(arrows)) {}

    std::size_t source_ = 0;
    std::size_t target_ = 0;
    std::vector<std::size_t> arrows_;
};

struct Term {
    Rational coefficient;
    Path path;

    bool operator==(const Term&) const = default;
};

/// A linear combination of parallel paths of positive length.
class Relation {
public:
    static Relation create(std::vector<Term> terms);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t source() const { return terms_.front().path.source(); }
    std::size_t target() const { return terms_.front().path.target(); }
    std::size_t min_length() const;

    std::string render(const Quiver& q) const;

    bool operator==(const Relation&) const = default;

private:
    std::vector<Term> terms_;
};

/// A = kQ/I with I generated by `relations()`.
class QuiverPresentation {
public:
    QuiverPresentation() = default;
    QuiverPresentation(Quiver quiver, std::vector<Relation> relations);

    const Quiver& quiver() const noexcept { return quiver_; }
    const std::vector<Relation>& relations() const noexcept { return relations_; }

    bool operator==(const QuiverPresentation&) const = default;

private:
    Quiver quiver_;
    std::vector<Relation> relations_;
};

inline constexpr std::size_t kDefaultPathCap = 10'000;

/// True iff the quiver has no oriented cycle (loops included).
bool is_acyclic(const Quiver& q);

/// All paths starting at `source` of length at most `max_len`, ordered by
/// length and then lexicographically by arrow index. Throws CapExceeded if
/// more than `cap` paths would be produced.
std::vector<Path> enumerate_paths(const Quiver& q, std::size_t source, std::size_t max_len,
                                  std::size_t cap = kDefaultPathCap);

/// Serializes the presentation as a quiver description document.
std::string render_presentation(const QuiverPresentation& pres);

} // namespace quiverstab
