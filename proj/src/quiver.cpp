#include "quiverstab/quiver.hpp"

#include "quiverstab/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace quiverstab {

DimensionVector::DimensionVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int d : entries_) {
        if (d < 0) {
            throw Error("dimension.negative", "dimension vector entries must be nonnegative");
        }
    }
}

DimensionVector DimensionVector::unit(std::size_t n, std::size_t i) {
    std::vector<int> e(n, 0);
    e.at(i) = 1;
    return DimensionVector(std::move(e));
}

int DimensionVector::total() const noexcept {
    int s = 0;
    for (int d : entries_) s += d;
    return s;
}

int DimensionVector::max_norm() const noexcept {
    int m = 0;
    for (int d : entries_) m = std::max(m, d);
    return m;
}

bool DimensionVector::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](int d) { return d == 0; });
}

bool DimensionVector::leq(const DimensionVector& other) const {
    if (size() != other.size()) {
        throw Error("dimension.length_mismatch", "dimension vectors of different length");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (entries_[i] > other.entries_[i]) return false;
    }
    return true;
}

DimensionVector operator+(const DimensionVector& a, const DimensionVector& b) {
    if (a.size() != b.size()) {
        throw Error("dimension.length_mismatch", "dimension vectors of different length");
    }
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return DimensionVector(std::move(out));
}

DimensionVector operator-(const DimensionVector& a, const DimensionVector& b) {
    if (a.size() != b.size()) {
        throw Error("dimension.length_mismatch", "dimension vectors of different length");
    }
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return DimensionVector(std::move(out));
}

std::string DimensionVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(entries_[i]);
    }
    return s + ")";
}

Quiver Quiver::create(std::vector<std::string> vertices, std::vector<Arrow> arrows) {
    if (vertices.empty()) {
        throw Error("quiver.no_vertices", "a quiver needs at least one vertex");
    }
    std::set<std::string> seen;
    for (const auto& v : vertices) {
        if (!seen.insert(v).second) {
            throw Error("quiver.duplicate_vertex", "duplicate vertex '" + v + "'");
        }
    }
    std::set<std::string> arrow_names;
    for (const auto& a : arrows) {
        if (a.source >= vertices.size() || a.target >= vertices.size()) {
            throw Error("quiver.unknown_vertex", "arrow '" + a.name + "' references a missing vertex");
        }
        if (!arrow_names.insert(a.name).second) {
            throw Error("quiver.duplicate_arrow", "duplicate arrow '" + a.name + "'");
        }
    }
    Quiver q;
    q.vertices_ = std::move(vertices);
    q.arrows_ = std::move(arrows);
    return q;
}

std::optional<std::size_t> Quiver::find_vertex(std::string_view id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] == id) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Quiver::find_arrow(std::string_view name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        if (arrows_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Quiver::arrow_count_between(std::size_t source, std::size_t target) const {
    return static_cast<std::size_t>(std::count_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) {
        return a.source == source && a.target == target;
    }));
}

Path Path::trivial(std::size_t vertex) { return Path(vertex, vertex, {}); }

Path Path::from_arrows(const Quiver& q, std::vector<std::size_t> arrows) {
    if (arrows.empty()) {
        throw Error("quiver.empty_path", "use Path::trivial for length-zero paths");
    }
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        if (arrows[k] >= q.arrow_count()) {
            throw Error("quiver.unknown_arrow", "arrow index out of range");
        }
        if (k > 0 && q.arrow(arrows[k - 1]).target != q.arrow(arrows[k]).source) {
            throw Error("quiver.not_composable",
                        "arrows '" + q.arrow(arrows[k]).name + "' and '" + q.arrow(arrows[k - 1]).name +
                            "' do not compose");
        }
    }
    const std::size_t s = q.arrow(arrows.front()).source;
    const std::size_t t = q.arrow(arrows.back()).target;
    return Path(s, t, std::move(arrows));
}

Path Path::after(const Quiver& q, const Path& first) const {
    if (first.target() != source()) {
        throw Error("quiver.not_composable", "paths do not compose");
    }
    if (first.is_trivial()) return *this;
    if (is_trivial()) return first;
    std::vector<std::size_t> joined = first.arrows_;
    joined.insert(joined.end(), arrows_.begin(), arrows_.end());
    return from_arrows(q, std::move(joined));
}

std::string Path::render(const Quiver& q) const {
    if (is_trivial()) return "e_" + q.vertex_id(source_);
    std::string s;
    for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += q.arrow(*it).name;
    }
    return s;
}

std::strong_ordering Path::operator<=>(const Path& other) const {
    if (auto c = length() <=> other.length(); c != 0) return c;
    if (auto c = source_ <=> other.source_; c != 0) return c;
    return arrows_ <=> other.arrows_;
}

Relation Relation::create(std::vector<Term> terms) {
    if (terms.empty()) {
        throw Error("quiver.empty_relation", "a relation needs at least one term");
    }
    for (const auto& t : terms) {
        if (t.path.is_trivial()) {
            throw Error("quiver.relation_length", "relation paths must have length at least one");
        }
        if (t.path.source() != terms.front().path.source() ||
            t.path.target() != terms.front().path.target()) {
            throw Error("quiver.relation_not_parallel", "relation terms are not parallel paths");
        }
    }
    Relation r;
    r.terms_ = std::move(terms);
    return r;
}

std::size_t Relation::min_length() const {
    std::size_t m = terms_.front().path.length();
    for (const auto& t : terms_) m = std::min(m, t.path.length());
    return m;
}

std::string Relation::render(const Quiver& q) const {
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        Rational c = terms_[k].coefficient;
        if (k > 0) {
            s += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        s += to_string(c) + "*" + terms_[k].path.render(q);
    }
    return s;
}

QuiverPresentation::QuiverPresentation(Quiver quiver, std::vector<Relation> relations)
    : quiver_(std::move(quiver)), relations_(std::move(relations)) {
    for (const auto& r : relations_) {
        for (const auto& t : r.terms()) {
            for (std::size_t a : t.path.arrows()) {
                if (a >= quiver_.arrow_count()) {
                    throw Error("quiver.unknown_arrow", "relation references a missing arrow");
                }
            }
        }
    }
}

bool is_acyclic(const Quiver& q) {
    // Kahn's algorithm.
    const std::size_t n = q.vertex_count();
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& a : q.arrows()) ++indegree[a.target];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push_back(i);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        const std::size_t v = ready.back();
        ready.pop_back();
        ++removed;
        for (const auto& a : q.arrows()) {
            if (a.source == v && --indegree[a.target] == 0) ready.push_back(a.target);
        }
    }
    return removed == n;
}

std::vector<Path> enumerate_paths(const Quiver& q, std::size_t source, std::size_t max_len,
                                  std::size_t cap) {
    if (source >= q.vertex_count()) {
        throw Error("quiver.unknown_vertex", "source vertex out of range");
    }
    std::vector<Path> out{Path::trivial(source)};
    std::vector<Path> frontier{Path::trivial(source)};
    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            for (std::size_t a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(a).source != p.target()) continue;
                std::vector<std::size_t> arrows = p.arrows();
                arrows.push_back(a);
                next.push_back(Path::from_arrows(q, std::move(arrows)));
                if (out.size() + next.size() > cap) {
                    throw CapExceeded("quiver.path_cap", "path enumeration exceeded cap of " +
                                                              std::to_string(cap),
                                      out.size() + next.size() - 1);
                }
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::string render_presentation(const QuiverPresentation& pres) {
    const Quiver& q = pres.quiver();
    std::ostringstream os;
    os << "vertices";
    for (const auto& v : q.vertices()) os << ' ' << v;
    os << '\n';
    for (const auto& a : q.arrows()) {
        os << "arrow " << a.name << ' ' << q.vertex_id(a.source) << ' ' << q.vertex_id(a.target) << '\n';
    }
    for (const auto& r : pres.relations()) {
        os << "relation " << r.render(q) << '\n';
    }
    return os.str();
}

} // namespace quiverstab
