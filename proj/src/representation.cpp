#include "quiverstab/representation.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace quiverstab {

namespace {

void append_u32(std::string& out, std::uint32_t x) {
    out.push_back(static_cast<char>(x & 0xff));
    out.push_back(static_cast<char>((x >> 8) & 0xff));
    out.push_back(static_cast<char>((x >> 16) & 0xff));
    out.push_back(static_cast<char>((x >> 24) & 0xff));
}

std::string render_matrix(const FpMatrix& m) {
    std::string s = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) s += ",";
        s += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) s += ",";
            s += std::to_string(m(r, c));
        }
        s += "]";
    }
    return s + "]";
}

void require_same_algebra(const Representation& m, const Representation& n) {
    if (!m.same_algebra(n)) {
        throw Error("representation.mismatch", "representations over different algebras or primes");
    }
}

} // namespace

Representation Representation::create(PresentationPtr pres, PrimeField field, DimensionVector dim,
                                       std::vector<FpMatrix> maps) {
    if (!pres) {
        throw Error("representation.no_presentation", "missing presentation");
    }
    const Quiver& q = pres->quiver();
    if (dim.size() != q.vertex_count()) {
        throw Error("representation.shape", "dimension vector has " + std::to_string(dim.size()) +
                                                " entries but the quiver has " +
                                                std::to_string(q.vertex_count()) + " vertices");
    }
    if (maps.size() != q.arrow_count()) {
        throw Error("representation.shape", "expected one matrix per arrow");
    }
    for (std::size_t a = 0; a < maps.size(); ++a) {
        const auto& arrow = q.arrow(a);
        const auto rows = static_cast<std::size_t>(dim[arrow.target]);
        const auto cols = static_cast<std::size_t>(dim[arrow.source]);
        if (maps[a].rows() != rows || maps[a].cols() != cols) {
            throw Error("representation.shape", "matrix for arrow '" + arrow.name + "' is " +
                                                    std::to_string(maps[a].rows()) + "x" +
                                                    std::to_string(maps[a].cols()) + ", expected " +
                                                    std::to_string(rows) + "x" + std::to_string(cols));
        }
        for (auto& x : maps[a].data()) {
            if (x >= field.modulus()) x %= field.modulus();
        }
    }
    Representation rep(std::move(pres), field, std::move(dim), std::move(maps));
    const auto& relations = rep.presentation().relations();
    for (std::size_t r = 0; r < relations.size(); ++r) {
        const FpMatrix residual = rep.evaluate(relations[r]);
        if (!is_zero_matrix(field, residual)) {
            throw Error("representation.relation_violated",
                        "relation " + std::to_string(r + 1) + " (" + relations[r].render(q) +
                            ") does not hold; residual " + render_matrix(residual));
        }
    }
    return rep;
}

FpMatrix Representation::evaluate(const Path& path) const {
    FpMatrix acc = identity_matrix(field_, static_cast<std::size_t>(dim_[path.source()]));
    for (std::size_t a : path.arrows()) acc = multiply(field_, maps_[a], acc);
    return acc;
}

FpMatrix Representation::evaluate(const Relation& relation) const {
    const auto rows = static_cast<std::size_t>(dim_[relation.target()]);
    const auto cols = static_cast<std::size_t>(dim_[relation.source()]);
    FpMatrix sum(rows, cols, 0);
    for (const auto& term : relation.terms()) {
        const auto c = field_.from_rational(term.coefficient);
        const FpMatrix m = evaluate(term.path);
        for (std::size_t k = 0; k < sum.data().size(); ++k) {
            sum.data()[k] = field_.add(sum.data()[k], field_.mul(c, m.data()[k]));
        }
    }
    return sum;
}

bool Representation::same_algebra(const Representation& other) const {
    return field_ == other.field_ && (pres_ == other.pres_ || *pres_ == *other.pres_);
}

std::string Representation::key() const {
    std::string out;
    for (int d : dim_.entries()) append_u32(out, static_cast<std::uint32_t>(d));
    for (const auto& m : maps_) {
        for (auto x : m.data()) append_u32(out, x);
    }
    return out;
}

Representation make_representation(PresentationPtr pres, std::uint32_t p, DimensionVector dim,
                                   std::vector<FpMatrix> maps) {
    return Representation::create(std::move(pres), PrimeField(p), std::move(dim), std::move(maps));
}

Representation zero_representation(PresentationPtr pres, PrimeField field) {
    const Quiver& q = pres->quiver();
    std::vector<FpMatrix> maps(q.arrow_count(), FpMatrix(0, 0));
    return Representation::create(pres, field, DimensionVector::zero(q.vertex_count()), std::move(maps));
}

Representation vertex_simple(PresentationPtr pres, PrimeField field, std::size_t vertex) {
    const Quiver& q = pres->quiver();
    if (vertex >= q.vertex_count()) {
        throw Error("quiver.unknown_vertex", "vertex index out of range");
    }
    DimensionVector dim = DimensionVector::unit(q.vertex_count(), vertex);
    std::vector<FpMatrix> maps;
    for (const auto& a : q.arrows()) {
        maps.emplace_back(static_cast<std::size_t>(dim[a.target]), static_cast<std::size_t>(dim[a.source]), 0);
    }
    return Representation::create(std::move(pres), field, std::move(dim), std::move(maps));
}

Representation projective_module(PresentationPtr pres, PrimeField field, std::size_t vertex) {
    const Quiver& q = pres->quiver();
    if (!is_acyclic(q)) {
        throw Error("representation.unsupported",
                    "projective modules of cyclic quivers are infinite-dimensional and not supported");
    }
    const std::size_t n = q.vertex_count();
    const auto paths = enumerate_paths(q, vertex, n);
    // Path basis per target vertex.
    std::vector<std::vector<Path>> basis(n);
    for (const auto& p : paths) basis[p.target()].push_back(p);
    auto index_of = [&](const Path& p) {
        const auto& b = basis[p.target()];
        return static_cast<std::size_t>(std::find(b.begin(), b.end(), p) - b.begin());
    };
    std::vector<int> dims(n);
    for (std::size_t j = 0; j < n; ++j) dims[j] = static_cast<int>(basis[j].size());
    std::vector<FpMatrix> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        FpMatrix m(basis[arrow.target].size(), basis[arrow.source].size(), 0);
        for (std::size_t c = 0; c < basis[arrow.source].size(); ++c) {
            const Path extended = Path::from_arrows(q, {a}).after(q, basis[arrow.source][c]);
            m(index_of(extended), c) = 1;
        }
        maps.push_back(std::move(m));
    }
    auto free_pres = std::make_shared<const QuiverPresentation>(q, std::vector<Relation>{});
    Representation path_module =
        Representation::create(free_pres, field, DimensionVector(dims), std::move(maps));
    if (pres->relations().empty()) {
        return Representation::create(std::move(pres), field, path_module.dim(), path_module.maps());
    }
    // I e_vertex is spanned by u * r * w with w a path vertex -> source(r).
    Submodule ideal = zero_submodule(path_module);
    std::vector<FpMatrix> generators(n);
    for (std::size_t j = 0; j < n; ++j) generators[j] = FpMatrix(0, basis[j].size());
    for (const auto& rel : pres->relations()) {
        for (const auto& w : paths) {
            if (w.target() != rel.source()) continue;
            for (const auto& u : enumerate_paths(q, rel.target(), n)) {
                FpVector vec(basis[u.target()].size(), 0);
                for (const auto& term : rel.terms()) {
                    const Path full = u.after(q, term.path.after(q, w));
                    const auto idx = index_of(full);
                    vec[idx] = field.add(vec[idx], field.from_rational(term.coefficient));
                }
                generators[u.target()].append_row(vec);
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        ideal.spaces[j] = Subspace::span(field, basis[j].size(), generators[j]);
    }
    const Representation reduced = quotient(path_module, invariant_closure(path_module, ideal));
    return Representation::create(std::move(pres), field, reduced.dim(), reduced.maps());
}

Representation direct_sum(const Representation& m, const Representation& n) {
    require_same_algebra(m, n);
    const Quiver& q = m.quiver();
    std::vector<FpMatrix> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& ma = m.map(a);
        const auto& na = n.map(a);
        FpMatrix s(ma.rows() + na.rows(), ma.cols() + na.cols(), 0);
        for (std::size_t r = 0; r < ma.rows(); ++r)
            for (std::size_t c = 0; c < ma.cols(); ++c) s(r, c) = ma(r, c);
        for (std::size_t r = 0; r < na.rows(); ++r)
            for (std::size_t c = 0; c < na.cols(); ++c) s(ma.rows() + r, ma.cols() + c) = na(r, c);
        maps.push_back(std::move(s));
    }
    return Representation::create(m.presentation_ptr(), m.field(), m.dim() + n.dim(), std::move(maps));
}

DimensionVector Submodule::dim() const {
    std::vector<int> d;
    d.reserve(spaces.size());
    for (const auto& s : spaces) d.push_back(static_cast<int>(s.dim()));
    return DimensionVector(std::move(d));
}

int Submodule::total_dim() const {
    int t = 0;
    for (const auto& s : spaces) t += static_cast<int>(s.dim());
    return t;
}

bool Submodule::contains(const Submodule& other) const {
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        if (!spaces[i].contains(other.spaces[i])) return false;
    }
    return true;
}

std::string Submodule::key() const {
    std::string out;
    std::size_t size = spaces.size();
    for (const auto& s : spaces) size += 4 * s.basis().data().size();
    out.reserve(size);
    for (const auto& s : spaces) {
        out.push_back(static_cast<char>(s.dim()));
        for (auto x : s.basis().data()) append_u32(out, x);
    }
    return out;
}

Submodule zero_submodule(const Representation& m) {
    Submodule s;
    for (int d : m.dim().entries()) s.spaces.push_back(Subspace::zero(m.field(), static_cast<std::size_t>(d)));
    return s;
}

Submodule whole_submodule(const Representation& m) {
    Submodule s;
    for (int d : m.dim().entries()) s.spaces.push_back(Subspace::full(m.field(), static_cast<std::size_t>(d)));
    return s;
}

bool is_submodule(const Representation& m, const Submodule& n) {
    const Quiver& q = m.quiver();
    if (n.spaces.size() != q.vertex_count()) return false;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        if (n.spaces[i].ambient_dim() != static_cast<std::size_t>(m.dim()[i])) return false;
    }
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        const auto& src = n.spaces[arrow.source];
        const auto& tgt = n.spaces[arrow.target];
        for (std::size_t r = 0; r < src.dim(); ++r) {
            if (!tgt.contains(apply(m.field(), m.map(a), src.basis().row(r)))) return false;
        }
    }
    return true;
}

Submodule invariant_closure(const Representation& m, Submodule seed) {
    const Quiver& q = m.quiver();
    std::deque<std::size_t> work;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        if (seed.spaces[i].dim() > 0) work.push_back(i);
    }
    while (!work.empty()) {
        const std::size_t u = work.front();
        work.pop_front();
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const auto& arrow = q.arrow(a);
            if (arrow.source != u) continue;
            auto& tgt = seed.spaces[arrow.target];
            const std::size_t before = tgt.dim();
            tgt = subspace_sum(tgt, image(m.map(a), seed.spaces[u]));
            if (tgt.dim() != before) work.push_back(arrow.target);
        }
    }
    return seed;
}

Submodule cyclic_submodule(const Representation& m, std::size_t vertex, std::span<const std::uint32_t> v) {
    Submodule seed = zero_submodule(m);
    FpMatrix gen(0, v.size());
    gen.append_row(v);
    seed.spaces[vertex] = Subspace::span(m.field(), v.size(), gen);
    return invariant_closure(m, std::move(seed));
}

Submodule submodule_sum(const Submodule& a, const Submodule& b) {
    Submodule s;
    s.spaces.reserve(a.spaces.size());
    for (std::size_t i = 0; i < a.spaces.size(); ++i) s.spaces.push_back(subspace_sum(a.spaces[i], b.spaces[i]));
    return s;
}

namespace {

/// Nonzero vectors of F_p^d whose first nonzero entry is 1.
std::vector<FpVector> projective_representatives(std::size_t d, std::uint32_t p) {
    std::vector<FpVector> out;
    for (std::size_t lead = 0; lead < d; ++lead) {
        const std::size_t free = d - lead - 1;
        FpVector v(d, 0);
        v[lead] = 1;
        while (true) {
            out.push_back(v);
            std::size_t i = d;
            bool done = true;
            while (i > lead + 1) {
                --i;
                if (++v[i] < p) {
                    done = false;
                    break;
                }
                v[i] = 0;
            }
            if (done || free == 0) break;
        }
    }
    return out;
}

} // namespace

std::vector<Submodule> all_submodules(const Representation& m, std::size_t cap) {
    const Quiver& q = m.quiver();
    const std::uint32_t p = m.field().modulus();
    // cyclic[i][code]: the cyclic submodule generated at vertex i by the
    // normalized vector whose base-p encoding is `code`.
    std::vector<std::unordered_map<std::uint64_t, Submodule>> cyclic(q.vertex_count());
    auto encode = [p](std::span<const std::uint32_t> v) {
        std::uint64_t code = 0;
        for (auto x : v) code = code * p + x;
        return code;
    };
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        for (const auto& v : projective_representatives(static_cast<std::size_t>(m.dim()[i]), p)) {
            cyclic[i].emplace(encode(v), cyclic_submodule(m, i, v));
        }
    }

    // Every submodule strictly above N is a join of N with cyclic
    // submodules, and N + C(v) only depends on v modulo N, so each element is
    // joined with one generator per projective point of the quotient.
    std::vector<Submodule> lattice{zero_submodule(m)};
    std::unordered_set<std::string> seen{lattice.front().key()};
    for (std::size_t head = 0; head < lattice.size(); ++head) {
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            const Subspace& here = lattice[head].spaces[i];
            const std::size_t n = here.ambient_dim();
            if (here.dim() == n) continue;
            std::vector<bool> pivot(n, false);
            for (std::size_t c : here.pivots()) pivot[c] = true;
            std::vector<std::size_t> free_cols;
            for (std::size_t c = 0; c < n; ++c) {
                if (!pivot[c]) free_cols.push_back(c);
            }
            for (const auto& w : projective_representatives(free_cols.size(), p)) {
                FpVector v(n, 0);
                for (std::size_t k = 0; k < free_cols.size(); ++k) v[free_cols[k]] = w[k];
                Submodule joined = submodule_sum(lattice[head], cyclic[i].at(encode(v)));
                if (seen.insert(joined.key()).second) {
                    if (lattice.size() >= cap) {
                        throw CapExceeded("representation.submodule_cap",
                                          "submodule lattice exceeds cap of " + std::to_string(cap),
                                          lattice.size());
                    }
                    lattice.push_back(std::move(joined));
                }
            }
        }
    }
    std::vector<DimensionVector> dims;
    std::vector<std::string> keys;
    dims.reserve(lattice.size());
    keys.reserve(lattice.size());
    std::vector<std::size_t> order(lattice.size());
    for (std::size_t k = 0; k < lattice.size(); ++k) {
        order[k] = k;
        dims.push_back(lattice[k].dim());
        keys.push_back(lattice[k].key());
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (dims[x].total() != dims[y].total()) return dims[x].total() < dims[y].total();
        if (dims[x] != dims[y]) return dims[x] < dims[y];
        return keys[x] < keys[y];
    });
    std::vector<Submodule> sorted;
    sorted.reserve(lattice.size());
    for (std::size_t k : order) sorted.push_back(std::move(lattice[k]));
    return sorted;
}

SubmoduleLattice make_lattice(std::vector<Submodule> elements) {
    SubmoduleLattice l;
    l.dims.reserve(elements.size());
    for (const auto& e : elements) l.dims.push_back(e.dim());
    l.elements = std::move(elements);
    return l;
}

SubmoduleLattice submodule_lattice(const Representation& m, std::size_t cap) {
    return make_lattice(all_submodules(m, cap));
}

Representation restrict_to(const Representation& m, const Submodule& n) {
    const Quiver& q = m.quiver();
    std::vector<FpMatrix> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        const auto& src = n.spaces[arrow.source];
        const auto& tgt = n.spaces[arrow.target];
        FpMatrix r(tgt.dim(), src.dim(), 0);
        for (std::size_t c = 0; c < src.dim(); ++c) {
            const FpVector y = apply(m.field(), m.map(a), src.basis().row(c));
            if (!tgt.contains(y)) {
                throw Error("representation.not_submodule", "subspaces are not closed under arrow '" +
                                                                arrow.name + "'");
            }
            const FpVector coords = tgt.coordinates(y);
            for (std::size_t k = 0; k < coords.size(); ++k) r(k, c) = coords[k];
        }
        maps.push_back(std::move(r));
    }
    return Representation::create(m.presentation_ptr(), m.field(), n.dim(), std::move(maps));
}

Representation quotient(const Representation& m, const Submodule& n) {
    if (!is_submodule(m, n)) {
        throw Error("representation.not_submodule", "quotient by a non-invariant subspace family");
    }
    const Quiver& q = m.quiver();
    std::vector<std::vector<std::size_t>> complement(q.vertex_count());
    std::vector<int> dims(q.vertex_count());
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        std::vector<bool> pivot(static_cast<std::size_t>(m.dim()[i]), false);
        for (auto c : n.spaces[i].pivots()) pivot[c] = true;
        for (std::size_t c = 0; c < pivot.size(); ++c) {
            if (!pivot[c]) complement[i].push_back(c);
        }
        dims[i] = static_cast<int>(complement[i].size());
    }
    std::vector<FpMatrix> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        const auto& cs = complement[arrow.source];
        const auto& ct = complement[arrow.target];
        const auto& ma = m.map(a);
        FpMatrix r(ct.size(), cs.size(), 0);
        for (std::size_t c = 0; c < cs.size(); ++c) {
            FpVector y(ma.rows());
            for (std::size_t k = 0; k < ma.rows(); ++k) y[k] = ma(k, cs[c]);
            n.spaces[arrow.target].reduce(y);
            for (std::size_t k = 0; k < ct.size(); ++k) r(k, c) = y[ct[k]];
        }
        maps.push_back(std::move(r));
    }
    return Representation::create(m.presentation_ptr(), m.field(), DimensionVector(dims), std::move(maps));
}

Representation subquotient(const Representation& m, const Submodule& lower, const Submodule& upper) {
    if (!upper.contains(lower)) {
        throw Error("representation.not_nested", "subquotient needs lower ⊆ upper");
    }
    const Representation top = restrict_to(m, upper);
    Submodule inner;
    for (std::size_t i = 0; i < upper.spaces.size(); ++i) {
        FpMatrix coords(0, upper.spaces[i].dim());
        for (std::size_t r = 0; r < lower.spaces[i].dim(); ++r) {
            coords.append_row(upper.spaces[i].coordinates(lower.spaces[i].basis().row(r)));
        }
        inner.spaces.push_back(Subspace::span(m.field(), upper.spaces[i].dim(), coords));
    }
    return quotient(top, inner);
}

HomSpace hom_space(const Representation& m, const Representation& n) {
    require_same_algebra(m, n);
    const Quiver& q = m.quiver();
    const PrimeField& f = m.field();
    const std::size_t nv = q.vertex_count();
    std::vector<std::size_t> offset(nv + 1, 0);
    for (std::size_t i = 0; i < nv; ++i) {
        offset[i + 1] = offset[i] + static_cast<std::size_t>(n.dim()[i] * m.dim()[i]);
    }
    const std::size_t unknowns = offset[nv];
    // phi_i(r, c) lives at offset[i] + r * m.dim[i] + c.
    auto var = [&](std::size_t i, std::size_t r, std::size_t c) {
        return offset[i] + r * static_cast<std::size_t>(m.dim()[i]) + c;
    };
    FpMatrix system(0, unknowns);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        const std::size_t i = arrow.source, j = arrow.target;
        const auto di = static_cast<std::size_t>(m.dim()[i]);
        const auto dj = static_cast<std::size_t>(m.dim()[j]);
        const auto ei = static_cast<std::size_t>(n.dim()[i]);
        const auto ej = static_cast<std::size_t>(n.dim()[j]);
        const auto& ma = m.map(a);
        const auto& na = n.map(a);
        // (N_a phi_i - phi_j M_a)(r, c) = 0
        for (std::size_t r = 0; r < ej; ++r) {
            for (std::size_t c = 0; c < di; ++c) {
                FpVector row(unknowns, 0);
                for (std::size_t k = 0; k < ei; ++k) {
                    row[var(i, k, c)] = f.add(row[var(i, k, c)], na(r, k));
                }
                for (std::size_t k = 0; k < dj; ++k) {
                    row[var(j, r, k)] = f.sub(row[var(j, r, k)], ma(k, c));
                }
                system.append_row(row);
            }
        }
    }
    if (system.rows() == 0) system = FpMatrix(0, unknowns);
    HomSpace out;
    for (const auto& v : kernel_basis(f, system)) {
        std::vector<FpMatrix> phi;
        for (std::size_t i = 0; i < nv; ++i) {
            const auto di = static_cast<std::size_t>(m.dim()[i]);
            const auto ei = static_cast<std::size_t>(n.dim()[i]);
            FpMatrix p(ei, di, 0);
            for (std::size_t r = 0; r < ei; ++r)
                for (std::size_t c = 0; c < di; ++c) p(r, c) = v[var(i, r, c)];
            phi.push_back(std::move(p));
        }
        out.basis.push_back(std::move(phi));
    }
    return out;
}

namespace {

bool invertible_combination(const PrimeField& f, const HomSpace& hom, const std::vector<std::uint32_t>& coeffs,
                            const DimensionVector& dim) {
    for (std::size_t i = 0; i < dim.size(); ++i) {
        const auto d = static_cast<std::size_t>(dim[i]);
        if (d == 0) continue;
        FpMatrix phi(d, d, 0);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] == 0) continue;
            const auto& b = hom.basis[k][i];
            for (std::size_t e = 0; e < phi.data().size(); ++e) {
                phi.data()[e] = f.add(phi.data()[e], f.mul(coeffs[k], b.data()[e]));
            }
        }
        if (rref(f, std::move(phi)).rank != d) return false;
    }
    return true;
}

} // namespace

bool are_isomorphic(const Representation& m, const Representation& n, std::size_t cap, std::uint64_t seed) {
    require_same_algebra(m, n);
    if (m.dim() != n.dim()) return false;
    if (m.dim().is_zero()) return true;
    const HomSpace hom = hom_space(m, n);
    const std::size_t h = hom.dim();
    if (h == 0) return false;
    // An isomorphism m -> n identifies Hom(m, n) with End(m) and End(n).
    if (hom_space(m, m).dim() != h || hom_space(n, n).dim() != h) return false;
    const PrimeField& f = m.field();
    const std::uint64_t p = f.modulus();
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t k = 0; k < h; ++k) {
        if (total > cap / p + 1) {
            small = false;
            break;
        }
        total *= p;
    }
    small = small && total <= cap;
    std::vector<std::uint32_t> coeffs(h, 0);
    if (small) {
        while (true) {
            std::size_t k = 0;
            while (k < h) {
                if (++coeffs[k] < p) break;
                coeffs[k] = 0;
                ++k;
            }
            if (k == h) return false;
            if (invertible_combination(f, hom, coeffs, m.dim())) return true;
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
    for (std::size_t trial = 0; trial < cap; ++trial) {
        for (auto& c : coeffs) c = dist(rng);
        if (invertible_combination(f, hom, coeffs, m.dim())) return true;
    }
    throw CapExceeded("representation.iso_cap",
                      "no isomorphism found among " + std::to_string(cap) + " random elements of a " +
                          std::to_string(h) + "-dimensional Hom space",
                      cap);
}

bool cycles_act_as_zero(const Representation& m, std::size_t max_cycle_len, bool nilpotent) {
    if (max_cycle_len == 0) {
        throw Error("representation.bad_bound", "cycle length bound must be at least 1");
    }
    const Quiver& q = m.quiver();
    const PrimeField& f = m.field();
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        for (const auto& p : enumerate_paths(q, i, max_cycle_len)) {
            if (p.is_trivial() || p.target() != i) continue;
            FpMatrix action = m.evaluate(p);
            if (nilpotent) {
                FpMatrix power = action;
                for (int k = 1; k < m.dim()[i]; ++k) power = multiply(f, power, action);
                if (!is_zero_matrix(f, power)) return false;
            } else if (!is_zero_matrix(f, action)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace quiverstab
