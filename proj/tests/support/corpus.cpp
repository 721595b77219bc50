#include "corpus.hpp"

#include "quiverstab/errors.hpp"

#include <fstream>
#include <sstream>

#ifndef QUIVERSTAB_CORPUS_DIR
#error "QUIVERSTAB_CORPUS_DIR must point at the bundled corpus"
#endif

namespace quiverstab::testing {

std::string corpus_path(const std::string& file) { return std::string(QUIVERSTAB_CORPUS_DIR) + "/" + file; }

Description load(const std::string& file) {
    std::ifstream in(corpus_path(file));
    if (!in) throw std::runtime_error("missing corpus file " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_description(ss.str());
}

PresentationPtr presentation_of(const std::string& file) { return load(file).presentation; }

std::vector<DimensionVector> dimension_vectors(std::size_t vertices, int max_total) {
    std::vector<DimensionVector> out;
    std::vector<int> d(vertices, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == vertices) {
            out.emplace_back(d);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            d[i] = x;
            self(self, i + 1, left - x);
        }
        d[i] = 0;
    };
    rec(rec, 0, max_total);
    return out;
}

std::size_t entry_count(const Quiver& q, const DimensionVector& d) {
    std::size_t e = 0;
    for (const auto& a : q.arrows()) e += static_cast<std::size_t>(d[a.source] * d[a.target]);
    return e;
}

namespace {

bool is_square_zero_loop(const QuiverPresentation& pres) {
    const Quiver& q = pres.quiver();
    if (q.vertex_count() != 1 || q.arrow_count() != 1 || pres.relations().size() != 1) return false;
    const auto& terms = pres.relations()[0].terms();
    return terms.size() == 1 && terms[0].path.length() == 2;
}

std::vector<FpMatrix> invertible_matrices(const PrimeField& field, std::size_t r) {
    std::vector<FpMatrix> out;
    const std::size_t entries = r * r;
    std::size_t total = 1;
    for (std::size_t k = 0; k < entries; ++k) total *= field.modulus();
    for (std::size_t code = 0; code < total; ++code) {
        FpMatrix g(r, r, 0);
        std::size_t c = code;
        for (auto& x : g.data()) {
            x = static_cast<std::uint32_t>(c % field.modulus());
            c /= field.modulus();
        }
        if (rref(field, g).rank == r) out.push_back(std::move(g));
    }
    return out;
}

/// x = U G Q: image U, kernel K = ker Q.
FpMatrix square_zero(const PrimeField& field, std::size_t n, const Subspace& kernel, const Subspace& image,
                     const FpMatrix& g) {
    const std::size_t r = image.dim();
    FpMatrix basis_k(kernel.dim(), n, 0);
    for (std::size_t i = 0; i < kernel.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) basis_k(i, j) = kernel.basis()(i, j);
    // Rows of q span the annihilator of K, so ker q = K.
    const auto ann = kernel_basis(field, basis_k);
    FpMatrix q(r, n, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = ann[i][j];
    FpMatrix u(n, r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) u(j, i) = image.basis()(i, j);
    return multiply(field, u, multiply(field, g, q));
}

} // namespace

Enumeration for_each_representation(const PresentationPtr& pres, const PrimeField& field, const DimensionVector& d,
                                    std::size_t budget, std::uint64_t seed,
                                    const std::function<void(const Representation&)>& visit) {
    const Quiver& q = pres->quiver();
    const std::uint32_t p = field.modulus();
    Enumeration result;
    auto try_visit = [&](std::vector<FpMatrix> maps) {
        try {
            const Representation rep = Representation::create(pres, field, d, std::move(maps));
            ++result.visited;
            visit(rep);
        } catch (const Error& e) {
            if (e.kind() != "representation.relation_violated") throw;
        }
    };

    if (is_square_zero_loop(*pres)) {
        const std::size_t n = static_cast<std::size_t>(d[0]);
        std::vector<std::tuple<Subspace, Subspace, FpMatrix>> structures;
        const auto subspaces = enumerate_all_subspaces(n, field);
        BigInt total = 1; // the zero matrix
        for (std::size_t r = 1; 2 * r <= n; ++r) {
            BigInt gl = 1;
            for (std::size_t k = 0; k < r; ++k) {
                BigInt pr = 1, pk = 1;
                for (std::size_t e = 0; e < r; ++e) pr *= p;
                for (std::size_t e = 0; e < k; ++e) pk *= p;
                gl *= pr - pk;
            }
            total += gaussian_binomial(n, n - r, p) * gaussian_binomial(n - r, r, p) * gl;
        }
        std::mt19937_64 rng(seed);
        if (total <= budget) {
            try_visit({FpMatrix(n, n, 0)});
            for (std::size_t r = 1; 2 * r <= n; ++r) {
                const auto gs = invertible_matrices(field, r);
                for (const auto& k : subspaces) {
                    if (k.dim() != n - r) continue;
                    for (const auto& u : subspaces) {
                        if (u.dim() != r || !k.contains(u)) continue;
                        for (const auto& g : gs) try_visit({square_zero(field, n, k, u, g)});
                    }
                }
            }
            return result;
        }
        result.exhaustive = false;
        for (std::size_t s = 0; s < budget; ++s) {
            const std::size_t r = std::uniform_int_distribution<std::size_t>(0, n / 2)(rng);
            if (r == 0) {
                try_visit({FpMatrix(n, n, 0)});
                continue;
            }
            std::vector<const Subspace*> ks, us;
            for (const auto& sp : subspaces)
                if (sp.dim() == n - r) ks.push_back(&sp);
            const Subspace& k = *ks[std::uniform_int_distribution<std::size_t>(0, ks.size() - 1)(rng)];
            for (const auto& sp : subspaces)
                if (sp.dim() == r && k.contains(sp)) us.push_back(&sp);
            const Subspace& u = *us[std::uniform_int_distribution<std::size_t>(0, us.size() - 1)(rng)];
            try_visit({square_zero(field, n, k, u, random_invertible(field, r, rng))});
        }
        return result;
    }

    const std::size_t entries = entry_count(q, d);
    BigInt total = 1;
    for (std::size_t k = 0; k < entries; ++k) total *= p;
    auto build = [&](auto&& next_entry) {
        std::vector<FpMatrix> maps;
        for (const auto& a : q.arrows()) {
            FpMatrix m(static_cast<std::size_t>(d[a.target]), static_cast<std::size_t>(d[a.source]), 0);
            for (auto& x : m.data()) x = next_entry();
            maps.push_back(std::move(m));
        }
        return maps;
    };
    if (total <= budget) {
        const auto count = static_cast<std::size_t>(total);
        for (std::size_t code = 0; code < count; ++code) {
            std::size_t c = code;
            try_visit(build([&] {
                const auto x = static_cast<std::uint32_t>(c % p);
                c /= p;
                return x;
            }));
        }
        return result;
    }
    result.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
    for (std::size_t s = 0; s < budget; ++s) try_visit(build([&] { return entry(rng); }));
    return result;
}

std::vector<Submodule> brute_force_submodules(const Representation& m) {
    const std::size_t n = m.dim().size();
    std::vector<std::vector<Subspace>> per_vertex;
    for (std::size_t i = 0; i < n; ++i) {
        per_vertex.push_back(enumerate_all_subspaces(static_cast<std::size_t>(m.dim()[i]), m.field()));
    }
    std::vector<Submodule> out;
    Submodule current;
    current.spaces.resize(n, Subspace::zero(m.field(), 0));
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            if (is_submodule(m, current)) out.push_back(current);
            return;
        }
        for (const auto& s : per_vertex[i]) {
            current.spaces[i] = s;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

FpMatrix random_invertible(const PrimeField& field, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> entry(0, field.modulus() - 1);
    while (true) {
        FpMatrix g(n, n, 0);
        for (auto& x : g.data()) x = entry(rng);
        if (rref(field, g).rank == n) return g;
    }
}

Representation random_conjugate(const Representation& m, std::mt19937_64& rng) {
    const PrimeField& field = m.field();
    std::vector<FpMatrix> g, g_inv;
    for (std::size_t i = 0; i < m.dim().size(); ++i) {
        const auto n = static_cast<std::size_t>(m.dim()[i]);
        FpMatrix a = random_invertible(field, n, rng);
        // Invert via RREF of [a | I].
        FpMatrix aug(n, 2 * n, 0);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
            aug(r, n + r) = 1;
        }
        const auto red = rref(field, aug).matrix;
        FpMatrix inv(n, n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
        g.push_back(std::move(a));
        g_inv.push_back(std::move(inv));
    }
    std::vector<FpMatrix> maps;
    const Quiver& q = m.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arrow = q.arrow(a);
        maps.push_back(multiply(field, g[arrow.target], multiply(field, m.map(a), g_inv[arrow.source])));
    }
    return Representation::create(m.presentation_ptr(), field, m.dim(), std::move(maps));
}

std::size_t ext1_dimension(const Representation& m, const Representation& n) {
    const PrimeField& field = m.field();
    const Quiver& q = m.quiver();
    // Unknowns: entries of φ_i (n_i x m_i) for each vertex, row-major.
    std::vector<std::size_t> offset;
    std::size_t unknowns = 0;
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        offset.push_back(unknowns);
        unknowns += static_cast<std::size_t>(n.dim()[i] * m.dim()[i]);
    }
    std::size_t target_dim = 0;
    for (const auto& a : q.arrows()) target_dim += static_cast<std::size_t>(n.dim()[a.target] * m.dim()[a.source]);
    if (target_dim == 0) return 0;
    // Columns of δ: image of each basis vector of ⊕ Hom(m_i, n_i).
    FpMatrix delta(target_dim, unknowns, 0);
    for (std::size_t i = 0; i < q.vertex_count(); ++i) {
        const auto ni = static_cast<std::size_t>(n.dim()[i]);
        const auto mi = static_cast<std::size_t>(m.dim()[i]);
        for (std::size_t r = 0; r < ni; ++r) {
            for (std::size_t c = 0; c < mi; ++c) {
                const std::size_t col = offset[i] + r * mi + c;
                std::size_t row_base = 0;
                for (std::size_t a = 0; a < q.arrow_count(); ++a) {
                    const auto& arrow = q.arrow(a);
                    const auto rows = static_cast<std::size_t>(n.dim()[arrow.target]);
                    const auto cols = static_cast<std::size_t>(m.dim()[arrow.source]);
                    // δ(φ)_a = n_a φ_s − φ_t m_a with φ = E_{rc} at vertex i.
                    if (arrow.source == i) {
                        for (std::size_t x = 0; x < rows; ++x) {
                            auto& e = delta(row_base + x * cols + c, col);
                            e = field.add(e, n.map(a)(x, r));
                        }
                    }
                    if (arrow.target == i) {
                        for (std::size_t y = 0; y < cols; ++y) {
                            auto& e = delta(row_base + r * cols + y, col);
                            e = field.sub(e, m.map(a)(c, y));
                        }
                    }
                    row_base += rows * cols;
                }
            }
        }
    }
    return target_dim - rref(field, delta).rank;
}

long long hom_minus_ext(const Representation& m, const Representation& n) {
    return static_cast<long long>(hom_space(m, n).dim()) - static_cast<long long>(ext1_dimension(m, n));
}

} // namespace quiverstab::testing
