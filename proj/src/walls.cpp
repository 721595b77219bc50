#include "quiverstab/walls.hpp"

#include "quiverstab/errors.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/linalg.hpp"
#include "quiverstab/parallel.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace quiverstab {

namespace {

std::size_t first_nonzero(const DimensionVector& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] != 0) return k;
    }
    throw Error("walls.zero_class", "Θ_v needs a nonzero class v");
}

/// Coordinates of the functional θ ↦ θ(w) in the basis of Θ_v.
std::vector<long long> wall_form(const DimensionVector& v, const DimensionVector& w) {
    const std::size_t k = first_nonzero(v);
    std::vector<long long> f;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j == k) continue;
        f.push_back(static_cast<long long>(v[k]) * w[j] - static_cast<long long>(v[j]) * w[k]);
    }
    return f;
}

std::vector<long long> normalized(std::vector<long long> f) {
    long long g = 0;
    for (auto x : f) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) return f;
    long long sign = 1;
    for (auto x : f) {
        if (x != 0) {
            sign = x < 0 ? -1 : 1;
            break;
        }
    }
    for (auto& x : f) x = x / g * sign;
    return f;
}

bool better_representative(const DimensionVector& a, const DimensionVector& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a > b;
}

std::vector<Rational> theta_from_coordinates(const DimensionVector& v, const std::vector<Rational>& y) {
    const auto basis = theta_v_basis(v);
    std::vector<Rational> theta(v.size(), Rational(0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < v.size(); ++i) theta[i] += y[j] * basis[j][i];
    }
    return theta;
}

std::vector<Rational> integral_multiple(std::vector<Rational> theta) {
    BigInt scale = 1;
    for (const auto& t : theta) scale = lcm(scale, boost::multiprecision::denominator(t));
    BigInt g = 0;
    for (auto& t : theta) {
        t *= scale;
        g = boost::multiprecision::gcd(g, BigInt(abs(boost::multiprecision::numerator(t))));
    }
    if (g > 1) {
        for (auto& t : theta) t /= g;
    }
    return theta;
}

Rational evaluate_form(const std::vector<long long>& f, const std::vector<Rational>& y) {
    Rational s = 0;
    for (std::size_t j = 0; j < f.size(); ++j) s += y[j] * f[j];
    return s;
}

std::string constraint_key(const LinearConstraint& c) {
    std::string key;
    for (const auto& a : c.a) key += to_string(a) + ",";
    return key + ">=" + to_string(c.b);
}

/// Scales so the first nonzero coefficient has absolute value 1.
LinearConstraint normalize(LinearConstraint c) {
    for (const auto& a : c.a) {
        if (a != 0) {
            const Rational s = a < 0 ? Rational(-a) : a;
            for (auto& x : c.a) x /= s;
            c.b /= s;
            return c;
        }
    }
    return c;
}

} // namespace

std::vector<std::vector<long long>> theta_v_basis(const DimensionVector& v) {
    const std::size_t k = first_nonzero(v);
    std::vector<std::vector<long long>> basis;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j == k) continue;
        std::vector<long long> b(v.size(), 0);
        b[j] = v[k];
        b[k] -= v[j];
        basis.push_back(std::move(b));
    }
    return basis;
}

std::vector<Wall> potential_walls(const DimensionVector& v) {
    first_nonzero(v);
    std::map<std::vector<long long>, Wall> by_plane;
    std::vector<int> w(v.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < v.size()) {
            if (++w[i] <= v[i]) break;
            w[i] = 0;
            ++i;
        }
        if (i == v.size()) break;
        DimensionVector wd(w);
        if (wd == v) continue;
        const auto key = normalized(wall_form(v, wd));
        auto& wall = by_plane[key];
        wall.members.push_back(wd);
        wall.degenerate = std::all_of(key.begin(), key.end(), [](long long x) { return x == 0; });
    }
    std::vector<Wall> out;
    for (auto& [key, wall] : by_plane) {
        std::sort(wall.members.begin(), wall.members.end());
        wall.w = wall.members.front();
        for (const auto& m : wall.members) {
            if (better_representative(m, wall.w)) wall.w = m;
        }
        out.push_back(std::move(wall));
    }
    std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) { return better_representative(a.w, b.w); });
    return out;
}

std::optional<std::vector<Rational>> find_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                         std::size_t variables) {
    // stages[k] involves only variables 0..k-1.
    std::vector<std::vector<LinearConstraint>> stages(variables + 1);
    stages[variables] = constraints;
    for (std::size_t var = variables; var-- > 0;) {
        const auto& current = stages[var + 1];
        std::vector<LinearConstraint> next;
        std::set<std::string> seen;
        auto push = [&](LinearConstraint c) {
            c = normalize(std::move(c));
            if (seen.insert(constraint_key(c)).second) next.push_back(std::move(c));
        };
        std::vector<const LinearConstraint*> lower, upper;
        for (const auto& c : current) {
            if (c.a[var] > 0) {
                lower.push_back(&c);
            } else if (c.a[var] < 0) {
                upper.push_back(&c);
            } else {
                push(c);
            }
        }
        for (const auto* lo : lower) {
            for (const auto* up : upper) {
                const Rational sl = -up->a[var];
                const Rational su = lo->a[var];
                LinearConstraint combined{std::vector<Rational>(variables), sl * lo->b + su * up->b};
                for (std::size_t j = 0; j < variables; ++j) combined.a[j] = sl * lo->a[j] + su * up->a[j];
                combined.a[var] = 0;
                push(std::move(combined));
            }
        }
        stages[var] = std::move(next);
    }
    for (const auto& c : stages[0]) {
        if (c.b > 0) return std::nullopt;
    }
    std::vector<Rational> y(variables, Rational(0));
    for (std::size_t var = 0; var < variables; ++var) {
        std::optional<Rational> lo, hi;
        for (const auto& c : stages[var + 1]) {
            if (c.a[var] == 0) continue;
            Rational rest = c.b;
            for (std::size_t j = 0; j < var; ++j) rest -= c.a[j] * y[j];
            const Rational bound = rest / c.a[var];
            if (c.a[var] > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi && *lo > *hi) return std::nullopt;
        Rational value = 0;
        if (lo && hi) {
            BigInt ceil_lo = boost::multiprecision::numerator(*lo) / boost::multiprecision::denominator(*lo);
            if (Rational(ceil_lo) < *lo) ceil_lo += 1;
            value = Rational(ceil_lo) <= *hi ? Rational(ceil_lo) : (*lo + *hi) / 2;
        } else if (lo) {
            BigInt c = boost::multiprecision::numerator(*lo) / boost::multiprecision::denominator(*lo);
            value = Rational(c) < *lo ? Rational(c + 1) : Rational(c);
        } else if (hi) {
            BigInt c = boost::multiprecision::numerator(*hi) / boost::multiprecision::denominator(*hi);
            value = Rational(c) > *hi ? Rational(c - 1) : Rational(c);
        }
        y[var] = value;
    }
    return y;
}

std::vector<Chamber> chambers(const DimensionVector& v, const std::vector<Wall>& walls, const ChamberLimits& limits) {
    if (v.size() > limits.max_vertices || walls.size() > limits.max_walls) {
        throw CapExceeded("walls.chamber_cap",
                          "chamber enumeration limited to " + std::to_string(limits.max_walls) + " walls and " +
                              std::to_string(limits.max_vertices) + " vertices",
                          0);
    }
    const std::size_t vars = v.size() - 1;
    std::vector<std::size_t> active;
    std::vector<std::vector<long long>> forms;
    for (std::size_t k = 0; k < walls.size(); ++k) {
        if (walls[k].degenerate) continue;
        active.push_back(k);
        forms.push_back(wall_form(v, walls[k].w));
    }
    std::vector<Chamber> out;
    std::vector<int> signs;
    std::vector<LinearConstraint> system;
    // Depth-first over partial sign vectors, '+' before '-', pruning infeasible prefixes.
    auto recurse = [&](auto&& self) -> void {
        const auto point = find_feasible_point(system, vars);
        if (!point) return;
        if (signs.size() == active.size()) {
            Chamber c;
            c.signs.assign(walls.size(), '0');
            for (std::size_t k = 0; k < active.size(); ++k) c.signs[active[k]] = signs[k] > 0 ? '+' : '-';
            c.witness = integral_multiple(theta_from_coordinates(v, *point));
            out.push_back(std::move(c));
            return;
        }
        const auto& f = forms[signs.size()];
        for (int s : {1, -1}) {
            LinearConstraint c{std::vector<Rational>(vars), Rational(1)};
            for (std::size_t j = 0; j < vars; ++j) c.a[j] = Rational(s * f[j]);
            system.push_back(std::move(c));
            signs.push_back(s);
            self(self);
            signs.pop_back();
            system.pop_back();
        }
    };
    recurse(recurse);
    return out;
}

std::string sign_vector(std::span<const Rational> theta, const std::vector<Wall>& walls) {
    std::string s;
    for (const auto& w : walls) {
        const Rational t = pairing(theta, w.w);
        s.push_back(t > 0 ? '+' : (t < 0 ? '-' : '0'));
    }
    return s;
}

std::vector<Rational> perturbed_witness(const DimensionVector& v, const std::vector<Wall>& walls,
                                        const Chamber& chamber, std::uint64_t seed) {
    const auto basis = theta_v_basis(v);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Rational> direction(v.size(), Rational(0));
        for (const auto& b : basis) {
            const int c = dist(rng);
            for (std::size_t i = 0; i < v.size(); ++i) direction[i] += c * b[i];
        }
        if (std::all_of(direction.begin(), direction.end(), [](const Rational& x) { return x == 0; })) {
            direction = chamber.witness;
        }
        Rational t = 1;
        for (int halving = 0; halving < 64; ++halving, t /= 2) {
            std::vector<Rational> candidate(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) candidate[i] = chamber.witness[i] + t * direction[i];
            if (candidate != chamber.witness && sign_vector(candidate, walls) == chamber.signs) {
                return candidate;
            }
        }
    }
    throw InvariantViolation("walls.no_perturbation", "could not perturb a chamber witness");
}

const char* to_string(StabilityClass c) {
    switch (c) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::strictly_semistable: return "strictly_semistable";
    case StabilityClass::unstable: return "unstable";
    }
    return "unknown";
}

std::size_t Census::count(StabilityClass c) const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [c](const CensusEntry& e) { return e.verdict == c; }));
}

namespace {

struct Classified {
    std::optional<Representation> rep;
    StabilityClass verdict = StabilityClass::unstable;
    std::vector<DimensionVector> signature;
};

} // namespace

Census census(const PresentationPtr& pres, const DimensionVector& v, std::span<const Rational> theta,
              std::uint32_t p, std::size_t cap, const StabilityOptions& options, unsigned jobs) {
    const Quiver& q = pres->quiver();
    const PrimeField field(p);
    const StabilityParams params = StabilityParams::king(std::vector<Rational>(theta.begin(), theta.end()), v);
    std::size_t entries = 0;
    for (const auto& a : q.arrows()) entries += static_cast<std::size_t>(v[a.source] * v[a.target]);
    std::size_t total = 1;
    for (std::size_t k = 0; k < entries; ++k) {
        if (total > cap / p) {
            throw CapExceeded("walls.census_cap",
                              "census needs " + std::to_string(p) + "^" + std::to_string(entries) +
                                  " representations, above the cap of " + std::to_string(cap),
                              0);
        }
        total *= p;
    }
    if (total > cap) {
        throw CapExceeded("walls.census_cap", "census exceeds the cap of " + std::to_string(cap), 0);
    }
    std::vector<Classified> results(total);
    parallel_for(total, jobs, [&](std::size_t index) {
        std::vector<FpMatrix> maps;
        std::size_t code = index;
        for (const auto& a : q.arrows()) {
            FpMatrix m(static_cast<std::size_t>(v[a.target]), static_cast<std::size_t>(v[a.source]), 0);
            for (auto& x : m.data()) {
                x = static_cast<std::uint32_t>(code % p);
                code /= p;
            }
            maps.push_back(std::move(m));
        }
        try {
            Representation rep = Representation::create(pres, field, v, std::move(maps));
            const SubmoduleLattice lattice = submodule_lattice(rep, options.submodule_cap);
            Classified c;
            if (is_theta_stable(rep, params, lattice)) {
                c.verdict = StabilityClass::stable;
            } else if (is_theta_semistable(rep, params, lattice)) {
                c.verdict = StabilityClass::strictly_semistable;
            }
            c.signature = lattice.dims;
            std::sort(c.signature.begin(), c.signature.end());
            c.rep = std::move(rep);
            results[index] = std::move(c);
        } catch (const Error& e) {
            if (e.kind() != "representation.relation_violated") throw;
        }
    });
    Census out;
    std::vector<std::vector<DimensionVector>> signatures;
    for (auto& r : results) {
        if (!r.rep) {
            ++out.relation_rejected;
            continue;
        }
        ++out.representations;
        bool placed = false;
        for (std::size_t k = 0; k < out.classes.size(); ++k) {
            auto& entry = out.classes[k];
            if (entry.verdict != r.verdict || signatures[k] != r.signature) continue;
            bool iso = false;
            try {
                iso = are_isomorphic(entry.representative, *r.rep, options.iso_cap);
            } catch (const CapExceeded&) {
                out.grouping_incomplete = true;
            }
            if (iso) {
                ++entry.count;
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.classes.push_back({*r.rep, 1, r.verdict});
            signatures.push_back(r.signature);
        }
    }
    return out;
}

std::vector<WallStatus> actual_walls(const PresentationPtr& pres, const DimensionVector& v,
                                     const std::vector<Wall>& walls, std::uint32_t p, std::size_t cap,
                                     const StabilityOptions& options, unsigned jobs) {
    const std::size_t vars = v.size() - 1;
    std::vector<std::vector<long long>> forms;
    for (const auto& w : walls) forms.push_back(wall_form(v, w.w));
    const RationalField qf;
    std::vector<WallStatus> out;
    for (std::size_t k = 0; k < walls.size(); ++k) {
        if (walls[k].degenerate) {
            out.push_back(WallStatus{walls[k], false, {}, 0});
            continue;
        }
        QMatrix constraint(1, vars);
        for (std::size_t j = 0; j < vars; ++j) constraint(0, j) = forms[k][j];
        const auto kernel = vars == 0 ? std::vector<std::vector<Rational>>{} : kernel_basis(qf, constraint);
        std::optional<std::vector<Rational>> found;
        // Points on the moment curve t -> (1, t, t^2, ...) in kernel coordinates
        // meet each other wall finitely often.
        for (long long t = 1; t <= 64 && !found; ++t) {
            std::vector<Rational> y(vars, Rational(0));
            Rational power = 1;
            for (const auto& kv : kernel) {
                for (std::size_t j = 0; j < vars; ++j) y[j] += power * kv[j];
                power *= t;
            }
            bool off_others = true;
            for (std::size_t u = 0; u < walls.size(); ++u) {
                if (u == k || walls[u].degenerate) continue;
                if (evaluate_form(forms[u], y) == 0) {
                    off_others = false;
                    break;
                }
            }
            if (off_others) found = std::move(y);
        }
        if (!found) {
            throw Error("walls.no_interior_point", "no point on wall " + walls[k].w.to_string() + " avoids the others");
        }
        WallStatus status;
        status.wall = walls[k];
        status.point = integral_multiple(theta_from_coordinates(v, *found));
        const Census c = census(pres, v, status.point, p, cap, options, jobs);
        status.strictly_semistable_classes = c.count(StabilityClass::strictly_semistable);
        status.actual = status.strictly_semistable_classes > 0;
        out.push_back(std::move(status));
    }
    return out;
}

} // namespace quiverstab
