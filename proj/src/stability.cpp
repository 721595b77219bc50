#include "quiverstab/stability.hpp"

#include "quiverstab/errors.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/walls.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>

namespace quiverstab {

namespace {

constexpr long long kSmallLimit = 1LL << 40;

template <class T>
int sign_of(const T& x) {
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

std::strong_ordering from_sign(int s) {
    if (s > 0) return std::strong_ordering::greater;
    if (s < 0) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

} // namespace

StabilityParams StabilityParams::create(std::vector<Rational> theta, std::vector<Rational> lambda, Rational xi,
                                        DimensionVector v) {
    if (theta.size() != lambda.size() || theta.size() != v.size()) {
        throw Error("stability.params", "θ, λ and v must have one entry per vertex");
    }
    if (theta.empty()) {
        throw Error("stability.params", "empty parameter vectors");
    }
    for (const auto& l : lambda) {
        if (l <= 0) {
            throw Error("stability.params", "λ must be positive on every simple (λ ∈ Λ)");
        }
    }
    if (pairing(theta, v) != 0) {
        throw Error("stability.params", "θ(v) = " + to_string(pairing(theta, v)) + " but must vanish (θ ∈ Θ_v)");
    }
    StabilityParams p;
    p.theta_ = std::move(theta);
    p.lambda_ = std::move(lambda);
    p.xi_ = std::move(xi);
    p.v_ = std::move(v);
    p.build_integer_forms();
    return p;
}

StabilityParams StabilityParams::king(std::vector<Rational> theta, DimensionVector v) {
    std::vector<Rational> lambda(theta.size(), Rational(1));
    return create(std::move(theta), std::move(lambda), 0, std::move(v));
}

void StabilityParams::build_integer_forms() {
    const std::size_t n = theta_.size();
    std::vector<Rational> re(n);
    for (std::size_t i = 0; i < n; ++i) re[i] = theta_[i] + xi_ * lambda_[i];
    BigInt scale = 1;
    auto absorb = [&](const Rational& q) { scale = lcm(scale, boost::multiprecision::denominator(q)); };
    for (std::size_t i = 0; i < n; ++i) {
        absorb(theta_[i]);
        absorb(lambda_[i]);
        absorb(re[i]);
    }
    theta_big_.resize(n);
    re_big_.resize(n);
    im_big_.resize(n);
    small_ = true;
    for (std::size_t i = 0; i < n; ++i) {
        theta_big_[i] = boost::multiprecision::numerator(theta_[i] * scale);
        re_big_[i] = boost::multiprecision::numerator(re[i] * scale);
        im_big_[i] = boost::multiprecision::numerator(lambda_[i] * scale);
        for (const BigInt* b : {&theta_big_[i], &re_big_[i], &im_big_[i]}) {
            if (abs(*b) >= kSmallLimit) small_ = false;
        }
    }
    if (small_) {
        theta_int_.resize(n);
        re_int_.resize(n);
        im_int_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            theta_int_[i] = theta_big_[i].convert_to<long long>();
            re_int_[i] = re_big_[i].convert_to<long long>();
            im_int_[i] = im_big_[i].convert_to<long long>();
        }
    }
}

int StabilityParams::theta_sign(const DimensionVector& d) const {
    if (d.size() != theta_.size()) {
        throw Error("stability.length_mismatch", "class length does not match the parameters");
    }
    if (small_) {
        long long s = 0;
        for (std::size_t i = 0; i < d.size(); ++i) s += theta_int_[i] * d[i];
        return sign_of(s);
    }
    BigInt s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) s += theta_big_[i] * d[i];
    return sign_of(s);
}

std::strong_ordering StabilityParams::compare_phase(const DimensionVector& a, const DimensionVector& b) const {
    if (a.size() != theta_.size() || b.size() != theta_.size()) {
        throw Error("stability.length_mismatch", "class length does not match the parameters");
    }
    if (small_) {
        long long re1 = 0, im1 = 0, re2 = 0, im2 = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            re1 += re_int_[i] * a[i];
            im1 += im_int_[i] * a[i];
            re2 += re_int_[i] * b[i];
            im2 += im_int_[i] * b[i];
        }
        const __int128 cross = static_cast<__int128>(re2) * im1 - static_cast<__int128>(re1) * im2;
        return from_sign(sign_of(cross));
    }
    BigInt re1 = 0, im1 = 0, re2 = 0, im2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        re1 += re_big_[i] * a[i];
        im1 += im_big_[i] * a[i];
        re2 += re_big_[i] * b[i];
        im2 += im_big_[i] * b[i];
    }
    return from_sign(sign_of(BigInt(re2 * im1 - re1 * im2)));
}

ChargeValue central_charge(const StabilityParams& params, const DimensionVector& d) {
    const Rational theta = pairing(params.theta(), d);
    const Rational lambda = pairing(params.lambda(), d);
    return {theta + params.xi() * lambda, lambda};
}

std::strong_ordering phase_compare(const ChargeValue& z1, const ChargeValue& z2) {
    for (const auto* z : {&z1, &z2}) {
        if (z->re == 0 && z->im == 0) {
            throw Error("stability.zero_charge", "phase of a zero charge is undefined");
        }
        if (z->im < 0 || (z->im == 0 && z->re > 0)) {
            throw Error("stability.phase_range", "charge outside the half-plane of phases (0, 1]");
        }
    }
    return from_sign(sign_of(Rational(z2.re * z1.im - z1.re * z2.im)));
}

namespace {

void require_class(const Representation& m, const StabilityParams& params) {
    if (m.dim() != params.v()) {
        throw Error("stability.class_mismatch",
                    "module has class " + m.dim().to_string() + " but θ is fixed for " + params.v().to_string());
    }
}

bool proper_nonzero(const DimensionVector& d, const DimensionVector& whole) {
    return !d.is_zero() && d != whole;
}

bool theta_check(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice,
                 bool strict) {
    require_class(m, params);
    for (const auto& d : lattice.dims) {
        if (!proper_nonzero(d, m.dim())) continue;
        const int s = params.theta_sign(d);
        if (s < 0 || (strict && s == 0)) return false;
    }
    return true;
}

bool sigma_check(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice,
                 bool strict) {
    if (m.dim().is_zero()) {
        throw Error("stability.zero_module", "stability of the zero module is undefined");
    }
    for (const auto& d : lattice.dims) {
        if (!proper_nonzero(d, m.dim())) continue;
        const auto c = params.compare_phase(d, m.dim());
        if (c > 0 || (strict && c == 0)) return false;
    }
    return true;
}

std::size_t find_element(const SubmoduleLattice& lattice, const DimensionVector& d) {
    for (std::size_t k = 0; k < lattice.size(); ++k) {
        if (lattice.dims[k] == d) return k;
    }
    throw InvariantViolation("stability.lattice", "lattice lacks an element of class " + d.to_string());
}

} // namespace

bool is_theta_semistable(const Representation& m, const StabilityParams& params, const StabilityOptions& options) {
    require_class(m, params);
    return theta_check(m, params, submodule_lattice(m, options.submodule_cap), false);
}

bool is_theta_semistable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice) {
    return theta_check(m, params, lattice, false);
}

bool is_theta_stable(const Representation& m, const StabilityParams& params, const StabilityOptions& options) {
    require_class(m, params);
    return theta_check(m, params, submodule_lattice(m, options.submodule_cap), true);
}

bool is_theta_stable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice) {
    return theta_check(m, params, lattice, true);
}

bool is_sigma_semistable(const Representation& m, const StabilityParams& params, const StabilityOptions& options) {
    return sigma_check(m, params, submodule_lattice(m, options.submodule_cap), false);
}

bool is_sigma_semistable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice) {
    return sigma_check(m, params, lattice, false);
}

bool is_sigma_stable(const Representation& m, const StabilityParams& params, const StabilityOptions& options) {
    return sigma_check(m, params, submodule_lattice(m, options.submodule_cap), true);
}

bool is_sigma_stable(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice) {
    return sigma_check(m, params, lattice, true);
}

HNFiltration hn_filtration(const Representation& m, const StabilityParams& params, const StabilityOptions& options) {
    return hn_filtration(m, params, submodule_lattice(m, options.submodule_cap));
}

HNFiltration hn_filtration(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice) {
    if (m.dim().is_zero()) {
        throw Error("stability.zero_module", "the zero module has no HN filtration");
    }
    HNFiltration out;
    std::size_t current = find_element(lattice, DimensionVector::zero(m.dim().size()));
    out.chain.push_back(lattice.elements[current]);
    while (lattice.dims[current] != m.dim()) {
        const DimensionVector& base = lattice.dims[current];
        std::optional<std::size_t> best;
        std::optional<std::size_t> tied;
        for (std::size_t k = 0; k < lattice.size(); ++k) {
            if (lattice.dims[k].total() <= base.total()) continue;
            if (!lattice.elements[k].contains(lattice.elements[current])) continue;
            if (!best) {
                best = k;
                tied.reset();
                continue;
            }
            const DimensionVector dk = lattice.dims[k] - base;
            const DimensionVector db = lattice.dims[*best] - base;
            const auto c = params.compare_phase(dk, db);
            if (c > 0 || (c == 0 && dk.total() > db.total())) {
                best = k;
                tied.reset();
            } else if (c == 0 && dk.total() == db.total()) {
                tied = k;
            }
        }
        if (tied) {
            throw InvariantViolation("stability.hn_tie",
                                     "two distinct maximal destabilizing submodules of class " +
                                         lattice.dims[*best].to_string() + " and " + lattice.dims[*tied].to_string());
        }
        const DimensionVector factor = lattice.dims[*best] - base;
        out.factors.push_back(subquotient(m, lattice.elements[current], lattice.elements[*best]));
        out.factor_dims.push_back(factor);
        out.factor_charges.push_back(central_charge(params, factor));
        current = *best;
        out.chain.push_back(lattice.elements[current]);
    }
    return out;
}

std::size_t JHMultiset::total_count() const {
    std::size_t s = 0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
}

DimensionVector JHMultiset::total_dim() const {
    if (entries.empty()) return {};
    DimensionVector d = DimensionVector::zero(entries.front().representative.dim().size());
    for (const auto& e : entries) {
        for (std::size_t k = 0; k < e.multiplicity; ++k) d = d + e.representative.dim();
    }
    return d;
}

JHMultiset jh_factors(const Representation& m, const StabilityParams& params, const StabilityOptions& options) {
    return jh_factors(m, params, submodule_lattice(m, options.submodule_cap), options);
}

JHMultiset jh_factors(const Representation& m, const StabilityParams& params, const SubmoduleLattice& lattice,
                      const StabilityOptions& options) {
    if (!sigma_check(m, params, lattice, false)) {
        throw Error("stability.not_semistable", "Jordan–Hölder factors need a semistable module");
    }
    std::vector<Representation> factors;
    std::size_t current = find_element(lattice, DimensionVector::zero(m.dim().size()));
    while (lattice.dims[current] != m.dim()) {
        const DimensionVector& base = lattice.dims[current];
        std::optional<std::size_t> best;
        std::string best_key;
        for (std::size_t k = 0; k < lattice.size(); ++k) {
            if (lattice.dims[k].total() <= base.total()) continue;
            if (!lattice.elements[k].contains(lattice.elements[current])) continue;
            const DimensionVector dk = lattice.dims[k] - base;
            if (params.compare_phase(dk, m.dim()) != 0) continue;
            if (best && dk.total() > (lattice.dims[*best] - base).total()) continue;
            if (best && dk.total() == (lattice.dims[*best] - base).total()) {
                std::string key = lattice.elements[k].key();
                if (key >= best_key) continue;
                best = k;
                best_key = std::move(key);
                continue;
            }
            best = k;
            best_key = lattice.elements[k].key();
        }
        if (!best) {
            throw InvariantViolation("stability.jh", "no same-phase extension found; input not semistable?");
        }
        factors.push_back(subquotient(m, lattice.elements[current], lattice.elements[*best]));
        current = *best;
    }
    JHMultiset out;
    for (auto& f : factors) {
        bool placed = false;
        for (auto& e : out.entries) {
            if (e.representative.dim() != f.dim()) continue;
            if (are_isomorphic(e.representative, f, options.iso_cap)) {
                ++e.multiplicity;
                if (f.key() < e.representative.key()) e.representative = f;
                placed = true;
                break;
            }
        }
        if (!placed) out.entries.push_back({f, 1});
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.representative.dim() != b.representative.dim()) return a.representative.dim() < b.representative.dim();
        return a.representative.key() < b.representative.key();
    });
    return out;
}

bool same_jh_class(const JHMultiset& a, const JHMultiset& b, std::size_t iso_cap) {
    if (a.entries.size() != b.entries.size()) return false;
    std::vector<bool> used(b.entries.size(), false);
    for (const auto& ea : a.entries) {
        bool matched = false;
        for (std::size_t k = 0; k < b.entries.size(); ++k) {
            const auto& eb = b.entries[k];
            if (used[k] || eb.multiplicity != ea.multiplicity) continue;
            if (eb.representative.dim() != ea.representative.dim()) continue;
            if (are_isomorphic(ea.representative, eb.representative, iso_cap)) {
                used[k] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

bool s_equivalent(const Representation& m, const Representation& n, const StabilityParams& params,
                  const StabilityOptions& options) {
    if (!m.same_algebra(n)) {
        throw Error("representation.mismatch", "representations over different algebras or primes");
    }
    if (params.compare_phase(m.dim(), n.dim()) != 0) {
        throw Error("stability.phase_mismatch", "S-equivalence compares semistables of equal phase");
    }
    const JHMultiset a = jh_factors(m, params, options);
    const JHMultiset b = jh_factors(n, params, options);
    return same_jh_class(a, b, options.iso_cap);
}

Rational support_constant(const StabilityParams& params) {
    return *std::min_element(params.lambda().begin(), params.lambda().end());
}

GenericityReport is_generic(const StabilityParams& params) {
    GenericityReport report;
    for (const auto& wall : potential_walls(params.v())) {
        if (params.theta_sign(wall.w) == 0) {
            report.generic = false;
            report.witness = wall.w;
            return report;
        }
    }
    return report;
}

} // namespace quiverstab
