#include "quiverstab/sweep.hpp"

#include "quiverstab/families.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/parallel.hpp"
#include "quiverstab/walls.hpp"

#include <algorithm>

namespace quiverstab {

StabilityParams random_params(const DimensionVector& v, std::mt19937_64& rng) {
    const std::size_t n = v.size();
    std::vector<Rational> theta(n, Rational(0));
    if (!v.is_zero()) {
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (const auto& b : theta_v_basis(v)) {
            const int c = coeff(rng);
            for (std::size_t i = 0; i < n; ++i) theta[i] += c * b[i];
        }
    } else {
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (auto& t : theta) t = coeff(rng);
    }
    std::uniform_int_distribution<int> lam(1, 8);
    std::vector<Rational> lambda(n);
    for (auto& l : lambda) l = Rational(lam(rng), 2);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
    const Rational xi(num(rng), den(rng));
    return StabilityParams::create(std::move(theta), std::move(lambda), xi, v);
}

namespace {

StabilityParams scaled(const StabilityParams& p, const Rational& c) {
    auto theta = p.theta();
    auto lambda = p.lambda();
    for (auto& t : theta) t *= c;
    for (auto& l : lambda) l *= c;
    return StabilityParams::create(std::move(theta), std::move(lambda), p.xi(), p.v());
}

struct RepOutcome {
    std::size_t theta_sigma = 0, support = 0, hn = 0, scaling = 0;
    std::vector<std::string> failures;
};

RepOutcome check_rep(const NamedRepresentation& named, std::uint64_t seed, std::size_t draws,
                     const StabilityOptions& options) {
    RepOutcome out;
    const Representation& m = named.rep;
    if (m.dim().is_zero()) return out;
    std::mt19937_64 rng(seed);
    const SubmoduleLattice lattice = submodule_lattice(m, options.submodule_cap);
    auto fail = [&](const std::string& what, const StabilityParams& p) {
        std::string theta;
        for (const auto& t : p.theta()) theta += (theta.empty() ? "" : ",") + to_string(t);
        out.failures.push_back(named.name + ": " + what + " at theta=(" + theta + ")");
    };
    for (std::size_t k = 0; k < draws; ++k) {
        const StabilityParams p = random_params(m.dim(), rng);

        ++out.theta_sigma;
        if (is_theta_semistable(m, p, lattice) != is_sigma_semistable(m, p, lattice) ||
            is_theta_stable(m, p, lattice) != is_sigma_stable(m, p, lattice)) {
            fail("θ and σ verdicts disagree", p);
        }

        ++out.support;
        const ChargeValue z = central_charge(p, m.dim());
        const Rational c = support_constant(p);
        const Rational norm = m.dim().max_norm();
        if (z.re * z.re + z.im * z.im < c * c * norm * norm) fail("support inequality fails", p);

        ++out.hn;
        const HNFiltration hn = hn_filtration(m, p, lattice);
        DimensionVector total = DimensionVector::zero(m.dim().size());
        for (std::size_t f = 0; f < hn.length(); ++f) {
            total = total + hn.factor_dims[f];
            if (f > 0 && phase_compare(hn.factor_charges[f - 1], hn.factor_charges[f]) != std::strong_ordering::greater) {
                fail("HN phases not strictly decreasing", p);
            }
            if (!is_sigma_semistable(hn.factors[f], p, options)) fail("HN factor not semistable", p);
        }
        if (!(total == m.dim())) fail("HN factors do not add up to the module", p);

        ++out.scaling;
        std::uniform_int_distribution<int> num(1, 7), den(1, 5);
        const StabilityParams q = scaled(p, Rational(num(rng), den(rng)));
        const HNFiltration hq = hn_filtration(m, q, lattice);
        if (is_theta_semistable(m, p, lattice) != is_theta_semistable(m, q, lattice) ||
            is_sigma_semistable(m, p, lattice) != is_sigma_semistable(m, q, lattice) ||
            hn.factor_dims != hq.factor_dims) {
            fail("rescaling (θ, λ) changed a verdict", p);
        }
    }
    return out;
}

} // namespace

SweepReport run_sweep(const Description& doc, std::uint64_t seed, std::size_t draws, const StabilityOptions& options,
                      unsigned jobs) {
    SweepReport report;
    SweepCheck theta_sigma{"theta_sigma_agreement"}, support{"support_property"}, hn{"hn_structure"},
        scaling{"scaling_invariance"}, routes{"nef_route_equality"}, twist{"twist_invariance"},
        nef{"nef_nonnegative"};

    std::vector<RepOutcome> outcomes(doc.reps.size());
    parallel_for(doc.reps.size(), jobs, [&](std::size_t k) {
        outcomes[k] = check_rep(doc.reps[k], seed + 7919 * k, draws, options);
    });
    for (auto& o : outcomes) {
        theta_sigma.cases += o.theta_sigma;
        support.cases += o.support;
        hn.cases += o.hn;
        scaling.cases += o.scaling;
        for (auto& f : o.failures) {
            report.failures.push_back(f);
            if (f.find("θ and σ") != std::string::npos) ++theta_sigma.violations;
            else if (f.find("support") != std::string::npos) ++support.violations;
            else if (f.find("HN") != std::string::npos) ++hn.violations;
            else ++scaling.violations;
        }
    }

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& fam : doc.families) {
        const DimensionVector v = fam.rank_vector();
        if (v.is_zero()) continue;
        for (std::size_t k = 0; k < draws; ++k) {
            const StabilityParams p = random_params(v, rng);
            ++routes.cases;
            const NefNumber a = ell_dot_C_determinant(fam, p);
            const NefNumber b = ell_dot_C_charge(fam, p);
            if (a.value != b.value) {
                ++routes.violations;
                report.failures.push_back(fam.name() + ": ℓ·C routes differ (" + to_string(a.value) + " vs " +
                                          to_string(b.value) + ")");
            }
            ++twist.cases;
            std::uniform_int_distribution<int> shift(-3, 3);
            const int c = shift(rng);
            const FamilyOverP1 moved = twisted(fam, c);
            const auto u0 = knum_class(fam);
            const auto u1 = knum_class(moved);
            bool ok = ell_dot_C_determinant(moved, p).value == a.value && ell_dot_C_charge(moved, p).value == a.value;
            for (std::size_t i = 0; i < u0.size(); ++i) ok = ok && u1[i] == u0[i] + static_cast<long long>(c) * v[i];
            if (!ok) {
                ++twist.violations;
                report.failures.push_back(fam.name() + ": twisting by " + std::to_string(c) + " changed ℓ·C");
            }
            // Nefness only applies where every fiber is semistable.
            bool all_semistable = true;
            for (const auto& pt : points_of_p1(fam.field())) {
                if (!is_theta_semistable(fiber_at(fam, pt), p, options)) {
                    all_semistable = false;
                    break;
                }
            }
            if (all_semistable) {
                ++nef.cases;
                if (a.value < 0) {
                    ++nef.violations;
                    report.failures.push_back(fam.name() + ": ℓ·C = " + to_string(a.value) +
                                              " < 0 on a semistable family");
                }
            }
        }
    }
    report.checks = {theta_sigma, support, hn, scaling, routes, twist, nef};
    return report;
}

} // namespace quiverstab
