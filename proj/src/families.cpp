#include "quiverstab/families.hpp"

#include "quiverstab/errors.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/parallel.hpp"

#include <numeric>

namespace quiverstab {

BivariatePoly BivariatePoly::from_coefficients(const PrimeField& field, std::span<const long long> coeffs) {
    BivariatePoly f;
    const int d = static_cast<int>(coeffs.size()) - 1;
    for (int k = 0; k <= d; ++k) {
        const auto c = field.from_int(coeffs[static_cast<std::size_t>(k)]);
        if (c != 0) f.terms[{d - k, k}] = c;
    }
    return f;
}

namespace {

std::uint32_t power(const PrimeField& field, std::uint32_t base, int e) {
    std::uint32_t r = 1;
    while (e > 0) {
        if (e & 1) r = field.mul(r, base);
        base = field.mul(base, base);
        e >>= 1;
    }
    return r;
}

using PolyMatrix = std::vector<BivariatePoly>; // row-major

PolyMatrix poly_identity(std::size_t n) {
    PolyMatrix m(n * n);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i].terms[{0, 0}] = 1;
    return m;
}

/// (rows x inner) * (inner x cols).
PolyMatrix poly_matmul(const PrimeField& field, const PolyMatrix& a, const PolyMatrix& b, std::size_t rows,
                       std::size_t inner, std::size_t cols) {
    PolyMatrix out(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < inner; ++k) {
            const auto& x = a[r * inner + k];
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < cols; ++c) {
                const auto& y = b[k * cols + c];
                if (!y.is_zero()) out[r * cols + c] = poly_add(field, out[r * cols + c], poly_mul(field, x, y));
            }
        }
    }
    return out;
}

std::string monomial_string(int i, int j) {
    std::string s;
    auto factor = [&s](const char* var, int e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += var;
        if (e > 1) s += "^" + std::to_string(e);
    };
    factor("s", i);
    factor("t", j);
    return s.empty() ? "1" : s;
}

} // namespace

std::uint32_t BivariatePoly::evaluate(const PrimeField& field, std::uint32_t s, std::uint32_t t) const {
    std::uint32_t acc = 0;
    for (const auto& [exp, c] : terms) {
        acc = field.add(acc, field.mul(c, field.mul(power(field, s, exp.first), power(field, t, exp.second))));
    }
    return acc;
}

BivariatePoly poly_add(const PrimeField& field, const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out = a;
    for (const auto& [exp, c] : b.terms) {
        auto [it, inserted] = out.terms.try_emplace(exp, c);
        if (!inserted) {
            it->second = field.add(it->second, c);
            if (it->second == 0) out.terms.erase(it);
        }
    }
    return out;
}

BivariatePoly poly_mul(const PrimeField& field, const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out;
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            BivariatePoly term;
            term.terms[{ea.first + eb.first, ea.second + eb.second}] = field.mul(ca, cb);
            out = poly_add(field, out, term);
        }
    }
    return out;
}

BivariatePoly poly_scale(const PrimeField& field, const BivariatePoly& a, std::uint32_t c) {
    BivariatePoly out;
    if (c == 0) return out;
    for (const auto& [exp, x] : a.terms) out.terms[exp] = field.mul(x, c);
    return out;
}

std::string to_string(const BivariatePoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    // Descending powers of s.
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto [i, j] = it->first;
        if (!out.empty()) out += " + ";
        if (i == 0 && j == 0) {
            out += std::to_string(it->second);
        } else if (it->second == 1) {
            out += monomial_string(i, j);
        } else {
            out += std::to_string(it->second) + "*" + monomial_string(i, j);
        }
    }
    return out;
}

FamilyOverP1 FamilyOverP1::create(std::string name, PresentationPtr pres, PrimeField field,
                                  std::vector<std::vector<int>> splitting,
                                  std::vector<std::vector<BivariatePoly>> arrows) {
    const Quiver& q = pres->quiver();
    if (splitting.size() != q.vertex_count()) {
        throw Error("families.shape", "family '" + name + "' needs a splitting type for each of the " +
                                          std::to_string(q.vertex_count()) + " vertices");
    }
    if (arrows.size() != q.arrow_count()) {
        throw Error("families.shape", "family '" + name + "' needs a matrix for each arrow");
    }
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        const auto& arrow = q.arrows()[a];
        const auto& src = splitting[arrow.source];
        const auto& tgt = splitting[arrow.target];
        if (arrows[a].size() != src.size() * tgt.size()) {
            throw Error("families.shape", "arrow " + arrow.name + " needs a " + std::to_string(tgt.size()) + "x" +
                                              std::to_string(src.size()) + " matrix");
        }
        for (std::size_t k = 0; k < tgt.size(); ++k) {
            for (std::size_t l = 0; l < src.size(); ++l) {
                auto& f = arrows[a][k * src.size() + l];
                for (auto& [exp, c] : f.terms) c %= field.modulus();
                std::erase_if(f.terms, [](const auto& term) { return term.second == 0; });
                const int expected = tgt[k] - src[l];
                for (const auto& [exp, c] : f.terms) {
                    if (exp.first + exp.second != expected || exp.first < 0 || exp.second < 0) {
                        const std::string want =
                            expected < 0 ? "must be zero" : "must be homogeneous of degree " + std::to_string(expected);
                        throw Error("families.degree", "arrow " + arrow.name + " entry (" + std::to_string(k + 1) +
                                                           "," + std::to_string(l + 1) + ") " + want + ", found " +
                                                           to_string(f));
                    }
                }
            }
        }
    }
    FamilyOverP1 fam;
    fam.name_ = std::move(name);
    fam.pres_ = std::move(pres);
    fam.field_ = field;
    fam.splitting_ = std::move(splitting);
    fam.arrows_ = std::move(arrows);

    auto rank = [&fam](std::size_t v) { return fam.splitting_[v].size(); };
    for (std::size_t r = 0; r < fam.pres_->relations().size(); ++r) {
        const Relation& rel = fam.pres_->relations()[r];
        const std::size_t rows = rank(rel.target());
        const std::size_t cols = rank(rel.source());
        PolyMatrix sum(rows * cols);
        for (const auto& term : rel.terms()) {
            PolyMatrix acc = poly_identity(cols);
            std::size_t current = cols;
            for (std::size_t a : term.path.arrows()) {
                const std::size_t next = rank(q.arrows()[a].target);
                acc = poly_matmul(field, fam.arrows_[a], acc, next, current, cols);
                current = next;
            }
            const auto c = field.from_rational(term.coefficient);
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = poly_add(field, sum[k], poly_scale(field, acc[k], c));
        }
        for (std::size_t k = 0; k < sum.size(); ++k) {
            if (sum[k].is_zero()) continue;
            const auto& [exp, c] = *sum[k].terms.begin();
            throw Error("families.relation",
                        "relation " + std::to_string(r + 1) + " (" + rel.render(q) + ") fails in entry (" +
                            std::to_string(k / cols + 1) + "," + std::to_string(k % cols + 1) + "): monomial " +
                            monomial_string(exp.first, exp.second) + " has coefficient " + std::to_string(c));
        }
    }
    return fam;
}

const BivariatePoly& FamilyOverP1::entry(std::size_t arrow, std::size_t row, std::size_t col) const {
    const auto& a = pres_->quiver().arrows().at(arrow);
    return arrows_.at(arrow).at(row * splitting_[a.source].size() + col);
}

DimensionVector FamilyOverP1::rank_vector() const {
    std::vector<int> v;
    for (const auto& s : splitting_) v.push_back(static_cast<int>(s.size()));
    return DimensionVector(std::move(v));
}

FamilyOverP1 twisted(const FamilyOverP1& fam, int c) {
    auto splitting = fam.splitting();
    for (auto& s : splitting) {
        for (auto& a : s) a += c;
    }
    std::vector<std::vector<BivariatePoly>> arrows;
    for (std::size_t a = 0; a < fam.presentation().quiver().arrow_count(); ++a) arrows.push_back(fam.arrow_entries(a));
    return FamilyOverP1::create(fam.name(), fam.presentation_ptr(), fam.field(), std::move(splitting),
                                std::move(arrows));
}

std::string P1Point::to_string() const { return "[" + std::to_string(s) + ":" + std::to_string(t) + "]"; }

std::vector<P1Point> points_of_p1(const PrimeField& field) {
    std::vector<P1Point> pts;
    for (std::uint32_t c = 0; c < field.modulus(); ++c) pts.push_back({1, c});
    pts.push_back({0, 1});
    return pts;
}

Representation fiber_at(const FamilyOverP1& fam, P1Point point) {
    const PrimeField& field = fam.field();
    point.s %= field.modulus();
    point.t %= field.modulus();
    if (point.s == 0 && point.t == 0) throw Error("families.point", "[0:0] is not a point of P^1");
    const Quiver& q = fam.presentation().quiver();
    const DimensionVector v = fam.rank_vector();
    std::vector<FpMatrix> maps;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto rows = static_cast<std::size_t>(v[q.arrows()[a].target]);
        const auto cols = static_cast<std::size_t>(v[q.arrows()[a].source]);
        FpMatrix m(rows, cols, 0);
        for (std::size_t k = 0; k < rows * cols; ++k) {
            m.data()[k] = fam.arrow_entries(a)[k].evaluate(field, point.s, point.t);
        }
        maps.push_back(std::move(m));
    }
    return Representation::create(fam.presentation_ptr(), field, v, std::move(maps));
}

namespace {

void require_class(const FamilyOverP1& fam, const StabilityParams& params) {
    if (!(fam.rank_vector() == params.v())) {
        throw Error("families.class_mismatch", "family '" + fam.name() + "' has class " +
                                                   fam.rank_vector().to_string() + " but the parameters fix v = " +
                                                   params.v().to_string());
    }
}

} // namespace

std::vector<P1Point> check_family(const FamilyOverP1& fam, const StabilityParams& params,
                                  const StabilityOptions& options) {
    require_class(fam, params);
    const auto pts = points_of_p1(fam.field());
    for (const auto& pt : pts) {
        if (!is_theta_semistable(fiber_at(fam, pt), params, options)) {
            throw Error("families.unstable_fiber",
                        "fiber of '" + fam.name() + "' at " + pt.to_string() + " is not θ-semistable");
        }
    }
    return pts;
}

std::vector<long long> det_degrees(const FamilyOverP1& fam) {
    std::vector<long long> d;
    for (const auto& s : fam.splitting()) d.push_back(std::accumulate(s.begin(), s.end(), 0LL));
    return d;
}

std::vector<long long> knum_class(const FamilyOverP1& fam) {
    auto u = det_degrees(fam);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += static_cast<long long>(fam.splitting()[i].size());
    return u;
}

Rational nef_constant(const StabilityParams& params) {
    Rational lambda_v = 0;
    for (std::size_t i = 0; i < params.vertex_count(); ++i) lambda_v += params.lambda()[i] * params.v()[i];
    if (lambda_v == 0) throw Error("families.zero_charge", "λ(v) = 0 for the zero class");
    return Rational(1) / ((params.xi() * params.xi() + 1) * lambda_v);
}

NefNumber ell_dot_C_determinant(const FamilyOverP1& fam, const StabilityParams& params) {
    require_class(fam, params);
    const auto deg = det_degrees(fam);
    Rational sum = 0;
    for (std::size_t i = 0; i < deg.size(); ++i) sum += params.theta()[i] * deg[i];
    const Rational c = nef_constant(params);
    return {c * sum, c};
}

NefNumber ell_dot_C_charge(const FamilyOverP1& fam, const StabilityParams& params) {
    require_class(fam, params);
    const auto u = knum_class(fam);
    Rational a = 0, b = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        a += (params.theta()[i] + params.xi() * params.lambda()[i]) * u[i];
        b += params.lambda()[i] * u[i];
    }
    const ChargeValue zv = central_charge(params, params.v());
    const Rational norm = zv.re * zv.re + zv.im * zv.im;
    if (norm == 0) throw Error("families.zero_charge", "Z(v) = 0");
    // (a + bi) / -(c + di) = -(a + bi)(c - di) / (c² + d²)
    const Rational im = (a * zv.im - b * zv.re) / norm;
    return {im, nef_constant(params)};
}

const char* to_string(DichotomyVerdict v) {
    switch (v) {
    case DichotomyVerdict::confirmed_positive: return "confirmed_positive";
    case DichotomyVerdict::confirmed_zero: return "confirmed_zero";
    case DichotomyVerdict::flagged: return "flagged";
    }
    return "flagged";
}

PositivityReport positivity_report(const FamilyOverP1& fam, const StabilityParams& params,
                                   const StabilityOptions& options, unsigned jobs) {
    PositivityReport report;
    report.points = check_family(fam, params, options);
    report.determinant = ell_dot_C_determinant(fam, params);
    report.charge = ell_dot_C_charge(fam, params);
    report.routes_agree = report.determinant.value == report.charge.value;
    report.nonnegative = report.determinant.value >= 0 && report.charge.value >= 0;

    const std::size_t n = report.points.size();
    std::vector<std::optional<Representation>> fibers(n);
    std::vector<std::optional<JHMultiset>> jh(n);
    parallel_for(n, jobs, [&](std::size_t k) {
        fibers[k] = fiber_at(fam, report.points[k]);
        jh[k] = jh_factors(*fibers[k], params, options);
    });
    for (std::size_t k = 0; k < n; ++k) {
        report.fibers.push_back(std::move(*fibers[k]));
        report.jh.push_back(std::move(*jh[k]));
    }
    report.equivalent.assign(n, std::vector<bool>(n, true));
    report.all_s_equivalent = true;
    report.pairwise_non_equivalent = true;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const bool eq = same_jh_class(report.jh[a], report.jh[b], options.iso_cap);
            report.equivalent[a][b] = report.equivalent[b][a] = eq;
            if (eq) {
                report.pairwise_non_equivalent = false;
            } else {
                report.all_s_equivalent = false;
            }
        }
    }
    const bool positive = report.determinant.value > 0;
    if (!report.routes_agree || !report.nonnegative) {
        report.verdict = DichotomyVerdict::flagged;
    } else if (positive && !report.all_s_equivalent) {
        report.verdict = DichotomyVerdict::confirmed_positive;
    } else if (!positive && report.all_s_equivalent) {
        report.verdict = DichotomyVerdict::confirmed_zero;
    } else {
        report.verdict = DichotomyVerdict::flagged;
    }
    return report;
}

} // namespace quiverstab
