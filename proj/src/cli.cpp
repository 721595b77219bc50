#include "quiverstab/cli.hpp"

#include "quiverstab/description.hpp"
#include "quiverstab/errors.hpp"
#include "quiverstab/families.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/stability.hpp"
#include "quiverstab/sweep.hpp"
#include "quiverstab/walls.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace quiverstab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFieldNote =
    "computed over the prime field F_p as a finite stand-in for an algebraically closed field";

struct Options {
    std::string command;
    std::string input;
    std::string format = "json";
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 1;
    std::size_t cap_submodules = kDefaultSubmoduleCap;
    std::size_t cap_iso = kDefaultIsoCap;
    std::size_t cap_census = kDefaultCensusCap;
    std::size_t cap_paths = kDefaultPathCap;
    bool nilpotent = false;
    std::size_t cycle_bound = 4;
    std::string rep;
    std::string rep2;
    std::string family;
    std::optional<std::string> v, theta, lambda, xi;
    std::uint32_t p = 2;
    std::size_t params_index = 0;
    bool actual = false;
    std::size_t draws = 20;

    StabilityOptions stability() const { return {cap_submodules, cap_iso}; }
};

/// QUIVERSTAB_CAPS="submodules=N,iso=N,census=N,paths=N".
void apply_env_caps(Options& o) {
    const char* env = std::getenv("QUIVERSTAB_CAPS");
    if (!env) return;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("cli.env", "QUIVERSTAB_CAPS entries look like name=N, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("cli.env", "QUIVERSTAB_CAPS value for " + key + " is not a number");
        }
        if (value == 0) throw Error("cli.env", "caps must be positive");
        if (key == "submodules") o.cap_submodules = value;
        else if (key == "iso") o.cap_iso = value;
        else if (key == "census") o.cap_census = value;
        else if (key == "paths") o.cap_paths = value;
        else throw Error("cli.env", "unknown cap '" + key + "' in QUIVERSTAB_CAPS");
    }
}

json jrat(const Rational& q) { return to_string(q); }

json jrats(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

json jdim(const DimensionVector& d) { return d.entries(); }

json jcharge(const ChargeValue& z) { return {{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }

json jmatrix(const FpMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json jrep(const Representation& m) {
    json maps = json::object();
    const Quiver& q = m.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) maps[q.arrow(a).name] = jmatrix(m.map(a));
    return {{"p", m.field().modulus()}, {"dim", jdim(m.dim())}, {"maps", std::move(maps)}};
}

json jparams(const StabilityParams& p) {
    return {{"theta", jrats(p.theta())}, {"lambda", jrats(p.lambda())}, {"xi", jrat(p.xi())}, {"v", jdim(p.v())}};
}

json jjh(const JHMultiset& jh) {
    json a = json::array();
    for (const auto& e : jh.entries) {
        a.push_back({{"dim", jdim(e.representative.dim())},
                     {"multiplicity", e.multiplicity},
                     {"representative", jrep(e.representative)}});
    }
    return a;
}

std::vector<int> parse_ints(const std::string& text, const char* what) {
    std::vector<int> out;
    for (const auto& q : parse_rational_list(text)) {
        if (boost::multiprecision::denominator(q) != 1 || q < 0 || q > 100000) {
            throw Error("cli.argument", std::string(what) + " must list nonnegative integers");
        }
        out.push_back(static_cast<int>(boost::multiprecision::numerator(q)));
    }
    return out;
}

std::vector<Rational> parse_rationals(const std::string& text, const char* what) {
    try {
        return parse_rational_list(text);
    } catch (const std::invalid_argument&) {
        throw Error("cli.argument", std::string(what) + " must be a comma separated list of rationals");
    }
}

struct Context {
    const Options& opt;
    Description doc;

    std::size_t vertex_count() const { return doc.presentation->quiver().vertex_count(); }

    const ParamsSpec* spec() const {
        return opt.params_index < doc.params.size() ? &doc.params[opt.params_index] : nullptr;
    }

    std::optional<DimensionVector> class_option() const {
        if (opt.v) {
            auto v = parse_ints(*opt.v, "--v");
            if (v.size() != vertex_count()) throw Error("cli.argument", "--v needs one entry per vertex");
            return DimensionVector(std::move(v));
        }
        if (const auto* s = spec(); s && s->v) return s->v;
        return std::nullopt;
    }

    DimensionVector require_class() const {
        auto v = class_option();
        if (!v) throw Error("cli.argument", "no class given: pass --v or add v to a params line");
        return *v;
    }

    std::vector<Rational> vector_option(const std::optional<std::string>& flag, const char* name) const {
        auto v = parse_rationals(*flag, name);
        if (v.size() != vertex_count()) throw Error("cli.argument", std::string(name) + " needs one entry per vertex");
        return v;
    }

    std::vector<Rational> theta() const {
        if (opt.theta) return vector_option(opt.theta, "--theta");
        if (const auto* s = spec()) return s->theta;
        throw Error("cli.no_params", "no θ given: pass --theta or add a params line");
    }

    StabilityParams params(const DimensionVector& default_class) const {
        const auto* s = spec();
        std::vector<Rational> lambda(vertex_count(), Rational(1));
        if (opt.lambda) lambda = vector_option(opt.lambda, "--lambda");
        else if (s && s->lambda) lambda = *s->lambda;
        Rational xi = 0;
        if (opt.xi) {
            try {
                xi = parse_rational(*opt.xi);
            } catch (const std::invalid_argument&) {
                throw Error("cli.argument", "--xi must be a rational");
            }
        } else if (s && s->xi) {
            xi = *s->xi;
        }
        return StabilityParams::create(theta(), std::move(lambda), xi, class_option().value_or(default_class));
    }

    const NamedRepresentation& rep(const std::string& name, const char* flag) const {
        if (name.empty()) {
            if (doc.reps.empty()) throw Error("cli.no_rep", "the document declares no rep");
            return doc.reps.front();
        }
        const auto* r = doc.find_rep(name);
        if (!r) throw Error("cli.no_rep", std::string("no rep named '") + name + "' (" + flag + ")");
        return *r;
    }

    const FamilyOverP1& family() const {
        if (opt.family.empty()) {
            if (doc.families.empty()) throw Error("cli.no_family", "the document declares no family");
            return doc.families.front();
        }
        const auto* f = doc.find_family(opt.family);
        if (!f) throw Error("cli.no_family", "no family named '" + opt.family + "'");
        return *f;
    }
};

struct Result {
    json body = json::object();
    ExitCode status = ExitCode::ok;
    /// Optional table used by --format csv.
    std::vector<std::vector<std::string>> table;
};

Result cmd_check(const Context& ctx) {
    const auto& pres = *ctx.doc.presentation;
    const Quiver& q = pres.quiver();
    Result r;
    json arrows = json::array();
    for (const auto& a : q.arrows()) {
        arrows.push_back({{"id", a.name}, {"source", q.vertex_id(a.source)}, {"target", q.vertex_id(a.target)}});
    }
    json relations = json::array();
    for (const auto& rel : pres.relations()) relations.push_back(rel.render(q));
    const bool acyclic = is_acyclic(q);
    json path_counts = nullptr;
    if (acyclic) {
        path_counts = json::array();
        for (std::size_t i = 0; i < q.vertex_count(); ++i) {
            path_counts.push_back(enumerate_paths(q, i, q.vertex_count(), ctx.opt.cap_paths).size());
        }
    }
    r.body["presentation"] = {{"vertices", q.vertices()},
                              {"arrows", std::move(arrows)},
                              {"relations", std::move(relations)},
                              {"acyclic", acyclic},
                              {"path_counts", std::move(path_counts)}};
    json warnings = json::array();
    for (const auto& w : ctx.doc.warnings) {
        warnings.push_back({{"line", w.line}, {"column", w.column}, {"message", w.message}});
    }
    r.body["warnings"] = std::move(warnings);
    r.body["tor"] = ctx.doc.tor ? json{{"global_dimension", ctx.doc.tor->global_dimension()}} : json(nullptr);
    json reps = json::array();
    for (const auto& [name, rep] : ctx.doc.reps) {
        reps.push_back({{"name", name},
                        {"p", rep.field().modulus()},
                        {"dim", jdim(rep.dim())},
                        {"cycles_act_as_zero", cycles_act_as_zero(rep, ctx.opt.cycle_bound, ctx.opt.nilpotent)},
                        {"cycle_bound", ctx.opt.cycle_bound},
                        {"nilpotent_variant", ctx.opt.nilpotent}});
    }
    r.body["reps"] = std::move(reps);
    json params = json::array();
    for (const auto& spec : ctx.doc.params) {
        json p = {{"theta", jrats(spec.theta)}};
        p["lambda"] = spec.lambda ? jrats(*spec.lambda) : json(nullptr);
        p["xi"] = spec.xi ? jrat(*spec.xi) : json(nullptr);
        p["v"] = spec.v ? jdim(*spec.v) : json(nullptr);
        params.push_back(std::move(p));
    }
    r.body["params"] = std::move(params);
    json families = json::array();
    for (const auto& fam : ctx.doc.families) {
        json f = {{"name", fam.name()},
                  {"p", fam.field().modulus()},
                  {"ranks", jdim(fam.rank_vector())},
                  {"det_degrees", det_degrees(fam)},
                  {"knum_class", knum_class(fam)}};
        // Fibers are checked against the first params line that fits the family's class.
        json checked = nullptr;
        for (const auto& spec : ctx.doc.params) {
            if (spec.v && !(*spec.v == fam.rank_vector())) continue;
            if (pairing(spec.theta, fam.rank_vector()) != 0) continue;
            std::vector<Rational> lambda = spec.lambda.value_or(std::vector<Rational>(ctx.vertex_count(), Rational(1)));
            const auto params_for =
                StabilityParams::create(spec.theta, std::move(lambda), spec.xi.value_or(0), fam.rank_vector());
            checked = check_family(fam, params_for, ctx.opt.stability()).size();
            break;
        }
        f["fibers_checked"] = std::move(checked);
        families.push_back(std::move(f));
    }
    r.body["families"] = std::move(families);
    return r;
}

Result cmd_euler(const Context& ctx) {
    Result r;
    const bool from_tor = ctx.doc.tor.has_value();
    const EulerMatrix e = from_tor ? euler_form_from_tor(*ctx.doc.tor) : euler_form_acyclic(*ctx.doc.presentation);
    json matrix = json::array();
    for (std::size_t i = 0; i < e.size(); ++i) {
        json row = json::array();
        std::vector<std::string> cells;
        for (std::size_t j = 0; j < e.size(); ++j) {
            row.push_back(e(i, j));
            cells.push_back(std::to_string(e(i, j)));
        }
        matrix.push_back(std::move(row));
        r.table.push_back(std::move(cells));
    }
    r.body["source"] = from_tor ? "tor" : "hereditary";
    r.body["matrix"] = std::move(matrix);
    r.body["truncated"] = e.truncated();
    r.body["convention"] =
        "E[i][j] = sum over l of (-1)^l d^l_ij; the index convention is validated against the hereditary closed form only";
    return r;
}

Result cmd_pairing(const Context& ctx) {
    Result r;
    std::optional<EulerMatrix> e;
    if (ctx.doc.tor) e = euler_form_from_tor(*ctx.doc.tor);
    const PairingReport rep = verify_perfect_pairing(ctx.doc.presentation, ctx.opt.p, e ? &*e : nullptr);
    json dims = json::array();
    for (const auto& d : rep.projective_dims) dims.push_back(jdim(d));
    r.body["p"] = ctx.opt.p;
    r.body["euler_source"] = e ? "tor" : "hereditary";
    r.body["projective_dims"] = std::move(dims);
    r.body["gram"] = rep.gram;
    r.body["passed"] = rep.passed;
    for (const auto& row : rep.gram) {
        std::vector<std::string> cells;
        for (auto x : row) cells.push_back(std::to_string(x));
        r.table.push_back(std::move(cells));
    }
    if (!rep.passed) r.status = ExitCode::invariant_violation;
    return r;
}

Result cmd_stable(const Context& ctx) {
    Result r;
    const auto& named = ctx.rep(ctx.opt.rep, "--rep");
    const Representation& m = named.rep;
    const StabilityParams params = ctx.params(m.dim());
    const SubmoduleLattice lattice = submodule_lattice(m, ctx.opt.cap_submodules);
    r.body["rep"] = named.name;
    r.body["dim"] = jdim(m.dim());
    r.body["params"] = jparams(params);
    r.body["submodule_count"] = lattice.size();
    if (m.dim() == params.v()) {
        r.body["theta"] = {{"applicable", true},
                           {"semistable", is_theta_semistable(m, params, lattice)},
                           {"stable", is_theta_stable(m, params, lattice)}};
    } else {
        r.body["theta"] = {{"applicable", false}, {"semistable", nullptr}, {"stable", nullptr}};
    }
    if (m.dim().is_zero()) {
        r.body["sigma"] = {{"semistable", nullptr}, {"stable", nullptr}};
    } else {
        r.body["sigma"] = {{"semistable", is_sigma_semistable(m, params, lattice)},
                           {"stable", is_sigma_stable(m, params, lattice)}};
    }
    r.body["charge"] = jcharge(central_charge(params, m.dim()));
    const GenericityReport g = is_generic(params);
    r.body["generic"] = {{"generic", g.generic}, {"witness", g.witness ? jdim(*g.witness) : json(nullptr)}};
    r.body["support_constant"] = jrat(support_constant(params));
    return r;
}

Result cmd_hn(const Context& ctx) {
    Result r;
    const auto& named = ctx.rep(ctx.opt.rep, "--rep");
    const StabilityParams params = ctx.params(named.rep.dim());
    const HNFiltration hn = hn_filtration(named.rep, params, ctx.opt.stability());
    json factors = json::array();
    r.table.push_back({"step", "submodule_dim", "factor_dim", "re", "im"});
    for (std::size_t k = 0; k < hn.length(); ++k) {
        factors.push_back({{"submodule_dim", jdim(hn.chain[k + 1].dim())},
                           {"dim", jdim(hn.factor_dims[k])},
                           {"charge", jcharge(hn.factor_charges[k])}});
        r.table.push_back({std::to_string(k + 1), hn.chain[k + 1].dim().to_string(), hn.factor_dims[k].to_string(),
                           to_string(hn.factor_charges[k].re), to_string(hn.factor_charges[k].im)});
    }
    r.body["rep"] = named.name;
    r.body["params"] = jparams(params);
    r.body["length"] = hn.length();
    r.body["factors"] = std::move(factors);
    return r;
}

Result cmd_jh(const Context& ctx) {
    Result r;
    const auto& named = ctx.rep(ctx.opt.rep, "--rep");
    const StabilityParams params = ctx.params(named.rep.dim());
    const JHMultiset jh = jh_factors(named.rep, params, ctx.opt.stability());
    r.body["rep"] = named.name;
    r.body["params"] = jparams(params);
    r.body["count"] = jh.total_count();
    r.body["factors"] = jjh(jh);
    r.table.push_back({"dim", "multiplicity"});
    for (const auto& e : jh.entries) {
        r.table.push_back({e.representative.dim().to_string(), std::to_string(e.multiplicity)});
    }
    return r;
}

Result cmd_sequiv(const Context& ctx) {
    Result r;
    const auto& a = ctx.rep(ctx.opt.rep, "--rep");
    if (ctx.opt.rep2.empty()) throw Error("cli.argument", "sequiv needs --rep2");
    const auto& b = ctx.rep(ctx.opt.rep2, "--rep2");
    const StabilityParams params = ctx.params(a.rep.dim());
    r.body["rep"] = a.name;
    r.body["rep2"] = b.name;
    r.body["params"] = jparams(params);
    r.body["s_equivalent"] = s_equivalent(a.rep, b.rep, params, ctx.opt.stability());
    r.body["jh"] = {{"rep", jjh(jh_factors(a.rep, params, ctx.opt.stability()))},
                    {"rep2", jjh(jh_factors(b.rep, params, ctx.opt.stability()))}};
    return r;
}

json jwall(const Wall& w) {
    json members = json::array();
    for (const auto& m : w.members) members.push_back(jdim(m));
    return {{"w", jdim(w.w)}, {"members", std::move(members)}, {"degenerate", w.degenerate}};
}

Result cmd_walls(const Context& ctx) {
    Result r;
    const DimensionVector v = ctx.require_class();
    const auto walls = potential_walls(v);
    r.body["v"] = jdim(v);
    r.body["theta_v_basis"] = theta_v_basis(v);
    json list = json::array();
    r.table.push_back({"w", "degenerate", "actual"});
    for (const auto& w : walls) list.push_back(jwall(w));
    r.body["walls"] = std::move(list);
    if (ctx.opt.actual) {
        const auto status = actual_walls(ctx.doc.presentation, v, walls, ctx.opt.p, ctx.opt.cap_census,
                                         ctx.opt.stability(), ctx.opt.jobs);
        json actual = json::array();
        for (const auto& s : status) {
            actual.push_back({{"w", jdim(s.wall.w)},
                              {"actual", s.actual},
                              {"point", jrats(s.point)},
                              {"strictly_semistable_classes", s.strictly_semistable_classes}});
            r.table.push_back({s.wall.w.to_string(), s.wall.degenerate ? "true" : "false", s.actual ? "true" : "false"});
        }
        r.body["census_p"] = ctx.opt.p;
        r.body["actual"] = std::move(actual);
        r.body["actuality_note"] = "actual means the census at a point of the wall found a strictly semistable module";
    } else {
        for (const auto& w : walls) r.table.push_back({w.w.to_string(), w.degenerate ? "true" : "false", ""});
        r.body["actual"] = nullptr;
    }
    return r;
}

Result cmd_chambers(const Context& ctx) {
    Result r;
    const DimensionVector v = ctx.require_class();
    const auto walls = potential_walls(v);
    const auto found = chambers(v, walls);
    json wl = json::array();
    for (const auto& w : walls) wl.push_back(jwall(w));
    json cl = json::array();
    for (const auto& c : found) {
        json second = jrats(perturbed_witness(v, walls, c, ctx.opt.seed));
        cl.push_back({{"signs", c.signs}, {"witness", jrats(c.witness)}, {"second_witness", std::move(second)}});
    }
    r.body["v"] = jdim(v);
    r.body["walls"] = std::move(wl);
    r.body["chamber_count"] = found.size();
    r.body["chambers"] = std::move(cl);

    const auto basis = theta_v_basis(v);
    if (basis.size() == 2) {
        // Plot data in the coordinates (y1, y2) of θ = y1 b1 + y2 b2: one
        // segment through the origin per wall, one point per chamber witness.
        r.table.push_back({"kind", "label", "x0", "y0", "x1", "y1"});
        const std::size_t k = [&] {
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) return i;
            return std::size_t{0};
        }();
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (j != k) others.push_back(j);
        for (const auto& w : walls) {
            if (w.degenerate) continue;
            const long long f1 = static_cast<long long>(v[k]) * w.w[others[0]] - static_cast<long long>(v[others[0]]) * w.w[k];
            const long long f2 = static_cast<long long>(v[k]) * w.w[others[1]] - static_cast<long long>(v[others[1]]) * w.w[k];
            r.table.push_back({"wall", w.w.to_string(), std::to_string(f2), std::to_string(-f1), std::to_string(-f2),
                               std::to_string(f1)});
        }
        for (const auto& c : found) {
            // Recover y from θ: θ_j = v_k y_j at the non-pivot vertices.
            const Rational y1 = c.witness[others[0]] / v[k];
            const Rational y2 = c.witness[others[1]] / v[k];
            r.table.push_back({"chamber", c.signs, to_string(y1), to_string(y2), to_string(y1), to_string(y2)});
        }
    } else {
        r.table.push_back({"signs", "witness"});
        for (const auto& c : found) {
            std::string w;
            for (const auto& x : c.witness) w += (w.empty() ? "" : " ") + to_string(x);
            r.table.push_back({c.signs, w});
        }
    }
    return r;
}

Result cmd_census(const Context& ctx) {
    Result r;
    const DimensionVector v = ctx.require_class();
    const auto theta = ctx.theta();
    if (pairing(theta, v) != 0) throw Error("stability.params", "θ(v) must vanish for the census class");
    const Census c = census(ctx.doc.presentation, v, theta, ctx.opt.p, ctx.opt.cap_census, ctx.opt.stability(),
                            ctx.opt.jobs);
    r.body["v"] = jdim(v);
    r.body["theta"] = jrats(theta);
    r.body["p"] = ctx.opt.p;
    r.body["representations"] = c.representations;
    r.body["relation_rejected"] = c.relation_rejected;
    r.body["grouping_incomplete"] = c.grouping_incomplete;
    r.body["counts"] = {{"stable", c.count(StabilityClass::stable)},
                        {"strictly_semistable", c.count(StabilityClass::strictly_semistable)},
                        {"unstable", c.count(StabilityClass::unstable)}};
    json classes = json::array();
    r.table.push_back({"class", "verdict", "count"});
    for (std::size_t k = 0; k < c.classes.size(); ++k) {
        const auto& e = c.classes[k];
        classes.push_back({{"verdict", to_string(e.verdict)}, {"count", e.count}, {"representative", jrep(e.representative)}});
        r.table.push_back({std::to_string(k + 1), to_string(e.verdict), std::to_string(e.count)});
    }
    r.body["classes"] = std::move(classes);
    return r;
}

Result cmd_nef(const Context& ctx) {
    Result r;
    const FamilyOverP1& fam = ctx.family();
    const StabilityParams params = ctx.params(fam.rank_vector());
    const PositivityReport rep = positivity_report(fam, params, ctx.opt.stability(), ctx.opt.jobs);
    r.body["family"] = fam.name();
    r.body["p"] = fam.field().modulus();
    r.body["params"] = jparams(params);
    r.body["det_degrees"] = det_degrees(fam);
    r.body["knum_class"] = knum_class(fam);
    r.body["c"] = jrat(rep.determinant.c);
    r.body["ell_determinant"] = jrat(rep.determinant.value);
    r.body["ell_charge"] = jrat(rep.charge.value);
    r.body["routes_agree"] = rep.routes_agree;
    r.body["nonnegative"] = rep.nonnegative;
    json points = json::array();
    r.table.push_back({"point", "jh_factor_count"});
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
        points.push_back({{"point", rep.points[k].to_string()}, {"jh", jjh(rep.jh[k])}});
        r.table.push_back({rep.points[k].to_string(), std::to_string(rep.jh[k].total_count())});
    }
    r.body["points"] = std::move(points);
    r.body["s_equivalence"] = rep.equivalent;
    r.body["all_s_equivalent"] = rep.all_s_equivalent;
    r.body["pairwise_non_equivalent"] = rep.pairwise_non_equivalent;
    r.body["dichotomy"] = to_string(rep.verdict);
    r.body["caveat"] = "general points are approximated by all points of P^1(F_p)";
    if (rep.verdict == DichotomyVerdict::flagged) r.status = ExitCode::invariant_violation;
    return r;
}

Result cmd_sweep(const Context& ctx) {
    Result r;
    const SweepReport rep = run_sweep(ctx.doc, ctx.opt.seed, ctx.opt.draws, ctx.opt.stability(), ctx.opt.jobs);
    json checks = json::array();
    r.table.push_back({"check", "cases", "violations"});
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"cases", c.cases}, {"violations", c.violations}});
        r.table.push_back({c.name, std::to_string(c.cases), std::to_string(c.violations)});
    }
    r.body["draws"] = ctx.opt.draws;
    r.body["checks"] = std::move(checks);
    r.body["failures"] = rep.failures;
    r.body["passed"] = rep.passed();
    if (!rep.passed()) r.status = ExitCode::invariant_violation;
    return r;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::vector<std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
    }
}

void write_human(const json& j, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const auto& [k, v] : j.items()) {
        const bool scalar_array =
            v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
        if (v.is_primitive()) {
            out << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        } else if (scalar_array) {
            out << pad << k << ": " << v.dump() << '\n';
        } else {
            out << pad << k << ":\n";
            if (v.is_object()) {
                write_human(v, out, indent + 1);
            } else {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (v[i].is_object()) {
                        out << pad << "  - [" << i << "]\n";
                        write_human(v[i], out, indent + 2);
                    } else {
                        out << pad << "  - " << v[i].dump() << '\n';
                    }
                }
            }
        }
    }
}

json meta(const Options& o) {
    return {{"tool", "quiverstab"}, {"command", o.command}, {"input", o.input}, {"seed", o.seed},
            {"jobs", o.jobs},       {"field_note", kFieldNote}};
}

void emit(const Options& o, json doc, const std::vector<std::vector<std::string>>& table, std::ostream& out) {
    if (o.format == "json") {
        out << doc.dump(2) << '\n';
    } else if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows = table;
        if (rows.empty()) {
            rows.push_back({"key", "value"});
            flatten(doc, "", rows);
        }
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
            out << '\n';
        }
    } else {
        write_human(doc, out, 0);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli.io", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    try {
        apply_env_caps(opt);
    } catch (const Error& e) {
        err << "error [" << e.kind() << "]: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    }

    CLI::App app{"Exact stability computations for quiver representations over prime fields", "quiverstab"};
    app.require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check", "validate a description file: presentation, reps, params and families"},
        {"euler", "Euler form on the simple basis"},
        {"pairing-report", "check chi(P_j, S_i) = delta_ij"},
        {"stable", "theta and sigma (semi)stability of a rep"},
        {"hn", "Harder-Narasimhan filtration of a rep"},
        {"jh", "Jordan-Holder factors of a semistable rep"},
        {"sequiv", "S-equivalence of two semistable reps"},
        {"walls", "potential walls in Theta_v, optionally with census-based actuality"},
        {"chambers", "chambers of the wall arrangement with interior witnesses"},
        {"census", "all reps of class v over F_p, classified and grouped by isomorphism"},
        {"nef", "l.C by both routes and the S-equivalence dichotomy for a family"},
        {"sweep", "seeded randomized invariant suites"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", opt.input, "quiver description file")->required();
        sub->add_option("--format", opt.format, "json, csv or human")
            ->check(CLI::IsMember({"json", "csv", "human"}));
        sub->add_option("--seed", opt.seed, "seed for randomized work");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--cap-submodules", opt.cap_submodules, "submodule lattice cap")->check(CLI::PositiveNumber);
        sub->add_option("--cap-iso", opt.cap_iso, "isomorphism search cap")->check(CLI::PositiveNumber);
        sub->add_option("--cap-census", opt.cap_census, "census cap")->check(CLI::PositiveNumber);
        sub->add_option("--cap-paths", opt.cap_paths, "path enumeration cap")->check(CLI::PositiveNumber);
        sub->add_flag("--nilpotent", opt.nilpotent, "cycles need only act nilpotently");
        sub->add_option("--cycle-bound", opt.cycle_bound, "longest cycle checked")->check(CLI::PositiveNumber);
        sub->add_option("--rep", opt.rep, "rep name (default: first rep)");
        sub->add_option("--rep2", opt.rep2, "second rep name");
        sub->add_option("--family", opt.family, "family name (default: first family)");
        sub->add_option("--params", opt.params_index, "index of the params line to use");
        sub->add_option("--v", opt.v, "class, e.g. 1,1");
        sub->add_option("--theta", opt.theta, "theta, e.g. -1,1");
        sub->add_option("--lambda", opt.lambda, "lambda, e.g. 1,1");
        sub->add_option("--xi", opt.xi, "xi, e.g. 1/2");
        sub->add_option("--p", opt.p, "prime for censuses and projectives");
        sub->add_flag("--actual", opt.actual, "decide wall actuality by census");
        sub->add_option("--draws", opt.draws, "parameter draws per case in sweep")->check(CLI::PositiveNumber);
        sub->callback([&opt, name = name] { opt.command = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error [cli.usage]: " << e.what() << '\n';
        return static_cast<int>(ExitCode::domain_error);
    }
    if (opt.command.empty()) {
        for (const auto* sub : app.get_subcommands()) opt.command = sub->get_name();
    }

    static const std::map<std::string, std::function<Result(const Context&)>> handlers = {
        {"check", cmd_check},   {"euler", cmd_euler},       {"pairing-report", cmd_pairing},
        {"stable", cmd_stable}, {"hn", cmd_hn},             {"jh", cmd_jh},
        {"sequiv", cmd_sequiv}, {"walls", cmd_walls},       {"chambers", cmd_chambers},
        {"census", cmd_census}, {"nef", cmd_nef},           {"sweep", cmd_sweep},
    };

    try {
        if (opt.p < 2 || !is_prime(opt.p) || opt.p >= (1U << 31)) throw Error("cli.argument", "--p must be a prime below 2^31");
        Context ctx{opt, parse_description(read_file(opt.input))};
        Result result = handlers.at(opt.command)(ctx);
        json doc = {{"meta", meta(opt)}};
        for (const auto& [k, v] : result.body.items()) doc[k] = v;
        for (const auto& w : ctx.doc.warnings) {
            err << "warning: " << opt.input << ":" << w.line << ":" << w.column << ": " << w.message << '\n';
        }
        emit(opt, std::move(doc), result.table, out);
        if (result.status == ExitCode::invariant_violation) {
            err << "invariant flagged by " << opt.command << '\n';
        }
        return static_cast<int>(result.status);
    } catch (const Error& e) {
        json error = {{"code", e.kind()}, {"message", e.what()}, {"exit_code", static_cast<int>(e.exit_code())}};
        if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
            error["line"] = pe->line();
            error["column"] = pe->column();
        }
        if (const auto* ce = dynamic_cast<const CapExceeded*>(&e)) error["partial"] = ce->partial();
        if (opt.format == "json") out << json{{"meta", meta(opt)}, {"error", std::move(error)}}.dump(2) << '\n';
        err << "error [" << e.kind() << "]: " << (opt.input.empty() ? "" : opt.input + ":") << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    }
}

} // namespace quiverstab::cli
