#include "quiverstab/cli.hpp"
#include "quiverstab/description.hpp"
#include "quiverstab/errors.hpp"
#include "quiverstab/families.hpp"
#include "quiverstab/knum.hpp"
#include "quiverstab/stability.hpp"
#include "quiverstab/walls.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace quiverstab;

namespace {

py::object fraction(const Rational& q) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(to_string(q));
}

py::list fractions(const std::vector<Rational>& qs) {
    py::list out;
    for (const auto& q : qs) out.append(fraction(q));
    return out;
}

/// Accepts int, Fraction or strings such as "-1/2".
Rational rational_of(const py::handle& obj) { return parse_rational(py::str(obj).cast<std::string>()); }

std::vector<Rational> rationals_of(const py::sequence& seq) {
    std::vector<Rational> out;
    for (const auto& x : seq) out.push_back(rational_of(x));
    return out;
}

std::vector<int> ints_of(const DimensionVector& d) { return d.entries(); }

StabilityParams make_params(const py::sequence& theta, const std::optional<py::sequence>& lambda,
                            const py::object& xi, const DimensionVector& v) {
    auto t = rationals_of(theta);
    std::vector<Rational> l = lambda ? rationals_of(*lambda) : std::vector<Rational>(t.size(), Rational(1));
    return StabilityParams::create(std::move(t), std::move(l), xi.is_none() ? Rational(0) : rational_of(xi), v);
}

const Representation& rep_of(const Description& doc, const std::string& name) {
    const auto* r = doc.find_rep(name);
    if (!r) throw Error("cli.unknown_rep", "no representation named '" + name + "'");
    return r->rep;
}

const FamilyOverP1& family_of(const Description& doc, const std::string& name) {
    const auto* f = doc.find_family(name);
    if (!f) throw Error("cli.unknown_family", "no family named '" + name + "'");
    return *f;
}

py::dict charge_dict(const ChargeValue& z) {
    py::dict d;
    d["re"] = fraction(z.re);
    d["im"] = fraction(z.im);
    return d;
}

py::list jh_list(const JHMultiset& jh) {
    py::list out;
    for (const auto& e : jh.entries) {
        py::dict d;
        d["dim"] = ints_of(e.representative.dim());
        d["multiplicity"] = e.multiplicity;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact stability computations for representations of quivers with relations";

    static py::exception<Error> error(m, "QuiverstabError", PyExc_ValueError);
    static py::exception<CapExceeded> cap_error(m, "CapExceededError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CapExceeded& e) {
            PyErr_SetString(cap_error.ptr(), (e.kind() + ": " + e.what()).c_str());
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), (e.kind() + ": " + e.what()).c_str());
        }
    });

    py::class_<Description>(m, "Document")
        .def_static("parse", [](const std::string& text) { return parse_description(text); }, py::arg("text"))
        .def_static(
            "load",
            [](const std::string& path) {
                std::ifstream in(path);
                if (!in) throw Error("cli.io", "cannot read '" + path + "'");
                std::ostringstream ss;
                ss << in.rdbuf();
                return parse_description(ss.str());
            },
            py::arg("path"))
        .def_property_readonly("vertices",
                               [](const Description& d) {
                                   std::vector<std::string> out;
                                   const Quiver& q = d.presentation->quiver();
                                   for (std::size_t i = 0; i < q.vertex_count(); ++i) out.push_back(q.vertex_id(i));
                                   return out;
                               })
        .def_property_readonly("arrows",
                               [](const Description& d) {
                                   std::vector<std::string> out;
                                   for (const auto& a : d.presentation->quiver().arrows()) out.push_back(a.name);
                                   return out;
                               })
        .def_property_readonly("reps",
                               [](const Description& d) {
                                   std::vector<std::string> out;
                                   for (const auto& r : d.reps) out.push_back(r.name);
                                   return out;
                               })
        .def_property_readonly("families",
                               [](const Description& d) {
                                   std::vector<std::string> out;
                                   for (const auto& f : d.families) out.push_back(f.name());
                                   return out;
                               })
        .def("rep_dim", [](const Description& d, const std::string& name) { return ints_of(rep_of(d, name).dim()); })
        .def("render", [](const Description& d) { return render_description(d); })
        .def("euler_form", [](const Description& d) {
            const auto e = d.tor ? euler_form_from_tor(*d.tor) : euler_form_acyclic(*d.presentation);
            std::vector<std::vector<long long>> rows(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = 0; j < e.size(); ++j) rows[i].push_back(e(i, j));
            return rows;
        });

    m.def(
        "central_charge",
        [](const py::sequence& theta, const py::sequence& lambda, const py::object& xi, const std::vector<int>& d) {
            const DimensionVector dv(d);
            const auto l = rationals_of(lambda);
            for (const auto& x : l) {
                if (x <= 0) throw Error("stability.params", "lambda entries must be positive");
            }
            const Rational im = pairing(l, dv);
            return charge_dict({pairing(rationals_of(theta), dv) + rational_of(xi) * im, im});
        },
        py::arg("theta"), py::arg("lambda_"), py::arg("xi"), py::arg("d"));

    m.def(
        "stability",
        [](const Description& doc, const std::string& rep, const py::sequence& theta,
           const std::optional<py::sequence>& lambda, const py::object& xi) {
            const auto& r = rep_of(doc, rep);
            const auto params = make_params(theta, lambda, xi, r.dim());
            const auto lattice = submodule_lattice(r);
            py::dict d;
            d["theta_semistable"] = is_theta_semistable(r, params, lattice);
            d["theta_stable"] = is_theta_stable(r, params, lattice);
            d["sigma_semistable"] = is_sigma_semistable(r, params, lattice);
            d["sigma_stable"] = is_sigma_stable(r, params, lattice);
            d["submodules"] = lattice.size();
            d["charge"] = charge_dict(central_charge(params, r.dim()));
            return d;
        },
        py::arg("doc"), py::arg("rep"), py::arg("theta"), py::arg("lambda_") = py::none(), py::arg("xi") = py::none());

    m.def(
        "hn_filtration",
        [](const Description& doc, const std::string& rep, const py::sequence& theta,
           const std::optional<py::sequence>& lambda, const py::object& xi) {
            const auto& r = rep_of(doc, rep);
            const auto hn = hn_filtration(r, make_params(theta, lambda, xi, r.dim()));
            py::list out;
            for (std::size_t i = 0; i < hn.length(); ++i) {
                py::dict f;
                f["dim"] = ints_of(hn.factor_dims[i]);
                f["charge"] = charge_dict(hn.factor_charges[i]);
                out.append(f);
            }
            return out;
        },
        py::arg("doc"), py::arg("rep"), py::arg("theta"), py::arg("lambda_") = py::none(), py::arg("xi") = py::none());

    m.def(
        "jh_factors",
        [](const Description& doc, const std::string& rep, const py::sequence& theta,
           const std::optional<py::sequence>& lambda, const py::object& xi) {
            const auto& r = rep_of(doc, rep);
            return jh_list(jh_factors(r, make_params(theta, lambda, xi, r.dim())));
        },
        py::arg("doc"), py::arg("rep"), py::arg("theta"), py::arg("lambda_") = py::none(), py::arg("xi") = py::none());

    m.def(
        "s_equivalent",
        [](const Description& doc, const std::string& a, const std::string& b, const py::sequence& theta) {
            const auto& ra = rep_of(doc, a);
            return s_equivalent(ra, rep_of(doc, b), make_params(theta, std::nullopt, py::none(), ra.dim()));
        },
        py::arg("doc"), py::arg("a"), py::arg("b"), py::arg("theta"));

    m.def(
        "potential_walls",
        [](const std::vector<int>& v) {
            std::vector<std::vector<int>> out;
            for (const auto& w : potential_walls(DimensionVector(v))) out.push_back(w.w.entries());
            return out;
        },
        py::arg("v"));

    m.def(
        "chambers",
        [](const std::vector<int>& v) {
            const DimensionVector dv(v);
            py::list out;
            for (const auto& c : chambers(dv, potential_walls(dv))) {
                py::dict d;
                d["signs"] = c.signs;
                d["witness"] = fractions(c.witness);
                out.append(d);
            }
            return out;
        },
        py::arg("v"));

    m.def(
        "census",
        [](const Description& doc, const std::vector<int>& v, const py::sequence& theta, std::uint32_t p,
           std::size_t cap) {
            const auto c = census(doc.presentation, DimensionVector(v), rationals_of(theta), p, cap);
            py::dict d;
            d["representations"] = c.representations;
            d["stable"] = c.count(StabilityClass::stable);
            d["strictly_semistable"] = c.count(StabilityClass::strictly_semistable);
            d["unstable"] = c.count(StabilityClass::unstable);
            return d;
        },
        py::arg("doc"), py::arg("v"), py::arg("theta"), py::arg("p") = 2, py::arg("cap") = kDefaultCensusCap);

    m.def(
        "nef",
        [](const Description& doc, const std::string& family, const py::sequence& theta,
           const std::optional<py::sequence>& lambda, const py::object& xi) {
            const auto& fam = family_of(doc, family);
            const auto report = positivity_report(fam, make_params(theta, lambda, xi, fam.rank_vector()));
            py::dict d;
            d["ell_determinant"] = fraction(report.determinant.value);
            d["ell_charge"] = fraction(report.charge.value);
            d["c"] = fraction(report.determinant.c);
            d["all_s_equivalent"] = report.all_s_equivalent;
            d["pairwise_non_equivalent"] = report.pairwise_non_equivalent;
            d["dichotomy"] = std::string(to_string(report.verdict));
            return d;
        },
        py::arg("doc"), py::arg("family"), py::arg("theta"), py::arg("lambda_") = py::none(),
        py::arg("xi") = py::none());

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a quiverstab command line and returns (exit code, stdout, stderr).");
}
