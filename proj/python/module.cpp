#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ltheory/cli_support.hpp"
#include "ltheory/variational.hpp"

namespace py = pybind11;
using namespace ltheory;

namespace {

py::object opt_str(const std::optional<std::string>& s) {
    return s ? py::object(py::str(*s)) : py::none();
}

py::dict decision_dict(const Decision& d) {
    py::dict out;
    out["label"] = d.label;
    out["answer"] = d.answer;
    out["mode"] = d.exact ? "exact" : "heuristic";
    out["witness_count"] = d.witness_count;
    return out;
}

Basis parse_basis(const std::string& s) {
    return basis_from_string(s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "hyperreal arithmetic, bounded transfer, and ultrafunction levels";

    py::register_exception<Error>(m, "LTheoryError");

    py::class_<UltrafilterOracle, std::shared_ptr<UltrafilterOracle>>(m, "Oracle")
        .def(py::init([](std::uint64_t horizon) {
                 return std::make_shared<UltrafilterOracle>(horizon);
             }),
             py::arg("horizon") = UltrafilterOracle::kDefaultHorizon)
        .def_property_readonly("horizon", &UltrafilterOracle::horizon)
        .def_property_readonly("decisions_used", &UltrafilterOracle::decisions_used)
        .def("decision_log",
             [](const UltrafilterOracle& o) {
                 py::list out;
                 for (const auto& d : o.decision_log()) out.append(decision_dict(d));
                 return out;
             })
        .def("check_consistency", [](const UltrafilterOracle& o) {
            ConsistencyReport r = o.check_consistency();
            py::dict out;
            out["ok"] = r.ok;
            out["poisoned"] = r.poisoned;
            out["commitments"] = r.commitments;
            out["heuristic_decisions"] = r.heuristic_decisions.size();
            return out;
        });

    py::class_<Hyperreal>(m, "Hyperreal")
        .def_static(
            "from_rational",
            [](const Hyperreal::Ctx& ctx, const std::string& q) {
                return Hyperreal::from_rational(ctx, rational_from_string(q));
            },
            py::arg("oracle"), py::arg("value"))
        .def_static("omega", &Hyperreal::omega)
        .def_property_readonly("label", &Hyperreal::label)
        .def("__add__", [](const Hyperreal& a, const Hyperreal& b) { return a + b; })
        .def("__sub__", [](const Hyperreal& a, const Hyperreal& b) { return a - b; })
        .def("__mul__", [](const Hyperreal& a, const Hyperreal& b) { return a * b; })
        .def("__truediv__", [](const Hyperreal& a, const Hyperreal& b) { return a / b; })
        .def("__neg__", [](const Hyperreal& a) { return -a; })
        .def("inv", &Hyperreal::inv)
        .def("abs", &Hyperreal::abs)
        .def("pow", &Hyperreal::pow)
        .def_static("eq", &Hyperreal::eq)
        .def_static("lt", &Hyperreal::lt)
        .def("classify",
             [](const Hyperreal& x) {
                 ClassifyResult c = x.classify();
                 return py::make_tuple(to_string(c.kind), c.heuristic);
             })
        .def("standard_part", [](const Hyperreal& x) {
            auto st = x.standard_part();
            return st ? py::object(py::str(to_string(*st))) : py::none();
        });

    m.def(
        "evaluate",
        [](const std::string& expr, const Hyperreal::Ctx& ctx) {
            EvalOutcome r = evaluate_expression(expr, ctx);
            py::dict out;
            out["value_label"] = r.value_label;
            out["classification"] = opt_str(r.classification);
            out["heuristic"] = r.heuristic;
            out["standard_part"] = opt_str(r.standard_part);
            if (r.boolean) out["boolean"] = *r.boolean;
            out["oracle_decisions_used"] = r.oracle_decisions_used;
            return out;
        },
        py::arg("expr"), py::arg("oracle"));

    m.def(
        "transfer_check",
        [](const std::string& document, const Hyperreal::Ctx& ctx) {
            TransferDoc doc = parse_transfer_document(document, ctx);
            py::list out;
            for (const auto& s : doc.sentences) {
                Assignment args;
                auto f = parse_formula(s, doc.sets, doc.values, &args);
                out.append(py::make_tuple(s, transfer_eval(*f, args, ctx)));
            }
            return out;
        },
        py::arg("document"), py::arg("oracle"));

    m.def(
        "project_coeffs",
        [](const std::string& basis, std::size_t elements, const std::string& f) {
            return project(parse_scalar_field(f), make_level(elements, parse_basis(basis))).coeffs;
        },
        py::arg("basis"), py::arg("m"), py::arg("f"));

    m.def(
        "derivative_coeffs",
        [](const std::string& basis, std::size_t elements, const std::vector<double>& coeffs) {
            Ultrafunction u(make_level(elements, parse_basis(basis)), coeffs);
            return generalized_derivative(u).coeffs;
        },
        py::arg("basis"), py::arg("m"), py::arg("coeffs"));

    m.def(
        "inner_product",
        [](const std::string& basis, std::size_t elements, const std::vector<double>& u,
           const std::vector<double>& v) {
            LevelPtr lv = make_level(elements, parse_basis(basis));
            return inner_product(Ultrafunction(lv, u), Ultrafunction(lv, v));
        },
        py::arg("basis"), py::arg("m"), py::arg("u"), py::arg("v"));

    m.def(
        "j0_value",
        [](std::size_t elements, const std::vector<double>& coeffs) {
            return j0_value(Ultrafunction(make_level(elements, Basis::Hat), coeffs));
        },
        py::arg("m"), py::arg("coeffs"));

    m.def(
        "sweep",
        [](const std::vector<std::size_t>& elements, unsigned starts, std::uint64_t seed) {
            MinimizeConfig cfg;
            cfg.random_starts = starts;
            cfg.seed = seed;
            NetResult net = minimize_net(elements, cfg);
            CertificationReport cert = certify_infinitesimal(net);
            py::list levels;
            for (const auto& lm : net.levels) {
                py::dict d;
                d["m"] = lm.u_star.level->m();
                d["h"] = lm.u_star.level->h();
                d["j_value"] = lm.j_value;
                d["sup_norm"] = lm.u_star.sup_norm();
                d["grad_norm"] = lm.grad_norm;
                d["iterations"] = lm.iterations;
                d["starts_used"] = lm.starts_used;
                d["converged"] = lm.converged;
                levels.append(d);
            }
            py::dict out;
            out["levels"] = levels;
            out["order_j"] = net.order_j;
            out["order_sup"] = net.order_sup;
            out["certificate"] = cert.pass ? "PASS" : "FAIL";
            return out;
        },
        py::arg("elements"), py::arg("starts") = 6, py::arg("seed") = 0x5EED);
}
