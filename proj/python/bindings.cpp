#include "oddtau/contfrac.hpp"
#include "oddtau/dvalues.hpp"
#include "oddtau/modforms.hpp"
#include "oddtau/pipeline.hpp"
#include "oddtau/quadfield.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace oddtau;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::int_& v) { return parse_bigint(std::string(py::str(v))); }

py::int_ to_py(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(to_string(v).c_str(), nullptr, 10));
}

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

pipeline::Config config(const py::int_& thue_bound, const py::int_& hyper_bound, bool extended_moduli,
                        unsigned threads) {
    pipeline::Config cfg;
    cfg.thue_bound = to_big(thue_bound);
    cfg.hyper_bound = to_big(hyper_bound);
    cfg.extended_moduli = extended_moduli;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "odd values of level-1 eigenform coefficients";

    m.def("supported_weights", [] {
        std::vector<int> w;
        for (int k = 12; k <= 26; k += 2) if (modforms::is_supported_weight(k)) w.push_back(k);
        return w;
    });

    m.def(
        "tau",
        [](int weight, std::size_t upto) {
            const auto s = modforms::eigenform_series(weight, upto);
            py::list out;
            for (std::size_t n = 1; n <= upto; ++n) out.append(to_py(s[n]));
            return out;
        },
        py::arg("weight"), py::arg("upto"), "[tau(1), ..., tau(upto)]");

    m.def(
        "dset",
        [](int weight, std::uint64_t ell) {
            const auto d = dvalues::dset(weight, ell);
            return py::make_tuple(d.values, d.source == dvalues::DSetSource::TableOverride ? "table" : "default");
        },
        py::arg("weight"), py::arg("ell"));

    m.def(
        "rule_out",
        [](int weight, const py::int_& value, const py::int_& thue_bound, const py::int_& hyper_bound,
           bool extended_moduli, unsigned threads) {
            const auto cfg = config(thue_bound, hyper_bound, extended_moduli, threads);
            const BigInt v = to_big(value);
            std::string text;
            {
                py::gil_scoped_release nogil;
                text = pipeline::claim_json(pipeline::rule_out(weight, v, cfg));
            }
            return loads(text);
        },
        py::arg("weight"), py::arg("value"), py::arg("thue_bound") = 10000, py::arg("hyper_bound") = 1000000,
        py::arg("extended_moduli") = true, py::arg("threads") = 0);

    m.def(
        "certify",
        [](unsigned ell, unsigned threads) {
            std::string text;
            {
                py::gil_scoped_release nogil;
                text = contfrac::report_json(contfrac::certify_prime_thue(ell, threads));
            }
            return loads(text);
        },
        py::arg("ell"), py::arg("threads") = 0, "all solutions of F_{ell-1}(X, Y) = +-ell");

    m.def(
        "theorem",
        [](int id, const py::int_& thue_bound, const py::int_& hyper_bound, bool extended_moduli, unsigned threads) {
            const auto cfg = config(thue_bound, hyper_bound, extended_moduli, threads);
            std::string text;
            {
                py::gil_scoped_release nogil;
                text = pipeline::theorem_json(pipeline::reproduce_theorem(id, cfg));
            }
            return loads(text);
        },
        py::arg("id"), py::arg("thue_bound") = 10000, py::arg("hyper_bound") = 1000000,
        py::arg("extended_moduli") = true, py::arg("threads") = 0);

    m.def(
        "verify",
        [](int weight, const py::int_& value, std::size_t upto) {
            return pipeline::verify(weight, to_big(value), upto).hits;
        },
        py::arg("weight"), py::arg("value"), py::arg("upto"), "n in (1, upto] with tau(n) = value");

    m.def(
        "solve",
        [](const std::string& kind, const py::int_& a, const py::int_& b, unsigned n, const py::int_& thue_bound,
           const py::int_& x_bound) {
            quadfield::HyperellipticInstance inst;
            if (kind == "raw") {
                inst = quadfield::HyperellipticInstance::raw(to_big(a), to_big(b), n);
            } else if (kind == "c") {
                inst = quadfield::HyperellipticInstance::c_curve(py::cast<int>(a), to_big(b));
            } else if (kind == "h") {
                inst = quadfield::HyperellipticInstance::h_curve(py::cast<int>(a), to_big(b));
            } else {
                throw std::invalid_argument("kind must be raw, c or h");
            }
            quadfield::SolveBounds bounds;
            bounds.thue_bound = to_big(thue_bound);
            bounds.x_bound = to_big(x_bound);
            std::string text;
            {
                py::gil_scoped_release nogil;
                text = quadfield::report_json(quadfield::solve(inst, bounds));
            }
            return loads(text);
        },
        py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("n") = 3, py::arg("thue_bound") = 10000,
        py::arg("x_bound") = 1000000,
        "raw: x^2 + b = a y^n; c or h: the curve for weight a and value b");
}
