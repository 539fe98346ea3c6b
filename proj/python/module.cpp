// Python bindings. Documents cross the boundary as plain dicts in the CLI's JSON schema.

#include "bispan/io.hpp"
#include "bispan/linear.hpp"
#include "bispan/realization.hpp"
#include "bispan/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bispan;

namespace {

Json to_json(const py::object& o)
{
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::object to_python(const Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

Scalars scalars_from(const std::string& s)
{
    if (s == "rational")
        return Scalars::rational;
    if (s == "integer")
        return Scalars::integer;
    throw std::invalid_argument("scalars must be rational or integer, not " + s);
}

py::dict suite(const std::string& name, const py::kwargs& options)
{
    SuiteConfig c;
    for (auto [key, value] : options) {
        std::string k = key.cast<std::string>();
        if (k == "pool")
            c.pool = value.cast<std::vector<std::string>>();
        else if (k == "window")
            c.window = value.cast<std::vector<std::string>>();
        else if (k == "groups")
            c.groups = value.cast<std::vector<std::string>>();
        else if (k == "apex_bound")
            c.apex_bound = value.cast<int>();
        else if (k == "scalars")
            c.scalars = scalars_from(value.cast<std::string>());
        else if (k == "seed")
            c.seed = value.cast<std::uint64_t>();
        else if (k == "jobs")
            c.jobs = value.cast<int>();
        else if (k == "samples")
            c.samples = value.cast<int>();
        else if (k == "roundtrip_samples")
            c.roundtrip_samples = value.cast<int>();
        else if (k == "paste_every")
            c.paste_every = value.cast<int>();
        else
            throw std::invalid_argument("unknown suite option: " + k);
    }
    SuiteReport r;
    {
        py::gil_scoped_release release;
        r = run_suite(name, c);
    }
    py::dict details;
    for (const auto& [k, v] : r.details)
        details[py::str(k)] = v;
    py::dict out;
    out["suite"] = r.suite;
    out["ok"] = r.ok();
    out["cases"] = r.cases;
    out["passed"] = r.passed;
    out["failures"] = r.failures;
    out["details"] = details;
    return out;
}

py::dict groupoid_info(const std::string& name)
{
    GroupoidPtr g = resolve_groupoid(name);
    py::dict out;
    out["name"] = canonical_groupoid_name(name);
    out["objects"] = g->object_count();
    out["morphisms"] = g->morphism_count();
    out["components"] = g->component_count();
    out["summary"] = g->summary();
    return out;
}

py::dict yoshida_rank(const std::string& group, const std::vector<int>& h, const std::vector<int>& k,
                      const std::string& scalars)
{
    Group g = group_by_name(group);
    Subgroup hs = generated_subgroup(g, h), ks = generated_subgroup(g, k);
    YoshidaRankReport r = yoshida_rank_check(g, hs, ks, scalars_from(scalars));
    std::vector<std::string> factors;
    for (const auto& f : r.invariant_factors)
        factors.push_back(f.get_str());
    py::dict out;
    out["ok"] = r.ok();
    out["basis_size"] = r.basis_size;
    out["rank"] = r.rank;
    out["double_cosets"] = r.double_cosets;
    out["hom_dimension"] = r.hom_dimension;
    out["equivariant"] = r.equivariant;
    out["invariant_factors"] = factors;
    return out;
}

Json compose(const Json& outer, const Json& inner)
{
    std::string kind = outer.value("kind", "");
    if (inner.value("kind", "") != kind)
        throw std::invalid_argument("cannot compose a " + kind + " with a " + inner.value("kind", ""));
    if (kind == "span")
        return span_document(compose_spans(load_span(outer), load_span(inner)));
    if (kind == "biset")
        return biset_document(*compose_bisets(load_biset(outer), load_biset(inner)));
    if (kind == "gspan")
        return gspan_document(gspan_compose(load_gspan(outer), load_gspan(inner)));
    throw std::invalid_argument("compose takes spans, bisets or gspans, not \"" + kind + "\"");
}

// Load and re-emit, which validates the document and puts it in normal form.
Json normalize(const Json& doc)
{
    std::string kind = doc.value("kind", "");
    if (kind == "groupoid")
        return groupoid_document(*load_groupoid(doc));
    if (kind == "functor")
        return functor_document(load_functor(doc));
    if (kind == "span")
        return span_document(load_span(doc));
    if (kind == "biset")
        return biset_document(*load_biset(doc));
    if (kind == "gset")
        return gset_document(load_gset(doc));
    if (kind == "gspan")
        return gspan_document(load_gspan(doc));
    if (kind == "matrix")
        return matrix_document(load_matrix(doc));
    throw std::invalid_argument("unknown document kind \"" + kind + "\"");
}

} // namespace

PYBIND11_MODULE(_bispan, m)
{
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("suite_names", &suite_names);
    m.def("run_suite", &suite, py::arg("name"));
    m.def("default_pool", &default_pool_names);
    m.def("groupoid", &groupoid_info, py::arg("name"));
    m.def("canonical_name", &canonical_groupoid_name, py::arg("name"));
    m.def(
        "biset_basis_size",
        [](const std::string& h, const std::string& g) {
            return biset_hom_basis(resolve_groupoid(h), resolve_groupoid(g)).size();
        },
        py::arg("source"), py::arg("target"));
    m.def(
        "span_basis_size",
        [](const std::string& h, const std::string& g, int apex_bound) {
            return span_hom_basis(resolve_groupoid(h), resolve_groupoid(g), apex_bound).size();
        },
        py::arg("source"), py::arg("target"), py::arg("apex_bound") = 2);
    m.def("yoshida_rank", &yoshida_rank, py::arg("group"), py::arg("h"), py::arg("k"),
          py::arg("scalars") = "rational", "h and k are lists of generators");
    m.def(
        "compose",
        [](const py::object& outer, const py::object& inner) {
            return to_python(compose(to_json(outer), to_json(inner)));
        },
        py::arg("outer"), py::arg("inner"));
    m.def(
        "normalize", [](const py::object& doc) { return to_python(normalize(to_json(doc))); }, py::arg("doc"));
    m.def(
        "group_by_name", [](const std::string& name) { return to_python(group_to_json(group_by_name(name))); },
        py::arg("name"));
}
