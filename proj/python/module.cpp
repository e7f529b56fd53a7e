#include "leleec/cli_io.hpp"
#include "leleec/decomposer.hpp"
#include "leleec/error.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

namespace py = pybind11;
using namespace leleec;

namespace {

using RectTuple = std::array<Coord, 4>;

std::vector<Feature> to_features(const std::vector<std::vector<RectTuple>>& shapes) {
    std::vector<Feature> out;
    out.reserve(shapes.size());
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        Feature f;
        f.id = static_cast<int>(i);
        for (const auto& r : shapes[i]) f.shape.rects.push_back(Rect::of(r[0], r[1], r[2], r[3]));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<std::vector<RectTuple>> from_features(const std::vector<Feature>& features) {
    std::vector<std::vector<RectTuple>> out;
    for (const auto& f : features) {
        auto& shape = out.emplace_back();
        for (const auto& r : f.shape.rects) shape.push_back({r.lo.x, r.lo.y, r.hi.x, r.hi.y});
    }
    return out;
}

RectTuple tuple_of(const Rect& r) { return {r.lo.x, r.lo.y, r.hi.x, r.hi.y}; }

/// A finished decomposition in the shape the result file uses.
struct PyResult {
    ResultFile file;
};

std::optional<Seconds> seconds(std::optional<double> s) {
    if (!s) return std::nullopt;
    return Seconds(*s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact two-mask layout decomposition with end-cuts";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<OverlappingInput>(m, "OverlappingInput", validation.ptr());
    py::register_exception<CostMismatch>(m, "CostMismatch", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_static("from_rules", &Config::from_rules, py::arg("w_min"), py::arg("s_min"))
        .def_readwrite("w_min", &Config::w_min)
        .def_readwrite("s_min", &Config::s_min)
        .def_readwrite("dis_m", &Config::dis_m)
        .def_readwrite("dis_c", &Config::dis_c)
        .def_readwrite("w_th", &Config::w_th)
        .def_readwrite("merge_gap", &Config::merge_gap)
        .def_readwrite("enable_stitch", &Config::enable_stitch)
        .def_readwrite("enable_preselect", &Config::enable_preselect)
        .def_readwrite("enable_bridges", &Config::enable_bridges)
        .def_property(
            "alpha_text", [](const Config& c) { return format_rational(c.alpha); },
            [](Config& c, const std::string& text) { c.alpha = parse_rational(text); })
        .def("validate", &Config::validate)
        .def("__eq__", [](const Config& a, const Config& b) { return a == b; });

    py::class_<PyResult>(m, "Result")
        .def_property_readonly("cost_text", [](const PyResult& r) { return format_rational(r.file.cost); })
        .def_property_readonly("colors", [](const PyResult& r) {
            std::vector<int> masks;
            for (int c : r.file.colors) masks.push_back(c + 1);
            return masks;
        })
        .def_property_readonly("vertex_features", [](const PyResult& r) {
            std::vector<int> out;
            for (const auto& v : r.file.vertices) out.push_back(v.feature);
            return out;
        })
        .def_property_readonly("cuts", [](const PyResult& r) {
            py::list out;
            for (const auto& c : r.file.cuts)
                out.append(py::dict(py::arg("id") = c.id, py::arg("between") = py::make_tuple(c.u, c.v),
                                    py::arg("kind") = to_string(c.kind), py::arg("rect") = tuple_of(c.rect)));
            return out;
        })
        .def_property_readonly("trim_cuts", [](const PyResult& r) {
            std::vector<RectTuple> out;
            for (const auto& t : r.file.trim_cuts) out.push_back(tuple_of(t));
            return out;
        })
        .def_property_readonly("conflicts", [](const PyResult& r) { return r.file.conflicts; })
        .def_property_readonly("stitches", [](const PyResult& r) {
            py::list out;
            for (const auto& s : r.file.stitches)
                out.append(py::dict(py::arg("feature") = s.feature,
                                    py::arg("axis") = s.axis == Axis::horizontal ? "horizontal" : "vertical",
                                    py::arg("at") = s.at, py::arg("between") = py::make_tuple(s.u, s.v)));
            return out;
        })
        .def_property_readonly("stats", [](const PyResult& r) {
            const auto& s = r.file.stats;
            return py::dict(py::arg("components") = s.components, py::arg("subproblems") = s.subproblems,
                            py::arg("bridges_cut") = s.bridges_cut, py::arg("preselected") = s.preselected,
                            py::arg("max_variables") = s.max_variables, py::arg("nodes_explored") = s.nodes_explored,
                            py::arg("proven_optimal") = s.proven_optimal);
        })
        .def("to_json", [](const PyResult& r) { return emit_result(r.file); })
        .def("to_svg", [](const PyResult& r) { return emit_svg(r.file); });

    m.def(
        "decompose",
        [](const std::vector<std::vector<RectTuple>>& shapes, const Config& cfg, bool monolithic,
           std::optional<double> time_limit, int threads) {
            const auto features = to_features(shapes);
            DecomposeOptions options;
            options.monolithic = monolithic;
            options.time_limit = seconds(time_limit);
            options.threads = threads;
            Decomposition d;
            {
                py::gil_scoped_release release;
                d = decompose(features, cfg, options);
            }
            return PyResult{make_result_file(d, cfg)};
        },
        py::arg("features"), py::arg("config"), py::arg("monolithic") = false, py::arg("time_limit") = py::none(),
        py::arg("threads") = 1);

    m.def(
        "baseline",
        [](const std::vector<std::vector<RectTuple>>& shapes, const Config& cfg, std::optional<double> time_limit) {
            const auto features = to_features(shapes);
            BaselineDecomposition b;
            {
                py::gil_scoped_release release;
                b = decompose_lelele(features, cfg, seconds(time_limit));
            }
            std::vector<std::pair<int, int>> pairs;
            for (int e : b.result.conflicts) pairs.emplace_back(b.layout.conflict_edges[e].u, b.layout.conflict_edges[e].v);
            return py::dict(py::arg("cost_text") = format_rational(b.result.cost), py::arg("colors") = b.result.colors,
                            py::arg("conflicts") = pairs, py::arg("proven_optimal") = b.proven_optimal);
        },
        py::arg("features"), py::arg("config"), py::arg("time_limit") = py::none());

    m.def(
        "parse_layout",
        [](const std::string& text) {
            const LayoutFile f = parse_layout_text(text);
            return py::make_tuple(f.config, from_features(f.features));
        },
        py::arg("text"));
    m.def(
        "emit_layout",
        [](const std::vector<std::vector<RectTuple>>& shapes, const Config& cfg) {
            LayoutFile f;
            f.config = cfg;
            f.features = to_features(shapes);
            return emit_layout(f);
        },
        py::arg("features"), py::arg("config"));
    m.def(
        "generate",
        [](const std::string& kind, int n, std::uint64_t seed, const Config& cfg) {
            return from_features(gen_synthetic(kind, n, seed, cfg).features);
        },
        py::arg("kind"), py::arg("n"), py::arg("seed") = 1, py::arg("config") = Config::from_rules(10, 10));
    m.def(
        "verify",
        [](const std::string& layout_text, const std::string& result_text) {
            return verify_result(parse_layout_text(layout_text), parse_result_text(result_text));
        },
        py::arg("layout_text"), py::arg("result_text"));
}
