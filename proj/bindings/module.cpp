#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tilescott/explore.hpp"
#include "tilescott/io.hpp"
#include "tilescott/svg.hpp"

namespace py = pybind11;
using namespace tilescott;

namespace {

Document parse(const std::string& text) { return parse_document(text); }

BicoloredTiling as_tiling(const std::string& text) {
    Document doc = parse(text);
    if (!std::holds_alternative<BicoloredTiling>(doc))
        throw std::invalid_argument("expected a tiling document");
    return std::get<BicoloredTiling>(doc);
}

PathDiagram as_diagram(const std::string& text) {
    Document doc = parse(text);
    if (!std::holds_alternative<PathDiagram>(doc))
        throw std::invalid_argument("expected a diagram document");
    return std::get<PathDiagram>(doc);
}

PathDiagram any_diagram(const std::string& text) {
    Document doc = parse(text);
    if (std::holds_alternative<PathDiagram>(doc)) return std::get<PathDiagram>(doc);
    return scott_map(std::get<BicoloredTiling>(doc));
}

}  // namespace

PYBIND11_MODULE(_tilescott, m) {
    m.doc() = "bicolored tilings, alternating path diagrams and the Scott map";

    m.def("validate", [](const std::string& text) -> std::string {
        try {
            parse(text);
            return "ok";
        } catch (const std::exception& e) {
            return e.what();
        }
    }, py::arg("document"), "Parse and validate; returns 'ok' or the failure report.");

    m.def("scott", [](const std::string& text) { return serialize_document(scott_map(as_tiling(text))); },
          py::arg("tiling"), "Scott image of a tiling document, as a diagram document.");
    m.def("inv_scott",
          [](const std::string& text) { return serialize_document(inverse_scott(as_diagram(text))); },
          py::arg("diagram"), "Tiling whose Scott image is the given diagram.");
    m.def("reduce", [](const std::string& text) { return serialize_document(reduce(as_diagram(text))); },
          py::arg("diagram"), "Untwist oriented lenses until none remain.");
    m.def("normalize",
          [](const std::string& text) { return serialize_document(normalize_black(as_tiling(text))); },
          py::arg("tiling"), "Merge black tiles adjacent along common edges.");

    m.def("perm", [](const std::string& text) {
        DecoratedPermutation dp = decorated_permutation(any_diagram(text));
        std::vector<int> pi;
        for (int v : dp.pi) pi.push_back(v + 1);
        std::map<int, int> colors;
        for (auto& [k, v] : dp.color) colors[k + 1] = v;
        return py::make_tuple(pi, colors);
    }, py::arg("document"), "Decorated permutation (1-based targets, fixed-point colors).");

    m.def("tiling_type", [](const std::string& text) {
        TilingType ty = tiling_type(as_tiling(text));
        return py::make_tuple(ty.k, ty.n, ty.vertices, ty.white_tiles);
    }, py::arg("tiling"), "Type (k, n, V, F) with k = V - F.");

    m.def("labels", [](const std::string& text) {
        LabelReport rep = region_labels(as_diagram(text));
        return py::make_tuple(rep.uniform, rep.k);
    }, py::arg("diagram"), "Label uniformity and the label count k.");

    m.def("is_postnikov", [](const std::string& text) {
        PostnikovWitness w = is_postnikov(as_diagram(text));
        return py::make_tuple(w.is_postnikov, w.reason);
    }, py::arg("diagram"));

    m.def("flip", [](const std::string& text, int edge, const std::string& mode) {
        BicoloredTiling t = as_tiling(text);
        FlipMode fm = mode == "general" ? FlipMode::General : FlipMode::Primitive;
        return serialize_document(flip_edge(t, t.n + edge - 1, fm));
    }, py::arg("tiling"), py::arg("edge"), py::arg("mode") = "primitive",
       "Flip interior edge (1-based document numbering).");

    m.def("exchange", [](const std::string& text, int face_rank) {
        PathDiagram d = as_diagram(text);
        std::vector<int> rank;
        canonical_code(d.map, d.anchor(), CodeDecorations{}, nullptr, &rank);
        for (FaceId f = 0; f < d.map.face_count(); ++f)
            if (rank[f] == face_rank) return serialize_document(geometric_exchange(d, f));
        throw std::invalid_argument("no face with that rank");
    }, py::arg("diagram"), py::arg("face"), "Geometric exchange at the face with this rank.");

    m.def("flip_class_size", [](const std::string& text, int limit, const std::string& mode) {
        FlipLimits lim;
        lim.max_nodes = limit;
        FlipMode fm = mode == "general" ? FlipMode::General : FlipMode::Primitive;
        FlipClassReport rep = flip_class(as_tiling(text), lim, fm);
        return py::make_tuple(rep.size, rep.frontier_truncated);
    }, py::arg("tiling"), py::arg("limit") = 10000, py::arg("mode") = "primitive");

    m.def("equivalent", [](const std::string& a, const std::string& b) {
        Document da = parse(a), db = parse(b);
        if (std::holds_alternative<PathDiagram>(da))
            return diagrams_equivalent(std::get<PathDiagram>(da), std::get<PathDiagram>(db));
        return tilings_equivalent(std::get<BicoloredTiling>(da), std::get<BicoloredTiling>(db))
            .equivalent;
    }, py::arg("a"), py::arg("b"), "Equivalence of two documents of the same kind.");

    m.def("canonical_code", [](const std::string& text) {
        Document doc = parse(text);
        if (std::holds_alternative<BicoloredTiling>(doc))
            return tiling_code(std::get<BicoloredTiling>(doc));
        return diagram_code(std::get<PathDiagram>(doc));
    }, py::arg("document"), "Boundary-anchored canonical code of the decorated map.");

    m.def("render_svg", [](const std::string& text) {
        Document doc = parse(text);
        if (std::holds_alternative<BicoloredTiling>(doc))
            return render_svg(std::get<BicoloredTiling>(doc));
        return render_svg(std::get<PathDiagram>(doc));
    }, py::arg("document"));

    m.def("random_tiling", [](uint64_t seed, int min_n, int max_n, int ops) {
        return serialize_document(random_tiling(seed, min_n, max_n, ops));
    }, py::arg("seed"), py::arg("min_n") = 4, py::arg("max_n") = 8, py::arg("ops") = 6);

    m.def("white_polygon", [](int n) { return serialize_document(white_polygon(n)); }, py::arg("n"));
    m.def("antigon", [](int n) { return serialize_document(antigon(n)); }, py::arg("n"));
    m.def("fan_triangulation", [](int n) { return serialize_document(fan_triangulation(n)); },
          py::arg("n"));
    m.def("all_black_disk", [](int n) { return serialize_document(all_black_disk(n)); }, py::arg("n"));
    m.def("rhombic_hexagon", [](bool odd) { return serialize_document(rhombic_hexagon(odd)); },
          py::arg("odd_spokes") = true);
}
