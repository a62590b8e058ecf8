#include "tilescott/svg.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace tilescott {

namespace {

struct Pt {
    double x = 0, y = 0;
};

Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
Pt operator*(Pt a, double s) { return {a.x * s, a.y * s}; }

std::string num(double v) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << v;
    return out.str();
}

// boundary vertex v sits at 12 o'clock for v = 0, labels clockwise; svg y
// grows downwards so the picture matches the convention
Pt boundary_pos(int v, int n, double r) {
    double theta = M_PI / 2 - 2 * M_PI * v / n;
    return {r * std::cos(theta), -r * std::sin(theta)};
}

// iterative barycentric placement of the non-boundary vertices
std::vector<Pt> layout(const CombMap& m, int n, const SvgOptions& opt) {
    std::vector<Pt> pos(m.vertex_count());
    for (int v = 0; v < n && v < m.vertex_count(); ++v) pos[v] = boundary_pos(v, n, opt.radius);
    for (int v = n; v < m.vertex_count(); ++v)
        pos[v] = {5.0 * ((v * 37) % 11 - 5), 5.0 * ((v * 53) % 13 - 6)};
    for (int it = 0; it < opt.barycentric_iterations; ++it) {
        for (int v = n; v < m.vertex_count(); ++v) {
            if (m.degree(v) == 0) continue;
            Pt acc{0, 0};
            int k = 0;
            for (Dart d : m.rotation(v)) {
                acc = acc + pos[m.target(d)];
                ++k;
            }
            Pt next = acc * (1.0 / k);
            // loops average to the vertex itself; nudge instead of collapsing
            if (std::abs(next.x - pos[v].x) + std::abs(next.y - pos[v].y) > 1e-9) pos[v] = next;
        }
    }
    return pos;
}

// edge curves: parallel edges and loops take offset control points chosen by
// their slot among the edges with the same endpoints
struct EdgeGeom {
    Pt from, to, ctrl;
    bool loop = false;
    Pt loop_a, loop_b;  // control pair for loops
};

std::map<EdgeId, EdgeGeom> edge_geometry(const CombMap& m, const std::vector<Pt>& pos) {
    std::map<std::pair<int, int>, std::vector<EdgeId>> parallel;
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        int u = m.origin(edge_dart(e, true)), w = m.target(edge_dart(e, true));
        parallel[{std::min(u, w), std::max(u, w)}].push_back(e);
    }
    std::map<EdgeId, EdgeGeom> geom;
    for (auto& [uv, list] : parallel) {
        for (size_t k = 0; k < list.size(); ++k) {
            EdgeId e = list[k];
            EdgeGeom g;
            int u = m.origin(edge_dart(e, true)), w = m.target(edge_dart(e, true));
            g.from = pos[u];
            g.to = pos[w];
            if (u == w) {
                g.loop = true;
                double r = 12.0 + 10.0 * k;
                g.loop_a = g.from + Pt{-r, -1.6 * r};
                g.loop_b = g.from + Pt{r, -1.6 * r};
            } else {
                Pt mid = (g.from + g.to) * 0.5;
                Pt dir = g.to - g.from;
                double len = std::sqrt(dir.x * dir.x + dir.y * dir.y);
                Pt perp = len > 1e-9 ? Pt{-dir.y / len, dir.x / len} : Pt{1, 0};
                double off = (static_cast<double>(k) - (list.size() - 1) / 2.0) * 18.0;
                g.ctrl = mid + perp * off;
            }
            geom[e] = g;
        }
    }
    return geom;
}

std::string edge_path(const EdgeGeom& g, bool forward) {
    Pt a = forward ? g.from : g.to, b = forward ? g.to : g.from;
    std::ostringstream out;
    if (g.loop) {
        Pt c1 = forward ? g.loop_a : g.loop_b, c2 = forward ? g.loop_b : g.loop_a;
        out << "M " << num(a.x) << " " << num(a.y) << " C " << num(c1.x) << " " << num(c1.y) << ", "
            << num(c2.x) << " " << num(c2.y) << ", " << num(b.x) << " " << num(b.y);
    } else {
        out << "M " << num(a.x) << " " << num(a.y) << " Q " << num(g.ctrl.x) << " " << num(g.ctrl.y)
            << ", " << num(b.x) << " " << num(b.y);
    }
    return out.str();
}

std::string edge_path_segment(const EdgeGeom& g, bool forward) {
    // same as edge_path but without the leading move, for face outlines
    Pt b = forward ? g.to : g.from;
    std::ostringstream out;
    if (g.loop) {
        Pt c1 = forward ? g.loop_a : g.loop_b, c2 = forward ? g.loop_b : g.loop_a;
        out << " C " << num(c1.x) << " " << num(c1.y) << ", " << num(c2.x) << " " << num(c2.y)
            << ", " << num(b.x) << " " << num(b.y);
    } else {
        out << " Q " << num(g.ctrl.x) << " " << num(g.ctrl.y) << ", " << num(b.x) << " "
            << num(b.y);
    }
    return out.str();
}

std::string header(double r) {
    std::ostringstream out;
    double s = r * 1.3;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(-s) << " " << num(-s)
        << " " << num(2 * s) << " " << num(2 * s) << "\">\n";
    out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
           "<path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n";
    return out.str();
}

void boundary_labels(std::ostringstream& out, int n, double r) {
    for (int v = 0; v < n; ++v) {
        Pt p = boundary_pos(v, n, r * 1.12);
        out << "<text class=\"label\" x=\"" << num(p.x) << "\" y=\"" << num(p.y)
            << "\" text-anchor=\"middle\">" << (v + 1) << "</text>\n";
        Pt q = boundary_pos(v, n, r);
        out << "<circle class=\"bvertex\" cx=\"" << num(q.x) << "\" cy=\"" << num(q.y)
            << "\" r=\"2.5\"/>\n";
    }
}

// hosted floating components sit at the centroid of their host face
void place_floats(const CombMap& m, int root, std::vector<Pt>& pos) {
    for (int c = 0; c < m.component_count(); ++c) {
        if (c == root || m.host_face(c) == kNoFace) continue;
        FaceId host = m.host_face(c);
        Pt acc{0, 0};
        int k = 0;
        for (Dart d : m.face_cycle(host)) {
            acc = acc + pos[m.origin(d)];
            ++k;
        }
        Pt center = k ? acc * (1.0 / k) : Pt{0, 0};
        for (VertexId v = 0; v < m.vertex_count(); ++v)
            if (m.vertex_component(v) == c) pos[v] = center;
    }
}

}  // namespace

std::string render_svg(const BicoloredTiling& t, const SvgOptions& opt) {
    const CombMap& m = t.map;
    std::vector<Pt> pos = layout(m, t.n, opt);
    place_floats(m, m.dart_component(t.anchor()), pos);
    auto geom = edge_geometry(m, pos);

    std::ostringstream out;
    out << header(opt.radius);
    out << "<circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"" << num(opt.radius)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // black tiles first so edges draw over them
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (t.face_color[f] != TileColor::Black) continue;
        int c = m.face_component(f);
        if (m.outer_face(c) == f && m.host_face(c) != kNoFace) continue;
        std::ostringstream path;
        bool first = true;
        for (Dart d : m.face_cycle(f)) {
            const EdgeGeom& g = geom[dart_edge(d)];
            if (first) {
                Pt a = dart_is_forward(d) ? g.from : g.to;
                path << "M " << num(a.x) << " " << num(a.y);
                first = false;
            }
            path << edge_path_segment(g, dart_is_forward(d));
        }
        out << "<path class=\"tile black\" d=\"" << path.str() << " Z\" fill=\"#555\"/>\n";
    }
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        const char* cls = t.is_boundary_edge(e) ? "edge boundary" : "edge interior";
        out << "<path class=\"" << cls << "\" d=\"" << edge_path(geom[e], true)
            << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
    for (VertexId v = t.n; v < m.vertex_count(); ++v)
        out << "<circle class=\"ivertex\" cx=\"" << num(pos[v].x) << "\" cy=\"" << num(pos[v].y)
            << "\" r=\"2\"/>\n";
    boundary_labels(out, t.n, opt.radius);
    out << "</svg>\n";
    return out.str();
}

std::string render_svg(const PathDiagram& d, const SvgOptions& opt) {
    const CombMap& m = d.map;
    std::vector<Pt> pos = layout(m, d.n, opt);
    auto geom = edge_geometry(m, pos);

    std::ostringstream out;
    out << header(opt.radius);
    out << "<circle class=\"disk\" cx=\"0\" cy=\"0\" r=\"" << num(opt.radius)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // strands as single paths through their crossings, arrows at both ends
    for (int p = 0; p < d.path_count(); ++p) {
        std::ostringstream path;
        bool first = true;
        for (int s = 0; s < d.segment_count(p); ++s) {
            const EdgeGeom& g = geom[d.segment_edge(p, s)];
            if (first) {
                path << "M " << num(g.from.x) << " " << num(g.from.y);
                first = false;
            }
            path << edge_path_segment(g, true);
        }
        if (p < d.n)
            out << "<path class=\"strand\" d=\"" << path.str()
                << "\" fill=\"none\" stroke=\"#c22\" marker-start=\"url(#arrow)\" "
                   "marker-end=\"url(#arrow)\"/>\n";
        else
            out << "<path class=\"cycle\" d=\"" << path.str()
                << " Z\" fill=\"none\" stroke=\"#c22\"/>\n";
    }
    for (size_t k = 0; k < d.free_cycles.size(); ++k) {
        const auto& fc = d.free_cycles[k];
        Pt center{0, 0};
        if (fc.host_face != kNoFace) {
            int cnt = 0;
            for (Dart dt : m.face_cycle(fc.host_face)) {
                center = center + pos[m.origin(dt)];
                ++cnt;
            }
            if (cnt) center = center * (1.0 / cnt);
        }
        out << "<circle class=\"freecycle\" cx=\"" << num(center.x) << "\" cy=\""
            << num(center.y) << "\" r=\"" << num(6.0 + 4.0 * k) << "\" fill=\"none\" "
            << "stroke=\"#c22\" stroke-dasharray=\"3 2\"/>\n";
    }
    for (VertexId v = d.n; v < m.vertex_count(); ++v)
        out << "<circle class=\"crossing\" cx=\"" << num(pos[v].x) << "\" cy=\"" << num(pos[v].y)
            << "\" r=\"1.5\"/>\n";
    boundary_labels(out, d.n, opt.radius);
    out << "</svg>\n";
    return out.str();
}

}  // namespace tilescott
