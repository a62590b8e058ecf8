#include "tilescott/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tilescott {

FaceId BicoloredTiling::region_root(FaceId f) const {
    while (true) {
        int c = map.face_component(f);
        if (map.outer_face(c) != f || map.host_face(c) == kNoFace) return f;
        f = map.host_face(c);
    }
}

namespace {

// ---------------------------------------------------------------- surgery --

// Rotation tokens refer either to a surviving dart of the old map or to a
// dart of an edge added by the surgery.
struct Token {
    Dart old_dart = kNoDart;
    int added = -1;
    bool fwd = true;

    static Token old_(Dart d) { return Token{d, -1, true}; }
    static Token new_(int idx, bool forward) { return Token{kNoDart, idx, forward}; }
    bool is_old() const { return old_dart != kNoDart; }
};

struct RebuildSpec {
    int new_vertex_count = 0;
    std::vector<int> vertex_map;  // old vertex -> new id, -1 = deleted
    std::vector<char> removed_edge;
    std::vector<std::pair<VertexId, VertexId>> added_edges;  // new vertex ids
    std::map<VertexId, std::vector<Token>> rotations;        // new vertex -> tokens
    std::vector<std::pair<Token, TileColor>> color_hints;
    std::optional<TileColor> fallback_color;
};

RebuildSpec identity_spec(const BicoloredTiling& t) {
    RebuildSpec s;
    s.new_vertex_count = t.map.vertex_count();
    s.vertex_map.resize(t.map.vertex_count());
    for (int v = 0; v < t.map.vertex_count(); ++v) s.vertex_map[v] = v;
    s.removed_edge.assign(t.map.edge_count(), 0);
    return s;
}

BicoloredTiling rebuild(const BicoloredTiling& t, const RebuildSpec& spec) {
    const CombMap& old = t.map;

    // edge renumbering: surviving edges keep their relative order (boundary
    // edges are never removed, so ids 0..n-1 are stable), added edges follow
    std::vector<EdgeId> edge_map(old.edge_count(), -1);
    int kept = 0;
    for (EdgeId e = 0; e < old.edge_count(); ++e)
        if (!spec.removed_edge[e]) edge_map[e] = kept++;
    const int added_base = kept;
    const int new_edge_count = kept + static_cast<int>(spec.added_edges.size());

    auto old_dart_new = [&](Dart d) -> Dart {
        EdgeId e = edge_map[dart_edge(d)];
        return e == -1 ? kNoDart : 2 * e + (d & 1);
    };
    auto resolve = [&](const Token& tok) -> Dart {
        if (tok.is_old()) return old_dart_new(tok.old_dart);
        return 2 * (added_base + tok.added) + (tok.fwd ? 0 : 1);
    };

    std::vector<std::vector<Dart>> rotations(spec.new_vertex_count);
    std::vector<char> explicit_rot(spec.new_vertex_count, 0);
    for (const auto& [v, tokens] : spec.rotations) {
        explicit_rot[v] = 1;
        for (const Token& tok : tokens) {
            Dart d = resolve(tok);
            if (d != kNoDart) rotations[v].push_back(d);
        }
    }
    for (VertexId v = 0; v < old.vertex_count(); ++v) {
        int nv = spec.vertex_map[v];
        if (nv == -1 || explicit_rot[nv]) continue;
        for (Dart d : old.rotation(v)) {
            Dart nd = old_dart_new(d);
            if (nd != kNoDart) rotations[nv].push_back(nd);
        }
    }

    BicoloredTiling result;
    result.n = t.n;
    result.map = CombMap::build(spec.new_vertex_count, new_edge_count, rotations);

    // outer faces and containment, re-anchored through surviving darts
    CombMap& nm = result.map;
    int root = nm.dart_component(edge_dart(0, true));
    nm.set_outer_face(root, nm.face_of(edge_dart(0, true)));
    int old_root = old.dart_component(edge_dart(0, true));
    for (int c = 0; c < old.component_count(); ++c) {
        if (c == old_root) continue;
        auto survivor = [&](FaceId f) -> Dart {
            for (Dart d : old.face_cycle(f)) {
                Dart nd = old_dart_new(d);
                if (nd != kNoDart) return nd;
            }
            throw MapError("DanglingContainment", "face lost all darts in surgery");
        };
        FaceId old_outer = old.outer_face(c);
        if (old_outer == kNoFace) continue;
        Dart od = survivor(old_outer);
        int nc = nm.dart_component(od);
        if (nc == root) continue;  // merged into the boundary component
        nm.set_outer_face(nc, nm.face_of(od));
        if (old.host_face(c) != kNoFace) nm.set_host_face(nc, nm.face_of(survivor(old.host_face(c))));
    }

    // colors: hints first, then transfer through surviving darts
    result.face_color.assign(nm.face_count(), TileColor::Outer);
    std::vector<char> colored(nm.face_count(), 0);
    for (int c = 0; c < nm.component_count(); ++c)
        if (nm.outer_face(c) != kNoFace && nm.host_face(c) == kNoFace && c == root)
            colored[nm.outer_face(root)] = 1;
    for (const auto& [tok, color] : spec.color_hints) {
        Dart d = resolve(tok);
        if (d == kNoDart) continue;
        FaceId f = nm.face_of(d);
        if (!colored[f]) {
            result.face_color[f] = color;
            colored[f] = 1;
        }
    }
    // reverse translation for color transfer
    std::vector<Dart> new_dart_old(2 * new_edge_count, kNoDart);
    for (EdgeId e = 0; e < old.edge_count(); ++e) {
        if (edge_map[e] == -1) continue;
        new_dart_old[2 * edge_map[e]] = 2 * e;
        new_dart_old[2 * edge_map[e] + 1] = 2 * e + 1;
    }
    for (FaceId f = 0; f < nm.face_count(); ++f) {
        if (colored[f]) continue;
        for (Dart d : nm.face_cycle(f)) {
            Dart od = new_dart_old[d];
            if (od != kNoDart) {
                result.face_color[f] = t.face_color[old.face_of(od)];
                colored[f] = 1;
                break;
            }
        }
        if (!colored[f]) {
            if (!spec.fallback_color)
                throw MapError("UncoloredTile", "face has no color source after surgery");
            result.face_color[f] = *spec.fallback_color;
            colored[f] = 1;
        }
    }
    return result;
}

std::vector<Token> tokens_of_rotation(const CombMap& m, VertexId v) {
    std::vector<Token> out;
    for (Dart d : m.rotation(v)) out.push_back(Token::old_(d));
    return out;
}

void insert_after(std::vector<Token>& rot, Dart anchor, Token tok) {
    for (size_t i = 0; i < rot.size(); ++i)
        if (rot[i].is_old() && rot[i].old_dart == anchor) {
            rot.insert(rot.begin() + i + 1, tok);
            return;
        }
    throw MapError("PatternNotFound", "anchor dart not in rotation");
}

}  // namespace

// ---------------------------------------------------------------- builders --

static BicoloredTiling finish_disk(int n, int edge_count, std::vector<std::vector<Dart>> rotations,
                                   std::vector<std::pair<Dart, TileColor>> hints) {
    BicoloredTiling t;
    t.n = n;
    t.map = CombMap::build(static_cast<int>(rotations.size()), edge_count, std::move(rotations));
    t.map.set_outer_face(t.map.dart_component(edge_dart(0, true)), t.map.face_of(edge_dart(0, true)));
    t.face_color.assign(t.map.face_count(), TileColor::White);
    t.face_color[t.map.face_of(edge_dart(0, true))] = TileColor::Outer;
    for (auto& [d, c] : hints) t.face_color[t.map.face_of(d)] = c;
    return t;
}

BicoloredTiling white_polygon(int n) {
    std::vector<std::vector<Dart>> rot(n);
    for (int v = 0; v < n; ++v)
        rot[v] = {edge_dart(v, true), edge_dart((v + n - 1) % n, false)};
    return finish_disk(n, n, std::move(rot), {});
}

BicoloredTiling all_black_disk(int n) {
    std::vector<std::vector<Dart>> rot(n);
    for (int v = 0; v < n; ++v)
        rot[v] = {edge_dart(v, true), edge_dart((v + n - 1) % n, false)};
    return finish_disk(n, n, std::move(rot), {{edge_dart(0, false), TileColor::Black}});
}

BicoloredTiling fan_triangulation(int n) {
    // diagonals from vertex 0 to 2..n-2
    std::vector<std::vector<Dart>> rot(n);
    int e = n;
    std::vector<Dart> fan;  // diagonal darts at vertex 0, targets descending
    std::map<int, Dart> diag_at;
    for (int k = 2; k <= n - 2; ++k) {
        diag_at[k] = edge_dart(e, false);  // edge e = (0, k): reverse dart sits at k
        ++e;
    }
    for (int v = 0; v < n; ++v) {
        rot[v] = {edge_dart(v, true), edge_dart((v + n - 1) % n, false)};
        if (v == 0) {
            for (int k = n - 2; k >= 2; --k) rot[v].push_back(alpha(diag_at[k]));
        } else if (v >= 2 && v <= n - 2) {
            rot[v].push_back(diag_at[v]);
        }
    }
    return finish_disk(n, e, std::move(rot), {});
}

BicoloredTiling antigon(int n) {
    // hub vertex n; edges n+2i = p_i, n+2i+1 = q_i joining hub and i (forward
    // dart at the boundary vertex)
    std::vector<std::vector<Dart>> rot(n + 1);
    for (int v = 0; v < n; ++v) {
        rot[v] = {edge_dart(v, true), edge_dart((v + n - 1) % n, false), edge_dart(n + 2 * v, true),
                  edge_dart(n + 2 * v + 1, true)};
    }
    std::vector<Dart>& hub = rot[n];
    for (int i = 0; i < n; ++i) {
        int v = (n - i) % n;  // 0, n-1, n-2, ... counterclockwise around the hub
        hub.push_back(edge_dart(n + 2 * v + 1, false));  // q_v
        hub.push_back(edge_dart(n + 2 * v, false));      // p_v
    }
    std::vector<std::pair<Dart, TileColor>> hints;
    for (int v = 0; v < n; ++v) {
        hints.push_back({edge_dart(n + 2 * v + 1, false), TileColor::White});  // rim 2-gon
        hints.push_back({edge_dart(n + 2 * v, false), TileColor::Black});      // wedge before p_v
    }
    return finish_disk(n, 3 * n, std::move(rot), std::move(hints));
}

BicoloredTiling rhombic_hexagon(bool odd_spokes) {
    const int n = 6;
    int first = odd_spokes ? 1 : 0;
    std::vector<int> spoke_vertex = {first, first + 2, first + 4};
    std::vector<std::vector<Dart>> rot(n + 1);
    for (int v = 0; v < n; ++v) rot[v] = {edge_dart(v, true), edge_dart((v + n - 1) % n, false)};
    for (int j = 0; j < 3; ++j) rot[spoke_vertex[j]].push_back(edge_dart(n + j, true));
    // counterclockwise around the hub = decreasing boundary index
    rot[n] = {edge_dart(n + 0, false), edge_dart(n + 2, false), edge_dart(n + 1, false)};
    return finish_disk(n, n + 3, std::move(rot), {});
}

BicoloredTiling build_tiling(const TilingSpec& spec) {
    const int n = spec.n;
    const int vcount = n + spec.internal_vertices;
    const int ecount = n + static_cast<int>(spec.interior_edges.size());
    std::vector<std::vector<Dart>> rot(vcount);
    for (int v = 0; v < n && v < vcount; ++v)
        rot[v] = {edge_dart(v, true), edge_dart((v + n - 1) % n, false)};
    for (int v = 0; v < vcount; ++v) {
        if (v < static_cast<int>(spec.interior_rotations.size()))
            for (Dart d : spec.interior_rotations[v]) rot[v].push_back(d);
    }

    BicoloredTiling t;
    t.n = n;
    t.map = CombMap::build(vcount, ecount, std::move(rot));
    int root = t.map.dart_component(edge_dart(0, true));
    t.map.set_outer_face(root, t.map.face_of(edge_dart(0, true)));

    // floating components in first-edge order; edgeless components are left
    // for validation to flag as isolated vertices
    std::vector<int> float_comps;
    std::vector<EdgeId> first_edge(t.map.component_count(), -1);
    for (EdgeId e = 0; e < ecount; ++e) {
        int c = t.map.dart_component(edge_dart(e, true));
        if (first_edge[c] == -1) first_edge[c] = e;
    }
    for (int c = 0; c < t.map.component_count(); ++c)
        if (c != root && first_edge[c] != -1) float_comps.push_back(c);
    std::sort(float_comps.begin(), float_comps.end(),
              [&](int a, int b) { return first_edge[a] < first_edge[b]; });
    if (float_comps.size() != spec.embeddings.size())
        throw MapError("DanglingContainment", "embedding count differs from floating component count");
    for (size_t i = 0; i < float_comps.size(); ++i) {
        int c = float_comps[i];
        t.map.set_outer_face(c, t.map.face_of(edge_dart(first_edge[c], false)));
        t.map.set_host_face(c, t.map.face_of(spec.embeddings[i]));
    }

    t.face_color.assign(t.map.face_count(), TileColor::White);
    for (int c = 0; c < t.map.component_count(); ++c)
        if (c == root) t.face_color[t.map.outer_face(c)] = TileColor::Outer;
    for (auto& [d, color] : spec.color_hints) t.face_color[t.map.face_of(d)] = color;
    // outer faces of floats take their host's color
    for (int c = 0; c < t.map.component_count(); ++c)
        if (c != root && t.map.host_face(c) != kNoFace)
            t.face_color[t.map.outer_face(c)] = t.face_color[t.region_root(t.map.host_face(c))];
    return t;
}

// -------------------------------------------------------------- validation --

ValidationReport validate_tiling(const BicoloredTiling& t) {
    ValidationReport report = t.map.validate();
    const CombMap& m = t.map;

    if (t.n < 1 || m.vertex_count() < t.n || m.edge_count() < t.n) {
        report.add("BadBoundaryCycle", "missing boundary vertices or edges");
        return report;
    }
    for (int v = 0; v < t.n; ++v) {
        EdgeId e = v;
        if (m.origin(edge_dart(e, true)) != v || m.target(edge_dart(e, true)) != (v + 1) % t.n)
            report.add("BadBoundaryCycle", "boundary edge " + std::to_string(e) + " misattached");
    }
    int root = m.dart_component(edge_dart(0, true));
    FaceId outer = m.outer_face(root);
    if (outer != kNoFace) {
        Dart d = edge_dart(0, true);
        for (int i = 0; i < t.n; ++i) {
            if (dart_edge(d) != i || !dart_is_forward(d) || m.face_of(d) != outer) {
                report.add("BadBoundaryCycle", "outer face is not the boundary cycle");
                break;
            }
            d = m.next_in_face(d);
        }
        if (static_cast<int>(m.face_cycle(outer).size()) != t.n)
            report.add("BadBoundaryCycle", "outer face has extra darts");
    }

    for (VertexId v = 0; v < m.vertex_count(); ++v)
        if (m.degree(v) == 0) report.add("IsolatedVertex", "vertex " + std::to_string(v));

    if (static_cast<int>(t.face_color.size()) != m.face_count()) {
        report.add("UncoloredTile", "color table size mismatch");
        return report;
    }
    for (FaceId f = 0; f < m.face_count(); ++f) {
        bool is_root_outer = (m.face_component(f) == root && f == outer);
        if (is_root_outer) {
            if (t.face_color[f] != TileColor::Outer)
                report.add("UncoloredTile", "outer face carries a tile color");
            continue;
        }
        int c = m.face_component(f);
        bool is_float_outer = (m.outer_face(c) == f && c != root);
        if (is_float_outer) {
            if (m.host_face(c) != kNoFace &&
                t.face_color[f] != t.face_color[t.region_root(m.host_face(c))])
                report.add("HostColorMismatch", "floating component outer face color");
            continue;
        }
        if (t.face_color[f] == TileColor::Outer)
            report.add("UncoloredTile", "inner face " + std::to_string(f) + " uncolored");
        if (t.face_color[f] == TileColor::White && m.face_cycle(f).size() == 1)
            report.add("WhiteOneGon", "face " + std::to_string(f));
    }

    // floating components inside white tiles have no strand rule
    for (int c = 0; c < m.component_count(); ++c) {
        if (c == root || m.host_face(c) == kNoFace) continue;
        if (t.face_color[t.region_root(m.host_face(c))] == TileColor::White)
            report.add("WhiteHostedComponent", "component " + std::to_string(c));
    }
    return report;
}

// --------------------------------------------------------- normalize_black --

BicoloredTiling normalize_black(const BicoloredTiling& t) {
    BicoloredTiling cur = t;
    bool changed = true;
    while (changed) {
        changed = false;
        const CombMap& m = cur.map;
        for (EdgeId e = cur.n; e < m.edge_count(); ++e) {
            Dart d = edge_dart(e, true);
            FaceId f1 = m.face_of(d), f2 = m.face_of(alpha(d));
            if (f1 == f2) continue;
            if (cur.region_color(f1) != TileColor::Black || cur.region_color(f2) != TileColor::Black)
                continue;
            VertexId u = m.origin(d), w = m.target(d);
            int du = m.degree(u) - (u == w ? 2 : 1);
            int dw = m.degree(w) - (u == w ? 2 : 1);
            if (du == 0 || dw == 0) continue;  // would strand a vertex

            RebuildSpec spec = identity_spec(cur);
            spec.removed_edge[e] = 1;
            cur = rebuild(cur, spec);
            changed = true;
            break;
        }
    }
    return cur;
}

// -------------------------------------------------------------- type ------

TilingType tiling_type(const BicoloredTiling& t) {
    BicoloredTiling nb = normalize_black(t);
    TilingType ty;
    ty.n = nb.n;
    ty.vertices = nb.map.vertex_count();
    for (FaceId f = 0; f < nb.map.face_count(); ++f)
        if (nb.face_color[f] == TileColor::White) ++ty.white_tiles;
    ty.k = ty.vertices - ty.white_tiles;
    return ty;
}

// ------------------------------------------------------------- hourglass --

static BicoloredTiling hourglass_add(const BicoloredTiling& t, const HourglassSite& site) {
    const CombMap& m = t.map;
    FaceId p = site.tile;
    if (p < 0 || p >= m.face_count() || m.is_outer(p))
        throw TilingError("PatternNotFound", "site tile is not an inner face");
    // insertion into a black tile would change V - F even after merging, so
    // it cannot generate the equivalence; only white tiles are accepted
    if (t.face_color[p] != TileColor::White)
        throw TilingError("PatternNotFound", "site tile is not white");
    if (m.face_cycle(p).size() < 2) throw TilingError("TileTooSmall", "tile has fewer than two edges");
    Dart di = site.side_i, dj = site.side_j;
    if (m.face_of(di) != p || m.face_of(dj) != p)
        throw TilingError("PatternNotFound", "side darts not on the tile");
    if (dart_edge(di) == dart_edge(dj))
        throw TilingError("PatternNotFound", "sides must be distinct edges");

    RebuildSpec spec = identity_spec(t);
    VertexId x = spec.new_vertex_count++;
    // added edges: 0: (origin(di), x), 1: (target(di), x), 2: (origin(dj), x), 3: (target(dj), x)
    spec.added_edges = {{m.origin(di), x}, {m.target(di), x}, {m.origin(dj), x}, {m.target(dj), x}};

    std::map<VertexId, std::vector<Token>> rot;
    auto rot_of = [&](VertexId v) -> std::vector<Token>& {
        if (!rot.count(v)) rot[v] = tokens_of_rotation(m, v);
        return rot[v];
    };
    // arm at the origin goes just after the side dart, arm at the target just
    // before the reversed side dart (= just after in ccw order means the arm
    // lands inside the tile's corner)
    insert_after(rot_of(m.origin(di)), di, Token::new_(0, true));
    {
        auto& r = rot_of(m.target(di));
        // insert before alpha(di): find and insert at that position
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i].is_old() && r[i].old_dart == alpha(di)) {
                r.insert(r.begin() + i, Token::new_(1, true));
                break;
            }
    }
    insert_after(rot_of(m.origin(dj)), dj, Token::new_(2, true));
    {
        auto& r = rot_of(m.target(dj));
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i].is_old() && r[i].old_dart == alpha(dj)) {
                r.insert(r.begin() + i, Token::new_(3, true));
                break;
            }
    }
    rot[x] = {Token::new_(0, false), Token::new_(1, false), Token::new_(2, false),
              Token::new_(3, false)};
    spec.rotations = std::move(rot);
    spec.color_hints = {{Token::new_(1, true), TileColor::Black},
                        {Token::new_(3, true), TileColor::Black}};
    // a remainder wedge between adjacent sides may consist of new darts only
    spec.fallback_color = t.face_color[p];
    return rebuild(t, spec);
}

namespace {

struct TriangleArm {
    Dart base = kNoDart;  // dart of the triangle cycle along the base edge
    bool ok = false;
};

// The wedge face at corner (d -> sigma(d)) of an internal vertex, checked to
// be a black triangle x-u, u-w, w-x.
TriangleArm wedge_triangle(const BicoloredTiling& t, Dart d, Dart next) {
    TriangleArm arm;
    const CombMap& m = t.map;
    FaceId f = m.face_of(d);
    if (t.region_color(f) != TileColor::Black) return arm;
    const auto& cyc = m.face_cycle(f);
    if (cyc.size() != 3) return arm;
    Dart b = m.next_in_face(d);
    if (m.next_in_face(b) != alpha(next)) return arm;
    arm.base = b;
    arm.ok = true;
    return arm;
}

}  // namespace

static BicoloredTiling hourglass_remove(const BicoloredTiling& t, VertexId x) {
    const CombMap& m = t.map;
    if (x < t.n || x >= m.vertex_count()) throw TilingError("PatternNotFound", "apex must be internal");
    const auto& rot = m.rotation(x);

    // degree-4 apex with two opposite black wedges. A wedge is either a
    // pristine black triangle on a base edge, or the base has been merged
    // into a larger black tile; in the latter case removal re-inserts the
    // base edge, undoing the merge together with the hourglass.
    if (rot.size() == 4) {
        std::set<EdgeId> edges;
        bool loops = false;
        for (Dart d : rot) {
            edges.insert(dart_edge(d));
            if (m.target(d) == x) loops = true;
        }
        if (edges.size() == 4 && !loops) {
            for (int off = 0; off < 2; ++off) {
                Dart p = rot[off], q = rot[off + 1], r = rot[(off + 2) % 4], s = rot[(off + 3) % 4];
                if (t.region_color(m.face_of(p)) != TileColor::Black) continue;
                if (t.region_color(m.face_of(r)) != TileColor::Black) continue;
                TriangleArm a1 = wedge_triangle(t, p, q);
                TriangleArm a2 = wedge_triangle(t, r, s);
                if (a1.ok && a2.ok && dart_edge(a1.base) == dart_edge(a2.base)) continue;
                FaceId rem1 = m.face_of(q), rem2 = m.face_of(s);
                if (rem1 == rem2) continue;  // no hourglass addition leaves one wedge
                TileColor c1 = t.region_color(rem1), c2 = t.region_color(rem2);
                if (c1 != TileColor::White || c2 != TileColor::White) continue;

                RebuildSpec spec = identity_spec(t);
                spec.vertex_map[x] = -1;
                for (int v = x + 1; v < m.vertex_count(); ++v) spec.vertex_map[v] -= 1;
                spec.new_vertex_count -= 1;
                for (Dart d : rot) spec.removed_edge[dart_edge(d)] = 1;
                spec.fallback_color = c1;

                auto rotations = std::map<VertexId, std::vector<Token>>{};
                auto rot_of = [&](VertexId v) -> std::vector<Token>& {
                    VertexId nv = spec.vertex_map[v];
                    if (!rotations.count(nv)) rotations[nv] = tokens_of_rotation(m, v);
                    return rotations[nv];
                };
                auto substitute = [&](Dart old_dart, Token tok) {
                    auto& rr = rot_of(m.origin(old_dart));
                    for (auto& entry : rr)
                        if (entry.is_old() && entry.old_dart == old_dart) {
                            entry = tok;
                            return;
                        }
                    throw TilingError("PatternNotFound", "arm dart missing");
                };
                auto handle_wedge = [&](Dart a, Dart b, const TriangleArm& arm) {
                    if (arm.ok) {
                        spec.color_hints.push_back({Token::old_(arm.base), c1});
                        return;
                    }
                    int idx = static_cast<int>(spec.added_edges.size());
                    spec.added_edges.push_back({spec.vertex_map[m.target(a)],
                                                spec.vertex_map[m.target(b)]});
                    substitute(alpha(a), Token::new_(idx, true));
                    substitute(alpha(b), Token::new_(idx, false));
                };
                handle_wedge(p, q, a1);
                handle_wedge(r, s, a2);
                spec.rotations = std::move(rotations);
                return rebuild(t, spec);
            }
        }
    }

    throw TilingError("PatternNotFound", "no removable hourglass at vertex " + std::to_string(x));
}

BicoloredTiling hourglass_move(const BicoloredTiling& t, const HourglassSite& site,
                               HourglassDirection dir) {
    if (dir == HourglassDirection::Add) return hourglass_add(t, site);
    return hourglass_remove(t, site.apex);
}

// ------------------------------------------------------------------ digon --

static BicoloredTiling digon_contract(const BicoloredTiling& t, const DigonSite& site) {
    const CombMap& m = t.map;
    FaceId f = site.digon;
    if (f < 0 || f >= m.face_count() || m.is_outer(f) || m.face_cycle(f).size() != 2 ||
        t.face_color[f] != TileColor::White)
        throw TilingError("NotWhiteDigon", "site is not a white 2-gon");
    Dart d = m.face_cycle(f)[0];
    Dart dp = m.face_cycle(f)[1];
    if (dart_edge(d) == dart_edge(dp)) throw TilingError("NotWhiteDigon", "degenerate 2-gon");
    VertexId x1 = m.origin(d), x2 = m.origin(dp);
    if (x1 == x2) throw TilingError("SelfGluing", "digon vertices coincide");
    if (x1 < t.n && x2 < t.n) throw TilingError("SelfGluing", "cannot fuse two boundary vertices");
    if (t.region_color(m.face_of(alpha(d))) != TileColor::Black ||
        t.region_color(m.face_of(alpha(dp))) != TileColor::Black)
        throw TilingError("FlankNotBlack", "digon flanks are not black");

    VertexId keep = x1, drop = x2;
    Dart kd = d, kdp = dp;  // kd leaves keep, kdp leaves drop
    if (x2 < x1) {
        keep = x2;
        drop = x1;
        kd = dp;
        kdp = d;
    }

    RebuildSpec spec = identity_spec(t);
    spec.vertex_map[drop] = -1;
    for (int v = drop + 1; v < m.vertex_count(); ++v) spec.vertex_map[v] -= 1;
    spec.new_vertex_count -= 1;
    spec.removed_edge[dart_edge(d)] = 1;
    spec.removed_edge[dart_edge(dp)] = 1;

    auto sector = [&](Dart from, Dart upto) {
        std::vector<Token> out;
        Dart cur = m.next_at_vertex(from);
        while (cur != upto) {
            out.push_back(Token::old_(cur));
            cur = m.next_at_vertex(cur);
        }
        return out;
    };
    // at keep: darts kd (digon side) and alpha of the other side are ccw
    // adjacent; others follow. splice keep's fan then drop's fan.
    std::vector<Token> merged = sector(alpha(kdp), kd);
    std::vector<Token> part2 = sector(alpha(kd), kdp);
    merged.insert(merged.end(), part2.begin(), part2.end());
    spec.rotations[spec.vertex_map[keep]] = std::move(merged);
    return rebuild(t, spec);
}

static BicoloredTiling digon_decontract(const BicoloredTiling& t, const DigonSite& site) {
    const CombMap& m = t.map;
    VertexId x = site.vertex;
    Dart a = site.split_a, b = site.split_b;
    if (x < 0 || x >= m.vertex_count() || a == b || m.origin(a) != x || m.origin(b) != x)
        throw TilingError("PatternNotFound", "bad decontraction split");
    if (t.region_color(m.face_of(m.prev_at_vertex(a))) != TileColor::Black ||
        t.region_color(m.face_of(m.prev_at_vertex(b))) != TileColor::Black)
        throw TilingError("FlankNotBlack", "pierced corners are not black");

    // sector2 = [b .. prev(a)] moves to the new vertex; boundary darts stay
    std::vector<Dart> sector2;
    for (Dart cur = b; cur != a; cur = m.next_at_vertex(cur)) sector2.push_back(cur);
    if (x < t.n)
        for (Dart d : sector2)
            if (dart_edge(d) < t.n)
                throw TilingError("PatternNotFound", "split would move boundary edges");

    RebuildSpec spec = identity_spec(t);
    VertexId x2 = spec.new_vertex_count++;
    spec.added_edges = {{x, x2}, {x, x2}};  // e_a, e_b

    std::vector<Token> rot1 = {Token::new_(0, true), Token::new_(1, true)};
    for (Dart cur = a; cur != b; cur = m.next_at_vertex(cur)) rot1.push_back(Token::old_(cur));
    std::vector<Token> rot2 = {Token::new_(1, false), Token::new_(0, false)};
    for (Dart d : sector2) rot2.push_back(Token::old_(d));
    spec.rotations[x] = std::move(rot1);
    spec.rotations[x2] = std::move(rot2);
    spec.color_hints = {{Token::new_(0, true), TileColor::White}};
    return rebuild(t, spec);
}

BicoloredTiling digon_move(const BicoloredTiling& t, const DigonSite& site, DigonDirection dir) {
    return dir == DigonDirection::Contract ? digon_contract(t, site) : digon_decontract(t, site);
}

// ------------------------------------------------------------------- flip --

bool edge_flippable(const BicoloredTiling& t, EdgeId e, FlipMode mode) {
    const CombMap& m = t.map;
    if (e < t.n || e >= m.edge_count()) return false;
    Dart d = edge_dart(e, true);
    FaceId L = m.face_of(d), R = m.face_of(alpha(d));
    if (L == R) return false;
    if (t.face_color[L] != TileColor::White || t.face_color[R] != TileColor::White) return false;
    size_t ls = m.face_cycle(L).size(), rs = m.face_cycle(R).size();
    if (mode == FlipMode::Primitive) {
        if (ls != 3 || rs != 3) return false;
        VertexId u1 = m.target(m.next_in_face(d));
        VertexId u2 = m.target(m.next_in_face(alpha(d)));
        return u1 != u2;
    }
    if (ls < 3 || rs < 3) return false;
    // each side needs two distinct neighbouring edges for the hourglass
    for (Dart side : {d, alpha(d)}) {
        if (m.face_cycle(m.face_of(side)).size() == 3) continue;
        Dart a = m.prev_in_face(side), b = m.next_in_face(side);
        if (dart_edge(a) == dart_edge(b)) return false;
    }
    return true;
}

static BicoloredTiling flip_primitive(const BicoloredTiling& t, EdgeId e) {
    const CombMap& m = t.map;
    if (e < t.n) throw TilingError("EdgeIsBoundary", "cannot flip a boundary edge");
    if (e >= m.edge_count()) throw TilingError("NotFlippable", "no such edge");
    Dart d = edge_dart(e, true);
    FaceId L = m.face_of(d), R = m.face_of(alpha(d));
    if (L == R || t.face_color[L] != TileColor::White || t.face_color[R] != TileColor::White ||
        m.face_cycle(L).size() != 3 || m.face_cycle(R).size() != 3)
        throw TilingError("NotFlippable", "edge is not between two white triangles");
    Dart l1 = m.next_in_face(d), l2 = m.next_in_face(l1);
    Dart r1 = m.next_in_face(alpha(d)), r2 = m.next_in_face(r1);
    VertexId u1 = m.target(l1), u2 = m.target(r1);
    if (u1 == u2) throw TilingError("NotFlippable", "degenerate quadrilateral");

    RebuildSpec spec = identity_spec(t);
    spec.removed_edge[e] = 1;
    spec.added_edges = {{u1, u2}};
    auto rot_u1 = tokens_of_rotation(m, u1);
    insert_after(rot_u1, l2, Token::new_(0, true));
    spec.rotations[u1] = std::move(rot_u1);
    auto rot_u2 = tokens_of_rotation(m, u2);
    insert_after(rot_u2, r2, Token::new_(0, false));
    spec.rotations[u2] = std::move(rot_u2);
    spec.color_hints = {{Token::new_(0, true), TileColor::White},
                        {Token::new_(0, false), TileColor::White}};
    return rebuild(t, spec);
}

static BicoloredTiling flip_with_inscription(const BicoloredTiling& t, EdgeId e) {
    if (e < t.n) throw TilingError("EdgeIsBoundary", "cannot flip a boundary edge");
    BicoloredTiling cur = t;
    for (bool forward : {true, false}) {
        const CombMap& m = cur.map;
        Dart d = edge_dart(e, forward);
        FaceId f = m.face_of(d);
        if (cur.face_color[f] != TileColor::White)
            throw TilingError("NotFlippable", "side of the edge is not white");
        if (m.face_cycle(f).size() == 3) continue;
        if (m.face_cycle(f).size() < 3)
            throw TilingError("NotFlippable", "side is a white 2-gon");
        HourglassSite site;
        site.tile = f;
        site.side_i = m.prev_in_face(d);
        site.side_j = m.next_in_face(d);
        if (dart_edge(site.side_i) == dart_edge(site.side_j))
            throw TilingError("NotFlippable", "edge neighbours coincide");
        cur = hourglass_add(cur, site);  // edge ids survive: nothing removed
    }
    return flip_primitive(cur, e);
}

// apex x inscribes edge e when one of its remainder wedges is exactly the
// triangle carrying e
static bool apex_inscribes(const BicoloredTiling& t, VertexId x, EdgeId e) {
    const CombMap& m = t.map;
    if (x < t.n || m.degree(x) != 4) return false;
    for (Dart d : m.rotation(x)) {
        FaceId f = m.face_of(d);
        if (t.face_color[f] != TileColor::White) continue;
        const auto& cyc = m.face_cycle(f);
        if (cyc.size() != 3) continue;
        for (Dart fd : cyc)
            if (dart_edge(fd) == e) return true;
    }
    return false;
}

BicoloredTiling flip_edge_inscribed(const BicoloredTiling& t, EdgeId e) {
    BicoloredTiling cur = flip_with_inscription(t, e);
    // the replacement diagonal starts as the newest edge; its id drops by
    // the number of removed arm edges whenever an inscription is peeled
    EdgeId replacement = cur.map.edge_count() - 1;
    bool changed = true;
    while (changed) {
        changed = false;
        Dart d = edge_dart(replacement, true);
        for (VertexId x = cur.n; x < cur.map.vertex_count(); ++x) {
            if (x == cur.map.origin(d) || x == cur.map.target(d)) continue;
            if (!apex_inscribes(cur, x, replacement)) continue;
            // which side of the replacement edge is the apex triangle
            bool fwd_side = false;
            for (bool fs : {true, false}) {
                FaceId f = cur.map.face_of(edge_dart(replacement, fs));
                for (Dart fd : cur.map.face_cycle(f))
                    if (cur.map.origin(fd) == x) fwd_side = fs;
            }
            int arm_shift = 0;
            for (Dart rd : cur.map.rotation(x))
                if (dart_edge(rd) < replacement) ++arm_shift;
            try {
                BicoloredTiling peeled = hourglass_remove(cur, x);
                // a genuine inscription merges the side back into a tile of
                // size at least four; anything smaller is original structure
                EdgeId re = replacement - arm_shift;
                FaceId side = peeled.map.face_of(edge_dart(re, fwd_side));
                if (peeled.map.face_cycle(side).size() < 4) continue;
                cur = std::move(peeled);
                replacement = re;
                changed = true;
                break;
            } catch (const TilingError&) {
            }
        }
    }
    return cur;
}

BicoloredTiling flip_edge(const BicoloredTiling& t, EdgeId e, FlipMode mode) {
    if (mode == FlipMode::Primitive) return flip_primitive(t, e);
    return move_reduce(flip_with_inscription(t, e));
}

// ------------------------------------------------------------ move_reduce --

static std::vector<int> tiling_dart_ranks(const BicoloredTiling& t);

BicoloredTiling move_reduce(const BicoloredTiling& t) {
    BicoloredTiling cur = normalize_black(t);
    while (true) {
        const CombMap& m = cur.map;
        std::vector<int> rank = tiling_dart_ranks(cur);

        long best_key = -1;
        int best_kind = -1;  // 0 digon, 1 hourglass
        FaceId best_face = kNoFace;
        VertexId best_vertex = -1;

        auto consider = [&](long key, int kind, FaceId f, VertexId v) {
            if (best_key == -1 || key < best_key || (key == best_key && kind < best_kind)) {
                best_key = key;
                best_kind = kind;
                best_face = f;
                best_vertex = v;
            }
        };

        for (FaceId f = 0; f < m.face_count(); ++f) {
            if (m.is_outer(f) || cur.face_color[f] != TileColor::White) continue;
            if (m.face_cycle(f).size() != 2) continue;
            Dart d = m.face_cycle(f)[0], dp = m.face_cycle(f)[1];
            if (dart_edge(d) == dart_edge(dp)) continue;
            VertexId x1 = m.origin(d), x2 = m.origin(dp);
            if (x1 == x2 || (x1 < cur.n && x2 < cur.n)) continue;
            if (cur.region_color(m.face_of(alpha(d))) != TileColor::Black ||
                cur.region_color(m.face_of(alpha(dp))) != TileColor::Black)
                continue;
            consider(std::min(rank[d], rank[dp]), 0, f, -1);
        }
        for (VertexId x = cur.n; x < m.vertex_count(); ++x) {
            bool removable = false;
            try {
                hourglass_remove(cur, x);
                removable = true;
            } catch (const TilingError&) {
            }
            if (!removable) continue;
            long key = rank[m.rotation(x).front()];
            for (Dart d : m.rotation(x)) key = std::min<long>(key, rank[d]);
            consider(key, 1, kNoFace, x);
        }

        if (best_key == -1) break;
        if (best_kind == 0) {
            DigonSite site;
            site.digon = best_face;
            cur = digon_contract(cur, site);
        } else {
            cur = hourglass_remove(cur, best_vertex);
        }
        cur = normalize_black(cur);
    }
    return cur;
}

// ----------------------------------------------------------------- coding --

static CodeDecorations tiling_decorations(const BicoloredTiling& t) {
    CodeDecorations decor;
    int n = t.n;
    const std::vector<TileColor>* colors = &t.face_color;
    decor.vertex_label = [n](VertexId v) {
        return v < n ? "b" + std::to_string(v) : std::string("x");
    };
    decor.dart_label = [n](Dart d) { return dart_edge(d) < n ? std::string("B") : std::string(); };
    decor.face_label = [colors](FaceId f) {
        switch ((*colors)[f]) {
            case TileColor::White: return std::string("w");
            case TileColor::Black: return std::string("k");
            default: return std::string("o");
        }
    };
    return decor;
}

std::string tiling_code(const BicoloredTiling& t) {
    return canonical_code(t.map, t.anchor(), tiling_decorations(t));
}

static std::vector<int> tiling_dart_ranks(const BicoloredTiling& t) {
    std::vector<int> rank;
    canonical_code(t.map, t.anchor(), tiling_decorations(t), &rank);
    return rank;
}

}  // namespace tilescott
