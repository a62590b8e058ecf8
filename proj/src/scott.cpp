#include "tilescott/scott.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tilescott {

namespace {

// ---------------------------------------------------------------- features --

// A diagram region corresponds to exactly one tiling feature: a vertex, a
// white tile, or a black/edge complex (maximal black tile with its edges).
struct Feature {
    char kind = '?';  // 'v' vertex, 't' white tile face, 'c' complex
    int id = -1;

    bool operator==(const Feature& o) const { return kind == o.kind && id == o.id; }
    bool operator<(const Feature& o) const { return kind != o.kind ? kind < o.kind : id < o.id; }
};

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int k) : parent(k) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// --------------------------------------------------------- forward machinery --

struct Piece {
    int from = -1, to = -1;  // port ids
    Feature left, right;
};

struct PortGraph {
    // ports: slot(dart, end): 2*dart + (head ? 0 : 1); then crossing ports
    // (4 per crossing: a_in, a_out, b_in, b_out); then boundary ports
    // (out(v), in(v)).
    int dart_count = 0, crossing_count = 0, n = 0;

    int slot(Dart d, bool head) const { return 2 * d + (head ? 0 : 1); }
    int cross_port(int x, int k) const { return 2 * dart_count + 4 * x + k; }  // 0 a_in 1 a_out 2 b_in 3 b_out
    int port_out(int v) const { return 2 * dart_count + 4 * crossing_count + 2 * v; }
    int port_in(int v) const { return 2 * dart_count + 4 * crossing_count + 2 * v + 1; }
    int total() const { return 2 * dart_count + 4 * crossing_count + 2 * n; }
};

}  // namespace

ScottImage scott_map_full(const BicoloredTiling& t) {
    {
        ValidationReport rep = validate_tiling(t);
        if (!rep.ok()) throw TilingError("InvalidTiling", rep.to_string());
    }
    const CombMap& m = t.map;
    const int E = m.edge_count();
    const int n = t.n;

    // black/edge complexes: ids over edges (0..E-1) and faces (E..E+F-1)
    DisjointSets complexes(E + m.face_count());
    for (EdgeId e = 0; e < E; ++e) {
        for (Dart d : {edge_dart(e, true), edge_dart(e, false)}) {
            FaceId rr = t.region_root(m.face_of(d));
            if (t.face_color[rr] == TileColor::Black) complexes.unite(e, E + rr);
        }
    }
    auto edge_complex = [&](EdgeId e) { return complexes.find(e); };
    auto face_complex = [&](FaceId f) { return complexes.find(E + t.region_root(f)); };

    // crossings: one per (white face, cycle position)
    std::vector<FaceId> white_faces;
    std::map<FaceId, int> crossing_base;
    int crossing_total = 0;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (t.face_color[f] != TileColor::White) continue;
        white_faces.push_back(f);
        crossing_base[f] = crossing_total;
        crossing_total += static_cast<int>(m.face_cycle(f).size());
    }

    PortGraph pg{m.dart_count(), crossing_total, n};
    std::vector<Piece> pieces;

    for (FaceId f : white_faces) {
        const auto& cyc = m.face_cycle(f);
        const int mm = static_cast<int>(cyc.size());
        const int base = crossing_base[f];
        for (int ti = 0; ti < mm; ++ti) {
            Dart w0 = cyc[ti], w1 = cyc[(ti + 1) % mm], w2 = cyc[(ti + 2) % mm];
            int x0 = base + ti, x1 = base + (ti + 1) % mm;
            // entrant: pierces side w0 near its head, crosses the hugger
            pieces.push_back({pg.slot(w0, true), pg.cross_port(x0, 2),
                              Feature{'c', edge_complex(dart_edge(w0))},
                              Feature{'v', m.target(w0)}});
            // onward along side w1 as the new hugger
            pieces.push_back({pg.cross_port(x0, 3), pg.cross_port(x1, 0), Feature{'t', f},
                              Feature{'c', edge_complex(dart_edge(w1))}});
            // exit through side w2 near its tail
            pieces.push_back({pg.cross_port(x1, 1), pg.slot(w2, false),
                              Feature{'c', edge_complex(dart_edge(w2))},
                              Feature{'v', m.origin(w2)}});
        }
    }
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (t.face_color[f] == TileColor::White) continue;
        if (m.face_component(f) == m.dart_component(t.anchor()) && m.is_outer(f)) continue;
        if (t.region_color(f) != TileColor::Black) continue;
        const auto& cyc = m.face_cycle(f);
        const int len = static_cast<int>(cyc.size());
        for (int i = 0; i < len; ++i) {
            Dart dprev = cyc[i], dnext = cyc[(i + 1) % len];
            pieces.push_back({pg.slot(dprev, true), pg.slot(dnext, false),
                              Feature{'c', face_complex(f)}, Feature{'v', m.target(dprev)}});
        }
    }

    // glue slots across edges; boundary edges join through their vertices
    DisjointSets ports(pg.total());
    for (EdgeId e = 0; e < E; ++e) {
        if (t.is_boundary_edge(e)) {
            Dart rev = edge_dart(e, false);  // inner side: head at v, tail at v+1
            ports.unite(pg.slot(rev, true), pg.port_out(e));
            ports.unite(pg.slot(rev, false), pg.port_in((e + 1) % n));
        } else {
            Dart fd = edge_dart(e, true), rd = edge_dart(e, false);
            ports.unite(pg.slot(fd, true), pg.slot(rd, false));
            ports.unite(pg.slot(rd, true), pg.slot(fd, false));
        }
    }

    std::vector<int> start_piece(pg.total(), -1), end_piece(pg.total(), -1);
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
        int s = ports.find(pieces[i].from), e = ports.find(pieces[i].to);
        if (start_piece[s] != -1 || end_piece[e] != -1)
            throw TilingError("GlueParityError", "slot used twice");
        start_piece[s] = i;
        end_piece[e] = i;
    }

    // walk chains, building strand data
    StrandData data;
    data.n = n;
    data.strand_seq.resize(n);
    data.strand_target.assign(n, -1);
    std::vector<char> used(pieces.size(), 0);

    std::map<int, int> crossing_id;  // construction crossing -> data id
    struct PassageRec {
        int path, pos;
        bool entrant;
    };
    std::vector<std::array<PassageRec, 2>> passages;
    std::vector<int> passage_count;
    std::vector<std::vector<std::pair<Feature, Feature>>> seg_tags;  // per path

    auto data_crossing = [&](int x) {
        auto it = crossing_id.find(x);
        if (it != crossing_id.end()) return it->second;
        int id = static_cast<int>(passages.size());
        crossing_id[x] = id;
        passages.push_back({});
        passage_count.push_back(0);
        data.sign.push_back(0);
        return id;
    };

    // follow pieces from a class until an anchor; records segment tags
    auto walk_path = [&](int path, int start_port, std::vector<int>& seq,
                         std::vector<std::pair<Feature, Feature>>& tags) -> int {
        int port = ports.find(start_port);
        bool fresh_segment = true;
        while (true) {
            int pi = start_piece[port];
            if (pi == -1) throw TilingError("GlueParityError", "broken chain");
            if (used[pi]) throw TilingError("GlueParityError", "piece reused");
            used[pi] = 1;
            if (fresh_segment) {
                tags.push_back({pieces[pi].left, pieces[pi].right});
                fresh_segment = false;
            }
            int to = ports.find(pieces[pi].to);
            // crossing port?
            int cbase = 2 * pg.dart_count;
            if (to >= cbase && to < cbase + 4 * pg.crossing_count) {
                int x = (to - cbase) / 4, k = (to - cbase) % 4;
                int id = data_crossing(x);
                bool entrant = (k == 2);
                passages[id][passage_count[id]++] = {path, static_cast<int>(seq.size()), entrant};
                seq.push_back(id);
                port = ports.find(pg.cross_port(x, entrant ? 3 : 1));
                fresh_segment = true;
                if (port == ports.find(start_port) && path >= n) return -1;  // closed
                continue;
            }
            int bbase = cbase + 4 * pg.crossing_count;
            if (to >= bbase) {
                int v = (to - bbase) / 2;
                return v;  // strand ends here
            }
            port = to;
        }
    };

    for (int v = 0; v < n; ++v) {
        std::vector<std::pair<Feature, Feature>> tags;
        data.strand_target[v] = walk_path(v, pg.port_out(v), data.strand_seq[v], tags);
        seg_tags.push_back(std::move(tags));
    }
    // closed cycles through crossings: start from any unused crossing port
    // (either role) and let the walk record the closing passage itself
    for (int x = 0; x < pg.crossing_count; ++x) {
        for (int role_in : {0, 2}) {
            int pi = end_piece[ports.find(pg.cross_port(x, role_in))];
            if (pi == -1 || used[pi]) continue;
            int path = n + static_cast<int>(data.cycle_seq.size());
            data.cycle_seq.emplace_back();
            auto& seq = data.cycle_seq.back();
            std::vector<std::pair<Feature, Feature>> tags;
            walk_path(path, pg.cross_port(x, role_in + 1), seq, tags);
            // the walk leaves the start crossing first, so its tag list is
            // rotated by one against segment numbering seq[s] -> seq[s+1]
            if (!tags.empty()) std::rotate(tags.begin(), tags.begin() + 1, tags.end());
            seg_tags.push_back(std::move(tags));
        }
    }
    // crossing-free closed chains: these become free cycle records
    struct PendingCycle {
        Feature complex;
        Feature vertex;
    };
    std::vector<PendingCycle> pending_cycles;
    for (int i = 0; i < static_cast<int>(pieces.size()); ++i) {
        if (used[i]) continue;
        PendingCycle pc{pieces[i].left, pieces[i].right};
        int port = ports.find(pieces[i].from);
        int cur = i;
        while (!used[cur]) {
            used[cur] = 1;
            port = ports.find(pieces[cur].to);
            cur = start_piece[port];
            if (cur == -1) throw TilingError("GlueParityError", "broken free chain");
        }
        pending_cycles.push_back(pc);
    }

    for (size_t c = 0; c < passages.size(); ++c) {
        if (passage_count[c] != 2) throw TilingError("GlueParityError", "half-used crossing");
        const auto& a = passages[c][0];
        const auto& b = passages[c][1];
        const auto& first = (a.path < b.path || (a.path == b.path && a.pos < b.pos)) ? a : b;
        data.sign[c] = first.entrant ? 1 : -1;
    }
    data.crossing_count = static_cast<int>(passages.size());

    PathDiagram d = build_diagram(data);

    // face -> feature via segment tags
    std::vector<Feature> face_feature(d.map.face_count(), Feature{});
    auto norm = [&](Feature f) {
        if (f.kind == 'c') f.id = complexes.find(f.id);
        return f;
    };
    for (FaceId f = 0; f < d.map.face_count(); ++f) {
        if (d.map.is_outer(f)) continue;
        Feature found{};
        for (Dart dart : d.map.face_cycle(f)) {
            EdgeId e = dart_edge(dart);
            Feature cand{};
            if (e < n) {
                if (dart_is_forward(dart)) continue;  // outer side
                cand = norm(Feature{'c', edge_complex(e)});
            } else {
                int path = -1, seg = -1;
                for (int p = 0; p < d.path_count(); ++p) {
                    int base = d.path_edge_base[p];
                    if (e >= base && e < base + d.segment_count(p)) {
                        path = p;
                        seg = e - base;
                        break;
                    }
                }
                const auto& tag = seg_tags[path][seg];
                cand = norm(dart_is_forward(dart) ? tag.first : tag.second);
            }
            if (found.kind == '?')
                found = cand;
            else if (!(found == cand))
                throw TilingError("GlueParityError", "inconsistent face feature");
        }
        face_feature[f] = found;
    }
    std::map<Feature, FaceId> feature_face;
    for (FaceId f = 0; f < d.map.face_count(); ++f)
        if (face_feature[f].kind != '?') feature_face[face_feature[f]] = f;

    // free cycles: hosted in the face of their complex
    for (const auto& pc : pending_cycles) {
        auto it = feature_face.find(norm(pc.complex));
        if (it == feature_face.end())
            throw TilingError("GlueParityError", "free cycle host region not found");
        FaceId host = it->second;
        StrandData::FreeCycleRef ref;
        ref.clockwise = true;
        bool done = false;
        for (Dart dart : d.map.face_cycle(host)) {
            EdgeId e = dart_edge(dart);
            if (e < n) {
                if (!dart_is_forward(dart)) {
                    ref.path = -1;
                    ref.seg = e;
                    done = true;
                }
            } else {
                for (int p = 0; p < d.path_count(); ++p) {
                    int base = d.path_edge_base[p];
                    if (e >= base && e < base + d.segment_count(p)) {
                        ref.path = p;
                        ref.seg = e - base;
                        ref.left = dart_is_forward(dart);
                        done = true;
                        break;
                    }
                }
            }
            if (done) break;
        }
        if (!done) throw TilingError("GlueParityError", "host face has no usable reference");
        data.free_cycles.push_back(ref);
    }
    if (!data.free_cycles.empty()) d = build_diagram(data);

    ScottImage img;
    img.vertex_region.assign(m.vertex_count(), kNoFace);
    img.vertex_cycle.assign(m.vertex_count(), -1);
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        auto it = feature_face.find(Feature{'v', v});
        if (it != feature_face.end()) img.vertex_region[v] = it->second;
    }
    for (size_t i = 0; i < pending_cycles.size(); ++i)
        if (pending_cycles[i].vertex.kind == 'v')
            img.vertex_cycle[pending_cycles[i].vertex.id] = static_cast<int>(i);
    for (FaceId f : white_faces) {
        auto it = feature_face.find(Feature{'t', f});
        if (it != feature_face.end()) img.tile_region[f] = it->second;
    }
    for (EdgeId e = 0; e < E; ++e) {
        auto it = feature_face.find(norm(Feature{'c', e}));
        if (it != feature_face.end()) img.edge_region[e] = it->second;
    }
    img.diagram = std::move(d);
    return img;
}

PathDiagram scott_map(const BicoloredTiling& t) { return scott_map_full(t).diagram; }

// ------------------------------------------------------------ inverse map --

namespace {

enum class Role { Vertex, White, Black };

struct InverseBuilder {
    const PathDiagram& d;
    const CombMap& m;
    std::vector<Role> role;
    std::vector<int> face_vertex;      // face -> tiling vertex (Vertex role)
    std::vector<RegionClass> cls;
    std::vector<char> touches_arc;

    // black face decomposition
    struct BlackFace {
        std::vector<int> side_slots;           // slot ids in walk order
        std::vector<int> run_vertex;           // corner run i sits between side i-1 and side i
        std::map<Dart, int> run_of_dart;       // corner-passage dart -> run index
        bool thin = false;
    };
    std::map<FaceId, BlackFace> blacks;

    // slot ids: darts are their own slots, boundary arcs follow
    int arc_slot(int j) const { return m.dart_count() + j; }
    DisjointSets slots;

    explicit InverseBuilder(const PathDiagram& diag)
        : d(diag), m(diag.map), slots(diag.map.dart_count() + diag.n) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw DiagramError("UnrealizableRegion", why);
    }

    int vertex_at_crossing(VertexId c) const {
        int found = -1;
        for (Dart dart : m.rotation(c)) {
            FaceId f = m.face_of(dart);
            if (role[f] == Role::Vertex) {
                if (found != -1 && found != face_vertex[f]) fail("two vertex corners at a crossing");
                found = face_vertex[f];
            }
        }
        if (found == -1) fail("no vertex corner at a crossing");
        return found;
    }

    int white_corner_count = 0;
};

}  // namespace

BicoloredTiling inverse_scott(const PathDiagram& d) {
    for (const auto& fc : d.free_cycles)
        if (!fc.clockwise)
            throw DiagramError("UnsupportedCcwFreeCycle",
                               "no tiling rule for counterclockwise crossing-free cycles");

    InverseBuilder b(d);
    const CombMap& m = d.map;
    const int n = d.n;

    // classify and assign roles
    b.role.assign(m.face_count(), Role::Black);
    b.face_vertex.assign(m.face_count(), -1);
    b.cls.assign(m.face_count(), RegionClass::Mixed);
    b.touches_arc.assign(m.face_count(), 0);
    for (const auto& r : classify_regions(d)) {
        b.cls[r.face] = r.cls;
        b.touches_arc[r.face] = r.touches_boundary_arc;
        if (r.cls == RegionClass::Mixed) b.fail("mixed region");
    }

    std::vector<int> next_vertex(1, n);
    for (int v = 0; v < n; ++v) {
        FaceId f = m.face_of(d.strand_in_dart(v));
        if (b.face_vertex[f] != -1) b.fail("two boundary vertices share a corner region");
        if (b.touches_arc[f]) b.fail("boundary corner region touches an arc");
        if (b.cls[f] != RegionClass::Clockwise) b.fail("boundary corner region is not clockwise");
        b.role[f] = Role::Vertex;
        b.face_vertex[f] = v;
    }
    int internal_vertices = 0;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f) || b.role[f] == Role::Vertex) continue;
        if (b.touches_arc[f]) {
            b.role[f] = Role::Black;
        } else if (b.cls[f] == RegionClass::Clockwise) {
            b.role[f] = Role::Vertex;
            b.face_vertex[f] = n + internal_vertices++;
        } else if (b.cls[f] == RegionClass::Counterclockwise) {
            if (m.face_cycle(f).size() < 2) b.fail("white tile of size one");
            b.role[f] = Role::White;
        } else {
            b.role[f] = Role::Black;
        }
    }
    const int tiling_vertex_count = n + internal_vertices +
                                    static_cast<int>(d.free_cycles.size());

    // decompose black faces into sides and corner runs
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f) || b.role[f] != Role::Black) continue;
        InverseBuilder::BlackFace bf;
        const auto& cyc = m.face_cycle(f);
        int len = static_cast<int>(cyc.size());
        // find a side to start at
        auto is_side = [&](Dart dart) {
            if (dart_edge(dart) < n) return true;
            return b.role[m.face_of(alpha(dart))] == Role::White;
        };
        int start = -1;
        for (int i = 0; i < len; ++i)
            if (is_side(cyc[i])) start = i;
        if (start == -1) b.fail("black region with no sides");

        int current_run = -1;
        std::vector<std::vector<int>> run_witnesses;
        auto vertex_witness = [&](int w) {
            if (current_run == -1) {
                current_run = static_cast<int>(run_witnesses.size());
                run_witnesses.emplace_back();
            }
            run_witnesses[current_run].push_back(w);
        };
        for (int k = 0; k < len; ++k) {
            Dart dart = cyc[(start + k) % len];
            // the vertex between the previous dart and this one
            if (k > 0) {
                VertexId u = m.origin(dart);
                if (d.is_crossing(u))
                    vertex_witness(b.vertex_at_crossing(u));
                else
                    vertex_witness(u);
            }
            if (is_side(dart)) {
                bf.side_slots.push_back(dart_edge(dart) < n ? b.arc_slot(dart_edge(dart))
                                                            : static_cast<int>(dart));
                current_run = -1;
            } else {
                FaceId across = m.face_of(alpha(dart));
                if (b.role[across] != Role::Vertex) b.fail("black region adjacent to black across an arc");
                vertex_witness(b.face_vertex[across]);
                if (current_run == -1) {
                    current_run = static_cast<int>(run_witnesses.size());
                    run_witnesses.emplace_back();
                    run_witnesses[current_run].push_back(b.face_vertex[across]);
                }
                bf.run_of_dart[dart] = current_run;
            }
        }
        // wrap: the vertex between the last and first dart joins (or opens)
        // the run in the final side gap
        {
            VertexId u = m.origin(cyc[start]);
            if (d.is_crossing(u))
                vertex_witness(b.vertex_at_crossing(u));
            else
                vertex_witness(u);
        }
        bf.run_vertex.resize(run_witnesses.size());
        for (size_t i = 0; i < run_witnesses.size(); ++i) {
            for (int w : run_witnesses[i])
                if (w != run_witnesses[i][0]) b.fail("corner run with conflicting vertices");
            bf.run_vertex[i] = run_witnesses[i][0];
        }
        int arc_sides = 0;
        for (int s : bf.side_slots)
            if (s >= m.dart_count()) ++arc_sides;
        bf.thin = bf.side_slots.size() == 2 && arc_sides <= 1;
        b.blacks[f] = std::move(bf);
    }

    // edge classes: glue white sides to black sides, collapse thin complexes
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f) || b.role[f] != Role::White) continue;
        for (Dart dart : m.face_cycle(f)) {
            if (dart_edge(dart) < n) b.fail("white tile touches a boundary arc");
            FaceId across = m.face_of(alpha(dart));
            if (b.role[across] != Role::Black) b.fail("white tile adjacent to non-black");
            b.slots.unite(dart, alpha(dart));
        }
    }
    for (auto& [f, bf] : b.blacks)
        if (bf.thin) b.slots.unite(bf.side_slots[0], bf.side_slots[1]);

    // number the edges: boundary ones by their arc, interior ones in slot order
    std::map<int, EdgeId> class_edge;
    for (int j = 0; j < n; ++j) {
        int c = b.slots.find(b.arc_slot(j));
        if (class_edge.count(c)) b.fail("two boundary edges merged");
        class_edge[c] = j;
    }
    int next_edge = n;
    std::vector<int> all_slots;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f)) continue;
        if (b.role[f] == Role::White)
            for (Dart dart : m.face_cycle(f)) all_slots.push_back(dart);
        if (b.role[f] == Role::Black)
            for (int s : b.blacks[f].side_slots) all_slots.push_back(s);
    }
    std::sort(all_slots.begin(), all_slots.end());
    for (int s : all_slots) {
        int c = b.slots.find(s);
        if (!class_edge.count(c)) class_edge[c] = next_edge++;
    }
    auto edge_of_slot = [&](int s) { return class_edge.at(b.slots.find(s)); };

    // rotation intervals per vertex-role face
    struct Claim {
        VertexId vertex;
        int position;
        TileColor color;
        FaceId structure;  // diagram face of the claimed tile
    };
    std::vector<Claim> claims;
    std::vector<std::vector<EdgeId>> rotations_e(tiling_vertex_count);

    auto white_corner_interval = [&](VertexId c, FaceId& white_out) -> std::pair<EdgeId, EdgeId> {
        // the white quadrant at crossing c, read as [leaving side, arriving side]
        for (Dart dart : m.rotation(c)) {
            FaceId wf = m.face_of(dart);
            if (b.role[wf] != Role::White) continue;
            // find the white face's dart arriving at c
            Dart u = kNoDart;
            for (Dart wd : m.face_cycle(wf))
                if (m.target(wd) == c) u = wd;
            if (u == kNoDart) b.fail("white corner without arrival dart");
            Dart w = m.next_in_face(u);
            white_out = wf;
            return {edge_of_slot(w), edge_of_slot(u)};
        }
        b.fail("no white corner at crossing");
    };

    auto black_interval = [&](Dart rho_dart) -> std::tuple<EdgeId, EdgeId, FaceId, bool> {
        FaceId rf = m.face_of(alpha(rho_dart));
        if (b.role[rf] != Role::Black) b.fail("vertex region adjacent to non-black");
        auto& bf = b.blacks[rf];
        if (bf.thin) {
            EdgeId e = edge_of_slot(bf.side_slots[0]);
            return {e, e, rf, true};
        }
        auto it = bf.run_of_dart.find(alpha(rho_dart));
        if (it == bf.run_of_dart.end()) b.fail("corner passage not in a run");
        int run = it->second;
        int side_count = static_cast<int>(bf.side_slots.size());
        if (static_cast<int>(bf.run_vertex.size()) != side_count)
            b.fail("sides and corner runs do not alternate");
        // run r sits between side r and side r+1 in walk order; around the
        // vertex the interval reads [after, before]
        int before = run % side_count;
        int after = (run + 1) % side_count;
        return {edge_of_slot(bf.side_slots[after]), edge_of_slot(bf.side_slots[before]), rf, false};
    };

    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f) || b.role[f] != Role::Vertex) continue;
        int x = b.face_vertex[f];
        const auto& cyc = m.face_cycle(f);
        int len = static_cast<int>(cyc.size());
        int start = 0;
        if (x < n) {
            Dart in_dart = d.strand_in_dart(x);
            for (int i = 0; i < len; ++i)
                if (cyc[i] == in_dart) start = i;
        }

        // fused interval list around x; corner_after[i] claims the tile in the
        // gap between fused[i] and fused[i+1] (cyclically for internal x)
        std::vector<EdgeId> fused;
        std::vector<std::pair<TileColor, FaceId>> corner_after;
        auto push_new = [&](EdgeId e) {
            fused.push_back(e);
            corner_after.push_back({TileColor::Outer, kNoFace});
        };
        auto overlap = [&](EdgeId e) {
            if (fused.empty() || fused.back() != e) b.fail("rotation intervals disagree");
        };
        auto claim_gap = [&](TileColor color, FaceId structure) {
            corner_after.back() = {color, structure};
        };

        for (int k = 0; k < len; ++k) {
            Dart dart = cyc[(start + k) % len];
            if (k > 0) {
                VertexId c = m.origin(dart);
                if (!d.is_crossing(c)) b.fail("vertex region passes a boundary vertex");
                FaceId wf = kNoFace;
                auto [e1, e2] = white_corner_interval(c, wf);
                overlap(e1);
                claim_gap(TileColor::White, wf);
                push_new(e2);
            }
            auto [e1, e2, rf, thin] = black_interval(dart);
            if (k == 0)
                push_new(e1);
            else
                overlap(e1);
            if (!thin) {
                claim_gap(TileColor::Black, rf);
                push_new(e2);
            }
        }
        if (x >= n) {
            // wrap crossing between the last and first darts
            VertexId c = m.origin(cyc[start]);
            if (!d.is_crossing(c)) b.fail("internal region passes a boundary vertex");
            FaceId wf = kNoFace;
            auto [e1, e2] = white_corner_interval(c, wf);
            overlap(e1);
            if (fused.front() != e2) b.fail("wrap interval disagrees");
            claim_gap(TileColor::White, wf);
        } else {
            // boundary vertex: the fused list must run b_{x-1} .. b_x
            if (fused.front() != (x + n - 1) % n || fused.back() != x)
                b.fail("boundary corner does not meet its boundary edges");
        }

        // emit the rotation and the claims
        auto& rot = rotations_e[x];
        if (x < n) {
            rot.push_back(x);
            rot.push_back((x + n - 1) % n);
            for (size_t i = 1; i + 1 < fused.size(); ++i) rot.push_back(fused[i]);
            // fused[i] sits at rotation position 1 (i = 0) or i + 1
            for (size_t i = 0; i + 1 < fused.size(); ++i) {
                if (corner_after[i].first == TileColor::Outer) continue;
                int pos = (i == 0) ? 1 : static_cast<int>(i) + 1;
                claims.push_back({x, pos, corner_after[i].first, corner_after[i].second});
            }
        } else {
            rot = fused;
            for (size_t i = 0; i < fused.size(); ++i) {
                if (corner_after[i].first == TileColor::Outer) continue;
                claims.push_back({x, static_cast<int>(i), corner_after[i].first,
                                  corner_after[i].second});
            }
        }
    }

    // free cycles become floating black 1-gons
    std::vector<EdgeId> cycle_edge(d.free_cycles.size());
    for (size_t i = 0; i < d.free_cycles.size(); ++i) {
        const auto& fc = d.free_cycles[i];
        if (fc.host_face != kNoFace && b.role[fc.host_face] != Role::Black)
            b.fail("free cycle hosted outside a black region");
        VertexId y = n + internal_vertices + static_cast<int>(i);
        EdgeId le = next_edge++;
        cycle_edge[i] = le;
        rotations_e[y] = {le, le};
    }

    // instantiate darts: boundary edge v points v -> v+1; interior edges get
    // the forward dart at their first occurrence
    std::vector<int> edge_seen(next_edge, 0);
    std::vector<std::vector<Dart>> rotations(tiling_vertex_count);
    for (VertexId v = 0; v < tiling_vertex_count; ++v) {
        for (EdgeId e : rotations_e[v]) {
            if (edge_seen[e] > 1) b.fail("edge used more than twice");
            bool forward = e < n ? (e == v) : (edge_seen[e] == 0);
            rotations[v].push_back(edge_dart(e, forward));
            ++edge_seen[e];
        }
    }
    for (EdgeId e = 0; e < next_edge; ++e)
        if (edge_seen[e] != 2) b.fail("edge not used exactly twice");

    BicoloredTiling t;
    t.n = n;
    t.map = CombMap::build(tiling_vertex_count, next_edge, rotations);
    int root = t.map.dart_component(edge_dart(0, true));
    t.map.set_outer_face(root, t.map.face_of(edge_dart(0, true)));

    // containment for the floating 1-gons
    std::map<FaceId, FaceId> structure_face;  // diagram face -> built tiling face
    for (const auto& c : claims) {
        Dart dart = rotations[c.vertex][c.position];
        structure_face[c.structure] = t.map.face_of(dart);
    }
    for (size_t i = 0; i < d.free_cycles.size(); ++i) {
        const auto& fc = d.free_cycles[i];
        VertexId y = n + internal_vertices + static_cast<int>(i);
        int comp = t.map.vertex_component(y);
        t.map.set_outer_face(comp, t.map.face_of(edge_dart(cycle_edge[i], false)));
        FaceId host;
        if (fc.host_free >= 0) {
            host = t.map.face_of(edge_dart(cycle_edge[fc.host_free], true));
        } else {
            auto it = structure_face.find(fc.host_face);
            if (it == structure_face.end()) b.fail("free cycle host tile not reconstructed");
            host = it->second;
        }
        t.map.set_host_face(comp, host);
    }

    // colors via the corner claims
    t.face_color.assign(t.map.face_count(), TileColor::Outer);
    std::vector<char> colored(t.map.face_count(), 0);
    colored[t.map.face_of(edge_dart(0, true))] = 1;
    for (const auto& c : claims) {
        Dart dart = rotations[c.vertex][c.position];
        FaceId f = t.map.face_of(dart);
        if (colored[f] && t.face_color[f] != c.color) b.fail("conflicting tile colors");
        t.face_color[f] = c.color;
        colored[f] = 1;
    }
    for (size_t i = 0; i < d.free_cycles.size(); ++i) {
        FaceId inner = t.map.face_of(edge_dart(cycle_edge[i], true));
        FaceId outer = t.map.face_of(edge_dart(cycle_edge[i], false));
        t.face_color[inner] = TileColor::Black;
        t.face_color[outer] = TileColor::Black;
        colored[inner] = colored[outer] = 1;
    }
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (!colored[f]) b.fail("unclaimed face in reconstruction");

    ValidationReport rep = validate_tiling(t);
    if (!rep.ok()) b.fail("reconstruction is not a valid tiling:\n" + rep.to_string());
    return t;
}

// ------------------------------------------------------ geometric exchange --

PathDiagram geometric_exchange(const PathDiagram& d, FaceId delta) {
    const CombMap& m = d.map;
    if (delta < 0 || delta >= m.face_count() || m.is_outer(delta))
        throw DiagramError("NotQuadAlternating", "no such inner face");
    const auto& cyc = m.face_cycle(delta);
    if (cyc.size() != 4) throw DiagramError("NotQuadAlternating", "face is not a quadrilateral");
    std::set<VertexId> corners;
    int with = 0;
    for (Dart dart : cyc) {
        if (dart_edge(dart) < d.n)
            throw DiagramError("TouchesBoundary", "face touches a boundary arc");
        if (!d.is_crossing(m.origin(dart)))
            throw DiagramError("TouchesBoundary", "face touches a boundary vertex");
        corners.insert(m.origin(dart));
        with += dart_is_forward(dart) ? 1 : 0;
    }
    if (corners.size() != 4) throw DiagramError("NotQuadAlternating", "corners are not distinct");
    if (with != 2) throw DiagramError("NotQuadAlternating", "face is not alternating");

    // realize the rewiring through the corresponding tiling: the quad is the
    // region of an edge between two white tiles; flip that edge
    BicoloredTiling t;
    try {
        t = inverse_scott(d);
    } catch (const DiagramError& err) {
        throw DiagramError("NotQuadAlternating",
                           std::string("no tiling realizes the diagram exactly: ") + err.what());
    }

    std::vector<int> rank_d;
    canonical_code(d.map, d.anchor(), CodeDecorations{}, nullptr, &rank_d);

    ScottImage img = scott_map_full(t);
    std::vector<int> rank_s;
    canonical_code(img.diagram.map, img.diagram.anchor(), CodeDecorations{}, nullptr, &rank_s);

    EdgeId target = -1;
    for (const auto& [e, face] : img.edge_region)
        if (rank_s[face] == rank_d[delta]) target = e;
    if (target < t.n)
        throw DiagramError("NotQuadAlternating", "face is not the region of an interior edge");
    try {
        return scott_map(flip_edge_inscribed(t, target));
    } catch (const TilingError& err) {
        throw DiagramError("NotQuadAlternating", err.what());
    }
}

// ------------------------------------------------------------- equivalence --

EquivalenceResult tilings_equivalent(const BicoloredTiling& a, const BicoloredTiling& b) {
    EquivalenceResult res;
    if (a.n != b.n) throw TilingError("DifferentBoundarySize", "boundary sizes differ");
    BicoloredTiling ra = move_reduce(a), rb = move_reduce(b);
    if (tiling_code(ra) == tiling_code(rb)) {
        res.equivalent = true;
        res.detail = "move-reduced forms coincide";
        return res;
    }
    PathDiagram da = scott_map(a), db = scott_map(b);
    DecoratedPermutation pa = decorated_permutation(da), pb = decorated_permutation(db);
    if (!(pa == pb)) {
        res.permutations_differ = true;
        res.detail = "decorated permutations differ: " + pa.to_string() + " vs " + pb.to_string();
        return res;
    }
    res.equivalent = diagrams_equivalent(da, db);
    res.detail = res.equivalent ? "reduced Scott images coincide"
                                : "reduced Scott images differ";
    return res;
}

}  // namespace tilescott
