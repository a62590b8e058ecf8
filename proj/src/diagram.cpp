#include "tilescott/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace tilescott {

namespace {

struct Passage {
    int path = -1;
    int pos = -1;
};

// The two passages through each crossing, ordered by (path, pos).
std::vector<std::array<Passage, 2>> crossing_passages(const StrandData& d) {
    std::vector<std::array<Passage, 2>> out(d.crossing_count, {Passage{}, Passage{}});
    std::vector<int> seen(d.crossing_count, 0);
    auto visit = [&](int path, const std::vector<int>& seq) {
        for (int pos = 0; pos < static_cast<int>(seq.size()); ++pos) {
            int c = seq[pos];
            if (c < 0 || c >= d.crossing_count)
                throw DiagramError("BadCrossing", "crossing id out of range");
            if (seen[c] >= 2) throw DiagramError("BadCrossing", "crossing used more than twice");
            out[c][seen[c]++] = Passage{path, pos};
        }
    };
    for (int i = 0; i < d.n; ++i) visit(i, d.strand_seq[i]);
    for (size_t j = 0; j < d.cycle_seq.size(); ++j) visit(d.n + static_cast<int>(j), d.cycle_seq[j]);
    for (int c = 0; c < d.crossing_count; ++c)
        if (seen[c] != 2) throw DiagramError("BadCrossing", "crossing not used exactly twice");
    return out;
}

}  // namespace

PathDiagram build_diagram(StrandData data) {
    const int n = data.n;
    if (n < 1) throw DiagramError("BadBoundaryDegree", "need at least one boundary vertex");
    if (static_cast<int>(data.strand_seq.size()) != n ||
        static_cast<int>(data.strand_target.size()) != n)
        throw DiagramError("BadBoundaryDegree", "strand table size mismatch");
    if (static_cast<int>(data.sign.size()) != data.crossing_count)
        throw DiagramError("BadCrossing", "sign table size mismatch");
    for (int s : data.sign)
        if (s != 1 && s != -1) throw DiagramError("BadCrossing", "sign must be +1 or -1");

    std::vector<int> incoming(n, -1);
    for (int i = 0; i < n; ++i) {
        int j = data.strand_target[i];
        if (j < 0 || j >= n || incoming[j] != -1)
            throw DiagramError("BadBoundaryDegree", "strand targets are not a permutation");
        incoming[j] = i;
    }

    auto passages = crossing_passages(data);

    PathDiagram d;
    d.n = n;
    d.data = std::move(data);

    const int path_count = d.path_count();
    d.path_edge_base.assign(path_count, 0);
    int edge_count = n;
    for (int p = 0; p < path_count; ++p) {
        d.path_edge_base[p] = edge_count;
        edge_count += d.segment_count(p);
    }

    // node of a path position: pos -1 is the source vertex for strands
    auto node_at = [&](int path, int pos) -> VertexId {
        const auto& seq = d.path_seq(path);
        int len = static_cast<int>(seq.size());
        if (path < n) {
            if (pos < 0) return path;
            if (pos >= len) return d.data.strand_target[path];
            return d.crossing_vertex(seq[pos]);
        }
        return d.crossing_vertex(seq[((pos % len) + len) % len]);
    };
    // segment s of a path runs node(s-1) -> node(s) for strands and
    // node(s) -> node(s+1) for cycles; forward dart sits at the from node
    auto seg_from = [&](int path, int s) {
        return path < n ? node_at(path, s - 1) : node_at(path, s);
    };

    const int vcount = n + d.data.crossing_count;
    std::vector<std::vector<Dart>> rot(vcount);

    for (int v = 0; v < n; ++v) {
        Dart arc_next = edge_dart(v, true);
        Dart arc_prev = edge_dart((v + n - 1) % n, false);
        int in_strand = incoming[v];
        int in_seg = d.segment_count(in_strand) - 1;
        Dart in_dart = edge_dart(d.segment_edge(in_strand, in_seg), false);
        Dart out_dart = edge_dart(d.segment_edge(v, 0), true);
        rot[v] = {arc_next, arc_prev, in_dart, out_dart};
    }
    for (int c = 0; c < d.data.crossing_count; ++c) {
        const Passage& a = passages[c][0];
        const Passage& b = passages[c][1];
        auto in_dart = [&](const Passage& p) {
            int len = static_cast<int>(d.path_seq(p.path).size());
            int seg = p.path < n ? p.pos : (p.pos + len - 1) % len;
            return edge_dart(d.segment_edge(p.path, seg), false);
        };
        auto out_dart = [&](const Passage& p) {
            int len = static_cast<int>(d.path_seq(p.path).size());
            int seg = p.path < n ? p.pos + 1 : p.pos;
            (void)len;
            return edge_dart(d.segment_edge(p.path, seg), true);
        };
        if (d.data.sign[c] > 0)
            rot[d.crossing_vertex(c)] = {out_dart(a), in_dart(b), in_dart(a), out_dart(b)};
        else
            rot[d.crossing_vertex(c)] = {out_dart(a), out_dart(b), in_dart(a), in_dart(b)};
    }

    // sanity: the rotations must place each forward dart at the from node
    d.map = CombMap::build(vcount, edge_count, rot);
    for (int p = 0; p < path_count; ++p)
        for (int s = 0; s < d.segment_count(p); ++s)
            if (d.map.origin(edge_dart(d.segment_edge(p, s), true)) != seg_from(p, s))
                throw DiagramError("BadCrossing", "inconsistent segment attachment");

    if (d.map.component_count() != 1)
        throw DiagramError("UnsupportedDisconnectedDiagram",
                           "closed cycles must share crossings with the boundary part");
    d.map.set_outer_face(0, d.map.face_of(edge_dart(0, true)));
    ValidationReport mr = d.map.validate();
    if (!mr.ok()) throw DiagramError("GenusNonZero", "strand data is not realizable in the disk:\n" + mr.to_string());

    // resolve free cycle hosts
    for (const auto& ref : d.data.free_cycles) {
        FreeCycleInfo info;
        info.clockwise = ref.clockwise;
        if (ref.host_free >= 0) {
            if (ref.host_free >= static_cast<int>(d.free_cycles.size()))
                throw DiagramError("BadCycleHost", "free cycle hosted in a later cycle");
            info.host_free = ref.host_free;
        } else if (ref.path < 0) {
            if (ref.seg < 0 || ref.seg >= n) throw DiagramError("BadCycleHost", "bad arc index");
            info.host_face = d.map.face_of(edge_dart(ref.seg, false));
        } else {
            if (ref.path >= path_count || ref.seg < 0 || ref.seg >= d.segment_count(ref.path))
                throw DiagramError("BadCycleHost", "bad segment reference");
            Dart fd = edge_dart(d.segment_edge(ref.path, ref.seg), true);
            info.host_face = d.map.face_of(ref.left ? fd : alpha(fd));
        }
        if (info.host_face != kNoFace && d.map.is_outer(info.host_face))
            throw DiagramError("BadCycleHost", "free cycle hosted in the outer face");
        d.free_cycles.push_back(info);
    }
    return d;
}

// ------------------------------------------------------------- validation --

namespace {

// side of the other path at each passage: true = the crosser runs left to
// right seen from this passage's direction of travel
bool crosser_left_to_right(const StrandData& d, const Passage& p, int crossing,
                           const std::vector<std::array<Passage, 2>>& passages) {
    bool is_first = passages[crossing][0].path == p.path && passages[crossing][0].pos == p.pos;
    return d.sign[crossing] > 0 ? is_first : !is_first;
}

}  // namespace

ValidationReport validate_diagram(const PathDiagram& d) {
    ValidationReport report;
    auto passages = crossing_passages(d.data);

    for (int p = 0; p < d.path_count(); ++p) {
        const auto& seq = d.path_seq(p);
        std::set<int> seen;
        for (int c : seq)
            if (!seen.insert(c).second)
                report.add("SelfCrossing", "path " + std::to_string(p) + " revisits crossing " +
                                               std::to_string(c));
        if (p >= d.n && seq.size() % 2 != 0)
            report.add("OddCycleParity", "cycle " + std::to_string(p - d.n));
        // alternation along the path (cyclically for closed cycles)
        int len = static_cast<int>(seq.size());
        for (int i = 0; i + 1 < len; ++i) {
            bool s1 = crosser_left_to_right(d.data, Passage{p, i}, seq[i], passages);
            bool s2 = crosser_left_to_right(d.data, Passage{p, i + 1}, seq[i + 1], passages);
            if (s1 == s2)
                report.add("AlternationViolation",
                           "path " + std::to_string(p) + " at positions " + std::to_string(i));
        }
        if (p >= d.n && len >= 2 && len % 2 == 0) {
            bool s1 = crosser_left_to_right(d.data, Passage{p, len - 1}, seq[len - 1], passages);
            bool s2 = crosser_left_to_right(d.data, Passage{p, 0}, seq[0], passages);
            if (s1 == s2) report.add("AlternationViolation", "cycle wrap " + std::to_string(p - d.n));
        }
    }

    for (int c = 0; c < d.data.crossing_count; ++c) {
        const auto& rot = d.map.rotation(d.crossing_vertex(c));
        if (rot.size() != 4) {
            report.add("NonTransversal", "crossing " + std::to_string(c));
            continue;
        }
    }

    for (const auto& r : classify_regions(d))
        if (r.cls == RegionClass::Mixed)
            report.add("MixedRegion", "face " + std::to_string(r.face));
    return report;
}

// ---------------------------------------------------------------- regions --

std::vector<RegionInfo> classify_regions(const PathDiagram& d) {
    std::vector<RegionInfo> out;
    const CombMap& m = d.map;
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f)) continue;
        RegionInfo info;
        info.face = f;
        std::set<VertexId> crossings;
        // per dart: +1 with flow, -1 against, 0 boundary arc
        std::vector<int> dirs;
        for (Dart dart : m.face_cycle(f)) {
            if (d.is_crossing(m.origin(dart))) crossings.insert(m.origin(dart));
            if (dart_edge(dart) < d.n) {
                info.touches_boundary_arc = true;
                dirs.push_back(0);
            } else {
                dirs.push_back(dart_is_forward(dart) ? 1 : -1);
            }
        }
        info.size = static_cast<int>(crossings.size());
        bool has_with = false, has_against = false;
        for (int s : dirs) {
            if (s > 0) has_with = true;
            if (s < 0) has_against = true;
        }
        if (!has_with && !has_against) {
            info.cls = RegionClass::Alternating;  // arcs only; degenerate
        } else if (!has_against) {
            info.cls = RegionClass::Counterclockwise;
        } else if (!has_with) {
            info.cls = RegionClass::Clockwise;
        } else {
            // strictly alternating between consecutive strand darts; boundary
            // arcs are neutral separators
            bool ok = true;
            int sz = static_cast<int>(dirs.size());
            for (int i = 0; i < sz; ++i) {
                if (dirs[i] == 0) continue;
                int j = (i + 1) % sz;
                bool separated = false;
                while (dirs[j] == 0) {
                    separated = true;
                    j = (j + 1) % sz;
                }
                if (!separated && dirs[j] == dirs[i]) ok = false;
            }
            info.cls = ok ? RegionClass::Alternating : RegionClass::Mixed;
        }
        out.push_back(info);
    }
    return out;
}

// ------------------------------------------------- side partition helpers --

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int k) : parent(k) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Partition of the inner faces by the closed curve of path p (boundary arcs
// act as walls, so the exterior never links the two sides).
struct SidePartition {
    UnionFind uf;
    int left_rep = -1, right_rep = -1;

    SidePartition(const PathDiagram& d, int p) : uf(d.map.face_count()) {
        const CombMap& m = d.map;
        std::vector<char> on_curve(m.edge_count(), 0);
        for (int s = 0; s < d.segment_count(p); ++s) on_curve[d.segment_edge(p, s)] = 1;
        for (EdgeId e = d.n; e < m.edge_count(); ++e) {
            if (on_curve[e]) continue;
            uf.unite(m.face_of(edge_dart(e, true)), m.face_of(edge_dart(e, false)));
        }
        Dart fd = edge_dart(d.segment_edge(p, 0), true);
        left_rep = uf.find(m.face_of(fd));
        right_rep = uf.find(m.face_of(alpha(fd)));
    }

    bool on_left(FaceId f) { return uf.find(f) == left_rep; }
};

}  // namespace

// ---------------------------------------------------------- permutation --

std::string DecoratedPermutation::to_string() const {
    std::ostringstream out;
    out << "pi:";
    for (size_t i = 0; i < pi.size(); ++i) {
        out << " " << (i + 1) << "->" << (pi[i] + 1);
        auto it = color.find(static_cast<int>(i));
        if (it != color.end()) out << (it->second > 0 ? "(+)" : "(-)");
    }
    return out.str();
}

DecoratedPermutation decorated_permutation(const PathDiagram& d) {
    DecoratedPermutation dp;
    dp.pi = d.data.strand_target;
    for (int i = 0; i < d.n; ++i) {
        if (dp.pi[i] != i) continue;
        // clockwise iff the remainder of the disk boundary lies on the left
        SidePartition part(d, i);
        FaceId arc_flank = d.map.face_of(edge_dart((i + 1) % d.n, false));
        if (d.n == 1) arc_flank = d.map.face_of(edge_dart(0, false));
        dp.color[i] = part.on_left(arc_flank) ? 1 : -1;
    }
    return dp;
}

// ------------------------------------------------------------------ labels --

LabelReport region_labels(const PathDiagram& d) {
    if (!d.data.cycle_seq.empty() || !d.free_cycles.empty())
        throw DiagramError("CyclesPresent", "labels are defined via strands only");
    LabelReport rep;
    auto regions = classify_regions(d);
    std::map<FaceId, RegionInfo*> alt;
    for (auto& r : regions)
        if (r.cls == RegionClass::Alternating) alt[r.face] = &r;

    for (int i = 0; i < d.n; ++i) {
        SidePartition part(d, i);
        for (auto& [f, info] : alt)
            if (part.on_left(f)) info->labels.push_back(i);
    }

    rep.uniform = true;
    bool first = true;
    for (auto& [f, info] : alt) {
        rep.regions.push_back(*info);
        int k = static_cast<int>(info->labels.size());
        if (first) {
            rep.k = k;
            first = false;
        } else if (k != rep.k) {
            rep.uniform = false;
        }
    }
    return rep;
}

// --------------------------------------------------------------- postnikov --

PostnikovWitness is_postnikov(const PathDiagram& d) {
    PostnikovWitness w;
    if (!d.data.cycle_seq.empty()) {
        w.reason = "closed cycle through " + std::to_string(d.data.cycle_seq[0][0]);
        return w;
    }
    if (!d.free_cycles.empty()) {
        w.reason = "crossing-free closed cycle";
        return w;
    }
    // for每 pair of crossings consecutive on both strands, the strands must
    // run in opposite directions between them
    auto passages = crossing_passages(d.data);
    for (int i = 0; i < d.n; ++i) {
        const auto& seq = d.data.strand_seq[i];
        for (size_t t = 0; t + 1 < seq.size(); ++t) {
            int a = seq[t], b = seq[t + 1];
            // the other path through a and b
            auto other = [&](int c, int pos) -> Passage {
                const auto& pr = passages[c];
                if (pr[0].path == i && pr[0].pos == pos) return pr[1];
                return pr[0];
            };
            Passage oa = other(a, static_cast<int>(t));
            Passage ob = other(b, static_cast<int>(t + 1));
            if (oa.path != ob.path || oa.path >= d.n) continue;
            if (oa.path == i) continue;
            int delta = ob.pos - oa.pos;
            if (delta == 1) {
                // consecutive on the other strand too, same direction a->b
                w.reason = "unoriented lens between strands " + std::to_string(i + 1) + " and " +
                           std::to_string(oa.path + 1);
                return w;
            }
        }
    }
    w.is_postnikov = true;
    return w;
}

// ------------------------------------------------------------------ reduce --

namespace {

void erase_passage_pair(StrandData& data, int path, int c1, int c2) {
    auto& seq = path < data.n ? data.strand_seq[path] : data.cycle_seq[path - data.n];
    std::vector<int> out;
    for (int c : seq)
        if (c != c1 && c != c2) out.push_back(c);
    seq = std::move(out);
}

StrandData renumber_crossings(StrandData data, const std::vector<char>& dead) {
    std::vector<int> remap(data.crossing_count, -1);
    std::vector<int> sign;
    int next = 0;
    for (int c = 0; c < data.crossing_count; ++c) {
        if (dead[c]) continue;
        remap[c] = next++;
        sign.push_back(data.sign[c]);
    }
    data.crossing_count = next;
    data.sign = std::move(sign);
    auto apply = [&](std::vector<int>& seq) {
        for (int& c : seq) c = remap[c];
    };
    for (auto& s : data.strand_seq) apply(s);
    for (auto& s : data.cycle_seq) apply(s);
    return data;
}

struct LensCandidate {
    long key = 0;
    bool boundary = false;
    int path1 = -1, path2 = -1;
    int c1 = -1, c2 = -1;  // c2 = -1 for boundary lenses
};

std::optional<LensCandidate> find_lens(const PathDiagram& d) {
    const CombMap& m = d.map;
    std::vector<int> rank;
    canonical_code(m, d.anchor(), CodeDecorations{}, &rank);

    std::optional<LensCandidate> best;
    auto consider = [&](const LensCandidate& cand) {
        if (!best || cand.key < best->key) best = cand;
    };

    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (m.is_outer(f)) continue;
        const auto& cyc = m.face_cycle(f);

        if (cyc.size() == 2 && dart_edge(cyc[0]) >= d.n && dart_edge(cyc[1]) >= d.n) {
            bool with0 = dart_is_forward(cyc[0]), with1 = dart_is_forward(cyc[1]);
            if (with0 != with1) continue;  // unoriented lens
            VertexId a = m.origin(cyc[0]), b = m.origin(cyc[1]);
            if (!d.is_crossing(a) || !d.is_crossing(b) || a == b) continue;
            LensCandidate cand;
            cand.key = std::min(rank[cyc[0]], rank[cyc[1]]);
            cand.c1 = a - d.n;
            cand.c2 = b - d.n;
            consider(cand);
        }

        if (cyc.size() == 3) {
            // boundary lens: one arc, two coherent strand stubs through one crossing
            int arc_at = -1;
            for (int i = 0; i < 3; ++i)
                if (dart_edge(cyc[i]) < d.n) arc_at = i;
            if (arc_at == -1) continue;
            Dart s1 = cyc[(arc_at + 1) % 3], s2 = cyc[(arc_at + 2) % 3];
            if (dart_edge(s1) < d.n || dart_edge(s2) < d.n) continue;
            if (dart_is_forward(s1) != dart_is_forward(s2)) continue;  // not coherent
            VertexId c = m.origin(s2);
            if (!d.is_crossing(c)) continue;
            if (d.is_crossing(m.origin(s1)) || d.is_crossing(m.target(s2))) continue;
            LensCandidate cand;
            cand.boundary = true;
            cand.key = std::min({rank[cyc[0]], rank[cyc[1]], rank[cyc[2]]});
            cand.c1 = c - d.n;
            consider(cand);
        }
    }
    return best;
}

}  // namespace

PathDiagram reduce(const PathDiagram& d) {
    PathDiagram cur = d;
    while (true) {
        auto cand = find_lens(cur);
        if (!cand) break;
        StrandData data = cur.data;
        std::vector<char> dead(data.crossing_count, 0);
        auto passages = crossing_passages(data);
        if (cand->boundary) {
            dead[cand->c1] = 1;
            for (const Passage& p : passages[cand->c1]) erase_passage_pair(data, p.path, cand->c1, cand->c1);
        } else {
            dead[cand->c1] = dead[cand->c2] = 1;
            std::set<int> paths;
            for (const Passage& p : passages[cand->c1]) paths.insert(p.path);
            for (int p : paths) erase_passage_pair(data, p, cand->c1, cand->c2);
        }
        cur = build_diagram(renumber_crossings(std::move(data), dead));
    }
    return cur;
}

// geometric_exchange is defined in scott.cpp: the rewiring is realized by
// flipping the corresponding tiling edge through the inverse Scott map.

// ------------------------------------------------------------------ coding --

static CodeDecorations diagram_decorations(const PathDiagram& d) {
    CodeDecorations decor;
    int n = d.n;
    decor.vertex_label = [n](VertexId v) {
        return v < n ? "b" + std::to_string(v) : std::string("c");
    };
    decor.dart_label = [n](Dart dart) {
        if (dart_edge(dart) < n) return std::string("A");
        return dart_is_forward(dart) ? std::string(">") : std::string("<");
    };
    return decor;
}

std::string diagram_code(const PathDiagram& d) {
    std::vector<int> face_rank;
    std::string code = canonical_code(d.map, d.anchor(), diagram_decorations(d), nullptr, &face_rank);

    // free cycle records: canonical order by (host kind, host rank, orientation)
    if (!d.free_cycles.empty()) {
        int k = static_cast<int>(d.free_cycles.size());
        std::vector<int> order(k, -1);
        int next = 0;
        // order face-hosted cycles first, then resolve nesting iteratively
        std::vector<std::tuple<long, int, int>> items;
        while (next < k) {
            items.clear();
            for (int i = 0; i < k; ++i) {
                if (order[i] != -1) continue;
                const auto& fc = d.free_cycles[i];
                if (fc.host_free == -1)
                    items.push_back({face_rank[fc.host_face], fc.clockwise ? 0 : 1, i});
                else if (order[fc.host_free] != -1)
                    items.push_back({1000000 + order[fc.host_free], fc.clockwise ? 0 : 1, i});
            }
            if (items.empty()) break;
            std::sort(items.begin(), items.end());
            for (auto& [key, cw, i] : items) order[i] = next++;
        }
        std::vector<std::string> recs;
        for (int i = 0; i < k; ++i) {
            const auto& fc = d.free_cycles[i];
            std::ostringstream rec;
            rec << "(";
            if (fc.host_free == -1)
                rec << "f" << face_rank[fc.host_face];
            else
                rec << "y" << order[fc.host_free];
            rec << (fc.clockwise ? "cw" : "ccw") << ")";
            recs.push_back(rec.str());
        }
        std::sort(recs.begin(), recs.end());
        code += "|Y";
        for (auto& r : recs) code += r;
    }
    return code;
}

bool diagrams_equivalent(const PathDiagram& a, const PathDiagram& b) {
    if (a.n != b.n) throw DiagramError("DifferentBoundarySize", "boundary sizes differ");
    if (decorated_permutation(a) != decorated_permutation(b)) return false;
    return diagram_code(reduce(a)) == diagram_code(reduce(b));
}

bool path_clockwise(const PathDiagram& d, int path) {
    SidePartition part(d, path);
    FaceId arc_flank = d.map.face_of(edge_dart(0, false));
    return part.on_left(arc_flank);
}

}  // namespace tilescott
