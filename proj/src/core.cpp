#include "tilescott/core.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace tilescott {

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto& i : issues) {
        out << i.code;
        if (!i.detail.empty()) out << ": " << i.detail;
        out << "\n";
    }
    return out.str();
}

CombMap CombMap::build(int vertex_count, int edge_count,
                       const std::vector<std::vector<Dart>>& rotations) {
    if (static_cast<int>(rotations.size()) != vertex_count)
        throw MapError("IncompleteRotation", "rotation list count differs from vertex count");

    const int darts = 2 * edge_count;
    CombMap m;
    m.rotation_ = rotations;
    m.dart_origin_.assign(darts, -1);

    for (VertexId v = 0; v < vertex_count; ++v) {
        for (Dart d : rotations[v]) {
            if (d < 0 || d >= darts)
                throw MapError("IncompleteRotation", "dart id out of range at vertex " + std::to_string(v));
            if (m.dart_origin_[d] != -1)
                throw MapError("IncompleteRotation", "dart listed twice: " + std::to_string(d));
            m.dart_origin_[d] = v;
        }
    }
    for (Dart d = 0; d < darts; ++d) {
        if (m.dart_origin_[d] == -1)
            throw MapError("IncompleteRotation", "dart missing from all rotations: " + std::to_string(d));
        if (alpha(d) == d)
            throw MapError("NonInvolutiveAlpha", "degenerate dart pairing");
    }

    m.derive();
    return m;
}

void CombMap::derive() {
    const int darts = dart_count();
    sigma_.assign(darts, kNoDart);
    sigma_inv_.assign(darts, kNoDart);
    for (const auto& rot : rotation_) {
        const int k = static_cast<int>(rot.size());
        for (int i = 0; i < k; ++i) {
            Dart d = rot[i];
            Dart nd = rot[(i + 1) % k];
            sigma_[d] = nd;
            sigma_inv_[nd] = d;
        }
    }

    // faces on the left: orbits of phi = sigma^-1 o alpha
    dart_face_.assign(darts, kNoFace);
    faces_.clear();
    for (Dart d0 = 0; d0 < darts; ++d0) {
        if (dart_face_[d0] != kNoFace) continue;
        FaceId f = static_cast<FaceId>(faces_.size());
        faces_.emplace_back();
        Dart d = d0;
        do {
            dart_face_[d] = f;
            faces_[f].push_back(d);
            d = sigma_inv_[alpha(d)];
        } while (d != d0);
    }

    // connected components over vertices
    vertex_comp_.assign(vertex_count(), -1);
    component_count_ = 0;
    for (VertexId v0 = 0; v0 < vertex_count(); ++v0) {
        if (vertex_comp_[v0] != -1) continue;
        int c = component_count_++;
        std::queue<VertexId> q;
        q.push(v0);
        vertex_comp_[v0] = c;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (Dart d : rotation_[v]) {
                VertexId w = target(d);
                if (vertex_comp_[w] == -1) {
                    vertex_comp_[w] = c;
                    q.push(w);
                }
            }
        }
    }
    face_comp_.assign(face_count(), -1);
    for (FaceId f = 0; f < face_count(); ++f)
        face_comp_[f] = vertex_comp_[origin(faces_[f].front())];

    comp_outer_.assign(component_count_, kNoFace);
    comp_host_.assign(component_count_, kNoFace);
}

void CombMap::set_outer_face(int component, FaceId f) {
    if (face_comp_[f] != component)
        throw MapError("DanglingContainment", "outer face not in component");
    comp_outer_[component] = f;
}

bool CombMap::is_outer(FaceId f) const {
    return comp_outer_[face_comp_[f]] == f;
}

void CombMap::set_host_face(int component, FaceId f) {
    if (face_comp_[f] == component)
        throw MapError("DanglingContainment", "component cannot be hosted in its own face");
    comp_host_[component] = f;
}

ValidationReport CombMap::validate() const {
    ValidationReport report;

    std::vector<int> v_per(component_count_, 0), e_per(component_count_, 0), f_per(component_count_, 0);
    for (VertexId v = 0; v < vertex_count(); ++v) ++v_per[vertex_comp_[v]];
    for (EdgeId e = 0; e < edge_count(); ++e) ++e_per[vertex_comp_[origin(edge_dart(e))]];
    for (FaceId f = 0; f < face_count(); ++f) ++f_per[face_comp_[f]];

    for (int c = 0; c < component_count_; ++c) {
        if (v_per[c] - e_per[c] + f_per[c] != 2)
            report.add("GenusNonZero",
                       "component " + std::to_string(c) + ": V-E+F = " +
                           std::to_string(v_per[c] - e_per[c] + f_per[c]));
        if (comp_outer_[c] == kNoFace)
            report.add("MissingOuterFace", "component " + std::to_string(c));
    }

    // containment: each non-root component hosted in a face of another
    // component, and the host chain must be acyclic.
    for (int c = 0; c < component_count_; ++c) {
        if (comp_host_[c] == kNoFace) continue;
        FaceId host = comp_host_[c];
        if (host < 0 || host >= face_count() || face_comp_[host] == c) {
            report.add("DanglingContainment", "component " + std::to_string(c));
            continue;
        }
    }
    // cycle check over component -> host component edges
    std::vector<int> state(component_count_, 0);
    std::function<bool(int)> walk = [&](int c) -> bool {
        if (state[c] == 2) return true;
        if (state[c] == 1) return false;
        state[c] = 1;
        bool ok = true;
        if (comp_host_[c] != kNoFace) ok = walk(face_comp_[comp_host_[c]]);
        state[c] = 2;
        return ok;
    };
    for (int c = 0; c < component_count_; ++c)
        if (!walk(c)) {
            report.add("DanglingContainment", "containment cycle through component " + std::to_string(c));
            break;
        }

    return report;
}

std::vector<FaceId> CombMap::inner_faces(int component) const {
    std::vector<FaceId> result;
    for (FaceId f = 0; f < face_count(); ++f)
        if (face_comp_[f] == component && comp_outer_[component] != f) result.push_back(f);
    return result;
}

namespace {

// Encodes one component starting from `anchor`; face labels are emitted in
// first-touch order and hosted child components are appended recursively.
struct Encoder {
    const CombMap& map;
    const CodeDecorations& decor;
    std::vector<std::vector<int>> comp_children;  // component -> hosted components
    std::vector<int>* rank_out = nullptr;
    std::vector<int>* face_rank_out = nullptr;
    int next_rank = 0;

    explicit Encoder(const CombMap& m, const CodeDecorations& d) : map(m), decor(d) {
        comp_children.resize(map.component_count());
        for (int c = 0; c < map.component_count(); ++c)
            if (map.host_face(c) != kNoFace)
                comp_children[map.face_component(map.host_face(c))].push_back(c);
    }

    std::string encode_component(Dart anchor) {
        std::ostringstream out;
        std::vector<int> vertex_idx(map.vertex_count(), -1);
        std::vector<int> edge_idx(map.edge_count(), -1);
        std::vector<int> face_idx(map.face_count(), -1);
        std::vector<FaceId> face_order;
        int next_vertex = 0, next_edge = 0;

        auto touch_face = [&](FaceId f) {
            if (face_idx[f] == -1) {
                face_idx[f] = static_cast<int>(face_order.size());
                face_order.push_back(f);
                if (face_rank_out && (*face_rank_out)[f] == -1) (*face_rank_out)[f] = face_idx[f];
            }
        };

        std::queue<Dart> pending;  // reference dart at an unvisited vertex
        auto visit_vertex = [&](Dart ref) {
            VertexId v = map.origin(ref);
            if (vertex_idx[v] != -1) return;
            vertex_idx[v] = next_vertex++;
            out << "v" << decor.vertex_label(v) << "(";
            const auto& rot = map.rotation(v);
            int start = 0;
            while (rot[start] != ref) ++start;
            const int k = static_cast<int>(rot.size());
            for (int i = 0; i < k; ++i) {
                Dart d = rot[(start + i) % k];
                if (rank_out) (*rank_out)[d] = next_rank++;
                EdgeId e = dart_edge(d);
                if (edge_idx[e] == -1) {
                    edge_idx[e] = next_edge++;
                    pending.push(alpha(d));
                    out << "e" << edge_idx[e];
                } else {
                    out << "r" << edge_idx[e];
                }
                out << decor.dart_label(d);
                touch_face(map.face_of(d));
                out << ",";
            }
            out << ")";
        };

        visit_vertex(anchor);
        while (!pending.empty()) {
            Dart ref = pending.front();
            pending.pop();
            visit_vertex(ref);
        }

        out << "|F";
        for (FaceId f : face_order) out << decor.face_label(f) << (map.is_outer(f) ? "O" : "") << ";";

        // hosted child components, grouped by host face in traversal order,
        // each child canonicalised over all of its anchor darts
        std::vector<std::tuple<int, std::string, Dart>> children;
        int comp = map.dart_component(anchor);
        for (int child : comp_children[comp]) {
            auto [code, best] = minimal_component_code(child);
            children.push_back({face_idx[map.host_face(child)], code, best});
        }
        std::sort(children.begin(), children.end());
        for (const auto& [host, code, best] : children) {
            out << "|@" << host << "{";
            if (rank_out)
                out << encode_component(best);  // re-encode to assign ranks
            else
                out << code;
            out << "}";
        }
        return out.str();
    }

    std::pair<std::string, Dart> minimal_component_code(int component) {
        std::vector<int>* saved = rank_out;
        rank_out = nullptr;
        std::string best;
        Dart best_dart = kNoDart;
        for (Dart d = 0; d < map.dart_count(); ++d) {
            if (map.dart_component(d) != component) continue;
            std::string code = encode_component(d);
            if (best.empty() || code < best) {
                best = code;
                best_dart = d;
            }
        }
        rank_out = saved;
        return {best, best_dart};
    }
};

}  // namespace

std::string canonical_code(const CombMap& map, Dart anchor, const CodeDecorations& decor,
                           std::vector<int>* dart_rank, std::vector<int>* face_rank) {
    Encoder enc(map, decor);
    if (dart_rank) {
        dart_rank->assign(map.dart_count(), -1);
        enc.rank_out = dart_rank;
    }
    if (face_rank) {
        face_rank->assign(map.face_count(), -1);
        enc.face_rank_out = face_rank;
    }
    return enc.encode_component(anchor);
}

}  // namespace tilescott
