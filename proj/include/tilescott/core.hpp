#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilescott {

// Darts come in pairs: edge e owns darts 2e (forward) and 2e+1 (reverse).
// alpha swaps the two darts of an edge; sigma is the next dart
// counterclockwise around the origin vertex. Faces are orbits of
// phi = sigma^-1 o alpha and lie on the LEFT of each of their darts;
// inner faces of a plane drawing are traversed counterclockwise.

using Dart = int32_t;
using VertexId = int32_t;
using EdgeId = int32_t;
using FaceId = int32_t;

constexpr Dart kNoDart = -1;
constexpr FaceId kNoFace = -1;

inline Dart alpha(Dart d) { return d ^ 1; }
inline EdgeId dart_edge(Dart d) { return d >> 1; }
inline Dart edge_dart(EdgeId e, bool forward = true) { return 2 * e + (forward ? 0 : 1); }
inline bool dart_is_forward(Dart d) { return (d & 1) == 0; }

struct ValidationIssue {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    void add(std::string code, std::string detail) {
        issues.push_back({std::move(code), std::move(detail)});
    }
    bool has(const std::string& code) const {
        for (const auto& i : issues)
            if (i.code == code) return true;
        return false;
    }
    std::string to_string() const;
};

class MapError : public std::runtime_error {
public:
    MapError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class CombMap {
public:
    CombMap() = default;

    // rotations[v] lists the darts leaving v in counterclockwise order.
    // Every dart 0..2E-1 must appear exactly once across all rotations.
    static CombMap build(int vertex_count, int edge_count,
                         const std::vector<std::vector<Dart>>& rotations);

    int vertex_count() const { return static_cast<int>(rotation_.size()); }
    int edge_count() const { return static_cast<int>(dart_origin_.size() / 2); }
    int dart_count() const { return static_cast<int>(dart_origin_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }

    VertexId origin(Dart d) const { return dart_origin_[d]; }
    VertexId target(Dart d) const { return dart_origin_[alpha(d)]; }
    Dart next_at_vertex(Dart d) const { return sigma_[d]; }
    Dart prev_at_vertex(Dart d) const { return sigma_inv_[d]; }
    Dart next_in_face(Dart d) const { return sigma_inv_[alpha(d)]; }
    Dart prev_in_face(Dart d) const { return alpha(sigma_[d]); }
    FaceId face_of(Dart d) const { return dart_face_[d]; }
    int degree(VertexId v) const { return static_cast<int>(rotation_[v].size()); }

    const std::vector<Dart>& rotation(VertexId v) const { return rotation_[v]; }
    const std::vector<Dart>& face_cycle(FaceId f) const { return faces_[f]; }
    const std::vector<std::vector<Dart>>& faces() const { return faces_; }

    int component_count() const { return component_count_; }
    int vertex_component(VertexId v) const { return vertex_comp_[v]; }
    int face_component(FaceId f) const { return face_comp_[f]; }
    int dart_component(Dart d) const { return vertex_comp_[dart_origin_[d]]; }

    // Outer face bookkeeping: one designated outer face per component, and a
    // containment forest giving, for each non-root component, the face of
    // another component it is drawn inside.
    void set_outer_face(int component, FaceId f);
    FaceId outer_face(int component = 0) const { return comp_outer_[component]; }
    bool is_outer(FaceId f) const;

    void set_host_face(int component, FaceId f);
    FaceId host_face(int component) const { return comp_host_[component]; }

    // Per-component Euler check plus containment sanity. Issue codes:
    // GenusNonZero, DanglingContainment, MissingOuterFace.
    ValidationReport validate() const;

    // Faces of the same component as f, excluding the component's outer face.
    std::vector<FaceId> inner_faces(int component) const;

private:
    std::vector<VertexId> dart_origin_;
    std::vector<std::vector<Dart>> rotation_;
    std::vector<Dart> sigma_, sigma_inv_;
    std::vector<FaceId> dart_face_;
    std::vector<std::vector<Dart>> faces_;
    std::vector<int> vertex_comp_, face_comp_;
    int component_count_ = 0;
    std::vector<FaceId> comp_outer_;
    std::vector<FaceId> comp_host_;

    void derive();
};

// Decorations consulted by the canonical encoder. Labels must depend only on
// the abstract structure (never on raw ids) for renaming invariance.
struct CodeDecorations {
    std::function<std::string(VertexId)> vertex_label = [](VertexId) { return std::string(); };
    std::function<std::string(Dart)> dart_label = [](Dart) { return std::string(); };
    std::function<std::string(FaceId)> face_label = [](FaceId) { return std::string(); };
};

// Boundary-anchored canonical code: a breadth-first encoding starting from
// `anchor`, with children ordered by rotation and floating components ordered
// by their recursively minimal codes. Two decorated maps receive equal codes
// iff there is a decoration-preserving isomorphism taking one anchor to the
// other.
std::string canonical_code(const CombMap& map, Dart anchor, const CodeDecorations& decor,
                           std::vector<int>* dart_rank = nullptr,
                           std::vector<int>* face_rank = nullptr);

// Decoration-preserving isomorphism fixing the boundary anchors.
inline bool are_isomorphic(const CombMap& a, Dart anchor_a, const CodeDecorations& decor_a,
                           const CombMap& b, Dart anchor_b, const CodeDecorations& decor_b) {
    return canonical_code(a, anchor_a, decor_a) == canonical_code(b, anchor_b, decor_b);
}

}  // namespace tilescott
