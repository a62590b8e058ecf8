#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilescott/core.hpp"

namespace tilescott {

enum class TileColor : uint8_t { White, Black, Outer };

// A bicolored tiling of the disk. Boundary vertices are 0..n-1 (vertex v
// carries label v+1), boundary edges are 0..n-1 with edge v running from v
// to v+1 mod n; interior edges and internal vertices follow. Faces carry
// colors; the outer face of a floating component shares the color of its
// host region. Plain edges are kept as edges, never as black 2-gons, and
// black tiles are not implicitly merged (see normalize_black).
struct BicoloredTiling {
    CombMap map;
    int n = 0;
    std::vector<TileColor> face_color;

    Dart anchor() const { return edge_dart(0, true); }
    bool is_boundary_vertex(VertexId v) const { return v < n; }
    bool is_boundary_edge(EdgeId e) const { return e < n; }
    int internal_vertex_count() const { return map.vertex_count() - n; }

    // The region a face belongs to: outer faces of floating components are
    // folded into their host's region. Returns the root face of the region.
    FaceId region_root(FaceId f) const;
    TileColor region_color(FaceId f) const { return face_color[region_root(f)]; }
};

struct TilingType {
    int k = 0;
    int n = 0;
    int vertices = 0;
    int white_tiles = 0;
};

struct HourglassSite {
    FaceId tile = kNoFace;  // for add: the tile p
    Dart side_i = kNoDart;  // darts of p's cycle identifying e_i, e_j
    Dart side_j = kNoDart;
    VertexId apex = -1;     // for remove: the shared internal vertex
};

struct DigonSite {
    FaceId digon = kNoFace;  // for contract: the white 2-gon
    // for decontract: split the rotation of `vertex` before darts a and b
    VertexId vertex = -1;
    Dart split_a = kNoDart;
    Dart split_b = kNoDart;
};

enum class HourglassDirection { Add, Remove };
enum class DigonDirection { Contract, Decontract };
enum class FlipMode { Primitive, General };

class TilingError : public std::runtime_error {
public:
    TilingError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Builders for the stock shapes the test suites lean on.
BicoloredTiling white_polygon(int n);
BicoloredTiling all_black_disk(int n);
BicoloredTiling fan_triangulation(int n);
BicoloredTiling antigon(int n);
BicoloredTiling rhombic_hexagon(bool odd_spokes = true);

// Assembles a tiling from rotation data. Interior edges are numbered from n
// upward in the order given; color hints name the face on the left of a dart
// and unhinted inner faces default to white.
struct TilingSpec {
    int n = 0;
    int internal_vertices = 0;
    std::vector<std::pair<VertexId, VertexId>> interior_edges;
    // full ccw rotations of interior darts per vertex; boundary vertices get
    // their two boundary darts prepended automatically as [b_v, b_{v-1}, ...]
    std::vector<std::vector<Dart>> interior_rotations;
    std::vector<std::pair<Dart, TileColor>> color_hints;
    // floating components: hosted in the face left of host_dart; the face
    // left of the component's lowest reverse dart faces the host
    std::vector<Dart> embeddings;  // indexed by component-1
};
BicoloredTiling build_tiling(const TilingSpec& spec);

ValidationReport validate_tiling(const BicoloredTiling& t);

// Merges black tiles adjacent along a common edge until none remain.
// Edges whose removal would strand a vertex are kept.
BicoloredTiling normalize_black(const BicoloredTiling& t);

BicoloredTiling hourglass_move(const BicoloredTiling& t, const HourglassSite& site,
                               HourglassDirection dir);
BicoloredTiling digon_move(const BicoloredTiling& t, const DigonSite& site, DigonDirection dir);
BicoloredTiling flip_edge(const BicoloredTiling& t, EdgeId e, FlipMode mode = FlipMode::Primitive);

// Flip variant backing the geometric exchange: inscribes the edge with
// hourglasses where a side is larger than a triangle, flips, then removes
// exactly the hourglasses that inscribe the replacement edge. Applying it
// twice at the replacement edge restores the tiling on the nose.
BicoloredTiling flip_edge_inscribed(const BicoloredTiling& t, EdgeId e);

bool edge_flippable(const BicoloredTiling& t, EdgeId e, FlipMode mode);

TilingType tiling_type(const BicoloredTiling& t);

// Greedy normal form under black merges, digon contractions and hourglass
// removals, always taking the site with the smallest canonical key first.
BicoloredTiling move_reduce(const BicoloredTiling& t);

std::string tiling_code(const BicoloredTiling& t);

struct EquivalenceResult {
    bool equivalent = false;
    bool permutations_differ = false;  // certificate when not equivalent
    std::string detail;
};
// Decision procedure per the tiling module contract: move-reduced canonical
// codes first, reduced Scott images as arbiter. Defined in scott.cpp.
EquivalenceResult tilings_equivalent(const BicoloredTiling& a, const BicoloredTiling& b);

}  // namespace tilescott
