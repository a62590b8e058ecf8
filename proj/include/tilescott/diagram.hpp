#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilescott/core.hpp"

namespace tilescott {

// An alternating path diagram is stored two ways at once: the strand-level
// description (crossing sequences plus a sign per crossing fixing the local
// rotation) and the combinatorial map built from it. Moves edit the strand
// data and rebuild; the Euler check during the rebuild rejects inputs that
// are not realizable in the disk.
//
// Boundary vertex v has the fixed counterclockwise rotation
//   [arc to v+1, arc to v-1, strand in, strand out].
// A crossing whose passages are a (earlier) and b (later) has rotation
//   sign +1: [a out, b in, a in, b out]   (b crosses a left-to-right)
//   sign -1: [a out, b out, a in, b in]

struct StrandData {
    int n = 0;
    int crossing_count = 0;
    std::vector<std::vector<int>> strand_seq;  // strand i: crossings in order
    std::vector<int> strand_target;            // strand i ends at this vertex
    std::vector<std::vector<int>> cycle_seq;   // closed paths through crossings
    std::vector<int> sign;                     // per crossing, +1 or -1

    struct FreeCycleRef {
        // host: the face left (or right) of segment `seg` of path `path`
        // (path < n: strand, else cycle n+j), or a boundary arc when
        // path == -1 (then seg is the arc index, left = inner side), or the
        // inside of an earlier free cycle when host_free >= 0.
        int path = -1;
        int seg = 0;
        bool left = true;
        int host_free = -1;
        bool clockwise = true;
    };
    std::vector<FreeCycleRef> free_cycles;
};

struct FreeCycleInfo {
    FaceId host_face = kNoFace;  // resolved containing face
    int host_free = -1;          // or nested inside this free cycle
    bool clockwise = true;
};

struct PathDiagram {
    StrandData data;
    CombMap map;
    int n = 0;
    std::vector<FreeCycleInfo> free_cycles;

    // edge layout: arcs 0..n-1, then one edge per path segment in path order
    std::vector<int> path_edge_base;  // per path (strands then cycles)

    Dart anchor() const { return edge_dart(0, true); }
    int path_count() const { return static_cast<int>(data.strand_seq.size() + data.cycle_seq.size()); }
    const std::vector<int>& path_seq(int p) const {
        return p < n ? data.strand_seq[p] : data.cycle_seq[p - n];
    }
    VertexId crossing_vertex(int c) const { return n + c; }
    bool is_crossing(VertexId v) const { return v >= n; }
    EdgeId segment_edge(int path, int seg) const { return path_edge_base[path] + seg; }
    int segment_count(int path) const {
        int len = static_cast<int>(path_seq(path).size());
        return path < n ? len + 1 : len;
    }
    Dart strand_out_dart(int v) const { return map.rotation(v)[3]; }
    Dart strand_in_dart(int v) const { return map.rotation(v)[2]; }
};

class DiagramError : public std::runtime_error {
public:
    DiagramError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Builds the combinatorial map from strand data; throws GenusNonZero when
// the data is not realizable in the disk and UnsupportedDisconnectedDiagram
// when cycle components do not attach to the boundary part.
PathDiagram build_diagram(StrandData data);

ValidationReport validate_diagram(const PathDiagram& d);

struct DecoratedPermutation {
    std::vector<int> pi;          // 0-based targets
    std::map<int, int> color;     // fixed point -> +1 / -1

    bool operator==(const DecoratedPermutation& o) const { return pi == o.pi && color == o.color; }
    bool operator!=(const DecoratedPermutation& o) const { return !(*this == o); }
    std::string to_string() const;
};

DecoratedPermutation decorated_permutation(const PathDiagram& d);

enum class RegionClass { Clockwise, Counterclockwise, Alternating, Mixed };

struct RegionInfo {
    FaceId face = kNoFace;
    RegionClass cls = RegionClass::Mixed;
    int size = 0;  // distinct crossings on the boundary
    bool touches_boundary_arc = false;
    std::vector<int> labels;
};

std::vector<RegionInfo> classify_regions(const PathDiagram& d);

struct LabelReport {
    bool uniform = false;
    int k = 0;
    std::vector<RegionInfo> regions;  // alternating regions with labels filled
};
LabelReport region_labels(const PathDiagram& d);

struct PostnikovWitness {
    bool is_postnikov = false;
    std::string reason;  // empty when true
};
PostnikovWitness is_postnikov(const PathDiagram& d);

PathDiagram reduce(const PathDiagram& d);

// Local rewiring at an internal alternating quadrilateral region.
PathDiagram geometric_exchange(const PathDiagram& d, FaceId delta);

std::string diagram_code(const PathDiagram& d);

bool diagrams_equivalent(const PathDiagram& a, const PathDiagram& b);

// Orientation of a closed dart-cycle path (index >= n) as a curve in the
// disk: clockwise when the enclosed side lies to its right.
bool path_clockwise(const PathDiagram& d, int path);

}  // namespace tilescott
