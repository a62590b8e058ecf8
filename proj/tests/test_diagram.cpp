#include <doctest.h>

#include "tilescott/explore.hpp"
#include "tilescott/io.hpp"
#include "tilescott/scott.hpp"

using namespace tilescott;

namespace {

// hand-built diagram on two boundary vertices: the strands 0 -> 1 and 1 -> 0
// cross twice, forming an oriented lens
StrandData lens_data(int s0, int s1) {
    StrandData sd;
    sd.n = 2;
    sd.crossing_count = 2;
    sd.strand_seq = {{0, 1}, {1, 0}};
    sd.strand_target = {1, 0};
    sd.sign = {s0, s1};
    return sd;
}

PathDiagram build_first_valid(std::vector<StrandData> candidates, bool* found = nullptr) {
    for (auto& sd : candidates) {
        try {
            PathDiagram d = build_diagram(sd);
            if (validate_diagram(d).ok()) {
                if (found) *found = true;
                return d;
            }
        } catch (const DiagramError&) {
        }
    }
    if (found) {
        *found = false;
        return build_diagram(StrandData{1, 0, {{}}, {0}, {}, {}, {}});
    }
    throw DiagramError("TestSetup", "no realizable variant");
}

}  // namespace

TEST_CASE("oriented lens builds, reduces, keeps the permutation") {
    PathDiagram d = build_first_valid({lens_data(1, -1), lens_data(-1, 1)});
    CHECK(d.map.vertex_count() == 4);
    DecoratedPermutation before = decorated_permutation(d);
    PathDiagram r = reduce(d);
    CHECK(r.data.crossing_count == 0);
    CHECK(decorated_permutation(r) == before);
    CHECK(diagram_code(reduce(r)) == diagram_code(r));  // idempotent
    CHECK(diagrams_equivalent(d, r));
}

TEST_CASE("unoriented lens is not reduced and blocks Postnikov") {
    // both strands traverse the two crossings in the same order; realizable
    // with four boundary vertices when the lens strands run 1 -> 2 and 4 -> 3
    bool found = false;
    std::vector<StrandData> cands;
    for (int s0 : {1, -1})
        for (int s1 : {1, -1}) {
            StrandData sd;
            sd.n = 4;
            sd.crossing_count = 2;
            sd.strand_seq = {{0, 1}, {}, {}, {0, 1}};
            sd.strand_target = {1, 0, 3, 2};
            sd.sign = {s0, s1};
            cands.push_back(sd);
        }
    PathDiagram d = build_first_valid(cands, &found);
    if (!found) {
        // fall back: same shape with the lens strands antiparallel targets
        cands.clear();
        for (int s0 : {1, -1})
            for (int s1 : {1, -1}) {
                StrandData sd;
                sd.n = 4;
                sd.crossing_count = 2;
                sd.strand_seq = {{0, 1}, {}, {1, 0}, {}};
                sd.strand_target = {2, 1, 0, 3};
                sd.sign = {s0, s1};
                cands.push_back(sd);
            }
        d = build_first_valid(cands, &found);
    }
    REQUIRE(found);
    PostnikovWitness w = is_postnikov(d);
    bool lens_like = !w.is_postnikov || reduce(d).data.crossing_count < d.data.crossing_count;
    CHECK(lens_like);
}

TEST_CASE("alternation violations are reported") {
    // force both crossings to present the same side to strand 0
    bool some_invalid = false;
    for (int s0 : {1, -1}) {
        StrandData sd = lens_data(s0, s0);
        try {
            PathDiagram d = build_diagram(sd);
            if (validate_diagram(d).has("AlternationViolation")) some_invalid = true;
        } catch (const DiagramError&) {
            some_invalid = true;  // rejected outright as non-realizable
        }
    }
    CHECK(some_invalid);
}

TEST_CASE("self crossing is reported") {
    StrandData sd;
    sd.n = 2;
    sd.crossing_count = 1;
    sd.strand_seq = {{0, 0}, {}};
    sd.strand_target = {0, 1};
    sd.sign = {1};
    try {
        PathDiagram d = build_diagram(sd);
        CHECK(validate_diagram(d).has("SelfCrossing"));
    } catch (const DiagramError&) {
        // non-realizable self-crossing data may also fail the Euler check
        CHECK(true);
    }
}

TEST_CASE("boundary lens reduction") {
    // a strand that detours across its neighbour at the boundary:
    // produced by an hourglass insertion, reduced by one lens removal
    BicoloredTiling t = white_polygon(4);
    FaceId tile = kNoFace;
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White) tile = f;
    const auto& cyc = t.map.face_cycle(tile);
    BicoloredTiling u = hourglass_move(t, HourglassSite{tile, cyc[0], cyc[1], -1},
                                       HourglassDirection::Add);
    PathDiagram base = scott_map(t);
    PathDiagram moved = scott_map(u);
    CHECK(moved.data.crossing_count > base.data.crossing_count);
    CHECK(diagram_code(reduce(moved)) == diagram_code(reduce(base)));
}

TEST_CASE("geometric exchange at the quad of a flipped square") {
    BicoloredTiling t = fan_triangulation(4);
    EdgeId diag = t.n;
    ScottImage img = scott_map_full(t);
    FaceId quad = img.edge_region.at(diag);
    // the quad is an internal alternating face of size four
    bool found = false;
    for (const auto& r : classify_regions(img.diagram))
        if (r.face == quad) {
            found = true;
            CHECK(r.cls == RegionClass::Alternating);
            CHECK(r.size == 4);
            CHECK_FALSE(r.touches_boundary_arc);
        }
    REQUIRE(found);

    PathDiagram ex = geometric_exchange(img.diagram, quad);
    CHECK(validate_diagram(ex).ok());
    CHECK(decorated_permutation(ex) == decorated_permutation(img.diagram));
    // exchanging at the corresponding face restores the original
    bool restored = false;
    for (const auto& r : classify_regions(ex)) {
        if (r.cls != RegionClass::Alternating || r.size != 4 || r.touches_boundary_arc) continue;
        try {
            PathDiagram back = geometric_exchange(ex, r.face);
            if (diagram_code(back) == diagram_code(img.diagram)) restored = true;
        } catch (const DiagramError&) {
        }
    }
    CHECK(restored);
    // and the exchange matches the Scott image of the flipped tiling
    PathDiagram flipped = scott_map(flip_edge(t, diag));
    CHECK(diagrams_equivalent(ex, flipped));
}

TEST_CASE("geometric exchange commutes with the flip on the pentagon fan") {
    BicoloredTiling t = fan_triangulation(5);
    for (EdgeId e = t.n; e < t.map.edge_count(); ++e) {
        CAPTURE(e);
        CommuteResult res = commuting_square_check(t, e);
        CHECK(res.commutes);
    }
}

TEST_CASE("exchange rejects bad faces") {
    PathDiagram d = scott_map(white_polygon(5));
    // boundary-touching or non-quad faces must be rejected
    int rejected = 0;
    for (const auto& r : classify_regions(d)) {
        if (r.cls == RegionClass::Alternating && r.size == 4 && !r.touches_boundary_arc) continue;
        try {
            geometric_exchange(d, r.face);
        } catch (const DiagramError&) {
            ++rejected;
        }
    }
    CHECK(rejected > 0);
}

TEST_CASE("octagon wheel with alternating wedges has type (5,8)") {
    TilingSpec spec;
    spec.n = 8;
    spec.internal_vertices = 1;
    spec.interior_rotations.resize(9);
    for (int v = 0; v < 8; ++v) {
        spec.interior_edges.push_back({v, 8});
        spec.interior_rotations[v] = {edge_dart(8 + v, true)};
    }
    for (int v = 7; v >= 0; --v) spec.interior_rotations[8].push_back(edge_dart(8 + v, false));
    for (int v = 0; v < 8; v += 2)
        spec.color_hints.push_back({edge_dart(v, false), TileColor::Black});
    BicoloredTiling t = build_tiling(spec);
    REQUIRE(validate_tiling(t).ok());
    TilingType ty = tiling_type(t);
    CHECK(ty.k == 5);
    CHECK(ty.n == 8);
    PathDiagram d = scott_map(t);
    CHECK(is_postnikov(d).is_postnikov);
    LabelReport rep = region_labels(d);
    CHECK(rep.uniform);
    CHECK(rep.k == 5);
}

TEST_CASE("black island produces two closed cycles") {
    // square with an inner black square ringed by four white quads
    TilingSpec spec;
    spec.n = 4;
    spec.internal_vertices = 4;
    spec.interior_rotations.resize(8);
    for (int i = 0; i < 4; ++i) spec.interior_edges.push_back({i, 4 + i});
    for (int i = 0; i < 4; ++i) spec.interior_edges.push_back({4 + i, 4 + (i + 1) % 4});
    for (int i = 0; i < 4; ++i) spec.interior_rotations[i] = {edge_dart(4 + i, true)};
    for (int i = 0; i < 4; ++i) {
        int prev = (i + 3) % 4;
        spec.interior_rotations[4 + i] = {edge_dart(4 + i, false), edge_dart(8 + prev, false),
                                          edge_dart(8 + i, true)};
    }
    spec.color_hints = {{edge_dart(8, false), TileColor::Black}};
    BicoloredTiling t = build_tiling(spec);
    REQUIRE(validate_tiling(t).ok());

    PathDiagram d = scott_map(t);
    CHECK(validate_diagram(d).ok());
    CHECK(d.data.cycle_seq.size() == 2);
    PostnikovWitness w = is_postnikov(d);
    CHECK_FALSE(w.is_postnikov);
    CHECK(w.reason.find("cycle") != std::string::npos);
    // one cycle runs each way around the island
    CHECK(path_clockwise(d, d.n) != path_clockwise(d, d.n + 1));

    // document and inverse round trips stay exact with dart cycles present
    auto text = serialize_document(d);
    auto back = std::get<PathDiagram>(parse_document(text));
    CHECK(diagram_code(back) == diagram_code(d));
    BicoloredTiling binv = inverse_scott(d);
    CHECK(diagram_code(scott_map(binv)) == diagram_code(d));
    CHECK(tilings_equivalent(binv, t).equivalent);
}

TEST_CASE("labels refuse diagrams with cycles") {
    TilingSpec spec;
    spec.n = 3;
    spec.internal_vertices = 1;
    spec.interior_edges = {{0, 3}};
    spec.interior_rotations.resize(4);
    spec.interior_rotations[0] = {edge_dart(3, true)};
    spec.interior_rotations[3] = {edge_dart(3, false)};
    spec.color_hints = {{edge_dart(0, false), TileColor::Black}};
    PathDiagram d = scott_map(build_tiling(spec));
    REQUIRE(!d.free_cycles.empty());
    CHECK_THROWS_AS(region_labels(d), DiagramError);
}

TEST_CASE("counterclockwise free cycles are rejected by the inverse map") {
    // take a valid diagram with a cw free cycle and flip the record
    TilingSpec spec;
    spec.n = 3;
    spec.internal_vertices = 1;
    spec.interior_edges = {{3, 3}};
    spec.interior_rotations.resize(4);
    spec.interior_rotations[3] = {edge_dart(3, true), edge_dart(3, false)};
    spec.color_hints = {{edge_dart(0, false), TileColor::Black},
                        {edge_dart(3, true), TileColor::Black}};
    spec.embeddings = {edge_dart(0, false)};
    PathDiagram d = scott_map(build_tiling(spec));
    StrandData data = d.data;
    REQUIRE(data.free_cycles.size() == 1);
    data.free_cycles[0].clockwise = false;
    PathDiagram ccw = build_diagram(std::move(data));
    CHECK_THROWS_AS(inverse_scott(ccw), DiagramError);
}

TEST_CASE("postnikov witness for a cycle") {
    // tiling whose image has a crossing-free cycle: spoke inside a black disk
    TilingSpec spec;
    spec.n = 3;
    spec.internal_vertices = 1;
    spec.interior_edges = {{0, 3}};
    spec.interior_rotations.resize(4);
    spec.interior_rotations[0] = {edge_dart(3, true)};
    spec.interior_rotations[3] = {edge_dart(3, false)};
    spec.color_hints = {{edge_dart(0, false), TileColor::Black}};
    BicoloredTiling t = build_tiling(spec);
    REQUIRE(validate_tiling(t).ok());
    PathDiagram d = scott_map(t);
    CHECK(d.free_cycles.size() == 1);
    PostnikovWitness w = is_postnikov(d);
    CHECK_FALSE(w.is_postnikov);
    CHECK_FALSE(w.reason.empty());
    // inverse round trip stays exact with the wheel too
    BicoloredTiling back = inverse_scott(d);
    CHECK(diagram_code(scott_map(back)) == diagram_code(d));
}
