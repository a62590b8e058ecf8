#include <doctest.h>

#include "tilescott/explore.hpp"
#include "tilescott/scott.hpp"

using namespace tilescott;

TEST_CASE("builders validate") {
    for (int n = 3; n <= 8; ++n) {
        CHECK(validate_tiling(white_polygon(n)).ok());
        CHECK(validate_tiling(all_black_disk(n)).ok());
        CHECK(validate_tiling(antigon(n)).ok());
        if (n >= 4) CHECK(validate_tiling(fan_triangulation(n)).ok());
    }
    CHECK(validate_tiling(rhombic_hexagon(true)).ok());
    CHECK(validate_tiling(rhombic_hexagon(false)).ok());
}

TEST_CASE("tiling types of the stock shapes") {
    for (int n = 3; n <= 8; ++n) {
        CHECK(tiling_type(white_polygon(n)).k == n - 1);
        CHECK(tiling_type(antigon(n)).k == 1);
        if (n >= 4) CHECK(tiling_type(fan_triangulation(n)).k == 2);
    }
}

TEST_CASE("normalize_black merges adjacent black tiles") {
    // color two adjacent fan triangles black: merged size 3+3-2 = 4
    BicoloredTiling t = fan_triangulation(5);
    int painted = 0;
    for (FaceId f = 0; f < t.map.face_count() && painted < 2; ++f) {
        if (t.face_color[f] != TileColor::White) continue;
        t.face_color[f] = TileColor::Black;
        ++painted;
    }
    REQUIRE(validate_tiling(t).ok());
    BicoloredTiling nb = normalize_black(t);
    CHECK(validate_tiling(nb).ok());
    bool found4 = false;
    for (FaceId f = 0; f < nb.map.face_count(); ++f)
        if (nb.face_color[f] == TileColor::Black && nb.map.face_cycle(f).size() == 4) found4 = true;
    // adjacent fan triangles share a diagonal
    CHECK(found4);
    // idempotent
    CHECK(tiling_code(normalize_black(nb)) == tiling_code(nb));
    // merging preserves the Scott image exactly
    CHECK(diagram_code(scott_map(t)) == diagram_code(scott_map(nb)));
}

TEST_CASE("chain of three black triangles merges to size 5") {
    BicoloredTiling t = fan_triangulation(5);
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White) t.face_color[f] = TileColor::Black;
    BicoloredTiling nb = normalize_black(t);
    int blacks = 0;
    for (FaceId f = 0; f < nb.map.face_count(); ++f)
        if (nb.face_color[f] == TileColor::Black) {
            ++blacks;
            CHECK(nb.map.face_cycle(f).size() == 5);
        }
    CHECK(blacks == 1);
}

TEST_CASE("hourglass add/remove are inverse at the same site") {
    BicoloredTiling t = white_polygon(4);
    std::string before = tiling_code(t);
    FaceId tile = kNoFace;
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White) tile = f;
    const auto& cyc = t.map.face_cycle(tile);
    HourglassSite site{tile, cyc[0], cyc[2], -1};  // opposite edges of the square
    BicoloredTiling added = hourglass_move(t, site, HourglassDirection::Add);
    CHECK(validate_tiling(added).ok());
    CHECK(added.map.vertex_count() == t.map.vertex_count() + 1);
    // two black triangles and two white remainder tiles
    int black3 = 0, white = 0;
    for (FaceId f = 0; f < added.map.face_count(); ++f) {
        if (added.face_color[f] == TileColor::Black && added.map.face_cycle(f).size() == 3) ++black3;
        if (added.face_color[f] == TileColor::White) ++white;
    }
    CHECK(black3 == 2);
    CHECK(white == 2);

    HourglassSite rm;
    rm.apex = added.map.vertex_count() - 1;
    BicoloredTiling removed = hourglass_move(added, rm, HourglassDirection::Remove);
    CHECK(tiling_code(removed) == before);
}

TEST_CASE("V - F is invariant under hourglass and type stays fixed") {
    BicoloredTiling t = fan_triangulation(6);
    TilingType ty0 = tiling_type(t);
    FaceId tile = kNoFace;
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White) tile = f;
    const auto& cyc = t.map.face_cycle(tile);
    BicoloredTiling u = hourglass_move(t, HourglassSite{tile, cyc[0], cyc[1], -1},
                                       HourglassDirection::Add);
    TilingType ty1 = tiling_type(u);
    CHECK(ty1.k == ty0.k);
    CHECK(ty1.vertices == ty0.vertices + 1);
    CHECK(ty1.white_tiles == ty0.white_tiles + 1);
}

TEST_CASE("digon contract shrinks the flanking black tiles") {
    // the antigon rims are white 2-gons flanked by black tiles
    BicoloredTiling t = antigon(4);
    FaceId digon = kNoFace;
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White && t.map.face_cycle(f).size() == 2) digon = f;
    REQUIRE(digon != kNoFace);

    DigonSite site;
    site.digon = digon;
    BicoloredTiling contracted = digon_move(t, site, DigonDirection::Contract);
    CHECK(validate_tiling(contracted).ok());
    CHECK(contracted.map.vertex_count() == t.map.vertex_count() - 1);
    int black2 = 0;
    for (FaceId f = 0; f < contracted.map.face_count(); ++f)
        if (contracted.face_color[f] == TileColor::Black &&
            contracted.map.face_cycle(f).size() == 2)
            ++black2;
    CHECK(black2 == 2);
    // images stay equivalent across the move
    CHECK(diagram_code(reduce(scott_map(contracted))) == diagram_code(reduce(scott_map(t))));
}

TEST_CASE("digon decontract then contract restores the code") {
    BicoloredTiling a = antigon(3);
    std::string before = tiling_code(a);
    VertexId hub = 3;
    const auto& rot = a.map.rotation(hub);
    REQUIRE(rot.size() == 6);
    DigonSite site;
    site.vertex = hub;
    site.split_a = rot[0];
    site.split_b = rot[2];
    if (a.region_color(a.map.face_of(a.map.prev_at_vertex(rot[0]))) != TileColor::Black ||
        a.region_color(a.map.face_of(a.map.prev_at_vertex(rot[2]))) != TileColor::Black) {
        site.split_a = rot[1];
        site.split_b = rot[3];
    }
    BicoloredTiling split = digon_move(a, site, DigonDirection::Decontract);
    CHECK(validate_tiling(split).ok());
    CHECK(split.map.vertex_count() == a.map.vertex_count() + 1);

    bool restored = false;
    for (FaceId f = 0; f < split.map.face_count(); ++f) {
        if (split.face_color[f] != TileColor::White || split.map.face_cycle(f).size() != 2)
            continue;
        DigonSite back;
        back.digon = f;
        try {
            if (tiling_code(digon_move(split, back, DigonDirection::Contract)) == before)
                restored = true;
        } catch (const TilingError&) {
        }
    }
    CHECK(restored);
}

TEST_CASE("primitive flip is an involution") {
    BicoloredTiling t = fan_triangulation(5);
    std::string before = tiling_code(t);
    for (EdgeId e = t.n; e < t.map.edge_count(); ++e) {
        CAPTURE(e);
        REQUIRE(edge_flippable(t, e, FlipMode::Primitive));
        BicoloredTiling once = flip_edge(t, e);
        CHECK(validate_tiling(once).ok());
        CHECK(tiling_code(once) != before);
        // the replacement diagonal is the last edge id
        BicoloredTiling twice = flip_edge(once, once.map.edge_count() - 1);
        CHECK(tiling_code(twice) == before);
    }
}

TEST_CASE("flip errors") {
    BicoloredTiling t = fan_triangulation(5);
    CHECK_THROWS_AS(flip_edge(t, 0), TilingError);  // boundary edge
    BicoloredTiling w = white_polygon(4);
    CHECK_FALSE(edge_flippable(w, 0, FlipMode::Primitive));
}

TEST_CASE("general flip of a rhombic spoke keeps the type") {
    BicoloredTiling t = rhombic_hexagon(true);
    EdgeId spoke = t.n;  // first spoke
    REQUIRE(edge_flippable(t, spoke, FlipMode::General));
    BicoloredTiling flipped = flip_edge(t, spoke, FlipMode::General);
    CHECK(validate_tiling(flipped).ok());
    CHECK(tiling_type(flipped).k == tiling_type(t).k);
}

TEST_CASE("move_reduce removes an inserted hourglass") {
    BicoloredTiling t = fan_triangulation(6);
    std::string before = tiling_code(move_reduce(t));
    FaceId tile = kNoFace;
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White) tile = f;
    const auto& cyc = t.map.face_cycle(tile);
    BicoloredTiling u = hourglass_move(t, HourglassSite{tile, cyc[0], cyc[1], -1},
                                       HourglassDirection::Add);
    CHECK(tiling_code(move_reduce(u)) == before);
}

TEST_CASE("tilings_equivalent accepts definitional moves and rejects others") {
    BicoloredTiling t = fan_triangulation(5);
    FaceId tile = kNoFace;
    for (FaceId f = 0; f < t.map.face_count(); ++f)
        if (t.face_color[f] == TileColor::White) tile = f;
    const auto& cyc = t.map.face_cycle(tile);
    BicoloredTiling u = hourglass_move(t, HourglassSite{tile, cyc[0], cyc[1], -1},
                                       HourglassDirection::Add);
    CHECK(tilings_equivalent(t, u).equivalent);

    BicoloredTiling v = flip_edge(t, t.n);
    CHECK_FALSE(tilings_equivalent(t, v).equivalent);

    EquivalenceResult res2 = tilings_equivalent(white_polygon(5), antigon(5));
    CHECK_FALSE(res2.equivalent);
    CHECK(res2.permutations_differ);
}

TEST_CASE("isolated internal vertices are reported") {
    TilingSpec spec;
    spec.n = 4;
    spec.internal_vertices = 1;  // never wired up
    spec.interior_rotations.resize(5);
    BicoloredTiling t = build_tiling(spec);
    CHECK(validate_tiling(t).has("IsolatedVertex"));
}

TEST_CASE("pentagon fan and its mirror are not isomorphic with fixed labels") {
    BicoloredTiling a = fan_triangulation(5);
    // mirror: fan from vertex 2 hits different boundary labels
    TilingSpec spec;
    spec.n = 5;
    spec.interior_edges = {{2, 0}, {2, 4}};
    spec.interior_rotations.resize(5);
    spec.interior_rotations[0] = {edge_dart(5, false)};
    spec.interior_rotations[2] = {edge_dart(5, true), edge_dart(6, true)};
    spec.interior_rotations[4] = {edge_dart(6, false)};
    BicoloredTiling b = build_tiling(spec);
    REQUIRE(validate_tiling(b).ok());
    CHECK_FALSE(tiling_code(a) == tiling_code(b));
    CHECK(tiling_code(a) == tiling_code(fan_triangulation(5)));  // reflexive
}

TEST_CASE("white one-gon is rejected") {
    // a loop at a boundary vertex with white inside
    TilingSpec spec;
    spec.n = 3;
    spec.interior_edges = {{0, 0}};
    spec.interior_rotations.resize(3);
    spec.interior_rotations[0] = {edge_dart(3, true), edge_dart(3, false)};
    spec.color_hints = {{edge_dart(3, true), TileColor::White}};
    BicoloredTiling t = build_tiling(spec);
    ValidationReport rep = validate_tiling(t);
    CHECK(rep.has("WhiteOneGon"));
}

TEST_CASE("floating black 1-gon in a black disk round-trips exactly") {
    TilingSpec spec;
    spec.n = 3;
    spec.internal_vertices = 1;
    spec.interior_edges = {{3, 3}};
    spec.interior_rotations.resize(4);
    spec.interior_rotations[3] = {edge_dart(3, true), edge_dart(3, false)};
    spec.color_hints = {{edge_dart(0, false), TileColor::Black},
                        {edge_dart(3, true), TileColor::Black}};
    spec.embeddings = {edge_dart(0, false)};  // inside the black disk
    BicoloredTiling t = build_tiling(spec);
    REQUIRE(validate_tiling(t).ok());
    PathDiagram d = scott_map(t);
    CHECK(d.free_cycles.size() == 1);
    CHECK(d.free_cycles[0].clockwise);
    BicoloredTiling back = inverse_scott(d);
    CHECK(diagram_code(scott_map(back)) == diagram_code(d));
}

TEST_CASE("a plain degree-2 path is not a removable hourglass") {
    // splitting a white square by an internal path changes the permutation,
    // so the remover must not accept it
    TilingSpec spec;
    spec.n = 4;
    spec.internal_vertices = 1;
    spec.interior_edges = {{0, 4}, {4, 2}};
    spec.interior_rotations.resize(5);
    spec.interior_rotations[0] = {edge_dart(4, true)};
    spec.interior_rotations[2] = {edge_dart(5, false)};
    spec.interior_rotations[4] = {edge_dart(4, false), edge_dart(5, true)};
    BicoloredTiling t = build_tiling(spec);
    REQUIRE(validate_tiling(t).ok());
    HourglassSite rm;
    rm.apex = 4;
    CHECK_THROWS_AS(hourglass_move(t, rm, HourglassDirection::Remove), TilingError);
    CHECK_FALSE(tilings_equivalent(t, white_polygon(4)).equivalent);
}
