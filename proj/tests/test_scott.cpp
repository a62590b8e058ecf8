#include <doctest.h>

#include <map>
#include <set>

#include "tilescott/explore.hpp"
#include "tilescott/scott.hpp"

using namespace tilescott;

namespace {

std::vector<int> shift_perm(int n, int delta) {
    std::vector<int> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = ((i + delta) % n + n) % n;
    return pi;
}

std::map<RegionClass, std::map<int, int>> region_census(const PathDiagram& d) {
    std::map<RegionClass, std::map<int, int>> out;
    for (const auto& r : classify_regions(d)) out[r.cls][r.size]++;
    return out;
}

}  // namespace

TEST_CASE("white n-gon image: n crossings, i -> i-1, reduced") {
    for (int n = 3; n <= 8; ++n) {
        CAPTURE(n);
        PathDiagram d = scott_map(white_polygon(n));
        CHECK(validate_diagram(d).ok());
        CHECK(d.data.crossing_count == n);
        DecoratedPermutation dp = decorated_permutation(d);
        CHECK(dp.pi == shift_perm(n, -1));
        CHECK(dp.color.empty());
        CHECK(diagram_code(reduce(d)) == diagram_code(d));
        CHECK(is_postnikov(d).is_postnikov);
    }
}

TEST_CASE("white triangle image region classes") {
    PathDiagram d = scott_map(white_polygon(3));
    auto census = region_census(d);
    // 1 counterclockwise region of size 3, 3 clockwise corners of size 1,
    // 3 alternating boundary regions of size 2
    CHECK(census[RegionClass::Counterclockwise][3] == 1);
    CHECK(census[RegionClass::Clockwise][1] == 3);
    CHECK(census[RegionClass::Alternating][2] == 3);
    LabelReport labels = region_labels(d);
    CHECK(labels.uniform);
    CHECK(labels.k == 2);
}

TEST_CASE("all-black disk: identity permutation, clockwise fixed points") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        PathDiagram d = scott_map(all_black_disk(n));
        CHECK(validate_diagram(d).ok());
        CHECK(d.data.crossing_count == 0);
        DecoratedPermutation dp = decorated_permutation(d);
        CHECK(dp.pi == shift_perm(n, 0));
        for (int i = 0; i < n; ++i) {
            REQUIRE(dp.color.count(i));
            CHECK(dp.color.at(i) == 1);
        }
        CHECK(d.free_cycles.empty());
    }
}

TEST_CASE("antigon image: i -> i+1 and type (1,n)") {
    for (int n = 3; n <= 8; ++n) {
        CAPTURE(n);
        BicoloredTiling t = antigon(n);
        REQUIRE(validate_tiling(t).ok());
        PathDiagram d = scott_map(t);
        CHECK(validate_diagram(d).ok());
        CHECK(d.data.crossing_count == 2 * n);
        DecoratedPermutation dp = decorated_permutation(d);
        CHECK(dp.pi == shift_perm(n, 1));
        TilingType ty = tiling_type(t);
        CHECK(ty.vertices == n + 1);
        CHECK(ty.white_tiles == n);
        CHECK(ty.k == 1);
        LabelReport labels = region_labels(d);
        CHECK(labels.uniform);
        CHECK(labels.k == 1);
        CHECK(is_postnikov(d).is_postnikov);
    }
}

TEST_CASE("fan triangulation image: i -> i+2, Postnikov, type (2,n)") {
    for (int n = 4; n <= 8; ++n) {
        CAPTURE(n);
        BicoloredTiling t = fan_triangulation(n);
        REQUIRE(validate_tiling(t).ok());
        PathDiagram d = scott_map(t);
        CHECK(validate_diagram(d).ok());
        CHECK(d.data.crossing_count == 3 * (n - 2));
        CHECK(decorated_permutation(d).pi == shift_perm(n, 2));
        CHECK(is_postnikov(d).is_postnikov);
        LabelReport labels = region_labels(d);
        CHECK(labels.uniform);
        CHECK(labels.k == 2);
        TilingType ty = tiling_type(t);
        CHECK(ty.k == 2);
    }
}

TEST_CASE("region census matches the feature correspondence") {
    for (int n = 4; n <= 6; ++n) {
        CAPTURE(n);
        BicoloredTiling t = fan_triangulation(n);
        ScottImage img = scott_map_full(t);
        // every tiling vertex has a clockwise region or a free cycle
        int cw_or_cycle = 0;
        for (VertexId v = 0; v < t.map.vertex_count(); ++v) {
            bool has = img.vertex_region[v] != kNoFace || img.vertex_cycle[v] != -1;
            CHECK(has);
            if (has) ++cw_or_cycle;
        }
        CHECK(cw_or_cycle == t.map.vertex_count());
        auto census = region_census(img.diagram);
        int ccw_total = 0, cw_total = 0;
        for (auto& [sz, k] : census[RegionClass::Counterclockwise]) ccw_total += k;
        for (auto& [sz, k] : census[RegionClass::Clockwise]) cw_total += k;
        CHECK(ccw_total == n - 2);                        // one per white tile
        CHECK(cw_total + (int)img.diagram.free_cycles.size() == t.map.vertex_count());
    }
}

TEST_CASE("full region census over corpus samples") {
    auto pool = corpus(1234, 16);
    for (size_t i = 0; i < pool.size(); ++i) {
        CAPTURE(i);
        const BicoloredTiling& t = pool[i];
        ScottImage img = scott_map_full(t);
        int cw = 0, ccw = 0, alt = 0;
        for (const auto& r : classify_regions(img.diagram)) {
            if (r.touches_boundary_arc) {
                ++alt;
            } else if (r.cls == RegionClass::Clockwise) {
                ++cw;
            } else if (r.cls == RegionClass::Counterclockwise) {
                ++ccw;
            } else {
                ++alt;
            }
        }
        int whites = 0;
        for (FaceId f = 0; f < t.map.face_count(); ++f)
            if (t.face_color[f] == TileColor::White) ++whites;
        CHECK(cw + static_cast<int>(img.diagram.free_cycles.size()) == t.map.vertex_count());
        CHECK(ccw == whites);
        std::set<FaceId> complexes;
        for (auto& [e, face] : img.edge_region) complexes.insert(face);
        CHECK(alt == static_cast<int>(complexes.size()));

        // reduce is idempotent and keeps the decorated permutation
        PathDiagram r1 = reduce(img.diagram);
        CHECK(decorated_permutation(r1) == decorated_permutation(img.diagram));
        CHECK(diagram_code(reduce(r1)) == diagram_code(r1));
    }
}

TEST_CASE("scott image round trip: exact on images") {
    std::vector<BicoloredTiling> samples;
    for (int n = 3; n <= 6; ++n) samples.push_back(white_polygon(n));
    for (int n = 3; n <= 6; ++n) samples.push_back(antigon(n));
    for (int n = 3; n <= 5; ++n) samples.push_back(all_black_disk(n));
    for (int n = 4; n <= 7; ++n) samples.push_back(fan_triangulation(n));
    samples.push_back(rhombic_hexagon(true));
    for (size_t i = 0; i < samples.size(); ++i) {
        CAPTURE(i);
        PathDiagram d = scott_map(samples[i]);
        BicoloredTiling back = inverse_scott(d);
        PathDiagram again = scott_map(back);
        CHECK(diagram_code(again) == diagram_code(d));
        CHECK(tilings_equivalent(back, samples[i]).equivalent);
    }
}

TEST_CASE("black merge invariance of the image") {
    // recolor one fan triangle black; the image code must be stable under
    // normalize_black
    BicoloredTiling t = fan_triangulation(5);
    for (FaceId f = 0; f < t.map.face_count(); ++f) {
        if (t.face_color[f] == TileColor::White) {
            t.face_color[f] = TileColor::Black;
            break;
        }
    }
    REQUIRE(validate_tiling(t).ok());
    CHECK(diagram_code(scott_map(t)) == diagram_code(scott_map(normalize_black(t))));
}
