#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tilescott/core.hpp"

using namespace tilescott;

namespace {

CombMap triangle_map() {
    // vertices 0,1,2 clockwise on a circle; edges i: i -> i+1
    std::vector<std::vector<Dart>> rot(3);
    for (int v = 0; v < 3; ++v) rot[v] = {edge_dart(v, true), edge_dart((v + 2) % 3, false)};
    CombMap m = CombMap::build(3, 3, rot);
    m.set_outer_face(0, m.face_of(edge_dart(0, true)));
    return m;
}

}  // namespace

TEST_CASE("single edge map") {
    std::vector<std::vector<Dart>> rot = {{0}, {1}};
    CombMap m = CombMap::build(2, 1, rot);
    CHECK(m.dart_count() == 2);
    CHECK(m.edge_count() == 1);
    CHECK(m.face_count() == 1);
    m.set_outer_face(0, 0);
    CHECK(m.validate().ok());
}

TEST_CASE("triangle cycle has two faces and satisfies Euler") {
    CombMap m = triangle_map();
    CHECK(m.vertex_count() == 3);
    CHECK(m.edge_count() == 3);
    CHECK(m.face_count() == 2);
    CHECK(m.validate().ok());
    for (FaceId f = 0; f < m.face_count(); ++f) CHECK(m.face_cycle(f).size() == 3);
    // the inner face contains the reverse darts and walks counterclockwise
    FaceId inner = m.face_of(edge_dart(0, false));
    CHECK_FALSE(m.is_outer(inner));
    Dart d = edge_dart(0, false);
    CHECK(m.next_in_face(d) == edge_dart(2, false));
}

TEST_CASE("loop edge at one vertex gives two faces") {
    std::vector<std::vector<Dart>> rot = {{0, 1}};
    CombMap m = CombMap::build(1, 1, rot);
    CHECK(m.face_count() == 2);
    CHECK(m.face_cycle(0).size() == 1);
    CHECK(m.face_cycle(1).size() == 1);
    m.set_outer_face(0, m.face_of(1));
    CHECK(m.validate().ok());
}

TEST_CASE("two parallel edges between two vertices") {
    // rotation at 0: [e0+, e1+], at 1: the reversed pair
    std::vector<std::vector<Dart>> rot = {{0, 2}, {3, 1}};
    CombMap m = CombMap::build(2, 2, rot);
    CHECK(m.face_count() == 2);
    CHECK(m.face_cycle(0).size() == 2);
    m.set_outer_face(0, 0);
    CHECK(m.validate().ok());
}

TEST_CASE("rotation errors are reported") {
    std::vector<std::vector<Dart>> missing = {{0}, {}};
    CHECK_THROWS_AS(CombMap::build(2, 1, missing), MapError);
    std::vector<std::vector<Dart>> doubled = {{0, 0}, {1}};
    CHECK_THROWS_AS(CombMap::build(2, 1, doubled), MapError);
}

TEST_CASE("genus check catches non planar rotation data") {
    // K4 with an "impossible" rotation assignment picked to break Euler
    std::vector<std::vector<Dart>> rot(4);
    // edges: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3)
    rot[0] = {edge_dart(0, true), edge_dart(1, true), edge_dart(2, true)};
    rot[1] = {edge_dart(0, false), edge_dart(3, true), edge_dart(4, true)};
    rot[2] = {edge_dart(1, false), edge_dart(3, false), edge_dart(5, true)};
    rot[3] = {edge_dart(2, false), edge_dart(4, false), edge_dart(5, false)};
    CombMap m = CombMap::build(4, 6, rot);
    m.set_outer_face(0, 0);
    ValidationReport rep = m.validate();
    CHECK(rep.has("GenusNonZero"));
}

TEST_CASE("canonical code is invariant under dart renaming") {
    CombMap m = triangle_map();
    CodeDecorations decor;
    std::string code = canonical_code(m, edge_dart(0, true), decor);

    // rebuild with edges renumbered: edge k -> (k+1)%3
    std::vector<std::vector<Dart>> rot(3);
    auto ed = [](EdgeId e, bool f) { return edge_dart(e, f); };
    rot[0] = {ed(1, true), ed(0, false)};
    rot[1] = {ed(2, true), ed(1, false)};
    rot[2] = {ed(0, true), ed(2, false)};
    CombMap m2 = CombMap::build(3, 3, rot);
    m2.set_outer_face(0, m2.face_of(ed(1, true)));
    std::string code2 = canonical_code(m2, ed(1, true), decor);
    CHECK(code == code2);
}

TEST_CASE("canonical code separates triangle from square") {
    CombMap tri = triangle_map();
    std::vector<std::vector<Dart>> rot(4);
    for (int v = 0; v < 4; ++v) rot[v] = {edge_dart(v, true), edge_dart((v + 3) % 4, false)};
    CombMap sq = CombMap::build(4, 4, rot);
    sq.set_outer_face(0, sq.face_of(edge_dart(0, true)));
    CodeDecorations decor;
    CHECK(canonical_code(tri, edge_dart(0, true), decor) !=
          canonical_code(sq, edge_dart(0, true), decor));
}

namespace {

// brute force isomorphism fixing the anchor dart and the outer faces
bool brute_isomorphic(const CombMap& a, Dart anchor_a, const CombMap& b, Dart anchor_b) {
    if (a.dart_count() != b.dart_count()) return false;
    int k = a.dart_count();
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    do {
        if (perm[anchor_a] != anchor_b) continue;
        bool ok = true;
        for (Dart d = 0; d < k && ok; ++d) {
            if (perm[alpha(d)] != alpha(perm[d])) ok = false;
            else if (perm[a.next_at_vertex(d)] != b.next_at_vertex(perm[d])) ok = false;
            else if (a.is_outer(a.face_of(d)) != b.is_outer(b.face_of(perm[d]))) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

CombMap random_small_map(std::mt19937& rng, int edges) {
    while (true) {
        int verts = 1 + static_cast<int>(rng() % (2 * edges));
        std::vector<std::vector<Dart>> rot(verts);
        std::vector<Dart> darts(2 * edges);
        for (int i = 0; i < 2 * edges; ++i) darts[i] = i;
        std::shuffle(darts.begin(), darts.end(), rng);
        for (Dart d : darts) rot[rng() % verts].push_back(d);
        CombMap m = CombMap::build(verts, edges, rot);
        bool connected = m.component_count() == 1;
        if (!connected) continue;
        m.set_outer_face(0, m.face_of(0));
        if (!m.validate().ok()) continue;  // keep planar ones only
        return m;
    }
}

}  // namespace

TEST_CASE("code equality agrees with brute force isomorphism on small maps") {
    std::mt19937 rng(20240817);
    CodeDecorations decor;
    int agree = 0;
    for (int trial = 0; trial < 48; ++trial) {
        int edges = trial < 40 ? 3 : 4;  // up to 8 darts
        CombMap a = random_small_map(rng, edges);
        CombMap b = random_small_map(rng, edges);
        for (Dart anchor_b = 0; anchor_b < b.dart_count(); ++anchor_b) {
            bool codes = canonical_code(a, 0, decor) == canonical_code(b, anchor_b, decor);
            bool brute = brute_isomorphic(a, 0, b, anchor_b);
            CHECK(codes == brute);
            if (codes) ++agree;
        }
    }
    CHECK(agree > 0);  // at least some pairs must actually be isomorphic
}
