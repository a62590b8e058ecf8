#include <doctest.h>

#include <map>
#include <set>

#include "tilescott/explore.hpp"

using namespace tilescott;

namespace {

// Independent oracle, written against the flip BFS rather than with it:
// the closed recursion T(n) = sum T(k) T(n-k+1) and an exhaustive
// enumeration of triangulations as sets of non-crossing diagonals.
long triangulation_count(int n) {
    if (n <= 3) return 1;
    std::vector<long> memo(n + 1, 0);
    memo[2] = 1;
    memo[3] = 1;
    for (int m = 4; m <= n; ++m) {
        long total = 0;
        for (int k = 2; k < m; ++k) total += memo[k] * memo[m - k + 1];
        memo[m] = total;
    }
    return memo[n];
}

// exhaustive set of triangulations as diagonal sets, for the size oracle
void enumerate_exact(int lo, int hi, std::set<std::pair<int, int>> current,
                     std::set<std::set<std::pair<int, int>>>& out) {
    if (hi - lo <= 1) {
        out.insert(current);
        return;
    }
    for (int k = lo + 1; k < hi; ++k) {
        auto next = current;
        if (k - lo > 1) next.insert({lo, k});
        if (hi - k > 1) next.insert({k, hi});
        std::set<std::set<std::pair<int, int>>> partial;
        enumerate_exact(lo, k, next, partial);
        for (const auto& p : partial) enumerate_exact(k, hi, p, out);
    }
}

long enumerate_count(int n) {
    std::set<std::set<std::pair<int, int>>> out;
    enumerate_exact(0, n - 1, {}, out);
    return static_cast<long>(out.size());
}

}  // namespace

TEST_CASE("triangulation enumerator agrees with the closed recursion") {
    for (int n = 3; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(enumerate_count(n) == triangulation_count(n));
    }
    CHECK(triangulation_count(5) == 5);
    CHECK(triangulation_count(6) == 14);
}

TEST_CASE("pentagon flip class has five members") {
    FlipClassReport rep = flip_class(fan_triangulation(5));
    CHECK(rep.size == 5);
    CHECK_FALSE(rep.frontier_truncated);
    CHECK(rep.size == enumerate_count(5));
}

TEST_CASE("hexagon flip class matches the Catalan number") {
    FlipClassReport rep = flip_class(fan_triangulation(6));
    CHECK(rep.size == 14);
    CHECK(rep.size == enumerate_count(6));
}

TEST_CASE("flip class of an unflippable tiling is a fixed point") {
    FlipClassReport rep = flip_class(white_polygon(5));
    CHECK(rep.size == 1);
}

TEST_CASE("flip class respects node limits") {
    FlipLimits lim;
    lim.max_nodes = 3;
    FlipClassReport rep = flip_class(fan_triangulation(6), lim);
    CHECK(rep.frontier_truncated);
    CHECK(rep.size <= 3);
}

TEST_CASE("commuting square on the smallest flippable instance") {
    CommuteResult res = commuting_square_check(fan_triangulation(4), 4);
    CHECK(res.commutes);
    CHECK(res.exchange_face != kNoFace);
}

TEST_CASE("yang-baxter chain on the rhombic hexagon") {
    BicoloredTiling t = rhombic_hexagon(true);  // spokes at boundary vertices 1, 3, 5
    BicoloredTiling other = rhombic_hexagon(false);

    // the classic sequence: e1, e2, e3 are the spokes; the final flip hits the
    // replacement of e1 (the edge joining two internal vertices). Between
    // flips the class representative is cleaned through the Scott bijection.
    auto spoke_at = [](const BicoloredTiling& t, int bv) -> EdgeId {
        for (EdgeId e = t.n; e < t.map.edge_count(); ++e) {
            VertexId u = t.map.origin(edge_dart(e, true)), w = t.map.target(edge_dart(e, true));
            if (((u == bv && w >= t.n) || (w == bv && u >= t.n)) &&
                edge_flippable(t, e, FlipMode::General))
                return e;
        }
        return -1;
    };
    auto internal_edge = [](const BicoloredTiling& t) -> EdgeId {
        for (EdgeId e = t.n; e < t.map.edge_count(); ++e)
            if (t.map.origin(edge_dart(e, true)) >= t.n &&
                t.map.target(edge_dart(e, true)) >= t.n && edge_flippable(t, e, FlipMode::General))
                return e;
        return -1;
    };

    BicoloredTiling cur = t;
    int spokes[] = {1, 3, 5};
    for (int step = 0; step < 4; ++step) {
        EdgeId e = step < 3 ? spoke_at(cur, spokes[step]) : internal_edge(cur);
        REQUIRE(e >= cur.n);
        cur = inverse_scott(reduce(scott_map(flip_edge(cur, e, FlipMode::General))));
    }
    CHECK(tilings_equivalent(cur, other).equivalent);
    CHECK_FALSE(tilings_equivalent(cur, t).equivalent);
}

TEST_CASE("corpus tilings are valid and reproducible") {
    auto batch1 = corpus(42, 25);
    auto batch2 = corpus(42, 25);
    REQUIRE(batch1.size() == 25);
    for (size_t i = 0; i < batch1.size(); ++i) {
        CAPTURE(i);
        CHECK(validate_tiling(batch1[i]).ok());
        CHECK(tiling_code(batch1[i]) == tiling_code(batch2[i]));
    }
}
