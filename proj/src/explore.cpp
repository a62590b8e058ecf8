#include "tilescott/explore.hpp"

#include <deque>
#include <map>
#include <random>
#include <sstream>

namespace tilescott {

FlipClassReport flip_class(const BicoloredTiling& t, FlipLimits limits, FlipMode mode) {
    FlipClassReport report;
    ScottImage img = scott_map_full(t);
    report.shared_permutation = decorated_permutation(img.diagram);
    report.shared_type = tiling_type(t);

    std::map<std::string, int> seen;
    std::deque<std::pair<BicoloredTiling, int>> queue;

    BicoloredTiling start = move_reduce(t);
    std::string code0 = tiling_code(start);
    seen[code0] = 0;
    report.representatives.push_back(code0);
    queue.push_back({start, 0});

    int steps = 0;
    while (!queue.empty()) {
        auto [cur, idx] = queue.front();
        queue.pop_front();
        for (EdgeId e = cur.n; e < cur.map.edge_count(); ++e) {
            if (!edge_flippable(cur, e, mode)) continue;
            if (++steps > limits.max_steps) {
                report.frontier_truncated = true;
                break;
            }
            BicoloredTiling next = move_reduce(flip_edge(cur, e, mode));
            std::string code = tiling_code(next);
            auto it = seen.find(code);
            int nidx;
            if (it == seen.end()) {
                if (static_cast<int>(seen.size()) >= limits.max_nodes) {
                    report.frontier_truncated = true;
                    continue;
                }
                nidx = static_cast<int>(seen.size());
                seen[code] = nidx;
                report.representatives.push_back(code);
                // every member shares permutation and type
                DecoratedPermutation dp = decorated_permutation(scott_map(next));
                if (!(dp == report.shared_permutation))
                    throw TilingError("FlipClassInvariant", "member changed the permutation");
                TilingType ty = tiling_type(next);
                if (ty.k != report.shared_type.k || ty.n != report.shared_type.n)
                    throw TilingError("FlipClassInvariant", "member changed the type");
                queue.push_back({next, nidx});
            } else {
                nidx = it->second;
            }
            if (idx < nidx) report.flip_adjacency.push_back({idx, nidx});
        }
        if (report.frontier_truncated) break;
    }
    report.size = static_cast<int>(report.representatives.size());
    return report;
}

CommuteResult commuting_square_check(const BicoloredTiling& t, EdgeId e) {
    if (!edge_flippable(t, e, FlipMode::Primitive))
        throw TilingError("NotFlippable", "edge " + std::to_string(e));
    CommuteResult res;
    ScottImage img = scott_map_full(t);
    auto it = img.edge_region.find(e);
    if (it == img.edge_region.end())
        throw TilingError("NotFlippable", "edge has no alternating region");
    res.exchange_face = it->second;

    PathDiagram exchanged = geometric_exchange(img.diagram, res.exchange_face);
    PathDiagram flipped = scott_map(flip_edge(t, e, FlipMode::Primitive));
    res.commutes = diagrams_equivalent(exchanged, flipped);
    std::ostringstream ts;
    ts << "edge " << e << " -> quad face " << res.exchange_face << "; "
       << (res.commutes ? "S(mu_e T) == mu_Delta S(T) up to reduction" : "sides differ");
    res.transcript = ts.str();
    return res;
}

// ----------------------------------------------------------------- corpus --

namespace {

int pick(std::mt19937_64& rng, int k) { return static_cast<int>(rng() % static_cast<uint64_t>(k)); }

}  // namespace

static BicoloredTiling random_tiling_attempt(std::mt19937_64& rng, int min_n, int max_n, int ops);

BicoloredTiling random_tiling(uint64_t seed, int min_n, int max_n, int ops) {
    // some colorings route a strand back through the same white tile, which
    // makes the image self-crossing; those shapes are skipped here
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
    while (true) {
        BicoloredTiling t = random_tiling_attempt(rng, min_n, max_n, ops);
        try {
            if (validate_diagram(scott_map(t)).ok()) return t;
        } catch (const std::exception&) {
        }
    }
}

static BicoloredTiling random_tiling_attempt(std::mt19937_64& rng, int min_n, int max_n, int ops) {
    int n = min_n + pick(rng, max_n - min_n + 1);
    BicoloredTiling t = fan_triangulation(n);

    for (int step = 0; step < ops; ++step) {
        int kind = pick(rng, 4);
        if (kind == 0) {
            // random primitive flip
            std::vector<EdgeId> cand;
            for (EdgeId e = t.n; e < t.map.edge_count(); ++e)
                if (edge_flippable(t, e, FlipMode::Primitive)) cand.push_back(e);
            if (!cand.empty()) t = flip_edge(t, cand[pick(rng, (int)cand.size())]);
        } else if (kind == 1) {
            // recolor a white triangle black (keeps validity)
            std::vector<FaceId> cand;
            for (FaceId f = 0; f < t.map.face_count(); ++f)
                if (t.face_color[f] == TileColor::White && t.map.face_cycle(f).size() >= 2)
                    cand.push_back(f);
            if (!cand.empty()) {
                BicoloredTiling u = t;
                u.face_color[cand[pick(rng, (int)cand.size())]] = TileColor::Black;
                if (validate_tiling(u).ok()) t = std::move(u);
            }
        } else if (kind == 2) {
            // hourglass insertion in a white tile
            std::vector<FaceId> cand;
            for (FaceId f = 0; f < t.map.face_count(); ++f)
                if (t.face_color[f] == TileColor::White && t.map.face_cycle(f).size() >= 2)
                    cand.push_back(f);
            if (!cand.empty()) {
                FaceId p = cand[pick(rng, (int)cand.size())];
                const auto& cyc = t.map.face_cycle(p);
                Dart di = cyc[pick(rng, (int)cyc.size())];
                Dart dj = cyc[pick(rng, (int)cyc.size())];
                if (dart_edge(di) != dart_edge(dj)) {
                    HourglassSite site{p, di, dj, -1};
                    t = hourglass_move(t, site, HourglassDirection::Add);
                }
            }
        } else {
            // digon decontraction at a vertex whose pierced corners are black
            std::vector<DigonSite> cand;
            for (VertexId v = 0; v < t.map.vertex_count(); ++v) {
                const auto& rot = t.map.rotation(v);
                if (rot.size() < 2) continue;
                for (size_t i = 0; i < rot.size(); ++i)
                    for (size_t j = 0; j < rot.size(); ++j) {
                        if (i == j) continue;
                        Dart a = rot[i], bd = rot[j];
                        if (t.region_color(t.map.face_of(t.map.prev_at_vertex(a))) != TileColor::Black)
                            continue;
                        if (t.region_color(t.map.face_of(t.map.prev_at_vertex(bd))) != TileColor::Black)
                            continue;
                        if (v < t.n) {
                            // boundary darts must stay on the original vertex
                            bool ok = true;
                            for (Dart cur = bd; cur != a; cur = t.map.next_at_vertex(cur))
                                if (dart_edge(cur) < t.n) ok = false;
                            if (!ok) continue;
                        }
                        cand.push_back(DigonSite{kNoFace, v, a, bd});
                    }
            }
            if (!cand.empty())
                t = digon_move(t, cand[pick(rng, (int)cand.size())], DigonDirection::Decontract);
        }
    }
    return t;
}

std::vector<BicoloredTiling> corpus(uint64_t seed, int count) {
    std::vector<BicoloredTiling> out;
    // a few stock shapes first, then randomized ones
    for (int n = 3; n <= 6 && static_cast<int>(out.size()) < count; ++n) out.push_back(white_polygon(n));
    for (int n = 3; n <= 6 && static_cast<int>(out.size()) < count; ++n) out.push_back(antigon(n));
    for (int n = 3; n <= 5 && static_cast<int>(out.size()) < count; ++n) out.push_back(all_black_disk(n));
    for (int n = 4; n <= 8 && static_cast<int>(out.size()) < count; ++n)
        out.push_back(fan_triangulation(n));
    out.push_back(rhombic_hexagon(true));
    out.push_back(rhombic_hexagon(false));
    uint64_t i = 0;
    while (static_cast<int>(out.size()) < count) out.push_back(random_tiling(seed + i++));
    out.resize(count);
    return out;
}

}  // namespace tilescott
