#pragma once

#include "tilescott/diagram.hpp"
#include "tilescott/tiling.hpp"

namespace tilescott {

// Scott image together with the tiling-feature correspondence: every face of
// the image is the region of exactly one vertex, white tile, or black/edge
// complex of the source tiling.
struct ScottImage {
    PathDiagram diagram;
    std::vector<FaceId> vertex_region;   // tiling vertex -> diagram face
    std::vector<int> vertex_cycle;        // tiling vertex -> free cycle index or -1
    std::map<FaceId, FaceId> tile_region;  // white tiling face -> diagram face
    std::map<EdgeId, FaceId> edge_region;  // tiling edge -> diagram face of its complex
};

ScottImage scott_map_full(const BicoloredTiling& t);
PathDiagram scott_map(const BicoloredTiling& t);

// Exact inverse on Scott images: rebuilds the tiling whose image is the
// input diagram, up to black merging. Throws when no tiling maps onto the
// diagram exactly (UnsupportedCcwFreeCycle, UnrealizableRegion).
BicoloredTiling inverse_scott(const PathDiagram& d);

}  // namespace tilescott
