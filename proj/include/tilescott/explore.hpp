#pragma once

#include <cstdint>

#include "tilescott/scott.hpp"

namespace tilescott {

struct FlipClassReport {
    std::vector<std::string> representatives;  // canonical codes of reduced forms
    int size = 0;
    DecoratedPermutation shared_permutation;
    TilingType shared_type;
    bool frontier_truncated = false;
    std::vector<std::pair<int, int>> flip_adjacency;  // indices into representatives
};

struct FlipLimits {
    int max_nodes = 10000;
    int max_steps = 1000000;
};

FlipClassReport flip_class(const BicoloredTiling& t, FlipLimits limits = {},
                           FlipMode mode = FlipMode::Primitive);

struct CommuteResult {
    bool commutes = false;
    FaceId exchange_face = kNoFace;  // the alternating quad used as S(e)
    std::string transcript;
};
CommuteResult commuting_square_check(const BicoloredTiling& t, EdgeId e);

// Seeded generator for the randomized acceptance corpus: triangulation bases
// mutated by flips, recolorings and hourglass insertions.
BicoloredTiling random_tiling(uint64_t seed, int min_n = 4, int max_n = 8, int ops = 6);
std::vector<BicoloredTiling> corpus(uint64_t seed, int count);

}  // namespace tilescott
