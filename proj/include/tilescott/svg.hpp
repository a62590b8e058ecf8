#pragma once

#include <string>

#include "tilescott/diagram.hpp"
#include "tilescott/tiling.hpp"

namespace tilescott {

struct SvgOptions {
    double radius = 100.0;
    int barycentric_iterations = 50;
};

std::string render_svg(const BicoloredTiling& t, const SvgOptions& opt = {});
std::string render_svg(const PathDiagram& d, const SvgOptions& opt = {});

}  // namespace tilescott
