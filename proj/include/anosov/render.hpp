#ifndef ANOSOV_RENDER_HPP
#define ANOSOV_RENDER_HPP

#include <string>

#include "anosov/current.hpp"
#include "anosov/master.hpp"

namespace anosov {

// Orbit-space view: stable leaves blue, unstable red.
std::string render_orbit_svg(const LeafSpace& ls);

// Leaf-space view colored by LU (yellow) / RD (green) for a section.
std::string render_coloring_svg(const LeafSpace& ls, const Section& sec,
                                const RegionColoring& rc);

// Circle view: sections in cyclic order, grouped by their CT value.
std::string render_circle_svg(const LeafSpace& ls, const MasterSets& ms, const CircleOrder& co);

} // namespace anosov

#endif
