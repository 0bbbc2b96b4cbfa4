#ifndef ANOSOV_SECTIONS_HPP
#define ANOSOV_SECTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "anosov/leafspace.hpp"

namespace anosov {

// Point of a circle fiber: the unique nonmarker point, or the crossing with a
// stable leaf. stable < 0 encodes the nonmarker point.
struct FiberPoint {
    int leaf = -1;    // unstable index
    int stable = -1;

    bool nonmarker() const { return stable < 0; }
    bool operator==(const FiberPoint& o) const { return leaf == o.leaf && stable == o.stable; }
    bool operator!=(const FiberPoint& o) const { return !(*this == o); }
};

inline FiberPoint nonmarker_at(int leaf) { return FiberPoint{leaf, -1}; }
inline FiberPoint marker_at(int leaf, int stable) { return FiberPoint{leaf, stable}; }

// Total assignment leaf -> fiber point over that leaf.
struct Section {
    std::vector<int> value; // per unstable leaf: stable index or -1 (nonmarker)

    FiberPoint at(int leaf) const { return FiberPoint{leaf, value[leaf]}; }
    bool operator==(const Section& o) const { return value == o.value; }
    bool operator!=(const Section& o) const { return !(*this == o); }
    bool operator<(const Section& o) const { return value < o.value; }
};

struct Quadrant {
    bool upper = true;
    bool left = true;
    bool operator==(const Quadrant& q) const { return upper == q.upper && left == q.left; }
};

inline std::string to_string(const Quadrant& q) {
    return std::string(q.upper ? "upper" : "lower") + "-" + (q.left ? "left" : "right");
}

struct MarkerInterval {
    std::vector<int> leaves;      // unstable leaves crossed, chart order
    // Flags for the two ends of the marker (minus end first).
    std::optional<int> fit_minus; // fitted unstable leaf, if any
    std::optional<int> fit_plus;
    bool escapes_minus() const { return !fit_minus.has_value(); }
    bool escapes_plus() const { return !fit_plus.has_value(); }
};

MarkerInterval marker_interval(const LeafSpace& ls, int stable);

Quadrant quadrant_of(const LeafSpace& ls, const PerfectFit& pf);

struct AdmissibilityResult {
    bool admissible = true;
    std::string violation; // first violation witness
};

AdmissibilityResult is_admissible(const LeafSpace& ls, const Section& sec);

// Leftmost special section through p: rides markers, takes the extremal
// corner road at nonmarker points, peels onto freshly attached roads, turns
// corners at cataclysms.
Section special_section(const LeafSpace& ls, FiberPoint p);

// single step of the leftmost rule along a cover edge; -1 is the nonmarker
int leftmost_step(const LeafSpace& ls, int from_leaf, int from_value, int to_leaf, bool up);

struct LimitSectionResult {
    bool ok = false;
    Section section;
    int period = 0;             // stride at which the march stabilized
    int failing_leaf = -1;      // set when !ok (no_stabilization)
    std::vector<int> march;     // basepoint leaves used, far to near
};

LimitSectionResult limit_section_at_end(const LeafSpace& ls, const EndDecl& e);

// Cyclic order on pairwise noncrossing sections.
struct CircleOrder {
    std::vector<Section> sections;   // in cyclic order
    std::vector<int> input_index;    // position of each input in `sections`
};

struct CircleOrderError : std::runtime_error {
    explicit CircleOrderError(const std::string& what) : std::runtime_error(what) {}
};

// +1 / -1 orientation of a fiber triple; 0 when not all distinct.
int fiber_orient(const LeafSpace& ls, int leaf, int a, int b, int c);

// true when the two sections cross (strict side flip with no wrap between).
bool sections_cross(const LeafSpace& ls, const Section& a, const Section& b);

// Orientation of a section triple from fiber evaluation, 0 if no witness leaf.
int section_triple_orient(const LeafSpace& ls, const Section& a, const Section& b,
                          const Section& c);

CircleOrder circular_order(const LeafSpace& ls, const std::vector<Section>& secs);

} // namespace anosov

#endif
