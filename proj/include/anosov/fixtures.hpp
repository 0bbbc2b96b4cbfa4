#ifndef ANOSOV_FIXTURES_HPP
#define ANOSOV_FIXTURES_HPP

#include "anosov/model.hpp"

namespace anosov {
namespace fixtures {

// M0: single chart, one full-span marker.
OrbitModel m0();
// M1: nonbranching leaf u0 with perfect fits in the upper-left and lower-right
// quadrants; {u0, s1, s2} is an entire master set.
OrbitModel m1();
// M1 with a declared top end.
OrbitModel m1e();
// M2: spiralling-road window with runways and ends tau-/tau+.
OrbitModel m2();
// M3: branched leaf space realizing the 14-breakpoint zigzag with degenerate
// intervals at nu4, nu10, nu12.
OrbitModel m3();
// M4: periodic road tile with a shift automorphism and both ends declared.
OrbitModel m4();

OrbitModel by_name(const std::string& name);
std::vector<std::string> names();

} // namespace fixtures
} // namespace anosov

#endif
