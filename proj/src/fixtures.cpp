#include "anosov/fixtures.hpp"

#include <stdexcept>

namespace anosov {
namespace fixtures {

namespace {

struct Builder {
    OrbitModel m;

    int u(const std::string& name) {
        int i = m.unstable_index(name);
        if (i >= 0) return i;
        m.unstable_names.push_back(name);
        m.crossings_along_unstable.push_back({});
        return m.n_unstable() - 1;
    }
    int s(const std::string& name) {
        int i = m.stable_index(name);
        if (i >= 0) return i;
        m.stable_names.push_back(name);
        m.crossings_along_stable.push_back({});
        return m.n_stable() - 1;
    }
    // crossings along a stable leaf, ascending in the leaf space
    void road(const std::string& stable, const std::vector<std::string>& crossed) {
        int si = s(stable);
        for (const auto& un : crossed) m.crossings_along_stable[si].push_back(u(un));
    }
    void fit(const std::string& stable, Sign ss, const std::string& un, Sign us) {
        m.perfect_fits.push_back({{stable_leaf(s(stable)), ss}, {unstable_leaf(u(un)), us}});
    }
    // fiber order along each unstable leaf, minus to plus
    void fiber(const std::string& un, const std::vector<std::string>& stables) {
        int ui = u(un);
        for (const auto& st : stables) m.crossings_along_unstable[ui].push_back(s(st));
    }
    void end(const std::string& id, const std::string& leaf, Sign side) {
        m.ends.push_back({id, u(leaf), side, std::nullopt});
    }
    void chain(BranchSide side, const std::vector<std::string>& leaves,
               const std::vector<ChainLink>& links) {
        BranchingChain c;
        c.family = Family::Unstable;
        c.side = side;
        for (const auto& l : leaves) c.leaves.push_back(u(l));
        c.links = links;
        m.chains.push_back(c);
    }
    ChainLink via(const std::string& stable, const std::string& lu, Sign lsgn,
                  const std::string& ru, Sign rsgn) {
        ChainLink l;
        l.via_stable = true;
        l.stable = s(stable);
        l.left_end = {unstable_leaf(u(lu)), lsgn};
        l.right_end = {unstable_leaf(u(ru)), rsgn};
        return l;
    }
};

} // namespace

OrbitModel m0() {
    Builder b;
    b.road("s1", {"u1", "u2", "u3"});
    b.fiber("u1", {"s1"});
    b.fiber("u2", {"s1"});
    b.fiber("u3", {"s1"});
    return b.m;
}

OrbitModel m1() {
    Builder b;
    b.road("s2", {"u-2", "u-1"});
    b.road("s1", {"u1", "u2"});
    b.fit("s1", Sign::Minus, "u0", Sign::Minus); // upper-left fit at u0
    b.fit("s2", Sign::Plus, "u0", Sign::Plus);   // lower-right fit at u0
    b.fiber("u-2", {"s2"});
    b.fiber("u-1", {"s2"});
    b.fiber("u0", {});
    b.fiber("u1", {"s1"});
    b.fiber("u2", {"s1"});
    return b.m;
}

OrbitModel m1e() {
    Builder b;
    b.m = m1();
    b.end("top", "u2", Sign::Plus);
    return b.m;
}

OrbitModel m2() {
    Builder b;
    auto t = [](int j) { return "t" + std::to_string(j); };
    auto r = [](int j) { return "r" + std::to_string(j); };

    // chart b2 < b1 < t0 < ... < t8 < c1 < c2 with spiralling roads: each is
    // born at a minus corner and dies at a plus corner three leaves up,
    // sweeping rightward on the way
    for (int j = 0; j <= 5; ++j) {
        b.road(r(j), {t(j + 1), t(j + 2)});
        b.fit(r(j), Sign::Minus, t(j), Sign::Minus);
        b.fit(r(j), Sign::Plus, t(j + 3), Sign::Plus);
    }
    b.road(r(6), {"t7", "t8", "c1", "c2"});
    b.fit(r(6), Sign::Minus, "t6", Sign::Minus);
    b.road(r(7), {"t8", "c1", "c2"});
    b.fit(r(7), Sign::Minus, "t7", Sign::Minus);
    b.road(r(8), {"c1", "c2"});
    b.fit(r(8), Sign::Minus, "t8", Sign::Minus);
    // births below the window frontier
    b.road("rm1", {"b2", "b1", "t0", "t1"});
    b.fit("rm1", Sign::Plus, "t2", Sign::Plus);
    b.road("rm2", {"b2", "b1", "t0"});
    b.fit("rm2", Sign::Plus, "t1", Sign::Plus);
    b.road("rm3", {"b2", "b1"});
    b.fit("rm3", Sign::Plus, "t0", Sign::Plus);

    // younger roads sit closer to the minus end
    b.fiber("b2", {"rm1", "rm2", "rm3"});
    b.fiber("b1", {"rm1", "rm2", "rm3"});
    b.fiber("t0", {"rm1", "rm2"});
    b.fiber("t1", {"r0", "rm1"});
    b.fiber("t2", {"r1", "r0"});
    b.fiber("t3", {"r2", "r1"});
    b.fiber("t4", {"r3", "r2"});
    b.fiber("t5", {"r4", "r3"});
    b.fiber("t6", {"r5", "r4"});
    b.fiber("t7", {"r6", "r5"});
    b.fiber("t8", {"r7", "r6"});
    b.fiber("c1", {"r8", "r7", "r6"});
    b.fiber("c2", {"r8", "r7", "r6"});

    b.end("tau-", "b2", Sign::Minus);
    b.end("tau+", "c2", Sign::Plus);
    return b.m;
}

OrbitModel m3() {
    Builder b;
    // spine charts and hangers for the 14-breakpoint zigzag
    b.road("sa", {"a1", "a2"});
    b.road("sza", {"a2", "z1"});
    b.road("szb", {"b1", "z1"});
    b.road("sb", {"b2", "b1"});
    b.road("swb", {"w2", "b2"});
    b.road("swc", {"w2", "c1"});
    b.road("szc", {"c1", "z3"});
    b.road("szd", {"d1", "z3"});
    b.road("sd", {"d2", "d1"});
    b.road("swd", {"w4", "d2"});
    b.road("swe", {"w4", "e1"});
    b.road("se", {"e1", "e2"});
    b.road("sze", {"e2", "z5"});
    b.road("szf", {"f1", "z5"});
    b.road("swf", {"w6", "f1"});
    b.road("swg", {"w6", "g1"});

    // via stables for the six cataclysms
    b.road("vA", {"z1"});
    b.fit("vA", Sign::Minus, "a2", Sign::Plus);
    b.fit("vA", Sign::Minus, "b1", Sign::Minus);
    b.road("vB", {"w2"});
    b.fit("vB", Sign::Plus, "b2", Sign::Plus);
    b.fit("vB", Sign::Plus, "c1", Sign::Minus);
    b.road("vC", {"z3"});
    b.fit("vC", Sign::Minus, "c1", Sign::Plus);
    b.fit("vC", Sign::Minus, "d1", Sign::Minus);
    b.road("vD", {"w4"});
    b.fit("vD", Sign::Plus, "d2", Sign::Plus);
    b.fit("vD", Sign::Plus, "e1", Sign::Minus);
    b.road("vE", {"z5"});
    b.fit("vE", Sign::Minus, "e2", Sign::Plus);
    b.fit("vE", Sign::Minus, "f1", Sign::Minus);
    b.road("vF", {"w6"});
    b.fit("vF", Sign::Plus, "f1", Sign::Plus);
    b.fit("vF", Sign::Plus, "g1", Sign::Minus);

    b.chain(BranchSide::FromAbove, {"a2", "b1"},
            {b.via("vA", "a2", Sign::Plus, "b1", Sign::Minus)});
    b.chain(BranchSide::FromBelow, {"b2", "c1"},
            {b.via("vB", "b2", Sign::Plus, "c1", Sign::Minus)});
    b.chain(BranchSide::FromAbove, {"c1", "d1"},
            {b.via("vC", "c1", Sign::Plus, "d1", Sign::Minus)});
    b.chain(BranchSide::FromBelow, {"d2", "e1"},
            {b.via("vD", "d2", Sign::Plus, "e1", Sign::Minus)});
    b.chain(BranchSide::FromAbove, {"e2", "f1"},
            {b.via("vE", "e2", Sign::Plus, "f1", Sign::Minus)});
    b.chain(BranchSide::FromBelow, {"f1", "g1"},
            {b.via("vF", "f1", Sign::Plus, "g1", Sign::Minus)});

    b.fiber("a1", {"sa"});
    b.fiber("a2", {"sa", "sza"});
    b.fiber("z1", {"sza", "szb", "vA"});
    b.fiber("b1", {"sb", "szb"});
    b.fiber("b2", {"swb", "sb"});
    b.fiber("w2", {"swb", "swc", "vB"});
    b.fiber("c1", {"swc", "szc"});
    b.fiber("z3", {"szc", "szd", "vC"});
    b.fiber("d1", {"sd", "szd"});
    b.fiber("d2", {"swd", "sd"});
    b.fiber("w4", {"swd", "swe", "vD"});
    b.fiber("e1", {"swe", "se"});
    b.fiber("e2", {"se", "sze"});
    b.fiber("z5", {"sze", "szf", "vE"});
    b.fiber("f1", {"swf", "szf"});
    b.fiber("w6", {"swf", "swg", "vF"});
    b.fiber("g1", {"swg"});
    return b.m;
}

OrbitModel m4() {
    Builder b;
    auto mm = [](int j) { return "m" + std::to_string(j); };
    auto R = [](int j) { return "R" + std::to_string(j); };

    // chart r2 < r1 < m0 < ... < m11 < s1 < s2, the m2 spiral tile repeated
    // with period three and a shift automorphism
    for (int j = 0; j <= 8; ++j) {
        b.road(R(j), {mm(j + 1), mm(j + 2)});
        b.fit(R(j), Sign::Minus, mm(j), Sign::Minus);
        b.fit(R(j), Sign::Plus, mm(j + 3), Sign::Plus);
    }
    b.road(R(9), {"m10", "m11", "s1", "s2"});
    b.fit(R(9), Sign::Minus, "m9", Sign::Minus);
    b.road(R(10), {"m11", "s1", "s2"});
    b.fit(R(10), Sign::Minus, "m10", Sign::Minus);
    b.road(R(11), {"s1", "s2"});
    b.fit(R(11), Sign::Minus, "m11", Sign::Minus);
    b.road("Rm1", {"r2", "r1", "m0", "m1"});
    b.fit("Rm1", Sign::Plus, "m2", Sign::Plus);
    b.road("Rm2", {"r2", "r1", "m0"});
    b.fit("Rm2", Sign::Plus, "m1", Sign::Plus);
    b.road("Rm3", {"r2", "r1"});
    b.fit("Rm3", Sign::Plus, "m0", Sign::Plus);

    b.fiber("r2", {"Rm1", "Rm2", "Rm3"});
    b.fiber("r1", {"Rm1", "Rm2", "Rm3"});
    b.fiber("m0", {"Rm1", "Rm2"});
    b.fiber("m1", {"R0", "Rm1"});
    for (int i = 2; i <= 11; ++i) b.fiber(mm(i), {R(i - 1), R(i - 2)});
    b.fiber("s1", {"R11", "R10", "R9"});
    b.fiber("s2", {"R11", "R10", "R9"});

    b.end("tau-", "r2", Sign::Minus);
    b.end("tau+", "s2", Sign::Plus);

    Automorphism g;
    g.name = "g";
    // leaf domain stays clear of the window fringe so the end limits are
    // honestly equivariant
    for (int j = 1; j <= 7; ++j) g.unstable_map[b.u(mm(j))] = b.u(mm(j + 3));
    for (int j = 0; j <= 8; ++j) g.stable_map[b.s(R(j))] = b.s(R(j + 3));
    g.stable_map[b.s("Rm1")] = b.s(R(2));
    g.stable_map[b.s("Rm2")] = b.s(R(1));
    g.stable_map[b.s("Rm3")] = b.s(R(0));
    g.end_map["tau-"] = "tau-";
    g.end_map["tau+"] = "tau+";
    b.m.automorphisms.push_back(g);
    return b.m;
}

OrbitModel by_name(const std::string& name) {
    if (name == "M0") return m0();
    if (name == "M1") return m1();
    if (name == "M1e") return m1e();
    if (name == "M2") return m2();
    if (name == "M3") return m3();
    if (name == "M4") return m4();
    throw std::runtime_error("unknown fixture: " + name);
}

std::vector<std::string> names() { return {"M0", "M1", "M1e", "M2", "M3", "M4"}; }

} // namespace fixtures
} // namespace anosov
