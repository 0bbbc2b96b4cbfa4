#include "anosov/current.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace anosov {

namespace {

// window leaves of a nondegenerate oriented interval, ascending
std::vector<int> interval_leaves(const LeafSpace& ls, int lo, int hi) {
    std::vector<int> out;
    for (int t = 0; t < ls.n; ++t)
        if (ls.below_eq(lo, t) && ls.below_eq(t, hi)) out.push_back(t);
    return out;
}

} // namespace

RegionColoring lu_rd_regions(const LeafSpace& ls, const Section& sec) {
    RegionColoring rc;
    rc.lu.assign(ls.n, 0);
    rc.rd.assign(ls.n, 0);
    for (int a = 0; a < ls.n; ++a) {
        Section dev = special_section(ls, sec.at(a));
        bool lu = true, rd = true;
        for (int b = 0; b < ls.n; ++b) {
            if (ls.below_eq(a, b) && sec.value[b] != dev.value[b]) lu = false;
            if (ls.below_eq(b, a) && sec.value[b] != dev.value[b]) rd = false;
        }
        // agreement that runs off a declared end on the nonmarker point cannot
        // be certified by the window
        if (lu)
            for (const auto& ex : ls.exits(a, true))
                if (ex.end && sec.value[ex.frontier] < 0) lu = false;
        if (rd)
            for (const auto& ex : ls.exits(a, false))
                if (ex.end && sec.value[ex.frontier] < 0) rd = false;
        rc.lu[a] = lu ? 1 : 0;
        rc.rd[a] = rd ? 1 : 0;
    }
    return rc;
}

namespace {

CurrentCheck check_current(const LeafSpace& ls, const RegionColoring& rc, const ZigzagPath& z,
                           bool with) {
    CurrentCheck res;
    for (size_t k = 0; k < z.intervals.size(); ++k) {
        const auto& iv = z.intervals[k];
        int a = z.breakpoints[iv.lo], b = z.breakpoints[iv.lo + 1];
        bool up = iv.up;
        bool need_lu = with ? up : !up;
        std::vector<int> leaves;
        if (iv.degenerate)
            leaves = {a};
        else
            leaves = interval_leaves(ls, up ? a : b, up ? b : a);
        for (int t : leaves) {
            bool okc = need_lu ? rc.in_lu(t) : rc.in_rd(t);
            if (!okc) {
                res.with_current = false;
                res.offending_interval = (int)k;
                return res;
            }
        }
    }
    return res;
}

} // namespace

CurrentCheck is_with_current(const LeafSpace& ls, const RegionColoring& rc, const ZigzagPath& z) {
    return check_current(ls, rc, z, true);
}

CurrentCheck is_against_current(const LeafSpace& ls, const RegionColoring& rc,
                                const ZigzagPath& z) {
    return check_current(ls, rc, z, false);
}

namespace {

// maximal against-current flow from a start leaf; Lemma-style uniqueness is
// enforced and violations are surfaced, never resolved silently
Base against_current_flow(const LeafSpace& ls, const RegionColoring& rc, int start) {
    const OrbitModel& m = *ls.model;
    int x = start;
    int dir = 0; // 0 none, +1 current interval ascends, -1 descends
    std::set<int> visited{x};
    for (int guard = 0; guard <= 4 * ls.n + 4; ++guard) {
        struct Cand {
            bool jump;
            int to;
            int new_dir;
        };
        std::vector<Cand> cands;
        // extend the current interval (or open one at the start)
        if ((dir >= 0) && rc.in_rd(x))
            for (int y : ls.covers_up[x])
                if (rc.in_rd(y)) cands.push_back({false, y, +1});
        if ((dir <= 0) && rc.in_lu(x))
            for (int y : ls.covers_down[x])
                if (rc.in_lu(y)) cands.push_back({false, y, -1});
        // jump across a cataclysm; the next interval flips orientation, and
        // the landing must open fresh against-current ground
        auto jump_onward = [&](int z, int nd) {
            bool colored = nd > 0 ? rc.in_rd(z) : rc.in_lu(z);
            if (!colored) return false;
            const auto& onward = nd > 0 ? ls.covers_up[z] : ls.covers_down[z];
            if (onward.empty()) return true; // frontier landing, may escape
            for (int y : onward) {
                bool ycol = nd > 0 ? rc.in_rd(y) : rc.in_lu(y);
                if (ycol && !visited.count(y)) return true;
            }
            return false;
        };
        for (int z : ls.cataclysm_partners(x)) {
            int nd = -dir;
            if (dir == 0) {
                if (jump_onward(z, +1)) cands.push_back({true, z, +1});
                if (jump_onward(z, -1)) cands.push_back({true, z, -1});
                continue;
            }
            if (jump_onward(z, nd)) cands.push_back({true, z, nd});
        }
        // drop candidates that revisit (the flow is a path in a tree)
        std::vector<Cand> fresh;
        for (const auto& c : cands)
            if (!visited.count(c.to)) fresh.push_back(c);

        if (fresh.empty()) {
            // stuck: escaping out a window edge, or a genuine source
            bool wants_up = dir >= 0 && rc.in_rd(x) && ls.covers_up[x].empty();
            bool wants_down = dir <= 0 && rc.in_lu(x) && ls.covers_down[x].empty();
            if (wants_up || wants_down) {
                bool up = wants_up;
                for (const auto& e : m.ends)
                    if (e.attachment == x && e.side == (up ? Sign::Plus : Sign::Minus)) {
                        Base b;
                        b.kind = BaseKind::End;
                        b.end_id = e.id;
                        return b;
                    }
                Base b;
                b.kind = BaseKind::WindowTruncated;
                b.detail = "against-current flow reaches undeclared frontier at " +
                           m.unstable_names[x];
                return b;
            }
            Base b;
            b.kind = BaseKind::Leaves;
            b.leaves = {x};
            b.detail = "against-current flow stuck at interior leaf";
            return b;
        }
        if (fresh.size() > 1) {
            // distinct germs with no common initial subpath
            bool same = true;
            for (const auto& c : fresh)
                if (c.jump != fresh[0].jump || c.to != fresh[0].to) same = false;
            if (!same) {
                Base b;
                b.kind = BaseKind::AmbiguousAgainstCurrent;
                std::ostringstream os;
                os << "two against-current continuations at " << m.unstable_names[x];
                b.detail = os.str();
                return b;
            }
        }
        x = fresh[0].to;
        dir = fresh[0].new_dir;
        visited.insert(x);
    }
    Base b;
    b.kind = BaseKind::AmbiguousAgainstCurrent;
    b.detail = "against-current flow failed to terminate";
    return b;
}

} // namespace

Base base_of(const LeafSpace& ls, const Section& sec, const RegionColoring& rc) {
    std::vector<int> both;
    for (int a = 0; a < ls.n; ++a)
        if (rc.in_lu(a) && rc.in_rd(a)) both.push_back(a);
    if (!both.empty()) {
        Base b;
        b.kind = BaseKind::Leaves;
        b.leaves = both;
        return b;
    }
    return against_current_flow(ls, rc, 0);
}

Base base_of(const LeafSpace& ls, const Section& sec) {
    return base_of(ls, sec, lu_rd_regions(ls, sec));
}

DefinitionalBase definitional_base(const LeafSpace& ls, const Section& sec,
                                   const RegionColoring& rc) {
    DefinitionalBase db;
    for (int a = 0; a < ls.n; ++a) {
        // cheap local screen before the full sweep
        bool ok = true;
        for (int y : ls.covers_up[a])
            if (!rc.in_lu(a) || !rc.in_lu(y)) ok = false;
        for (int y : ls.covers_down[a])
            if (!rc.in_rd(a) || !rc.in_rd(y)) ok = false;
        // germs running out a declared end on the nonmarker point are not
        // certifiable, exactly as in the region computation
        for (bool up : {true, false})
            for (const auto& ex : ls.exits(a, up))
                if (ex.end && sec.value[ex.frontier] < 0) ok = false;
        if (!ok) continue;
        for (int t = 0; t < ls.n && ok; ++t) {
            if (t == a) continue;
            if (!is_with_current(ls, rc, zigzag(ls, a, t)).with_current) ok = false;
        }
        if (ok) db.leaves.push_back(a);
    }
    for (const auto& e : ls.model->ends) {
        bool ok = true;
        for (int t = 0; t < ls.n && ok; ++t) {
            auto z = zigzag(ls, e.attachment, t);
            if (!is_with_current(ls, rc, z).with_current) ok = false;
            // the invisible tail enters the window moving away from the end
            if (ok && !z.intervals.empty()) {
                bool first_up = z.intervals[0].up;
                if (first_up != (e.side == Sign::Minus) && !(t == e.attachment)) ok = false;
            }
        }
        if (ok) db.end_ids.push_back(e.id);
    }
    return db;
}

Classification classify(const LeafSpace& ls, const Section& sec) {
    Classification c;
    auto rc = lu_rd_regions(ls, sec);
    c.base = base_of(ls, sec, rc);
    switch (c.base.kind) {
        case BaseKind::Leaves: {
            std::vector<int> both;
            for (int a = 0; a < ls.n; ++a)
                if (rc.in_lu(a) && rc.in_rd(a)) both.push_back(a);
            if (!both.empty()) {
                c.type = SectionType::S;
            } else {
                // a limit section with a leaf base contradicts the theory
                c.type = SectionType::TypeIViolation;
            }
            break;
        }
        case BaseKind::End:
            c.type = SectionType::E;
            break;
        case BaseKind::WindowTruncated:
            c.type = SectionType::WindowTruncated;
            break;
        case BaseKind::AmbiguousAgainstCurrent:
            c.type = SectionType::TypeIViolation;
            break;
    }
    return c;
}

} // namespace anosov
