#include "anosov/sections.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace anosov {

MarkerInterval marker_interval(const LeafSpace& ls, int stable) {
    const OrbitModel& m = *ls.model;
    MarkerInterval mi;
    mi.leaves = m.crossings_along_stable[stable];
    for (const auto& f : m.perfect_fits) {
        if (f.stable_end.leaf.index != stable) continue;
        if (f.stable_end.sign == Sign::Minus)
            mi.fit_minus = f.unstable_end.leaf.index;
        else
            mi.fit_plus = f.unstable_end.leaf.index;
    }
    return mi;
}

Quadrant quadrant_of(const LeafSpace& ls, const PerfectFit& pf) {
    (void)ls;
    Quadrant q;
    // the stable's crossings sit beyond its fitted end: a minus-end fit means
    // the interval lies above the fitted leaf
    q.upper = pf.stable_end.sign == Sign::Minus;
    q.left = pf.unstable_end.sign == Sign::Minus;
    return q;
}

namespace {

// side tokens of a section value against a marker at one leaf
enum Token : int { TL = -1, TOn = 0, TR = 1, TNm = 2 };

Token side_token(const LeafSpace& ls, int leaf, int value, int stable) {
    if (value < 0) return TNm;
    if (value == stable) return TOn;
    int ps = ls.pos_of(leaf, stable);
    int pv = ls.pos_of(leaf, value);
    return pv < ps ? TL : TR;
}

} // namespace

AdmissibilityResult is_admissible(const LeafSpace& ls, const Section& sec) {
    const OrbitModel& m = *ls.model;
    for (int s = 0; s < m.n_stable(); ++s) {
        const auto& leaves = m.crossings_along_stable[s];
        // strict side flips with no nonmarker wrap between are crossings
        int last_strict = 0;
        int last_leaf = -1;
        for (int u : leaves) {
            Token t = side_token(ls, u, sec.value[u], s);
            if (t == TNm) {
                last_strict = 0;
                continue;
            }
            if (t == TOn) continue;
            if (last_strict != 0 && t != last_strict) {
                AdmissibilityResult r;
                r.admissible = false;
                std::ostringstream os;
                os << "section crosses marker " << m.stable_names[s] << " between "
                   << m.unstable_names[last_leaf] << " and " << m.unstable_names[u];
                r.violation = os.str();
                return r;
            }
            last_strict = t;
            last_leaf = u;
        }
    }
    return {};
}

int leftmost_step(const LeafSpace& ls, int from_leaf, int from_value, int to_leaf, bool up) {
    // roads emanating from from_leaf's corner on the travel side
    const auto& corner = up ? ls.ul_roads[from_leaf] : ls.lr_roads[from_leaf];
    auto extremal = [&](bool outermost, int bound, bool have_bound) {
        int best = -1, best_pos = -1;
        for (int s : corner) {
            int p = ls.pos_of(to_leaf, s);
            if (p < 0) continue;
            if (have_bound && (up ? p >= bound : p <= bound)) continue;
            bool better = best < 0 || ((up == outermost) ? p < best_pos : p > best_pos);
            if (better) {
                best = s;
                best_pos = p;
            }
        }
        return best;
    };
    if (from_value < 0) {
        // emerging from the corner glues to the outermost corner road
        return extremal(true, 0, false);
    }
    int cont = ls.pos_of(to_leaf, from_value);
    if (cont >= 0) {
        // the innermost corner road strictly inside the ride blocks the slide
        int peel = extremal(false, cont, true);
        return peel >= 0 ? peel : from_value;
    }
    // the ride ends at a corner of to_leaf: slide back to the nearest
    // surviving curve, corner roads and through-roads alike
    int best = -1, best_pos = -1;
    for (int s : corner) {
        int p = ls.pos_of(to_leaf, s);
        if (p < 0) continue;
        if (best < 0 || (up ? p > best_pos : p < best_pos)) {
            best = s;
            best_pos = p;
        }
    }
    for (int s : ls.model->crossings_along_unstable[from_leaf]) {
        int p = ls.pos_of(to_leaf, s);
        if (p < 0) continue;
        if (best < 0 || (up ? p > best_pos : p < best_pos)) {
            best = s;
            best_pos = p;
        }
    }
    return best;
}

namespace {

int step_value(const LeafSpace& ls, int from_leaf, int from_value, int to_leaf, bool up) {
    return leftmost_step(ls, from_leaf, from_value, to_leaf, up);
}

} // namespace

Section special_section(const LeafSpace& ls, FiberPoint p) {
    int n = ls.n;
    Section sec;
    sec.value.assign(n, -2);
    std::vector<int> dist(n, 1 << 30);

    sec.value[p.leaf] = p.stable;
    dist[p.leaf] = 0;

    // propagate over the quotient tree from the seed's class
    int n_cls = (int)ls.h_members.size();
    std::vector<uint8_t> cls_done(n_cls, 0);

    // settle jump landings inside a class, then return its member values
    auto settle_class = [&](int cls) {
        const auto& members = ls.h_members[cls];
        // BFS over cataclysm cliques from every already-valued member
        std::deque<int> q;
        for (int l : members)
            if (sec.value[l] != -2) q.push_back(l);
        std::set<int> seen(q.begin(), q.end());
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : ls.cataclysm_partners(x)) {
                if (seen.count(y)) continue;
                seen.insert(y);
                if (sec.value[y] == -2) {
                    sec.value[y] = -1; // landing leaves take the nonmarker point
                    dist[y] = dist[x] + 1;
                } else {
                    dist[y] = std::min(dist[y], dist[x] + 1);
                }
                q.push_back(y);
            }
        }
    };

    std::deque<int> cq{ls.h_class[p.leaf]};
    cls_done[ls.h_class[p.leaf]] = 1;
    while (!cq.empty()) {
        int cls = cq.front();
        cq.pop_front();
        settle_class(cls);
        for (int ei : ls.qadj[cls]) {
            const auto& e = ls.qedges[ei];
            int other = e.lo_class == cls ? e.hi_class : e.lo_class;
            if (cls_done[other]) continue;
            bool up = e.lo_class == cls;
            // each cover pair continues an interval into the next class
            for (const auto& [lo, hi] : e.pairs) {
                int here = up ? lo : hi;
                int there = up ? hi : lo;
                if (sec.value[here] == -2) continue;
                int v = step_value(ls, here, sec.value[here], there, up);
                int d = dist[here];
                if (sec.value[there] == -2 || d < dist[there]) {
                    sec.value[there] = v;
                    dist[there] = d;
                } else if (d == dist[there] && sec.value[there] != v) {
                    throw LeafSpaceError("ambiguous section propagation at " +
                                         ls.model->unstable_names[there]);
                }
            }
            cls_done[other] = 1;
            cq.push_back(other);
        }
    }
    for (int i = 0; i < n; ++i)
        if (sec.value[i] == -2)
            throw LeafSpaceError("section propagation missed a leaf");
    return sec;
}

namespace {

// leaves visited by the path from `from` to `attach`, in order
std::vector<int> march_of_ray(const LeafSpace& ls, int from, int attach) {
    auto ray = zigzag(ls, from, attach);
    std::vector<int> march;
    auto push = [&](int t) {
        if (march.empty() || march.back() != t) march.push_back(t);
    };
    if (ray.intervals.empty()) {
        push(from);
        return march;
    }
    for (const auto& iv : ray.intervals) {
        int lo = ray.breakpoints[iv.lo], hi = ray.breakpoints[iv.lo + 1];
        if (iv.degenerate) {
            push(lo);
            continue;
        }
        int a = iv.up ? lo : hi, b = iv.up ? hi : lo; // ascending pair
        std::vector<int> seg;
        for (int t = 0; t < ls.n; ++t)
            if (ls.below_eq(a, t) && ls.below_eq(t, b)) seg.push_back(t);
        std::sort(seg.begin(), seg.end(), [&](int x, int y) { return ls.strictly_below(x, y); });
        if (!iv.up) std::reverse(seg.begin(), seg.end());
        for (int t : seg) push(t);
    }
    return march;
}

} // namespace

LimitSectionResult limit_section_at_end(const LeafSpace& ls, const EndDecl& e) {
    LimitSectionResult res;
    int attach = e.attachment;
    // march basepoints along the longest ray toward the end
    std::vector<int> march{attach};
    for (int t = 0; t < ls.n; ++t) {
        auto cand = march_of_ray(ls, t, attach);
        if (cand.size() > march.size()) march = cand;
    }
    res.march = march;

    std::vector<Section> secs;
    secs.reserve(march.size());
    for (int b : march) secs.push_back(special_section(ls, nonmarker_at(b)));

    int m = (int)march.size();
    // seek the smallest stride at which the two deepest strided sections agree
    for (int period = 1; period <= std::max(1, m / 2); ++period) {
        if (m - 1 - period < 0) break;
        if (secs[m - 1] == secs[m - 1 - period]) {
            res.ok = true;
            res.section = secs[m - 1];
            res.period = period;
            return res;
        }
    }
    res.ok = false;
    for (int t = 0; t < ls.n && res.failing_leaf < 0; ++t) {
        bool settles = false;
        for (int period = 1; period <= std::max(1, m / 2) && !settles; ++period) {
            if (m - 1 - period < 0) break;
            if (secs[m - 1].value[t] == secs[m - 1 - period].value[t]) settles = true;
        }
        if (!settles) res.failing_leaf = t;
    }
    if (res.failing_leaf < 0) res.failing_leaf = march.front();
    return res;
}

int fiber_orient(const LeafSpace& ls, int leaf, int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    auto pos = [&](int v) {
        return v < 0 ? 0 : ls.pos_of(leaf, v) + 1; // nonmarker closes the circle at 0
    };
    int pa = pos(a), pb = pos(b), pc = pos(c);
    int n = (int)ls.model->crossings_along_unstable[leaf].size() + 1;
    auto ahead = [&](int x, int y) { return ((y - x) % n + n) % n; };
    return ahead(pa, pb) < ahead(pa, pc) ? 1 : -1;
}

bool sections_cross(const LeafSpace& ls, const Section& a, const Section& b) {
    // strict relative-position flip along a chart with no wrap between
    for (const auto& chart : ls.charts) {
        int last = 0;
        for (int u : chart) {
            int va = a.value[u], vb = b.value[u];
            int sgn;
            if (va == vb) {
                sgn = 0;
            } else if (va < 0 || vb < 0) {
                last = 0; // one section at the wrap point: sides reset
                continue;
            } else {
                sgn = ls.pos_of(u, va) < ls.pos_of(u, vb) ? -1 : 1;
            }
            if (sgn != 0) {
                if (last != 0 && sgn != last) return true;
                last = sgn;
            }
        }
    }
    return false;
}

int section_triple_orient(const LeafSpace& ls, const Section& a, const Section& b,
                          const Section& c) {
    for (int u = 0; u < ls.n; ++u) {
        int o = fiber_orient(ls, u, a.value[u], b.value[u], c.value[u]);
        if (o != 0) return o;
    }
    return 0;
}

CircleOrder circular_order(const LeafSpace& ls, const std::vector<Section>& secs) {
    for (size_t i = 0; i < secs.size(); ++i)
        for (size_t j = i + 1; j < secs.size(); ++j)
            if (sections_cross(ls, secs[i], secs[j]))
                throw CircleOrderError("two sections cross");

    CircleOrder co;
    if (secs.empty()) return co;
    // sort by angle around a reference section; the triple orientation is a
    // consistent cyclic order once noncrossing holds
    const Section& ref = secs[0];
    std::vector<int> rest;
    std::vector<int> order{0};
    for (size_t k = 1; k < secs.size(); ++k) {
        if (secs[k] == ref)
            order.push_back((int)k);
        else
            rest.push_back((int)k);
    }
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
        if (secs[a] == secs[b]) return a < b;
        int o = section_triple_orient(ls, ref, secs[a], secs[b]);
        return o > 0;
    });
    for (int k : rest) order.push_back(k);
    co.input_index.assign(secs.size(), -1);
    for (size_t t = 0; t < order.size(); ++t) {
        co.sections.push_back(secs[order[t]]);
        co.input_index[order[t]] = (int)t;
    }
    return co;
}

} // namespace anosov
