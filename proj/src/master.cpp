#include "anosov/master.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace anosov {

SymbolicPoint MasterSets::of_leaf(LeafId id) const {
    return {id.family == Family::Unstable ? class_of_unstable[id.index]
                                          : class_of_stable[id.index]};
}

SymbolicPoint MasterSets::of_end(const LeafEnd& e) const { return of_leaf(e.leaf); }

SymbolicPoint MasterSets::of_gap(int end_index) const { return {gap_class[end_index]}; }

namespace {

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

} // namespace

MasterSets master_sets(const LeafSpace& ls) {
    const OrbitModel& m = *ls.model;
    int nu = m.n_unstable(), ns = m.n_stable(), ne = (int)m.ends.size();

    // nodes: unstable ends, stable ends, end gaps
    auto uend = [&](int u, Sign s) { return 2 * u + (s == Sign::Plus ? 1 : 0); };
    auto send = [&](int s, Sign sg) { return 2 * nu + 2 * s + (sg == Sign::Plus ? 1 : 0); };
    auto gap = [&](int i) { return 2 * nu + 2 * ns + i; };
    UF ends(2 * nu + 2 * ns + ne);

    for (const auto& f : m.perfect_fits)
        ends.unite(send(f.stable_end.leaf.index, f.stable_end.sign),
                   uend(f.unstable_end.leaf.index, f.unstable_end.sign));
    for (const auto& c : m.chains)
        for (const auto& l : c.links) {
            auto node = [&](const LeafEnd& e) {
                return e.leaf.family == Family::Unstable ? uend(e.leaf.index, e.sign)
                                                         : send(e.leaf.index, e.sign);
            };
            ends.unite(node(l.left_end), node(l.right_end));
        }
    for (int i = 0; i < ne; ++i)
        if (m.ends[i].boundary_hint)
            ends.unite(gap(i),
                       uend(m.ends[i].boundary_hint->leaf.index, m.ends[i].boundary_hint->sign));

    // leaves sharing an identified ideal endpoint belong to one master set
    UF leaves(nu + ns + ne); // ends hinted to gaps ride along as pseudo-leaves
    std::map<int, std::vector<int>> by_end_class;
    for (int u = 0; u < nu; ++u) {
        by_end_class[ends.find(uend(u, Sign::Minus))].push_back(u);
        by_end_class[ends.find(uend(u, Sign::Plus))].push_back(u);
    }
    for (int s = 0; s < ns; ++s) {
        by_end_class[ends.find(send(s, Sign::Minus))].push_back(nu + s);
        by_end_class[ends.find(send(s, Sign::Plus))].push_back(nu + s);
    }
    for (int i = 0; i < ne; ++i) by_end_class[ends.find(gap(i))].push_back(nu + ns + i);
    for (const auto& [cls, members] : by_end_class)
        for (size_t k = 1; k < members.size(); ++k) leaves.unite(members[0], members[k]);

    MasterSets ms;
    std::map<int, int> root_to_id;
    auto id_of = [&](int node) {
        int r = leaves.find(node);
        auto it = root_to_id.find(r);
        if (it != root_to_id.end()) return it->second;
        int id = (int)ms.sets.size();
        root_to_id[r] = id;
        ms.sets.push_back({});
        return id;
    };
    ms.class_of_unstable.resize(nu);
    ms.class_of_stable.resize(ns);
    ms.gap_class.resize(ne);
    ms.end_class_unstable.resize(nu);
    ms.end_class_stable.resize(ns);
    for (int u = 0; u < nu; ++u) {
        int id = id_of(u);
        ms.class_of_unstable[u] = id;
        ms.end_class_unstable[u] = {id, id};
        ms.sets[id].unstable_leaves.push_back(u);
        ms.sets[id].boundary.push_back({unstable_leaf(u), Sign::Minus});
        ms.sets[id].boundary.push_back({unstable_leaf(u), Sign::Plus});
    }
    for (int s = 0; s < ns; ++s) {
        int id = id_of(nu + s);
        ms.class_of_stable[s] = id;
        ms.end_class_stable[s] = {id, id};
        ms.sets[id].stable_leaves.push_back(s);
        ms.sets[id].boundary.push_back({stable_leaf(s), Sign::Minus});
        ms.sets[id].boundary.push_back({stable_leaf(s), Sign::Plus});
    }
    for (int i = 0; i < ne; ++i) {
        int id = id_of(nu + ns + i);
        ms.gap_class[i] = id;
        ms.sets[id].gap_ids.push_back(m.ends[i].id);
    }
    return ms;
}

SymbolicPoint psi(const MasterSets& ms, const FiberPoint& p) {
    if (p.nonmarker()) return ms.of_leaf(unstable_leaf(p.leaf));
    return ms.of_leaf(stable_leaf(p.stable));
}

SymbolicPoint i_map(const MasterSets& ms, const FiberPoint& p) { return psi(ms, p); }

namespace {

// full leaf set of a zigzag, in traversal order
std::vector<int> walk_leaves(const LeafSpace& ls, const ZigzagPath& z) {
    std::vector<int> out;
    auto push = [&](int t) {
        if (out.empty() || out.back() != t) out.push_back(t);
    };
    if (z.intervals.empty()) {
        if (!z.breakpoints.empty()) push(z.breakpoints[0]);
        return out;
    }
    for (const auto& iv : z.intervals) {
        int lo = z.breakpoints[iv.lo], hi = z.breakpoints[iv.lo + 1];
        if (iv.degenerate) {
            push(lo);
            continue;
        }
        int a = iv.up ? lo : hi, b = iv.up ? hi : lo;
        std::vector<int> seg;
        for (int t = 0; t < ls.n; ++t)
            if (ls.below_eq(a, t) && ls.below_eq(t, b)) seg.push_back(t);
        std::sort(seg.begin(), seg.end(), [&](int x, int y) { return ls.strictly_below(x, y); });
        if (!iv.up) std::reverse(seg.begin(), seg.end());
        for (int t : seg) push(t);
    }
    return out;
}

} // namespace

FEndResult f_end(const LeafSpace& ls, const MasterSets& ms, const EndDecl& e) {
    return f_end_from(ls, ms, e, -1);
}

FEndResult f_end_from(const LeafSpace& ls, const MasterSets& ms, const EndDecl& e,
                      int start_leaf) {
    const OrbitModel& m = *ls.model;
    FEndResult res;
    int attach = e.attachment;
    int end_index = -1;
    for (size_t i = 0; i < m.ends.size(); ++i)
        if (m.ends[i].id == e.id) end_index = (int)i;

    // path-to-attachment leaf sets, for separation tests
    std::vector<std::set<int>> path_set(ls.n);
    for (int t = 0; t < ls.n; ++t) {
        auto w = walk_leaves(ls, zigzag(ls, t, attach));
        path_set[t] = std::set<int>(w.begin(), w.end());
    }

    // ray leaves with travel direction
    std::vector<int> ray;
    std::vector<uint8_t> ray_up;
    {
        int far = start_leaf;
        if (far < 0) {
            far = attach;
            size_t best = 0;
            for (int t = 0; t < ls.n; ++t)
                if (path_set[t].size() > best) {
                    best = path_set[t].size();
                    far = t;
                }
        }
        auto z = zigzag(ls, far, attach);
        for (const auto& iv : z.intervals) {
            int lo = z.breakpoints[iv.lo], hi = z.breakpoints[iv.lo + 1];
            std::vector<int> seg;
            if (iv.degenerate) {
                seg = {lo};
            } else {
                int a = iv.up ? lo : hi, b = iv.up ? hi : lo;
                for (int t = 0; t < ls.n; ++t)
                    if (ls.below_eq(a, t) && ls.below_eq(t, b)) seg.push_back(t);
                std::sort(seg.begin(), seg.end(),
                          [&](int x, int y) { return ls.strictly_below(x, y); });
                if (!iv.up) std::reverse(seg.begin(), seg.end());
            }
            for (int t : seg) {
                if (!ray.empty() && ray.back() == t) continue;
                ray.push_back(t);
                ray_up.push_back(iv.up ? 1 : 0);
            }
        }
        if (ray.empty()) {
            ray.push_back(attach);
            ray_up.push_back(e.side == Sign::Plus ? 1 : 0);
        }
    }

    // span+ of a ray leaf: boundary labels on the end side
    struct Label {
        bool is_gap;
        int idx;      // end index for gaps
        LeafEnd end;  // otherwise
        bool operator<(const Label& o) const {
            if (is_gap != o.is_gap) return is_gap < o.is_gap;
            if (is_gap) return idx < o.idx;
            return end < o.end;
        }
    };
    auto span_of = [&](int l, bool up) {
        std::set<Label> out;
        // unstable leaf ends: on the end side iff l does not separate them
        for (int v = 0; v < ls.n; ++v) {
            if (v == l) continue;
            if (path_set[v].count(l)) continue;
            out.insert({false, -1, {unstable_leaf(v), Sign::Minus}});
            out.insert({false, -1, {unstable_leaf(v), Sign::Plus}});
        }
        // stable ends: split by the crossing when the stable crosses l
        for (int s = 0; s < m.n_stable(); ++s) {
            const auto& cs = m.crossings_along_stable[s];
            if (cs.empty()) continue;
            if (ls.pos_of(l, s) >= 0) {
                Sign side = up ? Sign::Plus : Sign::Minus;
                out.insert({false, -1, {stable_leaf(s), side}});
            } else {
                int v = cs.front();
                bool endside = v != l && !path_set[v].count(l);
                if (endside) {
                    out.insert({false, -1, {stable_leaf(s), Sign::Minus}});
                    out.insert({false, -1, {stable_leaf(s), Sign::Plus}});
                }
            }
        }
        // declared end gaps
        for (size_t i = 0; i < m.ends.size(); ++i) {
            const auto& d = m.ends[i];
            if ((int)i == end_index) {
                out.insert({true, (int)i, {}});
                continue;
            }
            int v = d.attachment;
            bool endside;
            if (v == l)
                endside = (d.side == Sign::Plus) == up;
            else
                endside = !path_set[v].count(l);
            if (endside) out.insert({true, (int)i, {}});
        }
        return out;
    };

    std::set<Label> span;
    bool first = true;
    for (size_t k = 0; k < ray.size(); ++k) {
        auto s = span_of(ray[k], ray_up[k] != 0);
        if (first) {
            span = s;
            first = false;
            continue;
        }
        // nested intersection; monotone shrinkage is the i_hat_wd surrogate
        std::set<Label> inter;
        for (const auto& x : s)
            if (span.count(x)) inter.insert(x);
        if (inter.size() != s.size()) {
            res.ok = false;
            res.error = "span sequence not nested along the ray";
            return res;
        }
        span = inter;
    }

    // resolve the final span by boundary classes
    std::set<int> whole_classes;
    for (const auto& x : span) {
        if (x.is_gap) continue;
        int cls = ms.of_end(x.end).id;
        // a class with a separated representative is resolved away
        bool whole = true;
        for (const auto& b : ms.sets[cls].boundary)
            if (!span.count({false, -1, b})) whole = false;
        if (whole) whole_classes.insert(cls);
    }
    int gap_cls = end_index >= 0 ? ms.gap_class[end_index] : -1;
    whole_classes.erase(gap_cls);
    if (whole_classes.size() > 1) {
        res.ok = false;
        res.error = "window_truncated: several classes remain unseparated from the end";
        return res;
    }
    res.ok = true;
    res.point = {gap_cls};
    if (!whole_classes.empty()) {
        int k = *whole_classes.begin();
        // the window cannot separate this class from the end; report the pinch
        for (const auto& b : ms.sets[k].boundary) res.pinched_ends.push_back(b);
        if (end_index >= 0 && m.ends[end_index].boundary_hint) res.point = {k};
    }
    return res;
}

QlDiagnostics is_ql_extremal(const LeafSpace& ls, const Section& sec, const ZigzagPath& z) {
    const OrbitModel& m = *ls.model;
    QlDiagnostics d;
    auto leaves = walk_leaves(ls, z);
    std::set<int> on_path(leaves.begin(), leaves.end());

    // (3) nonmarker at every launching and landing leaf
    for (int v : z.launching())
        if (sec.value[v] >= 0) {
            d.extremal = false;
            d.failed_condition = "3";
            d.witness = "marker at launching leaf " + m.unstable_names[v];
            return d;
        }
    for (int v : z.landing())
        if (sec.value[v] >= 0) {
            d.extremal = false;
            d.failed_condition = "3";
            d.witness = "marker at landing leaf " + m.unstable_names[v];
            return d;
        }

    // (2) the nonmarker locus has no nondegenerate subinterval
    for (size_t k = 0; k + 1 < leaves.size(); ++k) {
        int a = leaves[k], b = leaves[k + 1];
        if (ls.compare(a, b) == Order::Incomparable) continue; // jump
        if (sec.value[a] < 0 && sec.value[b] < 0) {
            d.extremal = false;
            d.failed_condition = "2";
            d.witness = "nonmarker interval at " + m.unstable_names[a] + "," +
                        m.unstable_names[b];
            return d;
        }
    }

    // (1) markers attached to the path are extremal in their quadrant family
    std::set<int> markers;
    for (int v : leaves)
        if (sec.value[v] >= 0) markers.insert(sec.value[v]);
    for (int s : markers) {
        for (const auto& f : m.perfect_fits) {
            if (f.stable_end.leaf.index != s) continue;
            int lam = f.unstable_end.leaf.index;
            if (!on_path.count(lam)) continue;
            // family: fits at the same ideal point and quadrant
            Quadrant q = quadrant_of(ls, f);
            // position measured on the crossed leaf next to the attachment
            const auto& cs = m.crossings_along_stable[s];
            int probe = f.stable_end.sign == Sign::Minus ? cs.front() : cs.back();
            if (!on_path.count(probe)) continue;
            std::vector<int> family;
            for (const auto& g : m.perfect_fits) {
                if (!(g.unstable_end == f.unstable_end)) continue;
                if (!(quadrant_of(ls, g) == q)) continue;
                if (ls.pos_of(probe, g.stable_end.leaf.index) < 0) continue;
                family.push_back(g.stable_end.leaf.index);
            }
            int p = ls.pos_of(probe, s);
            bool extremal = true;
            for (int g : family) {
                if (ls.pos_of(probe, g) < p) extremal = false;
            }
            bool extremal_hi = true;
            for (int g : family) {
                if (ls.pos_of(probe, g) > p) extremal_hi = false;
            }
            if (!extremal && !extremal_hi) {
                d.extremal = false;
                d.failed_condition = "1";
                d.witness = "marker " + m.stable_names[s] + " interior to its pinching family at " +
                            m.unstable_names[lam];
                return d;
            }
        }
    }
    return d;
}

QlMasterRecord ql_implies_master(const LeafSpace& ls, const MasterSets& ms, const Section& sec,
                                 const ZigzagPath& z) {
    QlMasterRecord r;
    auto leaves = walk_leaves(ls, z);
    std::set<int> classes;
    for (int v : leaves) classes.insert(i_map(ms, sec.at(v)).id);
    if (classes.size() == 1) {
        r.ok = true;
        r.common = {*classes.begin()};
    } else {
        std::ostringstream os;
        os << "psi image meets " << classes.size() << " master sets";
        r.detail = os.str();
    }
    return r;
}

} // namespace anosov
