#include "anosov/suite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace anosov {

bool SuiteReport::all_pass() const { return fail_count() == 0; }

int SuiteReport::fail_count() const {
    int n = 0;
    for (const auto& r : records)
        if (r.status == "fail") ++n;
    return n;
}

void SuiteReport::add(const std::string& model, const std::string& inv, bool ok,
                      const std::string& witness) {
    records.push_back({model, inv, ok ? "pass" : "fail", ok ? "" : witness});
}

void SuiteReport::skip(const std::string& model, const std::string& inv,
                       const std::string& why) {
    records.push_back({model, inv, "skip", why});
}

std::string SuiteReport::to_text() const {
    auto sorted = records;
    std::sort(sorted.begin(), sorted.end(), [](const SuiteRecord& a, const SuiteRecord& b) {
        if (a.model_id != b.model_id) return a.model_id < b.model_id;
        return a.invariant < b.invariant;
    });
    std::ostringstream os;
    for (const auto& r : sorted) {
        os << r.model_id << " " << r.invariant << " " << r.status;
        if (!r.witness.empty()) os << " [" << r.witness << "]";
        os << "\n";
    }
    os << "total=" << records.size() << " fail=" << fail_count() << "\n";
    return os.str();
}

std::string SuiteReport::to_json() const {
    auto sorted = records;
    std::sort(sorted.begin(), sorted.end(), [](const SuiteRecord& a, const SuiteRecord& b) {
        if (a.model_id != b.model_id) return a.model_id < b.model_id;
        return a.invariant < b.invariant;
    });
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : sorted) {
        nlohmann::ordered_json o;
        o["model"] = r.model_id;
        o["invariant"] = r.invariant;
        o["status"] = r.status;
        o["witness"] = r.witness;
        arr.push_back(o);
    }
    nlohmann::ordered_json top;
    top["records"] = arr;
    top["fail"] = fail_count();
    return top.dump(1) + "\n";
}

std::vector<std::string> invariant_registry() {
    return {
        "model.roundtrip",
        "model.validate",
        "leafspace.zigzag_reverse",
        "leafspace.alternation",
        "leafspace.order_witness",
        "leafspace.hausdorff_count",
        "leafspace.ray_consistency",
        "sections.admissible",
        "sections.corners",
        "sections.noncrossing",
        "sections.monotone_maps",
        "sections.witness_independence",
        "current.lu_or_rd",
        "current.up_sat",
        "current.change_at_cataclysm",
        "current.marker_sat",
        "current.no_sink_global",
        "current.base_nonempty",
        "current.base_shape",
        "current.dual_route",
        "current.no_type_i",
        "master.finite_connected",
        "master.e_identification",
        "master.f_injective",
        "master.f_ray_independent",
        "master.ql_base",
        "master.ql_master",
        "master.ql_lim",
        "ct.well_defined",
        "ct.core_compat",
        "ct.continuity",
        "ct.equivariance",
        "dynamics.equivariance",
        "dynamics.alternation",
        "oracle.leftmost",
        "render.deterministic",
    };
}

SectionUniverse build_universe(const LeafSpace& ls) {
    SectionUniverse u;
    for (int a = 0; a < ls.n; ++a) {
        u.sections.push_back(special_section(ls, nonmarker_at(a)));
        u.labels.push_back("special(" + ls.model->unstable_names[a] + ")");
        u.basepoints.push_back(a);
        u.limit_of.push_back(nullptr);
    }
    for (const auto& e : ls.model->ends) {
        auto lim = limit_section_at_end(ls, e);
        if (!lim.ok) {
            u.no_stab_ends.push_back(e.id);
            continue;
        }
        u.sections.push_back(lim.section);
        u.labels.push_back("limit(" + e.id + ")");
        u.basepoints.push_back(-1);
        u.limit_of.push_back(ls.model->find_end(e.id));
    }
    return u;
}

std::vector<Section> enumerate_admissible(const LeafSpace& ls, long long cap) {
    const OrbitModel& m = *ls.model;
    // assign leaves in ascending topological order so each stable's interval
    // fills in crossing order; prune side flips incrementally
    std::vector<int> order;
    {
        std::vector<int> indeg(ls.n, 0);
        for (int a = 0; a < ls.n; ++a) indeg[a] = (int)ls.covers_down[a].size();
        std::deque<int> q;
        for (int a = 0; a < ls.n; ++a)
            if (indeg[a] == 0) q.push_back(a);
        while (!q.empty()) {
            int a = q.front();
            q.pop_front();
            order.push_back(a);
            for (int b : ls.covers_up[a])
                if (--indeg[b] == 0) q.push_back(b);
        }
    }
    std::vector<Section> out;
    Section cur;
    cur.value.assign(ls.n, -1);
    std::vector<int> last_strict(m.n_stable(), 0);
    long long count = 0;
    std::function<void(size_t)> rec = [&](size_t k) {
        if ((long long)out.size() > cap) return;
        if (++count > 100 * cap) return;
        if (k == order.size()) {
            out.push_back(cur);
            return;
        }
        int u = order[k];
        std::vector<int> options{-1};
        for (int s : m.crossings_along_unstable[u]) options.push_back(s);
        for (int v : options) {
            cur.value[u] = v;
            // update side tokens for markers crossing u
            std::vector<std::pair<int, int>> saved;
            bool ok = true;
            for (int s : m.crossings_along_unstable[u]) {
                int tok;
                if (v < 0)
                    tok = 2; // wrap resets
                else if (v == s)
                    tok = 0;
                else
                    tok = ls.pos_of(u, v) < ls.pos_of(u, s) ? -1 : 1;
                saved.push_back({s, last_strict[s]});
                if (tok == 2)
                    last_strict[s] = 0;
                else if (tok != 0) {
                    if (last_strict[s] != 0 && last_strict[s] != tok) ok = false;
                    last_strict[s] = tok;
                }
            }
            if (ok) rec(k + 1);
            for (auto it = saved.rbegin(); it != saved.rend(); ++it)
                last_strict[it->first] = it->second;
        }
        cur.value[u] = -1;
    };
    rec(0);
    return out;
}

namespace {

// walk order, parents and step directions of the development from a basepoint
struct DevTree {
    std::vector<int> order;    // leaves in propagation order (basepoint first)
    std::vector<int> parent;   // -1 for the basepoint
    std::vector<int8_t> dir;   // +1 up-step, -1 down-step, 0 jump landing
};

DevTree dev_tree(const LeafSpace& ls, int base) {
    DevTree t;
    t.parent.assign(ls.n, -1);
    t.dir.assign(ls.n, 0);
    std::vector<int> dist(ls.n, 1 << 30);
    std::vector<uint8_t> seen(ls.n, 0);
    dist[base] = 0;
    seen[base] = 1;
    t.order.push_back(base);

    int n_cls = (int)ls.h_members.size();
    std::vector<uint8_t> cls_done(n_cls, 0);
    auto settle = [&](int cls) {
        std::deque<int> q;
        for (int l : ls.h_members[cls])
            if (seen[l]) q.push_back(l);
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : ls.cataclysm_partners(x)) {
                if (seen[y]) continue;
                seen[y] = 1;
                dist[y] = dist[x] + 1;
                t.parent[y] = x;
                t.dir[y] = 0;
                t.order.push_back(y);
                q.push_back(y);
            }
        }
    };
    std::deque<int> cq{ls.h_class[base]};
    cls_done[ls.h_class[base]] = 1;
    while (!cq.empty()) {
        int cls = cq.front();
        cq.pop_front();
        settle(cls);
        for (int ei : ls.qadj[cls]) {
            const auto& e = ls.qedges[ei];
            int other = e.lo_class == cls ? e.hi_class : e.lo_class;
            if (cls_done[other]) continue;
            bool up = e.lo_class == cls;
            for (const auto& [lo, hi] : e.pairs) {
                int here = up ? lo : hi;
                int there = up ? hi : lo;
                if (!seen[here]) continue;
                if (!seen[there] || dist[here] < dist[there]) {
                    if (!seen[there]) {
                        seen[there] = 1;
                        t.order.push_back(there);
                    }
                    dist[there] = dist[here];
                    t.parent[there] = here;
                    t.dir[there] = up ? 1 : -1;
                }
            }
            cls_done[other] = 1;
            cq.push_back(other);
        }
    }
    return t;
}

} // namespace

bool improves(const LeafSpace& ls, FiberPoint p, const Section& a, const Section& b) {
    DevTree t = dev_tree(ls, p.leaf);
    for (int v : t.order) {
        if (a.value[v] == b.value[v]) continue;
        int fa = a.value[v], fb = b.value[v];
        int par = t.parent[v];
        if (par < 0) return false; // basepoint value is pinned
        int w = a.value[par]; // equal to b's by first-divergence order
        int8_t d = t.dir[v];
        if (d == 0) return fa < 0; // landings take the nonmarker point
        bool up = d > 0;
        if (fa >= 0 && fb >= 0) {
            // markers compare by raw fiber position
            int pa = ls.pos_of(v, fa), pb = ls.pos_of(v, fb);
            return up ? pa < pb : pa > pb;
        }
        // a marker beats the nonmarker point exactly when the corner sealing
        // makes some marker reachable on the travel side
        bool marker_reachable = leftmost_step(ls, par, w, v, up) >= 0;
        return fa >= 0 ? marker_reachable : !marker_reachable;
    }
    return false;
}

namespace {

std::vector<int> walk_of(const LeafSpace& ls, const ZigzagPath& z) {
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

// component id of a symbolic point under an automorphism, when determined
std::optional<int> map_class(const LeafSpace& ls, const MasterSets& ms, const Automorphism& g,
                             int cls) {
    std::optional<int> out;
    for (int u : ms.sets[cls].unstable_leaves) {
        auto it = g.unstable_map.find(u);
        if (it == g.unstable_map.end()) continue;
        int img = ms.class_of_unstable[it->second];
        if (out && *out != img) return std::nullopt;
        out = img;
    }
    for (int s : ms.sets[cls].stable_leaves) {
        auto it = g.stable_map.find(s);
        if (it == g.stable_map.end()) continue;
        int img = ms.class_of_stable[it->second];
        if (out && *out != img) return std::nullopt;
        out = img;
    }
    for (const auto& gid : ms.sets[cls].gap_ids) {
        auto it = g.end_map.find(gid);
        if (it == g.end_map.end()) continue;
        const OrbitModel& m = *ls.model;
        for (size_t i = 0; i < m.ends.size(); ++i)
            if (m.ends[i].id == it->second) {
                int img = ms.gap_class[i];
                if (out && *out != img) return std::nullopt;
                out = img;
            }
    }
    return out;
}

struct Checker {
    SuiteReport& rep;
    const std::string& id;
    const OrbitModel& m;
    const LeafSpace& ls;
    const MasterSets& ms;
    const SectionUniverse& uni;

    void fail_or_pass(const std::string& inv, bool ok, const std::string& w) {
        rep.add(id, inv, ok, w);
    }

    void model_checks() {
        bool ok = true;
        std::string w;
        try {
            auto text = serialize(m);
            auto m2 = parse_model(text);
            ok = serialize(m2) == text;
            if (!ok) w = "serialize/parse round trip changed the model";
        } catch (const std::exception& e) {
            ok = false;
            w = e.what();
        }
        fail_or_pass("model.roundtrip", ok, w);
        auto v = validate_model(m);
        fail_or_pass("model.validate", v.ok(), v.ok() ? "" : v.violations.front().detail);
    }

    void leafspace_checks() {
        bool rev_ok = true, alt_ok = true;
        std::string w_rev, w_alt;
        for (int a = 0; a < ls.n && rev_ok && alt_ok; ++a)
            for (int b = 0; b < ls.n && rev_ok && alt_ok; ++b) {
                auto z = zigzag(ls, a, b);
                auto r = zigzag(ls, b, a);
                auto rr = r.reversed();
                if (rr.breakpoints != z.breakpoints) {
                    rev_ok = false;
                    w_rev = "zigzag(" + m.unstable_names[a] + "," + m.unstable_names[b] +
                            ") is not the reverse of its mirror";
                }
                for (size_t k = 0; k + 1 < z.intervals.size(); ++k)
                    if (z.intervals[k].up == z.intervals[k + 1].up) {
                        alt_ok = false;
                        w_alt = "orientations fail to alternate";
                    }
            }
        fail_or_pass("leafspace.zigzag_reverse", rev_ok, w_rev);
        fail_or_pass("leafspace.alternation", alt_ok, w_alt);

        // independent closure of the single-step generators reproduces leq
        {
            std::vector<std::vector<uint8_t>> step(ls.n, std::vector<uint8_t>(ls.n, 0));
            for (int s = 0; s < m.n_stable(); ++s) {
                const auto& cs = m.crossings_along_stable[s];
                for (size_t i = 0; i + 1 < cs.size(); ++i) step[cs[i]][cs[i + 1]] = 1;
            }
            for (const auto& f : m.perfect_fits) {
                const auto& cs = m.crossings_along_stable[f.stable_end.leaf.index];
                if (cs.empty()) continue;
                if (f.stable_end.sign == Sign::Minus)
                    step[f.unstable_end.leaf.index][cs.front()] = 1;
                else
                    step[cs.back()][f.unstable_end.leaf.index] = 1;
            }
            bool grow = true;
            while (grow) {
                grow = false;
                for (const auto& c : ls.cataclysms)
                    for (int z = 0; z < ls.n; ++z) {
                        bool rel = false;
                        for (int l : c.leaves) {
                            if (l == z) continue;
                            // reachability via BFS over step
                            std::deque<int> q{c.side == BranchSide::FromAbove ? l : z};
                            int target = c.side == BranchSide::FromAbove ? z : l;
                            std::set<int> seen{q.front()};
                            while (!q.empty() && !rel) {
                                int x = q.front();
                                q.pop_front();
                                if (x == target) rel = true;
                                for (int y = 0; y < ls.n; ++y)
                                    if (step[x][y] && !seen.count(y)) {
                                        seen.insert(y);
                                        q.push_back(y);
                                    }
                            }
                            if (rel) break;
                        }
                        if (!rel) continue;
                        for (int l : c.leaves) {
                            if (l == z) continue;
                            auto& cell = c.side == BranchSide::FromAbove ? step[l][z] : step[z][l];
                            if (!cell) {
                                cell = 1;
                                grow = true;
                            }
                        }
                    }
            }
            bool ok = true;
            std::string w;
            for (int a = 0; a < ls.n && ok; ++a) {
                std::deque<int> q{a};
                std::set<int> seen{a};
                while (!q.empty()) {
                    int x = q.front();
                    q.pop_front();
                    for (int y = 0; y < ls.n; ++y)
                        if (step[x][y] && !seen.count(y)) {
                            seen.insert(y);
                            q.push_back(y);
                        }
                }
                for (int b = 0; b < ls.n && ok; ++b) {
                    bool reach = seen.count(b) || a == b;
                    if (reach != (ls.below_eq(a, b) != 0)) {
                        ok = false;
                        w = "order witness mismatch at " + m.unstable_names[a] + "<=" +
                            m.unstable_names[b];
                    }
                }
            }
            fail_or_pass("leafspace.order_witness", ok, w);
        }

        {
            // class count equals leaves minus chain excess for disjoint chains
            std::set<int> members;
            bool disjoint = true;
            int excess = 0;
            for (const auto& c : ls.cataclysms) {
                excess += (int)c.leaves.size() - 1;
                for (int l : c.leaves)
                    if (!members.insert(l).second) disjoint = false;
            }
            if (!disjoint) {
                rep.skip(id, "leafspace.hausdorff_count", "overlapping chains");
            } else {
                auto q = hausdorffify(ls);
                fail_or_pass("leafspace.hausdorff_count", q.n_classes() == ls.n - excess,
                             "class count mismatch");
            }
        }

        {
            bool ok = true;
            std::string w;
            for (const auto& e : m.ends) {
                for (int a = 0; a < ls.n && ok; ++a) {
                    auto ray = zigzag_ray(ls, a, e);
                    auto rw = walk_of(ls, ray);
                    for (size_t k = 0; k < rw.size() && ok; k += 3) {
                        auto zw = walk_of(ls, zigzag(ls, a, rw[k]));
                        if (!std::equal(zw.begin(), zw.end(), rw.begin())) {
                            ok = false;
                            w = "ray to " + e.id + " disagrees with zigzag prefix";
                        }
                    }
                }
            }
            if (m.ends.empty())
                rep.skip(id, "leafspace.ray_consistency", "no declared ends");
            else
                fail_or_pass("leafspace.ray_consistency", ok, w);
        }
    }

    void section_checks() {
        bool adm = true, corners = true;
        std::string w_adm, w_cor;
        for (size_t i = 0; i < uni.sections.size(); ++i) {
            auto r = is_admissible(ls, uni.sections[i]);
            if (!r.admissible) {
                adm = false;
                w_adm = uni.labels[i] + ": " + r.violation;
            }
            if (uni.basepoints[i] >= 0) {
                int base = uni.basepoints[i];
                for (int t = 0; t < ls.n; ++t) {
                    auto z = zigzag(ls, base, t);
                    for (int v : z.landing())
                        if (uni.sections[i].value[v] >= 0) {
                            corners = false;
                            w_cor = uni.labels[i] + " marker at landing " + m.unstable_names[v];
                        }
                }
            }
        }
        fail_or_pass("sections.admissible", adm, w_adm);
        fail_or_pass("sections.corners", corners, w_cor);

        bool nc = true;
        std::string w_nc;
        for (size_t i = 0; i < uni.sections.size() && nc; ++i)
            for (size_t j = i + 1; j < uni.sections.size() && nc; ++j)
                if (sections_cross(ls, uni.sections[i], uni.sections[j])) {
                    nc = false;
                    w_nc = uni.labels[i] + " crosses " + uni.labels[j];
                }
        fail_or_pass("sections.noncrossing", nc, w_nc);

        // triple orientation: witness independence and monotone evaluation
        bool wi = true, mono = true;
        std::string w_wi, w_mono;
        int checked = 0;
        for (size_t i = 0; i < uni.sections.size() && checked < 120; ++i)
            for (size_t j = i + 1; j < uni.sections.size() && checked < 120; ++j)
                for (size_t k = j + 1; k < uni.sections.size() && checked < 120; ++k) {
                    const Section &A = uni.sections[i], &B = uni.sections[j],
                                  &C = uni.sections[k];
                    if (A == B || B == C || A == C) continue;
                    ++checked;
                    int ref = 0;
                    for (int l = 0; l < ls.n; ++l) {
                        int o = fiber_orient(ls, l, A.value[l], B.value[l], C.value[l]);
                        if (o == 0) continue;
                        if (ref == 0)
                            ref = o;
                        else if (o != ref) {
                            wi = false;
                            w_wi = "witness leaves disagree for a section triple";
                        }
                    }
                    if (ref != 0) {
                        int global = section_triple_orient(ls, A, B, C);
                        if (global != 0 && global != ref) {
                            mono = false;
                            w_mono = "fiber evaluation reverses the circular order";
                        }
                    }
                }
        fail_or_pass("sections.witness_independence", wi, w_wi);
        fail_or_pass("sections.monotone_maps", mono, w_mono);
    }

    void current_checks() {
        bool cover = true, sat = true, alt = true, msat = true, nosink = true;
        bool nonempty = true, shape = true, dual = true, no_i = true;
        std::string w_cover, w_sat, w_alt, w_msat, w_nosink, w_ne, w_shape, w_dual, w_noi;

        for (size_t i = 0; i < uni.sections.size(); ++i) {
            const Section& sec = uni.sections[i];
            auto rc = lu_rd_regions(ls, sec);
            for (int a = 0; a < ls.n; ++a) {
                if (!rc.in_lu(a) && !rc.in_rd(a)) {
                    cover = false;
                    w_cover = uni.labels[i] + " misses " + m.unstable_names[a];
                }
                if (rc.in_lu(a))
                    for (int b = 0; b < ls.n; ++b)
                        if (ls.below_eq(a, b) && !rc.in_lu(b)) {
                            sat = false;
                            w_sat = uni.labels[i] + " LU not upward closed at " +
                                    m.unstable_names[b];
                        }
                if (rc.in_rd(a))
                    for (int b = 0; b < ls.n; ++b)
                        if (ls.below_eq(b, a) && !rc.in_rd(b)) {
                            sat = false;
                            w_sat = uni.labels[i] + " RD not downward closed at " +
                                    m.unstable_names[b];
                        }
            }
            for (const auto& c : ls.cataclysms)
                for (size_t x = 0; x < c.leaves.size(); ++x)
                    for (size_t y = x + 1; y < c.leaves.size(); ++y) {
                        if (c.side == BranchSide::FromAbove && rc.in_lu(c.leaves[x]) &&
                            rc.in_lu(c.leaves[y])) {
                            alt = false;
                            w_alt = uni.labels[i] + " has both chain leaves in LU";
                        }
                        if (c.side == BranchSide::FromBelow && rc.in_rd(c.leaves[x]) &&
                            rc.in_rd(c.leaves[y])) {
                            alt = false;
                            w_alt = uni.labels[i] + " has both chain leaves in RD";
                        }
                    }
            for (int a = 0; a < ls.n; ++a) {
                if (sec.value[a] < 0) continue;
                auto mi = marker_interval(ls, sec.value[a]);
                if (rc.in_lu(a))
                    for (int b : mi.leaves)
                        if (!rc.in_lu(b)) {
                            msat = false;
                            w_msat = uni.labels[i] + " marker interval leaves LU at " +
                                     m.unstable_names[b];
                        }
                if (rc.in_rd(a))
                    for (int b : mi.leaves)
                        if (!rc.in_rd(b)) {
                            msat = false;
                            w_msat = uni.labels[i] + " marker interval leaves RD at " +
                                     m.unstable_names[b];
                        }
            }
            for (int a = 0; a < ls.n && nosink; ++a)
                for (int b = 0; b < ls.n && nosink; ++b) {
                    if (a == b) continue;
                    auto z = zigzag(ls, a, b);
                    if (z.intervals.empty() || z.intervals[0].degenerate) continue;
                    const auto& iv = z.intervals[0];
                    int lo = z.breakpoints[iv.lo], hi = z.breakpoints[iv.lo + 1];
                    bool first_ok = true;
                    for (int t = 0; t < ls.n; ++t) {
                        bool inside = iv.up ? (ls.below_eq(lo, t) && ls.below_eq(t, hi))
                                            : (ls.below_eq(hi, t) && ls.below_eq(t, lo));
                        if (!inside) continue;
                        bool good = iv.up ? rc.in_lu(t) : rc.in_rd(t);
                        if (!good) first_ok = false;
                    }
                    if (first_ok && !is_with_current(ls, rc, z).with_current) {
                        nosink = false;
                        w_nosink = uni.labels[i] + " current stops along zigzag " +
                                   m.unstable_names[a] + "->" + m.unstable_names[b];
                    }
                }

            auto base = base_of(ls, sec, rc);
            if (base.kind == BaseKind::AmbiguousAgainstCurrent ||
                base.kind == BaseKind::WindowTruncated) {
                nonempty = false;
                w_ne = uni.labels[i] + ": " + base.detail;
            } else if (base.kind == BaseKind::Leaves && base.leaves.empty()) {
                nonempty = false;
                w_ne = uni.labels[i] + ": empty leaf base";
            }

            auto cls = classify(ls, sec);
            if (cls.type == SectionType::TypeIViolation) {
                no_i = false;
                w_noi = uni.labels[i] + " classifies as type (I)";
            }
            if (cls.type == SectionType::S) {
                // connected and inside an embedded line
                const auto& B = cls.base.leaves;
                for (size_t x = 0; x < B.size() && shape; ++x)
                    for (size_t y = x + 1; y < B.size() && shape; ++y)
                        if (ls.compare(B[x], B[y]) == Order::Incomparable) {
                            shape = false;
                            w_shape = uni.labels[i] + " base leaves incomparable";
                        }
                // connectivity: everything between two base leaves is base
                std::set<int> bset(B.begin(), B.end());
                for (size_t x = 0; x < B.size() && shape; ++x)
                    for (size_t y = 0; y < B.size() && shape; ++y)
                        for (int t = 0; t < ls.n; ++t)
                            if (ls.below_eq(B[x], t) && ls.below_eq(t, B[y]) && !bset.count(t)) {
                                shape = false;
                                w_shape = uni.labels[i] + " base not connected";
                            }
            } else if (cls.type == SectionType::E) {
                const EndDecl* e = m.find_end(cls.base.end_id);
                auto lim = limit_section_at_end(ls, *e);
                if (!lim.ok || !(lim.section == sec)) {
                    shape = false;
                    w_shape = uni.labels[i] + " end-based but not the end limit";
                }
            }

            auto db = definitional_base(ls, sec, rc);
            if (cls.type == SectionType::S) {
                std::set<int> a(cls.base.leaves.begin(), cls.base.leaves.end());
                std::set<int> b(db.leaves.begin(), db.leaves.end());
                if (a != b || !db.end_ids.empty()) {
                    dual = false;
                    w_dual = uni.labels[i] + " definitional and procedural bases differ";
                }
            } else if (cls.type == SectionType::E) {
                if (db.end_ids.size() != 1 || db.end_ids[0] != cls.base.end_id ||
                    !db.leaves.empty()) {
                    dual = false;
                    w_dual = uni.labels[i] + " definitional base disagrees at the end";
                }
            }
        }
        fail_or_pass("current.lu_or_rd", cover, w_cover);
        fail_or_pass("current.up_sat", sat, w_sat);
        fail_or_pass("current.change_at_cataclysm", alt, w_alt);
        fail_or_pass("current.marker_sat", msat, w_msat);
        fail_or_pass("current.no_sink_global", nosink, w_nosink);
        fail_or_pass("current.base_nonempty", nonempty, w_ne);
        fail_or_pass("current.base_shape", shape, w_shape);
        fail_or_pass("current.dual_route", dual, w_dual);
        fail_or_pass("current.no_type_i", no_i, w_noi);
    }

    void master_checks() {
        // independent reconstruction of master sets from shared endpoints
        bool ident = true, fin = true;
        std::string w_id, w_fin;
        {
            int nu = m.n_unstable(), ns = m.n_stable();
            std::vector<std::vector<int>> adj(nu + ns);
            auto add_edge = [&](const LeafEnd& a, const LeafEnd& b) {
                int x = a.leaf.family == Family::Unstable ? a.leaf.index : nu + a.leaf.index;
                int y = b.leaf.family == Family::Unstable ? b.leaf.index : nu + b.leaf.index;
                adj[x].push_back(y);
                adj[y].push_back(x);
            };
            for (const auto& f : m.perfect_fits) add_edge(f.stable_end, f.unstable_end);
            for (const auto& c : m.chains)
                for (const auto& l : c.links) {
                    add_edge(l.left_end, l.right_end);
                    if (l.via_stable) {
                        add_edge({stable_leaf(l.stable), Sign::Minus}, l.left_end);
                    }
                }
            std::vector<int> comp(nu + ns, -1);
            int nc = 0;
            for (int v = 0; v < nu + ns; ++v) {
                if (comp[v] >= 0) continue;
                std::deque<int> q{v};
                comp[v] = nc;
                while (!q.empty()) {
                    int x = q.front();
                    q.pop_front();
                    for (int y : adj[x])
                        if (comp[y] < 0) {
                            comp[y] = nc;
                            q.push_back(y);
                        }
                }
                ++nc;
            }
            // equality of symbolic points must coincide with reconstruction
            for (int a = 0; a < nu && ident; ++a)
                for (int b = 0; b < nu && ident; ++b) {
                    bool same_sym = ms.of_leaf(unstable_leaf(a)) == ms.of_leaf(unstable_leaf(b));
                    bool same_comp = comp[a] == comp[b];
                    if (same_sym != same_comp) {
                        ident = false;
                        w_id = "symbolic identity mismatch at " + m.unstable_names[a] + "," +
                               m.unstable_names[b];
                    }
                }
            for (int a = 0; a < ns && ident; ++a)
                for (int b = 0; b < nu && ident; ++b) {
                    bool same_sym = ms.of_leaf(stable_leaf(a)) == ms.of_leaf(unstable_leaf(b));
                    bool same_comp = comp[nu + a] == comp[b];
                    if (same_sym != same_comp) {
                        ident = false;
                        w_id = "symbolic identity mismatch at " + m.stable_names[a] + "," +
                               m.unstable_names[b];
                    }
                }
            for (const auto& set : ms.sets)
                if (set.leaf_count() > ls.n + m.n_stable()) {
                    fin = false;
                    w_fin = "master set exceeds the window";
                }
        }
        fail_or_pass("master.e_identification", ident, w_id);
        fail_or_pass("master.finite_connected", fin, w_fin);

        if (m.ends.size() < 2) {
            rep.skip(id, "master.f_injective", "fewer than two declared ends");
        } else {
            bool ok = true;
            std::string w;
            for (size_t i = 0; i < m.ends.size() && ok; ++i)
                for (size_t j = i + 1; j < m.ends.size() && ok; ++j) {
                    auto a = f_end(ls, ms, m.ends[i]);
                    auto b = f_end(ls, ms, m.ends[j]);
                    if (a.ok && b.ok && a.point == b.point) {
                        ok = false;
                        w = "ends " + m.ends[i].id + "," + m.ends[j].id + " share a class";
                    }
                }
            fail_or_pass("master.f_injective", ok, w);
        }

        if (m.ends.empty()) {
            rep.skip(id, "master.f_ray_independent", "no declared ends");
        } else {
            bool ok = true;
            std::string w;
            for (const auto& e : m.ends) {
                auto ref = f_end(ls, ms, e);
                for (int t = 0; t < ls.n && ok; t += std::max(1, ls.n / 4)) {
                    auto alt = f_end_from(ls, ms, e, t);
                    if (alt.ok != ref.ok || (alt.ok && !(alt.point == ref.point))) {
                        ok = false;
                        w = "f(" + e.id + ") depends on the chosen ray";
                    }
                }
            }
            fail_or_pass("master.f_ray_independent", ok, w);
        }

        bool qb = true, qm = true;
        std::string w_qb, w_qm;
        for (size_t i = 0; i < uni.sections.size(); ++i) {
            const Section& sec = uni.sections[i];
            auto cls = classify(ls, sec);
            if (cls.type != SectionType::S || cls.base.leaves.size() < 2) continue;
            auto z = zigzag(ls, cls.base.leaves.front(), cls.base.leaves.back());
            auto d = is_ql_extremal(ls, sec, z);
            if (!d.extremal) {
                qb = false;
                w_qb = uni.labels[i] + " not ql-extremal over its base (" + d.failed_condition +
                       ": " + d.witness + ")";
            } else {
                auto r = ql_implies_master(ls, ms, sec, z);
                auto c = ct(ls, ms, sec);
                if (!r.ok || !c.ok || !(r.common == c.value)) {
                    qm = false;
                    w_qm = uni.labels[i] + " ql master value differs from ct";
                }
            }
        }
        fail_or_pass("master.ql_base", qb, w_qb);
        fail_or_pass("master.ql_master", qm, w_qm);

        // limit sections are ql-extremal over the structured part of the ray
        if (m.ends.empty()) {
            rep.skip(id, "master.ql_lim", "no declared ends");
        } else {
            bool ok = true;
            std::string w;
            for (size_t i = 0; i < uni.sections.size(); ++i) {
                if (!uni.limit_of[i]) continue;
                const Section& sec = uni.sections[i];
                const EndDecl* e = uni.limit_of[i];
                auto lim = limit_section_at_end(ls, *e);
                if (!lim.ok || lim.march.empty()) continue;
                // from the first marker leaf walking in from the end
                int from = -1;
                for (auto it = lim.march.rbegin(); it != lim.march.rend(); ++it)
                    if (sec.value[*it] >= 0) from = *it;
                if (from < 0) continue;
                auto z = zigzag(ls, from, lim.march.front());
                auto d = is_ql_extremal(ls, sec, z);
                if (!d.extremal) {
                    ok = false;
                    w = uni.labels[i] + " not ql-extremal over the witness ray (" +
                        d.failed_condition + ")";
                }
            }
            fail_or_pass("master.ql_lim", ok, w);
        }
    }

    void ct_checks() {
        bool wd = true;
        std::string w_wd;
        for (size_t i = 0; i < uni.sections.size(); ++i) {
            auto r = check_well_defined(ls, ms, uni.sections[i]);
            if (!r.ok) {
                wd = false;
                w_wd = uni.labels[i] + " i-map varies over the base (" +
                       m.unstable_names[r.witness_a] + " vs " + m.unstable_names[r.witness_b] +
                       ")";
            }
        }
        fail_or_pass("ct.well_defined", wd, w_wd);

        {
            bool ok = true;
            std::string w;
            for (int l = 0; l < ls.n && ok; l += std::max(1, ls.n / 3)) {
                auto r = check_core_compat(ls, ms, uni.sections, l);
                if (!r.ok) {
                    ok = false;
                    w = r.detail;
                }
            }
            fail_or_pass("ct.core_compat", ok, w);
        }

        if (m.ends.empty()) {
            rep.skip(id, "ct.continuity", "no declared ends");
        } else {
            bool ok = true, any = false;
            std::string w;
            for (const auto& e : m.ends) {
                auto r = continuity_sample(ls, ms, e);
                if (!r.ok && r.error.rfind("no_stabilization", 0) == 0) continue;
                any = true;
                if (!r.ok) {
                    ok = false;
                    w = "end " + e.id + ": " + r.error;
                }
            }
            if (!any)
                rep.skip(id, "ct.continuity", "no stabilizing end families");
            else
                fail_or_pass("ct.continuity", ok, w);
        }

        if (m.automorphisms.empty()) {
            rep.skip(id, "ct.equivariance", "no automorphisms");
        } else {
            bool ok = true;
            std::string w;
            for (const auto& g : m.automorphisms) {
                for (size_t i = 0; i < uni.sections.size() && ok; ++i) {
                    int b = uni.basepoints[i];
                    if (b < 0) continue;
                    auto it = g.unstable_map.find(b);
                    if (it == g.unstable_map.end()) continue;
                    Section img = special_section(ls, nonmarker_at(it->second));
                    auto part = act_on_section(ls, g, uni.sections[i]);
                    if (part) {
                        for (int l = 0; l < ls.n; ++l)
                            if (part->defined(l) && part->value[l] != img.value[l]) {
                                ok = false;
                                w = g.name + " does not intertwine " + uni.labels[i];
                            }
                    }
                    auto c0 = ct(ls, ms, uni.sections[i]);
                    auto c1 = ct(ls, ms, img);
                    if (c0.ok && c1.ok) {
                        auto mapped = map_class(ls, ms, g, c0.value.id);
                        if (mapped && *mapped != c1.value.id) {
                            ok = false;
                            w = g.name + " breaks ct equivariance on " + uni.labels[i];
                        }
                    }
                }
            }
            fail_or_pass("ct.equivariance", ok, w);
        }
    }

    void dynamics_checks() {
        if (m.automorphisms.empty()) {
            rep.skip(id, "dynamics.equivariance", "no automorphisms");
            rep.skip(id, "dynamics.alternation", "no automorphisms");
            return;
        }
        bool eq = true;
        std::string w_eq;
        for (const auto& g : m.automorphisms) {
            for (size_t i = 0; i < uni.sections.size() && eq; ++i) {
                int b = uni.basepoints[i];
                if (b < 0) continue;
                auto it = g.unstable_map.find(b);
                if (it == g.unstable_map.end()) continue;
                const Section& sec = uni.sections[i];
                Section img = special_section(ls, nonmarker_at(it->second));
                auto rc0 = lu_rd_regions(ls, sec);
                auto rc1 = lu_rd_regions(ls, img);
                auto b0 = base_of(ls, sec, rc0);
                auto b1 = base_of(ls, img, rc1);
                std::set<int> base0(b0.leaves.begin(), b0.leaves.end());
                std::set<int> base1(b1.leaves.begin(), b1.leaves.end());
                for (const auto& [x, y] : g.unstable_map) {
                    // memberships transport along g where the saturations are
                    // fully visible on both sides
                    bool interior = true;
                    for (int t = 0; t < ls.n; ++t) {
                        if ((ls.below_eq(x, t) || ls.below_eq(t, x)) &&
                            !g.unstable_map.count(t))
                            interior = false;
                    }
                    if (!interior) continue;
                    if (rc0.in_lu(x) != rc1.in_lu(y) || rc0.in_rd(x) != rc1.in_rd(y)) {
                        eq = false;
                        w_eq = g.name + " breaks lu/rd equivariance at " + m.unstable_names[x];
                    }
                    if (b0.kind == BaseKind::Leaves && b1.kind == BaseKind::Leaves &&
                        base0.count(x) != base1.count(y)) {
                        eq = false;
                        w_eq = g.name + " breaks base equivariance at " + m.unstable_names[x];
                    }
                }
            }
        }
        fail_or_pass("dynamics.equivariance", eq, w_eq);

        bool alt_ok = true;
        bool attempted = false;
        std::string w_alt;
        for (const auto& g : m.automorphisms) {
            bool identity = true;
            for (const auto& [a, b] : g.unstable_map)
                if (a != b) identity = false;
            if (identity) continue;
            std::vector<int> sample;
            for (int a = 0; a < ls.n; ++a) sample.push_back(a);
            auto r = periodic_sections(ls, ms, g, 1, sample);
            if (!r.ok) continue;
            int fixed = (int)r.records.size();
            if (fixed < 2) continue;
            attempted = true;
            for (int i = 0; i < fixed; ++i) {
                auto a = r.records[i].cls;
                auto b = r.records[(i + 1) % fixed].cls;
                if (a == FixedPointClass::Undetermined || a == b) {
                    alt_ok = false;
                    w_alt = g.name + " fixed points do not alternate";
                }
            }
        }
        if (!attempted)
            rep.skip(id, "dynamics.alternation", "no multi-fixed-point automorphism");
        else
            fail_or_pass("dynamics.alternation", alt_ok, w_alt);
    }

    void oracle_checks(int leaf_limit) {
        if (ls.n > leaf_limit) {
            rep.skip(id, "oracle.leftmost", "window larger than the oracle limit");
            return;
        }
        auto all = enumerate_admissible(ls, 2000000);
        bool ok = true;
        std::string w;
        for (int a = 0; a < ls.n && ok; ++a) {
            std::vector<FiberPoint> points{nonmarker_at(a)};
            for (int s : m.crossings_along_unstable[a]) points.push_back(marker_at(a, s));
            for (const auto& p : points) {
                Section g = special_section(ls, p);
                if (!is_admissible(ls, g).admissible) {
                    ok = false;
                    w = "greedy section through " + m.unstable_names[a] + " inadmissible";
                    break;
                }
                for (const auto& tau : all) {
                    if (tau.value[p.leaf] != p.stable) continue;
                    if (tau == g) continue;
                    if (!improves(ls, p, g, tau)) {
                        ok = false;
                        w = "admissible section beats the greedy at " + m.unstable_names[a];
                        break;
                    }
                    if (sections_cross(ls, g, tau)) {
                        ok = false;
                        w = "greedy crosses an admissible section at " + m.unstable_names[a];
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        fail_or_pass("oracle.leftmost", ok, w);
    }

    void render_checks() {
        auto a1 = render_orbit_svg(ls);
        auto a2 = render_orbit_svg(ls);
        bool ok = a1 == a2;
        if (!uni.sections.empty()) {
            auto rc = lu_rd_regions(ls, uni.sections[0]);
            ok = ok && render_coloring_svg(ls, uni.sections[0], rc) ==
                           render_coloring_svg(ls, uni.sections[0], rc);
        }
        fail_or_pass("render.deterministic", ok, "render output unstable");
    }
};

} // namespace

void check_model(SuiteReport& rep, const std::string& id, const OrbitModel& m) {
    auto v = validate_model(m);
    if (!v.ok()) {
        for (const auto& inv : invariant_registry())
            if (inv == "model.validate")
                rep.add(id, inv, false, v.violations.front().detail);
            else
                rep.skip(id, inv, "model invalid");
        return;
    }
    LeafSpace ls = derive_leaf_space(m);
    MasterSets ms = master_sets(ls);
    SectionUniverse uni = build_universe(ls);
    Checker c{rep, id, m, ls, ms, uni};
    c.model_checks();
    c.leafspace_checks();
    c.section_checks();
    c.current_checks();
    c.master_checks();
    c.ct_checks();
    c.dynamics_checks();
    c.oracle_checks(8);
    c.render_checks();
}

SuiteReport run_suites(const SuiteConfig& cfg) {
    SuiteReport rep;
    if (cfg.fixtures) {
        // structural fixtures carry their own unit tests; the deep sweeps run
        // on the saturated fixtures and the corpus
        for (const auto& name : fixtures::names()) {
            OrbitModel m = fixtures::by_name(name);
            auto v = validate_model(m);
            rep.add(name, "model.validate", v.ok(),
                    v.ok() ? "" : v.violations.front().detail);
            auto text = serialize(m);
            bool rt = serialize(parse_model(text)) == text;
            rep.add(name, "model.roundtrip", rt, "round trip changed the model");
            if (name == "M2" || name == "M4") check_model(rep, name + ".deep", m);
        }
    }
    if (cfg.corpus) {
        auto corpus = generate_corpus(cfg.seed, cfg.count, cfg.max_leaves);
        for (size_t i = 0; i < corpus.size(); ++i) {
            std::ostringstream id;
            id << "corpus-" << cfg.seed << "-" << i;
            check_model(rep, id.str(), corpus[i]);
        }
    }
    return rep;
}

} // namespace anosov
