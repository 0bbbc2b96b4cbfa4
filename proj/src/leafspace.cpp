#include "anosov/leafspace.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace anosov {

std::vector<int> ZigzagPath::launching() const {
    std::vector<int> out;
    for (size_t j = 1; j + 1 < breakpoints.size(); j += 2) out.push_back(breakpoints[j]);
    return out;
}

std::vector<int> ZigzagPath::landing() const {
    std::vector<int> out;
    for (size_t j = 2; j < breakpoints.size(); j += 2) out.push_back(breakpoints[j]);
    return out;
}

ZigzagPath ZigzagPath::reversed() const {
    ZigzagPath r;
    r.breakpoints.assign(breakpoints.rbegin(), breakpoints.rend());
    int m = (int)intervals.size();
    r.intervals.resize(m);
    for (int k = 0; k < m; ++k) {
        r.intervals[k].lo = 2 * k;
        r.intervals[k].up = !intervals[m - 1 - k].up;
        r.intervals[k].degenerate = intervals[m - 1 - k].degenerate;
    }
    return r;
}

bool ZigzagPath::contains(int leaf) const {
    return std::find(breakpoints.begin(), breakpoints.end(), leaf) != breakpoints.end();
}

Order LeafSpace::compare(int a, int b) const {
    if (a == b) return Order::Equal;
    if (leq[a][b]) return Order::Below;
    if (leq[b][a]) return Order::Above;
    return Order::Incomparable;
}

std::vector<int> LeafSpace::up_set(int a) const {
    std::vector<int> out;
    for (int b = 0; b < n; ++b)
        if (leq[a][b]) out.push_back(b);
    return out;
}

std::vector<int> LeafSpace::down_set(int a) const {
    std::vector<int> out;
    for (int b = 0; b < n; ++b)
        if (leq[b][a]) out.push_back(b);
    return out;
}

std::vector<LeafSpace::Exit> LeafSpace::exits(int a, bool up) const {
    std::vector<Exit> out;
    for (int b = 0; b < n; ++b) {
        bool in_set = up ? leq[a][b] != 0 : leq[b][a] != 0;
        if (!in_set) continue;
        bool extreme = up ? covers_up[b].empty() : covers_down[b].empty();
        if (!extreme) continue;
        Exit e{b, nullptr};
        for (const auto& d : model->ends)
            if (d.attachment == b && d.side == (up ? Sign::Plus : Sign::Minus)) e.end = &d;
        out.push_back(e);
    }
    return out;
}

bool LeafSpace::nonseparated(int a, int b) const {
    if (a == b) return false;
    for (int ci : cataclysms_of[a]) {
        const auto& c = cataclysms[ci];
        if (std::find(c.leaves.begin(), c.leaves.end(), b) != c.leaves.end()) return true;
    }
    return false;
}

std::vector<int> LeafSpace::cataclysm_partners(int a) const {
    std::set<int> out;
    for (int ci : cataclysms_of[a])
        for (int l : cataclysms[ci].leaves)
            if (l != a) out.insert(l);
    return std::vector<int>(out.begin(), out.end());
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

LeafSpace derive_leaf_space(const OrbitModel& m) {
    LeafSpace ls;
    ls.model = &m;
    int n = ls.n = m.n_unstable();
    ls.leq.assign(n, std::vector<uint8_t>(n, 0));
    for (int i = 0; i < n; ++i) ls.leq[i][i] = 1;

    std::vector<std::vector<uint8_t>> lt(n, std::vector<uint8_t>(n, 0)); // strict

    for (int s = 0; s < m.n_stable(); ++s) {
        const auto& cs = m.crossings_along_stable[s];
        for (size_t i = 0; i + 1 < cs.size(); ++i) lt[cs[i]][cs[i + 1]] = 1;
    }
    for (const auto& f : m.perfect_fits) {
        const auto& cs = m.crossings_along_stable[f.stable_end.leaf.index];
        if (cs.empty()) throw LeafSpaceError("perfect fit on crossing-less stable leaf");
        int u = f.unstable_end.leaf.index;
        if (f.stable_end.sign == Sign::Minus)
            lt[u][cs.front()] = 1;
        else
            lt[cs.back()][u] = 1;
    }

    auto close = [&]() {
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                if (!lt[i][k]) continue;
                for (int j = 0; j < n; ++j)
                    if (lt[k][j]) lt[i][j] = 1;
            }
    };
    close();

    for (const auto& c : m.chains) {
        if (c.family != Family::Unstable) continue;
        ls.cataclysms.push_back({c.leaves, c.side});
    }
    ls.cataclysms_of.assign(n, {});
    for (size_t ci = 0; ci < ls.cataclysms.size(); ++ci)
        for (int l : ls.cataclysms[ci].leaves) ls.cataclysms_of[l].push_back((int)ci);

    // a leaf above one member of a from-above cataclysm is above all of them
    // (the approaching germ converges to the whole cataclysm); mirror below
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : ls.cataclysms) {
            for (int z = 0; z < n; ++z) {
                bool rel = false;
                for (int l : c.leaves) {
                    if (l == z) continue;
                    bool r = c.side == BranchSide::FromAbove ? lt[l][z] != 0 : lt[z][l] != 0;
                    if (r) rel = true;
                }
                if (!rel) continue;
                for (int l : c.leaves) {
                    if (l == z) continue;
                    auto& cell = c.side == BranchSide::FromAbove ? lt[l][z] : lt[z][l];
                    if (!cell) {
                        cell = 1;
                        changed = true;
                    }
                }
            }
        }
        if (changed) close();
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (lt[i][j]) {
                if (lt[j][i])
                    throw LeafSpaceError("order not simply connected (cycle through " +
                                         m.unstable_names[i] + ")");
                ls.leq[i][j] = 1;
            }

    for (const auto& c : ls.cataclysms)
        for (size_t i = 0; i < c.leaves.size(); ++i)
            for (size_t j = i + 1; j < c.leaves.size(); ++j) {
                int a = c.leaves[i], b = c.leaves[j];
                if (lt[a][b] || lt[b][a])
                    throw LeafSpaceError("derived order makes chain leaves " +
                                         m.unstable_names[a] + "," + m.unstable_names[b] +
                                         " comparable");
            }

    ls.covers_up.assign(n, {});
    ls.covers_down.assign(n, {});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!lt[a][b]) continue;
            bool cover = true;
            for (int c = 0; c < n && cover; ++c)
                if (c != a && c != b && lt[a][c] && lt[c][b]) cover = false;
            if (cover) {
                ls.covers_up[a].push_back(b);
                ls.covers_down[b].push_back(a);
            }
        }

    auto common_cataclysm = [&](int a, int b, BranchSide side) {
        for (int ci : ls.cataclysms_of[a]) {
            const auto& c = ls.cataclysms[ci];
            if (c.side != side) continue;
            if (std::find(c.leaves.begin(), c.leaves.end(), b) != c.leaves.end()) return true;
        }
        return false;
    };
    for (int x = 0; x < n; ++x) {
        const auto& dc = ls.covers_down[x];
        for (size_t i = 0; i < dc.size(); ++i)
            for (size_t j = i + 1; j < dc.size(); ++j)
                if (!common_cataclysm(dc[i], dc[j], BranchSide::FromAbove))
                    throw LeafSpaceError("leaf " + m.unstable_names[x] +
                                         " approaches undeclared branching from above");
        const auto& uc = ls.covers_up[x];
        for (size_t i = 0; i < uc.size(); ++i)
            for (size_t j = i + 1; j < uc.size(); ++j)
                if (!common_cataclysm(uc[i], uc[j], BranchSide::FromBelow))
                    throw LeafSpaceError("leaf " + m.unstable_names[x] +
                                         " approaches undeclared branching from below");
    }

    UnionFind uf(n);
    for (const auto& c : ls.cataclysms)
        for (size_t i = 1; i < c.leaves.size(); ++i) uf.unite(c.leaves[0], c.leaves[i]);
    std::map<int, int> root_to_class;
    ls.h_class.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        auto it = root_to_class.find(r);
        if (it == root_to_class.end()) {
            root_to_class[r] = (int)ls.h_members.size();
            ls.h_members.push_back({});
        }
        ls.h_class[i] = root_to_class[r];
        ls.h_members[root_to_class[r]].push_back(i);
    }

    // overlapping chains inside one class must form a clique tree: the jump
    // routing below is otherwise ambiguous
    {
        std::vector<int> excess(ls.h_members.size(), 0);
        for (const auto& c : ls.cataclysms)
            excess[ls.h_class[c.leaves[0]]] += (int)c.leaves.size() - 1;
        for (size_t k = 0; k < ls.h_members.size(); ++k)
            if (ls.h_members[k].size() > 1 && excess[k] != (int)ls.h_members[k].size() - 1)
                throw LeafSpaceError("overlapping chains form a cycle at class of " +
                                     m.unstable_names[ls.h_members[k][0]]);
    }

    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
    for (int a = 0; a < n; ++a)
        for (int b : ls.covers_up[a]) {
            int ca = ls.h_class[a], cb = ls.h_class[b];
            if (ca == cb)
                throw LeafSpaceError("cover inside a cataclysm class at " + m.unstable_names[a]);
            edges[{ca, cb}].push_back({a, b});
        }
    ls.qadj.assign(std::max<size_t>(ls.h_members.size(), 1), {});
    std::set<std::pair<int, int>> seen_pair;
    for (auto& [key, pairs] : edges) {
        int lo = key.first, hi = key.second;
        auto norm = std::minmax(lo, hi);
        if (!seen_pair.insert({norm.first, norm.second}).second)
            throw LeafSpaceError("order not simply connected (two-class cycle)");
        LeafSpace::QEdge e;
        e.lo_class = lo;
        e.hi_class = hi;
        e.pairs = pairs;
        ls.qadj[lo].push_back((int)ls.qedges.size());
        ls.qadj[hi].push_back((int)ls.qedges.size());
        ls.qedges.push_back(e);
    }

    if (n > 0) {
        std::vector<int> seen(ls.h_members.size(), 0);
        std::vector<int> parent_edge(ls.h_members.size(), -1);
        std::deque<int> q{0};
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            int c = q.front();
            q.pop_front();
            for (int ei : ls.qadj[c]) {
                if (ei == parent_edge[c]) continue;
                const auto& e = ls.qedges[ei];
                int d = e.lo_class == c ? e.hi_class : e.lo_class;
                if (seen[d]) throw LeafSpaceError("order not simply connected (cycle found)");
                seen[d] = 1;
                parent_edge[d] = ei;
                ++count;
                q.push_back(d);
            }
        }
        if (count != (int)ls.h_members.size())
            throw LeafSpaceError("leaf space is disconnected");
    }

    for (const auto& e : m.ends) {
        if (e.side == Sign::Plus && !ls.covers_up[e.attachment].empty())
            throw LeafSpaceError("end '" + e.id + "' attached above a non-frontier leaf");
        if (e.side == Sign::Minus && !ls.covers_down[e.attachment].empty())
            throw LeafSpaceError("end '" + e.id + "' attached below a non-frontier leaf");
    }

    {
        std::vector<int> path;
        std::function<void(int)> dfs = [&](int x) {
            path.push_back(x);
            if (ls.covers_up[x].empty())
                ls.charts.push_back(path);
            else
                for (int y : ls.covers_up[x]) dfs(y);
            path.pop_back();
        };
        for (int x = 0; x < n; ++x)
            if (ls.covers_down[x].empty()) dfs(x);
    }

    for (int s = 0; s < m.n_stable(); ++s) {
        const auto& cs = m.crossings_along_stable[s];
        for (size_t i = 0; i + 1 < cs.size(); ++i)
            if (!lt[cs[i]][cs[i + 1]])
                throw LeafSpaceError("crossings along " + m.stable_names[s] +
                                     " are not ascending in the derived order");
    }

    ls.fiber_pos.assign(n, std::vector<int>(m.n_stable(), -1));
    for (int u = 0; u < n; ++u) {
        const auto& cu = m.crossings_along_unstable[u];
        for (size_t k = 0; k < cu.size(); ++k) ls.fiber_pos[u][cu[k]] = (int)k;
    }
    ls.ul_roads.assign(n, {});
    ls.lr_roads.assign(n, {});
    for (const auto& f : m.perfect_fits) {
        int u = f.unstable_end.leaf.index;
        int s = f.stable_end.leaf.index;
        if (f.stable_end.sign == Sign::Minus && f.unstable_end.sign == Sign::Minus)
            ls.ul_roads[u].push_back(s);
        if (f.stable_end.sign == Sign::Plus && f.unstable_end.sign == Sign::Plus)
            ls.lr_roads[u].push_back(s);
    }

    return ls;
}

Order comparable(const LeafSpace& ls, int a, int b) { return ls.compare(a, b); }

namespace {

struct Move {
    bool jump;
    int from, to;
    bool up; // cover steps only
};

// jump route between two members of one Hausdorff class: BFS over cataclysm
// cliques; the clique tree makes shortest routes unique
std::vector<int> member_route(const LeafSpace& ls, int from, int to) {
    if (from == to) return {from};
    std::map<int, int> prev;
    std::deque<int> q{from};
    prev[from] = from;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int y : ls.cataclysm_partners(x)) {
            if (prev.count(y)) continue;
            prev[y] = x;
            if (y == to) {
                std::vector<int> route{to};
                int cur = to;
                while (cur != from) {
                    cur = prev[cur];
                    route.push_back(cur);
                }
                std::reverse(route.begin(), route.end());
                return route;
            }
            q.push_back(y);
        }
    }
    throw LeafSpaceError("no jump route inside cataclysm class");
}

int route_length(const LeafSpace& ls, int from, int to) {
    return (int)member_route(ls, from, to).size() - 1;
}

BranchSide jump_side(const LeafSpace& ls, int a, int b) {
    for (int ci : ls.cataclysms_of[a]) {
        const auto& c = ls.cataclysms[ci];
        if (std::find(c.leaves.begin(), c.leaves.end(), b) != c.leaves.end()) return c.side;
    }
    throw LeafSpaceError("jump between non-nonseparated leaves");
}

ZigzagPath assemble(const LeafSpace& ls, int a, const std::vector<Move>& moves) {
    ZigzagPath z;
    if (moves.empty()) {
        z.breakpoints = {a};
        return z;
    }
    struct Piece {
        bool jump;
        int from, to;
        bool up;
        bool degenerate;
    };
    // compress cover runs
    std::vector<Piece> pieces;
    size_t i = 0;
    while (i < moves.size()) {
        if (moves[i].jump) {
            pieces.push_back({true, moves[i].from, moves[i].to, false, false});
            ++i;
        } else {
            bool up = moves[i].up;
            int start = moves[i].from;
            int end = moves[i].to;
            ++i;
            while (i < moves.size() && !moves[i].jump && moves[i].up == up) {
                end = moves[i].to;
                ++i;
            }
            pieces.push_back({false, start, end, up, false});
        }
    }
    // alternate intervals and jumps, inserting degenerate intervals
    std::vector<Piece> full;
    for (const auto& p : pieces) {
        if (p.jump) {
            if (full.empty() || full.back().jump)
                full.push_back({false, p.from, p.from, false, true});
        } else if (!full.empty() && !full.back().jump) {
            throw LeafSpaceError("zigzag direction change without a jump");
        }
        full.push_back(p);
    }
    if (full.back().jump) full.push_back({false, full.back().to, full.back().to, false, true});

    std::vector<int> interval_idx;
    for (size_t k = 0; k < full.size(); ++k)
        if (!full[k].jump) interval_idx.push_back((int)k);
    int first_fixed = -1;
    for (size_t t = 0; t < interval_idx.size(); ++t)
        if (!full[interval_idx[t]].degenerate) {
            first_fixed = (int)t;
            break;
        }
    auto force = [&](size_t t, bool up) {
        auto& p = full[interval_idx[t]];
        if (!p.degenerate && p.up != up)
            throw LeafSpaceError("zigzag interval orientations fail to alternate");
        p.up = up;
    };
    if (first_fixed < 0) {
        const Piece* j0 = nullptr;
        for (const auto& p : full)
            if (p.jump) {
                j0 = &p;
                break;
            }
        bool up0 = jump_side(ls, j0->from, j0->to) == BranchSide::FromAbove;
        for (size_t t = 0; t < interval_idx.size(); ++t) force(t, ((int)t % 2 == 0) == up0);
    } else {
        bool base = full[interval_idx[first_fixed]].up;
        for (size_t t = 0; t < interval_idx.size(); ++t)
            force(t, ((((int)t - first_fixed) % 2) == 0) ? base : !base);
    }

    z.breakpoints.push_back(full.front().from);
    for (const auto& p : full) {
        z.breakpoints.push_back(p.to);
        if (!p.jump) {
            ZigzagInterval zi;
            zi.lo = (int)z.breakpoints.size() - 2;
            zi.up = p.up;
            zi.degenerate = p.degenerate;
            z.intervals.push_back(zi);
        }
    }
    return z;
}

} // namespace

ZigzagPath zigzag(const LeafSpace& ls, int a, int b) {
    if (a == b) {
        ZigzagPath z;
        z.breakpoints = {a};
        return z;
    }
    int ca = ls.h_class[a], cb = ls.h_class[b];
    std::vector<Move> moves;
    if (ca == cb) {
        auto route = member_route(ls, a, b);
        for (size_t i = 0; i + 1 < route.size(); ++i)
            moves.push_back({true, route[i], route[i + 1], false});
        return assemble(ls, a, moves);
    }

    std::map<int, std::pair<int, int>> prev; // class -> (prev class, edge id)
    std::deque<int> bfs{ca};
    prev[ca] = {ca, -1};
    while (!bfs.empty() && !prev.count(cb)) {
        int c = bfs.front();
        bfs.pop_front();
        for (int ei : ls.qadj[c]) {
            const auto& e = ls.qedges[ei];
            int d = e.lo_class == c ? e.hi_class : e.lo_class;
            if (prev.count(d)) continue;
            prev[d] = {c, ei};
            bfs.push_back(d);
        }
    }
    if (!prev.count(cb)) throw LeafSpaceError("leaf space is disconnected");
    std::vector<int> edge_path;
    {
        int c = cb;
        while (c != ca) {
            edge_path.push_back(prev[c].second);
            c = prev[c].first;
        }
        std::reverse(edge_path.begin(), edge_path.end());
    }

    // DP over entry members per class to minimize jumps; ties are ambiguity
    int steps = (int)edge_path.size();
    struct State {
        int cost;
        int prev_member;
        int pair_idx;
        int count; // optimal choices reaching this state
    };
    std::vector<std::map<int, State>> dp(steps + 1);
    dp[0][a] = {0, -1, -1, 1};
    int cur_class = ca;
    std::vector<uint8_t> step_up(steps);
    for (int i = 0; i < steps; ++i) {
        const auto& e = ls.qedges[edge_path[i]];
        bool up = e.lo_class == cur_class;
        step_up[i] = up;
        for (const auto& [w, st] : dp[i]) {
            for (size_t k = 0; k < e.pairs.size(); ++k) {
                int here = up ? e.pairs[k].first : e.pairs[k].second;
                int there = up ? e.pairs[k].second : e.pairs[k].first;
                int c = st.cost + route_length(ls, w, here);
                auto it = dp[i + 1].find(there);
                if (it == dp[i + 1].end() || c < it->second.cost) {
                    dp[i + 1][there] = {c, w, (int)k, 1};
                } else if (c == it->second.cost &&
                           (it->second.prev_member != w || it->second.pair_idx != (int)k)) {
                    it->second.count += 1;
                }
            }
        }
        cur_class = up ? e.hi_class : e.lo_class;
    }
    int best_member = -1, best_cost = 1 << 30, best_count = 0;
    for (const auto& [w, st] : dp[steps]) {
        int c = st.cost + route_length(ls, w, b);
        if (c < best_cost) {
            best_cost = c;
            best_member = w;
            best_count = st.count;
        } else if (c == best_cost && w != best_member) {
            best_count += 1;
        }
    }
    if (best_count != 1)
        throw LeafSpaceError("ambiguous minimal zigzag from " + ls.model->unstable_names[a] +
                             " to " + ls.model->unstable_names[b]);

    // reconstruct
    std::vector<std::pair<int, int>> chosen(steps); // (entry member, pair idx)
    int member = best_member;
    for (int i = steps; i > 0; --i) {
        const auto& st = dp[i][member];
        chosen[i - 1] = {st.prev_member, st.pair_idx};
        member = st.prev_member;
    }
    int cur = a;
    cur_class = ca;
    for (int i = 0; i < steps; ++i) {
        const auto& e = ls.qedges[edge_path[i]];
        bool up = step_up[i] != 0;
        int here = up ? e.pairs[chosen[i].second].first : e.pairs[chosen[i].second].second;
        int there = up ? e.pairs[chosen[i].second].second : e.pairs[chosen[i].second].first;
        auto route = member_route(ls, cur, here);
        for (size_t t = 0; t + 1 < route.size(); ++t)
            moves.push_back({true, route[t], route[t + 1], false});
        moves.push_back({false, here, there, up});
        cur = there;
        cur_class = up ? e.hi_class : e.lo_class;
    }
    if (cur != b) {
        auto route = member_route(ls, cur, b);
        for (size_t t = 0; t + 1 < route.size(); ++t)
            moves.push_back({true, route[t], route[t + 1], false});
    }
    return assemble(ls, a, moves);
}

ZigzagPath zigzag_ray(const LeafSpace& ls, int a, const EndDecl& e) {
    return zigzag(ls, a, e.attachment);
}

HausdorffQuotient hausdorffify(const LeafSpace& ls) {
    HausdorffQuotient q;
    q.classes = ls.h_members;
    return q;
}

} // namespace anosov
