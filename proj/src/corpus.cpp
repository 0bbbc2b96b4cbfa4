#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "anosov/leafspace.hpp"
#include "anosov/model.hpp"

namespace anosov {

namespace {

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        // splitmix64: stable across platforms
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return n <= 0 ? 0 : (int)(next() % (uint64_t)n); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); } // inclusive
    bool chance(int pct) { return below(100) < pct; }
};

struct Build {
    OrbitModel m;
    // per-leaf fiber rows assembled at the end: (ordering key, stable index)
    std::map<int, std::vector<std::pair<std::pair<int, int>, int>>> fiber_rows;

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
    int road(const std::string& name, const std::vector<int>& crossed,
             std::pair<int, int> key) {
        int si = s(name);
        m.crossings_along_stable[si] = crossed;
        for (int un : crossed) fiber_rows[un].push_back({key, si});
        return si;
    }
    void fit(int si, Sign ss, int ui, Sign us) {
        m.perfect_fits.push_back({{stable_leaf(si), ss}, {unstable_leaf(ui), us}});
    }
    void finish_fibers() {
        for (auto& [ui, row] : fiber_rows) {
            std::sort(row.begin(), row.end());
            for (auto& [k, si] : row) m.crossings_along_unstable[ui].push_back(si);
        }
    }
};

// Spiral road tile over a chart segment: every road is born at an interior
// leaf's minus corner and dies at a plus corner three leaves up, so every
// interior leaf carries an upper-left and a lower-right attachment. Margins
// are bare runways that the edge roads cross on their way out of the window.
void tile_chart(Build& b, const std::vector<int>& C, int mb, int mt,
                const std::string& prefix) {
    int N = (int)C.size();
    int lo = mb, hi = N - 1 - mt;
    // roads indexed by birth leaf; younger roads sit closer to the minus end
    for (int j = lo; j <= hi; ++j) {
        std::vector<int> cr;
        bool dies = j + 3 <= hi;
        int top = dies ? j + 2 : N - 1;
        for (int i = j + 1; i <= top; ++i) cr.push_back(C[i]);
        if (cr.empty()) continue;
        int si = b.road(prefix + "r" + std::to_string(j), cr, {0, -j});
        b.fit(si, Sign::Minus, C[j], Sign::Minus);
        if (dies) b.fit(si, Sign::Plus, C[j + 3], Sign::Plus);
    }
    // roads born below the window, dying at the first interior plus corners
    for (int d = lo; d <= std::min(hi, lo + 2); ++d) {
        std::vector<int> cr;
        for (int i = 0; i <= d - 1; ++i) cr.push_back(C[i]);
        if (cr.empty()) continue;
        int si = b.road(prefix + "rm" + std::to_string(d - lo + 1), cr, {0, -(d - 3)});
        b.fit(si, Sign::Plus, C[d], Sign::Plus);
    }
}

std::vector<int> make_chart(Build& b, const std::string& prefix, int len) {
    std::vector<int> C;
    for (int i = 0; i < len; ++i) C.push_back(b.u(prefix + std::to_string(i)));
    return C;
}

void declare_end(Build& b, const std::string& id, int leaf, Sign side) {
    b.m.ends.push_back({id, leaf, side, std::nullopt});
}

// branch hanging from the main chart across a cataclysm; the via stable dies
// at the shared corner, and an outer road from the parent chart dies at the
// landing leaf's outward corner so the junction stays saturated
void attach_branch(Build& b, const std::vector<int>& A, int k, bool from_below,
                   const std::vector<int>& B, int tag) {
    std::string vname = "v" + std::to_string(tag);
    std::string ename = "e" + std::to_string(tag);
    BranchingChain c;
    c.family = Family::Unstable;
    if (from_below) {
        int w = A[k], x = A[k + 1], y = B.front();
        std::vector<int> upto_w(A.begin(), A.begin() + k + 1);
        int vi = b.road(vname, upto_w, {2, 2 * tag});
        b.fit(vi, Sign::Plus, x, Sign::Plus);
        b.fit(vi, Sign::Plus, y, Sign::Minus);
        std::vector<int> below(A.begin(), A.begin() + k + 1);
        int ei = b.road(ename, below, {2, 2 * tag + 1});
        b.fit(ei, Sign::Plus, y, Sign::Plus);
        c.side = BranchSide::FromBelow;
        c.leaves = {x, y};
        ChainLink l;
        l.via_stable = true;
        l.stable = vi;
        l.left_end = {unstable_leaf(x), Sign::Plus};
        l.right_end = {unstable_leaf(y), Sign::Minus};
        c.links = {l};
    } else {
        int z = A[k + 1], x = A[k], y = B.back();
        std::vector<int> from_z(A.begin() + k + 1, A.end());
        int vi = b.road(vname, from_z, {2, 2 * tag});
        b.fit(vi, Sign::Minus, x, Sign::Plus);
        b.fit(vi, Sign::Minus, y, Sign::Minus);
        std::vector<int> above(A.begin() + k + 1, A.end());
        int ei = b.road(ename, above, {2, 2 * tag + 1});
        b.fit(ei, Sign::Minus, y, Sign::Plus);
        c.side = BranchSide::FromAbove;
        c.leaves = {x, y};
        ChainLink l;
        l.via_stable = true;
        l.stable = vi;
        l.left_end = {unstable_leaf(x), Sign::Plus};
        l.right_end = {unstable_leaf(y), Sign::Minus};
        c.links = {l};
    }
    b.m.chains.push_back(c);
}

void add_identity_automorphism(Build& b) {
    Automorphism g;
    g.name = "id";
    for (int i = 0; i < b.m.n_unstable(); ++i) g.unstable_map[i] = i;
    for (int i = 0; i < b.m.n_stable(); ++i) g.stable_map[i] = i;
    for (const auto& e : b.m.ends) g.end_map[e.id] = e.id;
    b.m.automorphisms.push_back(g);
}

OrbitModel gen_tiny(Rng& rng, int max_leaves) {
    Build b;
    int n = rng.range(3, std::min(8, std::max(3, max_leaves)));
    auto C = make_chart(b, "u", n);
    tile_chart(b, C, 0, 0, "");
    b.finish_fibers();
    if (rng.chance(25)) add_identity_automorphism(b);
    return b.m;
}

OrbitModel gen_periodic(Rng& rng, int max_leaves) {
    Build b;
    int reps = rng.range(3, 4);
    int body = 3 * reps;
    if (body + 4 > max_leaves) reps = 3, body = 9;
    // chart r1 < r0 < m0 .. m_{body-1} < s0 < s1
    std::vector<int> C;
    C.push_back(b.u("r1"));
    C.push_back(b.u("r0"));
    for (int i = 0; i < body; ++i) C.push_back(b.u("m" + std::to_string(i)));
    C.push_back(b.u("s0"));
    C.push_back(b.u("s1"));
    tile_chart(b, C, 2, 2, "");
    b.finish_fibers();
    declare_end(b, "tau-", C.front(), Sign::Minus);
    declare_end(b, "tau+", C.back(), Sign::Plus);

    Automorphism g;
    g.name = "g";
    for (int i = 1; i <= body - 5; ++i)
        g.unstable_map[b.u("m" + std::to_string(i))] = b.u("m" + std::to_string(i + 3));
    for (int j = 2; j <= body + 1; ++j) {
        int a = b.m.stable_index("r" + std::to_string(j));
        int c = b.m.stable_index("r" + std::to_string(j + 3));
        if (a >= 0 && c >= 0) g.stable_map[a] = c;
    }
    for (int k = 1; k <= 3; ++k) {
        int a = b.m.stable_index("rm" + std::to_string(k));
        int c = b.m.stable_index("r" + std::to_string(k + 1));
        if (a >= 0 && c >= 0) g.stable_map[a] = c;
    }
    g.end_map["tau-"] = "tau-";
    g.end_map["tau+"] = "tau+";
    b.m.automorphisms.push_back(g);
    return b.m;
}

OrbitModel gen_chart(Rng& rng, int max_leaves) {
    Build b;
    int budget = max_leaves;
    bool end_bot = rng.chance(70);
    bool end_top = rng.chance(70);
    int mb = end_bot ? 2 : 0, mt = end_top ? 2 : 0;
    int body_max = std::min(16, budget - mb - mt - 1);
    int L = rng.range(std::max(6, std::min(8, body_max)), std::max(8, body_max));
    L = std::min(L, body_max);
    int total = L + mb + mt;
    auto A = make_chart(b, "u", total);
    tile_chart(b, A, mb, mt, "");
    budget -= total;

    int branches = 0;
    std::set<int> used;
    while (budget >= 5 && branches < 3 && rng.chance(branches == 0 ? 85 : 45)) {
        int blen = rng.range(4, std::min(7, budget - 1));
        // interior slot with room on both sides, away from other junctions
        int klo = mb + 2, khi = total - 1 - mt - 3;
        if (khi <= klo) break;
        int k = rng.range(klo, khi);
        bool clear = true;
        for (int d = -2; d <= 2; ++d)
            if (used.count(k + d)) clear = false;
        if (!clear) break;
        used.insert(k);
        bool from_below = rng.chance(50);
        std::string pref = "b" + std::to_string(branches) + "_";
        auto B = make_chart(b, pref, blen);
        tile_chart(b, B, 0, 0, pref);
        attach_branch(b, A, k, from_below, B, branches);
        budget -= blen + 1;
        ++branches;
    }
    b.finish_fibers();
    if (end_bot) declare_end(b, "bot", A.front(), Sign::Minus);
    if (end_top) declare_end(b, "top", A.back(), Sign::Plus);
    if (rng.chance(20)) add_identity_automorphism(b);
    return b.m;
}

} // namespace

std::vector<OrbitModel> generate_corpus(uint64_t seed, int count, int max_leaves) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    if (max_leaves < 3) throw std::invalid_argument("max_leaves must be >= 3");
    std::vector<OrbitModel> out;
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    for (int i = 0; i < count; ++i) {
        OrbitModel m;
        if (max_leaves < 12) {
            m = gen_tiny(rng, max_leaves);
        } else {
            int roll = rng.below(100);
            if (roll < 8)
                m = gen_tiny(rng, max_leaves);
            else if (roll < 18)
                m = gen_periodic(rng, max_leaves);
            else
                m = gen_chart(rng, max_leaves);
        }
        auto rep = validate_model(m);
        if (!rep.ok())
            throw std::logic_error("generator produced an invalid model: " +
                                   rep.violations.front().detail);
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace anosov
