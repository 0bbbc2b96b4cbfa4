#include "anosov/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "anosov/ct.hpp"

namespace anosov {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string svg_open(double w, double h) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
       << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    os << "<rect width=\"" << num(w) << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
    return os.str();
}

void line(std::ostringstream& os, double x1, double y1, double x2, double y2,
          const std::string& color, double width, bool dashed = false) {
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
       << "\" y2=\"" << num(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
       << num(width) << "\"";
    if (dashed) os << " stroke-dasharray=\"4,3\"";
    os << "/>\n";
}

void text(std::ostringstream& os, double x, double y, const std::string& t,
          const std::string& color = "black") {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y)
       << "\" font-size=\"9\" font-family=\"monospace\" fill=\"" << color << "\">" << t
       << "</text>\n";
}

void circle(std::ostringstream& os, double x, double y, double r, const std::string& fill,
            const std::string& stroke) {
    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
       << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
}

// global vertical order of the leaves (topological, name tie-break)
std::vector<int> topo_leaves(const LeafSpace& ls) {
    std::vector<int> indeg(ls.n, 0);
    for (int a = 0; a < ls.n; ++a) indeg[a] = (int)ls.covers_down[a].size();
    auto by_name = [&](int a, int b) {
        return ls.model->unstable_names[a] < ls.model->unstable_names[b];
    };
    std::vector<int> ready;
    for (int a = 0; a < ls.n; ++a)
        if (indeg[a] == 0) ready.push_back(a);
    std::sort(ready.begin(), ready.end(), by_name);
    std::vector<int> order;
    while (!ready.empty()) {
        int a = ready.front();
        ready.erase(ready.begin());
        order.push_back(a);
        for (int bb : ls.covers_up[a]) {
            if (--indeg[bb] == 0) {
                ready.push_back(bb);
                std::sort(ready.begin(), ready.end(), by_name);
            }
        }
    }
    return order;
}

// global left-right slots for the stable leaves, consistent with fiber orders
std::vector<int> stable_slots(const LeafSpace& ls) {
    const OrbitModel& m = *ls.model;
    int ns = m.n_stable();
    std::vector<std::set<int>> after(ns);
    std::vector<int> indeg(ns, 0);
    for (int u = 0; u < ls.n; ++u) {
        const auto& row = m.crossings_along_unstable[u];
        for (size_t i = 0; i + 1 < row.size(); ++i)
            if (after[row[i]].insert(row[i + 1]).second) indeg[row[i + 1]]++;
    }
    auto by_name = [&](int a, int b) { return m.stable_names[a] < m.stable_names[b]; };
    std::vector<int> ready;
    for (int s = 0; s < ns; ++s)
        if (indeg[s] == 0) ready.push_back(s);
    std::sort(ready.begin(), ready.end(), by_name);
    std::vector<int> slot(ns, -1);
    int next = 0;
    while (!ready.empty()) {
        int s = ready.front();
        ready.erase(ready.begin());
        slot[s] = next++;
        for (int t : after[s])
            if (--indeg[t] == 0) {
                ready.push_back(t);
                std::sort(ready.begin(), ready.end(), by_name);
            }
    }
    for (int s = 0; s < ns; ++s)
        if (slot[s] < 0) slot[s] = next++; // order cycle: schematic fallback
    return slot;
}

} // namespace

std::string render_orbit_svg(const LeafSpace& ls) {
    const OrbitModel& m = *ls.model;
    auto order = topo_leaves(ls);
    std::vector<int> ypos(ls.n, 0);
    for (size_t i = 0; i < order.size(); ++i) ypos[order[i]] = (int)i;
    auto slot = stable_slots(ls);

    double margin = 50, dy = 22, dx = 26;
    double w = margin * 2 + dx * std::max(1, m.n_stable());
    double h = margin * 2 + dy * std::max(1, ls.n);
    auto Y = [&](int u) { return h - margin - dy * ypos[u]; };
    auto X = [&](int s) { return margin + dx * slot[s]; };

    std::ostringstream os;
    os << svg_open(w, h);
    // unstable leaves in red, spanning their crossings
    for (int u = 0; u < ls.n; ++u) {
        double lo = margin - 18, hi = w - margin + 18;
        const auto& row = m.crossings_along_unstable[u];
        if (!row.empty()) {
            lo = X(row.front()) - 14;
            hi = X(row.back()) + 14;
        }
        line(os, lo, Y(u), hi, Y(u), "red", 1.6);
        text(os, 4, Y(u) + 3, m.unstable_names[u], "red");
    }
    // stable leaves in blue through their crossings, fits as dashed hooks
    for (int s = 0; s < m.n_stable(); ++s) {
        const auto& cs = m.crossings_along_stable[s];
        if (cs.empty()) continue;
        double x = X(s);
        double ylo = Y(cs.front()), yhi = Y(cs.back());
        line(os, x, ylo + 10, x, yhi - 10, "blue", 1.4);
        text(os, x - 6, yhi - 14, m.stable_names[s], "blue");
    }
    for (const auto& f : m.perfect_fits) {
        int s = f.stable_end.leaf.index, u = f.unstable_end.leaf.index;
        const auto& cs = m.crossings_along_stable[s];
        if (cs.empty()) continue;
        double x = X(s);
        double y0 = f.stable_end.sign == Sign::Minus ? Y(cs.front()) + 10 : Y(cs.back()) - 10;
        const auto& row = m.crossings_along_unstable[u];
        double xu = f.unstable_end.sign == Sign::Minus
                        ? (row.empty() ? margin - 18 : X(row.front()) - 14)
                        : (row.empty() ? w - margin + 18 : X(row.back()) + 14);
        line(os, x, y0, xu, Y(u), "blue", 0.9, true);
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_coloring_svg(const LeafSpace& ls, const Section& sec,
                                const RegionColoring& rc) {
    const OrbitModel& m = *ls.model;
    auto order = topo_leaves(ls);
    std::vector<int> ypos(ls.n, 0);
    for (size_t i = 0; i < order.size(); ++i) ypos[order[i]] = (int)i;
    // one column per Hausdorff class member offset
    std::vector<int> xcol(ls.n, 0);
    for (size_t c = 0; c < ls.h_members.size(); ++c)
        for (size_t k = 0; k < ls.h_members[c].size(); ++k) xcol[ls.h_members[c][k]] = (int)k;

    double margin = 60, dy = 22, dx = 16;
    double h = margin * 2 + dy * std::max(1, ls.n);
    double w = margin * 2 + 260;
    auto Y = [&](int u) { return h - margin - dy * ypos[u]; };
    auto X = [&](int u) { return margin + dx * xcol[u]; };

    std::ostringstream os;
    os << svg_open(w, h);
    for (int a = 0; a < ls.n; ++a)
        for (int bb : ls.covers_up[a]) line(os, X(a), Y(a), X(bb), Y(bb), "gray", 1.0);
    for (int a = 0; a < ls.n; ++a) {
        bool lu = rc.in_lu(a), rd = rc.in_rd(a);
        if (lu && rd) {
            circle(os, X(a), Y(a), 6.0, "yellow", "black");
            circle(os, X(a), Y(a), 3.0, "green", "none");
        } else if (lu) {
            circle(os, X(a), Y(a), 5.0, "yellow", "black");
        } else if (rd) {
            circle(os, X(a), Y(a), 5.0, "green", "black");
        } else {
            circle(os, X(a), Y(a), 4.0, "white", "black");
        }
        std::string v = sec.value[a] < 0 ? "NM" : m.stable_names[sec.value[a]];
        text(os, X(a) + 9, Y(a) + 3, m.unstable_names[a] + ":" + v);
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_circle_svg(const LeafSpace& ls, const MasterSets& ms, const CircleOrder& co) {
    int n = (int)co.sections.size();
    double R = 110, cx = 170, cy = 170;
    std::ostringstream os;
    os << svg_open(340, 340);
    os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(R)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const char* palette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                             "#ff7f00", "#a65628", "#f781bf", "#999999"};
    for (int i = 0; i < n; ++i) {
        double ang = 6.283185307 * i / std::max(1, n);
        double x = cx + R * std::cos(ang), y = cy + R * std::sin(ang);
        auto v = ct(ls, ms, co.sections[i]);
        int cls = v.ok ? v.value.id : -1;
        const char* color = cls < 0 ? "black" : palette[cls % 8];
        circle(os, x, y, 5.0, color, "black");
        text(os, x + 7, y + 3, cls < 0 ? std::string("?") : "X" + std::to_string(cls));
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace anosov
