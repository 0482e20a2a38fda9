#include "tps/ps.hpp"

#include <numeric>
#include <sstream>

namespace tps {

PsOutput run_ps(const TorusMap& g, const Orientation& d, Angle a0) {
    PsOutput out;
    std::vector<char> marked(g.m(), 0), in_p(g.m(), 0), stem(g.m(), 0);
    const int d0 = a0.dart;
    int x = d0;
    // every step visits one angle; a simple cycle has at most 2m of them
    const long bound = g.darts();
    long steps = 0;
    do {
        out.angle_cycle.push_back(x);
        const int e = x >> 1;
        const bool entering = d.tail[e] != x;
        if (!marked[e] && entering) {
            in_p[e] = 1;
            x = g.next_ccw(x ^ 1);
        } else if (!marked[e]) {
            stem[e] = 1;
            x = g.next_ccw(x);
        } else if (entering) {
            x = g.next_ccw(x);
        } else {
            x = g.next_ccw(x ^ 1);
        }
        marked[e] = 1;
        if (++steps > bound) {
            out.closed = false;
            break;
        }
    } while (x != d0);

    StemMap& u = out.u;
    u.n = g.n();
    std::vector<int> half(g.darts(), -1);
    for (int v = 0; v < g.n(); ++v) {
        int last = -1;
        const int s = g.vertex_dart(v);
        int y = s;
        do {
            const int e = y >> 1;
            if (in_p[e] || (stem[e] && d.tail[e] == y)) {
                const int h = u.add_half(v, y);
                half[y] = h;
                if (last >= 0) u.insert_after(last, h);
                last = h;
            }
            y = g.next_ccw(y);
        } while (y != s);
    }
    for (int e = 0; e < g.m(); ++e) {
        if (in_p[e]) {
            out.p_edges.push_back(e);
            u.mate[half[2 * e]] = half[2 * e + 1];
            u.mate[half[2 * e + 1]] = half[2 * e];
        } else if (stem[e]) {
            out.q_edges.push_back(e);
        }
    }
    // root: first kept half at or after d0 around its vertex
    int y = d0;
    do {
        if (half[y] >= 0) {
            u.root = half[y];
            break;
        }
        y = g.next_ccw(y);
    } while (y != d0);
    return out;
}

UnicellularCheck check_unicellular(const TorusMap& g, const PsOutput& out) {
    UnicellularCheck r;
    std::vector<int> parent(std::max(g.n(), g.f()));
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::iota(parent.begin(), parent.end(), 0);
    int comps = g.n();
    for (int e : out.p_edges) {
        const int a = find(g.vert(2 * e)), b = find(g.vert(2 * e + 1));
        if (a != b) {
            parent[a] = b;
            --comps;
        }
    }
    if (comps != 1) {
        r.reason = "unreached_vertex";
        return r;
    }
    std::vector<int> cnt(g.m(), 0);
    for (int e : out.p_edges) ++cnt[e];
    for (int e : out.q_edges) ++cnt[e];
    for (int e = 0; e < g.m(); ++e)
        if (cnt[e] != 1) {
            r.reason = "not_partition";
            return r;
        }
    // one face walk, and that face is a disk: n - (n + 1) + 1 = 0
    if (out.u.face_count() != 1 || static_cast<int>(out.p_edges.size()) != g.n() + 1) {
        r.reason = "face_count";
        return r;
    }
    std::iota(parent.begin(), parent.end(), 0);
    for (int e : out.q_edges) {
        const int a = find(g.face_of(2 * e)), b = find(g.face_of(2 * e + 1));
        if (a == b) {
            r.reason = "dual_cycle";
            return r;
        }
        parent[a] = b;
    }
    if (static_cast<int>(out.q_edges.size()) != g.f() - 1) {
        r.reason = "dual_cycle";
        return r;
    }
    r.ok = true;
    return r;
}

std::string format_angle_cycle(const TorusMap& g, const PsOutput& out) {
    std::ostringstream s;
    for (size_t i = 0; i < out.angle_cycle.size(); ++i)
        s << i + 1 << ' ' << g.vert(out.angle_cycle[i]) << ' ' << out.angle_cycle[i] << '\n';
    return s.str();
}

}  // namespace tps
