#include "tps/lattice.hpp"

#include <vector>

namespace tps {

namespace {

// Backward search toward f0 over dual arcs face(tail) -> face(twin tail).
// With reverse_cuts set, a stall reverses every arc leaving the reached set.
bool backward_reach(const TorusMap& g, Orientation& d, int f0, bool reverse_cuts, MinimizeStats* stats) {
    const int nf = g.f();
    std::vector<char> in_x(nf, 0);
    std::vector<int> stack{f0}, frontier;
    in_x[f0] = 1;
    int reached = 1;
    for (;;) {
        while (!stack.empty()) {
            const int f = stack.back();
            stack.pop_back();
            const int s = g.face_dart(f);
            int x = s;
            do {
                const int h = g.face_of(x ^ 1);
                if (!in_x[h]) {
                    // arc h -> f exists when the tail is the twin side, which lies in h
                    if (d.tail[x >> 1] == (x ^ 1)) {
                        in_x[h] = 1;
                        ++reached;
                        stack.push_back(h);
                    } else {
                        frontier.push_back(x);
                    }
                }
                x = g.face_next(x);
            } while (x != s);
        }
        if (reached == nf) return true;
        if (!reverse_cuts) return false;
        int reversed = 0;
        for (int x : frontier) {
            const int h = g.face_of(x ^ 1);
            if (in_x[h] || d.tail[x >> 1] != x) continue;
            d.reverse(x >> 1);
            ++reversed;
        }
        for (int x : frontier) {
            const int h = g.face_of(x ^ 1);
            if (!in_x[h] && d.tail[x >> 1] == (x ^ 1)) {
                in_x[h] = 1;
                ++reached;
                stack.push_back(h);
            }
        }
        frontier.clear();
        if (stats) {
            ++stats->cut_reversals;
            stats->edges_reversed += reversed;
        }
    }
}

}  // namespace

Orientation minimize(const TorusMap& g, const Orientation& d, int f0, MinimizeStats* stats) {
    Orientation out = d;
    backward_reach(g, out, f0, true, stats);
    return out;
}

bool is_minimal(const TorusMap& g, const Orientation& d, int f0) {
    Orientation copy = d;
    return backward_reach(g, copy, f0, false, nullptr);
}

}  // namespace tps
