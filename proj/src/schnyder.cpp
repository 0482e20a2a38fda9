#include "tps/schnyder.hpp"

#include <algorithm>
#include <deque>

#include "tps/error.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("schnyder_build", msg); }

// Moves excess out-degree to vertices below 3 by push-relabel: a push
// reverses an outgoing edge towards a vertex one level closer to a deficit.
// Levels are recomputed from scratch by a backward search now and then.
void push_relabel(const TorusMap& g, Orientation& d, std::vector<int>& out) {
    const int n = g.n();
    std::vector<int> h(n), q;
    std::vector<char> queued(n, 0);
    q.reserve(n);
    auto global_relabel = [&] {
        std::fill(h.begin(), h.end(), 2 * n);
        q.clear();
        for (int v = 0; v < n; ++v)
            if (out[v] < 3) {
                h[v] = 0;
                q.push_back(v);
            }
        for (size_t i = 0; i < q.size(); ++i) {
            const int u = q[i];
            const int x0 = g.vertex_dart(u);
            int x = x0;
            do {
                const int w = g.head(x);
                if (!d.is_out(x) && h[w] == 2 * n) {
                    h[w] = h[u] + 1;
                    q.push_back(w);
                }
                x = g.next_ccw(x);
            } while (x != x0);
        }
    };
    global_relabel();
    std::deque<int> active;
    for (int v = 0; v < n; ++v)
        if (out[v] > 3) {
            if (h[v] >= 2 * n) fail("internal error: no 3-orientation");
            active.push_back(v);
            queued[v] = 1;
        }
    long work = 0;
    while (!active.empty()) {
        const int v = active.front();
        active.pop_front();
        queued[v] = 0;
        while (out[v] > 3) {
            const int x0 = g.vertex_dart(v);
            int x = x0, best = -1, low = 2 * n;
            do {
                if (d.is_out(x)) {
                    const int u = g.head(x);
                    if (h[u] == h[v] - 1) {
                        best = x;
                        break;
                    }
                    low = std::min(low, h[u]);
                }
                x = g.next_ccw(x);
            } while (x != x0);
            if (best < 0) {
                // relabel
                if (low >= 2 * n) fail("internal error: no 3-orientation");
                h[v] = low + 1;
                if (++work > n) {
                    work = 0;
                    global_relabel();
                    if (h[v] >= 2 * n) fail("internal error: no 3-orientation");
                }
                continue;
            }
            const int u = g.head(best);
            d.reverse(best >> 1);
            --out[v];
            ++out[u];
            if (out[u] > 3 && !queued[u]) {
                queued[u] = 1;
                active.push_back(u);
            }
        }
    }
}

}  // namespace

Orientation initial_three_orientation(const TorusMap& g) {
    const int n = g.n();
    Orientation d;
    d.tail.assign(g.m(), -1);
    std::vector<int> out(n, 0);
    // peel vertices by least slack (remaining edges minus outgoing edges
    // still needed); a removed vertex takes the outgoing edges it needs and
    // hands the rest to its neighbours
    std::vector<int> rem(n);
    int maxdeg = 0;
    for (int v = 0; v < n; ++v) {
        rem[v] = g.degree(v);
        for (int x : g.rotation(v)) rem[v] -= g.head(x) == v && (x & 1);  // loops count once
        maxdeg = std::max(maxdeg, rem[v]);
    }
    const int shift = 3;
    auto key = [&](int v) { return std::max(0, rem[v] - (3 - out[v]) + shift); };
    std::vector<std::vector<int>> bucket(maxdeg + shift + 1);
    for (int v = 0; v < n; ++v) bucket[key(v)].push_back(v);
    std::vector<char> gone(n, 0);
    std::vector<int> open;
    int low = 0;
    for (int done = 0; done < n;) {
        while (bucket[low].empty()) ++low;
        const int v = bucket[low].back();
        bucket[low].pop_back();
        if (gone[v] || key(v) != low) continue;
        gone[v] = 1;
        ++done;
        open.clear();
        const int x0 = g.vertex_dart(v);
        int x = x0;
        do {
            if (d.tail[x >> 1] == -1) {
                d.tail[x >> 1] = -2;
                open.push_back(x);
            }
            x = g.next_ccw(x);
        } while (x != x0);
        // neighbours with the fewest outgoing edges get the reverse direction
        std::stable_sort(open.begin(), open.end(), [&](int a, int b) { return out[g.head(a)] > out[g.head(b)]; });
        for (int y : open) {
            const int u = g.head(y);
            const bool keep = out[v] < 3 || u == v;
            d.tail[y >> 1] = keep ? y : y ^ 1;
            ++out[g.vert(d.tail[y >> 1])];
            if (u != v) {
                --rem[u];
                const int k = std::min(key(u), static_cast<int>(bucket.size()) - 1);
                low = std::min(low, k);
                bucket[k].push_back(u);
            }
        }
    }
    push_relabel(g, d, out);
    return d;
}

Walk middle_cycle(const TorusMap& g, const Orientation& d, int start_dart) {
    // the walk state is the dart: it becomes periodic, and the period is a
    // closed walk whose every step is the middle out-dart after its arrival
    std::vector<int> pos(g.darts(), -1);
    std::vector<int> walk;
    int x = start_dart;
    while (!d.is_out(x)) x = g.next_ccw(x);
    while (pos[x] == -1) {
        pos[x] = static_cast<int>(walk.size());
        walk.push_back(x);
        int y = x ^ 1;
        int seen = 0;
        do {
            y = g.next_ccw(y);
            if (d.is_out(y)) ++seen;
        } while (seen < 2);
        x = y;
    }
    Walk c;
    c.darts.assign(walk.begin() + pos[x], walk.end());
    return c;
}

std::pair<Orientation, BuildReport> make_htc(const TorusMap& g, const Orientation& d, const HomologyBasis& basis) {
    if (!is_three_orientation(g, d)) fail("make_htc needs a 3-orientation");
    BuildReport rep;
    rep.initial_gamma = {gamma(g, d, basis.b1), gamma(g, d, basis.b2)};
    if (rep.initial_gamma[0] == 0 && rep.initial_gamma[1] == 0) return {d, rep};
    if (rep.initial_gamma[0] % 2 != 0 || rep.initial_gamma[1] % 2 != 0) fail("odd gamma on a basis cycle");
    // reversing a subgraph S changes gamma(b) by -2 cross(S, b); rho is an
    // integral circulation of the class S must have, built from b1 and b2
    const int w1 = rep.initial_gamma[0] / 2, w2 = rep.initial_gamma[1] / 2;
    const int x = crossing_signature(basis.side1, basis.b2);  // +-1
    const int alpha = -w2 * x, beta = w1 * x;
    rep.iterations = 1;
    std::vector<int> rho(g.m(), 0);
    for (int y : basis.b1.darts) rho[y >> 1] += d.tail[y >> 1] == y ? alpha : -alpha;
    for (int y : basis.b2.darts) rho[y >> 1] += d.tail[y >> 1] == y ? beta : -beta;
    // constraints per edge with tail t, L = face(t), R = face(twin t):
    //   lam[R] <= lam[L] + rho,  lam[L] <= lam[R] + 1 - rho
    const int nf = g.f();
    std::vector<long> lam(nf, 0);
    std::vector<int> count(nf, 0);
    std::vector<char> queued(nf, 1);
    std::deque<int> q;
    for (int f = 0; f < nf; ++f) q.push_back(f);
    const long limit = static_cast<long>(nf) + 1;
    while (!q.empty()) {
        const int f = q.front();
        q.pop_front();
        queued[f] = 0;
        const int s = g.face_dart(f);
        int x = s;
        do {
            const int e = x >> 1;
            const int h = g.face_of(x ^ 1);
            // x lies in f; the arc f -> h carries rho if x is the tail, 1 - rho otherwise
            const long w = d.tail[e] == x ? rho[e] : 1 - rho[e];
            if (lam[f] + w < lam[h]) {
                lam[h] = lam[f] + w;
                if (!queued[h]) {
                    if (++count[h] > limit) fail("htc search exhausted: infeasible potential system");
                    queued[h] = 1;
                    q.push_back(h);
                }
            }
            x = g.face_next(x);
        } while (x != s);
        ++rep.relaxation_rounds;
    }
    Orientation out = d;
    for (int e = 0; e < g.m(); ++e) {
        const int t = d.tail[e];
        const long s = lam[g.face_of(t)] - lam[g.face_of(t ^ 1)] + rho[e];
        if (s < 0 || s > 1) fail("internal error: potential out of range");
        if (s == 1) {
            out.reverse(e);
            ++rep.flipped_edges;
        }
    }
    if (!is_htc(g, out, basis)) fail("htc search exhausted: result is not HTC");
    return {out, rep};
}

Angle pick_root(const TorusMap& g, const Orientation& d, const SchnyderColoring& c) {
    auto out0 = color_out_darts(g, d, c, 0);
    std::vector<char> seen(g.n(), 0);
    int v = 0;
    while (!seen[v]) {
        seen[v] = 1;
        v = g.head(out0[v]);
    }
    return g.angle(out0[v]);
}

}  // namespace tps
