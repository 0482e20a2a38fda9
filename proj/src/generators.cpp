#include "tps/generators.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "tps/error.hpp"

namespace tps {

TorusMap gen_k7() {
    // dart 2e goes from i to j (i < j) for the e-th pair
    int id[7][7];
    int e = 0;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            id[i][j] = 2 * e;
            id[j][i] = 2 * e + 1;
            ++e;
        }
    std::vector<int> next(42, -1);
    auto face = [&](int a, int b, int c) {
        next[id[b][c]] = id[b][a];
        next[id[c][a]] = id[c][b];
        next[id[a][b]] = id[a][c];
    };
    for (int i = 0; i < 7; ++i) {
        face(i, (i + 1) % 7, (i + 3) % 7);
        face(i, (i + 3) % 7, (i + 2) % 7);
    }
    std::vector<std::vector<int>> rot(7);
    for (int v = 0; v < 7; ++v) {
        int d = id[v][(v + 1) % 7];
        do {
            rot[v].push_back(d);
            d = next[d];
        } while (d != id[v][(v + 1) % 7] && rot[v].size() <= 6);
    }
    return TorusMap::from_rotations(rot, true);
}

TorusMap gen_one_vertex() { return TorusMap::from_rotations({{0, 2, 4, 1, 3, 5}}, true); }

namespace {

using Period = std::array<long, 2>;

}  // namespace

TorusMap gen_random(int n, uint64_t seed) {
    if (n < 1) throw Error("oracle_testkit", "gen_random needs n >= 1");
    std::mt19937_64 rng(seed);
    const int nd = 6 * n;
    std::vector<int> vert(nd), nxt(nd), prv(nd), first(n), deg(n);
    std::vector<Period> om(nd);
    const int base[6] = {0, 2, 4, 1, 3, 5};
    for (int i = 0; i < 6; ++i) {
        vert[base[i]] = 0;
        nxt[base[i]] = base[(i + 1) % 6];
        prv[base[(i + 1) % 6]] = base[i];
    }
    // lift periods of the three loops; every face sums to zero
    om[0] = {1, 0};
    om[2] = {0, 1};
    om[4] = {-1, 1};
    for (int d : {0, 2, 4}) om[d ^ 1] = {-om[d][0], -om[d][1]};
    first[0] = 0;
    deg[0] = 6;
    int darts = 6;
    std::vector<int> moved;
    std::vector<char> in_moved(nd, 0);
    struct Key {
        int head;
        Period p;
        int edge;
    };
    std::vector<Key> keys;
    for (int w = 1; w < n;) {
        const int a = static_cast<int>(rng() % static_cast<uint64_t>(darts));
        const int v = vert[a];
        const int steps = 1 + static_cast<int>(rng() % static_cast<uint64_t>(deg[v] - 1));
        int b = a;
        for (int i = 0; i < steps; ++i) b = nxt[b];
        if ((a >> 1) == (b >> 1)) continue;
        moved.clear();
        for (int x = nxt[a]; x != b; x = nxt[x]) {
            moved.push_back(x);
            in_moved[x] = 1;
        }
        auto head_after = [&](int d) { return in_moved[d ^ 1] ? w : vert[d ^ 1]; };
        keys.clear();
        const int tw = darts, tv = darts + 1, aw = darts + 2, ax = darts + 3, bw = darts + 4, by = darts + 5;
        keys.push_back({head_after(a), om[a], aw >> 1});
        keys.push_back({head_after(b), om[b], bw >> 1});
        keys.push_back({v, {0, 0}, tw >> 1});
        for (int x : moved) keys.push_back({head_after(x), om[x], x >> 1});
        std::sort(keys.begin(), keys.end(), [](const Key& l, const Key& r) {
            if (l.head != r.head) return l.head < r.head;
            return l.p < r.p;
        });
        bool ok = true;
        for (size_t i = 0; ok && i < keys.size(); ++i) {
            const auto& k = keys[i];
            if (k.head == w && k.p[0] == 0 && k.p[1] == 0) ok = false;
            if (i > 0 && keys[i - 1].head == k.head && keys[i - 1].p == k.p) ok = false;
        }
        if (!ok) {
            for (int x : moved) in_moved[x] = 0;
            continue;
        }
        // commit
        for (int x : moved) {
            vert[x] = w;
            in_moved[x] = 0;
        }
        std::vector<int> wr{aw};
        wr.insert(wr.end(), moved.begin(), moved.end());
        wr.push_back(bw);
        wr.push_back(tw);
        for (size_t i = 0; i < wr.size(); ++i) {
            nxt[wr[i]] = wr[(i + 1) % wr.size()];
            prv[wr[(i + 1) % wr.size()]] = wr[i];
            vert[wr[i]] = w;
        }
        nxt[a] = tv;
        prv[tv] = a;
        nxt[tv] = b;
        prv[b] = tv;
        vert[tv] = v;
        first[v] = b;
        deg[v] = deg[v] - static_cast<int>(moved.size()) + 1;
        first[w] = aw;
        deg[w] = static_cast<int>(wr.size());
        om[tw] = om[tv] = {0, 0};
        om[aw] = om[a];
        om[ax] = {-om[a][0], -om[a][1]};
        om[bw] = om[b];
        om[by] = {-om[b][0], -om[b][1]};
        const int ta = a ^ 1, tb = b ^ 1;
        // ax goes immediately clockwise of twin(a)
        int p = prv[ta];
        nxt[p] = ax;
        prv[ax] = p;
        nxt[ax] = ta;
        prv[ta] = ax;
        vert[ax] = vert[ta];
        ++deg[vert[ta]];
        // by goes immediately counterclockwise of twin(b)
        int q = nxt[tb];
        nxt[tb] = by;
        prv[by] = tb;
        nxt[by] = q;
        prv[q] = by;
        vert[by] = vert[tb];
        ++deg[vert[tb]];
        darts += 6;
        ++w;
    }
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) {
        int d = first[v];
        do {
            rot[v].push_back(d);
            d = nxt[d];
        } while (d != first[v]);
    }
    return TorusMap::from_rotations(rot, true);
}

TorusMap insert_vertex_in_face(const TorusMap& g, int f) {
    if (g.face_size(f) != 3) throw Error("oracle_testkit", "face is not a triangle");
    auto fd = g.face_darts(f);
    const int d1 = fd[0], d2 = fd[1], d3 = fd[2];
    const int a = g.vert(d1), b = g.vert(d2), c = g.vert(d3);
    const int m = g.m();
    const int xa = 2 * m, ax = 2 * m + 1, xb = 2 * m + 2, bx = 2 * m + 3, xc = 2 * m + 4, cx = 2 * m + 5;
    auto rot = g.rotations();
    auto insert_after = [&](int v, int d, int nd) {
        auto& r = rot[v];
        auto it = std::find(r.begin(), r.end(), d);
        r.insert(it + 1, nd);
    };
    insert_after(a, d1, ax);
    insert_after(b, d2, bx);
    insert_after(c, d3, cx);
    rot.push_back({xc, xa, xb});
    return TorusMap::from_rotations(rot, g.triangulation());
}

}  // namespace tps
