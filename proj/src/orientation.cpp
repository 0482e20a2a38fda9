#include "tps/orientation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>

#include "tps/error.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("orientation_kernel", msg); }

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

int to_int(const std::string& s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail("bad integer '" + s + "'");
    return std::stoi(s);
}

}  // namespace

Orientation reference_orientation(const TorusMap& g) {
    Orientation d;
    d.tail.resize(g.m());
    for (int e = 0; e < g.m(); ++e) d.tail[e] = 2 * e;
    return d;
}

std::vector<int> outdegrees(const TorusMap& g, const Orientation& d) {
    std::vector<int> out(g.n(), 0);
    for (int e = 0; e < g.m(); ++e) ++out[g.vert(d.tail[e])];
    return out;
}

bool is_three_orientation(const TorusMap& g, const Orientation& d) {
    if (static_cast<int>(d.tail.size()) != g.m()) return false;
    for (int e = 0; e < g.m(); ++e)
        if ((d.tail[e] >> 1) != e) return false;
    auto out = outdegrees(g, d);
    return std::all_of(out.begin(), out.end(), [](int x) { return x == 3; });
}

FlowVector delta(const TorusMap& g, const Orientation& a, const Orientation& b) {
    FlowVector t(g.m(), 0);
    for (int e = 0; e < g.m(); ++e)
        if (a.tail[e] != b.tail[e]) t[e] = a.tail[e] == 2 * e ? 1 : -1;
    return t;
}

std::optional<std::vector<long>> face_potential(const TorusMap& g, const FlowVector& t, int f0) {
    std::vector<long> lam(g.f(), 0);
    std::vector<char> known(g.f(), 0);
    std::deque<int> q{f0};
    known[f0] = 1;
    while (!q.empty()) {
        const int f = q.front();
        q.pop_front();
        const int start = g.face_dart(f);
        int x = start;
        do {
            const int h = g.face_of(x ^ 1);
            if (!known[h]) {
                const int e = x >> 1;
                lam[h] = (x & 1) ? lam[f] + t[e] : lam[f] - t[e];
                known[h] = 1;
                q.push_back(h);
            }
            x = g.face_next(x);
        } while (x != start);
    }
    for (int e = 0; e < g.m(); ++e) {
        if (lam[g.face_of(2 * e)] - lam[g.face_of(2 * e + 1)] != t[e]) return std::nullopt;
    }
    return lam;
}

bool is_zero_homologous(const TorusMap& g, const FlowVector& t) { return face_potential(g, t, 0).has_value(); }

int gamma(const TorusMap& g, const Orientation& d, const Walk& c) {
    constexpr int8_t kOut = 1, kIn = 2;
    std::vector<int8_t> type(g.darts(), 0);
    std::vector<char> on_c(g.m(), 0);
    const size_t k = c.darts.size();
    for (size_t i = 0; i < k; ++i) {
        type[c.darts[i]] |= kOut;
        type[c.darts[(i + k - 1) % k] ^ 1] |= kIn;
        on_c[c.darts[i] >> 1] = 1;
    }
    std::vector<char> done(g.n(), 0);
    int result = 0;
    for (int s : c.darts) {
        const int v = g.vert(s);
        if (done[v]) continue;
        done[v] = 1;
        // s is a c-dart at v; sweep ccw once around v
        int8_t last = type[s];
        for (int x = g.next_ccw(s); x != s; x = g.next_ccw(x)) {
            if (type[x]) {
                last = type[x];
                continue;
            }
            if (on_c[x >> 1] || !d.is_out(x)) continue;
            if (last & kOut) --result;  // between an out-dart and the next in-dart: left
            else ++result;
        }
    }
    return result;
}

bool is_htc(const TorusMap& g, const Orientation& d, const HomologyBasis& basis) {
    return gamma(g, d, basis.b1) == 0 && gamma(g, d, basis.b2) == 0;
}

namespace {

// out_idx: rank among out-darts ccw from the first out-dart found after
// vertex_dart; sector: index of the out-dart that precedes an in-dart.
struct LocalRanks {
    std::vector<int8_t> out_idx, sector;
};

LocalRanks local_ranks(const TorusMap& g, const Orientation& d) {
    LocalRanks r{std::vector<int8_t>(g.darts(), -1), std::vector<int8_t>(g.darts(), -1)};
    for (int v = 0; v < g.n(); ++v) {
        int start = g.vertex_dart(v);
        int x = start;
        while (!d.is_out(x)) {
            x = g.next_ccw(x);
            if (x == start) fail("not a Schnyder wood: vertex " + std::to_string(v) + " has no outgoing edge");
        }
        start = x;
        int k = -1;
        do {
            if (d.is_out(x)) {
                ++k;
                if (k > 2) fail("not a Schnyder wood: vertex " + std::to_string(v) + " has outdegree > 3");
                r.out_idx[x] = static_cast<int8_t>(k);
            } else {
                r.sector[x] = static_cast<int8_t>(k);
            }
            x = g.next_ccw(x);
        } while (x != start);
        if (k != 2) fail("not a Schnyder wood: vertex " + std::to_string(v) + " has outdegree < 3");
    }
    return r;
}

int mod3(int x) { return ((x % 3) + 3) % 3; }

}  // namespace

SchnyderColoring color_edges(const TorusMap& g, const Orientation& d) {
    auto r = local_ranks(g, d);
    std::vector<int> off(g.n(), -1);
    off[0] = 0;
    std::deque<int> q{0};
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        const int s = g.vertex_dart(v);
        int x = s;
        do {
            const int u = g.head(x);
            // constraint: off[tail] + out_idx[t] = off[head] + sector[h] - 1
            int want;
            if (d.is_out(x)) want = off[v] + r.out_idx[x] - r.sector[x ^ 1] + 1;
            else want = off[v] + r.sector[x] - 1 - r.out_idx[x ^ 1];
            want = mod3(want);
            if (off[u] == -1) {
                off[u] = want;
                q.push_back(u);
            } else if (off[u] != want) {
                fail("not a Schnyder wood: inconsistent colors at vertex " + std::to_string(u));
            }
            x = g.next_ccw(x);
        } while (x != s);
    }
    SchnyderColoring c;
    c.color.resize(g.m());
    for (int e = 0; e < g.m(); ++e) {
        const int t = d.tail[e];
        c.color[e] = mod3(off[g.vert(t)] + r.out_idx[t]);
    }
    return c;
}

bool is_schnyder_coloring(const TorusMap& g, const Orientation& d, const SchnyderColoring& c) {
    for (int v = 0; v < g.n(); ++v) {
        auto rot = g.rotation(v);
        std::vector<int> outs;
        for (int x : rot)
            if (d.is_out(x)) outs.push_back(x);
        if (outs.size() != 3) return false;
        for (int k = 0; k < 3; ++k) {
            if (c.color[outs[(k + 1) % 3] >> 1] != (c.color[outs[k] >> 1] + 1) % 3) return false;
        }
        // in-edge of color i must sit between out-edges of colors i+1 and i-1
        int last = -1;
        const size_t k0 = std::find(rot.begin(), rot.end(), outs[0]) - rot.begin();
        for (size_t i = 0; i < rot.size(); ++i) {
            const int x = rot[(k0 + i) % rot.size()];
            if (d.is_out(x)) {
                last = c.color[x >> 1];
            } else if (c.color[x >> 1] != (last + 2) % 3) {
                return false;
            }
        }
    }
    return true;
}

std::vector<int> color_out_darts(const TorusMap& g, const Orientation& d, const SchnyderColoring& c, int i) {
    std::vector<int> out(g.n(), -1);
    for (int e = 0; e < g.m(); ++e) {
        if (c.color[e] == i) out[g.vert(d.tail[e])] = d.tail[e];
    }
    return out;
}

DualOrientation dual_orientation(const TorusMap& g, const Orientation& d) { return {dual(g), d}; }

bool has_noncontractible_directed_cycle(const TorusMap& g, const Orientation& d, const HomologyBasis& basis) {
    const int nf = g.f();
    // arc of edge e: face(tail) -> face(twin tail); label = signed use of e by b1, b2
    std::vector<std::array<int, 2>> label(g.m(), {0, 0});
    for (int x : basis.b1.darts) label[x >> 1][0] += d.tail[x >> 1] == x ? 1 : -1;
    for (int x : basis.b2.darts) label[x >> 1][1] += d.tail[x >> 1] == x ? 1 : -1;
    // adjacency (out-arcs) of the dual digraph in CSR form
    std::vector<int> start(nf + 1, 0), arcs(g.m());
    for (int e = 0; e < g.m(); ++e) ++start[g.face_of(d.tail[e]) + 1];
    for (int f = 0; f < nf; ++f) start[f + 1] += start[f];
    {
        std::vector<int> pos(start.begin(), start.end() - 1);
        for (int e = 0; e < g.m(); ++e) arcs[pos[g.face_of(d.tail[e])]++] = e;
    }
    auto head = [&](int e) { return g.face_of(d.tail[e] ^ 1); };
    // iterative Tarjan
    std::vector<int> index(nf, -1), low(nf, 0), comp(nf, -1), stack, it(nf, 0);
    std::vector<char> on_stack(nf, 0);
    int counter = 0, ncomp = 0;
    std::vector<int> call;
    for (int s = 0; s < nf; ++s) {
        if (index[s] != -1) continue;
        call.push_back(s);
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!call.empty()) {
            const int v = call.back();
            if (it[v] < start[v + 1] - start[v]) {
                const int w = head(arcs[start[v] + it[v]++]);
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back(w);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            call.pop_back();
            if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
        }
    }
    // Z^2 potentials inside each strongly connected component
    std::vector<std::array<long, 2>> pot(nf, {0, 0});
    std::vector<char> seen(nf, 0);
    // undirected incidence for the potential walk
    std::vector<std::vector<int>> inc(nf);
    for (int e = 0; e < g.m(); ++e) {
        const int a = g.face_of(d.tail[e]), b = head(e);
        if (comp[a] != comp[b]) continue;
        inc[a].push_back(e);
        if (a != b) inc[b].push_back(e);
    }
    for (int s = 0; s < nf; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::deque<int> q{s};
        while (!q.empty()) {
            const int f = q.front();
            q.pop_front();
            for (int e : inc[f]) {
                const int a = g.face_of(d.tail[e]), b = head(e);
                std::array<long, 2> pa, pb;
                if (a == f) {
                    pa = pot[a];
                    pb = {pa[0] + label[e][0], pa[1] + label[e][1]};
                    if (!seen[b]) {
                        seen[b] = 1;
                        pot[b] = pb;
                        q.push_back(b);
                    } else if (pot[b] != pb) {
                        return true;
                    }
                } else {
                    pb = pot[b];
                    pa = {pb[0] - label[e][0], pb[1] - label[e][1]};
                    if (!seen[a]) {
                        seen[a] = 1;
                        pot[a] = pa;
                        q.push_back(a);
                    } else if (pot[a] != pa) {
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

std::vector<Walk> monochromatic_cycles(const TorusMap& g, const Orientation& d, const SchnyderColoring& c, int i) {
    auto out = color_out_darts(g, d, c, i);
    std::vector<int> state(g.n(), 0);  // 0 new, 1 on current path, 2 done
    std::vector<Walk> cycles;
    for (int s = 0; s < g.n(); ++s) {
        if (state[s]) continue;
        std::vector<int> path;
        int v = s;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            if (out[v] < 0) fail("vertex without outgoing edge of color " + std::to_string(i));
            v = g.head(out[v]);
        }
        if (state[v] == 1) {
            Walk w;
            int u = v;
            do {
                w.darts.push_back(out[u]);
                u = g.head(out[u]);
            } while (u != v);
            cycles.push_back(std::move(w));
        }
        for (int u : path) state[u] = 2;
    }
    return cycles;
}

bool is_crossing(const TorusMap& g, const Orientation& d, const SchnyderColoring& c) {
    std::vector<int> mask(g.n(), 0);
    for (int i = 0; i < 3; ++i)
        for (const auto& w : monochromatic_cycles(g, d, c, i))
            for (int x : w.darts) mask[g.vert(x)] |= 1 << i;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const int want = (1 << i) | (1 << j);
            if (!std::any_of(mask.begin(), mask.end(), [&](int m) { return (m & want) == want; })) return false;
        }
    return true;
}

std::string format_orientation(const Orientation& d) {
    std::ostringstream out;
    out << "torient 1 " << d.tail.size() << '\n';
    for (size_t e = 0; e < d.tail.size(); ++e) out << "e " << e << ' ' << d.tail[e] << '\n';
    return out.str();
}

Orientation parse_orientation(const TorusMap& g, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail("missing torient header");
    auto h = tokens(line);
    if (h.size() != 3 || h[0] != "torient" || h[1] != "1") fail("bad torient header");
    if (to_int(h[2]) != g.m()) fail("torient edge count does not match the map");
    Orientation d;
    d.tail.assign(g.m(), -1);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto t = tokens(line);
        if (t.size() != 3 || t[0] != "e") fail("bad torient line");
        const int e = to_int(t[1]), x = to_int(t[2]);
        if (e >= g.m() || (x >> 1) != e || d.tail[e] != -1) fail("bad torient entry for edge " + t[1]);
        d.tail[e] = x;
    }
    if (std::find(d.tail.begin(), d.tail.end(), -1) != d.tail.end()) fail("torient misses edges");
    return d;
}

std::string format_coloring(const SchnyderColoring& c) {
    std::ostringstream out;
    out << "tcolor 1\n";
    for (size_t e = 0; e < c.color.size(); ++e) out << "e " << e << ' ' << c.color[e] << '\n';
    return out.str();
}

SchnyderColoring parse_coloring(const TorusMap& g, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || tokens(line) != std::vector<std::string>{"tcolor", "1"}) fail("bad tcolor header");
    SchnyderColoring c;
    c.color.assign(g.m(), -1);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto t = tokens(line);
        if (t.size() != 3 || t[0] != "e") fail("bad tcolor line");
        const int e = to_int(t[1]), k = to_int(t[2]);
        if (e >= g.m() || k > 2 || c.color[e] != -1) fail("bad tcolor entry for edge " + t[1]);
        c.color[e] = k;
    }
    if (std::find(c.color.begin(), c.color.end(), -1) != c.color.end()) fail("tcolor misses edges");
    return c;
}

}  // namespace tps
