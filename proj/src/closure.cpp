#include "tps/closure.hpp"

#include <random>

#include "tps/error.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("closure", msg); }

// Stack pass from the root corner. Returns false when a stem arrives with
// fewer than two edges available before the root.
bool rooted_closure(const StemMap& u, SpecialFaceState& st) {
    if (u.root < 0) fail("no root");
    const std::vector<int> order = u.face_walk();
    if (static_cast<int>(order.size()) != u.halves()) fail("not unicellular");
    std::vector<int> stack;
    for (int x : order) {
        if (!u.is_stem(x)) {
            stack.push_back(x);
            continue;
        }
        if (stack.size() < 2) return false;
        const int e2 = stack.back();
        stack.pop_back();
        const int e1 = stack.back();
        stack.pop_back();
        stack.push_back(close_one(st, {e1, e2, x}));
    }
    return stack.size() == 3;
}

// Walks the border forward from start, closing every admissible triple that
// ends at the cursor, for at most two rounds plus the closures made.
void close_all(SpecialFaceState& st, int start) {
    StemMap& m = st.map;
    if (m.halves() == 0) return;
    int x = start;
    long budget = 2L * m.halves();
    while (st.stems > 0 && budget-- > 0) {
        if (m.is_stem(x)) {
            const int e2 = m.phi_inv(x);
            const int e1 = m.phi_inv(e2);
            if (!m.is_stem(e1) && !m.is_stem(e2) && e1 != x) {
                const int h = close_one(st, {e1, e2, x});
                x = m.phi(h);
                ++budget;
                continue;
            }
        }
        x = m.phi(x);
    }
}

}  // namespace

std::vector<int8_t> orient_from_root(const StemMap& u) {
    std::vector<int8_t> out(u.halves(), 0);
    for (int h = 0; h < u.halves(); ++h) out[h] = u.is_stem(h);
    if (u.root < 0) return out;
    std::vector<char> seen(u.halves(), 0);
    int y = u.root;
    for (int steps = 0; steps <= u.halves(); ++steps) {
        if (!u.is_stem(y)) {
            if (!seen[y]) {
                seen[y] = seen[u.mate[y]] = 1;
                out[u.mate[y]] = 1;
            }
            y = u.next[u.mate[y]];
        } else {
            y = u.next[y];
        }
        if (y == u.root) break;
    }
    return out;
}

SpecialFaceState start_closure(const StemMap& u) {
    SpecialFaceState st;
    st.map = u;
    st.stems = u.stems();
    return st;
}

bool is_admissible(const StemMap& m, const Triple& t) {
    const int h = m.halves();
    auto valid = [h](int x) { return x >= 0 && x < h; };
    if (!valid(t.e1) || !valid(t.e2) || !valid(t.s)) return false;
    if (m.is_stem(t.e1) || m.is_stem(t.e2) || !m.is_stem(t.s)) return false;
    return m.phi(t.e1) == t.e2 && m.phi(t.e2) == t.s;
}

int close_one(SpecialFaceState& state, const Triple& t) {
    StemMap& m = state.map;
    if (!is_admissible(m, t)) fail("not admissible");
    const int h = m.add_half(m.vert[t.e1]);
    m.insert_after(t.e1, h);
    m.mate[h] = t.s;
    m.mate[t.s] = h;
    --state.stems;
    return h;
}

std::vector<Triple> admissible_triples(const StemMap& m) {
    std::vector<Triple> out;
    for (int s = 0; s < m.halves(); ++s) {
        if (!m.is_stem(s)) continue;
        const int e2 = m.phi_inv(s);
        const int e1 = m.phi_inv(e2);
        const Triple t{e1, e2, s};
        if (is_admissible(m, t)) out.push_back(t);
    }
    return out;
}

int border_balance(const StemMap& m, int h) {
    int balance = 0;
    int x = h;
    do {
        balance += m.is_stem(x) ? -1 : 1;
        x = m.phi(x);
    } while (x != h);
    return balance;
}

ClosedMap to_torus_map(const StemMap& m) {
    std::vector<int> dart(m.halves(), -1);
    int edges = 0;
    for (int h = 0; h < m.halves(); ++h) {
        if (m.is_stem(h)) fail("stems left after closure");
        if (dart[h] < 0) {
            dart[h] = 2 * edges;
            dart[m.mate[h]] = 2 * edges + 1;
            ++edges;
        }
    }
    std::vector<std::vector<int>> rot(m.n);
    const std::vector<int> first = m.vertex_halves();
    for (int v = 0; v < m.n; ++v) {
        if (first[v] < 0) fail("vertex without edges");
        int h = first[v];
        do {
            rot[v].push_back(dart[h]);
            h = m.next[h];
        } while (h != first[v]);
    }
    ClosedMap out{TorusMap::from_rotations(rot, true), m.root < 0 ? -1 : dart[m.root]};
    return out;
}

ClosedMap recover_rooted(const StemMap& u) {
    SpecialFaceState st = start_closure(u);
    if (!rooted_closure(u, st)) fail("not admissible");
    return to_torus_map(st.map);
}

ClosedMap recover_unrooted(const StemMap& u, int start) {
    SpecialFaceState st = start_closure(u);
    if (u.halves() == 0) fail("empty map");
    close_all(st, ((start % u.halves()) + u.halves()) % u.halves());
    if (st.stems > 0) fail("not admissible");
    return to_torus_map(st.map);
}

ClosedMap recover_random_order(const StemMap& u, uint64_t seed) {
    SpecialFaceState st = start_closure(u);
    std::mt19937_64 rng(seed);
    while (st.stems > 0) {
        const auto triples = admissible_triples(st.map);
        if (triples.empty()) fail("not admissible");
        close_one(st, triples[rng() % triples.size()]);
    }
    return to_torus_map(st.map);
}

Core unicellular_core(const StemMap& u) {
    Core c;
    c.degree.assign(u.n, 0);
    std::vector<char> live(u.halves(), 0);
    for (int h = 0; h < u.halves(); ++h)
        if (!u.is_stem(h)) {
            live[h] = 1;
            ++c.degree[u.vert[h]];
        }
    std::vector<int> first = u.vertex_halves();
    auto live_half = [&](int v, int skip) {
        if (first[v] < 0) return -1;
        int h = first[v];
        do {
            if (live[h] && h != skip) return h;
            h = u.next[h];
        } while (h != first[v]);
        return -1;
    };
    std::vector<int> q;
    for (int v = 0; v < u.n; ++v)
        if (c.degree[v] == 1) q.push_back(v);
    while (!q.empty()) {
        const int v = q.back();
        q.pop_back();
        if (c.degree[v] != 1) continue;
        const int h = live_half(v, -1);
        const int w = u.vert[u.mate[h]];
        live[h] = live[u.mate[h]] = 0;
        --c.degree[v];
        if (--c.degree[w] == 1) q.push_back(w);
    }
    int deg3 = 0, deg4 = 0, other = 0, a = -1;
    for (int v = 0; v < u.n; ++v) {
        if (c.degree[v] == 3) {
            ++deg3;
            if (a < 0) a = v;
        } else if (c.degree[v] == 4) {
            ++deg4;
            a = v;
        } else if (c.degree[v] != 0 && c.degree[v] != 2) {
            ++other;
        }
    }
    c.hexagon = deg3 == 2 && deg4 == 0 && other == 0;
    c.square = deg3 == 0 && deg4 == 1 && other == 0;
    if (!c.hexagon && !c.square) return c;
    // departing halves from h until a branch vertex is reached
    auto follow = [&](int h) {
        std::vector<int> path{h};
        for (;;) {
            const int arrive = u.mate[path.back()];
            const int v = u.vert[arrive];
            if (c.degree[v] != 2) return path;
            path.push_back(live_half(v, arrive));
        }
    };
    auto reversed = [&](const std::vector<int>& p) {
        std::vector<int> r;
        for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back(u.mate[*it]);
        return r;
    };
    std::vector<int> start;
    int h = first[a];
    do {
        if (live[h]) start.push_back(h);
        h = u.next[h];
    } while (h != first[a]);
    if (c.hexagon) {
        std::array<std::vector<int>, 3> p;
        for (int i = 0; i < 3; ++i) p[i] = follow(start[i]);
        for (int i = 0; i < 2; ++i) {
            c.cycles[i] = p[i];
            const auto r = reversed(p[i + 1]);
            c.cycles[i].insert(c.cycles[i].end(), r.begin(), r.end());
        }
    } else {
        c.cycles[0] = follow(start[0]);
        const int back = u.mate[c.cycles[0].back()];
        for (int s : start)
            if (s != start[0] && s != back) {
                c.cycles[1] = follow(s);
                break;
            }
    }
    return c;
}

int stem_gamma(const StemMap& u, const std::vector<int8_t>& out, const std::vector<int>& cycle) {
    const size_t k = cycle.size();
    int result = 0;
    for (size_t i = 0; i < k; ++i) {
        const int h = cycle[i];
        const int in = u.mate[cycle[(i + k - 1) % k]];
        for (int x = u.next[h]; x != in; x = u.next[x]) result -= out[x];
        for (int x = u.next[in]; x != h; x = u.next[x]) result += out[x];
    }
    return result;
}

ClassReport validate_class(const StemMap& u) {
    ClassReport r;
    const int n = u.n;
    auto why = [&](const std::string& s) {
        if (r.detail.empty()) r.detail = s;
    };
    Core core;
    bool shape = u.root >= 0 && u.edge_halves() == 2 * (n + 1) && u.stems() == 2 * n - 1;
    if (!shape) why("edge or stem count");
    if (shape && u.face_count() != 1) {
        shape = false;
        why("not unicellular");
    }
    if (shape) {
        core = unicellular_core(u);
        if (!core.hexagon && !core.square) {
            shape = false;
            why("core is neither hexagon nor square");
        }
    }
    if (shape) {
        const std::vector<int> stems = u.stem_count();
        const int rv = u.vert[u.root];
        for (int v = 0; v < n && shape; ++v) {
            const int want = 2 + (v == rv) - std::max(0, core.degree[v] - 2);
            if (stems[v] != want) {
                shape = false;
                why("stem count at vertex " + std::to_string(v));
            }
        }
    }
    r.in_u_r = shape;
    if (u.root >= 0 && u.face_count() == 1) {
        SpecialFaceState st = start_closure(u);
        try {
            r.balanced = rooted_closure(u, st);
        } catch (const Error&) {
            r.balanced = false;
        }
        if (!r.balanced) why("closure wraps the root");
    }
    if (shape) {
        const std::vector<int8_t> out = orient_from_root(u);
        r.gamma0 = stem_gamma(u, out, core.cycles[0]) == 0 && stem_gamma(u, out, core.cycles[1]) == 0;
        if (!r.gamma0) why("gamma is not zero on the core cycles");
    }
    return r;
}

StemMap strip_root_stem(const StemMap& u) {
    if (u.root < 0 || !u.is_stem(u.root)) fail("root stem absent");
    StemMap c = u;
    const int r = c.next[c.root] == c.root ? -1 : c.next[c.root];
    std::vector<char> live(c.halves(), 1);
    live[c.root] = 0;
    c.detach(c.root);
    c.root = r;
    return c.compacted(live);
}

ClosedMap complete_quadrangle(const StemMap& stripped, int choice) {
    if (choice < 0 || choice > 3) fail("quadrangle choice must be 0..3");
    SpecialFaceState st = start_closure(stripped);
    int start = 0;
    for (int h = 0; h < stripped.halves(); ++h)
        if (stripped.is_stem(h)) {
            start = h;
            break;
        }
    close_all(st, start);
    if (st.stems > 0) fail("not admissible");
    StemMap& m = st.map;
    int q0 = -1;
    for (int h = 0; h < m.halves() && q0 < 0; ++h) {
        int len = 0, lo = h, x = h;
        do {
            lo = std::min(lo, x);
            x = m.phi(x);
            ++len;
        } while (x != h && len <= 4);
        if (len == 4 && x == h) q0 = lo;
    }
    if (q0 < 0) fail("closure did not end on a quadrangle");
    int qc = q0;
    for (int i = 0; i < choice; ++i) qc = m.phi(qc);
    const int s = m.add_half(m.vert[qc]);
    m.insert_after(qc, s);
    ++st.stems;
    const int e2 = m.phi_inv(s);
    close_one(st, {m.phi_inv(e2), e2, s});
    m.root = s;
    return to_torus_map(m);
}

}  // namespace tps
