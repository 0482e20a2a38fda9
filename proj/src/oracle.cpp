#include "tps/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tps/error.hpp"
#include "tps/lattice.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("oracle_testkit", msg); }

std::string key_of(const Orientation& d) {
    std::string k(d.tail.size(), '\0');
    for (size_t e = 0; e < d.tail.size(); ++e) k[e] = static_cast<char>(d.tail[e] & 1);
    return k;
}

struct Regions {
    std::vector<int> of_face;
    int count = 0;
};

Regions rigid_regions(const TorusMap& g, const std::vector<char>& rigid) {
    std::vector<int> parent(g.f());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < g.m(); ++e)
        if (rigid[e]) parent[find(g.face_of(2 * e))] = find(g.face_of(2 * e + 1));
    Regions r;
    r.of_face.assign(g.f(), -1);
    std::vector<int> id(g.f(), -1);
    for (int f = 0; f < g.f(); ++f) {
        const int root = find(f);
        if (id[root] == -1) id[root] = r.count++;
        r.of_face[f] = id[root];
    }
    return r;
}

// +1: every boundary dart on the region side is a tail (ccw), -1: none is
// (cw), 0 otherwise or no boundary.
int region_direction(const TorusMap& g, const Orientation& d, const Regions& reg, int r) {
    bool any = false, all_tail = true, no_tail = true;
    for (int x = 0; x < g.darts(); ++x) {
        if (reg.of_face[g.face_of(x)] != r || reg.of_face[g.face_of(x ^ 1)] == r) continue;
        any = true;
        if (d.is_out(x)) no_tail = false;
        else all_tail = false;
    }
    if (!any) return 0;
    if (all_tail) return 1;
    if (no_tail) return -1;
    return 0;
}

Orientation flip_region(const TorusMap& g, const Orientation& d, const Regions& reg, int r) {
    Orientation out = d;
    for (int x = 0; x < g.darts(); x += 1) {
        if (reg.of_face[g.face_of(x)] == r && reg.of_face[g.face_of(x ^ 1)] != r) out.tail[x >> 1] ^= 1;
    }
    return out;
}

}  // namespace

std::vector<Orientation> enumerate_three_orientations(const TorusMap& g) {
    if (g.m() > kOracleMaxEdges) fail("oracle cap exceeded: m = " + std::to_string(g.m()));
    const int m = g.m();
    std::vector<int> out(g.n(), 0), rem(g.n(), 0);
    for (int e = 0; e < m; ++e) {
        ++rem[g.vert(2 * e)];
        if (g.vert(2 * e + 1) != g.vert(2 * e)) ++rem[g.vert(2 * e + 1)];
    }
    std::vector<Orientation> result;
    Orientation cur;
    cur.tail.assign(m, -1);
    auto feasible = [&](int v) { return out[v] <= 3 && out[v] + rem[v] >= 3; };
    // iterative DFS over edges; choice 0 = tail 2e, 1 = tail 2e+1
    std::vector<int> choice(m + 1, -1);
    int e = 0;
    while (e >= 0) {
        if (e == m) {
            result.push_back(cur);
            --e;
            continue;
        }
        const int a = g.vert(2 * e), b = g.vert(2 * e + 1);
        if (choice[e] >= 0) {
            // undo previous choice
            --out[g.vert(cur.tail[e])];
            ++rem[a];
            if (b != a) ++rem[b];
        }
        ++choice[e];
        if (choice[e] > 1) {
            choice[e] = -1;
            cur.tail[e] = -1;
            --e;
            continue;
        }
        cur.tail[e] = 2 * e + choice[e];
        --rem[a];
        if (b != a) --rem[b];
        ++out[g.vert(cur.tail[e])];
        if (feasible(a) && feasible(b)) ++e;
    }
    return result;
}

std::vector<std::vector<int>> homology_classes(const TorusMap& g, const std::vector<Orientation>& orients) {
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < static_cast<int>(orients.size()); ++i) {
        bool placed = false;
        for (auto& c : classes) {
            if (is_zero_homologous(g, delta(g, orients[c[0]], orients[i]))) {
                c.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({i});
    }
    return classes;
}

uint32_t non_minimal_faces_bruteforce(const TorusMap& g, const Orientation& d) {
    const int nf = g.f();
    if (nf > 30) fail("brute force needs at most 30 faces");
    std::vector<uint32_t> out_mask(nf, 0);
    for (int e = 0; e < g.m(); ++e) {
        const int t = d.tail[e];
        out_mask[g.face_of(t)] |= 1u << g.face_of(t ^ 1);
    }
    const uint32_t full = nf == 32 ? ~0u : ((1u << nf) - 1);
    uint32_t bad = 0;
    for (uint32_t x = 1; x < full; ++x) {
        uint32_t rest = x;
        bool closed = true;
        while (rest) {
            const int f = __builtin_ctz(rest);
            rest &= rest - 1;
            if (out_mask[f] & ~x) {
                closed = false;
                break;
            }
        }
        if (closed) bad |= ~x & full;
    }
    return bad;
}

bool precedes(const TorusMap& g, const Orientation& a, const Orientation& b, int f0) {
    auto lam = face_potential(g, delta(g, a, b), f0);
    if (!lam) return false;
    return std::all_of(lam->begin(), lam->end(), [](long x) { return x >= 0; });
}

std::vector<int> rigid_edges(const TorusMap& g, const std::vector<Orientation>& orients, const std::vector<int>& cls) {
    std::vector<int> out;
    for (int e = 0; e < g.m(); ++e) {
        bool same = true;
        for (int i : cls) same &= orients[i].tail[e] == orients[cls[0]].tail[e];
        if (same) out.push_back(e);
    }
    return out;
}

std::vector<int> rigid_edges_from_triangles(const TorusMap& g) {
    std::vector<char> rigid(g.m(), 0);
    for (const auto& t : separating_triangles(g)) {
        std::vector<char> tri_v(g.n(), 0), tri_e(g.m(), 0);
        for (int x : t.darts) {
            tri_v[g.vert(x)] = 1;
            tri_e[x >> 1] = 1;
        }
        for (int f : t.interior_faces)
            for (int x : g.face_darts(f)) {
                if (tri_e[x >> 1]) continue;
                if (tri_v[g.vert(x)] || tri_v[g.head(x)]) rigid[x >> 1] = 1;
            }
    }
    std::vector<int> out;
    for (int e = 0; e < g.m(); ++e)
        if (rigid[e]) out.push_back(e);
    return out;
}

LatticeReport lattice_check(const TorusMap& g, const std::vector<Orientation>& orients, const std::vector<int>& cls,
                            int f0) {
    LatticeReport rep;
    rep.class_size = static_cast<int>(cls.size());
    if (cls.empty()) return rep;
    std::unordered_map<std::string, int> index;
    for (int i : cls) index[key_of(orients[i])] = i;
    // minimize from every member
    const Orientation m0 = minimize(g, orients[cls[0]], f0);
    auto it = index.find(key_of(m0));
    if (it == index.end()) {
        rep.minimize_agrees = false;
        return rep;
    }
    rep.minimum = it->second;
    for (int i : cls) {
        const Orientation mi = minimize(g, orients[i], f0);
        if (mi != orients[rep.minimum]) rep.minimize_agrees = false;
        const bool minimal = is_minimal(g, orients[i], f0);
        if (minimal != (i == rep.minimum)) rep.is_minimal_unique = false;
        if (!precedes(g, orients[rep.minimum], orients[i], f0)) rep.minimum_below_all = false;
        const bool brute_bad = (non_minimal_faces_bruteforce(g, orients[i]) >> f0) & 1u;
        if (brute_bad == minimal) rep.bruteforce_agrees = false;
    }
    // rigid-edge-reduced regions and the flip structure
    std::vector<char> rigid(g.m(), 0);
    for (int e : rigid_edges(g, orients, cls)) rigid[e] = 1;
    const Regions reg = rigid_regions(g, rigid);
    const int r0 = reg.of_face[f0];
    std::vector<char> seen_idx(orients.size(), 0);
    std::deque<int> q{rep.minimum};
    seen_idx[rep.minimum] = 1;
    int reached = 1;
    int no_up = 0, no_down = 0;
    while (!q.empty()) {
        const int i = q.front();
        q.pop_front();
        int up = 0, down = 0;
        for (int r = 0; r < reg.count; ++r) {
            if (r == r0) continue;
            const int dir = region_direction(g, orients[i], reg, r);
            if (dir == 0) continue;
            if (dir > 0) ++up;
            else ++down;
            auto nb = index.find(key_of(flip_region(g, orients[i], reg, r)));
            if (nb == index.end()) {
                rep.flips_connect_class = false;
                continue;
            }
            if (!seen_idx[nb->second]) {
                seen_idx[nb->second] = 1;
                ++reached;
                q.push_back(nb->second);
            }
        }
        if (up == 0) ++no_up;
        if (down == 0) {
            ++no_down;
            if (i != rep.minimum) rep.hasse_degrees_ok = false;
        }
    }
    if (reached != rep.class_size) rep.flips_connect_class = false;
    if (no_up != 1 || no_down != 1) rep.hasse_degrees_ok = false;
    return rep;
}

std::string format_lattice_report(const LatticeReport& r) {
    std::ostringstream out;
    out << "class_size=" << r.class_size << " minimum=" << r.minimum << " minimize_agrees=" << r.minimize_agrees
        << " is_minimal_unique=" << r.is_minimal_unique << " minimum_below_all=" << r.minimum_below_all
        << " bruteforce_agrees=" << r.bruteforce_agrees << " flips_connect_class=" << r.flips_connect_class
        << " hasse_degrees_ok=" << r.hasse_degrees_ok;
    return out.str();
}

}  // namespace tps
