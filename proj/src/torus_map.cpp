#include "tps/torus_map.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "tps/error.hpp"

namespace tps {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error("surface_map", msg); }

void put_varint(std::string& out, uint64_t x) {
    while (x >= 0x80) {
        out.push_back(static_cast<char>((x & 0x7f) | 0x80));
        x >>= 7;
    }
    out.push_back(static_cast<char>(x));
}

}  // namespace

TorusMap TorusMap::from_rotations(const std::vector<std::vector<int>>& rot, bool triangulation) {
    TorusMap g;
    g.n_ = static_cast<int>(rot.size());
    size_t total = 0;
    int max_dart = -1;
    for (const auto& r : rot) {
        total += r.size();
        for (int d : r) {
            if (d < 0) fail("negative dart id");
            max_dart = std::max(max_dart, d);
        }
    }
    if (g.n_ == 0 || total == 0) fail("empty map");
    const int nd = max_dart + 1 + ((max_dart + 1) & 1);
    std::vector<int> seen(nd, -1);
    for (int v = 0; v < g.n_; ++v) {
        if (rot[v].empty()) fail("isolated vertex " + std::to_string(v));
        for (int d : rot[v]) {
            if (seen[d] != -1) fail("duplicate dart " + std::to_string(d));
            seen[d] = v;
        }
    }
    for (int d = 0; d < nd; ++d) {
        if (seen[d] == -1) {
            if (seen[d ^ 1] != -1) fail("twin not involution");
            fail("missing dart " + std::to_string(d));
        }
    }
    g.m_ = nd / 2;
    g.vert_.assign(nd, -1);
    g.next_.assign(nd, -1);
    g.prev_.assign(nd, -1);
    g.first_.assign(g.n_, -1);
    g.deg_.assign(g.n_, 0);
    for (int v = 0; v < g.n_; ++v) {
        const auto& r = rot[v];
        const int k = static_cast<int>(r.size());
        g.first_[v] = r[0];
        g.deg_[v] = k;
        for (int i = 0; i < k; ++i) {
            g.vert_[r[i]] = v;
            g.next_[r[i]] = r[(i + 1) % k];
            g.prev_[r[(i + 1) % k]] = r[i];
        }
    }
    g.face_.assign(nd, -1);
    for (int d = 0; d < nd; ++d) {
        if (g.face_[d] != -1) continue;
        const int id = static_cast<int>(g.face_start_.size());
        int len = 0;
        int x = d;
        do {
            g.face_[x] = id;
            ++len;
            x = g.face_next(x);
        } while (x != d);
        g.face_start_.push_back(d);
        g.face_len_.push_back(len);
    }
    // connectivity
    std::vector<char> vis(g.n_, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int d = g.first_[v];
        do {
            int u = g.head(d);
            if (!vis[u]) {
                vis[u] = 1;
                ++reached;
                stack.push_back(u);
            }
            d = g.next_[d];
        } while (d != g.first_[v]);
    }
    if (reached != g.n_) fail("map not connected");
    if (g.n_ - g.m_ + g.f() != 0) {
        fail("genus is not 1 (n - m + f = " + std::to_string(g.n_ - g.m_ + g.f()) + ")");
    }
    if (triangulation) {
        if (g.m_ != 3 * g.n_) fail("not a triangulation: m != 3n");
        for (int len : g.face_len_) {
            if (len != 3) fail("not a triangulation: face of size " + std::to_string(len));
        }
        g.triangulation_ = true;
        check_no_contractible_short_cycles(g, homology_basis(g));
    }
    return g;
}

TorusMap TorusMap::bfs_relabeled() const {
    std::vector<int> nv(n_, -1), order;
    order.reserve(n_);
    nv[0] = 0;
    order.push_back(0);
    for (size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        int d = first_[v];
        do {
            const int u = head(d);
            if (nv[u] < 0) {
                nv[u] = static_cast<int>(order.size());
                order.push_back(u);
            }
            d = next_[d];
        } while (d != first_[v]);
    }
    const int nd = darts();
    std::vector<int> map(nd, -1);
    TorusMap g;
    g.n_ = n_;
    g.m_ = m_;
    g.triangulation_ = triangulation_;
    g.vert_.resize(nd);
    g.next_.resize(nd);
    g.prev_.resize(nd);
    g.first_.resize(n_);
    g.deg_.resize(n_);
    int edges = 0;
    for (int w = 0; w < n_; ++w) {
        const int v = order[w];
        int d = first_[v], last = -1, head_new = -1;
        do {
            if (map[d] < 0) {
                map[d] = 2 * edges;
                map[d ^ 1] = 2 * edges + 1;
                ++edges;
            }
            const int x = map[d];
            g.vert_[x] = w;
            if (last < 0) {
                head_new = x;
            } else {
                g.next_[last] = x;
                g.prev_[x] = last;
            }
            last = x;
            d = next_[d];
        } while (d != first_[v]);
        g.next_[last] = head_new;
        g.prev_[head_new] = last;
        g.first_[w] = head_new;
        g.deg_[w] = deg_[v];
    }
    g.face_.assign(nd, -1);
    for (int d = 0; d < nd; ++d) {
        if (g.face_[d] != -1) continue;
        const int id = static_cast<int>(g.face_start_.size());
        int len = 0;
        int x = d;
        do {
            g.face_[x] = id;
            ++len;
            x = g.face_next(x);
        } while (x != d);
        g.face_start_.push_back(d);
        g.face_len_.push_back(len);
    }
    return g;
}

std::vector<int> TorusMap::rotation(int v) const {
    std::vector<int> r;
    r.reserve(deg_[v]);
    int d = first_[v];
    do {
        r.push_back(d);
        d = next_[d];
    } while (d != first_[v]);
    return r;
}

std::vector<int> TorusMap::face_darts(int f) const {
    std::vector<int> r;
    r.reserve(face_len_[f]);
    int d = face_start_[f];
    do {
        r.push_back(d);
        d = face_next(d);
    } while (d != face_start_[f]);
    return r;
}

std::vector<std::vector<int>> TorusMap::rotations() const {
    std::vector<std::vector<int>> r(n_);
    for (int v = 0; v < n_; ++v) r[v] = rotation(v);
    return r;
}

Angle angle_step(const TorusMap& g, Angle a, AngleStep kind) {
    int d = a.dart;
    switch (kind) {
        case AngleStep::next_vertex: d = g.next_ccw(d); break;
        case AngleStep::prev_vertex: d = g.prev_ccw(d); break;
        case AngleStep::next_face: d = g.next_ccw(twin(d)); break;
        case AngleStep::prev_face: d = twin(g.prev_ccw(d)); break;
    }
    return g.angle(d);
}

TorusMap parse_map(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> tok;
        size_t i = 0;
        if (s.empty()) fail("empty line");
        if (s.front() == ' ' || s.back() == ' ') fail("leading or trailing whitespace");
        while (i <= s.size()) {
            size_t j = s.find(' ', i);
            if (j == std::string::npos) j = s.size();
            if (j == i) fail("repeated whitespace");
            tok.push_back(s.substr(i, j - i));
            i = j + 1;
        }
        return tok;
    };
    auto to_int = [](const std::string& s) {
        if (s.empty() || s.size() > 9) fail("bad integer '" + s + "'");
        for (char c : s) {
            if (c < '0' || c > '9') fail("bad integer '" + s + "'");
        }
        return std::stoi(s);
    };
    if (!std::getline(in, line)) fail("missing header");
    if (line.find('\t') != std::string::npos || line.find('\r') != std::string::npos) fail("tab or carriage return");
    auto h = split(line);
    if (h.size() < 4 || h.size() > 5 || h[0] != "tmap" || h[1] != "1") fail("bad header");
    const int n = to_int(h[2]);
    const int m = to_int(h[3]);
    bool tri = false;
    if (h.size() == 5) {
        if (h[4] != "triangulation") fail("bad header flag '" + h[4] + "'");
        tri = true;
    }
    std::vector<std::vector<int>> rot(n);
    std::vector<char> have(n, 0);
    int lines = 0;
    while (std::getline(in, line)) {
        if (line.empty() && in.peek() == EOF) break;
        if (line.find('\t') != std::string::npos || line.find('\r') != std::string::npos) fail("tab or carriage return");
        auto t = split(line);
        if (t[0] != "v" || t.size() < 3) fail("bad vertex line");
        const int v = to_int(t[1]);
        if (v >= n) fail("vertex id out of range");
        if (have[v]) fail("duplicate vertex line");
        have[v] = 1;
        for (size_t i = 2; i < t.size(); ++i) {
            const int d = to_int(t[i]);
            if (d >= 2 * m) fail("dart id out of range");
            rot[v].push_back(d);
        }
        ++lines;
    }
    if (lines != n) fail("expected " + std::to_string(n) + " vertex lines");
    size_t total = 0;
    for (auto& r : rot) total += r.size();
    if (total != static_cast<size_t>(2 * m)) {
        std::vector<char> seen(2 * m, 0);
        for (auto& r : rot)
            for (int d : r) {
                if (seen[d]) fail("duplicate dart " + std::to_string(d));
                seen[d] = 1;
            }
        for (int d = 0; d < 2 * m; ++d)
            if (!seen[d] && seen[d ^ 1]) fail("twin not involution");
        fail("missing dart");
    }
    return TorusMap::from_rotations(rot, tri);
}

std::string format_map(const TorusMap& g) {
    std::ostringstream out;
    out << "tmap 1 " << g.n() << ' ' << g.m();
    if (g.triangulation()) out << " triangulation";
    out << '\n';
    for (int v = 0; v < g.n(); ++v) {
        out << "v " << v;
        for (int d : g.rotation(v)) out << ' ' << d;
        out << '\n';
    }
    return out.str();
}

DualResult dual(const TorusMap& g) {
    std::vector<std::vector<int>> rot(g.f());
    for (int f = 0; f < g.f(); ++f) rot[f] = g.face_darts(f);
    DualResult r{TorusMap::from_rotations(rot), {}};
    r.edge_to_dual.resize(g.m());
    for (int e = 0; e < g.m(); ++e) r.edge_to_dual[e] = e;
    return r;
}

Walk reverse_walk(const Walk& w) {
    Walk r;
    r.closed = w.closed;
    r.darts.reserve(w.darts.size());
    for (auto it = w.darts.rbegin(); it != w.darts.rend(); ++it) r.darts.push_back(twin(*it));
    return r;
}

bool is_closed_walk(const TorusMap& g, const Walk& w) {
    if (w.darts.empty()) return false;
    for (size_t i = 0; i + 1 < w.darts.size(); ++i) {
        if (g.head(w.darts[i]) != g.vert(w.darts[i + 1])) return false;
    }
    return g.head(w.darts.back()) == g.vert(w.darts.front());
}

std::vector<int8_t> side_table(const TorusMap& g, const Walk& b) {
    std::vector<int8_t> side(g.darts(), 0);
    std::vector<char> on_b(g.darts(), 0);
    std::vector<char> seen_v(g.n(), 0);
    for (int d : b.darts) {
        on_b[d] = on_b[d ^ 1] = 1;
        if (seen_v[g.vert(d)]) fail("crossing signature needs a simple cycle");
        seen_v[g.vert(d)] = 1;
    }
    const size_t k = b.darts.size();
    for (size_t i = 0; i < k; ++i) {
        const int out = b.darts[i];
        const int in = twin(b.darts[(i + k - 1) % k]);
        // ccw from out to in: left; ccw from in to out: right
        for (int x = g.next_ccw(out); x != in; x = g.next_ccw(x))
            if (!on_b[x]) side[x] = 1;
        for (int x = g.next_ccw(in); x != out; x = g.next_ccw(x))
            if (!on_b[x]) side[x] = -1;
    }
    return side;
}

int crossing_signature(const std::vector<int8_t>& side, const Walk& w) {
    int s = 0;
    for (int d : w.darts) s += side[d ^ 1] - side[d];
    return s / 2;
}

int crossing_signature(const TorusMap& g, const Walk& w, const Walk& b) {
    return crossing_signature(side_table(g, b), w);
}

HomologyBasis homology_basis(const TorusMap& g) {
    const int m = g.m();
    std::vector<char> removed(m, 0);
    std::vector<char> fvis(g.f(), 0);
    std::deque<int> q{0};
    fvis[0] = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        int d = g.face_dart(f);
        do {
            int h = g.face_of(d ^ 1);
            if (!fvis[h]) {
                fvis[h] = 1;
                removed[edge_of(d)] = 1;
                q.push_back(h);
            }
            d = g.face_next(d);
        } while (d != g.face_dart(f));
    }
    std::vector<int> deg(g.n(), 0);
    for (int e = 0; e < m; ++e) {
        if (removed[e]) continue;
        ++deg[g.vert(2 * e)];
        ++deg[g.vert(2 * e + 1)];
    }
    std::vector<int> leaves;
    for (int v = 0; v < g.n(); ++v)
        if (deg[v] == 1) leaves.push_back(v);
    while (!leaves.empty()) {
        int v = leaves.back();
        leaves.pop_back();
        if (deg[v] != 1) continue;
        int d = g.vertex_dart(v);
        while (removed[edge_of(d)]) d = g.next_ccw(d);
        removed[edge_of(d)] = 1;
        --deg[v];
        int u = g.head(d);
        if (--deg[u] == 1) leaves.push_back(u);
    }
    // Branches of the core between vertices of degree >= 3.
    std::vector<char> used(m, 0);
    std::vector<std::vector<int>> branches;
    for (int c = 0; c < g.n(); ++c) {
        if (deg[c] < 3) continue;
        int d0 = g.vertex_dart(c);
        int d = d0;
        do {
            if (!removed[edge_of(d)] && !used[edge_of(d)]) {
                std::vector<int> path{d};
                used[edge_of(d)] = 1;
                int x = d;
                while (deg[g.head(x)] == 2) {
                    int y = g.next_ccw(twin(x));
                    while (removed[edge_of(y)]) y = g.next_ccw(y);
                    used[edge_of(y)] = 1;
                    path.push_back(y);
                    x = y;
                }
                branches.push_back(std::move(path));
            }
            d = g.next_ccw(d);
        } while (d != d0);
    }
    if (branches.empty()) fail("homology basis: core has no branch vertex");
    // Candidate simple cycles: loop branches and pairs of parallel branches.
    std::vector<Walk> cands;
    auto src = [&](const std::vector<int>& p) { return g.vert(p.front()); };
    auto dst = [&](const std::vector<int>& p) { return g.head(p.back()); };
    for (size_t i = 0; i < branches.size(); ++i) {
        if (src(branches[i]) == dst(branches[i])) cands.push_back({branches[i], true});
    }
    for (size_t i = 0; i < branches.size(); ++i) {
        for (size_t j = i + 1; j < branches.size(); ++j) {
            const auto& a = branches[i];
            const auto& b = branches[j];
            if (src(a) == dst(a) || src(b) == dst(b)) continue;
            Walk w{a, true};
            Walk rb = reverse_walk({b, true});
            if (src(a) == src(b) && dst(a) == dst(b)) {
                w.darts.insert(w.darts.end(), rb.darts.begin(), rb.darts.end());
            } else if (src(a) == dst(b) && dst(a) == src(b)) {
                w.darts.insert(w.darts.end(), b.begin(), b.end());
            } else {
                continue;
            }
            cands.push_back(std::move(w));
        }
    }
    for (size_t i = 0; i < cands.size(); ++i) {
        auto si = side_table(g, cands[i]);
        for (size_t j = i + 1; j < cands.size(); ++j) {
            int x = crossing_signature(si, cands[j]);
            if (x == 1 || x == -1) {
                HomologyBasis hb;
                hb.b1 = cands[i];
                hb.b2 = cands[j];
                hb.side1 = std::move(si);
                hb.side2 = side_table(g, hb.b2);
                return hb;
            }
        }
    }
    fail("homology basis: no unimodular pair of core cycles");
}

bool is_contractible(const TorusMap& g, const HomologyBasis& basis, const Walk& w) {
    (void)g;
    return crossing_signature(basis.side1, w) == 0 && crossing_signature(basis.side2, w) == 0;
}

void check_no_contractible_short_cycles(const TorusMap& g, const HomologyBasis& basis) {
    auto contractible2 = [&](int a, int b) {
        int s1 = basis.cross2_b1(a) + basis.cross2_b1(b);
        int s2 = basis.cross2_b2(a) + basis.cross2_b2(b);
        return s1 == 0 && s2 == 0;
    };
    for (int e = 0; e < g.m(); ++e) {
        int d = 2 * e;
        if (g.vert(d) == g.head(d) && basis.cross2_b1(d) == 0 && basis.cross2_b2(d) == 0)
            fail("contractible loop at edge " + std::to_string(e));
    }
    std::unordered_map<int, std::vector<int>> by_head;
    for (int v = 0; v < g.n(); ++v) {
        by_head.clear();
        int d = g.vertex_dart(v);
        do {
            int u = g.head(d);
            if (u >= v) by_head[u].push_back(d);
            d = g.next_ccw(d);
        } while (d != g.vertex_dart(v));
        for (auto& [u, ds] : by_head) {
            for (size_t i = 0; i < ds.size(); ++i) {
                for (size_t j = i + 1; j < ds.size(); ++j) {
                    int a = ds[i], b = ds[j];
                    if (edge_of(a) == edge_of(b)) continue;
                    // a goes v->u, come back along b reversed
                    if (contractible2(a, twin(b)))
                        fail("contractible 2-cycle on edges " + std::to_string(edge_of(a)) + "," +
                             std::to_string(edge_of(b)));
                    if (u == v && contractible2(a, b))
                        fail("contractible 2-cycle on loops " + std::to_string(edge_of(a)) + "," +
                             std::to_string(edge_of(b)));
                }
            }
        }
    }
}

std::vector<SeparatingTriangle> separating_triangles(const TorusMap& g) {
    const HomologyBasis basis = homology_basis(g);
    std::vector<SeparatingTriangle> out;
    std::map<std::array<int, 3>, char> done;
    std::vector<std::vector<int>> out_darts(g.n());
    for (int v = 0; v < g.n(); ++v) out_darts[v] = g.rotation(v);
    std::vector<int> region_mark(g.f(), 0);
    int stamp = 0;
    // closed walks of three distinct edges; vertices may repeat
    auto walk_key = [](std::array<int, 3> t) {
        std::array<int, 3> best = t;
        for (int pass = 0; pass < 2; ++pass) {
            for (int r = 0; r < 3; ++r) {
                std::rotate(t.begin(), t.begin() + 1, t.end());
                best = std::min(best, t);
            }
            t = {t[2] ^ 1, t[1] ^ 1, t[0] ^ 1};
        }
        return best;
    };
    for (int d1 = 0; d1 < g.darts(); ++d1) {
        const int u = g.vert(d1), v = g.head(d1);
        for (int d2 : out_darts[v]) {
            const int w = g.head(d2);
            if (edge_of(d2) == edge_of(d1)) continue;
            for (int d3 : out_darts[w]) {
                if (g.head(d3) != u) continue;
                if (edge_of(d3) == edge_of(d1) || edge_of(d3) == edge_of(d2)) continue;
                const std::array<int, 3> key = walk_key({d1, d2, d3});
                if (done.count(key)) continue;
                done[key] = 1;
                Walk t{{d1, d2, d3}, true};
                if (!is_contractible(g, basis, t)) continue;
                // region on the left of t
                auto region_of = [&](const Walk& tri) {
                    ++stamp;
                    std::vector<int> faces;
                    std::vector<char> cut(g.m(), 0);
                    for (int x : tri.darts) cut[edge_of(x)] = 1;
                    int f0 = g.face_of(tri.darts[0]);
                    region_mark[f0] = stamp;
                    faces.push_back(f0);
                    for (size_t i = 0; i < faces.size(); ++i) {
                        int x = g.face_dart(faces[i]);
                        do {
                            int h = g.face_of(x ^ 1);
                            if (!cut[edge_of(x)] && region_mark[h] != stamp) {
                                region_mark[h] = stamp;
                                faces.push_back(h);
                            }
                            x = g.face_next(x);
                        } while (x != g.face_dart(faces[i]));
                    }
                    return faces;
                };
                Walk tri = t;
                auto faces = region_of(tri);
                std::vector<char> tri_v(g.n(), 0);
                tri_v[u] = tri_v[v] = tri_v[w] = 1;
                // V_int - E_int + F of the region; 1 exactly for the disk side.
                auto euler = [&](const std::vector<int>& fs) {
                    long half_edges = 0;
                    std::vector<int> verts;
                    std::vector<char> cut(g.m(), 0);
                    for (int x : tri.darts) cut[edge_of(x)] = 1;
                    for (int f : fs) {
                        int x = g.face_dart(f);
                        do {
                            if (!cut[edge_of(x)]) ++half_edges;
                            if (!tri_v[g.vert(x)]) verts.push_back(g.vert(x));
                            x = g.face_next(x);
                        } while (x != g.face_dart(f));
                    }
                    std::sort(verts.begin(), verts.end());
                    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
                    long chi = static_cast<long>(verts.size()) - half_edges / 2 + static_cast<long>(fs.size());
                    return std::make_pair(chi, verts);
                };
                auto [chi, verts] = euler(faces);
                if (chi != 1) {
                    tri = reverse_walk(t);
                    faces = region_of(tri);
                    auto r = euler(faces);
                    chi = r.first;
                    verts = r.second;
                    if (chi != 1) continue;
                }
                if (faces.size() == 1) continue;  // a face, not separating
                SeparatingTriangle st;
                st.darts = tri.darts;
                st.interior_faces = faces;
                std::sort(st.interior_faces.begin(), st.interior_faces.end());
                st.interior_vertices = verts;
                out.push_back(std::move(st));
            }
        }
    }
    return out;
}

TriangleAnalysis::TriangleAnalysis(const TorusMap& g) : g_(&g), tris_(separating_triangles(g)) {}

bool TriangleAnalysis::angle_in_strict_interior(Angle a) const {
    for (const auto& t : tris_) {
        if (std::binary_search(t.interior_vertices.begin(), t.interior_vertices.end(), a.vertex)) return true;
    }
    return false;
}

bool TriangleAnalysis::angle_in_cw_interior(Angle a) const {
    const int f = g_->angle_face(a.dart);
    for (const auto& t : tris_) {
        if (!std::binary_search(t.interior_faces.begin(), t.interior_faces.end(), f)) continue;
        bool exempt = false;
        for (int x : t.darts) {
            if (a.dart == x || a.dart == twin(x)) exempt = true;
        }
        if (!exempt) return true;
    }
    return false;
}

namespace {

// Simultaneous BFS relabeling; returns true when the rooted maps agree.
bool rooted_equal(const TorusMap& a, int ra, const TorusMap& b, int rb, std::vector<int>& la,
                  std::vector<int>& lb, std::vector<int>& order) {
    std::fill(la.begin(), la.end(), -1);
    std::fill(lb.begin(), lb.end(), -1);
    order.clear();
    la[ra] = 0;
    lb[rb] = 0;
    order.push_back(ra);
    std::vector<int> orderb{rb};
    orderb.reserve(b.darts());
    for (size_t i = 0; i < order.size(); ++i) {
        const int da = order[i], db = orderb[i];
        const int na[2] = {a.next_ccw(da), twin(da)};
        const int nb[2] = {b.next_ccw(db), twin(db)};
        for (int k = 0; k < 2; ++k) {
            const int x = na[k], y = nb[k];
            if (la[x] == -1 && lb[y] == -1) {
                la[x] = lb[y] = static_cast<int>(order.size());
                order.push_back(x);
                orderb.push_back(y);
            } else if (la[x] != lb[y]) {
                return false;
            }
        }
    }
    return static_cast<int>(order.size()) == a.darts();
}

}  // namespace

std::string canonical_code(const TorusMap& g, int root) {
    std::vector<int> label(g.darts(), -1), order;
    order.reserve(g.darts());
    label[root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < order.size(); ++i) {
        int d = order[i];
        for (int x : {g.next_ccw(d), twin(d)}) {
            if (label[x] == -1) {
                label[x] = static_cast<int>(order.size());
                order.push_back(x);
            }
        }
    }
    std::string code;
    put_varint(code, g.n());
    put_varint(code, g.m());
    for (int d : order) {
        put_varint(code, label[g.next_ccw(d)]);
        put_varint(code, label[twin(d)]);
    }
    return code;
}

std::string unrooted_canonical_code(const TorusMap& g) {
    std::string best;
    for (int d = 0; d < g.darts(); ++d) {
        std::string c = canonical_code(g, d);
        if (d == 0 || c < best) best = std::move(c);
    }
    return best;
}

bool is_isomorphic_rooted(const TorusMap& a, int ra, const TorusMap& b, int rb) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    std::vector<int> la(a.darts()), lb(b.darts()), order;
    order.reserve(a.darts());
    return rooted_equal(a, ra, b, rb, la, lb, order);
}

bool is_isomorphic(const TorusMap& a, const TorusMap& b) {
    if (a.n() != b.n() || a.m() != b.m() || a.f() != b.f()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.n(); ++v) da.push_back(a.degree(v));
    for (int v = 0; v < b.n(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    // root a at a dart of a vertex of minimum degree
    int ra = 0;
    for (int d = 0; d < a.darts(); ++d)
        if (a.degree(a.vert(d)) < a.degree(a.vert(ra))) ra = d;
    const int dega = a.degree(a.vert(ra));
    const int fa = a.face_size(a.face_of(ra));
    std::vector<int> la(a.darts()), lb(b.darts()), order;
    order.reserve(a.darts());
    for (int rb = 0; rb < b.darts(); ++rb) {
        if (b.degree(b.vert(rb)) != dega || b.face_size(b.face_of(rb)) != fa) continue;
        if (rooted_equal(a, ra, b, rb, la, lb, order)) return true;
    }
    return false;
}

}  // namespace tps
