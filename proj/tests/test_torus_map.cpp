#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"
#include "tps/error.hpp"
#include "tps/generators.hpp"
#include "tps/torus_map.hpp"

using namespace tps;
using tps::testing::Period;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_map(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(SurfaceMap, OneVertexCounts) {
    auto g = gen_one_vertex();
    EXPECT_EQ(g.n(), 1);
    EXPECT_EQ(g.m(), 3);
    EXPECT_EQ(g.f(), 2);
    for (int f = 0; f < g.f(); ++f) EXPECT_EQ(g.face_size(f), 3);
}

TEST(SurfaceMap, K7Counts) {
    auto g = gen_k7();
    EXPECT_EQ(g.n(), 7);
    EXPECT_EQ(g.m(), 21);
    EXPECT_EQ(g.f(), 14);
    for (int v = 0; v < 7; ++v) EXPECT_EQ(g.degree(v), 6);
}

TEST(SurfaceMap, K7FacesAreTheListedTriangles) {
    auto g = gen_k7();
    std::set<std::vector<int>> expect;
    auto canon = [](std::vector<int> t) {
        std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
        return t;
    };
    for (int i = 0; i < 7; ++i) {
        expect.insert(canon({i, (i + 1) % 7, (i + 3) % 7}));
        expect.insert(canon({i, (i + 3) % 7, (i + 2) % 7}));
    }
    std::set<std::vector<int>> got;
    for (int f = 0; f < g.f(); ++f) {
        std::vector<int> t;
        for (int d : g.face_darts(f)) t.push_back(g.vert(d));
        got.insert(canon(t));
    }
    EXPECT_EQ(got, expect);
}

TEST(SurfaceMap, ParseFormatRoundTrip) {
    auto g = gen_k7();
    auto text = format_map(g);
    auto h = parse_map(text);
    EXPECT_EQ(format_map(h), text);
    EXPECT_TRUE(h.triangulation());
}

TEST(SurfaceMap, ParseErrors) {
    EXPECT_NE(error_of("tmap 1 1 3\nv 0 0 2 4 1 3\n").find("twin not involution"), std::string::npos);
    EXPECT_NE(error_of("tmap 1 1 3\nv 0 0 2 4 1 3 3\n").find("duplicate dart"), std::string::npos);
    EXPECT_NE(error_of("tmap 1 1 3\nv 0  0 2 4 1 3 5\n").find("whitespace"), std::string::npos);
    EXPECT_NE(error_of("tmap 1 1 3\nv 0 0 2 4 1 3 5 \n").find("whitespace"), std::string::npos);
    EXPECT_NE(error_of("tmap 1 1 3\nv\t0 0 2 4 1 3 5\n").find("tab"), std::string::npos);
    EXPECT_NE(error_of("tmap 2 1 3\nv 0 0 2 4 1 3 5\n").find("header"), std::string::npos);
    // sphere: one edge, two vertices
    EXPECT_NE(error_of("tmap 1 2 1\nv 0 0\nv 1 1\n").find("genus"), std::string::npos);
    EXPECT_NO_THROW(parse_map("tmap 1 1 3 triangulation\nv 0 0 2 4 1 3 5\n"));
}

TEST(SurfaceMap, RejectsContractibleLoopInTriangulation) {
    // one-vertex map with rotation 0 1 ... gives a contractible loop or the
    // wrong genus; either way it is rejected
    EXPECT_THROW(parse_map("tmap 1 1 3 triangulation\nv 0 0 1 2 4 3 5\n"), Error);
}

TEST(SurfaceMap, AngleSteps) {
    for (const auto& g : {gen_one_vertex(), gen_k7(), gen_random(30, 5)}) {
        for (int d = 0; d < g.darts(); ++d) {
            Angle a = g.angle(d);
            EXPECT_EQ(angle_step(g, angle_step(g, a, AngleStep::next_vertex), AngleStep::prev_vertex), a);
            EXPECT_EQ(angle_step(g, angle_step(g, a, AngleStep::next_face), AngleStep::prev_face), a);
            // the angle stays in its face under face steps
            EXPECT_EQ(g.angle_face(angle_step(g, a, AngleStep::next_face).dart), g.angle_face(d));
            EXPECT_EQ(angle_step(g, a, AngleStep::next_vertex).vertex, a.vertex);
        }
    }
    auto g = gen_one_vertex();
    Angle a = g.angle(0);
    Angle b = a;
    for (int i = 0; i < 6; ++i) b = angle_step(g, b, AngleStep::next_vertex);
    EXPECT_EQ(a, b);
    auto k7 = gen_k7();
    for (int d = 0; d < k7.darts(); ++d) {
        Angle x = k7.angle(d);
        Angle y = x;
        for (int i = 0; i < 3; ++i) y = angle_step(k7, y, AngleStep::next_face);
        EXPECT_EQ(x, y);
    }
}

TEST(SurfaceMap, AngleGraphIsTwoRegular) {
    auto g = gen_random(25, 11);
    std::vector<int> indeg(g.darts(), 0);
    for (int d = 0; d < g.darts(); ++d) {
        Angle a = g.angle(d);
        ++indeg[angle_step(g, a, AngleStep::next_vertex).dart];
        ++indeg[angle_step(g, a, AngleStep::next_face).dart];
        EXPECT_NE(angle_step(g, a, AngleStep::next_vertex), angle_step(g, a, AngleStep::next_face));
    }
    for (int x : indeg) EXPECT_EQ(x, 2);
}

TEST(SurfaceMap, DualCounts) {
    auto d1 = dual(gen_one_vertex());
    EXPECT_EQ(d1.map.n(), 2);
    EXPECT_EQ(d1.map.m(), 3);
    EXPECT_EQ(d1.map.f(), 1);
    auto k7 = gen_k7();
    auto d7 = dual(k7);
    EXPECT_EQ(d7.map.n(), 14);
    EXPECT_EQ(d7.map.m(), 21);
    EXPECT_EQ(d7.map.f(), 7);
    EXPECT_TRUE(is_isomorphic(dual(d7.map).map, k7));
    // dual dart d goes from the left face of d to its right face
    for (int d = 0; d < k7.darts(); ++d) {
        EXPECT_EQ(d7.map.vert(d), k7.face_of(d));
        EXPECT_EQ(d7.map.head(d), k7.face_of(d ^ 1));
    }
}

TEST(SurfaceMap, HomologyBasisAgainstTreeCotree) {
    for (const auto& g : {gen_one_vertex(), gen_k7(), gen_random(40, 3), gen_random(120, 9)}) {
        auto hb = homology_basis(g);
        auto om = tps::testing::tree_cotree_periods(g);
        ASSERT_TRUE(is_closed_walk(g, hb.b1));
        ASSERT_TRUE(is_closed_walk(g, hb.b2));
        Period p1 = tps::testing::walk_period(om, hb.b1);
        Period p2 = tps::testing::walk_period(om, hb.b2);
        EXPECT_EQ(std::abs(p1[0] * p2[1] - p1[1] * p2[0]), 1);
        EXPECT_FALSE(is_contractible(g, hb, hb.b1));
        EXPECT_FALSE(is_contractible(g, hb, hb.b2));
        int x = crossing_signature(g, hb.b2, hb.b1);
        EXPECT_TRUE(x == 1 || x == -1);
        EXPECT_EQ(crossing_signature(g, hb.b1, hb.b1), 0);
        EXPECT_EQ(crossing_signature(g, hb.b1, hb.b2), -x);
        for (int f = 0; f < g.f(); ++f) {
            Walk w{g.face_darts(f), true};
            EXPECT_EQ(crossing_signature(hb.side1, w), 0);
            EXPECT_EQ(crossing_signature(hb.side2, w), 0);
        }
    }
}

TEST(SurfaceMap, ContractibilityMatchesOracleOnRandomWalks) {
    std::mt19937_64 rng(7);
    for (int n : {1, 7, 30, 80}) {
        auto g = n == 7 ? gen_k7() : gen_random(n, 100 + n);
        auto hb = homology_basis(g);
        auto om = tps::testing::tree_cotree_periods(g);
        for (int t = 0; t < 300; ++t) {
            // random closed walk: random walk then return along a BFS tree
            Walk w;
            int d = static_cast<int>(rng() % g.darts());
            int start = g.vert(d);
            int len = 1 + static_cast<int>(rng() % 12);
            int v = start;
            for (int i = 0; i < len; ++i) {
                auto r = g.rotation(v);
                int x = r[rng() % r.size()];
                w.darts.push_back(x);
                v = g.head(x);
            }
            // close via BFS path v -> start
            std::vector<int> par(g.n(), -1);
            std::vector<char> s(g.n(), 0);
            std::deque<int> q{v};
            s[v] = 1;
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                for (int x : g.rotation(u))
                    if (!s[g.head(x)]) {
                        s[g.head(x)] = 1;
                        par[g.head(x)] = x;
                        q.push_back(g.head(x));
                    }
            }
            std::vector<int> back;
            for (int u = start; u != v; u = g.vert(par[u])) back.push_back(par[u]);
            w.darts.insert(w.darts.end(), back.rbegin(), back.rend());
            ASSERT_TRUE(is_closed_walk(g, w));
            Period p = tps::testing::walk_period(om, w);
            EXPECT_EQ(is_contractible(g, hb, w), p[0] == 0 && p[1] == 0);
        }
    }
}

TEST(SurfaceMap, ReverseWalkNegatesSignature) {
    auto g = gen_random(30, 2);
    auto hb = homology_basis(g);
    EXPECT_EQ(crossing_signature(hb.side1, reverse_walk(hb.b2)), -crossing_signature(hb.side1, hb.b2));
}

namespace {

// Brute force: every closed walk of three distinct edges, contractible by
// the tree-cotree oracle, not a face.
std::set<std::set<int>> brute_separating(const TorusMap& g) {
    auto om = tps::testing::tree_cotree_periods(g);
    std::set<std::set<int>> faces;
    for (int f = 0; f < g.f(); ++f) {
        std::set<int> s;
        for (int d : g.face_darts(f)) s.insert(edge_of(d));
        faces.insert(s);
    }
    std::set<std::set<int>> out;
    for (int d1 = 0; d1 < g.darts(); ++d1)
        for (int d2 = 0; d2 < g.darts(); ++d2)
            for (int d3 = 0; d3 < g.darts(); ++d3) {
                if (g.head(d1) != g.vert(d2) || g.head(d2) != g.vert(d3) || g.head(d3) != g.vert(d1)) continue;
                std::set<int> es{edge_of(d1), edge_of(d2), edge_of(d3)};
                if (es.size() != 3) continue;
                Period p = tps::testing::walk_period(om, Walk{{d1, d2, d3}, true});
                if (p[0] != 0 || p[1] != 0) continue;
                if (faces.count(es)) continue;
                out.insert(es);
            }
    return out;
}

std::set<std::set<int>> edge_sets(const std::vector<SeparatingTriangle>& ts) {
    std::set<std::set<int>> out;
    for (const auto& t : ts) out.insert({edge_of(t.darts[0]), edge_of(t.darts[1]), edge_of(t.darts[2])});
    return out;
}

}  // namespace

TEST(SurfaceMap, SeparatingTrianglesK7AndOneVertex) {
    EXPECT_TRUE(separating_triangles(gen_k7()).empty());
    EXPECT_TRUE(separating_triangles(gen_one_vertex()).empty());
}

TEST(SurfaceMap, NestedTriangleFixture) {
    auto k7 = gen_k7();
    auto g1 = insert_vertex_in_face(k7, 0);
    const int x = 7;
    // a face of g1 incident to x
    int f1 = g1.face_of(g1.vertex_dart(x));
    auto g2 = insert_vertex_in_face(g1, f1);
    const int y = 8;
    TriangleAnalysis ta(g2);
    ASSERT_EQ(ta.triangles().size(), 2u);
    EXPECT_EQ(edge_sets(ta.triangles()), brute_separating(g2));
    for (const auto& t : ta.triangles()) {
        // disk side: faces on the left of the stored darts
        for (int d : t.darts) EXPECT_TRUE(std::binary_search(t.interior_faces.begin(), t.interior_faces.end(), g2.face_of(d)));
    }
    std::set<int> sizes;
    for (const auto& t : ta.triangles()) sizes.insert(static_cast<int>(t.interior_faces.size()));
    EXPECT_EQ(sizes, (std::set<int>{3, 5}));
    for (int d : g2.rotation(y)) EXPECT_TRUE(ta.angle_in_strict_interior(g2.angle(d)));
    for (int d : g2.rotation(x)) EXPECT_TRUE(ta.angle_in_strict_interior(g2.angle(d)));
    for (int v = 0; v < 7; ++v)
        for (int d : g2.rotation(v)) EXPECT_FALSE(ta.angle_in_strict_interior(g2.angle(d)));
}

TEST(SurfaceMap, SeparatingTrianglesMatchBruteForce) {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        auto g = gen_random(6 + static_cast<int>(seed), seed);
        EXPECT_EQ(edge_sets(separating_triangles(g)), brute_separating(g)) << "seed " << seed;
    }
}

TEST(SurfaceMap, CwInteriorExemptsAnglesBeforeTriangleEdges) {
    // the boundary of the split face becomes a separating triangle
    auto g2 = insert_vertex_in_face(gen_k7(), 3);
    TriangleAnalysis tb(g2);
    ASSERT_EQ(tb.triangles().size(), 1u);
    const auto& t = tb.triangles()[0];
    int inside_not_cw = 0;
    for (int d = 0; d < g2.darts(); ++d) {
        Angle a = g2.angle(d);
        bool in_disk = std::binary_search(t.interior_faces.begin(), t.interior_faces.end(), g2.angle_face(d));
        if (in_disk && !tb.angle_in_cw_interior(a)) {
            ++inside_not_cw;
            bool on_tri = false;
            for (int x : t.darts) on_tri |= (d == x || d == (x ^ 1));
            EXPECT_TRUE(on_tri);
        }
        if (!in_disk) EXPECT_FALSE(tb.angle_in_cw_interior(a));
    }
    EXPECT_EQ(inside_not_cw, 3);
}

TEST(SurfaceMap, CanonicalCodes) {
    auto k7 = gen_k7();
    auto c0 = canonical_code(k7, 0);
    for (int d = 0; d < k7.darts(); ++d) EXPECT_EQ(canonical_code(k7, d), c0);
    EXPECT_FALSE(is_isomorphic(k7, gen_one_vertex()));
    EXPECT_TRUE(is_isomorphic(k7, k7));
    for (uint64_t s = 0; s < 10; ++s) {
        auto g = gen_random(20, s);
        std::vector<int> dm;
        auto h = tps::testing::permuted_copy(g, s + 99, &dm);
        EXPECT_TRUE(is_isomorphic(g, h));
        EXPECT_EQ(unrooted_canonical_code(g), unrooted_canonical_code(h));
        for (int d = 0; d < g.darts(); d += 7) {
            EXPECT_TRUE(is_isomorphic_rooted(g, d, h, dm[d]));
            EXPECT_EQ(canonical_code(g, d), canonical_code(h, dm[d]));
        }
        auto other = gen_random(20, s + 1000);
        EXPECT_EQ(is_isomorphic(g, other), unrooted_canonical_code(g) == unrooted_canonical_code(other));
    }
}

TEST(SurfaceMap, RandomGeneratorProducesValidTriangulations) {
    for (int n = 1; n <= 200; n += 7) {
        auto g = gen_random(n, static_cast<uint64_t>(n) * 31);
        EXPECT_EQ(g.n(), n);
        EXPECT_EQ(g.m(), 3 * n);
        EXPECT_EQ(g.f(), 2 * n);
        auto again = parse_map(format_map(g));
        EXPECT_EQ(format_map(again), format_map(g));
    }
    EXPECT_EQ(format_map(gen_random(50, 4)), format_map(gen_random(50, 4)));
}

TEST(SurfaceMap, BfsRelabelKeepsTheMap) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = gen_random(60, seed);
        auto h = g.bfs_relabeled();
        EXPECT_TRUE(h.triangulation());
        EXPECT_EQ(h.f(), g.f());
        auto checked = TorusMap::from_rotations(h.rotations(), true);
        EXPECT_EQ(format_map(checked), format_map(h));
        EXPECT_TRUE(is_isomorphic(g, h));
        // vertex 0 stays first and neighbours follow it
        for (int d : h.rotation(0)) EXPECT_LE(h.head(d), h.degree(0));
    }
}
