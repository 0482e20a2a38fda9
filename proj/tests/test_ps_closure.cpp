#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "test_support.hpp"
#include "tps/closure.hpp"
#include "tps/error.hpp"
#include "tps/generators.hpp"
#include "tps/lattice.hpp"
#include "tps/oracle.hpp"
#include "tps/ps.hpp"
#include "tps/schnyder.hpp"

using namespace tps;
using namespace tps::testing;

namespace {

struct Pipeline {
    Orientation minimal;
    Angle root;
    PsOutput ps;
};

Pipeline pipeline(const TorusMap& g) {
    auto basis = homology_basis(g);
    auto h = make_htc(g, initial_three_orientation(g), basis).first;
    auto c = color_edges(g, h);
    Angle a0 = pick_root(g, h, c);
    auto m = minimize(g, h, g.angle_face(a0.dart));
    return {m, a0, run_ps(g, m, a0)};
}

std::vector<TorusMap> sample_maps() {
    std::vector<TorusMap> maps{gen_one_vertex(), gen_k7()};
    for (uint64_t s = 1; s <= 30; ++s) maps.push_back(gen_random(2 + static_cast<int>(s * 5 % 45), s));
    return maps;
}

}  // namespace

TEST(PsTraversal, K7Shape) {
    auto g = gen_k7();
    auto p = pipeline(g);
    EXPECT_EQ(p.ps.u.n, 7);
    EXPECT_EQ(p.ps.u.edge_halves(), 16);
    EXPECT_EQ(p.ps.u.stems(), 13);
    EXPECT_EQ(p.ps.angle_cycle.size(), 42u);
    EXPECT_TRUE(p.ps.closed);
    EXPECT_TRUE(check_unicellular(g, p.ps).ok);
}

TEST(PsTraversal, OutputCoversEveryEdgeAndAngle) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        const int n = g.n();
        EXPECT_EQ(static_cast<int>(p.ps.p_edges.size()), n + 1);
        EXPECT_EQ(static_cast<int>(p.ps.q_edges.size()), 2 * n - 1);
        EXPECT_EQ(static_cast<int>(p.ps.angle_cycle.size()), 6 * n);
        std::set<int> angles(p.ps.angle_cycle.begin(), p.ps.angle_cycle.end());
        EXPECT_EQ(static_cast<int>(angles.size()), 6 * n);
        EXPECT_EQ(p.ps.u.face_count(), 1);
        auto ck = check_unicellular(g, p.ps);
        EXPECT_TRUE(ck.ok) << ck.reason;
        // every stem is the tail end of its edge in the minimal orientation
        for (int h = 0; h < p.ps.u.halves(); ++h)
            if (p.ps.u.is_stem(h)) EXPECT_TRUE(p.minimal.is_out(p.ps.u.orig[h]));
    }
}

TEST(PsTraversal, AngleCycleListing) {
    auto g = gen_one_vertex();
    auto p = pipeline(g);
    std::istringstream in(format_angle_cycle(g, p.ps));
    std::string line;
    int k = 0;
    while (std::getline(in, line)) {
        ++k;
        EXPECT_EQ(line.rfind(std::to_string(k) + " 0 ", 0), 0u);
    }
    EXPECT_EQ(k, 6);
}

TEST(PsTraversal, NegativeFixtures) {
    std::istringstream in(read_fixture("negative.txt"));
    std::string name, reason;
    int dart = 0, count = 0;
    while (in >> name >> dart >> reason) {
        auto g = load_map(name);
        auto d = parse_orientation(g, read_fixture(name + ".torient"));
        auto basis = homology_basis(g);
        ASSERT_TRUE(is_three_orientation(g, d));
        EXPECT_FALSE(is_htc(g, d, basis)) << name;
        EXPECT_TRUE(is_minimal(g, d, g.angle_face(dart))) << name;
        EXPECT_TRUE(d.is_out(dart)) << name;
        auto ps = run_ps(g, d, g.angle(dart));
        auto ck = check_unicellular(g, ps);
        EXPECT_FALSE(ck.ok);
        EXPECT_EQ(ck.reason, reason) << name;
        if (reason == "face_count") EXPECT_EQ(static_cast<int>(ps.angle_cycle.size()), g.darts()) << name;
        ++count;
    }
    EXPECT_EQ(count, 4);
}

TEST(PsTraversal, InjectiveOverRootAnglesAndInvertible) {
    for (const auto& name : {"one_vertex", "k7", "random_n4_s2", "random_n6_s1"}) {
        auto g = load_map(name);
        auto basis = homology_basis(g);
        auto h = make_htc(g, initial_three_orientation(g), basis).first;
        TriangleAnalysis tri(g);
        std::set<std::string> inputs, outputs;
        for (int d = 0; d < g.darts(); ++d) {
            if (tri.angle_in_strict_interior(g.angle(d))) continue;
            auto m = minimize(g, h, g.angle_face(d));
            auto ps = run_ps(g, m, g.angle(d));
            ASSERT_TRUE(check_unicellular(g, ps).ok) << name << " dart " << d;
            auto closed = recover_rooted(ps.u);
            EXPECT_TRUE(is_isomorphic_rooted(closed.map, closed.root_dart, g, d)) << name << " dart " << d;
            inputs.insert(canonical_code(g, d));
            outputs.insert(rooted_code(ps.u));
        }
        EXPECT_FALSE(inputs.empty());
        EXPECT_EQ(inputs.size(), outputs.size()) << name;
    }
}

TEST(Closure, OrientationFromRootMatchesMinimal) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        auto out = orient_from_root(p.ps.u);
        for (int h = 0; h < p.ps.u.halves(); ++h) {
            if (p.ps.u.is_stem(h)) {
                EXPECT_EQ(out[h], 1);
            } else {
                EXPECT_EQ(out[h] == 1, p.minimal.is_out(p.ps.u.orig[h]));
            }
        }
    }
}

TEST(Closure, ValidateClassOnPsOutputs) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        auto r = validate_class(p.ps.u);
        EXPECT_TRUE(r.in_u_r && r.balanced && r.gamma0) << r.detail;
        auto core = unicellular_core(p.ps.u);
        EXPECT_NE(core.hexagon, core.square);
    }
}

TEST(Closure, ValidateClassRejectsStrippedMap) {
    auto p = pipeline(gen_k7());
    auto r = validate_class(strip_root_stem(p.ps.u));
    EXPECT_FALSE(r.in_u_r);
}

TEST(Closure, BorderStartsWithBalanceThree) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        EXPECT_EQ(border_balance(p.ps.u, p.ps.u.root), 3);
    }
}

TEST(Closure, RecoveriesAgree) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        auto rooted = recover_rooted(p.ps.u);
        EXPECT_TRUE(is_isomorphic_rooted(rooted.map, rooted.root_dart, g, p.root.dart));
        const std::string code = canonical_code(rooted.map, rooted.root_dart);
        for (int start : {0, 3, p.ps.u.halves() - 1}) EXPECT_TRUE(is_isomorphic(recover_unrooted(p.ps.u, start).map, g));
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            auto r = recover_random_order(p.ps.u, seed);
            EXPECT_EQ(canonical_code(r.map, r.root_dart), code);
        }
    }
}

TEST(Closure, CloseOneRejectsNonAdmissibleTriple) {
    auto p = pipeline(gen_k7());
    auto st = start_closure(p.ps.u);
    auto ok = admissible_triples(st.map);
    ASSERT_FALSE(ok.empty());
    for (const auto& t : ok) EXPECT_TRUE(is_admissible(st.map, t));
    Triple bad = ok[0];
    std::swap(bad.e1, bad.e2);
    EXPECT_FALSE(is_admissible(st.map, bad));
    try {
        close_one(st, bad);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.stage(), "closure");
        EXPECT_STREQ(e.what(), "not admissible");
    }
    const int before = st.stems;
    close_one(st, ok[0]);
    EXPECT_EQ(st.stems, before - 1);
}

TEST(Closure, QuadrangleCompletionRecoversTheMap) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        auto stripped = strip_root_stem(p.ps.u);
        EXPECT_EQ(stripped.stems(), p.ps.u.stems() - 1);
        int match = 0;
        for (int c = 0; c < 4; ++c) match += is_isomorphic(complete_quadrangle(stripped, c).map, g);
        EXPECT_GE(match, 1);
    }
    auto u = pipeline(gen_k7()).ps.u;
    for (int h = 0; h < u.halves(); ++h)
        if (!u.is_stem(h)) u.root = h;
    EXPECT_THROW(strip_root_stem(u), Error);
}

TEST(Closure, TuniRoundTrip) {
    for (const auto& g : sample_maps()) {
        auto p = pipeline(g);
        auto text = format_tuni(p.ps.u);
        auto back = parse_tuni(text);
        EXPECT_TRUE(same_rooted(back, p.ps.u));
        EXPECT_EQ(format_tuni(back), text);
    }
    EXPECT_THROW(parse_tuni("tuni 1 1\nv 0 0 1\nstem 0 9\n"), Error);
}
