#pragma once

#include <string>
#include <vector>

#include "tps/torus_map.hpp"

namespace tps {

// Embedded graph whose vertices also carry stems (dangling outgoing
// half-edges). Halves around a vertex form a ccw cycle through next/prev;
// mate is the other half of an edge, or -1 for a stem. The root angle is the
// corner just before the half root in ccw order.
//
// Face walk: phi(x) = prev[mate(x)] for an edge half and prev[x] for a stem.
// The corner just before step x is the one between x and next[x].
struct StemMap {
    int n = 0;
    std::vector<int> vert, next, prev, mate, orig;
    int root = -1;

    int halves() const { return static_cast<int>(vert.size()); }
    bool is_stem(int h) const { return mate[h] < 0; }
    int phi(int h) const { return prev[mate[h] < 0 ? h : mate[h]]; }
    int phi_inv(int h) const {
        const int y = next[h];
        return mate[y] < 0 ? y : mate[y];
    }

    int add_half(int v, int orig_id = -1);
    // Places h ccw right after a (h must be detached).
    void insert_after(int a, int h);
    void insert_before(int a, int h);
    void detach(int h);

    int edge_halves() const;
    int stems() const;
    // One half per vertex, -1 for a vertex without halves.
    std::vector<int> vertex_halves() const;
    std::vector<int> stem_count() const;
    // First step of the face walk that starts at the root corner.
    int walk_start() const { return prev[root]; }
    std::vector<int> face_walk() const;
    int face_count() const;

    // Keeps only the live halves, renumbering them densely; root follows.
    StemMap compacted(const std::vector<char>& live) const;
};

// Two stem maps are equal as embedded rooted objects.
bool same_rooted(const StemMap& a, const StemMap& b);
std::string rooted_code(const StemMap& u);

// TUNI text format. The skeleton uses TMAP dart numbering (edge e has darts
// 2e and 2e+1, listed ccw per vertex). Stem k (0-based, in file order) is
// named sk and is inserted ccw right after the named element; "-" is used for
// a vertex that has no other half yet. The root line names the element that
// follows the root corner.
//   tuni 1 <n>
//   v <vertex> <dart> ...
//   stem <vertex> <after>
//   root <vertex> <before>
std::string format_tuni(const StemMap& u);
StemMap parse_tuni(const std::string& text);

}  // namespace tps
