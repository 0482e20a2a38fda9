#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tps/stem_map.hpp"
#include "tps/torus_map.hpp"

namespace tps {

// Per half: 1 when the half is the tail of its edge or a stem. Walking the
// face clockwise from the root (the traversal order), an edge is oriented
// toward the vertex where it is met first.
std::vector<int8_t> orient_from_root(const StemMap& u);

// The face of a partially closed map that still carries stems. Closing only
// edits the map; the border is the face walk through the remaining stems.
struct SpecialFaceState {
    StemMap map;
    int stems = 0;
};

SpecialFaceState start_closure(const StemMap& u);

// Consecutive edge, edge, stem in face-walk order; h is set by close_one to
// the new half at the tail of e1.
struct Triple {
    int e1 = -1, e2 = -1, s = -1;
};

bool is_admissible(const StemMap& m, const Triple& t);
// Attaches s to the tail of e1, creating a triangle on its left. Throws
// Error("closure", "not admissible") otherwise. Returns the new half.
int close_one(SpecialFaceState& state, const Triple& t);
std::vector<Triple> admissible_triples(const StemMap& m);
// (#edge halves) - (#stems) on the face through half h.
int border_balance(const StemMap& m, int h);

struct ClosedMap {
    TorusMap map;
    int root_dart = -1;  // dart of the root half, -1 when unrooted
};

// Builds the map of a fully closed stem map (no stems left).
ClosedMap to_torus_map(const StemMap& m);

// Closes every stem met while walking the face from the root corner.
ClosedMap recover_rooted(const StemMap& u);
// Closes admissible triples while walking twice around the face from an
// arbitrary half.
ClosedMap recover_unrooted(const StemMap& u, int start = 0);
// Complete closure in the order given by rng picks among admissible triples.
ClosedMap recover_random_order(const StemMap& u, uint64_t seed);

struct ClassReport {
    bool in_u_r = false;
    bool balanced = false;
    bool gamma0 = false;
    std::string detail;
};

ClassReport validate_class(const StemMap& u);

// Core of a unicellular skeleton after trimming tree-like parts: two
// cycles, each given by its departing halves.
struct Core {
    std::vector<int> degree;  // per vertex, in the core
    std::array<std::vector<int>, 2> cycles;
    bool hexagon = false;
    bool square = false;
};
Core unicellular_core(const StemMap& u);

// gamma (right minus left) of a cycle of u, with out[h] marking outgoing
// halves; halves of the cycle are not counted.
int stem_gamma(const StemMap& u, const std::vector<int8_t>& out, const std::vector<int>& cycle);

// Removes the root stem; the root moves to the merged corner.
StemMap strip_root_stem(const StemMap& u);
// Closes every stem of a map without root stem, which leaves a quadrangle,
// then adds a root stem at corner choice (0..3) and closes it.
ClosedMap complete_quadrangle(const StemMap& stripped, int choice);

}  // namespace tps
