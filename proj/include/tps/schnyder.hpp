#pragma once

#include <array>

#include "tps/orientation.hpp"
#include "tps/torus_map.hpp"

namespace tps {

// Outdegree-3 orientation: vertices are peeled by least slack, then the
// remaining excess is moved by push-relabel.
Orientation initial_three_orientation(const TorusMap& g);

struct BuildReport {
    int iterations = 0;                 // 1 when a reversal was needed
    std::array<int, 2> initial_gamma{};  // gamma on (b1, b2) before the fix
    int flipped_edges = 0;
    int relaxation_rounds = 0;
};

// First cycle closed by a walk that always leaves through the middle of the
// three outgoing edges.
Walk middle_cycle(const TorusMap& g, const Orientation& d, int start_dart);

// Reverses an Eulerian subgraph of d so that gamma vanishes on both basis
// cycles. The subgraph is the 0/1 circulation rho + (face potential
// coboundary) where rho is an integral combination of the basis cycles in
// the required homology class; the potential solves a difference-constraint
// system on the dual.
std::pair<Orientation, BuildReport> make_htc(const TorusMap& g, const Orientation& d, const HomologyBasis& basis);

// Follows color-0 edges from vertex 0 until a vertex repeats; the root angle
// is the one just before the color-0 outgoing dart of that vertex.
Angle pick_root(const TorusMap& g, const Orientation& d, const SchnyderColoring& c);

}  // namespace tps
