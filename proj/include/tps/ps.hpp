#pragma once

#include <string>
#include <vector>

#include "tps/orientation.hpp"
#include "tps/stem_map.hpp"
#include "tps/torus_map.hpp"

namespace tps {

struct PsOutput {
    // Kept edges (P) with their halves at both ends, every edge that was met
    // first as an outgoing edge as a stem at its tail. orig holds G's dart.
    StemMap u;
    std::vector<int> angle_cycle;  // darts naming the visited angles, in order
    std::vector<int> p_edges;
    std::vector<int> q_edges;      // edges whose dual is kept (the stems)
    bool closed = true;            // returned to the start state
};

// Walks the angle graph from a0 with the four mark/enter cases. The state is
// a dart; an edge enters the current vertex when the dart is not its tail.
PsOutput run_ps(const TorusMap& g, const Orientation& d, Angle a0);

struct UnicellularCheck {
    bool ok = false;
    std::string reason;  // unreached_vertex, not_partition, face_count, dual_cycle
};

// P spans the vertices, P and the duals of Q partition the edges, P has one
// face which is a disk (n + 1 edges), and Q is a spanning tree of the dual.
UnicellularCheck check_unicellular(const TorusMap& g, const PsOutput& out);

// Numbered list of the visited angles, one "i vertex dart" per line.
std::string format_angle_cycle(const TorusMap& g, const PsOutput& out);

}  // namespace tps
