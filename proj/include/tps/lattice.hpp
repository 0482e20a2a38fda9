#pragma once

#include "tps/orientation.hpp"
#include "tps/torus_map.hpp"

namespace tps {

struct MinimizeStats {
    int cut_reversals = 0;
    int edges_reversed = 0;
};

// Minimal element of the homology class of d w.r.t. face f0: grows the set of
// faces with a directed dual path to f0 and reverses the whole directed cut
// each time the search stalls.
Orientation minimize(const TorusMap& g, const Orientation& d, int f0, MinimizeStats* stats = nullptr);

// Every face has a directed dual path to f0.
bool is_minimal(const TorusMap& g, const Orientation& d, int f0);

}  // namespace tps
