#pragma once

#include <cstdint>

#include "tps/torus_map.hpp"

namespace tps {

// K7 on the torus: faces (i, i+1, i+3) and (i, i+3, i+2) mod 7.
TorusMap gen_k7();

// One vertex, three loops, two triangular faces.
TorusMap gen_one_vertex();

// Random toroidal triangulation on n vertices grown from the one-vertex map
// by vertex splits. Deterministic per seed.
TorusMap gen_random(int n, uint64_t seed);

// Adds a degree-3 vertex inside face f. The new vertex gets id g.n().
TorusMap insert_vertex_in_face(const TorusMap& g, int f);

}  // namespace tps
