#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tps/torus_map.hpp"

namespace tps {

// tail[e] is the dart of edge e that leaves its vertex.
struct Orientation {
    std::vector<int> tail;
    bool operator==(const Orientation&) const = default;

    bool is_out(int d) const { return tail[d >> 1] == d; }
    void reverse(int e) { tail[e] ^= 1; }
};

// Per-edge coordinates relative to the reference dart 2e.
using FlowVector = std::vector<int>;

// Orientation with every edge leaving along dart 2e.
Orientation reference_orientation(const TorusMap& g);

std::vector<int> outdegrees(const TorusMap& g, const Orientation& d);
bool is_three_orientation(const TorusMap& g, const Orientation& d);

// Characteristic flow of the edges of a that are not oriented as in b,
// taken with their orientation in a.
FlowVector delta(const TorusMap& g, const Orientation& a, const Orientation& b);

// Face coefficients lambda with lambda[f0] = 0 such that t is the sum of
// lambda[f] times the counterclockwise walk of f; nullopt when t is not
// 0-homologous.
std::optional<std::vector<long>> face_potential(const TorusMap& g, const FlowVector& t, int f0 = 0);
bool is_zero_homologous(const TorusMap& g, const FlowVector& t);

// Edges of D leaving vertices of c on its right minus those leaving on its
// left; edges of c itself are not counted.
int gamma(const TorusMap& g, const Orientation& d, const Walk& c);
bool is_htc(const TorusMap& g, const Orientation& d, const HomologyBasis& basis);

struct SchnyderColoring {
    std::vector<int> color;  // per edge, 0..2
};

// Greedy Z3 propagation; throws Error("orientation_kernel", "not a Schnyder
// wood ...") on failure. The coloring is normalized so that the first
// outgoing dart of vertex 0 has color 0.
SchnyderColoring color_edges(const TorusMap& g, const Orientation& d);
bool is_schnyder_coloring(const TorusMap& g, const Orientation& d, const SchnyderColoring& c);

// The outgoing dart of color i at every vertex.
std::vector<int> color_out_darts(const TorusMap& g, const Orientation& d, const SchnyderColoring& c, int i);

// Orientation of the dual map: e* goes from the left face of the tail dart to
// its right face, so the dual tails carry the same dart ids.
struct DualOrientation {
    DualResult dual;
    Orientation orientation;
};
DualOrientation dual_orientation(const TorusMap& g, const Orientation& d);

// True when the dual of d contains a directed non-contractible cycle.
bool has_noncontractible_directed_cycle(const TorusMap& g, const Orientation& d, const HomologyBasis& basis);

std::vector<Walk> monochromatic_cycles(const TorusMap& g, const Orientation& d, const SchnyderColoring& c, int i);
bool is_crossing(const TorusMap& g, const Orientation& d, const SchnyderColoring& c);

std::string format_orientation(const Orientation& d);
Orientation parse_orientation(const TorusMap& g, const std::string& text);
std::string format_coloring(const SchnyderColoring& c);
SchnyderColoring parse_coloring(const TorusMap& g, const std::string& text);

}  // namespace tps
