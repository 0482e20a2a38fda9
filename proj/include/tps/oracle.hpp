#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tps/generators.hpp"
#include "tps/orientation.hpp"
#include "tps/torus_map.hpp"

namespace tps {

constexpr int kOracleMaxEdges = 24;

// All 3-orientations by exhaustive assignment with outdegree pruning.
// Throws when m exceeds kOracleMaxEdges.
std::vector<Orientation> enumerate_three_orientations(const TorusMap& g);

// Classes of mutually 0-homologous orientations (indices into orients).
std::vector<std::vector<int>> homology_classes(const TorusMap& g, const std::vector<Orientation>& orients);

// Faces (bit f) for which d is not minimal, by brute force over face subsets
// X that no dual arc leaves: such an X avoiding f0 is a clockwise
// 0-homologous subgraph w.r.t. f0. Needs f <= 30.
uint32_t non_minimal_faces_bruteforce(const TorusMap& g, const Orientation& d);

// True when delta(a, b) = sum of lambda_f times the ccw walk of f with
// lambda >= 0 and lambda[f0] = 0, i.e. a <= b in the order w.r.t. f0.
bool precedes(const TorusMap& g, const Orientation& a, const Orientation& b, int f0);

std::vector<int> rigid_edges(const TorusMap& g, const std::vector<Orientation>& orients, const std::vector<int>& cls);

// Edges inside a separating triangle and incident to one of its vertices.
std::vector<int> rigid_edges_from_triangles(const TorusMap& g);

struct LatticeReport {
    int class_size = 0;
    int minimum = -1;  // index into orients
    bool minimize_agrees = true;      // minimize() lands on the minimum from every member
    bool is_minimal_unique = true;    // is_minimal holds exactly at the minimum
    bool minimum_below_all = true;    // minimum precedes every member
    bool bruteforce_agrees = true;    // exhaustive subgraph check agrees with is_minimal
    bool flips_connect_class = true;  // region flips from the minimum reach every member
    bool hasse_degrees_ok = true;     // non-extremal members can move both up and down
    bool ok() const {
        return minimize_agrees && is_minimal_unique && minimum_below_all && bruteforce_agrees && flips_connect_class &&
               hasse_degrees_ok;
    }
};

LatticeReport lattice_check(const TorusMap& g, const std::vector<Orientation>& orients, const std::vector<int>& cls,
                            int f0);

std::string format_lattice_report(const LatticeReport& r);

}  // namespace tps
