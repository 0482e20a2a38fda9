#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tps {

// Darts 2e and 2e+1 are the two sides of edge e.
inline int twin(int d) { return d ^ 1; }
inline int edge_of(int d) { return d >> 1; }

// An angle is named by a dart d at vertex v: it is the corner between
// prev_ccw(d) and d, i.e. the angle met just before d when turning
// counterclockwise around v.
struct Angle {
    int vertex = -1;
    int dart = -1;
    bool operator==(const Angle&) const = default;
};

enum class AngleStep { next_vertex, prev_vertex, next_face, prev_face };

struct Walk {
    std::vector<int> darts;
    bool closed = true;
};

// Rotation system of a map on the torus. Faces are traversed with the face
// on the left of every dart: face_next(d) = prev_ccw(twin(d)). Immutable
// once built.
class TorusMap {
public:
    TorusMap() = default;

    // rot[v] lists the darts around v in counterclockwise order. Throws
    // tps::Error("surface_map", ...) when the data is not a genus-1 map, or
    // when triangulation is set and the map is not a simple-enough
    // triangulation.
    static TorusMap from_rotations(const std::vector<std::vector<int>>& rot,
                                   bool triangulation = false);

    // Same map with vertices numbered in BFS order from vertex 0 and edges
    // in order of first appearance, for memory locality.
    TorusMap bfs_relabeled() const;

    int n() const { return n_; }
    int m() const { return m_; }
    int f() const { return static_cast<int>(face_start_.size()); }
    int darts() const { return 2 * m_; }
    bool triangulation() const { return triangulation_; }

    int vert(int d) const { return vert_[d]; }
    int head(int d) const { return vert_[d ^ 1]; }
    int next_ccw(int d) const { return next_[d]; }
    int prev_ccw(int d) const { return prev_[d]; }
    int face_next(int d) const { return prev_[d ^ 1]; }
    int face_prev(int d) const { return next_[d] ^ 1; }
    int face_of(int d) const { return face_[d]; }
    int face_dart(int f) const { return face_start_[f]; }
    int face_size(int f) const { return face_len_[f]; }
    int vertex_dart(int v) const { return first_[v]; }
    int degree(int v) const { return deg_[v]; }

    std::vector<int> rotation(int v) const;
    std::vector<int> face_darts(int f) const;
    std::vector<std::vector<int>> rotations() const;

    Angle angle(int d) const { return {vert_[d], d}; }
    // Face containing the angle named by d.
    int angle_face(int d) const { return face_[prev_[d]]; }

private:
    int n_ = 0;
    int m_ = 0;
    bool triangulation_ = false;
    std::vector<int> vert_, next_, prev_, face_, first_, deg_;
    std::vector<int> face_start_, face_len_;
};

Angle angle_step(const TorusMap& g, Angle a, AngleStep kind);

// TMAP text format.
TorusMap parse_map(const std::string& text);
std::string format_map(const TorusMap& g);

// Dual map: dual vertex i is face i of g, and dual dart d crosses primal dart
// d from its left face to its right face (so edge ids coincide).
struct DualResult {
    TorusMap map;
    std::vector<int> edge_to_dual;  // identity, kept explicit for callers
};
DualResult dual(const TorusMap& g);

// Side of each dart relative to a simple closed walk b: +1 on the left, -1
// on the right, 0 for darts of b or darts away from b.
std::vector<int8_t> side_table(const TorusMap& g, const Walk& b);

struct HomologyBasis {
    Walk b1, b2;
    std::vector<int8_t> side1, side2;

    // Twice the crossing contribution of traversing dart d against b1/b2.
    int cross2_b1(int d) const { return side1[d ^ 1] - side1[d]; }
    int cross2_b2(int d) const { return side2[d ^ 1] - side2[d]; }
};

HomologyBasis homology_basis(const TorusMap& g);

// (#left-to-right) - (#right-to-left) crossings of w against b. b must be a
// simple closed walk (no repeated vertex).
int crossing_signature(const TorusMap& g, const Walk& w, const Walk& b);
int crossing_signature(const std::vector<int8_t>& side, const Walk& w);

bool is_contractible(const TorusMap& g, const HomologyBasis& basis, const Walk& w);

// Throws when a contractible loop or contractible 2-cycle exists.
void check_no_contractible_short_cycles(const TorusMap& g, const HomologyBasis& basis);

struct SeparatingTriangle {
    std::vector<int> darts;           // 3 darts, counterclockwise around the disk
    std::vector<int> interior_faces;  // faces inside the disk
    std::vector<int> interior_vertices;
};

class TriangleAnalysis {
public:
    explicit TriangleAnalysis(const TorusMap& g);
    const std::vector<SeparatingTriangle>& triangles() const { return tris_; }
    // Inside some contractible disk and not at one of its boundary vertices.
    bool angle_in_strict_interior(Angle a) const;
    // Inside some disk, except the angles at a boundary vertex that sit just
    // before a triangle edge in counterclockwise order.
    bool angle_in_cw_interior(Angle a) const;

private:
    const TorusMap* g_;
    std::vector<SeparatingTriangle> tris_;
};

std::vector<SeparatingTriangle> separating_triangles(const TorusMap& g);

// Canonical byte string of the map rooted at dart root (rooted isomorphism
// invariant and complete for connected maps).
std::string canonical_code(const TorusMap& g, int root);
std::string unrooted_canonical_code(const TorusMap& g);
bool is_isomorphic(const TorusMap& a, const TorusMap& b);
bool is_isomorphic_rooted(const TorusMap& a, int ra, const TorusMap& b, int rb);

Walk reverse_walk(const Walk& w);
// Vertex sequence check: consecutive darts chain head-to-tail.
bool is_closed_walk(const TorusMap& g, const Walk& w);

}  // namespace tps
