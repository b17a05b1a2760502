#pragma once

#include "ising/coeff_table.hpp"
#include "ising/laws.hpp"
#include "ising/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ising {

// Face colors.  External is the outer face; Hole is the uncolored face of an
// explored map; Unexplored marks swallowed-but-unfilled regions.
enum class FaceKind : uint8_t { plus, minus, external, hole, unexplored };

// Rooted colored planar map in half-edge form.  nxt walks each face contour
// with the face on the left; vertex rotations are nxt(twin(h)).
class ColoredPlanarMap {
public:
    struct HalfEdge {
        int twin = -1;
        int nxt = -1;
        int face = -1;
        int orig = -1;   // origin vertex id
        bool alive = true;
    };

    std::vector<HalfEdge> he;
    std::vector<FaceKind> faces;
    // outside spin of original boundary edges, keyed by the external-side half-edge
    std::vector<int8_t> boundary_spin;  // -1 none, 0 plus, 1 minus (indexed like he)
    int root_he = -1;                   // external half-edge whose origin is the root vertex
    int external_face = -1;
    int n_vertices = 0;

    int new_face(FaceKind k) {
        faces.push_back(k);
        return static_cast<int>(faces.size()) - 1;
    }
    int new_half_edge() {
        he.emplace_back();
        boundary_spin.push_back(-1);
        return static_cast<int>(he.size()) - 1;
    }
    int new_vertex() { return n_vertices++; }

    int endpoint(int h) const { return he[he[h].twin].orig; }

    // spin seen from face-side `h` across the edge (the color of the opposite side);
    // -2 when the opposite side is a hole/unexplored face
    int opposite_spin(int h) const;

    long count_alive_halfedges() const;
    std::vector<int> vertex_of_orbit() const;

    // plain BFS vertex distances from `src` over alive edges
    std::vector<int> vertex_distances(int src) const;
};

struct MapValidation {
    bool ok = true;
    std::string detail;
    long vertices = 0, edges = 0, face_count = 0;
    long mono_edges = 0;
    long internal_faces = 0;
    int boundary_p = 0, boundary_q = 0;
};

// Structural checks: twin/next axioms, triangle internal faces, simple Dobrushin
// boundary, Euler formula; counts monochromatic edges (full maps only).
MapValidation validate_map(const ColoredPlanarMap& m);

// ---------------------------------------------------------------------------
// explored maps and peeling surgery
// ---------------------------------------------------------------------------

struct HoleState {
    int face = -1;
    int peel_he = -1;  // hole-side half-edge of the edge to peel (ends at rho_n)
    long P = 0, Q = 0;
    bool flipped = false;  // virtual spin flip in effect (monochromatic-plus holes)
};

class ExploredMap {
public:
    ColoredPlanarMap map;
    HoleState hole;

    // fresh (p,q)-gon with the whole interior as the hole
    static ExploredMap fresh(int p, int q);

    // reveal one triangle at the hole's peel edge; returns the swallowed hole
    // (to be filled or marked) when the outcome splits the region
    std::optional<HoleState> reveal(const FiniteOutcome& outcome, RngStream* rng = nullptr);

    // close a 2-gon hole with the edge map (identifies its two edges)
    void close_edge_map(const HoleState& h);

    // mark a swallowed hole as a permanently unexplored face
    void mark_unexplored(const HoleState& h);

    // recompute (P, Q, peel_he, flipped) of a hole after surgery; the peel
    // vertex for monochromatic holes is chosen by `prefer_vertex` when >= 0
    // (algorithm-A callers), else deterministically
    HoleState rescan_hole(int hole_face, int prefer_vertex = -1) const;

    bool terminated() const { return hole.face < 0; }
};

// remove boundary edges adjacent to the hole (the truncated map e-circle)
ColoredPlanarMap truncate_map(const ExploredMap& emap);

// ---------------------------------------------------------------------------
// exact n-conditioned sampling
// ---------------------------------------------------------------------------

// Exact sample of the Boltzmann law conditioned on n internal faces, weights
// proportional to nu^{#monochromatic}; V is Rational (exact) or double.
template <class V>
ColoredPlanarMap sample_finite_map(int p, int q, int n, const CoeffTable<V>& table, RngStream& rng);

// enumerate the exact law over canonical forms by walking the full decision
// tree (test oracle for small n)
template <class V>
std::vector<std::pair<std::string, V>> enumerate_finite_maps(int p, int q, int n, const CoeffTable<V>& table);

// ---------------------------------------------------------------------------
// balls, local distance, canonical form
// ---------------------------------------------------------------------------

struct Ball {
    int radius = 0;
    std::string code;  // canonical encoding; equal codes = equal balls
};

// ball of radius r: internal faces adjacent to a vertex within distance r-1
// of the root vertex (radius 0 = root vertex only)
Ball ball(const ColoredPlanarMap& m, int r);

// 2^{-R} with R the largest radius of ball agreement (0 if equal as maps)
double local_distance(const ColoredPlanarMap& a, const ColoredPlanarMap& b, int r_cap = 64);

// materialized ball as a standalone map (for nesting tests)
ColoredPlanarMap ball_submap(const ColoredPlanarMap& m, int r);

std::string canonical_code(const ColoredPlanarMap& m);

// ---------------------------------------------------------------------------
// interface tracing
// ---------------------------------------------------------------------------

struct InterfaceTrace {
    std::vector<int> edges;  // half-edge ids along the path, oriented with the walk
    int rho = -1, rho_dagger = -1;
    long length() const { return static_cast<long>(edges.size()); }
};

// leftmost interface from rho to rho-dagger (boundary must be non-monochromatic)
InterfaceTrace trace_leftmost_interface(const ColoredPlanarMap& m);

// ---------------------------------------------------------------------------
// half-plane ball sampler (law of the local limit, approximate filler)
// ---------------------------------------------------------------------------

struct BallSample {
    Ball ball;
    long theta_r = 0;  // covering time
    long steps = 0;
};

// Runs half-plane peeling with algorithm A and full filling until the ball of
// radius r around the root is covered.  Swallowed regions are filled by the
// critical-Boltzmann approximate filler (face budget from the truncated
// coefficient law), so the sampled law is exact up to the filler truncation.
BallSample ball_sampler_halfplane(int p, int r, const HalfplaneSampler& half, const CoeffTable<double>& crit_table,
                                  RngStream& rng, long step_guard = 2000000);

// ---------------------------------------------------------------------------
// serialization (versioned line format)
// ---------------------------------------------------------------------------

void write_map(std::ostream& os, const ColoredPlanarMap& m);
ColoredPlanarMap read_map(std::istream& is);

}  // namespace ising
