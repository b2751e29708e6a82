#pragma once

// Cube of resolutions.  Vertex v of the n-cube (0 <= v < 2^n) stands for the
// resolution vector r with r[c] = bit (n-1-c) of v, so increasing v walks the
// resolution vectors in lexicographic order.  The module at a vertex is
// A^{tensor k}, one factor per circle in the vertex's ordered circle list;
// basis vectors are indexed by label words over {1, X} with circle 0 the most
// significant position (label of circle c = bit (k-1-c) of the basis index).
//
// Each cube edge flips one crossing from the 0- to the 1-smoothing and is
// either a merge (two circles fuse, the map is multiplication on those
// factors) or a split (one circle divides, comultiplication).  Edge signs
// follow (-1)^(number of 1-bits before the flipped coordinate), which makes
// every square face anticommute.

#include <optional>
#include <string>
#include <vector>

#include "frobkh/diagram.hpp"
#include "frobkh/frobenius.hpp"
#include "frobkh/matrix.hpp"

namespace frobkh {

struct CubeEdge {
    int from = 0;      // source vertex index (flipped bit = 0)
    int to = 0;        // target vertex index (flipped bit = 1)
    int crossing = 0;  // coordinate being flipped
    bool is_merge = true;
    // Circle positions involved at the flipped crossing: for a merge, source
    // positions pos_a < pos_b fuse into target position pos_c; for a split,
    // source position pos_c divides into target positions pos_a < pos_b.
    int pos_a = 0;
    int pos_b = 0;
    int pos_c = 0;
    // Full circle correspondence: merge -> target position of each source
    // circle (pos_a and pos_b both map to pos_c); split -> source position of
    // each target circle (pos_a and pos_b both map to pos_c).
    std::vector<int> matching;
    int sign = 1;
};

class ResolutionCube {
  public:
    ResolutionCube(PlanarDiagram d, FrobeniusSystem sys);

    int n() const { return diagram_.n(); }
    int vertex_count() const { return 1 << n(); }
    const PlanarDiagram& diagram() const { return diagram_; }
    const FrobeniusSystem& system() const { return system_; }

    int vertex_index(const std::vector<int>& r) const;
    std::vector<int> resolution_of(int v) const;
    const ResolvedState& vertex(int v) const;
    // Tensor rank 2^(circle count) of the module at vertex v.
    int rank_at(int v) const;
    // Quantum degree of a basis vector before any global shift: +1 per
    // 1-label, -1 per X-label.
    int label_qdeg(int v, int basis_index) const;

    const std::vector<CubeEdge>& edges() const { return edges_; }
    // Edges grouped by the height (popcount) of their source vertex.
    std::vector<const CubeEdge*> edges_from_height(int h) const;

  private:
    PlanarDiagram diagram_;
    FrobeniusSystem system_;
    std::vector<ResolvedState> vertices_;
    std::vector<CubeEdge> edges_;
};

ResolutionCube build_cube(const PlanarDiagram& d, const FrobeniusSystem& sys);

// The matrix of one structure map: multiplication (merge) or comultiplication
// (split) on the matched factors, identity on the rest, times the edge sign.
RingMatrix edge_matrix(const ResolutionCube& cube, const CubeEdge& e);

// Isomorphism between the cube of twist(sys, y) and the cube of sys.  At each
// vertex it multiplies tensor factor c by y^exponents[v][c]; conjugating every
// edge map of the twisted cube by these diagonal maps reproduces the untwisted
// cube's edge maps exactly (verified during construction).
struct CubeIsomorphism {
    AElem y;
    AElem y_inverse;
    std::vector<std::vector<int>> exponents;  // [vertex][circle position]

    // Matrix of multiplication by the product of y^exponents over the tensor
    // factors at vertex v, in the cube's basis conventions.
    RingMatrix vertex_matrix(const ResolutionCube& base, int v) const;
};

CubeIsomorphism twist_cube_isomorphism(const PlanarDiagram& d, const FrobeniusSystem& sys,
                                       const AElem& y);

}  // namespace frobkh
