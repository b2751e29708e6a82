#pragma once

// Bigraded chain complexes of free modules.  Flattening a resolution cube
// applies the global shifts: a cube vertex at height |r| sits in homological
// degree |r| - n_minus, and a generator with label word L there has quantum
// degree (sum of label degrees) + |r| + n_plus - 2*n_minus.  All differentials
// preserve the quantum degree: a nonzero entry linking a column generator of
// degree q_c to a row generator of degree q_r is homogeneous of degree
// q_c - q_r.

#include <map>
#include <string>
#include <vector>

#include "frobkh/cube.hpp"
#include "frobkh/laurent.hpp"
#include "frobkh/matrix.hpp"
#include "frobkh/ring.hpp"

namespace frobkh {

struct Generator {
    int i = 0;        // homological degree
    int q = 0;        // quantum degree
    int vertex = -1;  // cube vertex of origin; -1 once synthetic
    int label = -1;   // basis index at that vertex; -1 once synthetic
};

struct ComplexReport {
    bool ok = true;
    std::string witness;  // first violation, empty when ok
};

class GradedComplex {
  public:
    RingSpecPtr ring;
    std::map<int, std::vector<Generator>> gens;   // by homological degree
    std::map<int, RingMatrix> diffs;              // d_i : degree i -> i+1
    int n_plus = 0;
    int n_minus = 0;
    bool graded = true;  // false after a degree-breaking base change
    std::string source;

    int dim(int i) const;
    const std::vector<Generator>& generators(int i) const;
    // The differential out of degree i, materialized with the right shape
    // even when no entry was stored.
    RingMatrix d(int i) const;
    int min_degree() const;
    int max_degree() const;
    int total_rank() const;

    // Stable text dump: generators per degree, then sparse entries.
    std::string to_text() const;
};

GradedComplex flatten(const ResolutionCube& cube);

// Checks d o d = 0, matrix shapes, and (when the complex is graded) entry
// homogeneity; reports the first violation found.
ComplexReport verify_complex(const GradedComplex& C);

// Gaussian elimination of unit differential entries; the result is chain
// homotopy equivalent with no unit entries left and all generators marked
// synthetic.  Pivots are chosen at the lowest homological degree, then the
// smallest column, then the smallest row.
GradedComplex simplify(GradedComplex C);

// Entry-wise application of psi.  When psi does not preserve degrees the
// result carries graded = false and skips homogeneity checking.
GradedComplex base_change_complex(const GradedComplex& C, const RingHom& psi);

// Transpose all differentials and negate both gradings.
GradedComplex dualize(const GradedComplex& C);

// Graded Euler characteristic: sum of (-1)^i q^(gen degree).
LaurentPoly euler_characteristic(const GradedComplex& C);

// Reinterprets the complex of a cube over K[t] (with h = 0, t the ring
// variable) as a complex of free K[X]-modules with X^2 = t: X acts by
// multiplication on the tensor factor of the circle through the marked edge,
// and the K[X]-basis keeps the labels whose marked factor is 1.
// marked_edge = 0 picks the smallest edge id (or the first crossing-free
// circle when the diagram has no crossings).
GradedComplex build_x_module_complex(const ResolutionCube& cube, int marked_edge = 0);

}  // namespace frobkh
