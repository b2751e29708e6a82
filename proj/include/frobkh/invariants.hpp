#pragma once

#include <optional>
#include <vector>

#include "frobkh/diagram.hpp"
#include "frobkh/homology.hpp"
#include "frobkh/laurent.hpp"

namespace frobkh {

// Unnormalized Jones polynomial (unknot -> q + 1/q) by the Kauffman state
// sum over all 2^n resolutions.  Deliberately shares nothing with the cube
// construction beyond the parsed diagram: circles are counted here by
// walking the degree-two arc graph of each state, so this serves as an
// independent oracle for the graded Euler characteristic.
LaurentPoly kauffman_bracket_jones(const PlanarDiagram& d);

// Free rank of the deformed homology over Q[t] (h = 0).  Always a power of
// two: 2^(number of link components).
int lee_rank(const PlanarDiagram& d);

// Rasmussen-style concordance invariant of a knot: the quantum degree of
// the rank-one free part of the X-module homology, shifted so the unknot
// gets 0.  UsageError on multi-component input.
int s_invariant(const PlanarDiagram& d);

// Dimension of the reduced homology predicted by a module decomposition:
// rational_dim - 1 - 2 * #{pieces with m > 1}.
int reduced_dim_prediction(const PidSummary& pieces, int rational_dim);

struct InvariantReport {
    LaurentPoly jones;
    int components = 1;
    int lee_rank = 0;
    std::optional<int> s;                     // knots only
    std::vector<ModulePiece> pieces;          // knots only
    std::optional<int> predicted_reduced_dim;  // knots only
};

InvariantReport compute_invariants(const PlanarDiagram& d);

}  // namespace frobkh
