#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frobkh/complex.hpp"
#include "frobkh/matrix.hpp"
#include "frobkh/ring.hpp"

namespace frobkh {

// Smith normal form over a Euclidean ring, with invertible transforms:
//
//     U * M * V = S,   S diagonal, S[j][j] = factors[j] for j < rank,
//
// and each factor dividing the next.  Pivots are normalized: positive over
// the integers, monic over polynomial scalars, 1 over a field.
//
// The caller may label rows and columns with quantum degrees (entry (r,c)
// homogeneous of degree col - row).  Degree labels follow the basis through
// the reduction, so row_degrees/col_degrees describe the transformed bases:
// column j of V is homogeneous of degree col_degrees[j], column j of Uinv of
// degree row_degrees[j].  Empty vectors mean "all zero".
struct SNFResult {
    RingMatrix S;
    std::vector<RingElement> factors;
    RingMatrix U, Uinv;  // row transform and its inverse
    RingMatrix V, Vinv;  // column transform and its inverse
    std::vector<int> row_degrees, col_degrees;
};

SNFResult smith_normal_form(const RingMatrix& M, std::vector<int> row_degrees = {},
                            std::vector<int> col_degrees = {});

// One cyclic summand R/(base^power) whose generator sits in quantum degree
// gen_q.  base is irreducible: a prime over Z, the ring variable over K[v].
struct TorsionPart {
    RingElement base;
    int power = 1;
    int gen_q = 0;
};

struct HomologyGroup {
    int free_rank = 0;
    std::vector<TorsionPart> torsion;
};

// Homology table keyed by (homological degree, quantum degree of the
// generator).  Free summands R{q} count into free_rank at (i, q); a cyclic
// torsion summand is listed at the degree of its generator.
class BigradedHomology {
  public:
    RingSpecPtr ring;
    std::map<std::pair<int, int>, HomologyGroup> table;

    int free_rank(int i, int q) const;
    int total_free_rank() const;
    int torsion_count() const;
    std::string to_text() const;
};

// Computes homology degree by degree.  Requires a graded complex over a
// Euclidean coefficient ring: Z, a field, or a one-variable polynomial ring
// over a field (where homogeneous entries are monomials).  Throws
// DomainError otherwise.
BigradedHomology bigraded_homology(const GradedComplex& C);

// Caps the number of worker threads bigraded_homology may use to reduce
// independent degree blocks.  1 (the default) is fully sequential; 0 means
// one thread per hardware core.  Results are identical either way.
void set_thread_cap(int n);
int thread_cap();

// Structure of a module over K[v]: the free summands and, for each cyclic
// torsion summand K[v]/(v^m) with generator at (i, q_top), one piece record.
struct ModulePiece {
    int m = 1;
    int i = 0;
    int q_top = 0;
};

struct PidSummary {
    std::vector<ModulePiece> pieces;
    std::vector<std::pair<int, int>> free_summands;  // (i, q), one per summand
};

// Reads the summands off a homology table over a one-variable polynomial
// ring with field scalars; DomainError for any other ring.
PidSummary pid_decompose(const BigradedHomology& H);

}  // namespace frobkh
