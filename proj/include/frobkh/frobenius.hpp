#pragma once

// Rank-two Frobenius systems: a commutative ground ring R, the free
// R-algebra A = R[X]/(X^2 - hX - t) with basis {1, X}, a counit
// eps: A -> R, and a comultiplication Delta: A -> A (x) A.  These four pieces
// of data drive every theory the engine computes; the operations here
// (base change, twisting, dualization, recognition against the universal
// parameter family) produce new systems from old.
//
// Ordered bases are part of the contract: A uses {1, X}, and A (x) A uses
// {1(x)1, 1(x)X, X(x)1, X(x)X} (index 2i+j).  The grading places the basis
// vector 1 in quantum degree +1 and X in degree -1; multiplication and
// comultiplication are homogeneous of degree -1, unit and counit of
// degree +1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "frobkh/matrix.hpp"
#include "frobkh/ring.hpp"

namespace frobkh {

// An element alpha + beta*X of A in the {1, X} basis.
struct AElem {
    RingElement c1, cX;
    std::string to_string() const;
};

struct FrobeniusSystem {
    RingSpecPtr ring;
    RingElement h, t;          // X^2 = h*X + t
    RingElement eps1, epsX;    // counit on the basis
    std::array<RingElement, 4> delta1, deltaX;  // comultiplication columns
    std::string name;

    // Structure maps as matrices in the fixed bases.
    RingMatrix mult_matrix() const;    // A(x)A -> A, 2x4
    RingMatrix comult_matrix() const;  // A -> A(x)A, 4x2
    RingMatrix counit_matrix() const;  // A -> R, 1x2
    RingMatrix unit_matrix() const;    // R -> A, 2x1

    AElem multiply(const AElem& a, const AElem& b) const;
    RingElement counit(const AElem& a) const;

    // Structure-constant equality (names are ignored).
    bool same_constants(const FrobeniusSystem& o) const;
    std::string describe() const;
};

struct AxiomReport {
    bool associative = false;
    bool commutative = false;
    bool unital = false;
    bool coassociative = false;
    bool cocommutative = false;
    bool counital = false;       // (eps (x) Id) Delta = Id
    bool bimodule = false;       // Delta(ab) = a Delta(b) = Delta(a) b
    bool graded = false;         // all four maps homogeneous (informational)
    std::vector<std::string> failures;  // witness basis vectors for failed axioms

    // Structural validity; gradedness is reported but not required.
    bool ok() const {
        return associative && commutative && unital && coassociative && cocommutative &&
               counital && bimodule;
    }
};

// Named systems "f1", "f2", "f3", "f5", "f6", "f7", or
// "custom:ring=<ringspec>,h=<poly>,t=<poly>" (key order free; commas inside
// brackets belong to the ring spec).
FrobeniusSystem make_system(const std::string& name);
FrobeniusSystem make_custom(const RingSpecPtr& ring, RingElement h, RingElement t);

AxiomReport check_axioms(const FrobeniusSystem& sys);

// Applies psi to every structure constant; UsageError if psi.source differs
// from sys.ring.
FrobeniusSystem base_change(const FrobeniusSystem& sys, const RingHom& psi);

// Inverse of y in A when the multiplication-by-y matrix has unit
// determinant alpha^2 + alpha*beta*h - beta^2*t; nullopt otherwise.
std::optional<AElem> invert_in_A(const FrobeniusSystem& sys, const AElem& y);

// eps'(x) = eps(y x), Delta'(x) = Delta(y^-1 x); multiplication and unit
// are untouched.  DomainError if y is not invertible.
FrobeniusSystem twist(const FrobeniusSystem& sys, const AElem& y);

// The dual system on A* = Hom_R(A, R): multiplication is the transpose of
// Delta, comultiplication the transpose of m, unit eps, counit evaluation
// at 1 -- re-expressed in a basis {unit, X'} with X' one of the dual basis
// vectors.  DomainError when no such basis exists over R.
FrobeniusSystem dual(const FrobeniusSystem& sys);

// Parameters locating a system in the six-parameter universal family.
struct F4Parameters {
    RingElement a, c, e, f, h, t;
};

// Reads off (a, c, e, f, h, t) for the basis {1, X'} where X' = c1 + cX*X
// (cX must be a unit for {1, X'} to be a basis).  Verifies the defining
// relations a*e - c*f = 0, a*f + c*h*f - c*e*t - 1 = 0 and that the
// parameters reproduce Delta(X') exactly; DomainError on any mismatch.
F4Parameters recognize(const FrobeniusSystem& sys, const AElem& basis_witness);

}  // namespace frobkh
