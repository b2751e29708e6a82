#pragma once

// Exact coefficient arithmetic for the homology engine.
//
// Every ring we compute in is described by a RingSpec: a scalar domain
// (Z, Q, or F_p) optionally extended by polynomial variables carrying
// quantum degrees, and optionally passed to a field of fractions
// (univariate over a prime field only, e.g. F2(u)).  Elements are kept
// in canonical sparse form so that operator== is semantic equality.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobkh {

// Raised for malformed input: bad spec strings, mixed-ring arithmetic,
// out-of-contract arguments.  The CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation is mathematically unavailable in the requested
// ring (non-Euclidean homology, non-invertible twist, division by zero).
// The CLI maps this to exit code 1.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScalarKind { integers, rationals, prime_field };

struct VarInfo {
    std::string name;
    int qdeg = -2;
    bool operator==(const VarInfo& o) const { return name == o.name && qdeg == o.qdeg; }
};

class RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

class RingSpec {
  public:
    static RingSpecPtr integers();
    static RingSpecPtr rationals();
    static RingSpecPtr prime_field(unsigned long p);
    static RingSpecPtr polynomial(ScalarKind base, unsigned long p, std::vector<VarInfo> vars);
    static RingSpecPtr fraction_field(ScalarKind base, unsigned long p, VarInfo var);

    // Grammar: "Z" | "Q" | "F<p>", optionally "[v,v,...]" (polynomial ring) or
    // "(v)" (fraction field over a prime field).  A variable is "name" or
    // "name:qdeg"; named defaults are h:-2, t:-4, c:2, H:-2, X:-2, u:-4,
    // anything else -2.
    static RingSpecPtr parse(const std::string& text);

    ScalarKind scalar() const { return scalar_; }
    unsigned long characteristic() const { return scalar_ == ScalarKind::prime_field ? p_ : 0; }
    const std::vector<VarInfo>& vars() const { return vars_; }
    bool is_fraction_field() const { return fraction_; }

    bool is_field() const;
    // Euclidean division available: Z, any field, or univariate polynomials
    // over a field.
    bool is_euclidean() const;
    int var_index(const std::string& name) const;  // -1 if absent

    std::string to_string() const;
    bool operator==(const RingSpec& o) const;
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

  private:
    ScalarKind scalar_ = ScalarKind::integers;
    unsigned long p_ = 0;
    std::vector<VarInfo> vars_;
    bool fraction_ = false;
};

// Quantum degree of a ring element: the zero element is homogeneous of every
// degree and gets a distinguished marker.
class QDegree {
  public:
    static QDegree of_zero() { return QDegree(Kind::zero, 0); }
    static QDegree homogeneous(int v) { return QDegree(Kind::homogeneous, v); }
    static QDegree mixed() { return QDegree(Kind::mixed, 0); }

    bool is_zero_element() const { return kind_ == Kind::zero; }
    bool is_homogeneous() const { return kind_ != Kind::mixed; }
    // Degree value; only meaningful for nonzero homogeneous elements.
    int value() const { return value_; }

    // Does this element fit in a slot that requires degree d?  Zero fits
    // everywhere.
    bool fits(int d) const { return kind_ == Kind::zero || (kind_ == Kind::homogeneous && value_ == d); }

    bool operator==(const QDegree& o) const { return kind_ == o.kind_ && value_ == o.value_; }

  private:
    enum class Kind { zero, homogeneous, mixed };
    QDegree(Kind k, int v) : kind_(k), value_(v) {}
    Kind kind_;
    int value_;
};

class RingElement {
  public:
    // Sparse distributed representation: exponent vector -> coefficient.
    // Coefficients are exact rationals; integer and residue invariants are
    // maintained by canonicalization depending on the scalar kind.
    using Terms = std::map<std::vector<int>, mpq_class>;

    RingElement() = default;  // invalid until assigned; spec() is null

    static RingElement zero(const RingSpecPtr& spec);
    static RingElement one(const RingSpecPtr& spec);
    static RingElement from_int(const RingSpecPtr& spec, long v);
    static RingElement from_mpq(const RingSpecPtr& spec, const mpq_class& v);
    static RingElement variable(const RingSpecPtr& spec, const std::string& name);
    static RingElement monomial(const RingSpecPtr& spec, const std::vector<int>& exps, const mpq_class& coeff);

    // Parses "2*h^2 - t + 1", "1/2", "-c" and the like.  Division is not part
    // of the element grammar; fraction-field elements are entered as
    // polynomials in the variable (which is all the engine needs).
    static RingElement parse(const RingSpecPtr& spec, const std::string& text);

    const RingSpecPtr& spec() const { return spec_; }

    bool is_zero() const { return num_.empty(); }
    bool is_one() const;
    bool is_unit() const;

    RingElement operator-() const;
    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Multiplicative inverse of a unit; DomainError otherwise.
    RingElement inverse() const;
    RingElement pow(long e) const;  // e >= 0, or unit base for e < 0

    QDegree qdeg() const;

    std::string to_string() const;

    const Terms& numerator_terms() const { return num_; }
    const Terms& denominator_terms() const { return den_; }

    // Total order for deterministic containers; not semantically meaningful.
    bool operator<(const RingElement& o) const;

    friend std::pair<RingElement, RingElement> euclid_divmod(const RingElement& a, const RingElement& b);
    // Exact division; DomainError if b does not divide a.
    friend RingElement divexact(const RingElement& a, const RingElement& b);
    // Euclidean size used for pivot selection: |n| over Z, degree+1 for
    // polynomials, 1 for nonzero field elements, 0 for zero.
    friend mpz_class euclid_size(const RingElement& a);

  private:
    RingElement(RingSpecPtr spec, Terms num, Terms den)
        : spec_(std::move(spec)), num_(std::move(num)), den_(std::move(den)) {}
    void canonicalize();
    static void check_same_spec(const RingElement& a, const RingElement& b);

    RingSpecPtr spec_;
    Terms num_;
    Terms den_;  // always the constant 1 unless spec_->is_fraction_field()
};

// Ring homomorphism determined by a characteristic-compatible base map and
// images for each source variable.
class RingHom {
  public:
    // images[i] is the image of src->vars()[i] in dst.
    RingHom(RingSpecPtr src, RingSpecPtr dst, std::vector<RingElement> images);

    // Maps variables by name; names missing from dst map to zero.  This is
    // the specialization the CLI uses to move a system's ground ring into the
    // requested coefficient ring.
    static RingHom by_name(const RingSpecPtr& src, const RingSpecPtr& dst);

    const RingSpecPtr& source() const { return src_; }
    const RingSpecPtr& target() const { return dst_; }
    const std::vector<RingElement>& images() const { return images_; }

    RingElement apply(const RingElement& x) const;
    // True when every variable image is homogeneous of the variable's qdeg,
    // so the map preserves the grading.
    bool is_graded() const;

  private:
    RingSpecPtr src_, dst_;
    std::vector<RingElement> images_;
};

}  // namespace frobkh
