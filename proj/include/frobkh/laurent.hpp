#pragma once

// Laurent polynomials in the quantum variable q with integer coefficients.
// Used for graded Euler characteristics and the Jones polynomial; kept
// separate from RingElement because exponents may be negative and the
// coefficient domain is always Z.

#include <gmpxx.h>

#include <map>
#include <string>

namespace frobkh {

class LaurentPoly {
  public:
    LaurentPoly() = default;  // zero

    static LaurentPoly from_int(long v);
    static LaurentPoly monomial(int exp, const mpz_class& coeff = 1);
    // Grammar: sum of terms like "q^6", "-q^-9", "2*q^3", "3", "q".
    static LaurentPoly parse(const std::string& text);

    bool is_zero() const { return terms_.empty(); }
    mpz_class coeff(int exp) const;
    // Lowest/highest exponent with nonzero coefficient; zero polynomial has none.
    int min_exp() const;
    int max_exp() const;

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly pow(unsigned e) const;
    // Substitution q -> q^-1 (mirror image symmetry of quantum invariants).
    LaurentPoly invert_q() const;

    const std::map<int, mpz_class>& terms() const { return terms_; }

    std::string to_string() const;  // descending powers of q

  private:
    std::map<int, mpz_class> terms_;  // exponent -> nonzero coefficient
};

}  // namespace frobkh
