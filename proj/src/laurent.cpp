#include "frobkh/laurent.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "frobkh/ring.hpp"

namespace frobkh {

LaurentPoly LaurentPoly::from_int(long v) { return monomial(0, v); }

LaurentPoly LaurentPoly::monomial(int exp, const mpz_class& coeff) {
    LaurentPoly p;
    if (coeff != 0) p.terms_[exp] = coeff;
    return p;
}

mpz_class LaurentPoly::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

int LaurentPoly::min_exp() const {
    if (terms_.empty()) throw DomainError("zero Laurent polynomial has no extreme exponent");
    return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (terms_.empty()) throw DomainError("zero Laurent polynomial has no extreme exponent");
    return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            mpz_class& slot = r.terms_[ea + eb];
            slot += ca * cb;
        }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = it->second == 0 ? r.terms_.erase(it) : std::next(it);
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly acc = from_int(1);
    LaurentPoly base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

LaurentPoly LaurentPoly::invert_q() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        mpz_class c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        int e = it->first;
        if (e == 0) {
            out << c.get_str();
        } else {
            if (c != 1) out << c.get_str() << "*";
            out << "q";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    size_t i = 0;
    auto fail = [&](const std::string& why) -> void {
        throw UsageError("bad Laurent polynomial \"" + text + "\": " + why);
    };
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_int = [&]() -> mpz_class {
        size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            fail("expected an integer");
        return mpz_class(text.substr(start, i - start));
    };
    LaurentPoly result;
    skip_ws();
    if (i == text.size()) fail("empty input");
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            fail("expected + or - between terms");
        }
        mpz_class coeff = 1;
        bool saw_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = parse_int();
            saw_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        int exp = 0;
        if (i < text.size() && text[i] == 'q') {
            ++i;
            exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                exp = static_cast<int>(parse_int().get_si());
            }
        } else if (!saw_coeff) {
            fail("expected a coefficient or q");
        }
        result += monomial(exp, sign * coeff);
        first = false;
        skip_ws();
    }
    return result;
}

}  // namespace frobkh
