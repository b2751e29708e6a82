#include "frobkh/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace frobkh {

namespace {

int default_qdeg(const std::string& name) {
    if (name == "h") return -2;
    if (name == "t") return -4;
    if (name == "c") return 2;
    if (name == "H") return -2;
    if (name == "X") return -2;
    if (name == "u") return -4;
    return -2;
}

mpq_class mod_reduce(const mpq_class& v, unsigned long p) {
    mpz_class pz(p), r;
    mpz_mod(r.get_mpz_t(), v.get_num().get_mpz_t(), pz.get_mpz_t());
    if (v.get_den() != 1) {
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), v.get_den().get_mpz_t(), pz.get_mpz_t()) == 0)
            throw DomainError("coefficient denominator not invertible modulo " + std::to_string(p));
        r *= dinv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    }
    return mpq_class(r);
}

}  // namespace

RingSpecPtr RingSpec::integers() {
    auto s = std::make_shared<RingSpec>();
    s->scalar_ = ScalarKind::integers;
    return s;
}

RingSpecPtr RingSpec::rationals() {
    auto s = std::make_shared<RingSpec>();
    s->scalar_ = ScalarKind::rationals;
    return s;
}

RingSpecPtr RingSpec::prime_field(unsigned long p) {
    if (p < 2) throw UsageError("prime field characteristic must be a prime");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw UsageError("prime field characteristic must be a prime");
    auto s = std::make_shared<RingSpec>();
    s->scalar_ = ScalarKind::prime_field;
    s->p_ = p;
    return s;
}

RingSpecPtr RingSpec::polynomial(ScalarKind base, unsigned long p, std::vector<VarInfo> vars) {
    if (vars.empty()) throw UsageError("polynomial ring needs at least one variable");
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i].name == vars[j].name) throw UsageError("duplicate variable name " + vars[i].name);
    if (base == ScalarKind::prime_field) prime_field(p);  // primality check
    auto s = std::make_shared<RingSpec>();
    s->scalar_ = base;
    s->p_ = base == ScalarKind::prime_field ? p : 0;
    s->vars_ = std::move(vars);
    return s;
}

RingSpecPtr RingSpec::fraction_field(ScalarKind base, unsigned long p, VarInfo var) {
    if (base != ScalarKind::prime_field)
        throw UsageError("fraction fields are supported over prime fields only");
    auto s = std::make_shared<RingSpec>();
    *s = *prime_field(p);
    s->vars_ = {std::move(var)};
    s->fraction_ = true;
    return s;
}

bool RingSpec::is_field() const {
    if (fraction_) return true;
    if (!vars_.empty()) return false;
    return scalar_ == ScalarKind::rationals || scalar_ == ScalarKind::prime_field;
}

bool RingSpec::is_euclidean() const {
    if (is_field()) return true;
    if (scalar_ == ScalarKind::integers) return vars_.empty();
    return vars_.size() == 1;  // univariate over Q or F_p
}

int RingSpec::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool RingSpec::operator==(const RingSpec& o) const {
    return scalar_ == o.scalar_ && p_ == o.p_ && vars_ == o.vars_ && fraction_ == o.fraction_;
}

std::string RingSpec::to_string() const {
    std::string s;
    switch (scalar_) {
        case ScalarKind::integers: s = "Z"; break;
        case ScalarKind::rationals: s = "Q"; break;
        case ScalarKind::prime_field: s = "F" + std::to_string(p_); break;
    }
    if (!vars_.empty()) {
        s += fraction_ ? '(' : '[';
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (i) s += ',';
            s += vars_[i].name;
            if (vars_[i].qdeg != default_qdeg(vars_[i].name)) s += ":" + std::to_string(vars_[i].qdeg);
        }
        s += fraction_ ? ')' : ']';
    }
    return s;
}

RingSpecPtr RingSpec::parse(const std::string& text) {
    size_t i = 0;
    auto fail = [&](const std::string& why) -> void {
        throw UsageError("bad ring spec \"" + text + "\": " + why);
    };
    ScalarKind base;
    unsigned long p = 0;
    if (i < text.size() && text[i] == 'Z') {
        base = ScalarKind::integers;
        ++i;
    } else if (i < text.size() && text[i] == 'Q') {
        base = ScalarKind::rationals;
        ++i;
    } else if (i < text.size() && text[i] == 'F') {
        ++i;
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected characteristic after F");
        p = std::stoul(text.substr(start, i - start));
        base = ScalarKind::prime_field;
    } else {
        fail("expected Z, Q, or F<p>");
        return nullptr;  // unreachable
    }
    if (i == text.size()) {
        switch (base) {
            case ScalarKind::integers: return integers();
            case ScalarKind::rationals: return rationals();
            case ScalarKind::prime_field: return prime_field(p);
        }
    }
    char open = text[i];
    if (open != '[' && open != '(') fail("unexpected character");
    char close = open == '[' ? ']' : ')';
    if (text.back() != close) fail("unbalanced bracket");
    std::string inner = text.substr(i + 1, text.size() - i - 2);
    std::vector<VarInfo> vars;
    size_t pos = 0;
    while (pos <= inner.size()) {
        size_t comma = inner.find(',', pos);
        std::string item = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) fail("empty variable name");
        VarInfo v;
        size_t colon = item.find(':');
        if (colon == std::string::npos) {
            v.name = item;
            v.qdeg = default_qdeg(item);
        } else {
            v.name = item.substr(0, colon);
            try {
                v.qdeg = std::stoi(item.substr(colon + 1));
            } catch (const std::exception&) {
                fail("bad qdeg in variable " + item);
            }
        }
        for (char ch : v.name)
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') fail("bad variable name " + v.name);
        vars.push_back(std::move(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (open == '(') {
        if (vars.size() != 1) fail("fraction field takes exactly one variable");
        return fraction_field(base, p, vars[0]);
    }
    return polynomial(base, p, std::move(vars));
}

// ---------------------------------------------------------------------------
// RingElement

void RingElement::check_same_spec(const RingElement& a, const RingElement& b) {
    if (!a.spec_ || !b.spec_ || *a.spec_ != *b.spec_)
        throw UsageError("ring mismatch: " + (a.spec_ ? a.spec_->to_string() : "<none>") + " vs " +
                         (b.spec_ ? b.spec_->to_string() : "<none>"));
}

RingElement RingElement::zero(const RingSpecPtr& spec) {
    Terms one_term{{std::vector<int>(spec->vars().size(), 0), mpq_class(1)}};
    return RingElement(spec, Terms{}, std::move(one_term));
}

RingElement RingElement::one(const RingSpecPtr& spec) { return from_int(spec, 1); }

RingElement RingElement::from_int(const RingSpecPtr& spec, long v) { return from_mpq(spec, mpq_class(v)); }

RingElement RingElement::from_mpq(const RingSpecPtr& spec, const mpq_class& v) {
    return monomial(spec, std::vector<int>(spec->vars().size(), 0), v);
}

RingElement RingElement::monomial(const RingSpecPtr& spec, const std::vector<int>& exps, const mpq_class& coeff) {
    if (exps.size() != spec->vars().size()) throw UsageError("monomial exponent arity mismatch");
    for (int e : exps)
        if (e < 0) throw UsageError("negative exponent in monomial");
    Terms num{{exps, coeff}};
    Terms den{{std::vector<int>(spec->vars().size(), 0), mpq_class(1)}};
    RingElement r(spec, std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

RingElement RingElement::variable(const RingSpecPtr& spec, const std::string& name) {
    int idx = spec->var_index(name);
    if (idx < 0) throw UsageError("no variable " + name + " in " + spec->to_string());
    std::vector<int> e(spec->vars().size(), 0);
    e[idx] = 1;
    return monomial(spec, e, mpq_class(1));
}

namespace {

using Terms = RingElement::Terms;

Terms terms_add(const Terms& a, const Terms& b) {
    Terms r = a;
    for (const auto& [m, c] : b) {
        auto it = r.find(m);
        if (it == r.end())
            r.emplace(m, c);
        else
            it->second += c;
    }
    return r;
}

Terms terms_neg(const Terms& a) {
    Terms r = a;
    for (auto& [m, c] : r) c = -c;
    return r;
}

Terms terms_mul(const Terms& a, const Terms& b) {
    Terms r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<int> m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            mpq_class prod = ca * cb;
            auto it = r.find(m);
            if (it == r.end())
                r.emplace(std::move(m), std::move(prod));
            else
                it->second += prod;
        }
    return r;
}

void terms_canonical(Terms& t, ScalarKind kind, unsigned long p) {
    for (auto it = t.begin(); it != t.end();) {
        if (kind == ScalarKind::prime_field) it->second = mod_reduce(it->second, p);
        if (it->second == 0)
            it = t.erase(it);
        else
            ++it;
    }
}

bool terms_is_constant(const Terms& t) {
    if (t.empty()) return true;
    if (t.size() > 1) return false;
    const auto& m = t.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

int terms_univ_degree(const Terms& t) {  // degree in the single variable; -1 for zero
    if (t.empty()) return -1;
    return t.rbegin()->first[0];
}

// Univariate division with remainder over a field scalar domain (Q or F_p,
// with reduction applied by the caller's canonicalize).
std::pair<Terms, Terms> terms_univ_divmod(Terms a, const Terms& b, ScalarKind kind, unsigned long p) {
    Terms q;
    int db = terms_univ_degree(b);
    mpq_class lb = b.rbegin()->second;
    mpq_class lb_inv;
    if (kind == ScalarKind::prime_field) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), lb.get_num().get_mpz_t(), mpz_class(p).get_mpz_t()) == 0)
            throw DomainError("leading coefficient not invertible");
        lb_inv = mpq_class(inv);
    } else {
        lb_inv = 1 / lb;
    }
    while (!a.empty() && terms_univ_degree(a) >= db) {
        int da = terms_univ_degree(a);
        mpq_class f = a.rbegin()->second * lb_inv;
        if (kind == ScalarKind::prime_field) f = mod_reduce(f, p);
        std::vector<int> shift{da - db};
        q[shift] = f;
        for (const auto& [m, c] : b) {
            std::vector<int> mm{m[0] + da - db};
            auto it = a.find(mm);
            mpq_class nv = (it == a.end() ? mpq_class(0) : it->second) - f * c;
            if (kind == ScalarKind::prime_field) nv = mod_reduce(nv, p);
            if (nv == 0) {
                if (it != a.end()) a.erase(it);
            } else if (it == a.end()) {
                a.emplace(std::move(mm), std::move(nv));
            } else {
                it->second = nv;
            }
        }
    }
    return {std::move(q), std::move(a)};
}

Terms terms_univ_gcd(Terms a, Terms b, ScalarKind kind, unsigned long p) {
    while (!b.empty()) {
        auto [q, r] = terms_univ_divmod(std::move(a), b, kind, p);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

void RingElement::canonicalize() {
    ScalarKind kind = spec_->scalar();
    unsigned long p = spec_->characteristic();
    if (kind == ScalarKind::integers) {
        for (const auto& [m, c] : num_)
            if (c.get_den() != 1) throw UsageError("non-integer coefficient in " + spec_->to_string());
    }
    terms_canonical(num_, kind, p);
    if (!spec_->is_fraction_field()) {
        den_ = Terms{{std::vector<int>(spec_->vars().size(), 0), mpq_class(1)}};
        return;
    }
    terms_canonical(den_, kind, p);
    if (den_.empty()) throw DomainError("division by zero in " + spec_->to_string());
    if (num_.empty()) {
        den_ = Terms{{std::vector<int>{0}, mpq_class(1)}};
        return;
    }
    Terms g = terms_univ_gcd(num_, den_, kind, p);
    if (terms_univ_degree(g) > 0) {
        num_ = terms_univ_divmod(std::move(num_), g, kind, p).first;
        den_ = terms_univ_divmod(std::move(den_), g, kind, p).first;
    }
    // normalize the denominator to be monic
    mpq_class lead = den_.rbegin()->second;
    if (lead != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), lead.get_num().get_mpz_t(), mpz_class(p).get_mpz_t()) == 0)
            throw DomainError("denominator leading coefficient not invertible");
        Terms scale{{std::vector<int>{0}, mpq_class(inv)}};
        num_ = terms_mul(num_, scale);
        den_ = terms_mul(den_, scale);
        terms_canonical(num_, kind, p);
        terms_canonical(den_, kind, p);
    }
}

bool RingElement::is_one() const {
    if (!terms_is_constant(den_) || den_.empty()) {
        // fraction with non-constant denominator can still be 1 only in
        // non-canonical form, which we never hold
        return false;
    }
    return terms_is_constant(num_) && !num_.empty() && num_.begin()->second == den_.begin()->second;
}

bool RingElement::is_unit() const {
    if (is_zero()) return false;
    if (spec_->is_field()) return true;
    if (!terms_is_constant(num_)) return false;
    const mpq_class& c = num_.begin()->second;
    switch (spec_->scalar()) {
        case ScalarKind::integers: return c == 1 || c == -1;
        case ScalarKind::rationals: return true;   // nonzero constant over Q
        case ScalarKind::prime_field: return true; // nonzero residue
    }
    return false;
}

RingElement RingElement::operator-() const {
    RingElement r(spec_, terms_neg(num_), den_);
    r.canonicalize();
    return r;
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_same_spec(*this, o);
    if (!spec_->is_fraction_field()) {
        RingElement r(spec_, terms_add(num_, o.num_), den_);
        r.canonicalize();
        return r;
    }
    // a/b + c/d = (ad + cb) / bd
    Terms n = terms_add(terms_mul(num_, o.den_), terms_mul(o.num_, den_));
    RingElement r(spec_, std::move(n), terms_mul(den_, o.den_));
    r.canonicalize();
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
    check_same_spec(*this, o);
    RingElement r(spec_, terms_mul(num_, o.num_), terms_mul(den_, o.den_));
    r.canonicalize();
    return r;
}

bool RingElement::operator==(const RingElement& o) const {
    check_same_spec(*this, o);
    return num_ == o.num_ && den_ == o.den_;
}

RingElement RingElement::inverse() const {
    if (is_zero()) throw DomainError("zero is not invertible");
    if (spec_->is_fraction_field()) {
        RingElement r(spec_, den_, num_);
        r.canonicalize();
        return r;
    }
    if (!is_unit()) throw DomainError("not a unit in " + spec_->to_string() + ": " + to_string());
    const mpq_class& c = num_.begin()->second;
    switch (spec_->scalar()) {
        case ScalarKind::integers:
        case ScalarKind::rationals:
            return from_mpq(spec_, 1 / c);
        case ScalarKind::prime_field: {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), c.get_num().get_mpz_t(), mpz_class(spec_->characteristic()).get_mpz_t());
            return from_mpq(spec_, mpq_class(inv));
        }
    }
    throw DomainError("unreachable");
}

RingElement RingElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RingElement acc = one(spec_);
    RingElement base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

QDegree RingElement::qdeg() const {
    if (is_zero()) return QDegree::of_zero();
    auto terms_degree = [&](const Terms& t) -> std::optional<int> {
        std::optional<int> deg;
        for (const auto& [m, c] : t) {
            (void)c;
            int d = 0;
            for (size_t i = 0; i < m.size(); ++i) d += m[i] * spec_->vars()[i].qdeg;
            if (deg && *deg != d) return std::nullopt;
            deg = d;
        }
        return deg;
    };
    auto dn = terms_degree(num_);
    if (!dn) return QDegree::mixed();
    if (spec_->is_fraction_field()) {
        auto dd = terms_degree(den_);
        if (!dd) return QDegree::mixed();
        return QDegree::homogeneous(*dn - *dd);
    }
    return QDegree::homogeneous(*dn);
}

bool RingElement::operator<(const RingElement& o) const {
    check_same_spec(*this, o);
    auto cmp = [](const Terms& a, const Terms& b) {
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
            if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        }
        if (ia != a.end()) return 1;
        if (ib != b.end()) return -1;
        return 0;
    };
    int c = cmp(num_, o.num_);
    if (c != 0) return c < 0;
    return cmp(den_, o.den_) < 0;
}

std::string RingElement::to_string() const {
    if (is_zero()) return "0";
    auto terms_str = [&](const Terms& t) {
        std::ostringstream out;
        bool first = true;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            const auto& [m, c] = *it;
            mpq_class a = c;
            bool neg = a < 0;
            if (neg) a = -a;
            if (first)
                out << (neg ? "-" : "");
            else
                out << (neg ? " - " : " + ");
            first = false;
            bool has_var = std::any_of(m.begin(), m.end(), [](int e) { return e != 0; });
            if (!has_var || a != 1) out << a.get_str() << (has_var ? "*" : "");
            bool started = false;
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (started) out << "*";
                started = true;
                out << spec_->vars()[i].name;
                if (m[i] != 1) out << "^" << m[i];
            }
        }
        return out.str();
    };
    std::string n = terms_str(num_);
    if (terms_is_constant(den_) && den_.begin()->second == 1) return n;
    return "(" + n + ")/(" + terms_str(den_) + ")";
}

std::pair<RingElement, RingElement> euclid_divmod(const RingElement& a, const RingElement& b) {
    RingElement::check_same_spec(a, b);
    const RingSpecPtr& spec = a.spec_;
    if (b.is_zero()) throw DomainError("euclidean division by zero");
    if (!spec->is_euclidean())
        throw DomainError("euclidean division unavailable in " + spec->to_string());
    if (spec->is_field()) return {a * b.inverse(), RingElement::zero(spec)};
    if (spec->vars().empty()) {
        // integers; truncated division keeps |r| < |b|
        mpz_class na = a.num_.empty() ? mpz_class(0) : a.num_.begin()->second.get_num();
        mpz_class nb = b.num_.begin()->second.get_num();
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
        return {RingElement::from_mpq(spec, mpq_class(q)), RingElement::from_mpq(spec, mpq_class(r))};
    }
    auto [q, r] = terms_univ_divmod(a.num_, b.num_, spec->scalar(), spec->characteristic());
    RingElement rq(spec, std::move(q), a.den_);
    RingElement rr(spec, std::move(r), a.den_);
    rq.canonicalize();
    rr.canonicalize();
    return {std::move(rq), std::move(rr)};
}

RingElement divexact(const RingElement& a, const RingElement& b) {
    if (b.is_unit()) return a * b.inverse();
    auto [q, r] = euclid_divmod(a, b);
    if (!r.is_zero()) throw DomainError("inexact division: " + a.to_string() + " by " + b.to_string());
    return q;
}

mpz_class euclid_size(const RingElement& a) {
    if (a.is_zero()) return 0;
    const RingSpecPtr& spec = a.spec_;
    if (spec->is_field()) return 1;
    if (spec->vars().empty()) return abs(a.num_.begin()->second.get_num());
    return mpz_class(terms_univ_degree(a.num_) + 1);
}

// ---------------------------------------------------------------------------
// element parser

RingElement RingElement::parse(const RingSpecPtr& spec, const std::string& text) {
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) -> void {
        throw UsageError("bad element \"" + text + "\" for " + spec->to_string() + ": " + why);
    };
    auto parse_int = [&]() -> mpz_class {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected a number");
        return mpz_class(text.substr(start, i - start));
    };
    RingElement result = zero(spec);
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected + or - between terms");
        }
        skip_ws();
        mpq_class coeff(sign);
        bool saw_factor = false;
        std::vector<int> exps(spec->vars().size(), 0);
        while (i < text.size()) {
            skip_ws();
            if (i >= text.size() || text[i] == '+' || text[i] == '-') break;
            if (text[i] == '*') {
                if (!saw_factor) fail("dangling *");
                ++i;
                skip_ws();
            }
            if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                mpz_class n = parse_int();
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    mpz_class d = parse_int();
                    if (d == 0) fail("zero denominator");
                    coeff *= mpq_class(n, d);
                    coeff.canonicalize();
                } else {
                    coeff *= mpq_class(n);
                }
                saw_factor = true;
            } else if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
                size_t start = i;
                while (i < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                    ++i;
                std::string name = text.substr(start, i - start);
                int idx = spec->var_index(name);
                if (idx < 0) fail("unknown variable " + name);
                long e = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    e = parse_int().get_si();
                    if (e < 0) fail("negative exponent");
                }
                exps[idx] += static_cast<int>(e);
                saw_factor = true;
            } else {
                fail(std::string("unexpected character '") + text[i] + "'");
            }
        }
        if (!saw_factor) fail("empty term");
        result += monomial(spec, exps, coeff);
        first = false;
        skip_ws();
    }
    if (first) fail("empty element");
    return result;
}

// ---------------------------------------------------------------------------
// RingHom

RingHom::RingHom(RingSpecPtr src, RingSpecPtr dst, std::vector<RingElement> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
    if (images_.size() != src_->vars().size())
        throw UsageError("ring hom needs one image per source variable");
    for (const auto& img : images_)
        if (*img.spec() != *dst_) throw UsageError("variable image lies in the wrong ring");
    // characteristic compatibility of the base map
    switch (src_->scalar()) {
        case ScalarKind::integers:
            break;  // Z maps anywhere
        case ScalarKind::rationals:
            if (dst_->scalar() != ScalarKind::rationals)
                throw UsageError("no ring map from a Q-algebra to " + dst_->to_string());
            break;
        case ScalarKind::prime_field:
            if (dst_->scalar() != ScalarKind::prime_field ||
                dst_->characteristic() != src_->characteristic())
                throw UsageError("characteristic mismatch: " + src_->to_string() + " to " + dst_->to_string());
            break;
    }
    if (src_->is_fraction_field())
        throw UsageError("ring maps out of fraction fields are not supported");
}

RingHom RingHom::by_name(const RingSpecPtr& src, const RingSpecPtr& dst) {
    std::vector<RingElement> images;
    for (const auto& v : src->vars()) {
        int idx = dst->var_index(v.name);
        images.push_back(idx >= 0 ? RingElement::variable(dst, v.name) : RingElement::zero(dst));
    }
    return RingHom(src, dst, std::move(images));
}

RingElement RingHom::apply(const RingElement& x) const {
    if (*x.spec() != *src_) throw UsageError("ring hom applied to element of the wrong ring");
    RingElement out = RingElement::zero(dst_);
    for (const auto& [m, c] : x.numerator_terms()) {
        RingElement term = RingElement::from_mpq(dst_, c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) term = term * images_[i].pow(m[i]);
        out += term;
    }
    return out;
}

bool RingHom::is_graded() const {
    for (size_t i = 0; i < images_.size(); ++i) {
        QDegree d = images_[i].qdeg();
        if (!d.fits(src_->vars()[i].qdeg)) return false;
    }
    return true;
}

}  // namespace frobkh
