#include "frobkh/frobenius.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace frobkh {

namespace {

const char* const kABasis[2] = {"1", "X"};

std::string tensor_name(int idx, int factors) {
    std::string s;
    for (int f = factors - 1; f >= 0; --f) {
        if (!s.empty()) s = "@" + s;
        s = kABasis[(idx >> f) & 1] + s;
    }
    return s;
}

std::string tensor_elem_string(const std::vector<RingElement>& coords, int factors) {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        std::string c = coords[i].to_string();
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        if (c == "1")
            out << tensor_name(static_cast<int>(i), factors);
        else if (c.find_first_of("+-") != std::string::npos && c.size() > 1)
            out << "(" << c << ")*" << tensor_name(static_cast<int>(i), factors);
        else
            out << c << "*" << tensor_name(static_cast<int>(i), factors);
    }
    if (first) return "0";
    return out.str();
}

// Splits on commas that are not nested inside [] or ().
std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string AElem::to_string() const {
    std::vector<RingElement> coords{c1, cX};
    return tensor_elem_string(coords, 1);
}

RingMatrix FrobeniusSystem::mult_matrix() const {
    RingMatrix m(ring, 2, 4);
    m.set(0, 0, RingElement::one(ring));
    m.set(1, 1, RingElement::one(ring));
    m.set(1, 2, RingElement::one(ring));
    m.set(0, 3, t);
    m.set(1, 3, h);
    return m;
}

RingMatrix FrobeniusSystem::comult_matrix() const {
    RingMatrix d(ring, 4, 2);
    for (int i = 0; i < 4; ++i) {
        d.set(i, 0, delta1[i]);
        d.set(i, 1, deltaX[i]);
    }
    return d;
}

RingMatrix FrobeniusSystem::counit_matrix() const {
    RingMatrix e(ring, 1, 2);
    e.set(0, 0, eps1);
    e.set(0, 1, epsX);
    return e;
}

RingMatrix FrobeniusSystem::unit_matrix() const {
    RingMatrix u(ring, 2, 1);
    u.set(0, 0, RingElement::one(ring));
    return u;
}

AElem FrobeniusSystem::multiply(const AElem& a, const AElem& b) const {
    // (a1 + aX X)(b1 + bX X) with X^2 = hX + t
    return AElem{a.c1 * b.c1 + a.cX * b.cX * t, a.c1 * b.cX + a.cX * b.c1 + a.cX * b.cX * h};
}

RingElement FrobeniusSystem::counit(const AElem& a) const { return a.c1 * eps1 + a.cX * epsX; }

bool FrobeniusSystem::same_constants(const FrobeniusSystem& o) const {
    return *ring == *o.ring && h == o.h && t == o.t && eps1 == o.eps1 && epsX == o.epsX &&
           delta1 == o.delta1 && deltaX == o.deltaX;
}

std::string FrobeniusSystem::describe() const {
    std::ostringstream out;
    out << "system " << name << " over " << ring->to_string() << "\n";
    out << "  X^2 = " << (AElem{t, h}).to_string() << "\n";
    out << "  eps(1) = " << eps1.to_string() << ", eps(X) = " << epsX.to_string() << "\n";
    std::vector<RingElement> d1(delta1.begin(), delta1.end());
    std::vector<RingElement> dX(deltaX.begin(), deltaX.end());
    out << "  Delta(1) = " << tensor_elem_string(d1, 2) << "\n";
    out << "  Delta(X) = " << tensor_elem_string(dX, 2) << "\n";
    return out.str();
}

FrobeniusSystem make_custom(const RingSpecPtr& ring, RingElement h, RingElement t) {
    if (*h.spec() != *ring || *t.spec() != *ring)
        throw UsageError("h and t must live in the system's ground ring");
    FrobeniusSystem s;
    s.ring = ring;
    s.h = h;
    s.t = t;
    s.eps1 = RingElement::zero(ring);
    s.epsX = RingElement::one(ring);
    auto z = RingElement::zero(ring);
    auto o = RingElement::one(ring);
    s.delta1 = {-h, o, o, z};
    s.deltaX = {t, z, z, o};
    s.name = "custom(" + ring->to_string() + ";h=" + h.to_string() + ";t=" + t.to_string() + ")";
    return s;
}

FrobeniusSystem make_system(const std::string& name) {
    std::string orig = trim(name);
    std::string n = orig;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    auto zero_of = [](const RingSpecPtr& r) { return RingElement::zero(r); };

    if (n == "f1") {
        auto r = RingSpec::integers();
        auto s = make_custom(r, zero_of(r), zero_of(r));
        s.name = "f1";
        return s;
    }
    if (n == "f2") {
        auto r = RingSpec::parse("Z[c]");
        auto c = RingElement::variable(r, "c");
        FrobeniusSystem s = make_custom(r, zero_of(r), zero_of(r));
        s.eps1 = -c;
        s.delta1[3] = c;  // Delta(1) = 1@X + X@1 + c X@X
        s.name = "f2";
        return s;
    }
    if (n == "f3") {
        auto r = RingSpec::parse("Z[t]");
        auto s = make_custom(r, zero_of(r), RingElement::variable(r, "t"));
        s.name = "f3";
        return s;
    }
    if (n == "f5") {
        auto r = RingSpec::parse("Z[h,t]");
        auto s = make_custom(r, RingElement::variable(r, "h"), RingElement::variable(r, "t"));
        s.name = "f5";
        return s;
    }
    if (n == "f6") {
        auto r = RingSpec::parse("F2[H]");
        auto s = make_custom(r, RingElement::variable(r, "H"), zero_of(r));
        s.name = "f6";
        return s;
    }
    if (n == "f7") {
        auto r = RingSpec::parse("Z[h]");
        auto s = make_custom(r, RingElement::variable(r, "h"), zero_of(r));
        s.name = "f7";
        return s;
    }
    if (n.rfind("custom:", 0) == 0) {
        std::string args = orig.substr(7);
        RingSpecPtr ring;
        std::string h_text, t_text;
        for (const std::string& part : split_top_level(args)) {
            std::string p = trim(part);
            if (p.rfind("ring=", 0) == 0)
                ring = RingSpec::parse(p.substr(5));
            else if (p.rfind("h=", 0) == 0)
                h_text = p.substr(2);
            else if (p.rfind("t=", 0) == 0)
                t_text = p.substr(2);
            else
                throw UsageError("unknown custom system field \"" + p + "\"");
        }
        if (!ring) throw UsageError("custom system requires ring=<ringspec>");
        auto h = h_text.empty() ? RingElement::zero(ring) : RingElement::parse(ring, h_text);
        auto t = t_text.empty() ? RingElement::zero(ring) : RingElement::parse(ring, t_text);
        return make_custom(ring, h, t);
    }
    throw UsageError("unknown system \"" + name + "\" (expected f1, f2, f3, f5, f6, f7, or custom:...)");
}

namespace {

// Swap of tensor factors on A(x)A: index 2i+j -> 2j+i.
RingMatrix swap_matrix(const RingSpecPtr& ring) {
    RingMatrix s(ring, 4, 4);
    auto one = RingElement::one(ring);
    s.set(0, 0, one);
    s.set(2, 1, one);
    s.set(1, 2, one);
    s.set(3, 3, one);
    return s;
}

// First column index at which two equal-shaped matrices differ, with a tag
// for the report.
void compare_maps(bool& flag, std::vector<std::string>& failures, const std::string& axiom,
                  const RingMatrix& lhs, const RingMatrix& rhs, int factors_in) {
    flag = lhs == rhs;
    if (flag) return;
    for (int c = 0; c < lhs.cols(); ++c)
        for (int r = 0; r < lhs.rows(); ++r)
            if (lhs.at(r, c) != rhs.at(r, c)) {
                failures.push_back(axiom + " fails on basis vector " + tensor_name(c, factors_in) +
                                   " (" + lhs.at(r, c).to_string() + " vs " + rhs.at(r, c).to_string() +
                                   ")");
                return;
            }
}

// Degrees of tensor power basis vectors: deg(1) = +1, deg(X) = -1.
int tensor_deg(int idx, int factors) {
    int d = 0;
    for (int f = 0; f < factors; ++f) d += ((idx >> f) & 1) ? -1 : 1;
    return d;
}

bool map_homogeneous(const RingMatrix& m, int factors_in, int factors_out, int map_deg,
                     std::vector<std::string>& failures, const std::string& label) {
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) {
            int want = tensor_deg(c, factors_in) + map_deg - tensor_deg(r, factors_out);
            if (!v.qdeg().fits(want)) {
                failures.push_back(label + " is inhomogeneous at entry (" + tensor_name(r, factors_out) +
                                   ", " + tensor_name(c, factors_in) + "): " + v.to_string() +
                                   " should have degree " + std::to_string(want));
                return false;
            }
        }
    return true;
}

}  // namespace

AxiomReport check_axioms(const FrobeniusSystem& sys) {
    AxiomReport rep;
    const auto& R = sys.ring;
    RingMatrix M = sys.mult_matrix();
    RingMatrix D = sys.comult_matrix();
    RingMatrix E = sys.counit_matrix();
    RingMatrix I = sys.unit_matrix();
    RingMatrix id2 = RingMatrix::identity(R, 2);
    RingMatrix T = swap_matrix(R);

    compare_maps(rep.associative, rep.failures, "associativity", M * kron(M, id2), M * kron(id2, M), 3);
    compare_maps(rep.commutative, rep.failures, "commutativity", M * T, M, 2);
    bool ul, ur;
    compare_maps(ul, rep.failures, "left unit", M * kron(I, id2), id2, 1);
    compare_maps(ur, rep.failures, "right unit", M * kron(id2, I), id2, 1);
    rep.unital = ul && ur;
    compare_maps(rep.coassociative, rep.failures, "coassociativity", kron(D, id2) * D, kron(id2, D) * D, 1);
    compare_maps(rep.cocommutative, rep.failures, "cocommutativity", T * D, D, 1);
    bool cl, cr;
    compare_maps(cl, rep.failures, "counit", kron(E, id2) * D, id2, 1);
    compare_maps(cr, rep.failures, "counit (right)", kron(id2, E) * D, id2, 1);
    rep.counital = cl && cr;
    bool b1, b2;
    compare_maps(b1, rep.failures, "bimodule (left action)", D * M, kron(M, id2) * kron(id2, D), 2);
    compare_maps(b2, rep.failures, "bimodule (right action)", D * M, kron(id2, M) * kron(D, id2), 2);
    rep.bimodule = b1 && b2;

    rep.graded = map_homogeneous(M, 2, 1, -1, rep.failures, "multiplication") &&
                 map_homogeneous(D, 1, 2, -1, rep.failures, "comultiplication") &&
                 map_homogeneous(E, 1, 0, +1, rep.failures, "counit") &&
                 map_homogeneous(I, 0, 1, +1, rep.failures, "unit");
    return rep;
}

FrobeniusSystem base_change(const FrobeniusSystem& sys, const RingHom& psi) {
    if (*psi.source() != *sys.ring)
        throw UsageError("base change source ring mismatch: map leaves " + psi.source()->to_string() +
                         " but system lives over " + sys.ring->to_string());
    FrobeniusSystem s;
    s.ring = psi.target();
    s.h = psi.apply(sys.h);
    s.t = psi.apply(sys.t);
    s.eps1 = psi.apply(sys.eps1);
    s.epsX = psi.apply(sys.epsX);
    for (int i = 0; i < 4; ++i) {
        s.delta1[i] = psi.apply(sys.delta1[i]);
        s.deltaX[i] = psi.apply(sys.deltaX[i]);
    }
    s.name = "base_change(" + sys.name + " -> " + psi.target()->to_string() + ")";
    return s;
}

std::optional<AElem> invert_in_A(const FrobeniusSystem& sys, const AElem& y) {
    // Multiplication by y = alpha + beta X in the {1, X} basis is
    //   [ alpha      beta*t      ]
    //   [ beta       alpha+beta*h ]
    // and y is invertible iff the determinant is a unit in R.
    const RingElement& al = y.c1;
    const RingElement& be = y.cX;
    RingElement det = al * al + al * be * sys.h - be * be * sys.t;
    if (!det.is_unit()) return std::nullopt;
    RingElement dinv = det.inverse();
    AElem inv{(al + be * sys.h) * dinv, -be * dinv};
    // belt and braces: the inverse must multiply back to 1
    AElem check = sys.multiply(y, inv);
    if (!check.c1.is_one() || !check.cX.is_zero())
        throw DomainError("inverse verification failed for " + y.to_string());
    return inv;
}

FrobeniusSystem twist(const FrobeniusSystem& sys, const AElem& y) {
    auto yinv = invert_in_A(sys, y);
    if (!yinv) throw DomainError("cannot twist by non-invertible element " + y.to_string());
    FrobeniusSystem s;
    s.ring = sys.ring;
    s.h = sys.h;
    s.t = sys.t;
    // eps'(x) = eps(y x) on the basis
    s.eps1 = sys.counit(y);
    s.epsX = sys.counit(sys.multiply(y, AElem{RingElement::zero(sys.ring), RingElement::one(sys.ring)}));
    // Delta'(x) = Delta(y^-1 x), extended linearly over the basis of A
    auto delta_of = [&](const AElem& v) {
        std::array<RingElement, 4> out;
        for (int i = 0; i < 4; ++i) out[i] = v.c1 * sys.delta1[i] + v.cX * sys.deltaX[i];
        return out;
    };
    s.delta1 = delta_of(*yinv);
    s.deltaX = delta_of(sys.multiply(*yinv, AElem{RingElement::zero(sys.ring), RingElement::one(sys.ring)}));
    s.name = "twist(" + sys.name + "," + y.to_string() + ")";
    return s;
}

FrobeniusSystem dual(const FrobeniusSystem& sys) {
    const auto& R = sys.ring;
    auto zero = RingElement::zero(R);
    auto one = RingElement::one(R);

    // Dual multiplication on the basis {1*, X*}: the coefficient of k* in
    // i* . j* is the (i (x) j)-coefficient of Delta(k).
    auto dual_product = [&](int i, int j) {
        return std::array<RingElement, 2>{sys.delta1[2 * i + j], sys.deltaX[2 * i + j]};
    };
    // The unit of the dual algebra is eps viewed as an element of A*.
    std::array<RingElement, 2> u{sys.eps1, sys.epsX};

    // Complete {u} to a basis using one of the dual basis vectors; the
    // change-of-basis determinant must be a unit.
    int xprime;  // 0 -> 1*, 1 -> X*
    RingElement det;
    if (sys.epsX.is_unit()) {
        xprime = 0;
        det = -sys.epsX;  // det [u | 1*]
    } else if (sys.eps1.is_unit()) {
        xprime = 1;
        det = sys.eps1;  // det [u | X*]
    } else {
        throw DomainError("dual system is not rank two over " + R->to_string() +
                          ": neither counit component is a unit");
    }
    std::array<RingElement, 2> xp{xprime == 0 ? one : zero, xprime == 0 ? zero : one};
    // P = [u | xp]; P^-1 = adj(P)/det
    RingElement dinv = det.inverse();
    auto to_new_basis = [&](const std::array<RingElement, 2>& v) {
        // coordinates w with v = w[0]*u + w[1]*xp
        return std::array<RingElement, 2>{(xp[1] * v[0] - xp[0] * v[1]) * dinv,
                                          (u[0] * v[1] - u[1] * v[0]) * dinv};
    };

    // New h, t from X'^2 = t' u + h' X'.
    auto xp_sq = dual_product(xprime, xprime);
    auto th = to_new_basis(xp_sq);
    FrobeniusSystem s;
    s.ring = R;
    s.t = th[0];
    s.h = th[1];

    // Dual counit is evaluation at 1, i.e. the 1*-coordinate.
    s.eps1 = u[0];
    s.epsX = xp[0];

    // Dual comultiplication is the transpose of m: the (i (x) j)-coefficient
    // of Delta*(k*) is the k-coefficient of e_i e_j.
    auto mult_coeff = [&](int i, int j, int k) -> RingElement {
        // e_i e_j in the {1, X} basis
        if (i == 0 && j == 0) return k == 0 ? one : zero;
        if (i != j) return k == 0 ? zero : one;
        return k == 0 ? sys.t : sys.h;  // X^2
    };
    auto dual_delta = [&](const std::array<RingElement, 2>& f) {
        // coords of Delta*(f) in the dual tensor basis {i* (x) j*}
        std::array<RingElement, 4> c{zero, zero, zero, zero};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                c[2 * i + j] = f[0] * mult_coeff(i, j, 0) + f[1] * mult_coeff(i, j, 1);
        // transform both tensor factors to the {u, X'} basis
        std::array<RingElement, 4> out{zero, zero, zero, zero};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                auto col = to_new_basis({i == 0 ? one : zero, i == 0 ? zero : one});
                auto row = to_new_basis({j == 0 ? one : zero, j == 0 ? zero : one});
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) out[2 * p + q] += c[2 * i + j] * col[p] * row[q];
            }
        return out;
    };
    s.delta1 = dual_delta(u);
    s.deltaX = dual_delta(xp);
    s.name = "dual(" + sys.name + ")";
    return s;
}

F4Parameters recognize(const FrobeniusSystem& sys, const AElem& basis_witness) {
    const auto& R = sys.ring;
    const RingElement& al = basis_witness.c1;
    const RingElement& be = basis_witness.cX;
    if (!be.is_unit())
        throw DomainError("witness " + basis_witness.to_string() +
                          " does not complete {1} to a basis (X coefficient is not a unit)");
    RingElement binv = be.inverse();

    // X'^2 = t' + h' X' in the {1, X'} basis
    RingElement hp = RingElement::from_int(R, 2) * al + be * sys.h;
    RingElement tp = be * be * sys.t - al * al - al * be * sys.h;

    RingElement cp = -sys.eps1;
    RingElement ap = sys.counit(basis_witness);

    // Coordinates with respect to {1, X'}: 1 = 1, X = (X' - al)/be.
    auto to_prime = [&](const std::array<RingElement, 2>& v) {
        return std::array<RingElement, 2>{v[0] - al * binv * v[1], binv * v[1]};
    };
    auto tensor_to_prime = [&](const std::array<RingElement, 4>& v) {
        std::array<RingElement, 4> out{RingElement::zero(R), RingElement::zero(R),
                                       RingElement::zero(R), RingElement::zero(R)};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                auto ci = to_prime({i == 0 ? RingElement::one(R) : RingElement::zero(R),
                                    i == 0 ? RingElement::zero(R) : RingElement::one(R)});
                auto cj = to_prime({j == 0 ? RingElement::one(R) : RingElement::zero(R),
                                    j == 0 ? RingElement::zero(R) : RingElement::one(R)});
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) out[2 * p + q] += v[2 * i + j] * ci[p] * cj[q];
            }
        return out;
    };

    auto d1 = tensor_to_prime(sys.delta1);
    if (d1[1] != d1[2])
        throw DomainError("comultiplication of 1 is not cocommutative in the witness basis");
    RingElement dp = d1[0], fp = d1[1], ep = d1[3];
    if (dp != ep * tp - hp * fp)
        throw DomainError("comultiplication of 1 violates the bimodule constraint d = e t - h f");

    if (!(ap * ep - cp * fp).is_zero() || !(ap * fp + cp * hp * fp - cp * ep * tp - RingElement::one(R)).is_zero())
        throw DomainError("system does not satisfy the universal parameter relations");

    // Delta(X') must match the universal formula
    std::array<RingElement, 4> dX_actual;
    for (int i = 0; i < 4; ++i) dX_actual[i] = al * sys.delta1[i] + be * sys.deltaX[i];
    auto dXp = tensor_to_prime(dX_actual);
    std::array<RingElement, 4> dX_expected{fp * tp, ep * tp, ep * tp, fp + ep * hp};
    if (dXp != dX_expected)
        throw DomainError("comultiplication of the witness does not match the universal formula");

    return F4Parameters{ap, cp, ep, fp, hp, tp};
}

}  // namespace frobkh
