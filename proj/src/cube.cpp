#include "frobkh/cube.hpp"

#include <bit>
#include <cstdlib>
#include <map>
#include <utility>

#include <gmpxx.h>

namespace frobkh {

namespace {

int height_of(int v) { return std::popcount(static_cast<unsigned>(v)); }

}  // namespace

ResolutionCube::ResolutionCube(PlanarDiagram d, FrobeniusSystem sys)
    : diagram_(std::move(d)), system_(std::move(sys)) {
    const int n = diagram_.n();
    if (n > 20) throw UsageError("cube construction supports at most 20 crossings");
    const int count = 1 << n;
    vertices_.reserve(count);
    for (int v = 0; v < count; ++v) vertices_.push_back(diagram_.resolve(resolution_of(v)));

    for (int v = 0; v < count; ++v) {
        for (int c = 0; c < n; ++c) {
            const int bit = 1 << (n - 1 - c);
            if (v & bit) continue;
            CubeEdge e;
            e.from = v;
            e.to = v | bit;
            e.crossing = c;
            const ResolvedState& s = vertices_[e.from];
            const ResolvedState& t = vertices_[e.to];
            if (std::abs(t.k() - s.k()) != 1)
                throw DomainError("resolution change is neither a merge nor a split");
            e.is_merge = t.k() == s.k() - 1;
            int ones = 0;
            for (int j = 0; j < c; ++j)
                if (v & (1 << (n - 1 - j))) ++ones;
            e.sign = (ones % 2 == 0) ? 1 : -1;
            // Circles are matched through a representative member; the two
            // positions sharing an image identify the merging/splitting pair.
            if (e.is_merge) {
                e.matching.resize(s.k());
                std::vector<int> seen(t.k(), -1);
                for (int i = 0; i < s.k(); ++i) {
                    const int ti = t.circle_containing(s.circles[i].front());
                    e.matching[i] = ti;
                    if (seen[ti] >= 0) {
                        e.pos_a = seen[ti];
                        e.pos_b = i;
                        e.pos_c = ti;
                    } else {
                        seen[ti] = i;
                    }
                }
            } else {
                e.matching.resize(t.k());
                std::vector<int> seen(s.k(), -1);
                for (int i = 0; i < t.k(); ++i) {
                    const int si = s.circle_containing(t.circles[i].front());
                    e.matching[i] = si;
                    if (seen[si] >= 0) {
                        e.pos_a = seen[si];
                        e.pos_b = i;
                        e.pos_c = si;
                    } else {
                        seen[si] = i;
                    }
                }
            }
            edges_.push_back(std::move(e));
        }
    }
}

int ResolutionCube::vertex_index(const std::vector<int>& r) const {
    const int n = diagram_.n();
    if (static_cast<int>(r.size()) != n)
        throw UsageError("resolution vector length does not match the crossing count");
    int v = 0;
    for (int c = 0; c < n; ++c) {
        if (r[c] != 0 && r[c] != 1) throw UsageError("resolution entries must be 0 or 1");
        if (r[c]) v |= 1 << (n - 1 - c);
    }
    return v;
}

std::vector<int> ResolutionCube::resolution_of(int v) const {
    const int n = diagram_.n();
    if (v < 0 || v >= (1 << n)) throw UsageError("vertex index out of range");
    std::vector<int> r(n);
    for (int c = 0; c < n; ++c) r[c] = (v >> (n - 1 - c)) & 1;
    return r;
}

const ResolvedState& ResolutionCube::vertex(int v) const {
    if (v < 0 || v >= vertex_count()) throw UsageError("vertex index out of range");
    return vertices_[v];
}

int ResolutionCube::rank_at(int v) const { return 1 << vertex(v).k(); }

int ResolutionCube::label_qdeg(int v, int basis_index) const {
    const int k = vertex(v).k();
    if (basis_index < 0 || basis_index >= (1 << k)) throw UsageError("basis index out of range");
    return k - 2 * std::popcount(static_cast<unsigned>(basis_index));
}

std::vector<const CubeEdge*> ResolutionCube::edges_from_height(int h) const {
    std::vector<const CubeEdge*> out;
    for (const CubeEdge& e : edges_)
        if (height_of(e.from) == h) out.push_back(&e);
    return out;
}

ResolutionCube build_cube(const PlanarDiagram& d, const FrobeniusSystem& sys) {
    return ResolutionCube(d, sys);
}

RingMatrix edge_matrix(const ResolutionCube& cube, const CubeEdge& e) {
    const FrobeniusSystem& sys = cube.system();
    const RingSpecPtr& R = sys.ring;
    const ResolvedState& src = cube.vertex(e.from);
    const ResolvedState& tgt = cube.vertex(e.to);
    const int ks = src.k();
    const int kt = tgt.k();
    RingMatrix M(R, 1 << kt, 1 << ks);
    const RingElement sgn = RingElement::from_int(R, e.sign);
    const RingElement one = RingElement::one(R);
    const RingElement zero = RingElement::zero(R);
    auto src_label = [ks](int col, int pos) { return (col >> (ks - 1 - pos)) & 1; };

    for (int col = 0; col < (1 << ks); ++col) {
        if (e.is_merge) {
            int base = 0;
            for (int s = 0; s < ks; ++s) {
                if (s == e.pos_a || s == e.pos_b) continue;
                if (src_label(col, s)) base |= 1 << (kt - 1 - e.matching[s]);
            }
            const int la = src_label(col, e.pos_a);
            const int lb = src_label(col, e.pos_b);
            // label product: 1*1 = 1, 1*X = X*1 = X, X*X = t + hX
            const RingElement c1 = (la && lb) ? sys.t : ((la || lb) ? zero : one);
            const RingElement cX = (la && lb) ? sys.h : ((la != lb) ? one : zero);
            if (!c1.is_zero()) M.set(base, col, c1 * sgn);
            if (!cX.is_zero()) M.set(base | (1 << (kt - 1 - e.pos_c)), col, cX * sgn);
        } else {
            int base = 0;
            for (int tp = 0; tp < kt; ++tp) {
                if (tp == e.pos_a || tp == e.pos_b) continue;
                if (src_label(col, e.matching[tp])) base |= 1 << (kt - 1 - tp);
            }
            const auto& dd = src_label(col, e.pos_c) ? sys.deltaX : sys.delta1;
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const RingElement& cf = dd[2 * i + j];
                    if (cf.is_zero()) continue;
                    const int row =
                        base | (i << (kt - 1 - e.pos_a)) | (j << (kt - 1 - e.pos_b));
                    M.set(row, col, M.at(row, col) + cf * sgn);
                }
            }
        }
    }
    return M;
}

namespace {

// Incremental solver for sparse linear equations over Q: each added equation
// either eliminates one variable (expressed over the remaining free ones) or
// must already be satisfied.  Reading a value afterwards sets all remaining
// free variables to zero.
class LinearSolver {
  public:
    void add(std::map<int, mpq_class> lhs, mpq_class rhs) {
        mpq_class cst = 0;
        std::map<int, mpq_class> expr;
        for (const auto& [v, coef] : lhs) {
            if (coef == 0) continue;
            auto it = solved_.find(v);
            if (it == solved_.end()) {
                expr[v] += coef;
            } else {
                cst += coef * it->second.constant;
                for (const auto& [fv, fc] : it->second.terms) expr[fv] += coef * fc;
            }
        }
        for (auto it = expr.begin(); it != expr.end();)
            it = (it->second == 0) ? expr.erase(it) : std::next(it);
        if (expr.empty()) {
            if (cst != rhs)
                throw DomainError("cube isomorphism constraints are inconsistent (internal)");
            return;
        }
        const int var = expr.begin()->first;
        const mpq_class pivot = expr.begin()->second;
        Expr sol;
        sol.constant = (rhs - cst) / pivot;
        for (const auto& [fv, fc] : expr)
            if (fv != var) sol.terms[fv] = -fc / pivot;
        for (auto& [sv, se] : solved_) {
            auto f = se.terms.find(var);
            if (f == se.terms.end()) continue;
            const mpq_class c = f->second;
            se.terms.erase(f);
            se.constant += c * sol.constant;
            for (const auto& [fv, fc] : sol.terms) {
                se.terms[fv] += c * fc;
                if (se.terms[fv] == 0) se.terms.erase(fv);
            }
        }
        solved_[var] = std::move(sol);
    }

    mpq_class value(int var) const {
        auto it = solved_.find(var);
        return it == solved_.end() ? mpq_class(0) : it->second.constant;
    }

  private:
    struct Expr {
        std::map<int, mpq_class> terms;
        mpq_class constant;
    };
    std::map<int, Expr> solved_;
};

}  // namespace

RingMatrix CubeIsomorphism::vertex_matrix(const ResolutionCube& base, int v) const {
    const FrobeniusSystem& sys = base.system();
    const RingSpecPtr& R = sys.ring;
    auto mult_by = [&](const AElem& a) {
        // columns a*1 = (c1, cX) and a*X = (cX*t, c1 + cX*h)
        RingMatrix m(R, 2, 2);
        m.set(0, 0, a.c1);
        m.set(1, 0, a.cX);
        m.set(0, 1, a.cX * sys.t);
        m.set(1, 1, a.c1 + a.cX * sys.h);
        return m;
    };
    RingMatrix out = RingMatrix::identity(R, 1);
    for (int c = 0; c < base.vertex(v).k(); ++c) {
        const int exp = exponents[v][c];
        RingMatrix f = RingMatrix::identity(R, 2);
        const RingMatrix step = mult_by(exp >= 0 ? y : y_inverse);
        for (int i = 0; i < std::abs(exp); ++i) f = f * step;
        out = kron(out, f);
    }
    return out;
}

CubeIsomorphism twist_cube_isomorphism(const PlanarDiagram& d, const FrobeniusSystem& sys,
                                       const AElem& y) {
    auto yinv = invert_in_A(sys, y);
    if (!yinv) throw DomainError("twisting element is not invertible");

    const ResolutionCube base(d, sys);
    std::vector<int> var_base(base.vertex_count() + 1, 0);
    for (int v = 0; v < base.vertex_count(); ++v)
        var_base[v + 1] = var_base[v] + base.vertex(v).k();

    // One exponent variable per (vertex, circle).  The identity is imposed at
    // the all-zero vertex; a merge forces the target exponent to be the sum
    // of the merging pair's, a split forces the child exponents to sum to the
    // source's plus one, and matched circles keep their exponents.
    LinearSolver solver;
    for (int c = 0; c < base.vertex(0).k(); ++c) solver.add({{var_base[0] + c, 1}}, 0);
    for (const CubeEdge& e : base.edges()) {
        if (e.is_merge) {
            for (int s = 0; s < base.vertex(e.from).k(); ++s) {
                if (s == e.pos_a || s == e.pos_b) continue;
                solver.add({{var_base[e.from] + s, 1}, {var_base[e.to] + e.matching[s], -1}}, 0);
            }
            solver.add({{var_base[e.from] + e.pos_a, 1},
                        {var_base[e.from] + e.pos_b, 1},
                        {var_base[e.to] + e.pos_c, -1}},
                       0);
        } else {
            for (int tp = 0; tp < base.vertex(e.to).k(); ++tp) {
                if (tp == e.pos_a || tp == e.pos_b) continue;
                solver.add({{var_base[e.to] + tp, 1}, {var_base[e.from] + e.matching[tp], -1}},
                           0);
            }
            solver.add({{var_base[e.to] + e.pos_a, 1},
                        {var_base[e.to] + e.pos_b, 1},
                        {var_base[e.from] + e.pos_c, -1}},
                       1);
        }
    }

    CubeIsomorphism iso;
    iso.y = y;
    iso.y_inverse = *yinv;
    iso.exponents.resize(base.vertex_count());
    for (int v = 0; v < base.vertex_count(); ++v) {
        iso.exponents[v].resize(base.vertex(v).k());
        for (int c = 0; c < base.vertex(v).k(); ++c) {
            const mpq_class val = solver.value(var_base[v] + c);
            if (val.get_den() != 1)
                throw DomainError("cube isomorphism exponents are not integral (internal)");
            iso.exponents[v][c] = static_cast<int>(val.get_num().get_si());
        }
    }

    // Exact entry-level check on every edge: untwisted o iso = iso o twisted.
    const ResolutionCube twisted(d, twist(sys, y));
    for (const CubeEdge& e : base.edges()) {
        const RingMatrix lhs = edge_matrix(base, e) * iso.vertex_matrix(base, e.from);
        const RingMatrix rhs = iso.vertex_matrix(base, e.to) * edge_matrix(twisted, e);
        if (lhs != rhs)
            throw DomainError("cube isomorphism verification failed (internal)");
    }
    return iso;
}

}  // namespace frobkh
