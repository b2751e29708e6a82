#include "frobkh/invariants.hpp"

#include <bit>
#include <map>

#include "frobkh/complex.hpp"
#include "frobkh/cube.hpp"
#include "frobkh/frobenius.hpp"

namespace frobkh {

namespace {

// Circles of one state, found by walking the arc graph: every edge id is
// joined to exactly two partners across the smoothed crossings, so the
// graph is a disjoint union of cycles.
int state_circles(const PlanarDiagram& d, unsigned long state) {
    struct Arc {
        int a, b;
    };
    std::vector<Arc> arcs;
    std::map<int, std::vector<int>> incident;  // node -> the two arc ids at it
    auto join = [&](int x, int y) {
        const int id = static_cast<int>(arcs.size());
        arcs.push_back({x, y});
        incident[x].push_back(id);
        incident[y].push_back(id);
    };
    const auto& cs = d.crossings();
    for (size_t c = 0; c < cs.size(); ++c) {
        const auto& e = cs[c].e;
        if (state >> c & 1) {
            join(e[0], e[3]);
            join(e[1], e[2]);
        } else {
            join(e[0], e[1]);
            join(e[2], e[3]);
        }
    }
    int circles = 0;
    std::vector<bool> visited(arcs.size(), false);
    for (size_t a0 = 0; a0 < arcs.size(); ++a0) {
        if (visited[a0]) continue;
        ++circles;
        int a = static_cast<int>(a0);
        int node = arcs[a0].a;
        while (!visited[a]) {
            visited[a] = true;
            node = arcs[a].a == node ? arcs[a].b : arcs[a].a;
            const auto& inc = incident[node];
            a = inc[0] == a ? inc[1] : inc[0];
        }
    }
    return circles;
}

FrobeniusSystem lee_type_system() {
    auto f5 = make_system("f5");
    return base_change(f5, RingHom::by_name(f5.ring, RingSpec::parse("Q[t]")));
}

}  // namespace

LaurentPoly kauffman_bracket_jones(const PlanarDiagram& d) {
    const int n = static_cast<int>(d.crossings().size());
    const LaurentPoly loop = LaurentPoly::parse("q + q^-1");
    const int shift = d.n_plus() - 2 * d.n_minus();
    LaurentPoly total;
    for (unsigned long state = 0; state < (1ul << n); ++state) {
        const int w = std::popcount(state);
        const int k = state_circles(d, state) + d.free_loops();
        const long sign = (w - d.n_minus()) % 2 ? -1 : 1;
        total = total + loop.pow(k) * LaurentPoly::monomial(w + shift, sign);
    }
    return total;
}

int lee_rank(const PlanarDiagram& d) {
    auto H = bigraded_homology(simplify(flatten(build_cube(d, lee_type_system()))));
    return static_cast<int>(pid_decompose(H).free_summands.size());
}

int s_invariant(const PlanarDiagram& d) {
    if (d.components() != 1)
        throw UsageError("the s-invariant is defined for knots; this diagram has " +
                         std::to_string(d.components()) + " components");
    auto H =
        bigraded_homology(simplify(build_x_module_complex(build_cube(d, lee_type_system()))));
    auto parts = pid_decompose(H);
    if (parts.free_summands.size() != 1)
        throw DomainError("X-module homology of a knot should have a rank-one free part, got " +
                          std::to_string(parts.free_summands.size()));
    return parts.free_summands[0].second - 1;
}

int reduced_dim_prediction(const PidSummary& pieces, int rational_dim) {
    int towers = 0;
    for (const auto& p : pieces.pieces)
        if (p.m > 1) ++towers;
    return rational_dim - 1 - 2 * towers;
}

InvariantReport compute_invariants(const PlanarDiagram& d) {
    InvariantReport rep;
    rep.jones = kauffman_bracket_jones(d);
    rep.components = d.components();
    rep.lee_rank = lee_rank(d);
    if (rep.components == 1) {
        auto H = bigraded_homology(
            simplify(build_x_module_complex(build_cube(d, lee_type_system()))));
        auto parts = pid_decompose(H);
        if (parts.free_summands.size() != 1)
            throw DomainError(
                "X-module homology of a knot should have a rank-one free part, got " +
                std::to_string(parts.free_summands.size()));
        rep.s = parts.free_summands[0].second - 1;
        rep.pieces = parts.pieces;

        auto C = flatten(build_cube(d, make_system("f1")));
        auto CQ = base_change_complex(C, RingHom::by_name(C.ring, RingSpec::rationals()));
        const int rational_dim = bigraded_homology(simplify(CQ)).total_free_rank();
        rep.predicted_reduced_dim = reduced_dim_prediction(parts, rational_dim);
    }
    return rep;
}

}  // namespace frobkh
