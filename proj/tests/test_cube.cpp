#include "frobkh/cube.hpp"

#include <bit>
#include <vector>

#include "doctest.h"

using namespace frobkh;

namespace {

int height(int v) { return std::popcount(static_cast<unsigned>(v)); }

// Sum over both routes of a square face; zero iff the face anticommutes.
RingMatrix face_sum(const ResolutionCube& cube, int v, int c1, int c2, bool strip_signs) {
    const int n = cube.n();
    const int b1 = 1 << (n - 1 - c1);
    const int b2 = 1 << (n - 1 - c2);
    auto find_edge = [&](int from, int crossing) -> const CubeEdge& {
        for (const CubeEdge& e : cube.edges())
            if (e.from == from && e.crossing == crossing) return e;
        throw UsageError("edge not found");
    };
    auto mat = [&](const CubeEdge& e) {
        RingMatrix m = edge_matrix(cube, e);
        if (strip_signs && e.sign < 0) return -m;
        return m;
    };
    RingMatrix route1 = mat(find_edge(v | b1, c2)) * mat(find_edge(v, c1));
    RingMatrix route2 = mat(find_edge(v | b2, c1)) * mat(find_edge(v, c2));
    return strip_signs ? route1 - route2 : route1 + route2;
}

void check_all_faces(const ResolutionCube& cube) {
    const int n = cube.n();
    for (int v = 0; v < cube.vertex_count(); ++v) {
        for (int c1 = 0; c1 < n; ++c1) {
            for (int c2 = c1 + 1; c2 < n; ++c2) {
                if ((v >> (n - 1 - c1)) & 1) continue;
                if ((v >> (n - 1 - c2)) & 1) continue;
                CAPTURE(v);
                CAPTURE(c1);
                CAPTURE(c2);
                CHECK(face_sum(cube, v, c1, c2, false).is_zero());  // signed: anticommute
                CHECK(face_sum(cube, v, c1, c2, true).is_zero());   // unsigned: commute
            }
        }
    }
}

void check_edge_homogeneity(const ResolutionCube& cube) {
    for (const CubeEdge& e : cube.edges()) {
        RingMatrix m = edge_matrix(cube, e);
        for (int c = 0; c < m.cols(); ++c) {
            for (const auto& [r, val] : m.column(c)) {
                const int want = cube.label_qdeg(e.from, c) - 1 - cube.label_qdeg(e.to, r);
                CAPTURE(e.from);
                CAPTURE(e.crossing);
                CHECK(val.qdeg().fits(want));
            }
        }
    }
}

}  // namespace

TEST_CASE("cube shape and vertex indexing") {
    auto unknot = build_cube(PlanarDiagram::from_braid({}, 1), make_system("f1"));
    CHECK(unknot.vertex_count() == 1);
    CHECK(unknot.edges().empty());
    CHECK(unknot.vertex(0).k() == 1);
    CHECK(unknot.rank_at(0) == 2);

    auto tref = build_cube(PlanarDiagram::from_braid({1, 1, 1}, 2), make_system("f1"));
    CHECK(tref.vertex_count() == 8);
    CHECK(tref.edges().size() == 12);  // n * 2^(n-1)
    for (int v = 0; v < 8; ++v) CHECK(tref.vertex_index(tref.resolution_of(v)) == v);
    CHECK(tref.vertex_index({1, 0, 1}) == 5);
    CHECK(tref.rank_at(0) == 4);   // two circles at the all-zero vertex
    CHECK(tref.rank_at(7) == 8);   // three at the all-one vertex
    CHECK(tref.edges_from_height(0).size() == 3);
    CHECK(tref.edges_from_height(1).size() == 6);
    CHECK_THROWS_AS(tref.vertex_index({1, 0}), UsageError);
    CHECK_THROWS_AS(tref.vertex_index({1, 0, 2}), UsageError);
    CHECK_THROWS_AS(tref.vertex(8), UsageError);

    for (const CubeEdge& e : tref.edges()) {
        const int dk = tref.vertex(e.to).k() - tref.vertex(e.from).k();
        CHECK(dk == (e.is_merge ? -1 : 1));
        CHECK(height(e.to) == height(e.from) + 1);
    }

    CHECK(tref.label_qdeg(0, 0) == 2);   // 1 (x) 1
    CHECK(tref.label_qdeg(0, 1) == 0);   // 1 (x) X
    CHECK(tref.label_qdeg(0, 3) == -2);  // X (x) X
}

TEST_CASE("structure-map matrices on one-crossing diagrams") {
    // positive kink: the only edge is a merge
    auto kink = build_cube(PlanarDiagram::parse_pd("X[1,1,2,2]"), make_system("f1"));
    REQUIRE(kink.edges().size() == 1);
    const CubeEdge& merge = kink.edges()[0];
    CHECK(merge.is_merge);
    CHECK(merge.sign == 1);
    RingMatrix m = edge_matrix(kink, merge);
    const auto Z = RingSpec::integers();
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 4);
    CHECK(m.at(0, 0) == RingElement::one(Z));   // 1(x)1 -> 1
    CHECK(m.at(1, 1) == RingElement::one(Z));   // 1(x)X -> X
    CHECK(m.at(1, 2) == RingElement::one(Z));   // X(x)1 -> X
    for (int r = 0; r < 2; ++r) CHECK(m.at(r, 3).is_zero());  // X(x)X -> 0 when h = t = 0

    // with X^2 = hX + t the same edge sends X(x)X to t*1 + h*X
    auto kink5 = build_cube(PlanarDiagram::parse_pd("X[1,1,2,2]"), make_system("f5"));
    RingMatrix m5 = edge_matrix(kink5, kink5.edges()[0]);
    const auto ZHT = kink5.system().ring;
    CHECK(m5.at(0, 3) == RingElement::parse(ZHT, "t"));
    CHECK(m5.at(1, 3) == RingElement::parse(ZHT, "h"));

    // negative kink: the only edge is a split carrying the comultiplication
    auto nkink = build_cube(PlanarDiagram::parse_pd("X[1,2,2,1]"), make_system("f5"));
    REQUIRE(nkink.edges().size() == 1);
    const CubeEdge& split = nkink.edges()[0];
    CHECK_FALSE(split.is_merge);
    RingMatrix s = edge_matrix(nkink, split);
    CHECK(s.rows() == 4);
    CHECK(s.cols() == 2);
    CHECK(s.at(0, 0) == RingElement::parse(ZHT, "-h"));
    CHECK(s.at(1, 0) == RingElement::one(ZHT));
    CHECK(s.at(2, 0) == RingElement::one(ZHT));
    CHECK(s.at(3, 0).is_zero());
    CHECK(s.at(0, 1) == RingElement::parse(ZHT, "t"));
    CHECK(s.at(1, 1).is_zero());
    CHECK(s.at(2, 1).is_zero());
    CHECK(s.at(3, 1) == RingElement::one(ZHT));
}

TEST_CASE("Hopf link cube: two merges, two splits, anticommuting face") {
    auto cube = build_cube(PlanarDiagram::parse_pd("X[4,1,3,2] X[2,3,1,4]"), make_system("f1"));
    CHECK(cube.vertex_count() == 4);
    REQUIRE(cube.edges().size() == 4);
    int merges = 0, splits = 0;
    for (const CubeEdge& e : cube.edges()) (e.is_merge ? merges : splits)++;
    CHECK(merges == 2);
    CHECK(splits == 2);
    check_all_faces(cube);
    check_edge_homogeneity(cube);
}

TEST_CASE("faces anticommute and edges are homogeneous across diagrams and systems") {
    std::vector<PlanarDiagram> diagrams;
    diagrams.push_back(PlanarDiagram::from_braid({1, 1, 1}, 2));
    diagrams.push_back(PlanarDiagram::from_braid({1, -2, 1, -2}, 3));
    diagrams.push_back(PlanarDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"));
    for (const auto& d : diagrams) {
        for (const char* name : {"f1", "f5", "f2"}) {
            auto cube = build_cube(d, make_system(name));
            check_all_faces(cube);
            check_edge_homogeneity(cube);
        }
    }
}

TEST_CASE("twist isomorphism: identity element") {
    auto f5 = make_system("f5");
    const auto& R = f5.ring;
    AElem one{RingElement::one(R), RingElement::zero(R)};
    auto d = PlanarDiagram::from_braid({1, 1}, 2);
    auto iso = twist_cube_isomorphism(d, f5, one);
    auto cube = build_cube(d, f5);
    for (int v = 0; v < cube.vertex_count(); ++v)
        CHECK(iso.vertex_matrix(cube, v) ==
              RingMatrix::identity(R, cube.rank_at(v)));
}

TEST_CASE("twist isomorphism: 1 + cX carries the deformed theory to the plain one") {
    auto f2 = make_system("f2");
    const auto& R = f2.ring;
    AElem y{RingElement::one(R), RingElement::parse(R, "c")};

    for (const char* pd : {"X[4,1,3,2] X[2,3,1,4]", "X[1,3,4,2] X[3,5,6,4] X[5,1,2,6]"}) {
        auto d = PlanarDiagram::parse_pd(pd);
        // construction verifies conjugation on every edge internally
        auto iso = twist_cube_isomorphism(d, f2, y);
        auto base = build_cube(d, f2);

        // exponent totals at a vertex count the splits on any path from the
        // all-zero vertex
        for (int v = 0; v < base.vertex_count(); ++v) {
            int total = 0;
            for (int e : iso.exponents[v]) total += e;
            const int expect =
                (height(v) + base.vertex(v).k() - base.vertex(0).k()) / 2;
            CHECK(total == expect);
        }

        // the twisted system's cube coincides with the undeformed theory
        // extended by the free variable c
        auto twisted_cube = build_cube(d, twist(f2, y));
        auto plain = make_custom(R, RingElement::zero(R), RingElement::zero(R));
        auto plain_cube = build_cube(d, plain);
        REQUIRE(twisted_cube.edges().size() == plain_cube.edges().size());
        for (size_t i = 0; i < twisted_cube.edges().size(); ++i)
            CHECK(edge_matrix(twisted_cube, twisted_cube.edges()[i]) ==
                  edge_matrix(plain_cube, plain_cube.edges()[i]));
    }
}

TEST_CASE("twist isomorphism: non-trivial invertible element over a field") {
    // X is invertible when t is: X * X/t = (hX + t)/t with h = 0, t = 1
    auto Q = RingSpec::rationals();
    auto lee = make_custom(Q, RingElement::zero(Q), RingElement::one(Q));
    AElem x{RingElement::zero(Q), RingElement::one(Q)};
    auto d = PlanarDiagram::from_braid({1, -1}, 2);
    CHECK_NOTHROW(twist_cube_isomorphism(d, lee, x));

    auto d2 = PlanarDiagram::from_braid({1, 1, 1}, 2);
    CHECK_NOTHROW(twist_cube_isomorphism(d2, lee, x));
}

TEST_CASE("twist isomorphism rejects non-invertible elements") {
    auto f1 = make_system("f1");
    const auto& Z = f1.ring;
    AElem x{RingElement::zero(Z), RingElement::one(Z)};  // X has X^2 = 0
    auto d = PlanarDiagram::parse_pd("X[1,1,2,2]");
    CHECK_THROWS_AS(twist_cube_isomorphism(d, f1, x), DomainError);
}
