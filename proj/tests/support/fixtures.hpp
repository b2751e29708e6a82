// Golden-fixture plumbing shared by the fixture tests and the acceptance
// runner.  Each fixture is one JSON document under tests/data describing a
// small diagram together with its expected invariants, homology tables per
// coefficient ring, and a provenance note saying how the numbers were
// obtained.  Fixtures of equivalent diagrams point at each other through
// "equivalent_to"/"move" so invariance checks can enumerate the pairs.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "frobkh/complex.hpp"
#include "frobkh/cube.hpp"
#include "frobkh/diagram.hpp"
#include "frobkh/frobenius.hpp"
#include "frobkh/homology.hpp"

namespace frobkh::testing {

struct FixtureTorsion {
    std::string factor;
    int power = 1;
    int gen_q = 0;
    bool operator==(const FixtureTorsion&) const = default;
};

struct FixtureRow {
    int i = 0;
    int q = 0;
    int rank = 0;
    std::vector<FixtureTorsion> torsion;
    bool operator==(const FixtureRow&) const = default;
};

struct Fixture {
    std::string id;
    nlohmann::ordered_json input;  // {"pd": text} or {"braid": [...], "strands": n}
    int components = 1;
    std::string jones;
    int lee_rank = 0;
    std::optional<int> s;  // knots only
    std::map<std::string, std::vector<FixtureRow>> tables;
    std::string equivalent_to;  // id of a same-link fixture, empty when none
    std::string move;           // the move relating them: R1, R2, R3, redraw
    std::string provenance;
};

inline std::string data_dir() {
#ifdef FROBKH_TEST_DATA
    return FROBKH_TEST_DATA;
#else
    return "tests/data";
#endif
}

inline PlanarDiagram diagram_of(const Fixture& f) {
    if (f.input.contains("pd")) return PlanarDiagram::parse_pd(f.input["pd"].get<std::string>());
    return PlanarDiagram::from_braid(f.input["braid"].get<std::vector<int>>(),
                                     f.input["strands"].get<int>());
}

inline Fixture parse_fixture(const nlohmann::ordered_json& doc) {
    Fixture f;
    f.id = doc.at("id").get<std::string>();
    f.input = doc.at("input");
    f.components = doc.at("components").get<int>();
    f.jones = doc.at("jones").get<std::string>();
    f.lee_rank = doc.at("lee_rank").get<int>();
    if (doc.contains("s")) f.s = doc["s"].get<int>();
    for (const auto& [ring, rows] : doc.at("tables").items()) {
        std::vector<FixtureRow>& out = f.tables[ring];
        for (const auto& row : rows) {
            FixtureRow r{row.at("i").get<int>(), row.at("q").get<int>(),
                         row.at("rank").get<int>(), {}};
            for (const auto& t : row.at("torsion"))
                r.torsion.push_back({t.at("factor").get<std::string>(), t.at("power").get<int>(),
                                     t.at("gen_q").get<int>()});
            out.push_back(r);
        }
    }
    if (doc.contains("equivalent_to")) f.equivalent_to = doc["equivalent_to"].get<std::string>();
    if (doc.contains("move")) f.move = doc["move"].get<std::string>();
    f.provenance = doc.at("provenance").get<std::string>();
    return f;
}

inline std::vector<Fixture> load_fixtures(const std::string& dir = data_dir()) {
    std::vector<Fixture> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        out.push_back(parse_fixture(nlohmann::ordered_json::parse(in)));
    }
    std::sort(out.begin(), out.end(),
              [](const Fixture& a, const Fixture& b) { return a.id < b.id; });
    return out;
}

// The homology table a fixture ring name refers to.  Plain scalar rings
// extend the integral theory; a ring containing t extends the two-parameter
// theory; an X-variable ring asks for the module structure of the
// deformation.  The complex is reduced before homology purely for speed.
inline BigradedHomology table_for(const PlanarDiagram& d, const std::string& ring) {
    const auto target = RingSpec::parse(ring);
    const auto has = [&](const char* v) {
        for (const auto& var : target->vars())
            if (var.name == v) return true;
        return false;
    };
    if (has("X")) {
        const auto sys = make_system("f5");
        const auto lee = base_change(sys, RingHom::by_name(sys.ring, RingSpec::parse("Q[t]")));
        return bigraded_homology(simplify(build_x_module_complex(build_cube(d, lee))));
    }
    const auto sys = make_system(has("t") || has("h") ? "f5" : has("H") ? "f6" : "f1");
    auto C = flatten(build_cube(d, sys));
    if (target->to_string() != sys.ring->to_string())
        C = base_change_complex(C, RingHom::by_name(sys.ring, target));
    return bigraded_homology(simplify(C));
}

inline std::vector<FixtureRow> rows_of(const BigradedHomology& H) {
    std::vector<FixtureRow> out;
    for (const auto& [key, grp] : H.table) {
        FixtureRow r{key.first, key.second, grp.free_rank, {}};
        for (const auto& tp : grp.torsion)
            r.torsion.push_back({tp.base.to_string(), tp.power, tp.gen_q});
        out.push_back(r);
    }
    return out;
}

}  // namespace frobkh::testing
