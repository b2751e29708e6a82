// End-to-end checks of the command-line surface, run in-process: exit codes,
// stream discipline (errors never leave partial output), text/JSON agreement,
// and byte-level determinism across repeated and multi-threaded runs.

#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "frobkh/cli.hpp"
#include "frobkh/complex.hpp"
#include "frobkh/cube.hpp"
#include "frobkh/diagram.hpp"
#include "frobkh/frobenius.hpp"
#include "frobkh/homology.hpp"

using namespace frobkh;
using ojson = nlohmann::ordered_json;

namespace {

struct RunResult {
    int code = 0;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

const std::vector<std::string> kTrefoil{"--braid", "1,1,1", "--strands", "2"};

std::vector<std::string> with_input(std::vector<std::string> args,
                                    const std::vector<std::string>& input = kTrefoil) {
    args.insert(args.end(), input.begin(), input.end());
    return args;
}

}  // namespace

TEST_CASE("jones command: text and json output") {
    auto r = run(with_input({"jones"}));
    CHECK(r.code == 0);
    CHECK(r.out == "q + q^3 + q^5 - q^9\n");
    CHECK(r.err.empty());

    // small enough to pin the full JSON document byte for byte
    auto u = run({"jones", "--braid", "", "--strands", "1", "--format", "json"});
    CHECK(u.code == 0);
    CHECK(u.out ==
          "{\n"
          "  \"input\": {\n"
          "    \"braid\": [],\n"
          "    \"strands\": 1\n"
          "  },\n"
          "  \"jones\": \"q^-1 + q\"\n"
          "}\n");
}

TEST_CASE("homology command: trefoil tables in both formats") {
    auto r = run(with_input({"homology", "--system", "f1"}));
    CHECK(r.code == 0);
    CHECK(r.out ==
          "homology over Z:\n"
          "  i=0 q=1: rank 1\n"
          "  i=0 q=3: rank 1\n"
          "  i=2 q=5: rank 1\n"
          "  i=3 q=7: rank 0, torsion 2^1\n"
          "  i=3 q=9: rank 1\n");

    auto j = run(with_input({"homology", "--system", "f1", "--format", "json"}));
    REQUIRE(j.code == 0);
    const ojson doc = ojson::parse(j.out);
    CHECK(doc["system"] == "f1");
    CHECK(doc["coefficients"] == "Z");
    REQUIRE(doc["homology"].size() == 5);

    // rows come sorted by (i, q); the torsion row carries its own generator degree
    const ojson& row = doc["homology"][3];
    CHECK(row["i"] == 3);
    CHECK(row["q"] == 7);
    CHECK(row["rank"] == 0);
    REQUIRE(row["torsion"].size() == 1);
    CHECK(row["torsion"][0] == ojson{{"factor", "2"}, {"power", 1}, {"gen_q", 7}});

    // every numeric fact in the text rendering is present in the JSON one
    int total_rank = 0;
    for (const auto& entry : doc["homology"]) total_rank += entry["rank"].get<int>();
    CHECK(total_rank == 4);
}

TEST_CASE("homology command: coefficient choices") {
    auto q = run(with_input({"homology", "--coeffs", "Q", "--format", "json"}));
    REQUIRE(q.code == 0);
    const ojson doc = ojson::parse(q.out);
    CHECK(doc["coefficients"] == "Q");
    for (const auto& entry : doc["homology"]) CHECK(entry["torsion"].empty());

    auto f2 = run(with_input({"homology", "--coeffs", "F2"}));
    CHECK(f2.code == 0);
    CHECK(f2.out.find("i=2 q=7") != std::string::npos);  // the extra mod-2 spot

    auto qt = run(with_input({"homology", "--system", "f5", "--coeffs", "Q[t]"}));
    CHECK(qt.code == 0);
    CHECK(qt.out.find("torsion t^1") != std::string::npos);

    // the X-variable ring routes through the module structure of the deformation
    auto qx = run(with_input({"homology", "--system", "f5", "--coeffs", "Q[X]"}));
    CHECK(qx.code == 0);
    CHECK(qx.out ==
          "homology over Q[X]:\n"
          "  i=0 q=3: rank 1\n"
          "  i=3 q=9: rank 0, torsion X^1\n");
}

TEST_CASE("s, lee-rank and decompose commands") {
    auto s = run(with_input({"s"}));
    CHECK(s.code == 0);
    CHECK(s.out == "s = 2\n");

    auto lee = run({"lee-rank", "--braid", "1,1", "--strands", "2"});
    CHECK(lee.code == 0);
    CHECK(lee.out == "lee rank = 4\n");

    auto d = run(with_input({"decompose", "--format", "json"}));
    REQUIRE(d.code == 0);
    const ojson doc = ojson::parse(d.out);
    CHECK(doc["system"] == "f5");  // decompose defaults to the two-parameter theory
    CHECK(doc["coefficients"] == "Q[X]");
    CHECK(doc["pieces"] == ojson::array({ojson{{"m", 1}, {"i", 3}, {"q_top", 9}}}));
    CHECK(doc["free_summands"] == ojson::array({ojson{{"i", 0}, {"q", 3}}}));
}

TEST_CASE("verify-axioms command") {
    for (const char* name : {"f1", "f2", "f3", "f5", "f6", "f7"}) {
        auto r = run({"verify-axioms", "--system", name});
        CHECK(r.code == 0);
        CHECK(r.out.find("axioms ok") == 0);
    }
    auto c = run({"verify-axioms", "--system", "custom:ring=F2(u),h=0,t=u", "--format", "json"});
    REQUIRE(c.code == 0);
    const ojson doc = ojson::parse(c.out);
    CHECK(doc["ok"] == true);
    CHECK(doc["failures"].empty());

    auto bad = run({"verify-axioms", "--system", "f9"});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("--system") != std::string::npos);
}

TEST_CASE("twist-check and mirror-check commands") {
    auto t = run(with_input({"twist-check", "--format", "json"}));
    REQUIRE(t.code == 0);
    const ojson tdoc = ojson::parse(t.out);
    CHECK(tdoc["ok"] == true);
    CHECK(tdoc["edges"] == 12);  // 3 crossings: 3 * 2^2 cube edges

    for (const char* coeffs : {"Q", "Z", "F2"}) {
        auto m = run(with_input({"mirror-check", "--coeffs", coeffs},
                                {"--braid", "1,-2,1,-2", "--strands", "3"}));
        CHECK(m.code == 0);
        CHECK(m.out.find("mirror check ok") == 0);
    }
}

TEST_CASE("simplify command matches the library result") {
    auto r = run({"simplify", "--braid", "1,-2", "--strands", "3", "--coeffs", "Q"});
    CHECK(r.code == 0);
    const auto d = PlanarDiagram::from_braid({1, -2}, 3);
    const auto sys = make_system("f1");
    const auto C = simplify(base_change_complex(
        flatten(build_cube(d, sys)), RingHom::by_name(sys.ring, RingSpec::parse("Q"))));
    CHECK(r.out == C.to_text());

    auto j = run({"simplify", "--braid", "1,-2", "--strands", "3", "--coeffs", "Q", "--format",
                  "json"});
    REQUIRE(j.code == 0);
    const ojson doc = ojson::parse(j.out);
    CHECK(doc["complex"]["total_rank"] == 2);
    CHECK(doc["complex"]["nonzero_entries"] == 0);
    CHECK(doc["complex"]["generators"] ==
          ojson::array({ojson{{"i", 0}, {"q", -1}, {"count", 1}},
                        ojson{{"i", 0}, {"q", 1}, {"count", 1}}}));
}

TEST_CASE("usage errors exit 2, name the flag, and print no table") {
    const std::vector<std::vector<std::string>> bad = {
        {"homology"},                                                    // no input
        {"homology", "--pd", "X[1,2"},                                   // malformed pd
        {"homology", "--braid", "1,x", "--strands", "2"},                // malformed braid
        {"homology", "--braid", "1", "--strands", "2", "--pd", "X[1,2,3,4]"},  // both
        {"homology", "--braid", "1,1"},                                  // missing strands
        {"homology", "--pd", "X[1,4,2,5]", "--strands", "2"},            // strands without braid
        {"s", "--braid", "1,1", "--strands", "2"},                       // s of a link
        {"homology", "--braid", "1,1,1", "--strands", "2", "--format", "yaml"},
        {"frobnicate"},                                                  // unknown command
        {"homology", "--braid", "5", "--strands", "2"},                  // generator out of range
    };
    for (const auto& args : bad) {
        auto r = run(args);
        CAPTURE(args[0]);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(!r.err.empty());
    }

    auto pd = run({"homology", "--pd", "garbage"});
    CHECK(pd.err.find("--pd") != std::string::npos);
    auto braid = run({"homology", "--braid", "1,x", "--strands", "2"});
    CHECK(braid.err.find("--braid") != std::string::npos);
}

TEST_CASE("domain errors exit 1 and print no table") {
    // a perfectly valid request whose coefficient ring has no division algorithm
    auto r = run(with_input({"homology", "--system", "f2"}));
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("Z[c]") != std::string::npos);

    auto ht = run(with_input({"homology", "--system", "f5"}));
    CHECK(ht.code == 1);
    CHECK(ht.out.empty());

    // the X-module route needs the deformation parameter to survive base change
    auto qx = run(with_input({"homology", "--system", "f1", "--coeffs", "Q[X]"}));
    CHECK(qx.code == 1);
    CHECK(qx.out.empty());
}

TEST_CASE("output is byte-identical across runs and thread counts") {
    const auto args =
        with_input({"homology", "--system", "f1", "--coeffs", "Z", "--format", "json"},
                   {"--braid", "1,-2,1,-2", "--strands", "3"});
    const auto first = run(args);
    REQUIRE(first.code == 0);
    CHECK(run(args).out == first.out);

    setenv("FROBKH_THREADS", "4", 1);
    auto threaded = run(args);
    setenv("FROBKH_THREADS", "0", 1);
    auto autod = run(args);
    unsetenv("FROBKH_THREADS");
    set_thread_cap(1);
    CHECK(threaded.code == 0);
    CHECK(threaded.out == first.out);
    CHECK(autod.out == first.out);

    setenv("FROBKH_THREADS", "many", 1);
    auto bad = run({"jones", "--braid", "1", "--strands", "2"});
    unsetenv("FROBKH_THREADS");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("FROBKH_THREADS") != std::string::npos);
}

TEST_CASE("help exits 0 and lists the commands") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    for (const char* cmd : {"homology", "jones", "s", "lee-rank", "decompose", "verify-axioms",
                            "twist-check", "mirror-check", "simplify"})
        CHECK(r.out.find(cmd) != std::string::npos);
}
