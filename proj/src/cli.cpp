#include "frobkh/cli.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "frobkh/complex.hpp"
#include "frobkh/cube.hpp"
#include "frobkh/diagram.hpp"
#include "frobkh/frobenius.hpp"
#include "frobkh/homology.hpp"
#include "frobkh/invariants.hpp"

namespace frobkh {
namespace {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// input handling

std::vector<int> parse_braid_word(const std::string& text) {
    std::vector<int> word;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        const auto a = token.find_first_not_of(" \t");
        if (a == std::string::npos)
            throw UsageError("--braid: empty entry in braid word '" + text + "'");
        const auto b = token.find_last_not_of(" \t");
        token = token.substr(a, b - a + 1);
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || v == 0)
            throw UsageError("--braid: bad generator '" + token +
                             "' (want nonzero integers like 1,-2)");
        word.push_back(v);
    }
    return word;
}

struct ParsedInput {
    PlanarDiagram diagram;
    ojson descriptor;  // echoed back under the "input" key
};

ParsedInput diagram_from(const JobConfig& cfg, bool pd_given, bool braid_given,
                         const std::string& braid_text) {
    if (pd_given && braid_given)
        throw UsageError("give exactly one of --pd or --braid, not both");
    if (!pd_given && !braid_given)
        throw UsageError("an input diagram is required: --pd <text> or --braid <word> --strands <n>");
    if (pd_given) {
        if (cfg.strands != 0) throw UsageError("--strands only applies to --braid input");
        try {
            return {PlanarDiagram::parse_pd(cfg.pd), ojson{{"pd", cfg.pd}}};
        } catch (const UsageError& e) {
            throw UsageError(std::string("--pd: ") + e.what());
        }
    }
    if (cfg.strands < 1) throw UsageError("--braid needs --strands with a positive count");
    const std::vector<int> word = parse_braid_word(braid_text);
    try {
        return {PlanarDiagram::from_braid(word, cfg.strands),
                ojson{{"braid", word}, {"strands", cfg.strands}}};
    } catch (const UsageError& e) {
        throw UsageError(std::string("--braid: ") + e.what());
    }
}

FrobeniusSystem system_from(const std::string& name) {
    try {
        return make_system(name);
    } catch (const UsageError& e) {
        throw UsageError(std::string("--system: ") + e.what());
    }
}

RingSpecPtr coeff_ring_from(const std::string& text) {
    try {
        return RingSpec::parse(text);
    } catch (const UsageError& e) {
        throw UsageError(std::string("--coeffs: ") + e.what());
    }
}

bool is_x_module_ring(const RingSpecPtr& r) {
    return r->vars().size() == 1 && r->vars()[0].name == "X" && !r->is_fraction_field();
}

// The chain complex a homology/simplify job asks for.  Plain coefficient
// changes go through the ring map matching variables by name; an X-variable
// polynomial ring instead requests the module structure over K[X] carried by
// the deformed theory with t mapped to the ring variable.
GradedComplex complex_for(const PlanarDiagram& d, const FrobeniusSystem& sys,
                          const std::string& coeffs) {
    if (coeffs.empty()) return flatten(build_cube(d, sys));
    const RingSpecPtr target = coeff_ring_from(coeffs);
    if (is_x_module_ring(target)) {
        if (target->scalar() != ScalarKind::rationals)
            throw UsageError("--coeffs: the X-module route supports Q[X] only");
        const auto qt = RingSpec::parse("Q[t]");
        const auto lee = base_change(sys, RingHom::by_name(sys.ring, qt));
        return build_x_module_complex(build_cube(d, lee));
    }
    const auto C = flatten(build_cube(d, sys));
    return base_change_complex(C, RingHom::by_name(sys.ring, target));
}

// ---------------------------------------------------------------------------
// formatting

// Ascending powers of q, e.g. "q + q^3 + q^5 - q^9".
std::string laurent_ascending(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, coeff] : p.terms()) {
        mpz_class a = coeff;
        const bool neg = a < 0;
        if (neg) a = -a;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (exp == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << (exp == 1 ? "q" : "q^" + std::to_string(exp));
    }
    return os.str();
}

ojson homology_to_json(const BigradedHomology& H) {
    ojson rows = ojson::array();
    for (const auto& [key, grp] : H.table) {
        ojson torsion = ojson::array();
        for (const auto& tp : grp.torsion)
            torsion.push_back(ojson{{"factor", tp.base.to_string()},
                                    {"power", tp.power},
                                    {"gen_q", tp.gen_q}});
        rows.push_back(ojson{{"i", key.first},
                             {"q", key.second},
                             {"rank", grp.free_rank},
                             {"torsion", std::move(torsion)}});
    }
    return rows;
}

std::string homology_to_text(const BigradedHomology& H) {
    std::ostringstream os;
    os << "homology over " << H.ring->to_string() << ":\n";
    if (H.table.empty()) {
        os << "  (trivial)\n";
        return os.str();
    }
    for (const auto& [key, grp] : H.table) {
        os << "  i=" << key.first << " q=" << key.second << ": rank " << grp.free_rank;
        for (const auto& tp : grp.torsion)
            os << ", torsion " << tp.base.to_string() << "^" << tp.power;
        os << "\n";
    }
    return os.str();
}

int emit(const JobConfig& cfg, const ojson& doc, const std::string& text, std::ostream& out) {
    if (cfg.format == "json")
        out << doc.dump(2) << "\n";
    else
        out << text;
    return 0;
}

// ---------------------------------------------------------------------------
// command handlers

int cmd_homology(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const auto sys = system_from(cfg.system);
    const auto C = complex_for(in.diagram, sys, cfg.coeffs);
    const auto H = bigraded_homology(simplify(C));
    ojson doc{{"input", in.descriptor},
              {"system", cfg.system},
              {"coefficients", H.ring->to_string()},
              {"homology", homology_to_json(H)}};
    return emit(cfg, doc, homology_to_text(H), out);
}

int cmd_jones(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const auto j = kauffman_bracket_jones(in.diagram);
    const std::string s = laurent_ascending(j);
    ojson doc{{"input", in.descriptor}, {"jones", s}};
    return emit(cfg, doc, s + "\n", out);
}

int cmd_s(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const int s = s_invariant(in.diagram);
    ojson doc{{"input", in.descriptor}, {"s", s}};
    return emit(cfg, doc, "s = " + std::to_string(s) + "\n", out);
}

int cmd_lee_rank(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const int r = lee_rank(in.diagram);
    ojson doc{{"input", in.descriptor}, {"lee_rank", r}};
    return emit(cfg, doc, "lee rank = " + std::to_string(r) + "\n", out);
}

int cmd_decompose(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const auto sys = system_from(cfg.system);
    const auto qt = RingSpec::parse("Q[t]");
    const auto lee = base_change(sys, RingHom::by_name(sys.ring, qt));
    const auto C = simplify(build_x_module_complex(build_cube(in.diagram, lee)));
    const auto P = pid_decompose(bigraded_homology(C));

    ojson pieces = ojson::array();
    for (const auto& p : P.pieces)
        pieces.push_back(ojson{{"m", p.m}, {"i", p.i}, {"q_top", p.q_top}});
    ojson frees = ojson::array();
    for (const auto& [i, q] : P.free_summands) frees.push_back(ojson{{"i", i}, {"q", q}});
    ojson doc{{"input", in.descriptor},
              {"system", cfg.system},
              {"coefficients", C.ring->to_string()},
              {"pieces", std::move(pieces)},
              {"free_summands", std::move(frees)}};

    std::ostringstream text;
    text << "module decomposition over " << C.ring->to_string() << ":\n";
    for (const auto& [i, q] : P.free_summands)
        text << "  free summand at i=" << i << " q=" << q << "\n";
    for (const auto& p : P.pieces)
        text << "  finite piece X^" << p.m << " at i=" << p.i << " q_top=" << p.q_top << "\n";
    if (P.free_summands.empty() && P.pieces.empty()) text << "  (trivial)\n";
    return emit(cfg, doc, text.str(), out);
}

int cmd_verify_axioms(const JobConfig& cfg, std::ostream& out) {
    const auto sys = system_from(cfg.system);
    const auto rep = check_axioms(sys);
    ojson fails = ojson::array();
    for (const auto& f : rep.failures) fails.push_back(f);
    ojson doc{{"system", cfg.system},
              {"ok", rep.ok()},
              {"graded", rep.graded},
              {"failures", std::move(fails)}};

    std::ostringstream text;
    if (rep.ok()) {
        text << "axioms ok" << (rep.graded ? " (graded)" : " (ungraded)") << "\n"
             << sys.describe();
    } else {
        text << "axioms FAILED:\n" << sys.describe();
        for (const auto& f : rep.failures) text << "  " << f << "\n";
    }
    emit(cfg, doc, text.str(), out);
    return rep.ok() ? 0 : 1;
}

// Checks that the one-variable deformation with counit killing 1 is, after
// twisting the basis by y = 1 + cX, the undeformed theory extended by the
// free variable c: the isomorphism is verified edge by edge on the cube.
int cmd_twist_check(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const auto f2 = make_system("f2");
    const AElem y{RingElement::one(f2.ring), RingElement::variable(f2.ring, "c")};
    const auto iso = twist_cube_isomorphism(in.diagram, f2, y);

    const auto twisted = build_cube(in.diagram, twist(f2, y));
    const auto plain = build_cube(
        in.diagram, make_custom(f2.ring, RingElement::zero(f2.ring), RingElement::zero(f2.ring)));
    bool ok = twisted.edges().size() == plain.edges().size() &&
              twist(f2, y).same_constants(plain.system());
    int edges = 0;
    if (ok) {
        for (size_t k = 0; k < twisted.edges().size(); ++k, ++edges) {
            if (!(edge_matrix(twisted, twisted.edges()[k]) ==
                  edge_matrix(plain, plain.edges()[k]))) {
                ok = false;
                break;
            }
        }
    }
    if (!ok) throw DomainError("twist check failed: twisted cube differs from the plain cube");

    ojson doc{{"input", in.descriptor},
              {"ok", true},
              {"edges", edges},
              {"vertices", twisted.vertex_count()}};
    std::ostringstream text;
    text << "twist check ok: " << edges << " edges match after twisting by " << y.to_string()
         << "\n";
    return emit(cfg, doc, text.str(), out);
}

// Compares homology of the mirror diagram with homology of the dualized
// complex taken over the dual theory; the two chain complexes are
// isomorphic, so the tables must agree entry for entry.
int cmd_mirror_check(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const auto sys = system_from(cfg.system);
    const auto target = coeff_ring_from(cfg.coeffs.empty() ? "Q" : cfg.coeffs);
    const auto psi = RingHom::by_name(sys.ring, target);

    const auto Cm =
        base_change_complex(flatten(build_cube(in.diagram.mirror(), sys)), psi);
    const auto Cd =
        dualize(base_change_complex(flatten(build_cube(in.diagram, dual(sys))), psi));
    const auto Hm = bigraded_homology(simplify(Cm));
    const auto Hd = bigraded_homology(simplify(Cd));
    if (Hm.to_text() != Hd.to_text())
        throw DomainError("mirror check failed: mirror homology differs from the dualized table");

    ojson doc{{"input", in.descriptor},
              {"system", cfg.system},
              {"coefficients", target->to_string()},
              {"ok", true},
              {"entries", Hm.table.size()}};
    std::ostringstream text;
    text << "mirror check ok over " << target->to_string() << ": " << Hm.table.size()
         << " table entries agree\n";
    return emit(cfg, doc, text.str(), out);
}

int cmd_simplify(const JobConfig& cfg, const ParsedInput& in, std::ostream& out) {
    const auto sys = system_from(cfg.system);
    const auto S = simplify(complex_for(in.diagram, sys, cfg.coeffs));

    ojson gens = ojson::array();
    std::map<std::pair<int, int>, int> counts;
    for (const auto& [i, v] : S.gens)
        for (const auto& g : v) ++counts[{i, g.q}];
    for (const auto& [key, n] : counts)
        gens.push_back(ojson{{"i", key.first}, {"q", key.second}, {"count", n}});
    int entries = 0;
    for (const auto& [i, m] : S.diffs) {
        (void)i;
        entries += m.nnz();
    }
    ojson doc{{"input", in.descriptor},
              {"system", cfg.system},
              {"coefficients", S.ring->to_string()},
              {"complex",
               ojson{{"graded", S.graded},
                     {"total_rank", S.total_rank()},
                     {"nonzero_entries", entries},
                     {"generators", std::move(gens)}}}};
    return emit(cfg, doc, S.to_text(), out);
}

int dispatch(const JobConfig& cfg, bool pd_given, bool braid_given, const std::string& braid_text,
             std::ostream& out) {
    if (cfg.command == "verify-axioms") return cmd_verify_axioms(cfg, out);
    const ParsedInput in = diagram_from(cfg, pd_given, braid_given, braid_text);
    if (cfg.command == "homology") return cmd_homology(cfg, in, out);
    if (cfg.command == "jones") return cmd_jones(cfg, in, out);
    if (cfg.command == "s") return cmd_s(cfg, in, out);
    if (cfg.command == "lee-rank") return cmd_lee_rank(cfg, in, out);
    if (cfg.command == "decompose") return cmd_decompose(cfg, in, out);
    if (cfg.command == "twist-check") return cmd_twist_check(cfg, in, out);
    if (cfg.command == "mirror-check") return cmd_mirror_check(cfg, in, out);
    if (cfg.command == "simplify") return cmd_simplify(cfg, in, out);
    throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    std::string braid_text;

    CLI::App app{"exact link homology from rank-two Frobenius extensions"};
    app.name("frobkh");
    app.require_subcommand(1);

    auto add = [&](const std::string& name, const std::string& desc, bool input, bool system,
                   bool coeffs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        if (input) {
            sub->add_option("--pd", cfg.pd, "planar diagram text, e.g. \"X[1,4,2,5] ...\"");
            sub->add_option("--braid", braid_text, "braid word, e.g. \"1,1,1\"");
            sub->add_option("--strands", cfg.strands, "strand count for --braid");
        }
        if (system) sub->add_option("--system", cfg.system, "Frobenius system (f1..f7 or custom:...)");
        if (coeffs)
            sub->add_option("--coeffs", cfg.coeffs,
                            "coefficient ring: Z, Q, F2, F3, Z[c], Q[t], Q[X], F2[H], F2(u)");
        sub->add_option("--format", cfg.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        return sub;
    };

    add("homology", "bigraded homology table of a link diagram", true, true, true);
    add("jones", "graded Euler characteristic via the state-sum bracket", true, false, false);
    add("s", "concordance slope invariant of a knot", true, false, false);
    add("lee-rank", "total rank of the deformed theory at generic t", true, false, false);
    add("decompose", "module structure over Q[X] of the deformed homology", true, true, false);
    add("verify-axioms", "check the commutative Frobenius axioms of a system", false, true, false);
    add("twist-check", "verify the twist equivalence between the c-deformation and the plain theory",
        true, false, false);
    add("mirror-check", "verify mirror homology against the dualized table", true, true, true);
    add("simplify", "reduced chain complex after eliminating unit entries", true, true, true);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("frobkh");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    auto count_of = [&](const std::string& name) -> size_t {
        const CLI::Option* opt = active->get_option_no_throw(name);
        return opt ? opt->count() : 0;
    };
    if (cfg.command == "decompose" && count_of("--system") == 0) cfg.system = "f5";
    const bool pd_given = count_of("--pd") > 0;
    const bool braid_given = count_of("--braid") > 0;

    if (const char* tv = std::getenv("FROBKH_THREADS")) {
        const std::string text = tv;
        size_t used = 0;
        int n = -1;
        try {
            n = std::stoi(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size() || n < 0) {
            err << "error: FROBKH_THREADS must be a non-negative integer (0 = auto)\n";
            return 2;
        }
        set_thread_cap(n);
    }

    try {
        return dispatch(cfg, pd_given, braid_given, braid_text, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run_cli(args, out, err);
}

}  // namespace frobkh
