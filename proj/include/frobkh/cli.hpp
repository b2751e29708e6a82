// Command-line front end.  run_cli parses an argv-style argument list,
// executes one command, and writes the result to the given streams, so the
// whole surface is exercisable in-process by tests.
//
// Exit codes: 0 on success, 2 for bad usage (unknown flags, malformed input
// text, impossible flag combinations, s of a multi-component link), 1 when
// the request is well-formed but the computation is out of range
// (non-Euclidean coefficients, a failed verification).  Error paths print
// nothing to the output stream, so a partial table is never emitted.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frobkh {

// One parsed invocation.  Filled by run_cli; exposed for tests that want to
// drive command dispatch without going through argv.
struct JobConfig {
    std::string command;        // homology, jones, s, lee-rank, decompose,
                                // verify-axioms, twist-check, mirror-check, simplify
    std::string pd;             // --pd text, empty when absent
    std::vector<int> braid;     // --braid word (signed generator indices)
    int strands = 0;            // --strands, 0 when absent
    std::string system = "f1";  // --system
    std::string coeffs;         // --coeffs, empty = the system's own ring
    std::string format = "text";
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frobkh
