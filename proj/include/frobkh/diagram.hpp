#pragma once

// Oriented link diagrams in planar-diagram (PD) notation and their
// resolutions.
//
// Conventions (these are load-bearing; the homology pipeline and the
// state-sum oracle agree on them):
//   * A crossing X[a,b,c,d] lists its four edge ports counterclockwise
//     starting from the incoming under-strand a; so c is the outgoing
//     under-strand and the over-strand occupies b and d.
//   * The crossing is positive when the over-strand enters at d and
//     negative when it enters at b.
//   * The 0-smoothing joins (a,b) and (c,d); the 1-smoothing joins (a,d)
//     and (b,c).  With the sign rule above, the orientation-preserving
//     smoothing of a positive crossing is the 0-smoothing and of a
//     negative crossing the 1-smoothing.
//
// Edge orientations are recovered from the numbering: under-strand ports
// force directions (a enters, c leaves) and the constraints "each edge has
// one head and one tail" plus "the over-strand passes through" propagate
// them.  Components lying entirely over every crossing are oriented so
// consecutive edge ids ascend, with a deterministic tie-break.

#include <array>
#include <string>
#include <vector>

#include "frobkh/ring.hpp"

namespace frobkh {

struct Crossing {
    std::array<int, 4> e{};  // ports a, b, c, d
    int sign = 0;            // +1 or -1
};

struct ResolvedState {
    std::vector<int> r;                     // one bit per crossing
    std::vector<std::vector<int>> circles;  // sorted edge ids; a crossing-free circle is {-j}
    int height = 0;                         // number of 1-smoothings

    int k() const { return static_cast<int>(circles.size()); }
    int circle_containing(int edge) const;  // index into circles
};

class PlanarDiagram {
  public:
    // Grammar: whitespace- or comma-separated terms "X[e1,e2,e3,e4]" with
    // positive integer edge ids, optionally wrapped in "PD[...]"; a bare "U"
    // adds a crossing-free unknot component.  Edge ids must each appear
    // exactly twice and admit a consistent orientation.
    static PlanarDiagram parse_pd(const std::string& text);
    // Closure of a braid word on the given strands; letter +i (resp. -i)
    // crosses strands i, i+1 positively (negatively).  Unused strands close
    // into crossing-free circles.  Edges are renumbered consecutively along
    // each component.
    static PlanarDiagram from_braid(const std::vector<int>& word, int strands);

    const std::vector<Crossing>& crossings() const { return crossings_; }
    int n() const { return static_cast<int>(crossings_.size()); }
    int free_loops() const { return free_loops_; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    int writhe() const { return n_plus_ - n_minus_; }
    int components() const { return components_; }
    int edge_count() const { return edge_count_; }

    ResolvedState resolve(const std::vector<int>& r) const;
    // The orientation-preserving smoothing: 0 at positive crossings, 1 at
    // negative ones.
    std::vector<int> oriented_resolution() const;

    // Over/under swapped at every crossing (tuples rotated to restart at the
    // new incoming under-strand); all signs negate.
    PlanarDiagram mirror() const;

    std::string to_string() const;

  private:
    PlanarDiagram() = default;
    void finalize();  // orientation solve, signs, component count

    std::vector<Crossing> crossings_;
    int free_loops_ = 0;
    int n_plus_ = 0;
    int n_minus_ = 0;
    int components_ = 0;
    int edge_count_ = 0;
};

}  // namespace frobkh
