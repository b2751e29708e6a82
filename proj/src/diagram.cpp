#include "frobkh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace frobkh {

namespace {

// Union-find over arbitrary int keys.
class DisjointSets {
  public:
    int find(int x) {
        auto it = parent_.find(x);
        if (it == parent_.end()) {
            parent_[x] = x;
            return x;
        }
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) x = std::exchange(parent_[x], root);
        return root;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }
    std::map<int, std::vector<int>> classes() {
        std::map<int, std::vector<int>> out;
        for (const auto& [x, p] : parent_) {
            (void)p;
            out[find(x)].push_back(x);
        }
        for (auto& [root, members] : out) {
            (void)root;
            std::sort(members.begin(), members.end());
        }
        return out;
    }

  private:
    std::map<int, int> parent_;
};

struct Appearance {
    int crossing;
    int slot;  // 0..3 for a, b, c, d
};

}  // namespace

int ResolvedState::circle_containing(int edge) const {
    for (size_t i = 0; i < circles.size(); ++i)
        if (std::binary_search(circles[i].begin(), circles[i].end(), edge))
            return static_cast<int>(i);
    throw UsageError("edge " + std::to_string(edge) + " not in any circle");
}

void PlanarDiagram::finalize() {
    std::map<int, std::vector<Appearance>> by_edge;
    for (size_t c = 0; c < crossings_.size(); ++c)
        for (int s = 0; s < 4; ++s) {
            int e = crossings_[c].e[s];
            if (e <= 0) throw UsageError("edge ids must be positive, got " + std::to_string(e));
            by_edge[e].push_back({static_cast<int>(c), s});
        }
    for (const auto& [e, apps] : by_edge)
        if (apps.size() != 2)
            throw UsageError("edge " + std::to_string(e) + " appears " + std::to_string(apps.size()) +
                             " times; every edge must appear exactly twice");
    edge_count_ = static_cast<int>(by_edge.size());

    // Orientation roles: role[c][s] = +1 when the edge at that port enters
    // the crossing (its head is here), -1 when it leaves.  Under-strand
    // ports are forced; the rest propagates through two constraint families:
    // the over-strand enters at exactly one of b, d; and every edge enters
    // at exactly one of its two appearances.
    std::vector<std::array<int, 4>> role(crossings_.size(), {0, 0, 0, 0});
    std::vector<Appearance> queue;
    auto assign = [&](int c, int s, int v, auto&& self) -> void {
        if (role[c][s] == v) return;
        if (role[c][s] != 0)
            throw UsageError("inconsistent orientation at crossing " + std::to_string(c) +
                             " port " + std::to_string(s));
        role[c][s] = v;
        // over-strand passes through: b and d have opposite roles
        if (s == 1 || s == 3) self(c, 4 - s, -v, self);
        // the other appearance of this edge has the opposite role
        const auto& apps = by_edge[crossings_[c].e[s]];
        for (const auto& ap : apps)
            if (ap.crossing != c || ap.slot != s) self(ap.crossing, ap.slot, -v, self);
    };
    for (size_t c = 0; c < crossings_.size(); ++c) {
        assign(static_cast<int>(c), 0, +1, assign);
        assign(static_cast<int>(c), 2, -1, assign);
    }

    // Components passing over every crossing they visit are untouched by the
    // propagation.  Orient them so that consecutive edge ids ascend when the
    // numbering determines a direction, with a deterministic d-slot
    // preference otherwise.
    for (;;) {
        int pending = -1;
        for (const auto& [e, apps] : by_edge)
            if (role[apps[0].crossing][apps[0].slot] == 0) {
                pending = e;
                break;
            }
        if (pending < 0) break;
        const auto& apps = by_edge[pending];
        int chosen = -1;
        // successor preference: the head of edge e sits where edge e+1 also
        // appears (the over-strand carries e in and e+1 out)
        for (int i = 0; i < 2 && chosen < 0; ++i) {
            const auto& cr = crossings_[apps[i].crossing];
            int partner = cr.e[4 - apps[i].slot];
            if (partner == pending + 1) chosen = i;
        }
        if (chosen < 0)
            chosen = apps[0].slot == 3 ? 0 : (apps[1].slot == 3 ? 1 : 0);
        assign(apps[chosen].crossing, apps[chosen].slot, +1, assign);
    }

    // Signs: positive when the over-strand enters at d.
    n_plus_ = n_minus_ = 0;
    for (size_t c = 0; c < crossings_.size(); ++c) {
        crossings_[c].sign = role[c][3] == +1 ? +1 : -1;
        (crossings_[c].sign > 0 ? n_plus_ : n_minus_)++;
    }

    // Components: follow each edge through its head crossing (enter at a ->
    // leave at c; enter at b -> leave at d; enter at d -> leave at b).
    std::map<int, int> successor;
    for (const auto& [e, apps] : by_edge) {
        const Appearance& head = role[apps[0].crossing][apps[0].slot] == +1 ? apps[0] : apps[1];
        static constexpr int exit_of[4] = {2, 3, 0, 1};
        successor[e] = crossings_[head.crossing].e[exit_of[head.slot]];
    }
    components_ = free_loops_;
    std::set<int> seen;
    for (const auto& [e, s] : successor) {
        (void)s;
        if (seen.count(e)) continue;
        ++components_;
        for (int x = e; !seen.count(x); x = successor[x]) seen.insert(x);
    }
}

PlanarDiagram PlanarDiagram::parse_pd(const std::string& text) {
    PlanarDiagram d;
    size_t i = 0;
    auto fail = [&](const std::string& why) -> void {
        throw UsageError("PD parse error at position " + std::to_string(i) + ": " + why);
    };
    auto skip_sep = [&] {
        while (i < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    auto parse_int = [&]() -> int {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected an edge number");
        return std::stoi(text.substr(start, i - start));
    };

    skip_sep();
    bool wrapped = false;
    if (text.compare(i, 3, "PD[") == 0) {
        wrapped = true;
        i += 3;
    }
    for (;;) {
        skip_sep();
        if (i >= text.size()) {
            if (wrapped) fail("missing closing ] of PD[...]");
            break;
        }
        if (wrapped && text[i] == ']') {
            ++i;
            skip_sep();
            if (i != text.size()) fail("trailing input after PD[...]");
            break;
        }
        if (text[i] == 'U') {
            ++i;
            ++d.free_loops_;
            continue;
        }
        if (text[i] != 'X') fail("expected X[...] or U");
        ++i;
        if (i >= text.size() || text[i] != '[') fail("expected [ after X");
        ++i;
        Crossing cr;
        for (int s = 0; s < 4; ++s) {
            skip_sep();
            cr.e[s] = parse_int();
        }
        skip_sep();
        if (i >= text.size() || text[i] != ']') fail("unclosed bracket");
        ++i;
        d.crossings_.push_back(cr);
    }
    d.finalize();
    return d;
}

PlanarDiagram PlanarDiagram::from_braid(const std::vector<int>& word, int strands) {
    if (strands < 1) throw UsageError("braid needs at least one strand");
    for (int w : word)
        if (w == 0 || std::abs(w) >= strands)
            throw UsageError("braid letter " + std::to_string(w) + " out of range for " +
                             std::to_string(strands) + " strands");

    int next_id = 0;
    std::vector<int> initial(strands), current(strands);
    for (int j = 0; j < strands; ++j) initial[j] = current[j] = ++next_id;

    struct RawCrossing {
        std::array<int, 4> e;
    };
    std::vector<RawCrossing> raw;
    // For both signs the under/over assignment routes the strand entering at
    // slot i out at slot i+1 and vice versa, so the successor of the slot-i
    // edge is the new slot-(i+1) edge.
    std::map<int, int> successor;
    for (int w : word) {
        int i = std::abs(w) - 1;
        int L = current[i], R = current[i + 1];
        int A = ++next_id, B = ++next_id;
        raw.push_back(w > 0 ? RawCrossing{{L, A, B, R}} : RawCrossing{{R, L, A, B}});
        successor[L] = B;
        successor[R] = A;
        current[i] = A;
        current[i + 1] = B;
    }

    // Close the braid: the edge leaving the bottom of strand j is the edge
    // entering its top.
    DisjointSets ids;
    for (int j = 0; j < strands; ++j) ids.unite(current[j], initial[j]);
    auto canon = [&](int e) { return ids.find(e); };
    std::map<int, int> canon_succ;
    for (const auto& [e, s] : successor) canon_succ[canon(e)] = canon(s);

    PlanarDiagram d;
    for (int j = 0; j < strands; ++j)
        if (initial[j] == current[j]) ++d.free_loops_;  // strand with no crossings

    // Renumber edges 1,2,... consecutively along each component, components
    // ordered by smallest old id.
    std::map<int, int> renumber;
    int fresh = 0;
    for (const auto& [e, s] : canon_succ) {
        (void)s;
        if (renumber.count(e)) continue;
        for (int x = e; !renumber.count(x); x = canon_succ[x]) renumber[x] = ++fresh;
    }
    for (const auto& rc : raw) {
        Crossing cr;
        for (int s = 0; s < 4; ++s) cr.e[s] = renumber[canon(rc.e[s])];
        d.crossings_.push_back(cr);
    }
    d.finalize();
    return d;
}

ResolvedState PlanarDiagram::resolve(const std::vector<int>& r) const {
    if (static_cast<int>(r.size()) != n())
        throw UsageError("resolution vector length " + std::to_string(r.size()) +
                         " does not match crossing count " + std::to_string(n()));
    ResolvedState st;
    st.r = r;
    DisjointSets ds;
    for (int c = 0; c < n(); ++c) {
        const auto& e = crossings_[c].e;
        if (r[c] == 0) {
            ds.unite(e[0], e[1]);
            ds.unite(e[2], e[3]);
        } else if (r[c] == 1) {
            ds.unite(e[0], e[3]);
            ds.unite(e[1], e[2]);
            st.height++;
        } else {
            throw UsageError("resolution entries must be 0 or 1");
        }
    }
    for (auto& [root, members] : ds.classes()) {
        (void)root;
        st.circles.push_back(std::move(members));
    }
    std::sort(st.circles.begin(), st.circles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    // crossing-free circles keep stable negative pseudo-ids
    for (int j = 1; j <= free_loops_; ++j) st.circles.insert(st.circles.begin(), {-j});
    std::sort(st.circles.begin(), st.circles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return st;
}

std::vector<int> PlanarDiagram::oriented_resolution() const {
    std::vector<int> r(n());
    for (int c = 0; c < n(); ++c) r[c] = crossings_[c].sign > 0 ? 0 : 1;
    return r;
}

PlanarDiagram PlanarDiagram::mirror() const {
    PlanarDiagram d;
    d.free_loops_ = free_loops_;
    for (const auto& cr : crossings_) {
        Crossing m;
        // the old over-strand becomes the under-strand; restart the tuple at
        // its incoming port (d for positive crossings, b for negative)
        if (cr.sign > 0)
            m.e = {cr.e[3], cr.e[0], cr.e[1], cr.e[2]};
        else
            m.e = {cr.e[1], cr.e[2], cr.e[3], cr.e[0]};
        d.crossings_.push_back(m);
    }
    d.finalize();
    return d;
}

std::string PlanarDiagram::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& cr : crossings_) {
        if (!first) out << " ";
        first = false;
        out << "X[" << cr.e[0] << "," << cr.e[1] << "," << cr.e[2] << "," << cr.e[3] << "]";
    }
    for (int j = 0; j < free_loops_; ++j) {
        if (!first) out << " ";
        first = false;
        out << "U";
    }
    return out.str();
}

}  // namespace frobkh
