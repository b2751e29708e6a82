#include "frobkh/complex.hpp"

#include <bit>
#include <sstream>
#include <utility>

namespace frobkh {

namespace {

int height_of(int v) { return std::popcount(static_cast<unsigned>(v)); }

}  // namespace

int GradedComplex::dim(int i) const {
    auto it = gens.find(i);
    return it == gens.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<Generator>& GradedComplex::generators(int i) const {
    static const std::vector<Generator> empty;
    auto it = gens.find(i);
    return it == gens.end() ? empty : it->second;
}

RingMatrix GradedComplex::d(int i) const {
    auto it = diffs.find(i);
    if (it != diffs.end()) return it->second;
    return RingMatrix(ring, dim(i + 1), dim(i));
}

int GradedComplex::min_degree() const {
    for (const auto& [i, gs] : gens)
        if (!gs.empty()) return i;
    return 0;
}

int GradedComplex::max_degree() const {
    int out = 0;
    for (const auto& [i, gs] : gens)
        if (!gs.empty()) out = i;
    return out;
}

int GradedComplex::total_rank() const {
    int out = 0;
    for (const auto& [i, gs] : gens) out += static_cast<int>(gs.size());
    return out;
}

std::string GradedComplex::to_text() const {
    std::ostringstream os;
    os << "ring " << ring->to_string();
    if (!graded) os << " (ungraded)";
    os << "\n";
    for (const auto& [i, gs] : gens) {
        if (gs.empty()) continue;
        os << "degree " << i << ":";
        for (const auto& g : gs) os << " " << g.q;
        os << "\n";
    }
    for (const auto& [i, D] : diffs) {
        if (D.is_zero()) continue;
        os << "d(" << i << "):";
        for (int c = 0; c < D.cols(); ++c)
            for (const auto& [r, v] : D.column(c))
                os << " [" << r << "," << c << "]=" << v.to_string();
        os << "\n";
    }
    return os.str();
}

GradedComplex flatten(const ResolutionCube& cube) {
    GradedComplex C;
    C.ring = cube.system().ring;
    C.n_plus = cube.diagram().n_plus();
    C.n_minus = cube.diagram().n_minus();
    C.source = "cube of " + cube.diagram().to_string();
    const int n = cube.n();
    const int shift = C.n_plus - 2 * C.n_minus;

    std::vector<int> offset(cube.vertex_count(), 0);
    for (int h = 0; h <= n; ++h) {
        const int i = h - C.n_minus;
        auto& gs = C.gens[i];
        for (int v = 0; v < cube.vertex_count(); ++v) {
            if (height_of(v) != h) continue;
            offset[v] = static_cast<int>(gs.size());
            for (int b = 0; b < cube.rank_at(v); ++b)
                gs.push_back({i, cube.label_qdeg(v, b) + h + shift, v, b});
        }
    }
    for (int h = 0; h < n; ++h) {
        const int i = h - C.n_minus;
        RingMatrix D(C.ring, C.dim(i + 1), C.dim(i));
        for (const CubeEdge* e : cube.edges_from_height(h))
            D.set_block(offset[e->to], offset[e->from], edge_matrix(cube, *e));
        C.diffs.emplace(i, std::move(D));
    }
    auto report = verify_complex(C);
    if (!report.ok)
        throw DomainError("flatten produced an invalid complex (internal): " + report.witness);
    return C;
}

ComplexReport verify_complex(const GradedComplex& C) {
    std::ostringstream os;
    for (const auto& [i, D] : C.diffs) {
        if (D.rows() != C.dim(i + 1) || D.cols() != C.dim(i)) {
            os << "d(" << i << ") has shape " << D.rows() << "x" << D.cols() << ", expected "
               << C.dim(i + 1) << "x" << C.dim(i);
            return {false, os.str()};
        }
        if (C.graded) {
            const auto& src = C.generators(i);
            const auto& tgt = C.generators(i + 1);
            for (int c = 0; c < D.cols(); ++c) {
                for (const auto& [r, v] : D.column(c)) {
                    if (!v.qdeg().fits(src[c].q - tgt[r].q)) {
                        os << "inhomogeneous entry at i=" << i << " row=" << r << " col=" << c;
                        return {false, os.str()};
                    }
                }
            }
        }
    }
    for (const auto& [i, D] : C.diffs) {
        auto next = C.diffs.find(i + 1);
        if (next == C.diffs.end()) continue;
        RingMatrix sq = next->second * D;
        if (!sq.is_zero()) {
            for (int c = 0; c < sq.cols(); ++c) {
                if (!sq.column(c).empty()) {
                    os << "d^2 != 0 at i=" << i << " row=" << sq.column(c).begin()->first
                       << " col=" << c;
                    return {false, os.str()};
                }
            }
        }
    }
    return {true, ""};
}

namespace {

RingMatrix drop_row(const RingMatrix& M, int row) {
    RingMatrix out(M.spec(), M.rows() - 1, M.cols());
    for (int c = 0; c < M.cols(); ++c)
        for (const auto& [r, v] : M.column(c)) {
            if (r == row) continue;
            out.set(r > row ? r - 1 : r, c, v);
        }
    return out;
}

RingMatrix drop_col(const RingMatrix& M, int col) {
    RingMatrix out(M.spec(), M.rows(), M.cols() - 1);
    for (int c = 0; c < M.cols(); ++c) {
        if (c == col) continue;
        for (const auto& [r, v] : M.column(c)) out.set(r, c > col ? c - 1 : c, v);
    }
    return out;
}

}  // namespace

GradedComplex simplify(GradedComplex C) {
    for (;;) {
        int pi = 0, pr = -1, pc = -1;
        for (const auto& [i, D] : C.diffs) {
            for (int c = 0; c < D.cols() && pr < 0; ++c) {
                for (const auto& [r, v] : D.column(c)) {
                    if (v.is_unit()) {
                        pi = i;
                        pr = r;
                        pc = c;
                        break;
                    }
                }
            }
            if (pr >= 0) break;
        }
        if (pr < 0) break;

        RingMatrix D = C.diffs.at(pi);
        const RingElement uinv = D.at(pr, pc).inverse();
        // Reduced differential on the surviving generators:
        // D'[r2][c2] = D[r2][c2] - D[r2][pc] * u^-1 * D[pr][c2].
        RingMatrix nd(C.ring, D.rows() - 1, D.cols() - 1);
        const auto& pivot_col = D.column(pc);
        for (int c = 0; c < D.cols(); ++c) {
            if (c == pc) continue;
            const int c2 = c > pc ? c - 1 : c;
            const RingElement gamma = D.at(pr, c);
            for (const auto& [r, v] : D.column(c)) {
                if (r == pr) continue;
                nd.set(r > pr ? r - 1 : r, c2, v);
            }
            if (gamma.is_zero()) continue;
            const RingElement f = gamma * uinv;
            for (const auto& [r, v] : pivot_col) {
                if (r == pr) continue;
                const int r2 = r > pr ? r - 1 : r;
                nd.set(r2, c2, nd.at(r2, c2) - v * f);
            }
        }
        C.diffs.at(pi) = std::move(nd);

        auto below = C.diffs.find(pi - 1);
        if (below != C.diffs.end()) below->second = drop_row(below->second, pc);
        auto above = C.diffs.find(pi + 1);
        if (above != C.diffs.end()) above->second = drop_col(above->second, pr);
        C.gens.at(pi).erase(C.gens.at(pi).begin() + pc);
        C.gens.at(pi + 1).erase(C.gens.at(pi + 1).begin() + pr);
    }
    for (auto& [i, gs] : C.gens)
        for (auto& g : gs) {
            g.vertex = -1;
            g.label = -1;
        }
    C.source += " (simplified)";
    auto report = verify_complex(C);
    if (!report.ok)
        throw DomainError("simplify produced an invalid complex (internal): " + report.witness);
    return C;
}

GradedComplex base_change_complex(const GradedComplex& C, const RingHom& psi) {
    if (!(*psi.source() == *C.ring))
        throw UsageError("base change source ring does not match the complex");
    GradedComplex out;
    out.ring = psi.target();
    out.gens = C.gens;
    out.n_plus = C.n_plus;
    out.n_minus = C.n_minus;
    out.graded = C.graded && psi.is_graded();
    out.source = C.source + " over " + psi.target()->to_string();
    for (const auto& [i, D] : C.diffs) out.diffs.emplace(i, D.mapped(psi));
    auto report = verify_complex(out);
    if (!report.ok)
        throw DomainError("base change produced an invalid complex (internal): " + report.witness);
    return out;
}

GradedComplex dualize(const GradedComplex& C) {
    GradedComplex out;
    out.ring = C.ring;
    out.n_plus = C.n_minus;
    out.n_minus = C.n_plus;
    out.graded = C.graded;
    out.source = "dual of " + C.source;
    for (const auto& [i, gs] : C.gens) {
        auto& ogs = out.gens[-i];
        for (const auto& g : gs) ogs.push_back({-i, -g.q, -1, -1});
    }
    for (const auto& [i, D] : C.diffs) out.diffs.emplace(-i - 1, D.transpose());
    auto report = verify_complex(out);
    if (!report.ok)
        throw DomainError("dualize produced an invalid complex (internal): " + report.witness);
    return out;
}

LaurentPoly euler_characteristic(const GradedComplex& C) {
    LaurentPoly chi;
    for (const auto& [i, gs] : C.gens) {
        for (const auto& g : gs) {
            LaurentPoly term = LaurentPoly::monomial(g.q);
            chi += (i % 2 == 0) ? term : -term;
        }
    }
    return chi;
}

GradedComplex build_x_module_complex(const ResolutionCube& cube, int marked_edge) {
    const FrobeniusSystem& sys = cube.system();
    if (!sys.h.is_zero())
        throw DomainError("the X-module structure requires a system with h = 0");
    const RingSpecPtr& R = sys.ring;
    if (R->vars().size() != 1 || !(sys.t == RingElement::variable(R, R->vars()[0].name)))
        throw DomainError(
            "the X-module structure requires t to be the variable of a univariate ring");
    if (R->is_fraction_field())
        throw DomainError("the X-module structure requires a polynomial coefficient ring");

    const RingSpecPtr RX =
        RingSpec::polynomial(R->scalar(), R->characteristic(), {VarInfo{"X", -2}});
    const RingHom tmap(R, RX, {RingElement::parse(RX, "X^2")});
    const RingElement x = RingElement::parse(RX, "X");

    int mark = marked_edge;
    if (mark == 0) {
        if (cube.diagram().edge_count() > 0) {
            mark = cube.diagram().crossings()[0].e[0];
            for (const Crossing& cr : cube.diagram().crossings())
                for (int e : cr.e) mark = std::min(mark, e);
        } else {
            mark = -1;  // the first crossing-free circle
        }
    }

    GradedComplex C;
    C.ring = RX;
    C.n_plus = cube.diagram().n_plus();
    C.n_minus = cube.diagram().n_minus();
    C.source = "X-module complex of " + cube.diagram().to_string();
    const int n = cube.n();
    const int shift = C.n_plus - 2 * C.n_minus;

    // Per vertex: position of the marked circle and the kept basis labels
    // (marked factor = 1), with their local indices.
    std::vector<int> marked_pos(cube.vertex_count());
    std::vector<std::vector<int>> kept(cube.vertex_count());
    std::vector<std::map<int, int>> local(cube.vertex_count());
    std::vector<int> offset(cube.vertex_count(), 0);
    for (int h = 0; h <= n; ++h) {
        const int i = h - C.n_minus;
        auto& gs = C.gens[i];
        for (int v = 0; v < cube.vertex_count(); ++v) {
            if (height_of(v) != h) continue;
            const ResolvedState& st = cube.vertex(v);
            const int k = st.k();
            marked_pos[v] = st.circle_containing(mark);
            const int bit = 1 << (k - 1 - marked_pos[v]);
            offset[v] = static_cast<int>(gs.size());
            for (int b = 0; b < (1 << k); ++b) {
                if (b & bit) continue;
                local[v][b] = static_cast<int>(kept[v].size());
                kept[v].push_back(b);
                gs.push_back({i, cube.label_qdeg(v, b) + h + shift, v, b});
            }
        }
    }

    for (int h = 0; h < n; ++h) {
        const int i = h - C.n_minus;
        RingMatrix D(RX, C.dim(i + 1), C.dim(i));
        for (const CubeEdge* e : cube.edges_from_height(h)) {
            const RingMatrix M = edge_matrix(cube, *e);
            const int kt = cube.vertex(e->to).k();
            const int tbit = 1 << (kt - 1 - marked_pos[e->to]);
            for (size_t lc = 0; lc < kept[e->from].size(); ++lc) {
                const int col = offset[e->from] + static_cast<int>(lc);
                for (const auto& [rb, val] : M.column(kept[e->from][lc])) {
                    RingElement w = tmap.apply(val);
                    int r2 = rb;
                    if (rb & tbit) {
                        r2 = rb & ~tbit;
                        w = w * x;
                    }
                    const int row = offset[e->to] + local[e->to].at(r2);
                    D.set(row, col, D.at(row, col) + w);
                }
            }
        }
        C.diffs.emplace(i, std::move(D));
    }
    auto report = verify_complex(C);
    if (!report.ok)
        throw DomainError("X-module complex construction failed (internal): " + report.witness);
    return C;
}

}  // namespace frobkh
