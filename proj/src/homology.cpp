#include "frobkh/homology.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace frobkh {

namespace {

mpz_class as_integer(const RingElement& e) {
    if (e.is_zero()) return 0;
    return e.numerator_terms().begin()->second.get_num();
}

// Unit that scales a pivot into normal form: positive over Z, monic over
// polynomial scalars, 1 over a field.
RingElement normalizing_unit(const RingElement& p) {
    const auto& R = p.spec();
    if (R->is_field()) return p.inverse();
    if (R->vars().empty())
        return RingElement::from_int(R, as_integer(p) < 0 ? -1 : 1);
    const mpq_class lead = p.numerator_terms().rbegin()->second;
    return RingElement::from_mpq(R, lead).inverse();
}

}  // namespace

SNFResult smith_normal_form(const RingMatrix& M, std::vector<int> row_degrees,
                            std::vector<int> col_degrees) {
    const auto R = M.spec();
    if (!R->is_euclidean())
        throw DomainError("Smith normal form over " + R->to_string() +
                          " is not supported: the ring is not Euclidean");
    const int nr = M.rows(), nc = M.cols();
    if (row_degrees.empty()) row_degrees.assign(nr, 0);
    if (col_degrees.empty()) col_degrees.assign(nc, 0);
    if (static_cast<int>(row_degrees.size()) != nr || static_cast<int>(col_degrees.size()) != nc)
        throw UsageError("degree label count does not match the matrix shape");

    SNFResult res{M,
                  {},
                  RingMatrix::identity(R, nr),
                  RingMatrix::identity(R, nr),
                  RingMatrix::identity(R, nc),
                  RingMatrix::identity(R, nc),
                  std::move(row_degrees),
                  std::move(col_degrees)};
    RingMatrix& S = res.S;

    auto row_swap = [&](int a, int b) {
        if (a == b) return;
        S.swap_rows(a, b);
        res.U.swap_rows(a, b);
        res.Uinv.swap_cols(a, b);
        std::swap(res.row_degrees[a], res.row_degrees[b]);
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        S.swap_cols(a, b);
        res.V.swap_cols(a, b);
        res.Vinv.swap_rows(a, b);
        std::swap(res.col_degrees[a], res.col_degrees[b]);
    };
    auto row_add = [&](int dst, int src, const RingElement& f) {  // row dst += f * row src
        S.row_axpy(dst, src, f);
        res.U.row_axpy(dst, src, f);
        res.Uinv.col_axpy(src, dst, -f);
    };
    auto col_add = [&](int dst, int src, const RingElement& f) {  // col dst += f * col src
        S.col_axpy(dst, src, f);
        res.V.col_axpy(dst, src, f);
        res.Vinv.row_axpy(src, dst, -f);
    };
    auto row_scale = [&](int r, const RingElement& u) {
        S.scale_row(r, u);
        res.U.scale_row(r, u);
        res.Uinv.scale_col(r, u.inverse());
        const QDegree d = u.qdeg();
        if (d.is_homogeneous() && !d.is_zero_element()) res.row_degrees[r] -= d.value();
    };

    const int kmax = std::min(nr, nc);
    int k = 0;
    while (k < kmax) {
        // Global pivot: minimal Euclidean size, then leftmost column, then
        // topmost row, over the untouched corner.
        int pr = -1, pc = -1;
        mpz_class best;
        for (int c = k; c < nc; ++c)
            for (const auto& [r, v] : S.column(c)) {
                if (r < k) continue;
                const mpz_class sz = euclid_size(v);
                if (pr < 0 || sz < best) {
                    pr = r;
                    pc = c;
                    best = sz;
                }
            }
        if (pr < 0) break;  // the rest of the matrix is zero
        row_swap(k, pr);
        col_swap(k, pc);

        for (;;) {
            // Clear column k by Euclidean reduction, re-pivoting on strictly
            // smaller remainders until only (k,k) is left.
            for (;;) {
                int br = k;
                mpz_class bs = euclid_size(S.at(k, k));
                for (const auto& [r, v] : S.column(k)) {
                    if (r <= k) continue;
                    const mpz_class sz = euclid_size(v);
                    if (sz < bs) {
                        br = r;
                        bs = sz;
                    }
                }
                row_swap(k, br);
                std::vector<std::pair<int, RingElement>> below;
                for (const auto& [r, v] : S.column(k))
                    if (r > k) below.emplace_back(r, v);
                if (below.empty()) break;
                for (const auto& [r, v] : below)
                    row_add(r, k, -euclid_divmod(v, S.at(k, k)).first);
            }
            // Clear row k the same way with column operations; a column swap
            // can disturb column k, in which case both passes rerun.
            bool col_touched = false;
            for (;;) {
                int bc = k;
                mpz_class bs = euclid_size(S.at(k, k));
                for (int c = k + 1; c < nc; ++c) {
                    const RingElement v = S.at(k, c);
                    if (v.is_zero()) continue;
                    const mpz_class sz = euclid_size(v);
                    if (sz < bs) {
                        bc = c;
                        bs = sz;
                    }
                }
                if (bc != k) {
                    col_swap(k, bc);
                    col_touched = true;
                }
                bool any = false;
                for (int c = k + 1; c < nc; ++c) {
                    const RingElement v = S.at(k, c);
                    if (v.is_zero()) continue;
                    any = true;
                    col_add(c, k, -euclid_divmod(v, S.at(k, k)).first);
                }
                if (!any) break;
            }
            if (col_touched) continue;

            // Divisibility sweep: fold any offending row into row k and redo.
            // Entries of a graded matrix over a one-variable polynomial ring
            // are monomials with the minimal-degree pivot dividing them all,
            // so this is reachable only in constant-degree blocks.
            const RingElement piv = S.at(k, k);
            int bad = -1;
            for (int c = k + 1; c < nc && bad < 0; ++c)
                for (const auto& [r, v] : S.column(c)) {
                    if (r <= k) continue;
                    if (!euclid_divmod(v, piv).second.is_zero()) {
                        bad = r;
                        break;
                    }
                }
            if (bad < 0) break;
            if (res.row_degrees[bad] != res.row_degrees[k])
                throw DomainError("Smith reduction mixed distinct degrees (internal)");
            row_add(k, bad, RingElement::one(R));
        }

        const RingElement u = normalizing_unit(S.at(k, k));
        if (!u.is_one()) row_scale(k, u);
        res.factors.push_back(S.at(k, k));
        ++k;
    }

    for (size_t j = 1; j < res.factors.size(); ++j)
        if (!euclid_divmod(res.factors[j], res.factors[j - 1]).second.is_zero())
            throw DomainError("Smith factors fail the divisibility chain (internal)");
    return res;
}

namespace {

struct PartList {
    std::vector<int> free_degrees;
    std::vector<TorsionPart> torsion;
};

void append_irreducible_parts(const RingSpecPtr& R, const RingElement& f, int deg,
                              std::vector<TorsionPart>& out) {
    if (R->vars().empty()) {
        mpz_class n = abs(as_integer(f));
        for (mpz_class p = 2; p * p <= n; ++p) {
            int a = 0;
            while (n % p == 0) {
                n /= p;
                ++a;
            }
            if (a) out.push_back({RingElement::from_mpq(R, mpq_class(p)), a, deg});
        }
        if (n > 1) out.push_back({RingElement::from_mpq(R, mpq_class(n)), 1, deg});
    } else {
        const auto& terms = f.numerator_terms();
        if (terms.size() != 1)
            throw DomainError("torsion factor is not a monomial (internal): " + f.to_string());
        const int a = terms.begin()->first[0];
        out.push_back({RingElement::variable(R, R->vars()[0].name), a, deg});
    }
}

// Homology at one spot: kernel of d_out modulo image of d_in, with degree
// labels deg_mid / deg_hi / deg_lo on the three generator sets.
PartList homology_parts(const RingMatrix& d_out, const RingMatrix& d_in,
                        const std::vector<int>& deg_mid, const std::vector<int>& deg_hi,
                        const std::vector<int>& deg_lo) {
    const auto R = d_out.spec();
    SNFResult s1 = smith_normal_form(d_out, deg_hi, deg_mid);
    const int rank1 = static_cast<int>(s1.factors.size());
    const int mid = d_out.cols();
    const int k = mid - rank1;

    RingMatrix W = s1.Vinv * d_in;
    RingMatrix Y(R, k, d_in.cols());
    for (int c = 0; c < W.cols(); ++c)
        for (const auto& [r, v] : W.column(c)) {
            if (r < rank1)
                throw DomainError("differential image escapes the kernel (internal)");
            Y.set(r - rank1, c, v);
        }
    std::vector<int> ker_degs(s1.col_degrees.begin() + rank1, s1.col_degrees.end());

    SNFResult s2 = smith_normal_form(Y, std::move(ker_degs), deg_lo);
    const int rank2 = static_cast<int>(s2.factors.size());
    PartList parts;
    for (int j = 0; j < rank2; ++j) {
        if (s2.factors[j].is_unit()) continue;
        append_irreducible_parts(R, s2.factors[j], s2.row_degrees[j], parts.torsion);
    }
    for (int j = rank2; j < k; ++j) parts.free_degrees.push_back(s2.row_degrees[j]);
    return parts;
}

std::map<int, std::vector<int>> indices_by_q(const std::vector<Generator>& gs) {
    std::map<int, std::vector<int>> out;
    for (size_t j = 0; j < gs.size(); ++j) out[gs[j].q].push_back(static_cast<int>(j));
    return out;
}

RingMatrix submatrix(const RingMatrix& M, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    std::vector<int> rmap(M.rows(), -1);
    for (size_t j = 0; j < rows.size(); ++j) rmap[rows[j]] = static_cast<int>(j);
    RingMatrix out(M.spec(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, v] : M.column(cols[j])) {
            if (rmap[r] < 0)
                throw DomainError("differential entry crosses degree blocks (internal)");
            out.set(rmap[r], static_cast<int>(j), v);
        }
    return out;
}

std::vector<int> degrees_of(const std::vector<Generator>& gs) {
    std::vector<int> out;
    out.reserve(gs.size());
    for (const auto& g : gs) out.push_back(g.q);
    return out;
}

}  // namespace

int BigradedHomology::free_rank(int i, int q) const {
    auto it = table.find({i, q});
    return it == table.end() ? 0 : it->second.free_rank;
}

int BigradedHomology::total_free_rank() const {
    int out = 0;
    for (const auto& [key, grp] : table) out += grp.free_rank;
    return out;
}

int BigradedHomology::torsion_count() const {
    int out = 0;
    for (const auto& [key, grp] : table) out += static_cast<int>(grp.torsion.size());
    return out;
}

std::string BigradedHomology::to_text() const {
    std::ostringstream os;
    for (const auto& [key, grp] : table) {
        os << "(" << key.first << "," << key.second << "):";
        if (grp.free_rank) os << " free^" << grp.free_rank;
        for (const auto& tp : grp.torsion)
            os << " " << tp.base.to_string() << "^" << tp.power;
        os << "\n";
    }
    return os.str();
}

namespace {

std::atomic<int> g_thread_cap{1};

// One independent kernel/cokernel problem; tasks share no mutable state.
struct BlockTask {
    int i = 0;
    RingMatrix dout, din;
    std::vector<int> dm, dh, dl;
};

std::vector<PartList> solve_tasks(const std::vector<BlockTask>& tasks) {
    std::vector<PartList> results(tasks.size());
    int cap = g_thread_cap.load();
    if (cap == 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    cap = std::min<int>(cap, static_cast<int>(tasks.size()));
    auto solve = [&](size_t k) {
        results[k] = homology_parts(tasks[k].dout, tasks[k].din, tasks[k].dm, tasks[k].dh,
                                    tasks[k].dl);
    };
    if (cap <= 1) {
        for (size_t k = 0; k < tasks.size(); ++k) solve(k);
        return results;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1)) {
            try {
                solve(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(cap);
    for (int w = 0; w < cap; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace

void set_thread_cap(int n) { g_thread_cap.store(n < 0 ? 1 : n); }

int thread_cap() { return g_thread_cap.load(); }

BigradedHomology bigraded_homology(const GradedComplex& C) {
    if (!C.graded)
        throw DomainError(
            "homology needs a graded complex; avoid base changes that break the grading");
    if (!C.ring->is_euclidean())
        throw DomainError("homology over " + C.ring->to_string() +
                          " is not supported: change coefficients to Z, a field, or a "
                          "one-variable polynomial ring over a field");
    BigradedHomology H;
    H.ring = C.ring;
    const bool blockwise = C.ring->vars().empty();

    std::vector<BlockTask> tasks;
    for (const auto& [i, mid] : C.gens) {
        if (mid.empty()) continue;
        const RingMatrix dout = C.d(i);
        const RingMatrix din = C.d(i - 1);
        if (blockwise) {
            const auto hi_groups = indices_by_q(C.generators(i + 1));
            const auto lo_groups = indices_by_q(C.generators(i - 1));
            static const std::vector<int> none;
            for (const auto& [q, mid_idx] : indices_by_q(mid)) {
                auto hit = hi_groups.find(q);
                auto lit = lo_groups.find(q);
                const auto& hi_idx = hit == hi_groups.end() ? none : hit->second;
                const auto& lo_idx = lit == lo_groups.end() ? none : lit->second;
                tasks.push_back({i, submatrix(dout, hi_idx, mid_idx),
                                 submatrix(din, mid_idx, lo_idx),
                                 std::vector<int>(mid_idx.size(), q),
                                 std::vector<int>(hi_idx.size(), q),
                                 std::vector<int>(lo_idx.size(), q)});
            }
        } else {
            tasks.push_back({i, dout, din, degrees_of(mid), degrees_of(C.generators(i + 1)),
                             degrees_of(C.generators(i - 1))});
        }
    }

    const std::vector<PartList> results = solve_tasks(tasks);
    for (size_t k = 0; k < tasks.size(); ++k) {
        const int i = tasks[k].i;
        for (int q : results[k].free_degrees) ++H.table[{i, q}].free_rank;
        for (const auto& tp : results[k].torsion) H.table[{i, tp.gen_q}].torsion.push_back(tp);
    }
    for (auto& [key, grp] : H.table)
        std::sort(grp.torsion.begin(), grp.torsion.end(),
                  [](const TorsionPart& a, const TorsionPart& b) {
                      if (a.power != b.power) return a.power < b.power;
                      return a.base.to_string() < b.base.to_string();
                  });
    return H;
}

PidSummary pid_decompose(const BigradedHomology& H) {
    const auto& R = H.ring;
    if (!R || R->vars().size() != 1 || R->is_fraction_field() ||
        R->scalar() == ScalarKind::integers)
        throw DomainError(
            "module decomposition needs homology over a one-variable polynomial ring "
            "with field scalars");
    PidSummary out;
    for (const auto& [key, grp] : H.table) {
        for (int j = 0; j < grp.free_rank; ++j) out.free_summands.push_back(key);
        for (const auto& tp : grp.torsion) out.pieces.push_back({tp.power, key.first, tp.gen_q});
    }
    return out;
}

}  // namespace frobkh
