#include "frobkh/matrix.hpp"

#include <sstream>

namespace frobkh {

RingMatrix::RingMatrix(RingSpecPtr spec, int rows, int cols) : spec_(std::move(spec)), rows_(rows) {
    if (rows < 0 || cols < 0) throw UsageError("negative matrix dimension");
    cols_data_.resize(cols);
}

RingMatrix RingMatrix::identity(const RingSpecPtr& spec, int n) {
    RingMatrix m(spec, n, n);
    for (int i = 0; i < n; ++i) m.cols_data_[i][i] = RingElement::one(spec);
    return m;
}

void RingMatrix::check_bounds(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols())
        throw UsageError("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                         ") out of bounds for " + std::to_string(rows_) + "x" + std::to_string(cols()));
}

RingElement RingMatrix::at(int r, int c) const {
    check_bounds(r, c);
    const Column& col = cols_data_[c];
    auto it = col.find(r);
    return it == col.end() ? RingElement::zero(spec_) : it->second;
}

void RingMatrix::set(int r, int c, RingElement v) {
    check_bounds(r, c);
    if (v.is_zero())
        cols_data_[c].erase(r);
    else
        cols_data_[c][r] = std::move(v);
}

const RingMatrix::Column& RingMatrix::column(int c) const {
    if (c < 0 || c >= cols())
        throw UsageError("column index " + std::to_string(c) + " out of bounds for " +
                         std::to_string(rows_) + "x" + std::to_string(cols()));
    return cols_data_[c];
}

bool RingMatrix::is_zero() const {
    for (const Column& col : cols_data_)
        if (!col.empty()) return false;
    return true;
}

int RingMatrix::nnz() const {
    int n = 0;
    for (const Column& col : cols_data_) n += static_cast<int>(col.size());
    return n;
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
    if (cols() != o.rows_) throw UsageError("matrix product shape mismatch");
    RingMatrix r(spec_, rows_, o.cols());
    for (int j = 0; j < o.cols(); ++j) {
        Column& out = r.cols_data_[j];
        for (const auto& [k, f] : o.cols_data_[j]) {
            for (const auto& [i, v] : cols_data_[k]) {
                auto it = out.find(i);
                if (it == out.end())
                    out.emplace(i, v * f);
                else
                    it->second += v * f;
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return r;
}

RingMatrix RingMatrix::operator+(const RingMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw UsageError("matrix sum shape mismatch");
    RingMatrix r = *this;
    for (int j = 0; j < cols(); ++j) {
        Column& out = r.cols_data_[j];
        for (const auto& [i, v] : o.cols_data_[j]) {
            auto it = out.find(i);
            if (it == out.end()) {
                out.emplace(i, v);
            } else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return r;
}

RingMatrix RingMatrix::operator-() const {
    RingMatrix r = *this;
    for (Column& col : r.cols_data_)
        for (auto& [i, v] : col) v = -v;
    return r;
}

RingMatrix RingMatrix::operator-(const RingMatrix& o) const { return *this + (-o); }

bool RingMatrix::operator==(const RingMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) return false;
    for (int j = 0; j < cols(); ++j) {
        const Column& a = cols_data_[j];
        const Column& b = o.cols_data_[j];
        if (a.size() != b.size()) return false;
        auto ib = b.begin();
        for (const auto& [i, v] : a) {
            if (ib->first != i || ib->second != v) return false;
            ++ib;
        }
    }
    return true;
}

RingMatrix RingMatrix::transpose() const {
    RingMatrix r(spec_, cols(), rows_);
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, v] : cols_data_[j]) r.cols_data_[i][j] = v;
    return r;
}

void RingMatrix::set_block(int r0, int c0, const RingMatrix& m) {
    if (r0 < 0 || c0 < 0 || r0 + m.rows_ > rows_ || c0 + m.cols() > cols())
        throw UsageError("block does not fit");
    for (int j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.cols_data_[j]) cols_data_[c0 + j][r0 + i] = v;
}

RingMatrix RingMatrix::mapped(const RingHom& hom) const {
    RingMatrix r(hom.target(), rows_, cols());
    for (int j = 0; j < cols(); ++j)
        for (const auto& [i, v] : cols_data_[j]) {
            RingElement w = hom.apply(v);
            if (!w.is_zero()) r.cols_data_[j].emplace(i, std::move(w));
        }
    return r;
}

void RingMatrix::swap_rows(int a, int b) {
    check_bounds(a, 0);
    check_bounds(b, 0);
    if (a == b) return;
    for (Column& col : cols_data_) {
        auto ia = col.find(a);
        auto ib = col.find(b);
        bool ha = ia != col.end(), hb = ib != col.end();
        if (!ha && !hb) continue;
        if (ha && hb) {
            std::swap(ia->second, ib->second);
        } else if (ha) {
            col.emplace(b, std::move(ia->second));
            col.erase(a);
        } else {
            col.emplace(a, std::move(ib->second));
            col.erase(b);
        }
    }
}

void RingMatrix::swap_cols(int a, int b) {
    check_bounds(0, a);
    check_bounds(0, b);
    if (a != b) std::swap(cols_data_[a], cols_data_[b]);
}

void RingMatrix::scale_row(int r, const RingElement& u) {
    check_bounds(r, 0);
    if (!u.is_unit()) throw UsageError("row scaling requires a unit");
    for (Column& col : cols_data_) {
        auto it = col.find(r);
        if (it != col.end()) it->second *= u;
    }
}

void RingMatrix::scale_col(int c, const RingElement& u) {
    check_bounds(0, c);
    if (!u.is_unit()) throw UsageError("column scaling requires a unit");
    for (auto& [i, v] : cols_data_[c]) v *= u;
}

void RingMatrix::row_axpy(int dst, int src, const RingElement& f) {
    check_bounds(dst, 0);
    check_bounds(src, 0);
    if (dst == src) throw UsageError("row_axpy with identical rows");
    if (f.is_zero()) return;
    for (Column& col : cols_data_) {
        auto is = col.find(src);
        if (is == col.end()) continue;
        RingElement add = f * is->second;
        auto id = col.find(dst);
        if (id == col.end()) {
            if (!add.is_zero()) col.emplace(dst, std::move(add));
        } else {
            id->second += add;
            if (id->second.is_zero()) col.erase(id);
        }
    }
}

void RingMatrix::col_axpy(int dst, int src, const RingElement& f) {
    check_bounds(0, dst);
    check_bounds(0, src);
    if (dst == src) throw UsageError("col_axpy with identical columns");
    if (f.is_zero()) return;
    Column& d = cols_data_[dst];
    for (const auto& [i, v] : cols_data_[src]) {
        RingElement add = f * v;
        auto it = d.find(i);
        if (it == d.end()) {
            if (!add.is_zero()) d.emplace(i, std::move(add));
        } else {
            it->second += add;
            if (it->second.is_zero()) d.erase(it);
        }
    }
}

RingMatrix kron(const RingMatrix& a, const RingMatrix& b) {
    if (*a.spec() != *b.spec()) throw UsageError("kron over mismatched rings");
    RingMatrix r(a.spec(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int ca = 0; ca < a.cols(); ++ca)
        for (const auto& [ra, va] : a.column(ca))
            for (int cb = 0; cb < b.cols(); ++cb)
                for (const auto& [rb, vb] : b.column(cb))
                    r.set(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
    return r;
}

std::string RingMatrix::to_string() const {
    std::ostringstream out;
    out << rows_ << "x" << cols() << " over " << spec_->to_string() << "\n";
    for (int i = 0; i < rows_; ++i) {
        out << "[";
        for (int j = 0; j < cols(); ++j) {
            if (j) out << ", ";
            out << at(i, j).to_string();
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace frobkh
