#pragma once

// Sparse exact matrices over a RingSpec, stored column-major (one ordered
// map of row -> entry per column).  The homology pipeline works mostly
// column-wise: differentials are built per target generator, kernels are
// column spans, and Smith reduction walks columns.

#include <map>
#include <string>
#include <vector>

#include "frobkh/ring.hpp"

namespace frobkh {

class RingMatrix {
  public:
    using Column = std::map<int, RingElement>;

    RingMatrix(RingSpecPtr spec, int rows, int cols);
    static RingMatrix identity(const RingSpecPtr& spec, int n);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_data_.size()); }
    const RingSpecPtr& spec() const { return spec_; }

    RingElement at(int r, int c) const;
    void set(int r, int c, RingElement v);  // storing zero erases the entry
    const Column& column(int c) const;
    bool is_zero() const;
    int nnz() const;

    RingMatrix operator*(const RingMatrix& o) const;
    RingMatrix operator+(const RingMatrix& o) const;
    RingMatrix operator-() const;
    RingMatrix operator-(const RingMatrix& o) const;
    bool operator==(const RingMatrix& o) const;
    bool operator!=(const RingMatrix& o) const { return !(*this == o); }

    RingMatrix transpose() const;
    // Writes m into this matrix with top-left corner at (r0, c0).
    void set_block(int r0, int c0, const RingMatrix& m);
    // Entrywise image under a ring map (entries that collapse to zero vanish).
    RingMatrix mapped(const RingHom& hom) const;

    // Elementary operations for Smith reduction.  Scaling requires a unit.
    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    void scale_row(int r, const RingElement& u);
    void scale_col(int c, const RingElement& u);
    void row_axpy(int dst, int src, const RingElement& f);  // row dst += f * row src
    void col_axpy(int dst, int src, const RingElement& f);  // col dst += f * col src

    std::string to_string() const;

  private:
    void check_bounds(int r, int c) const;

    RingSpecPtr spec_;
    int rows_;
    std::vector<Column> cols_data_;
};

// Kronecker product: entry ((ra*b.rows + rb), (ca*b.cols + cb)) = a(ra,ca)*b(rb,cb).
// This index convention is what identifies tensor products of based free
// modules with the concatenated basis ordering used throughout.
RingMatrix kron(const RingMatrix& a, const RingMatrix& b);

}  // namespace frobkh
