#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/scalar.hpp"

namespace hopfcyc {

using Index = std::int32_t;

struct Entry {
    Index index;
    Scalar value;
};

// Sparse vector: entries sorted by strictly increasing index, no zero values.
class SparseVec {
public:
    SparseVec() = default;
    static SparseVec unit(Index i, Scalar c = Scalar(1));
    static SparseVec from_dense(const std::vector<Scalar>& v);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    Scalar at(Index i) const;
    Index max_index() const { return entries_.back().index; }

    // Appends an entry whose index exceeds every stored one.
    void push_back(Index i, Scalar c);
    Entry pop_back() {
        Entry e = std::move(entries_.back());
        entries_.pop_back();
        return e;
    }

    SparseVec& scale(const Scalar& c);
    // this += c * other
    void axpy(const Scalar& c, const SparseVec& other);
    std::vector<Scalar> to_dense(Index dim) const;

    friend bool operator==(const SparseVec& a, const SparseVec& b);
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

private:
    std::vector<Entry> entries_;
};

// Dense scratch accumulator with a touched-index list; take() yields a
// sorted SparseVec and resets the scratch.
class Accumulator {
public:
    explicit Accumulator(Index dim = 0);
    Index dim() const { return static_cast<Index>(vals_.size()); }
    void resize(Index dim);
    void add(Index i, const Scalar& c);
    void add(const SparseVec& v, const Scalar& c);
    SparseVec take();
    void clear();

private:
    std::vector<Scalar> vals_;
    std::vector<char> mark_;
    std::vector<Index> touched_;
};

// Column-major sparse matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(Index rows, Index cols) : rows_(rows), cols_(static_cast<std::size_t>(cols)) {}
    static Matrix identity(Index n);
    static Matrix zero(Index rows, Index cols) { return Matrix(rows, cols); }
    static Matrix from_dense(const std::vector<std::vector<Scalar>>& rows_major);
    static Matrix from_columns(Index rows, std::vector<SparseVec> cols);

    Index rows() const { return rows_; }
    Index cols() const { return static_cast<Index>(cols_.size()); }
    const SparseVec& col(Index j) const { return cols_[static_cast<std::size_t>(j)]; }
    void set_col(Index j, SparseVec v) { cols_[static_cast<std::size_t>(j)] = std::move(v); }
    Scalar at(Index i, Index j) const { return col(j).at(i); }
    std::size_t nnz() const;
    bool is_zero() const;

    SparseVec apply(const SparseVec& x) const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Matrix pow(int k) const;
    // Columns [first, first+count).
    Matrix col_range(Index first, Index count) const;
    std::vector<std::vector<Scalar>> to_dense() const;

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    Index rows_ = 0;
    std::vector<SparseVec> cols_;
};

// Block matrix assembly: blocks[r][c] may be empty (rows()==0 && cols()==0
// meaning zero block); row_dims/col_dims fix the block sizes.
Matrix assemble_blocks(const std::vector<Index>& row_dims, const std::vector<Index>& col_dims,
                       const std::vector<std::vector<const Matrix*>>& blocks);

// Kronecker products with index a * dim(b) + b.
SparseVec kron(const SparseVec& a, const SparseVec& b, Index b_dim);
Matrix kron(const Matrix& a, const Matrix& b);

// Incremental echelon basis of a subspace of Q^dim. Every stored row has a
// pivot at its highest nonzero coordinate, normalised to 1.
class EchelonBasis {
public:
    explicit EchelonBasis(Index dim);
    Index dim() const { return dim_; }
    Index rank() const { return static_cast<Index>(rows_.size()); }
    // Reduces v in place; returns true (and stores it) if v was independent.
    bool insert(SparseVec v);
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    bool is_pivot(Index c) const { return pivot_row_[static_cast<std::size_t>(c)] >= 0; }
    // Back-substitution: afterwards every row vanishes at all other pivots.
    void fully_reduce();
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<Index>& pivots() const { return pivots_; }

private:
    Index dim_;
    std::vector<Index> pivot_row_;
    std::vector<SparseVec> rows_;
    std::vector<Index> pivots_;
};

// Process-wide cap on ambient dimensions of quotient constructions.
Index size_limit();
void set_size_limit(Index limit);
void check_size(std::int64_t ambient, const std::string& what);

class QuotientSpace {
public:
    QuotientSpace() = default;
    // Builds the quotient from an echelon basis of the relation subspace.
    QuotientSpace(Index ambient_dim, EchelonBasis relations);

    Index ambient_dim() const { return ambient_dim_; }
    Index dim() const { return static_cast<Index>(basis_coord_.size()); }
    Index relation_rank() const { return ambient_dim_ - dim(); }

    // Quotient basis element k is the class of ambient coordinate coord(k).
    Index coord(Index k) const { return basis_coord_[static_cast<std::size_t>(k)]; }
    // Quotient index of an ambient coordinate, or -1 if it is a pivot.
    Index quotient_index(Index c) const { return coord_index_[static_cast<std::size_t>(c)]; }

    void project_coord(Index c, const Scalar& coeff, Accumulator& out) const;
    SparseVec project(const SparseVec& v) const;

    Matrix relation_basis() const;
    Matrix projection() const;
    Matrix section() const;
    const std::vector<SparseVec>& relation_rows() const { return relation_rows_; }

private:
    Index ambient_dim_ = 0;
    std::vector<Index> basis_coord_;
    std::vector<Index> coord_index_;
    std::vector<SparseVec> pivot_image_;  // per ambient coordinate; empty for basis coordinates
    std::vector<SparseVec> relation_rows_;
};

Index rank(const Matrix& m);
Matrix kernel_basis(const Matrix& m);
QuotientSpace quotient_by(Index ambient_dim, const Matrix& relations);
// Solves m x = b; throws NotInvertible when b is outside the column space.
SparseVec solve(const Matrix& m, const SparseVec& b);
// Inverse of a square matrix; throws NotInvertible.
Matrix inverse(const Matrix& m);
Index homology_dim(const Matrix& d_in, const Matrix& d_out);
Matrix descend(const Matrix& f, const QuotientSpace& source, const QuotientSpace& target);

// Operator on a quotient given by its values (already in target quotient
// coordinates) on every ambient coordinate of the source.  Verifies that all
// source relations are killed, then restricts to the quotient basis.
Matrix descend_projected(const Matrix& values_on_ambient, const QuotientSpace& source,
                         const std::string& what);

std::string describe(const SparseVec& v);

}  // namespace hopfcyc
