#include "hopfcyc/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace hopfcyc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CompositionNotZero: return "CompositionNotZero";
        case ErrorKind::NotWellDefined: return "NotWellDefined";
        case ErrorKind::ActionMismatch: return "ActionMismatch";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::NotIso: return "NotIso";
        case ErrorKind::NotEquivariant: return "NotEquivariant";
        case ErrorKind::CompatibilityFail: return "CompatibilityFail";
        case ErrorKind::NotAssociative: return "NotAssociative";
        case ErrorKind::NotUnital: return "NotUnital";
        case ErrorKind::NotCyclic: return "NotCyclic";
        case ErrorKind::HomotopyFail: return "HomotopyFail";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Unresolved: return "Unresolved";
    }
    return "Error";
}

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::unit(Index i, Scalar c) {
    SparseVec v;
    if (!c.is_zero()) v.entries_.push_back({i, std::move(c)});
    return v;
}

SparseVec SparseVec::from_dense(const std::vector<Scalar>& d) {
    SparseVec v;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) v.entries_.push_back({static_cast<Index>(i), d[i]});
    return v;
}

Scalar SparseVec::at(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.index < k; });
    if (it != entries_.end() && it->index == i) return it->value;
    return Scalar();
}

void SparseVec::push_back(Index i, Scalar c) {
    if (!c.is_zero()) entries_.push_back({i, std::move(c)});
}

SparseVec& SparseVec::scale(const Scalar& c) {
    if (c.is_zero()) {
        entries_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto& e : entries_) e.value *= c;
    return *this;
}

void SparseVec::axpy(const Scalar& c, const SparseVec& other) {
    if (c.is_zero() || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->index < a->index) {
            out.push_back({b->index, c * b->value});
            ++b;
        } else {
            Scalar v = std::move(a->value);
            v += c * b->value;
            if (!v.is_zero()) out.push_back({a->index, std::move(v)});
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

std::vector<Scalar> SparseVec::to_dense(Index dim) const {
    std::vector<Scalar> d(static_cast<std::size_t>(dim));
    for (const auto& e : entries_) d[static_cast<std::size_t>(e.index)] = e.value;
    return d;
}

bool operator==(const SparseVec& a, const SparseVec& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
        if (a.entries_[i].index != b.entries_[i].index || a.entries_[i].value != b.entries_[i].value)
            return false;
    return true;
}

std::string describe(const SparseVec& v) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& e : v.entries()) {
        if (!first) os << ", ";
        first = false;
        os << e.index << ":" << e.value;
    }
    os << "}";
    return os.str();
}

// -------------------------------------------------------------- Accumulator

Accumulator::Accumulator(Index dim) { resize(dim); }

void Accumulator::resize(Index dim) {
    clear();
    vals_.assign(static_cast<std::size_t>(dim), Scalar());
    mark_.assign(static_cast<std::size_t>(dim), 0);
}

void Accumulator::add(Index i, const Scalar& c) {
    if (c.is_zero()) return;
    auto k = static_cast<std::size_t>(i);
    if (!mark_[k]) {
        mark_[k] = 1;
        touched_.push_back(i);
        vals_[k] = c;
    } else {
        vals_[k] += c;
    }
}

void Accumulator::add(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return;
    if (c.is_one()) {
        for (const auto& e : v.entries()) add(e.index, e.value);
    } else {
        for (const auto& e : v.entries()) add(e.index, c * e.value);
    }
}

SparseVec Accumulator::take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    for (Index i : touched_) {
        auto k = static_cast<std::size_t>(i);
        out.push_back(i, std::move(vals_[k]));
        vals_[k] = Scalar();
        mark_[k] = 0;
    }
    touched_.clear();
    return out;
}

void Accumulator::clear() {
    for (Index i : touched_) {
        auto k = static_cast<std::size_t>(i);
        vals_[k] = Scalar();
        mark_[k] = 0;
    }
    touched_.clear();
}

// ------------------------------------------------------------------- Matrix

Matrix Matrix::identity(Index n) {
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) m.set_col(i, SparseVec::unit(i));
    return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Scalar>>& rm) {
    Index r = static_cast<Index>(rm.size());
    Index c = r == 0 ? 0 : static_cast<Index>(rm[0].size());
    Matrix m(r, c);
    for (Index j = 0; j < c; ++j) {
        SparseVec v;
        for (Index i = 0; i < r; ++i) v.push_back(i, rm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        m.set_col(j, std::move(v));
    }
    return m;
}

Matrix Matrix::from_columns(Index rows, std::vector<SparseVec> cols) {
    Matrix m;
    m.rows_ = rows;
    m.cols_ = std::move(cols);
    return m;
}

std::size_t Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.nnz();
    return n;
}

bool Matrix::is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& v) { return v.empty(); });
}

SparseVec Matrix::apply(const SparseVec& x) const {
    if (x.nnz() == 1) {
        SparseVec r = col(x.entries()[0].index);
        return r.scale(x.entries()[0].value);
    }
    Accumulator acc(rows_);
    for (const auto& e : x.entries()) acc.add(col(e.index), e.value);
    return acc.take();
}

Matrix Matrix::transpose() const {
    std::vector<SparseVec> out(static_cast<std::size_t>(rows_));
    for (Index j = 0; j < cols(); ++j)
        for (const auto& e : col(j).entries()) out[static_cast<std::size_t>(e.index)].push_back(j, e.value);
    return from_columns(cols(), std::move(out));
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols() != o.rows()) throw Error(ErrorKind::ActionMismatch, "matrix product shape mismatch");
    Matrix r(rows_, o.cols());
    Accumulator acc(rows_);
    for (Index j = 0; j < o.cols(); ++j) {
        const auto& oc = o.col(j);
        if (oc.nnz() == 1) {
            SparseVec v = col(oc.entries()[0].index);
            r.set_col(j, std::move(v.scale(oc.entries()[0].value)));
            continue;
        }
        for (const auto& e : oc.entries()) acc.add(col(e.index), e.value);
        r.set_col(j, acc.take());
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw Error(ErrorKind::ActionMismatch, "matrix sum shape mismatch");
    Matrix r = *this;
    for (Index j = 0; j < cols(); ++j) r.cols_[static_cast<std::size_t>(j)].axpy(Scalar(1), o.col(j));
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw Error(ErrorKind::ActionMismatch, "matrix difference shape mismatch");
    Matrix r = *this;
    for (Index j = 0; j < cols(); ++j) r.cols_[static_cast<std::size_t>(j)].axpy(Scalar(-1), o.col(j));
    return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix r = *this;
    for (auto& v : r.cols_) v.scale(c);
    return r;
}

Matrix Matrix::pow(int k) const {
    Matrix r = identity(rows_);
    for (int i = 0; i < k; ++i) r = *this * r;
    return r;
}

Matrix Matrix::col_range(Index first, Index count) const {
    Matrix r(rows_, count);
    for (Index j = 0; j < count; ++j) r.set_col(j, col(first + j));
    return r;
}

std::vector<std::vector<Scalar>> Matrix::to_dense() const {
    std::vector<std::vector<Scalar>> d(static_cast<std::size_t>(rows_), std::vector<Scalar>(cols_.size()));
    for (Index j = 0; j < cols(); ++j)
        for (const auto& e : col(j).entries()) d[static_cast<std::size_t>(e.index)][static_cast<std::size_t>(j)] = e.value;
    return d;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

SparseVec kron(const SparseVec& a, const SparseVec& b, Index b_dim) {
    SparseVec out;
    for (const auto& x : a.entries())
        for (const auto& y : b.entries()) out.push_back(x.index * b_dim + y.index, x.value * y.value);
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.cols(); ++i)
        for (Index j = 0; j < b.cols(); ++j) out.set_col(i * b.cols() + j, kron(a.col(i), b.col(j), b.rows()));
    return out;
}

Matrix assemble_blocks(const std::vector<Index>& row_dims, const std::vector<Index>& col_dims,
                       const std::vector<std::vector<const Matrix*>>& blocks) {
    std::vector<Index> row_off(row_dims.size() + 1, 0), col_off(col_dims.size() + 1, 0);
    for (std::size_t i = 0; i < row_dims.size(); ++i) row_off[i + 1] = row_off[i] + row_dims[i];
    for (std::size_t j = 0; j < col_dims.size(); ++j) col_off[j + 1] = col_off[j] + col_dims[j];
    Matrix out(row_off.back(), col_off.back());
    for (std::size_t bj = 0; bj < col_dims.size(); ++bj) {
        for (Index j = 0; j < col_dims[bj]; ++j) {
            SparseVec v;
            for (std::size_t bi = 0; bi < row_dims.size(); ++bi) {
                const Matrix* blk = blocks[bi][bj];
                if (!blk) continue;
                if (blk->rows() != row_dims[bi] || blk->cols() != col_dims[bj])
                    throw Error(ErrorKind::ActionMismatch, "block shape mismatch");
                for (const auto& e : blk->col(j).entries()) v.push_back(row_off[bi] + e.index, e.value);
            }
            out.set_col(col_off[bj] + j, std::move(v));
        }
    }
    return out;
}

// ------------------------------------------------------------ EchelonBasis

EchelonBasis::EchelonBasis(Index dim) : dim_(dim), pivot_row_(static_cast<std::size_t>(dim), -1) {}

SparseVec EchelonBasis::reduce(SparseVec v) const {
    // Once the top entry is not a pivot it stays in the residue; peel it
    // off and continue below it.
    std::vector<Entry> kept;
    while (!v.empty()) {
        Index h = v.max_index();
        Index r = pivot_row_[static_cast<std::size_t>(h)];
        if (r >= 0) {
            Scalar c = -v.entries().back().value;
            v.axpy(c, rows_[static_cast<std::size_t>(r)]);
        } else {
            kept.push_back(v.pop_back());
        }
    }
    SparseVec out;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) out.push_back(it->index, std::move(it->value));
    return out;
}

bool EchelonBasis::insert(SparseVec v) {
    while (!v.empty()) {
        Index h = v.max_index();
        Index r = pivot_row_[static_cast<std::size_t>(h)];
        if (r < 0) break;
        Scalar c = -v.entries().back().value;
        v.axpy(c, rows_[static_cast<std::size_t>(r)]);
    }
    if (v.empty()) return false;
    Index h = v.max_index();
    Scalar lead = v.entries().back().value;
    if (!lead.is_one()) v.scale(lead.inverse());
    pivot_row_[static_cast<std::size_t>(h)] = static_cast<Index>(rows_.size());
    rows_.push_back(std::move(v));
    pivots_.push_back(h);
    return true;
}

void EchelonBasis::fully_reduce() {
    std::vector<Index> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Index>(i);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return pivots_[static_cast<std::size_t>(a)] < pivots_[static_cast<std::size_t>(b)];
    });
    Accumulator acc(dim_);
    for (Index r : order) {
        SparseVec& row = rows_[static_cast<std::size_t>(r)];
        Index p = pivots_[static_cast<std::size_t>(r)];
        bool needs = false;
        for (const auto& e : row.entries())
            if (e.index != p && is_pivot(e.index)) {
                needs = true;
                break;
            }
        if (!needs) continue;
        acc.add(row, Scalar(1));
        for (const auto& e : row.entries()) {
            if (e.index == p || !is_pivot(e.index)) continue;
            acc.add(rows_[static_cast<std::size_t>(pivot_row_[static_cast<std::size_t>(e.index)])], -e.value);
        }
        row = acc.take();
    }
}

// ------------------------------------------------------------ size limit

namespace {
std::atomic<Index> g_size_limit{50000};
}

Index size_limit() { return g_size_limit.load(); }
void set_size_limit(Index limit) { g_size_limit.store(limit); }

void check_size(std::int64_t ambient, const std::string& what) {
    if (ambient > size_limit())
        throw Error(ErrorKind::SizeLimit, what + ": ambient dimension " + std::to_string(ambient) +
                                              " exceeds limit " + std::to_string(size_limit()));
}

// ----------------------------------------------------------- QuotientSpace

QuotientSpace::QuotientSpace(Index ambient_dim, EchelonBasis relations) : ambient_dim_(ambient_dim) {
    relations.fully_reduce();
    coord_index_.assign(static_cast<std::size_t>(ambient_dim), -1);
    for (Index c = 0; c < ambient_dim; ++c) {
        if (!relations.is_pivot(c)) {
            coord_index_[static_cast<std::size_t>(c)] = static_cast<Index>(basis_coord_.size());
            basis_coord_.push_back(c);
        }
    }
    pivot_image_.assign(static_cast<std::size_t>(ambient_dim), SparseVec());
    const auto& rows = relations.rows();
    const auto& piv = relations.pivots();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        SparseVec img;
        for (const auto& e : rows[r].entries()) {
            if (e.index == piv[r]) continue;
            img.push_back(coord_index_[static_cast<std::size_t>(e.index)], -e.value);
        }
        pivot_image_[static_cast<std::size_t>(piv[r])] = std::move(img);
    }
    relation_rows_ = rows;
}

void QuotientSpace::project_coord(Index c, const Scalar& coeff, Accumulator& out) const {
    Index k = coord_index_[static_cast<std::size_t>(c)];
    if (k >= 0) {
        out.add(k, coeff);
    } else {
        out.add(pivot_image_[static_cast<std::size_t>(c)], coeff);
    }
}

SparseVec QuotientSpace::project(const SparseVec& v) const {
    Accumulator acc(dim());
    for (const auto& e : v.entries()) project_coord(e.index, e.value, acc);
    return acc.take();
}

Matrix QuotientSpace::relation_basis() const { return Matrix::from_columns(ambient_dim_, relation_rows_); }

Matrix QuotientSpace::projection() const {
    Matrix m(dim(), ambient_dim_);
    for (Index c = 0; c < ambient_dim_; ++c) {
        Index k = coord_index_[static_cast<std::size_t>(c)];
        m.set_col(c, k >= 0 ? SparseVec::unit(k) : pivot_image_[static_cast<std::size_t>(c)]);
    }
    return m;
}

Matrix QuotientSpace::section() const {
    Matrix m(ambient_dim_, dim());
    for (Index k = 0; k < dim(); ++k) m.set_col(k, SparseVec::unit(coord(k)));
    return m;
}

// ------------------------------------------------------- elimination ops

Index rank(const Matrix& m) {
    EchelonBasis b(m.rows());
    for (Index j = 0; j < m.cols(); ++j) {
        b.insert(m.col(j));
        if (b.rank() == m.rows()) break;
    }
    return b.rank();
}

namespace {

// Echelon form of the columns of m where each stored row remembers the
// combination of columns producing it.  Augmented coordinates: tracking part
// at [0, cols), matrix part at [cols, cols+rows), so pivots land in the
// matrix part whenever it is nonzero.
class TrackedElimination {
public:
    explicit TrackedElimination(const Matrix& m)
        : cols_(m.cols()), row_of_pivot_(static_cast<std::size_t>(m.rows() + m.cols()), -1) {
        for (Index j = 0; j < cols_; ++j) {
            SparseVec aug = SparseVec::unit(j);
            for (const auto& e : m.col(j).entries()) aug.push_back(cols_ + e.index, e.value);
            SparseVec r = reduce(std::move(aug));
            if (!r.empty() && r.max_index() >= cols_) {
                Index h = r.max_index();
                Scalar lead = r.entries().back().value;
                r.scale(lead.inverse());
                row_of_pivot_[static_cast<std::size_t>(h)] = static_cast<Index>(rows_.size());
                rows_.push_back(std::move(r));
            } else {
                kernel_.push_back(std::move(r));
            }
        }
    }

    const std::vector<SparseVec>& kernel() const { return kernel_; }

    SparseVec solve(const SparseVec& b) const {
        SparseVec aug;
        for (const auto& e : b.entries()) aug.push_back(cols_ + e.index, e.value);
        SparseVec r = reduce(std::move(aug));
        if (!r.empty() && r.max_index() >= cols_)
            throw Error(ErrorKind::NotInvertible, "right-hand side outside the column space");
        return r.scale(Scalar(-1));
    }

private:
    SparseVec reduce(SparseVec v) const {
        while (!v.empty() && v.max_index() >= cols_) {
            Index r = row_of_pivot_[static_cast<std::size_t>(v.max_index())];
            if (r < 0) break;
            Scalar c = -v.entries().back().value;
            v.axpy(c, rows_[static_cast<std::size_t>(r)]);
        }
        return v;
    }

    Index cols_;
    std::vector<Index> row_of_pivot_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> kernel_;
};

}  // namespace

Matrix kernel_basis(const Matrix& m) {
    TrackedElimination t(m);
    return Matrix::from_columns(m.cols(), t.kernel());
}

SparseVec solve(const Matrix& m, const SparseVec& b) { return TrackedElimination(m).solve(b); }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::NotInvertible, "non-square matrix");
    if (rank(m) != m.rows()) throw Error(ErrorKind::NotInvertible, "singular matrix");
    TrackedElimination s(m);
    Matrix inv(m.cols(), m.rows());
    for (Index i = 0; i < m.rows(); ++i) inv.set_col(i, s.solve(SparseVec::unit(i)));
    return inv;
}

QuotientSpace quotient_by(Index ambient_dim, const Matrix& relations) {
    check_size(ambient_dim, "quotient");
    if (relations.rows() != ambient_dim) throw Error(ErrorKind::ActionMismatch, "relation matrix has wrong row count");
    EchelonBasis b(ambient_dim);
    for (Index j = 0; j < relations.cols(); ++j) b.insert(relations.col(j));
    return QuotientSpace(ambient_dim, std::move(b));
}

Index homology_dim(const Matrix& d_in, const Matrix& d_out) {
    if (d_out.cols() != d_in.rows()) throw Error(ErrorKind::CompositionNotZero, "differential shapes do not chain");
    if (!(d_out * d_in).is_zero()) throw Error(ErrorKind::CompositionNotZero, "d_out * d_in != 0");
    return (d_out.cols() - rank(d_out)) - rank(d_in);
}

Matrix descend(const Matrix& f, const QuotientSpace& source, const QuotientSpace& target) {
    if (f.cols() != source.ambient_dim() || f.rows() != target.ambient_dim())
        throw Error(ErrorKind::ActionMismatch, "descend: shape mismatch");
    for (const auto& rel : source.relation_rows()) {
        SparseVec img = target.project(f.apply(rel));
        if (!img.empty())
            throw Error(ErrorKind::NotWellDefined, "relation " + describe(rel) + " maps to " + describe(img));
    }
    Matrix out(target.dim(), source.dim());
    for (Index k = 0; k < source.dim(); ++k) out.set_col(k, target.project(f.col(source.coord(k))));
    return out;
}

Matrix descend_projected(const Matrix& values, const QuotientSpace& source, const std::string& what) {
    if (values.cols() != source.ambient_dim()) throw Error(ErrorKind::ActionMismatch, what + ": shape mismatch");
    Accumulator acc(values.rows());
    for (const auto& rel : source.relation_rows()) {
        for (const auto& e : rel.entries()) acc.add(values.col(e.index), e.value);
        SparseVec img = acc.take();
        if (!img.empty())
            throw Error(ErrorKind::NotWellDefined,
                        what + ": relation " + describe(rel) + " has nonzero image " + describe(img));
    }
    Matrix out(values.rows(), source.dim());
    for (Index k = 0; k < source.dim(); ++k) out.set_col(k, values.col(source.coord(k)));
    return out;
}

}  // namespace hopfcyc
