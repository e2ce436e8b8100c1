#include "hopfcyc/algebra.hpp"

#include <sstream>

namespace hopfcyc {

namespace {

SparseVec unit_of(const std::vector<SparseVec>& products, const SparseVec& u, Index dim, Index i, bool left) {
    Accumulator acc(dim);
    for (const auto& e : u.entries()) {
        const SparseVec& p = left ? products[static_cast<std::size_t>(e.index * dim + i)]
                                  : products[static_cast<std::size_t>(i * dim + e.index)];
        acc.add(p, e.value);
    }
    return acc.take();
}

}  // namespace

AlgebraPtr Algebra::make(std::string name, std::vector<std::string> labels, std::vector<SparseVec> products,
                         SparseVec unit) {
    const Index n = static_cast<Index>(labels.size());
    if (products.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw Error(ErrorKind::ParseError, name + ": structure constants have wrong shape");
    for (const auto& p : products)
        if (!p.empty() && (p.max_index() >= n || p.entries()[0].index < 0))
            throw Error(ErrorKind::ParseError, name + ": product coordinate out of range");
    for (Index i = 0; i < n; ++i) {
        if (unit_of(products, unit, n, i, true) != SparseVec::unit(i) ||
            unit_of(products, unit, n, i, false) != SparseVec::unit(i))
            throw Error(ErrorKind::NotUnital, name + ": unit fails on basis element " + labels[static_cast<std::size_t>(i)]);
    }
    Accumulator lhs(n), rhs(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const SparseVec& ij = products[static_cast<std::size_t>(i * n + j)];
            for (Index k = 0; k < n; ++k) {
                for (const auto& e : ij.entries()) lhs.add(products[static_cast<std::size_t>(e.index * n + k)], e.value);
                const SparseVec& jk = products[static_cast<std::size_t>(j * n + k)];
                for (const auto& e : jk.entries()) rhs.add(products[static_cast<std::size_t>(i * n + e.index)], e.value);
                if (lhs.take() != rhs.take())
                    throw Error(ErrorKind::NotAssociative,
                                name + ": (e_i e_j) e_k != e_i (e_j e_k) for (" + labels[static_cast<std::size_t>(i)] + ", " +
                                    labels[static_cast<std::size_t>(j)] + ", " + labels[static_cast<std::size_t>(k)] + ")");
            }
        }
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->name_ = std::move(name);
    a->labels_ = std::move(labels);
    a->products_ = std::move(products);
    a->unit_ = std::move(unit);
    a->build_caches();
    return a;
}

void Algebra::build_caches() {
    const Index n = dim();
    left_.assign(static_cast<std::size_t>(n), Matrix(n, n));
    right_.assign(static_cast<std::size_t>(n), Matrix(n, n));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            left_[static_cast<std::size_t>(i)].set_col(j, product(i, j));
            right_[static_cast<std::size_t>(i)].set_col(j, product(j, i));
        }

    // Greedy generating set: add the first basis element outside the
    // subalgebra generated so far, then close up again.
    auto closure = [&](const std::vector<Index>& gens) {
        EchelonBasis span(n);
        std::vector<SparseVec> words{unit_};
        span.insert(unit_);
        for (std::size_t w = 0; w < words.size(); ++w)
            for (Index g : gens) {
                SparseVec next = right_mult(g).apply(words[w]);
                if (span.insert(next)) words.push_back(std::move(next));
            }
        return span;
    };
    generators_.clear();
    EchelonBasis span = closure(generators_);
    for (Index i = 0; i < n && span.rank() < n; ++i) {
        if (span.contains(SparseVec::unit(i))) continue;
        generators_.push_back(i);
        span = closure(generators_);
    }
}

SparseVec Algebra::multiply(const SparseVec& a, const SparseVec& b) const {
    Accumulator acc(dim());
    for (const auto& x : a.entries())
        for (const auto& y : b.entries()) acc.add(product(x.index, y.index), x.value * y.value);
    return acc.take();
}

Matrix Algebra::left_mult(const SparseVec& a) const {
    Matrix m(dim(), dim());
    for (Index j = 0; j < dim(); ++j) m.set_col(j, multiply(a, SparseVec::unit(j)));
    return m;
}

Matrix Algebra::right_mult(const SparseVec& a) const {
    Matrix m(dim(), dim());
    for (Index j = 0; j < dim(); ++j) m.set_col(j, multiply(SparseVec::unit(j), a));
    return m;
}

AlgebraPtr Algebra::opposite() const {
    if (auto back = opposite_of_.lock()) return back;
    std::call_once(opposite_once_, [this] {
        const Index n = dim();
        std::vector<SparseVec> prods(products_.size());
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) prods[static_cast<std::size_t>(i * n + j)] = product(j, i);
        auto op = std::shared_ptr<Algebra>(new Algebra());
        op->name_ = name_ + "^op";
        op->labels_ = labels_;
        op->products_ = std::move(prods);
        op->unit_ = unit_;
        op->build_caches();
        op->opposite_of_ = shared_from_this();
        opposite_ = op;
    });
    return opposite_;
}

std::string Algebra::describe(const SparseVec& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : v.entries()) {
        if (!first) os << " + ";
        first = false;
        if (!e.value.is_one()) os << "(" << e.value << ")";
        os << label(e.index);
    }
    return os.str();
}

bool same_algebra(const Algebra& a, const Algebra& b) {
    if (&a == &b) return true;
    if (a.dim() != b.dim() || a.unit() != b.unit()) return false;
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < a.dim(); ++j)
            if (a.product(i, j) != b.product(i, j)) return false;
    return true;
}

AlgebraPtr opposite(const AlgebraPtr& a) { return a->opposite(); }

AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    const Index na = a->dim(), nb = b->dim(), n = na * nb;
    std::vector<std::string> labels;
    for (Index i = 0; i < na; ++i)
        for (Index j = 0; j < nb; ++j) labels.push_back(a->label(i) + "⊗" + b->label(j));
    std::vector<SparseVec> prods(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    Accumulator acc(n);
    for (Index i1 = 0; i1 < na; ++i1)
        for (Index j1 = 0; j1 < nb; ++j1)
            for (Index i2 = 0; i2 < na; ++i2)
                for (Index j2 = 0; j2 < nb; ++j2) {
                    for (const auto& x : a->product(i1, i2).entries())
                        for (const auto& y : b->product(j1, j2).entries())
                            acc.add(tensor_index(x.index, y.index, nb), x.value * y.value);
                    prods[static_cast<std::size_t>(tensor_index(i1, j1, nb) * n + tensor_index(i2, j2, nb))] = acc.take();
                }
    for (const auto& x : a->unit().entries())
        for (const auto& y : b->unit().entries()) acc.add(tensor_index(x.index, y.index, nb), x.value * y.value);
    return Algebra::make(a->name() + "⊗" + b->name(), std::move(labels), std::move(prods), acc.take());
}

AlgebraPtr enveloping(const AlgebraPtr& r) { return tensor_algebra(r, opposite(r)); }

AlgebraPtr matrix_algebra(const AlgebraPtr& r, Index k) {
    if (k < 1) throw Error(ErrorKind::ParseError, "matrix size must be at least 1");
    const Index m = r->dim(), n = k * k * m;
    auto idx = [&](Index i, Index j, Index b) { return (i * k + j) * m + b; };
    std::vector<std::string> labels;
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            for (Index b = 0; b < m; ++b)
                labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1) + "⊗" + r->label(b));
    std::vector<SparseVec> prods(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            for (Index b = 0; b < m; ++b)
                for (Index b2 = 0; b2 < m; ++b2)
                    for (Index l = 0; l < k; ++l) {
                        SparseVec p;
                        for (const auto& e : r->product(b, b2).entries()) p.push_back(idx(i, l, e.index), e.value);
                        prods[static_cast<std::size_t>(idx(i, j, b) * n + idx(j, l, b2))] = std::move(p);
                    }
    Accumulator acc(n);
    for (Index i = 0; i < k; ++i)
        for (const auto& e : r->unit().entries()) acc.add(idx(i, i, e.index), e.value);
    return Algebra::make("M" + std::to_string(k) + "(" + r->name() + ")", std::move(labels), std::move(prods),
                         acc.take());
}

AlgebraPtr rationals() {
    static AlgebraPtr q = Algebra::make("Q", {"1"}, {SparseVec::unit(0)}, SparseVec::unit(0));
    return q;
}

AlgebraPtr dual_numbers() {
    static AlgebraPtr d = Algebra::make("Q[x]/(x^2)", {"1", "x"},
                                        {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec()},
                                        SparseVec::unit(0));
    return d;
}

AlgebraPtr split_product() {
    SparseVec unit;
    unit.push_back(0, Scalar(1));
    unit.push_back(1, Scalar(1));
    static AlgebraPtr s = Algebra::make("QxQ", {"a", "b"}, {SparseVec::unit(0), SparseVec(), SparseVec(), SparseVec::unit(1)},
                                        unit);
    return s;
}

AlgebraMap make_algebra_map(AlgebraPtr source, AlgebraPtr target, Matrix matrix) {
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw Error(ErrorKind::ActionMismatch, "algebra map has wrong shape");
    if (matrix.apply(source->unit()) != target->unit())
        throw Error(ErrorKind::NotUnital, "algebra map " + source->name() + " -> " + target->name() + " is not unital");
    for (Index i = 0; i < source->dim(); ++i)
        for (Index j = 0; j < source->dim(); ++j)
            if (matrix.apply(source->product(i, j)) != target->multiply(matrix.col(i), matrix.col(j)))
                throw Error(ErrorKind::NotEquivariant, "algebra map not multiplicative on (" + source->label(i) + ", " +
                                                           source->label(j) + ")");
    return AlgebraMap{std::move(source), std::move(target), std::move(matrix)};
}

}  // namespace hopfcyc
