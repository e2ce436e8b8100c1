#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hopfcyc/linalg.hpp"

namespace hopfcyc {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Finite-dimensional unital associative algebra given by structure
// constants: product(i, j) is the coordinate vector of e_i * e_j.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    // Validates associativity on all basis triples and the unit on all basis
    // elements; throws NotAssociative / NotUnital naming the offending basis.
    static AlgebraPtr make(std::string name, std::vector<std::string> labels, std::vector<SparseVec> products,
                           SparseVec unit);

    const std::string& name() const { return name_; }
    Index dim() const { return static_cast<Index>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }
    const SparseVec& product(Index i, Index j) const {
        return products_[static_cast<std::size_t>(i) * labels_.size() + static_cast<std::size_t>(j)];
    }
    const SparseVec& unit() const { return unit_; }

    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    // Matrices of x -> e_i x and x -> x e_i.
    const Matrix& left_mult(Index i) const { return left_[static_cast<std::size_t>(i)]; }
    const Matrix& right_mult(Index i) const { return right_[static_cast<std::size_t>(i)]; }
    Matrix left_mult(const SparseVec& a) const;
    Matrix right_mult(const SparseVec& a) const;

    // Basis elements generating the algebra (greedy in basis order); the
    // relations of a balanced tensor product need only these.
    const std::vector<Index>& generators() const { return generators_; }

    AlgebraPtr opposite() const;
    std::string describe(const SparseVec& v) const;

private:
    Algebra() = default;
    void build_caches();

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<SparseVec> products_;
    SparseVec unit_;
    std::vector<Matrix> left_, right_;
    std::vector<Index> generators_;
    mutable std::once_flag opposite_once_;
    mutable AlgebraPtr opposite_;
    mutable std::weak_ptr<const Algebra> opposite_of_;
};

bool same_algebra(const Algebra& a, const Algebra& b);

AlgebraPtr opposite(const AlgebraPtr& a);
AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraPtr enveloping(const AlgebraPtr& r);
AlgebraPtr matrix_algebra(const AlgebraPtr& r, Index k);

AlgebraPtr rationals();
AlgebraPtr dual_numbers();   // Q[x]/(x^2), basis {1, x}
AlgebraPtr split_product();  // Q x Q, basis of idempotents {a, b}

// Index of r (x) s in tensor_algebra(A, B).
inline Index tensor_index(Index i, Index j, Index dim_b) { return i * dim_b + j; }

struct AlgebraMap {
    AlgebraPtr source, target;
    Matrix matrix;  // target.dim x source.dim
    SparseVec apply(const SparseVec& v) const { return matrix.apply(v); }
    SparseVec image(Index i) const { return matrix.col(i); }
};

// Validates unitality and multiplicativity on all basis pairs.
AlgebraMap make_algebra_map(AlgebraPtr source, AlgebraPtr target, Matrix matrix);

}  // namespace hopfcyc
