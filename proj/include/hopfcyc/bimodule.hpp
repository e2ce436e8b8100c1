#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hopfcyc/algebra.hpp"

namespace hopfcyc {

enum class Side { Left, Right };

// Action of an algebra on a space, one matrix per basis element of the
// algebra.  A right action satisfies mats[j] * mats[i] = of(e_i e_j).
struct Action {
    AlgebraPtr alg;
    Side side = Side::Left;
    std::vector<Matrix> mats;

    Index space_dim() const { return mats.empty() ? 0 : mats[0].rows(); }
    const Matrix& operator[](Index i) const { return mats[static_cast<std::size_t>(i)]; }
    Matrix of(const SparseVec& a) const;
    // The same matrices read as an action of the opposite algebra from the
    // other side (a left A-action is a right A^op-action).
    Action as_opposite() const;
    // Throws ActionMismatch if this is not a unital action of alg.
    void validate(const std::string& what) const;
};

Action regular_action(const AlgebraPtr& a, Side side);
bool actions_commute(const Action& a, const Action& b);

struct Bimodule {
    std::string name;
    Index dim = 0;
    std::vector<std::string> labels;
    Action left;   // left action of left.alg
    Action right;  // right action of right.alg

    // Validates both actions and that they commute.
    static Bimodule make(std::string name, std::vector<std::string> labels, Action left, Action right);
};

Bimodule regular_bimodule(const AlgebraPtr& a);

// Which stored action of each factor takes part in the balancing.  A stored
// left action of the left factor is used as a right action of the opposite
// algebra, and symmetrically for the right factor.
struct SideSelector {
    Side of_left_factor = Side::Right;
    Side of_right_factor = Side::Left;
};

// X (x)_A Y realised as the quotient of X (x) Y (coordinate i*dim Y + j) by
// the balancing relations; the quotient basis is a set of ambient pairs.
class BalancedTensor {
public:
    // right_on_x: right action of A on X; left_on_y: left action of A on Y.
    BalancedTensor(Index x_dim, Index y_dim, const Action& right_on_x, const Action& left_on_y, std::string name = {});

    const std::string& name() const { return name_; }
    Index x_dim() const { return x_dim_; }
    Index y_dim() const { return y_dim_; }
    Index dim() const { return space_.dim(); }
    const AlgebraPtr& over() const { return over_; }
    const QuotientSpace& space() const { return space_; }

    Index ambient_index(Index i, Index j) const { return i * y_dim_ + j; }
    std::pair<Index, Index> lift(Index k) const {
        Index c = space_.coord(k);
        return {c / y_dim_, c % y_dim_};
    }

    void add_pure(Index i, Index j, const Scalar& c, Accumulator& out) const {
        space_.project_coord(ambient_index(i, j), c, out);
    }
    void add_pure(const SparseVec& x, const SparseVec& y, const Scalar& c, Accumulator& out) const;
    SparseVec pure(Index i, Index j) const;
    SparseVec pure(const SparseVec& x, const SparseVec& y) const;

    // Operator id (x) g or g (x) id on the quotient, descended with a check.
    Matrix induced_on_left_factor(const Matrix& g) const;
    Matrix induced_on_right_factor(const Matrix& g) const;
    Action induced_action_from_left_factor(const Action& a) const;
    Action induced_action_from_right_factor(const Action& a) const;

private:
    std::string name_;
    Index x_dim_, y_dim_;
    AlgebraPtr over_;
    QuotientSpace space_;
};

BalancedTensor balanced_tensor(const Bimodule& m, const Bimodule& n, SideSelector sel, std::string name = {});

// Left-associated iterated balanced tensor X_0 (x) X_1 (x) ... (x) X_n built
// pairwise.  Basis elements lift to tuples of factor basis indices.
class TensorChain : public std::enable_shared_from_this<TensorChain> {
public:
    static std::shared_ptr<const TensorChain> single(Index first_dim);
    // Appends a factor; right_on_top acts on the current top space.
    std::shared_ptr<const TensorChain> extend(const Action& right_on_top, Index factor_dim,
                                              const Action& left_on_factor, std::string name = {}) const;

    Index dim() const { return dim_; }
    Index factors() const { return static_cast<Index>(factor_dims_.size()); }
    const std::vector<Index>& factor_dims() const { return factor_dims_; }
    const std::vector<Index>& lift(Index k) const { return lifts_[static_cast<std::size_t>(k)]; }
    const std::shared_ptr<const TensorChain>& prefix() const { return prefix_; }
    const std::shared_ptr<const BalancedTensor>& top() const { return top_; }

    void add_pure(const std::vector<SparseVec>& xs, const Scalar& c, Accumulator& out) const;
    void add_pure(const std::vector<Index>& idx, const Scalar& c, Accumulator& out) const;
    SparseVec pure(const std::vector<SparseVec>& xs) const;
    SparseVec pure(const std::vector<Index>& idx) const;

    // Matrix of an operator given on pure basis tensors.  For a chain with
    // two or more factors the formula is evaluated on every ambient
    // coordinate of the top pairwise tensor (prefix lifted through the
    // section) and the balancing relations are checked to be killed.
    using Formula = std::function<void(const std::vector<Index>&, Accumulator&)>;
    Matrix build_operator(Index target_dim, const Formula& formula, const std::string& what) const;
    // id (x) ... (x) g on the last factor.
    Matrix induced_on_last_factor(const Matrix& g) const;
    // g on factor k, identity elsewhere.
    Matrix induced_on_factor(Index k, const Matrix& g) const;
    Action induced_action_on_factor(Index k, const Action& a) const;
    Action induced_action_on_last_factor(const Action& a) const;

private:
    TensorChain() = default;
    Index dim_ = 0;
    std::vector<Index> factor_dims_;
    std::vector<std::vector<Index>> lifts_;
    std::shared_ptr<const TensorChain> prefix_;
    std::shared_ptr<const BalancedTensor> top_;
};

}  // namespace hopfcyc
