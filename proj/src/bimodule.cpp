#include "hopfcyc/bimodule.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace hopfcyc {

// ------------------------------------------------------------------ Action

Matrix Action::of(const SparseVec& a) const {
    Index n = space_dim();
    Matrix m(n, n);
    Accumulator acc(n);
    for (Index j = 0; j < n; ++j) {
        for (const auto& e : a.entries()) acc.add((*this)[e.index].col(j), e.value);
        m.set_col(j, acc.take());
    }
    return m;
}

Action Action::as_opposite() const {
    return Action{alg->opposite(), side == Side::Left ? Side::Right : Side::Left, mats};
}

void Action::validate(const std::string& what) const {
    const Index n = alg->dim();
    if (static_cast<Index>(mats.size()) != n) throw Error(ErrorKind::ActionMismatch, what + ": wrong number of action matrices");
    const Index d = space_dim();
    for (const auto& m : mats)
        if (m.rows() != d || m.cols() != d) throw Error(ErrorKind::ActionMismatch, what + ": action matrix has wrong shape");
    if (of(alg->unit()) != Matrix::identity(d)) throw Error(ErrorKind::ActionMismatch, what + ": unit does not act as identity");
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            Matrix lhs = side == Side::Left ? (*this)[i] * (*this)[j] : (*this)[j] * (*this)[i];
            if (lhs != of(alg->product(i, j)))
                throw Error(ErrorKind::ActionMismatch, what + ": not an action of " + alg->name() + " at (" + alg->label(i) +
                                                           ", " + alg->label(j) + ")");
        }
}

Action regular_action(const AlgebraPtr& a, Side side) {
    Action act{a, side, {}};
    for (Index i = 0; i < a->dim(); ++i) act.mats.push_back(side == Side::Left ? a->left_mult(i) : a->right_mult(i));
    return act;
}

bool actions_commute(const Action& a, const Action& b) {
    for (const auto& x : a.mats)
        for (const auto& y : b.mats)
            if (x * y != y * x) return false;
    return true;
}

Bimodule Bimodule::make(std::string name, std::vector<std::string> labels, Action left, Action right) {
    if (left.side != Side::Left || right.side != Side::Right)
        throw Error(ErrorKind::ActionMismatch, name + ": action sides mislabelled");
    left.validate(name + " (left)");
    right.validate(name + " (right)");
    if (left.space_dim() != right.space_dim() || static_cast<Index>(labels.size()) != left.space_dim())
        throw Error(ErrorKind::ActionMismatch, name + ": dimension mismatch");
    if (!actions_commute(left, right)) throw Error(ErrorKind::ActionMismatch, name + ": left and right actions do not commute");
    Bimodule b;
    b.name = std::move(name);
    b.dim = static_cast<Index>(labels.size());
    b.labels = std::move(labels);
    b.left = std::move(left);
    b.right = std::move(right);
    return b;
}

Bimodule regular_bimodule(const AlgebraPtr& a) {
    return Bimodule::make(a->name(), a->labels(), regular_action(a, Side::Left), regular_action(a, Side::Right));
}

// ---------------------------------------------------------- BalancedTensor

BalancedTensor::BalancedTensor(Index x_dim, Index y_dim, const Action& right_on_x, const Action& left_on_y,
                               std::string name)
    : name_(std::move(name)), x_dim_(x_dim), y_dim_(y_dim), over_(right_on_x.alg) {
    if (right_on_x.side != Side::Right || left_on_y.side != Side::Left)
        throw Error(ErrorKind::ActionMismatch, name_ + ": balancing needs a right action on the left factor and a left action on the right factor");
    if (!same_algebra(*right_on_x.alg, *left_on_y.alg))
        throw Error(ErrorKind::ActionMismatch, name_ + ": factors are modules over different algebras (" +
                                                   right_on_x.alg->name() + " vs " + left_on_y.alg->name() + ")");
    if (right_on_x.space_dim() != x_dim || left_on_y.space_dim() != y_dim)
        throw Error(ErrorKind::ActionMismatch, name_ + ": action dimension mismatch");
    right_on_x.validate(name_ + " (left factor)");
    left_on_y.validate(name_ + " (right factor)");
    const std::int64_t ambient = std::int64_t(x_dim) * y_dim;
    check_size(ambient, name_.empty() ? std::string("balanced tensor") : name_);

    EchelonBasis rel(static_cast<Index>(ambient));
    std::vector<Entry> buf;
    for (Index g : over_->generators()) {
        const Matrix& rx = right_on_x[g];
        const Matrix& ly = left_on_y[g];
        for (Index i = 0; i < x_dim; ++i) {
            const SparseVec& xa = rx.col(i);
            for (Index j = 0; j < y_dim; ++j) {
                const SparseVec& ay = ly.col(j);
                buf.clear();
                for (const auto& e : xa.entries()) buf.push_back({ambient_index(e.index, j), e.value});
                for (const auto& e : ay.entries()) buf.push_back({ambient_index(i, e.index), -e.value});
                std::sort(buf.begin(), buf.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
                SparseVec v;
                for (std::size_t k = 0; k < buf.size();) {
                    Index idx = buf[k].index;
                    Scalar s = buf[k].value;
                    for (++k; k < buf.size() && buf[k].index == idx; ++k) s += buf[k].value;
                    v.push_back(idx, std::move(s));
                }
                if (!v.empty()) rel.insert(std::move(v));
            }
        }
    }
    space_ = QuotientSpace(static_cast<Index>(ambient), std::move(rel));
}

void BalancedTensor::add_pure(const SparseVec& x, const SparseVec& y, const Scalar& c, Accumulator& out) const {
    for (const auto& a : x.entries())
        for (const auto& b : y.entries()) space_.project_coord(ambient_index(a.index, b.index), c * a.value * b.value, out);
}

SparseVec BalancedTensor::pure(Index i, Index j) const {
    Accumulator acc(dim());
    add_pure(i, j, Scalar(1), acc);
    return acc.take();
}

SparseVec BalancedTensor::pure(const SparseVec& x, const SparseVec& y) const {
    Accumulator acc(dim());
    add_pure(x, y, Scalar(1), acc);
    return acc.take();
}

Matrix BalancedTensor::induced_on_left_factor(const Matrix& g) const {
    Matrix values(dim(), x_dim_ * y_dim_);
    Accumulator acc(dim());
    for (Index i = 0; i < x_dim_; ++i)
        for (Index j = 0; j < y_dim_; ++j) {
            for (const auto& e : g.col(i).entries()) add_pure(e.index, j, e.value, acc);
            values.set_col(ambient_index(i, j), acc.take());
        }
    return descend_projected(values, space_, name_ + ": operator on left factor");
}

Matrix BalancedTensor::induced_on_right_factor(const Matrix& g) const {
    Matrix values(dim(), x_dim_ * y_dim_);
    Accumulator acc(dim());
    for (Index i = 0; i < x_dim_; ++i)
        for (Index j = 0; j < y_dim_; ++j) {
            for (const auto& e : g.col(j).entries()) add_pure(i, e.index, e.value, acc);
            values.set_col(ambient_index(i, j), acc.take());
        }
    return descend_projected(values, space_, name_ + ": operator on right factor");
}

Action BalancedTensor::induced_action_from_left_factor(const Action& a) const {
    Action out{a.alg, a.side, {}};
    for (const auto& m : a.mats) out.mats.push_back(induced_on_left_factor(m));
    return out;
}

Action BalancedTensor::induced_action_from_right_factor(const Action& a) const {
    Action out{a.alg, a.side, {}};
    for (const auto& m : a.mats) out.mats.push_back(induced_on_right_factor(m));
    return out;
}

BalancedTensor balanced_tensor(const Bimodule& m, const Bimodule& n, SideSelector sel, std::string name) {
    Action rx = sel.of_left_factor == Side::Right ? m.right : m.left.as_opposite();
    Action ly = sel.of_right_factor == Side::Left ? n.left : n.right.as_opposite();
    if (name.empty()) name = m.name + "⊗" + n.name;
    return BalancedTensor(m.dim, n.dim, rx, ly, std::move(name));
}

// ------------------------------------------------------------- TensorChain

std::shared_ptr<const TensorChain> TensorChain::single(Index first_dim) {
    auto c = std::shared_ptr<TensorChain>(new TensorChain());
    c->dim_ = first_dim;
    c->factor_dims_ = {first_dim};
    c->lifts_.reserve(static_cast<std::size_t>(first_dim));
    for (Index k = 0; k < first_dim; ++k) c->lifts_.push_back({k});
    return c;
}

std::shared_ptr<const TensorChain> TensorChain::extend(const Action& right_on_top, Index factor_dim,
                                                       const Action& left_on_factor, std::string name) const {
    auto self = shared_from_this();
    auto next = std::shared_ptr<TensorChain>(new TensorChain());
    next->top_ = std::make_shared<BalancedTensor>(dim_, factor_dim, right_on_top, left_on_factor, std::move(name));
    next->prefix_ = self;
    next->dim_ = next->top_->dim();
    next->factor_dims_ = factor_dims_;
    next->factor_dims_.push_back(factor_dim);
    next->lifts_.reserve(static_cast<std::size_t>(next->dim_));
    for (Index k = 0; k < next->dim_; ++k) {
        auto [i, j] = next->top_->lift(k);
        std::vector<Index> t = lift(i);
        t.push_back(j);
        next->lifts_.push_back(std::move(t));
    }
    return next;
}

void TensorChain::add_pure(const std::vector<SparseVec>& xs, const Scalar& c, Accumulator& out) const {
    if (factors() == 1) {
        out.add(xs[0], c);
        return;
    }
    std::vector<SparseVec> head(xs.begin(), xs.end() - 1);
    SparseVec p = prefix_->pure(head);
    top_->add_pure(p, xs.back(), c, out);
}

void TensorChain::add_pure(const std::vector<Index>& idx, const Scalar& c, Accumulator& out) const {
    if (factors() == 1) {
        out.add(idx[0], c);
        return;
    }
    std::vector<Index> head(idx.begin(), idx.end() - 1);
    if (prefix_->factors() == 1) {
        top_->add_pure(head[0], idx.back(), c, out);
        return;
    }
    SparseVec p = prefix_->pure(head);
    for (const auto& e : p.entries()) top_->add_pure(e.index, idx.back(), c * e.value, out);
}

namespace {

// Scratch accumulators reused per dimension; pure() runs in hot loops and a
// fresh dense buffer per call dominates the cost on large chains.
class PooledAccumulator {
public:
    explicit PooledAccumulator(Index dim) : dim_(dim) {
        auto& free = pool()[dim];
        if (free.empty()) {
            acc_ = std::make_unique<Accumulator>(dim);
        } else {
            acc_ = std::move(free.back());
            free.pop_back();
        }
    }
    ~PooledAccumulator() {
        acc_->clear();
        pool()[dim_].push_back(std::move(acc_));
    }
    PooledAccumulator(const PooledAccumulator&) = delete;
    PooledAccumulator& operator=(const PooledAccumulator&) = delete;
    Accumulator& get() { return *acc_; }

private:
    static std::map<Index, std::vector<std::unique_ptr<Accumulator>>>& pool() {
        thread_local std::map<Index, std::vector<std::unique_ptr<Accumulator>>> p;
        return p;
    }
    Index dim_;
    std::unique_ptr<Accumulator> acc_;
};

}  // namespace

SparseVec TensorChain::pure(const std::vector<SparseVec>& xs) const {
    PooledAccumulator acc(dim_);
    add_pure(xs, Scalar(1), acc.get());
    return acc.get().take();
}

SparseVec TensorChain::pure(const std::vector<Index>& idx) const {
    PooledAccumulator acc(dim_);
    add_pure(idx, Scalar(1), acc.get());
    return acc.get().take();
}

Matrix TensorChain::build_operator(Index target_dim, const Formula& formula, const std::string& what) const {
    Accumulator acc(target_dim);
    if (factors() == 1) {
        Matrix m(target_dim, dim_);
        for (Index k = 0; k < dim_; ++k) {
            formula(lifts_[static_cast<std::size_t>(k)], acc);
            m.set_col(k, acc.take());
        }
        return m;
    }
    const Index pd = prefix_->dim(), fd = factor_dims_.back();
    Matrix values(target_dim, pd * fd);
    std::vector<Index> tuple;
    for (Index i = 0; i < pd; ++i) {
        tuple = prefix_->lift(i);
        tuple.push_back(0);
        for (Index j = 0; j < fd; ++j) {
            tuple.back() = j;
            formula(tuple, acc);
            values.set_col(top_->ambient_index(i, j), acc.take());
        }
    }
    return descend_projected(values, top_->space(), what);
}

Matrix TensorChain::induced_on_last_factor(const Matrix& g) const {
    if (factors() == 1) return g;
    return top_->induced_on_right_factor(g);
}

Matrix TensorChain::induced_on_factor(Index k, const Matrix& g) const {
    if (k < 0 || k >= factors()) throw Error(ErrorKind::ActionMismatch, "no tensor factor " + std::to_string(k));
    if (factors() == 1) return g;
    if (k == factors() - 1) return top_->induced_on_right_factor(g);
    return top_->induced_on_left_factor(prefix_->induced_on_factor(k, g));
}

Action TensorChain::induced_action_on_factor(Index k, const Action& a) const {
    Action out{a.alg, a.side, {}};
    for (const auto& m : a.mats) out.mats.push_back(induced_on_factor(k, m));
    return out;
}

Action TensorChain::induced_action_on_last_factor(const Action& a) const {
    Action out{a.alg, a.side, {}};
    for (const auto& m : a.mats) out.mats.push_back(induced_on_last_factor(m));
    return out;
}

}  // namespace hopfcyc
