#include "gmreslab/linear_operator.hpp"

#include <utility>
#include <variant>

#include "gmreslab/errors.hpp"

namespace gmreslab {

namespace {

struct IdentityOp {
  int n;
};

struct DiagonalOp {
  Vector d;
};

struct DenseOp {
  Matrix m;
};

struct InverseOp {
  LuFactorization f;
};

}  // namespace

struct LinearOperator::Node {
  struct RankOneOp {
    LinearOperator base;
    Vector u, v;
  };
  struct ComposeOp {
    LinearOperator outer, inner;
  };

  std::variant<IdentityOp, DiagonalOp, DenseOp, InverseOp, RankOneOp, ComposeOp>
      impl;
  int n;
};

LinearOperator LinearOperator::identity(int n) {
  if (n <= 0) throw dimension_error("LinearOperator: dim must be positive");
  auto node = std::make_shared<Node>();
  node->impl = IdentityOp{n};
  node->n = n;
  return LinearOperator(std::move(node));
}

LinearOperator LinearOperator::diagonal(Vector d) {
  const int n = d.dim();
  auto node = std::make_shared<Node>();
  node->impl = DiagonalOp{std::move(d)};
  node->n = n;
  return LinearOperator(std::move(node));
}

LinearOperator LinearOperator::dense(Matrix m) {
  if (m.rows() != m.cols())
    throw dimension_error("LinearOperator::dense: matrix must be square");
  const int n = m.rows();
  auto node = std::make_shared<Node>();
  node->impl = DenseOp{std::move(m)};
  node->n = n;
  return LinearOperator(std::move(node));
}

LinearOperator LinearOperator::inverse_of(LuFactorization f) {
  const int n = f.dim();
  auto node = std::make_shared<Node>();
  node->impl = InverseOp{std::move(f)};
  node->n = n;
  return LinearOperator(std::move(node));
}

LinearOperator LinearOperator::rank_one_update(LinearOperator base, Vector u,
                                               Vector v) {
  const int n = base.dim();
  if (u.dim() != n || v.dim() != n)
    throw dimension_error("rank_one_update: dimension mismatch");
  auto node = std::make_shared<Node>();
  node->impl = Node::RankOneOp{std::move(base), std::move(u), std::move(v)};
  node->n = n;
  return LinearOperator(std::move(node));
}

LinearOperator LinearOperator::compose(LinearOperator outer,
                                       LinearOperator inner) {
  if (outer.dim() != inner.dim())
    throw dimension_error("compose: dimension mismatch");
  const int n = outer.dim();
  auto node = std::make_shared<Node>();
  node->impl = Node::ComposeOp{std::move(outer), std::move(inner)};
  node->n = n;
  return LinearOperator(std::move(node));
}

int LinearOperator::dim() const { return node_->n; }

Vector LinearOperator::apply(const Vector& x) const {
  if (x.dim() != node_->n)
    throw dimension_error("LinearOperator::apply: dimension mismatch");
  return std::visit(
      [&x](const auto& op) -> Vector {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, IdentityOp>) {
          return x;
        } else if constexpr (std::is_same_v<T, DiagonalOp>) {
          Vector y(x.dim());
          for (int i = 0; i < x.dim(); ++i) y[i] = op.d[i] * x[i];
          return y;
        } else if constexpr (std::is_same_v<T, DenseOp>) {
          return mat_vec(op.m, x);
        } else if constexpr (std::is_same_v<T, InverseOp>) {
          return op.f.solve(x);
        } else if constexpr (std::is_same_v<T, LinearOperator::Node::RankOneOp>) {
          Vector y = op.base.apply(x);
          const double scale = dot(op.v, x);
          for (int i = 0; i < y.dim(); ++i) y[i] += scale * op.u[i];
          return y;
        } else {
          return op.outer.apply(op.inner.apply(x));
        }
      },
      node_->impl);
}

Matrix LinearOperator::as_dense() const {
  const int n = node_->n;
  Matrix result(n, n);
  Vector e(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    result.set_col(j, apply(e));
    e[j] = 0.0;
  }
  return result;
}

LinearOperator PreconditionerPair::combined() const {
  return LinearOperator::compose(right, left);
}

LinearOperator combined(const PreconditionerPair& p) { return p.combined(); }

}  // namespace gmreslab
