#ifndef GMRESLAB_LINEAR_OPERATOR_HPP
#define GMRESLAB_LINEAR_OPERATOR_HPP

#include <memory>

#include "gmreslab/factorizations.hpp"
#include "gmreslab/matrix.hpp"

namespace gmreslab {

/// Apply-only linear operator. Preconditioners are handled through this
/// interface so that inverses are never materialized unless analysis asks
/// for a dense form explicitly.
///
/// Variants: identity, diagonal, dense, inverse-via-LU, rank-one update
/// (x -> base(x) + u*(v.x)) and composition (inner applied first).
/// Operators are immutable and cheap to copy.
class LinearOperator {
 public:
  static LinearOperator identity(int n);
  static LinearOperator diagonal(Vector d);
  static LinearOperator dense(Matrix m);
  static LinearOperator inverse_of(LuFactorization f);
  static LinearOperator rank_one_update(LinearOperator base, Vector u, Vector v);
  static LinearOperator compose(LinearOperator outer, LinearOperator inner);

  int dim() const;

  Vector apply(const Vector& x) const;

  /// Materializes the operator by probing columns: column j = apply(e_j).
  Matrix as_dense() const;

 private:
  struct Node;
  explicit LinearOperator(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Split preconditioner (H_L, H_R). The combined preconditioner is
/// H = H_R o H_L, i.e. x -> H_R(H_L(x)).
struct PreconditionerPair {
  LinearOperator left;
  LinearOperator right;

  LinearOperator combined() const;
};

LinearOperator combined(const PreconditionerPair& p);

}  // namespace gmreslab

#endif
