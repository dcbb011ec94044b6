#pragma once

#include <map>
#include <vector>

#include "flataff/matrix.hpp"

namespace flataff {

/// Invertible affine map p -> A p + b with exact scalar entries.
/// Invertibility means det(A) is structurally nonzero (parameters are
/// transcendental, so a nonzero polynomial determinant is generically
/// invertible).
class AffineMap {
public:
  AffineMap(ScalarMatrix a, std::vector<Scalar> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols()) throw DimensionMismatch("affine map linear part must be square");
    if (b_.size() != a_.rows()) throw DimensionMismatch("affine map translation size");
    if (det(a_).is_zero()) throw SingularMap("affine map with singular linear part");
  }

  static AffineMap identity(std::size_t n) {
    return AffineMap(ScalarMatrix::identity(n), std::vector<Scalar>(n));
  }
  static AffineMap translation(std::vector<Scalar> b) {
    const std::size_t n = b.size();
    return AffineMap(ScalarMatrix::identity(n), std::move(b));
  }
  static AffineMap linear(ScalarMatrix a) {
    const std::size_t n = a.rows();
    return AffineMap(std::move(a), std::vector<Scalar>(n));
  }

  std::size_t dim() const { return b_.size(); }
  const ScalarMatrix& linear_part() const { return a_; }
  const std::vector<Scalar>& translation_part() const { return b_; }

  bool is_rational() const {
    for (std::size_t i = 0; i < a_.rows(); ++i)
      for (std::size_t j = 0; j < a_.cols(); ++j)
        if (!a_.at(i, j).is_rational_constant()) return false;
    for (const Scalar& s : b_)
      if (!s.is_rational_constant()) return false;
    return true;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& p) const {
    std::vector<Scalar> out = a_.apply(p);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b_[i];
    return out;
  }

  std::vector<double> apply_double(const std::vector<double>& p,
                                   const std::map<std::string, double>& env) const {
    if (p.size() != dim()) throw DimensionMismatch("affine map point size");
    std::vector<double> out(dim(), 0.0);
    for (std::size_t i = 0; i < dim(); ++i) {
      double acc = b_[i].eval_double(env);
      for (std::size_t j = 0; j < dim(); ++j) {
        if (a_.at(i, j).is_zero()) continue;
        acc += a_.at(i, j).eval_double(env) * p[j];
      }
      out[i] = acc;
    }
    return out;
  }

  /// this ∘ other (apply other first).
  AffineMap compose(const AffineMap& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("composing affine maps of different dims");
    std::vector<Scalar> b = a_.apply(other.b_);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += b_[i];
    return AffineMap(a_ * other.a_, std::move(b));
  }

  AffineMap inverted() const {
    auto inv = inverse(a_);
    if (!inv) throw SingularMap("affine map is not invertible");
    std::vector<Scalar> b = inv->apply(b_);
    for (Scalar& s : b) s = -s;
    return AffineMap(std::move(*inv), std::move(b));
  }

  bool operator==(const AffineMap& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const AffineMap& o) const { return !(*this == o); }

private:
  ScalarMatrix a_;
  std::vector<Scalar> b_;
};

} // namespace flataff
