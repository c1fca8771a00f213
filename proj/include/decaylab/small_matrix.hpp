#pragma once

#include <array>
#include <vector>

namespace decaylab {

/// Dense real square matrix of order 1..3, the size of every symbol block.
class SmallMatrix {
 public:
  static constexpr int kMaxOrder = 3;

  explicit SmallMatrix(int order = 1);
  static SmallMatrix identity(int order);

  int order() const { return order_; }
  double& operator()(int i, int j) { return a_[i][j]; }
  double operator()(int i, int j) const { return a_[i][j]; }

  SmallMatrix operator+(const SmallMatrix& o) const;
  SmallMatrix operator-(const SmallMatrix& o) const;
  SmallMatrix operator*(const SmallMatrix& o) const;
  SmallMatrix operator*(double s) const;
  std::array<double, kMaxOrder> apply(const std::array<double, kMaxOrder>& v) const;

  SmallMatrix transpose() const;
  double max_abs() const;
  /// Max column sum of absolute values.
  double norm1() const;
  bool is_symmetric(double tol = 0.0) const;

 private:
  int order_;
  std::array<std::array<double, kMaxOrder>, kMaxOrder> a_{};
};

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const SmallMatrix& m);

/// Largest singular value.
double spectral_norm(const SmallMatrix& m);

/// exp(A) by scaling and squaring around a truncated Taylor series.
/// Knows nothing about the structure of A.
SmallMatrix expm(const SmallMatrix& a);

}  // namespace decaylab
