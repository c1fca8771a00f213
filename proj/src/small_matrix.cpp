#include "decaylab/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decaylab {

SmallMatrix::SmallMatrix(int order) : order_(order) {
  if (order < 1 || order > kMaxOrder)
    throw std::invalid_argument("matrix order must be in 1..3");
}

SmallMatrix SmallMatrix::identity(int order) {
  SmallMatrix m(order);
  for (int i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::operator+(const SmallMatrix& o) const {
  SmallMatrix r(order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) r(i, j) = a_[i][j] + o(i, j);
  return r;
}

SmallMatrix SmallMatrix::operator-(const SmallMatrix& o) const {
  SmallMatrix r(order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) r(i, j) = a_[i][j] - o(i, j);
  return r;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& o) const {
  if (o.order_ != order_) throw std::invalid_argument("matrix order mismatch");
  SmallMatrix r(order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < order_; ++k) acc += a_[i][k] * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

SmallMatrix SmallMatrix::operator*(double s) const {
  SmallMatrix r(order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) r(i, j) = a_[i][j] * s;
  return r;
}

std::array<double, SmallMatrix::kMaxOrder> SmallMatrix::apply(
    const std::array<double, kMaxOrder>& v) const {
  std::array<double, kMaxOrder> out{};
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) out[i] += a_[i][j] * v[j];
  return out;
}

SmallMatrix SmallMatrix::transpose() const {
  SmallMatrix r(order_);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) r(i, j) = a_[j][i];
  return r;
}

double SmallMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) m = std::max(m, std::abs(a_[i][j]));
  return m;
}

double SmallMatrix::norm1() const {
  double best = 0.0;
  for (int j = 0; j < order_; ++j) {
    double col = 0.0;
    for (int i = 0; i < order_; ++i) col += std::abs(a_[i][j]);
    best = std::max(best, col);
  }
  return best;
}

bool SmallMatrix::is_symmetric(double tol) const {
  for (int i = 0; i < order_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (std::abs(a_[i][j] - a_[j][i]) > tol) return false;
  return true;
}

std::vector<double> symmetric_eigenvalues(const SmallMatrix& m) {
  SmallMatrix a = m;
  const int n = a.order();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-300) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double spectral_norm(const SmallMatrix& m) {
  const auto ev = symmetric_eigenvalues(m.transpose() * m);
  return std::sqrt(std::max(0.0, ev.back()));
}

SmallMatrix expm(const SmallMatrix& a) {
  const int n = a.order();
  const double norm = a.norm1();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const SmallMatrix b = a * std::ldexp(1.0, -squarings);

  // ||b|| <= 1/2: the degree-20 remainder is below 1e-25.
  SmallMatrix result = SmallMatrix::identity(n);
  SmallMatrix term = SmallMatrix::identity(n);
  for (int k = 1; k <= 20; ++k) {
    term = (term * b) * (1.0 / k);
    result = result + term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace decaylab
