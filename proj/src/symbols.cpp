#include "decaylab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "decaylab/random.hpp"

namespace decaylab {

DissipativeSymbol DissipativeSymbol::fractional_laplacian(int dim, double alpha,
                                                          double kappa,
                                                          int components) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("symbol dim must be 2 or 3");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha out of range (0,1]");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  if (components < 1 || components > SmallMatrix::kMaxOrder)
    throw std::invalid_argument("components must be in 1..3");
  DissipativeSymbol s;
  s.kind_ = Kind::FractionalLaplacian;
  s.dim_ = dim;
  s.components_ = components;
  s.alpha_ = alpha;
  s.kappa_ = kappa;
  return s;
}

DissipativeSymbol DissipativeSymbol::compressible_stokes(int dim, double epsilon) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("symbol dim must be 2 or 3");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  DissipativeSymbol s;
  s.kind_ = Kind::CompressibleStokes;
  s.dim_ = dim;
  s.components_ = dim;
  s.alpha_ = 1.0;
  s.kappa_ = 1.0;
  s.epsilon_ = epsilon;
  return s;
}

double DissipativeSymbol::min_rate_constant() const { return kappa_; }

double DissipativeSymbol::max_rate_constant() const {
  return kind_ == Kind::FractionalLaplacian ? kappa_ : 1.0 + 1.0 / epsilon_;
}

ModeRates DissipativeSymbol::rates(double xi_sq) const {
  if (kind_ == Kind::FractionalLaplacian) {
    const double lam =
        -kappa_ * (alpha_ == 1.0 ? xi_sq : std::pow(xi_sq, alpha_));
    return {lam, lam};
  }
  return {-xi_sq, -(1.0 + 1.0 / epsilon_) * xi_sq};
}

void DissipativeSymbol::check_xi(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_)
    throw std::invalid_argument("wavevector has " + std::to_string(xi.size()) +
                                " entries, symbol dim is " + std::to_string(dim_));
}

SmallMatrix DissipativeSymbol::matrix(std::span<const double> xi) const {
  check_xi(xi);
  double xi_sq = 0.0;
  for (double x : xi) xi_sq += x * x;
  SmallMatrix m(components_);
  const ModeRates r = rates(xi_sq);
  for (int i = 0; i < components_; ++i) m(i, i) = r.transverse;
  if (kind_ == Kind::CompressibleStokes)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) -= xi[i] * xi[j] / epsilon_;
  return m;
}

SmallMatrix DissipativeSymbol::propagator(std::span<const double> xi,
                                          double t) const {
  check_xi(xi);
  if (!(t >= 0.0)) throw std::invalid_argument("propagator time must be >= 0");
  double xi_sq = 0.0;
  for (double x : xi) xi_sq += x * x;
  SmallMatrix p(components_);
  if (xi_sq == 0.0) return SmallMatrix::identity(components_);
  const ModeRates r = rates(xi_sq);
  const double e_t = std::exp(t * r.transverse);
  for (int i = 0; i < components_; ++i) p(i, i) = e_t;
  if (kind_ == Kind::CompressibleStokes) {
    // e^{-t|xi|^2} delta_ij - (xi_i xi_j / |xi|^2)(e^{-t|xi|^2} - e^{-(1+1/eps) t|xi|^2})
    const double e_l = std::exp(t * r.longitudinal);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) p(i, j) -= xi[i] * xi[j] / xi_sq * (e_t - e_l);
  }
  return p;
}

void DissipativeSymbol::apply_split(const Vec3& xi, double xi_sq,
                                    double f_transverse, double f_longitudinal,
                                    cplx* v, std::size_t stride) const {
  if (kind_ == Kind::FractionalLaplacian || xi_sq == 0.0) {
    for (int c = 0; c < components_; ++c) v[c * stride] *= f_transverse;
    return;
  }
  cplx dot = 0.0;
  for (int c = 0; c < dim_; ++c) dot += xi[c] * v[c * stride];
  const cplx coef = dot * ((f_longitudinal - f_transverse) / xi_sq);
  for (int c = 0; c < dim_; ++c)
    v[c * stride] = f_transverse * v[c * stride] + coef * xi[c];
}

SmallMatrix propagator_oracle(const DissipativeSymbol& sym,
                              std::span<const double> xi, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagator time must be >= 0");
  return expm(sym.matrix(xi) * t);
}

DissipativityReport dissipativity_report(const DissipativeSymbol& sym,
                                         int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  SplitMix64 rng(seed);
  DissipativityReport rep{std::numeric_limits<double>::infinity(), 0.0, 0};
  const int m = sym.components();
  std::vector<double> xi(sym.dim());
  while (rep.samples < sample_count) {
    double xi_sq = 0.0;
    for (auto& x : xi) {
      x = rng.uniform(-2.0, 2.0);
      xi_sq += x * x;
    }
    if (xi_sq < 1e-12) continue;
    const SmallMatrix mat = sym.matrix(xi);
    std::array<double, 3> re{}, im{};
    double v_sq = 0.0;
    for (int c = 0; c < m; ++c) {
      re[c] = rng.uniform(-1.0, 1.0);
      im[c] = rng.uniform(-1.0, 1.0);
      v_sq += re[c] * re[c] + im[c] * im[c];
    }
    // M is real symmetric, so Re<v, Mv> splits over real and imaginary parts.
    const auto mre = mat.apply(re);
    const auto mim = mat.apply(im);
    double form = 0.0;
    for (int c = 0; c < m; ++c) form += re[c] * mre[c] + im[c] * mim[c];
    const double weight = std::pow(xi_sq, sym.alpha());
    const double margin = -form / (weight * v_sq);
    rep.min_margin = std::min(rep.min_margin, margin);
    rep.max_margin = std::max(rep.max_margin, margin);
    ++rep.samples;
  }
  return rep;
}

}  // namespace decaylab
