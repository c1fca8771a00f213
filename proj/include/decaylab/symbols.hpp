#pragma once

#include <cstdint>
#include <span>

#include "decaylab/grid.hpp"
#include "decaylab/small_matrix.hpp"

namespace decaylab {

/// Eigenvalues of a symbol at one wavevector: `transverse` acts on vectors
/// orthogonal to xi, `longitudinal` along xi. Equal for scalar-type symbols.
struct ModeRates {
  double transverse;
  double longitudinal;
};

/// Frequency-indexed generator M(xi) = P^T(xi) D(xi) P(xi) of a linear
/// dissipative system v_t = L v, with D(xi) = -c_i |xi|^{2 alpha}.
///
/// Two concrete kinds are provided:
///  - fractional Laplacian: M = -kappa |xi|^{2 alpha} Id (m components);
///  - compressible Stokes: M_ij = -|xi|^2 delta_ij - xi_i xi_j / epsilon,
///    m = dim, alpha = 1.
///
/// Other diagonal families D = -c_i |xi|^{2 alpha_i} would need a per-eigenspace
/// projector list in place of ModeRates; only these two are implemented.
class DissipativeSymbol {
 public:
  enum class Kind { FractionalLaplacian, CompressibleStokes };

  static DissipativeSymbol fractional_laplacian(int dim, double alpha,
                                                double kappa, int components = 1);
  static DissipativeSymbol compressible_stokes(int dim, double epsilon);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int components() const { return components_; }
  double alpha() const { return alpha_; }
  double kappa() const { return kappa_; }
  double epsilon() const { return epsilon_; }

  /// Smallest and largest c with |lambda| = c |xi|^{2 alpha} over the
  /// eigenvalues of M(xi).
  double min_rate_constant() const;
  double max_rate_constant() const;

  ModeRates rates(double xi_sq) const;

  SmallMatrix matrix(std::span<const double> xi) const;
  /// Closed-form e^{t M(xi)}; identity at xi = 0. Throws on t < 0.
  SmallMatrix propagator(std::span<const double> xi, double t) const;

  /// v <- f_T P_T v + f_L P_L v, where P_L = xi xi^T / |xi|^2 and
  /// P_T = Id - P_L. For scalar-type symbols only f_T is used. `v` holds one
  /// coefficient per component, `stride` apart.
  void apply_split(const Vec3& xi, double xi_sq, double f_transverse,
                   double f_longitudinal, cplx* v, std::size_t stride) const;

 private:
  DissipativeSymbol() = default;
  void check_xi(std::span<const double> xi) const;

  Kind kind_ = Kind::FractionalLaplacian;
  int dim_ = 2;
  int components_ = 1;
  double alpha_ = 1.0;
  double kappa_ = 1.0;
  double epsilon_ = 1.0;
};

/// Independent e^{t M(xi)} via expm() on t * matrix(xi).
SmallMatrix propagator_oracle(const DissipativeSymbol& sym,
                              std::span<const double> xi, double t);

struct DissipativityReport {
  double min_margin;
  double max_margin;
  int samples;
};

/// Samples random (xi, v) and reports min of
/// -Re<v, M(xi) v> / (|xi|^{2 alpha} |v|^2).
DissipativityReport dissipativity_report(const DissipativeSymbol& sym,
                                         int sample_count, std::uint64_t seed);

}  // namespace decaylab
