#pragma once

#include <cstddef>

#include "decaylab/grid.hpp"

namespace decaylab {

/// |xi|^{2s}, exact for s = 0, 1, 2 (and 1 at xi = 0 when s = 0).
double sobolev_weight(double xi_sq, double s);

/// sum_k |xi_k|^{2s} |c_k|^2 * cell_measure, summed over components. The
/// k = 0 term is kept (it only contributes when s = 0). Throws on s < 0.
double sobolev_norm_sq(const SpectralField& field, double s);

/// Discrete low-frequency mass sum_{0 < |xi_k| <= rho} |xi_k|^{2s} |c_k|^2
/// * cell_measure. The mean mode is excluded.
double shell_mass(const SpectralField& field, double s, double rho);

/// Number of nonzero lattice wavevectors with |xi| <= rho.
std::size_t lattice_count(const Grid& grid, double rho);

/// Re <a, b> = Re sum_k conj(a_k) . b_k * cell_measure.
double inner_product(const SpectralField& a, const SpectralField& b);

/// True when every |k_i| <= N/3 (the modes kept by the 2/3 rule).
bool dealias_keeps(const Grid& grid, std::size_t flat);

/// 2/3-rule truncation: zero every mode with some |k_i| > N/3.
SpectralField dealias(SpectralField field);
void dealias_in_place(SpectralField& field);

}  // namespace decaylab
