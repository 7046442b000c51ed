#pragma once

// Per-k reports over a family: root counts in a window (sparsity), distance
// between the derivative-minus-family divisor and its predicted limit, and
// convergence of normalized log-moduli to a target potential.

#include <functional>
#include <vector>

#include "rootlab/families.hpp"

namespace rootlab {

struct SparsityRow {
  unsigned k;
  unsigned count;
  Rect window;  ///< the window actually integrated over (jittered if needed)
};

struct SparsityReport {
  std::vector<SparsityRow> rows;
  unsigned max = 0;
};

/// Zeros of q_k in the window for each k. A window whose boundary meets a
/// zero is pushed outward by a deterministic jitter, up to 8 times.
SparsityReport sparsity_report(const FamilyHandle& fam, const Rect& window, std::span<const unsigned> ks);

struct ConvergenceRow {
  unsigned k;
  Divisor derivative_zeros;  ///< xi_{k,m}
  Divisor family_zeros;      ///< xi_k
  MatchingResult match;      ///< (xi_{k,m} - xi_k) against m * limit
};

/// For each k, matches xi_{k,m} - xi_k in the window against m * limit_crit.
std::vector<ConvergenceRow> convergence_check(const FamilyHandle& fam, const Divisor& limit_crit, unsigned m,
                                              const Rect& window, std::span<const unsigned> ks,
                                              double tol = 1e-10);

struct PotentialRow {
  unsigned k;
  double offset;         ///< d_k, from the first probe
  double max_deviation;  ///< over the remaining probes; NaN if none usable
  std::vector<std::size_t> at_root;  ///< probes where log|q_k| is not finite
};

/// max |d_k + (1/n_k) log|q_k(z)| - target(z)| over the probes, with d_k
/// chosen so the first probe matches exactly.
std::vector<PotentialRow> potential_convergence_report(const FamilyHandle& fam,
                                                       const std::function<double(cplx)>& target,
                                                       std::span<const cplx> probes,
                                                       std::span<const unsigned> ks);

}  // namespace rootlab
