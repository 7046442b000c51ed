#include "rootlab/diagnostics.hpp"

#include <limits>

namespace rootlab {

SparsityReport sparsity_report(const FamilyHandle& fam, const Rect& window, std::span<const unsigned> ks) {
  constexpr double phi = 1.6180339887498949;
  SparsityReport rep;
  for (unsigned k : ks) {
    const JetFn q = fam.member(k);
    for (unsigned attempt = 0;; ++attempt) {
      const double x = attempt * phi;
      const Rect w = attempt == 0 ? window : window.inflated((x - std::floor(x)) * 1e-3 * attempt * window.diameter());
      try {
        const unsigned c = count_zeros_winding(q, w);
        rep.rows.push_back({k, c, w});
        rep.max = std::max(rep.max, c);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::boundary_unsafe || attempt == 8) throw;
      }
    }
  }
  return rep;
}

namespace {

Divisor zeros_in(const JetFn& f, const Rect& window, double tol) {
  return divisor_from_rootset(locate_zeros_subdivision(f, window, tol), window);
}

}  // namespace

std::vector<ConvergenceRow> convergence_check(const FamilyHandle& fam, const Divisor& limit_crit, unsigned m,
                                              const Rect& window, std::span<const unsigned> ks, double tol) {
  if (limit_crit.negative_total() != 0)
    throw Error(ErrorKind::invalid_argument, "limit divisor must be nonnegative");
  Divisor target(window);
  for (const auto& e : limit_crit.entries()) target.add(e.point, static_cast<int>(m) * e.value);

  std::vector<ConvergenceRow> rows;
  for (unsigned k : ks) {
    Divisor family = zeros_in(fam.member(k), window, tol);
    Divisor deriv = m == 0 ? family : zeros_in(fam.member(k, m), window, tol);
    const MatchingResult match = matching_distance(deriv - family, target);
    rows.push_back({k, std::move(deriv), std::move(family), match});
  }
  return rows;
}

std::vector<PotentialRow> potential_convergence_report(const FamilyHandle& fam,
                                                       const std::function<double(cplx)>& target,
                                                       std::span<const cplx> probes,
                                                       std::span<const unsigned> ks) {
  if (probes.empty()) throw Error(ErrorKind::invalid_argument, "need at least one probe");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<PotentialRow> rows;
  for (unsigned k : ks) {
    const double n = fam.degree(k);
    PotentialRow row{k, nan, nan, {}};
    std::vector<double> pk(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
      pk[i] = fam.log_abs(k, probes[i]) / n;
      if (!std::isfinite(pk[i])) row.at_root.push_back(i);
    }
    if (std::isfinite(pk[0])) {
      row.offset = target(probes[0]) - pk[0];
      for (std::size_t i = 1; i < probes.size(); ++i) {
        if (!std::isfinite(pk[i])) continue;
        const double dev = std::abs(row.offset + pk[i] - target(probes[i]));
        row.max_deviation = std::isnan(row.max_deviation) ? dev : std::max(row.max_deviation, dev);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rootlab
