#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qrdom {

/// Per-sample functional values of one epoch, with compensated running sums
/// so that cumulative means F^(p) = (1/p) sum_{k<=p} f_k are available in O(1).
class FunctionalHistory {
 public:
  void push(double value);
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const double> values() const { return values_; }
  /// F^(p) for p in 1..size().
  double cumulative_mean(std::size_t p) const;
  /// Mean of all recorded values.
  double mean() const { return cumulative_mean(values_.size()); }

 private:
  std::vector<double> values_;
  std::vector<double> prefix_;  // compensated prefix sums
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Coefficients of Phi(n) = g0 + g1 log(n)/n + g2 log^2(n)/n.
struct FitResult {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double residual_norm = 0.0;  // sqrt(sum w_n (F^(n) - Phi(n))^2)
  std::size_t n_points = 0;

  double estimate() const { return gamma0; }
  double model(double n) const;
};

/// Fit weight of the n-th cumulative mean: 2 below n = 8, n^2 / log^4 n after.
double fit_weight(std::uint64_t n);

/// Weighted least-squares fit of Phi to the cumulative means of `history`.
/// Throws NumericalError with fewer than three points or a rank-deficient system.
FitResult fit_phi(const FunctionalHistory& history);
/// Same fit on explicit cumulative means, cumulative[n-1] = F^(n).
FitResult fit_phi_means(std::span<const double> cumulative);

struct ConvergenceCheck {
  bool converged = false;
  bool absolute_fallback = false;  // current estimate was zero
  double change = 0.0;             // relative (or absolute on fallback)
};

/// |g0 - g0_prev| / |g0| < tol; absolute test when g0 == 0.
ConvergenceCheck epoch_converged(const FitResult& current, const FitResult& previous, double tol);

}  // namespace qrdom
