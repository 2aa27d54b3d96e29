#include "extrapolate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace qrdom {

void FunctionalHistory::push(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    carry_ += (sum_ - t) + value;
  } else {
    carry_ += (value - t) + sum_;
  }
  sum_ = t;
  values_.push_back(value);
  prefix_.push_back(sum_ + carry_);
}

double FunctionalHistory::cumulative_mean(std::size_t p) const {
  if (p == 0 || p > values_.size()) {
    throw ContractViolation("cumulative_mean: index out of range");
  }
  return prefix_[p - 1] / static_cast<double>(p);
}

double FitResult::model(double n) const {
  const double l = std::log(n);
  return gamma0 + gamma1 * l / n + gamma2 * l * l / n;
}

double fit_weight(std::uint64_t n) {
  if (n == 0) throw ContractViolation("fit_weight: n must be >= 1");
  if (n < 8) return 2.0;
  const double x = static_cast<double>(n);
  const double l = std::log(x);
  return x * x / (l * l * l * l);
}

namespace {

struct Basis {
  double l1;  // log(n)/n
  double l2;  // log^2(n)/n
};

Basis basis(std::size_t n) {
  const double x = static_cast<double>(n);
  const double l = std::log(x);
  return {l / x, l * l / x};
}

}  // namespace

FitResult fit_phi_means(std::span<const double> cumulative) {
  const std::size_t p = cumulative.size();
  if (p < 3) {
    throw NumericalError("fit_phi: need at least 3 cumulative means, got " + std::to_string(p));
  }

  // Weighted centering and scaling of the two non-constant columns.
  double wsum = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t n = 1; n <= p; ++n) {
    const double w = fit_weight(n);
    const Basis b = basis(n);
    wsum += w;
    m1 += w * b.l1;
    m2 += w * b.l2;
  }
  m1 /= wsum;
  m2 /= wsum;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t n = 1; n <= p; ++n) {
    const double w = fit_weight(n);
    const Basis b = basis(n);
    s1 += w * (b.l1 - m1) * (b.l1 - m1);
    s2 += w * (b.l2 - m2) * (b.l2 - m2);
  }
  s1 = std::sqrt(s1);
  s2 = std::sqrt(s2);
  if (!(s1 > 0.0 && s2 > 0.0)) throw NumericalError("fit_phi: rank-deficient design");

  // Streaming Givens QR of the row-weighted design [1, (l1-m1)/s1, (l2-m2)/s2 | F].
  std::array<std::array<double, 4>, 3> r{};
  for (std::size_t n = 1; n <= p; ++n) {
    const double f = cumulative[n - 1];
    if (!std::isfinite(f)) throw NumericalError("fit_phi: non-finite cumulative mean");
    const double sw = std::sqrt(fit_weight(n));
    const Basis b = basis(n);
    std::array<double, 4> row = {sw, sw * (b.l1 - m1) / s1, sw * (b.l2 - m2) / s2, sw * f};
    for (int k = 0; k < 3; ++k) {
      if (row[k] == 0.0) continue;
      const double h = std::hypot(r[k][k], row[k]);
      const double c = r[k][k] / h;
      const double s = row[k] / h;
      for (int m = k; m < 4; ++m) {
        const double top = r[k][m];
        r[k][m] = c * top + s * row[m];
        row[m] = -s * top + c * row[m];
      }
    }
  }

  const double diag_max = std::max({std::abs(r[0][0]), std::abs(r[1][1]), std::abs(r[2][2])});
  for (int k = 0; k < 3; ++k) {
    if (!(std::abs(r[k][k]) > 1e-12 * diag_max)) {
      throw NumericalError("fit_phi: rank-deficient design");
    }
  }
  std::array<double, 3> g{};
  for (int k = 2; k >= 0; --k) {
    double acc = r[k][3];
    for (int m = k + 1; m < 3; ++m) acc -= r[k][m] * g[m];
    g[k] = acc / r[k][k];
  }

  FitResult fit;
  fit.gamma1 = g[1] / s1;
  fit.gamma2 = g[2] / s2;
  fit.gamma0 = g[0] - fit.gamma1 * m1 - fit.gamma2 * m2;
  fit.n_points = p;

  double rss = 0.0;
  for (std::size_t n = 1; n <= p; ++n) {
    const double d = cumulative[n - 1] - fit.model(static_cast<double>(n));
    rss += fit_weight(n) * d * d;
  }
  fit.residual_norm = std::sqrt(rss);
  if (!(std::isfinite(fit.gamma0) && std::isfinite(fit.gamma1) && std::isfinite(fit.gamma2))) {
    throw NumericalError("fit_phi: non-finite coefficients");
  }
  return fit;
}

FitResult fit_phi(const FunctionalHistory& history) {
  std::vector<double> means(history.size());
  for (std::size_t p = 1; p <= history.size(); ++p) means[p - 1] = history.cumulative_mean(p);
  return fit_phi_means(means);
}

ConvergenceCheck epoch_converged(const FitResult& current, const FitResult& previous, double tol) {
  ConvergenceCheck check;
  const double diff = std::abs(current.gamma0 - previous.gamma0);
  if (current.gamma0 == 0.0) {
    check.absolute_fallback = true;
    check.change = diff;
  } else {
    check.change = diff / std::abs(current.gamma0);
  }
  check.converged = check.change < tol;
  return check;
}

}  // namespace qrdom
