#include "qrng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace qrdom {

double radical_inverse(std::uint64_t n, unsigned base, DigitPermutation perm) {
  if (n == 0) {
    throw ContractViolation("radical_inverse: index must be >= 1");
  }
  if (base < 2) {
    throw ContractViolation("radical_inverse: base must be >= 2");
  }
  const double inv_base = 1.0 / base;
  double scale = inv_base;
  double result = 0.0;
  while (n > 0) {
    auto digit = static_cast<unsigned>(n % base);
    if (perm == DigitPermutation::reverse && digit != 0) {
      digit = base - digit;
    }
    result += digit * scale;
    scale *= inv_base;
    n /= base;
  }
  return result;
}

UnitSquarePoint reverse_halton(std::uint64_t i) {
  if (i == 0) {
    throw ContractViolation("reverse_halton: index must be >= 1");
  }
  return {radical_inverse(i, 2, DigitPermutation::reverse),
          radical_inverse(i, 3, DigitPermutation::reverse)};
}

OctantDirection octant_direction(UnitSquarePoint p) {
  const double xi = 1.0 - p.u1;
  const double sin_theta = std::sin(std::acos(xi));
  const double phi = p.u2 * std::numbers::pi / 2.0;
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), xi};
}

OctantDirection quasi_random_direction(std::uint64_t i) {
  return octant_direction(reverse_halton(i));
}

double star_discrepancy(std::span<const UnitSquarePoint> points, std::size_t n) {
  if (n == 0) {
    throw ContractViolation("star_discrepancy: need at least one point");
  }
  if (points.size() < n) {
    throw ContractViolation("star_discrepancy: fewer points than requested");
  }
  std::vector<UnitSquarePoint> pts(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(pts.begin(), pts.end(),
            [](const auto& l, const auto& r) { return l.u1 < r.u1; });

  std::vector<double> ys;
  ys.reserve(n + 1);
  for (const auto& p : pts) ys.push_back(p.u2);
  ys.push_back(1.0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t ny = ys.size();

  // open_count[m]: inserted points with y < ys[m]; closed_count[m]: y <= ys[m].
  std::vector<std::size_t> open_count(ny, 0);
  std::vector<std::size_t> closed_count(ny, 0);
  const auto insert = [&](double y) {
    const auto r = static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
    for (std::size_t m = r; m < ny; ++m) {
      ++closed_count[m];
      if (m > r) ++open_count[m];
    }
  };

  const double total = static_cast<double>(n);
  double worst = 0.0;
  std::size_t next = 0;
  const auto scan = [&](double u) {
    // Points inserted so far all have x < u.
    for (std::size_t m = 0; m < ny; ++m) {
      const double deficit = u * ys[m] - static_cast<double>(open_count[m]) / total;
      worst = std::max(worst, deficit);
    }
    while (next < n && pts[next].u1 == u) {
      insert(pts[next].u2);
      ++next;
    }
    for (std::size_t m = 0; m < ny; ++m) {
      const double excess = static_cast<double>(closed_count[m]) / total - u * ys[m];
      worst = std::max(worst, excess);
    }
  };

  while (next < n) {
    scan(pts[next].u1);
  }
  scan(1.0);
  return worst;
}

}  // namespace qrdom
