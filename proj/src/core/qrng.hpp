#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qrdom {

struct UnitSquarePoint {
  double u1 = 0.0;
  double u2 = 0.0;
  bool operator==(const UnitSquarePoint&) const = default;
};

/// Unit direction in the first octant (all cosines strictly positive).
struct OctantDirection {
  double mu = 0.0;
  double eta = 0.0;
  double xi = 0.0;
  bool operator==(const OctantDirection&) const = default;
};

/// Digit permutation applied by the radical inverse.
enum class DigitPermutation {
  identity,
  reverse,  // 0 -> 0, d -> base - d
};

/// Radical inverse of n in the given base, with each digit permuted.
/// The sequence is 1-indexed: n == 0 throws ContractViolation.
double radical_inverse(std::uint64_t n, unsigned base, DigitPermutation perm);

/// Two-dimensional reverse Halton point (bases 2 and 3).
UnitSquarePoint reverse_halton(std::uint64_t i);

/// Maps a unit-square point onto the first octant:
///   xi = 1 - u1, mu = sin(acos(xi)) cos(u2 pi/2), eta = sin(acos(xi)) sin(u2 pi/2)
OctantDirection octant_direction(UnitSquarePoint p);

/// The i-th quasi-random ordinate direction, octant_direction(reverse_halton(i)).
OctantDirection quasi_random_direction(std::uint64_t i);

/// Exact star discrepancy of the first n points, evaluated over every
/// critical anchored box (corners drawn from the point coordinates and 1,
/// with both open and closed counting). O(n^2) time.
double star_discrepancy(std::span<const UnitSquarePoint> points, std::size_t n);

}  // namespace qrdom
