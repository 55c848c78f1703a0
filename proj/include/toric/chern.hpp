#pragma once

// Intersection numbers on a smooth complete toric variety, restricted to what
// the second Chern character against invariant surfaces needs.

#include <optional>
#include <utility>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// Integer combination of orbit closures V(sigma), all of the same codimension.
struct CycleExpression {
  int codim = 0;
  std::vector<std::pair<RaySet, Integer>> terms;  // sorted by cone, nonzero coefficients

  Integer coefficient(RaySet cone) const;
  bool empty() const { return terms.empty(); }
};

/// C . V(ray) for the curve class with coordinates alpha.
Integer curve_divisor_pairing(const IntVector& alpha, std::size_t ray);

/// Class of the invariant curve V(wall): +1 on the two rays completing the
/// wall to max cones, b_w on the wall rays. Throws Error(precondition) when
/// the wall is not shared by exactly two max cones.
IntVector wall_curve_class(const LatticeFan& f, RaySet wall);

/// V(ray) . V(orbit). When ray lies in orbit, V(ray) is first replaced by the
/// linearly equivalent -sum <m, w> V(w), with m dual to ray in a max cone
/// containing the orbit: the `choice`-th such cone in cone order.
CycleExpression divisor_dot_orbit(const LatticeFan& f, std::size_t ray, RaySet orbit, std::size_t choice = 0);

/// Number of max cones containing `orbit` (the admissible choices above).
std::size_t containing_cone_count(const LatticeFan& f, RaySet orbit);

/// ch_2(X) . V(tau) = 1/2 sum_v V(v)^2 . V(tau) for an (n-2)-cone tau.
Rational ch2_dot_invariant_surface(const LatticeFan& f, RaySet tau);

/// -K_X . C = sum of the curve's coordinates.
Integer anticanonical_degree(const IntVector& alpha);

struct ScreenResult {
  std::vector<std::pair<RaySet, Rational>> values;  // one per (n-2)-cone, in cone order
  std::optional<Rational> minimum;
  std::optional<RaySet> argmin;  // first surface attaining the minimum
};

/// ch_2 against every invariant surface. A nonpositive minimum shows the
/// variety is not 2-Fano; a positive one proves nothing.
ScreenResult screen_2fano(const LatticeFan& f);

/// Numeric conditions a 2-Fano toric manifold other than P^n must meet:
/// n >= 9, 3 <= m <= n - 3, 4 <= rho < 2n - (sqrt(60n + 1249) - 37) / 30.
bool candidate_bound_predicate(long n, long m, long rho);

}  // namespace toric
