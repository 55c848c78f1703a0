#include "toric/chern.hpp"

#include <algorithm>
#include <map>

#include "toric/error.hpp"

namespace toric {

Integer CycleExpression::coefficient(RaySet cone) const {
  for (const auto& [c, k] : terms)
    if (c == cone) return k;
  return 0;
}

Integer curve_divisor_pairing(const IntVector& alpha, std::size_t ray) {
  if (ray >= alpha.size()) throw Error(ErrorKind::index, "ray index out of range");
  return alpha[ray];
}

IntVector wall_curve_class(const LatticeFan& f, RaySet wall) {
  if (static_cast<int>(wall.size()) != f.rank() - 1)
    throw Error(ErrorKind::precondition, f.names(wall) + " is not a wall");
  std::vector<std::size_t> opposite;
  for (auto sigma : f.max_cones())
    if (sigma.contains(wall)) opposite.push_back((sigma - wall).front());
  if (opposite.size() != 2)
    throw Error(ErrorKind::precondition,
                "wall " + f.names(wall) + " lies in " + std::to_string(opposite.size()) + " max cones");
  return wall_relation(f, Wall{wall, opposite[0], opposite[1]});
}

std::size_t containing_cone_count(const LatticeFan& f, RaySet orbit) {
  std::size_t n = 0;
  for (auto sigma : f.max_cones()) n += sigma.contains(orbit);
  return n;
}

CycleExpression divisor_dot_orbit(const LatticeFan& f, std::size_t ray, RaySet orbit, std::size_t choice) {
  if (ray >= f.ray_count()) throw Error(ErrorKind::index, "ray index out of range");
  if (!f.spans_cone(orbit)) throw Error(ErrorKind::precondition, f.names(orbit) + " is not a cone");
  CycleExpression out;
  out.codim = static_cast<int>(orbit.size()) + 1;
  if (!orbit.contains(ray)) {
    if (f.spans_cone(orbit.with(ray))) out.terms.emplace_back(orbit.with(ray), 1);
    return out;
  }
  const auto& cones = f.max_cones();
  std::size_t k = 0, seen = 0;
  for (; k < cones.size(); ++k)
    if (cones[k].contains(orbit) && seen++ == choice) break;
  if (k == cones.size()) throw Error(ErrorKind::index, "no such containing cone");
  const auto& dual = f.dual_basis(k);
  if (!dual) throw Error(ErrorKind::invalid_fan, "max cone is not unimodular");
  const auto idx = cones[k].indices();
  const auto col = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), ray) - idx.begin());
  std::map<RaySet, Integer, LexLess> acc;
  for (std::size_t w = 0; w < f.ray_count(); ++w) {
    if (cones[k].contains(w)) continue;  // <m, w> = 0 there, except for ray itself
    Integer mw = 0;
    for (std::size_t r = 0; r < static_cast<std::size_t>(f.rank()); ++r) mw += f.vector(w)[r] * (*dual)(r, col);
    if (sgn(mw) == 0) continue;
    const RaySet target = orbit.with(w);
    if (f.spans_cone(target)) acc[target] -= mw;
  }
  for (const auto& [c, v] : acc)
    if (sgn(v) != 0) out.terms.emplace_back(c, v);
  return out;
}

namespace {

// Twice ch_2 . V(tau), with wall classes memoised across calls.
Integer twice_ch2(const LatticeFan& f, RaySet tau, std::map<RaySet, IntVector, LexLess>& wall_cache) {
  Integer total = 0;
  for (std::size_t v = 0; v < f.ray_count(); ++v) {
    const auto curve = divisor_dot_orbit(f, v, tau);
    for (const auto& [wall, coef] : curve.terms) {
      auto it = wall_cache.find(wall);
      if (it == wall_cache.end()) it = wall_cache.emplace(wall, wall_curve_class(f, wall)).first;
      total += coef * it->second[v];
    }
  }
  return total;
}

}  // namespace

Rational ch2_dot_invariant_surface(const LatticeFan& f, RaySet tau) {
  if (static_cast<int>(tau.size()) != f.rank() - 2)
    throw Error(ErrorKind::precondition, f.names(tau) + " does not have codimension 2");
  std::map<RaySet, IntVector, LexLess> cache;
  Rational r(twice_ch2(f, tau, cache), 2);
  r.canonicalize();
  return r;
}

Integer anticanonical_degree(const IntVector& alpha) {
  Integer s = 0;
  for (const auto& x : alpha) s += x;
  return s;
}

ScreenResult screen_2fano(const LatticeFan& f) {
  if (f.rank() < 2) throw Error(ErrorKind::precondition, "screening needs dimension at least 2");
  ScreenResult out;
  std::map<RaySet, IntVector, LexLess> cache;
  for (auto tau : faces_of_dim(f, f.rank() - 2)) {
    Rational v(twice_ch2(f, tau, cache), 2);
    v.canonicalize();
    if (!out.minimum || v < *out.minimum) {
      out.minimum = v;
      out.argmin = tau;
    }
    out.values.emplace_back(tau, v);
  }
  return out;
}

bool candidate_bound_predicate(long n, long m, long rho) {
  if (n < 9 || m < 3 || m > n - 3 || rho < 4) return false;
  // rho < 2n - (s - 37)/30 with s = sqrt(60n + 1249)  <=>  L > s, L = 30(2n - rho) + 37.
  const Integer lhs = Integer(30) * (2 * n - rho) + 37;
  if (sgn(lhs) <= 0) return false;
  return lhs * lhs > Integer(60) * n + 1249;
}

}  // namespace toric
