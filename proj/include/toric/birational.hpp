#pragma once

// Equivariant birational surgery on fans: contractibility, smooth blowdowns
// and blowups, and flips of relations with all coefficients 1.

#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/primitive.hpp"

namespace toric {

/// Casagrande's criterion: for every cone tau avoiding collection and focus
/// with focus | tau a cone, each (collection - {v}) | focus | tau is a cone.
bool is_contractible(const LatticeFan& f, const PrimitiveRelation& r);

/// Smooth blowdown along a relation t_1 + ... + t_s = z. Ray z is removed and
/// the remaining rays keep their relative order.
/// Throws Error(precondition) for the wrong shape and Error(contraction) when
/// the relation is not contractible or the result is not a smooth fan.
LatticeFan contract(const LatticeFan& f, const PrimitiveRelation& r);

struct Blowup {
  LatticeFan fan;               // new ray appended last
  PrimitiveRelation relation;   // sum(center) = new ray
};

/// Star subdivision together with the exceptional relation.
Blowup blowup(const LatticeFan& f, RaySet center, std::string new_label = {});

/// Flip of a1 + ... + am = c1 + ... + cl (m, l >= 2, all coefficients 1),
/// computed as the blowup of the focus followed by the blowdown of the
/// collection. Rays are unchanged.
/// Throws Error(precondition) for the wrong shape, Error(flip) otherwise.
LatticeFan flip(const LatticeFan& f, const PrimitiveRelation& r);

/// The same flip by direct replacement of the cones around the focus.
LatticeFan flip_by_surgery(const LatticeFan& f, const PrimitiveRelation& r);

/// Flips applied in order. Throws Error(disjointness) when two foci together
/// span a cone.
LatticeFan multi_flip(const LatticeFan& f, const std::vector<PrimitiveRelation>& rs);

/// Primitive collections of the blowdown along `r`, predicted from those of
/// `f` alone. Indices refer to the blown-down fan.
std::vector<RaySet> predicted_collections_after_blowdown(const LatticeFan& f, const PrimitiveRelation& r);

/// Primitive collections of the blowup of `f` at `center`, predicted from
/// those of `f` alone. The new ray has index f.ray_count().
std::vector<RaySet> predicted_collections_after_blowup(const LatticeFan& f, RaySet center);

}  // namespace toric
