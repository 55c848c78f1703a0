#pragma once

// Primitive collections and relations of a smooth complete fan, and the
// combinatorial invariants derived from them.

#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// A minimal set of rays that spans no cone, with its relation
/// sum(collection) = sum_j coefficients[j] * focus_j.
struct PrimitiveRelation {
  RaySet collection;
  RaySet focus;                       // minimal cone containing the sum
  std::vector<Integer> coefficients;  // positive, aligned with focus.indices()
  long degree = 0;                    // |collection| - sum(coefficients)
  IntVector alpha;                    // +1 on collection, -mu on focus, 0 elsewhere

  bool centered() const { return focus.empty(); }
  /// Coefficient of ray v on the right-hand side (0 when v is not in the focus).
  Integer mu(std::size_t v) const;
  friend bool operator==(const PrimitiveRelation&, const PrimitiveRelation&) = default;
};

/// All primitive collections, sorted lexicographically.
std::vector<RaySet> primitive_collections(const LatticeFan& f);

/// Throws Error(precondition) when `p` is not a primitive collection.
PrimitiveRelation primitive_relation(const LatticeFan& f, RaySet p);

/// Relations of all primitive collections, in collection order.
std::vector<PrimitiveRelation> primitive_relations(const LatticeFan& f);

/// Human-readable relation, e.g. "x1 + a = b", "u + v = 2 b + c", "x0 + x1 + x2 = 0".
std::string format_relation(const LatticeFan& f, const PrimitiveRelation& r);

/// Fano iff every primitive relation has positive degree.
bool is_fano(const LatticeFan& f);

/// Centered collections (focus = zero cone), sorted by size then lexicographically.
std::vector<RaySet> centered_collections(const LatticeFan& f);

/// Minimal P-dimension: min |P| - 1 over centered P; nullopt without one.
std::optional<int> minimal_p_dimension(const LatticeFan& f);

/// First centered collection realising the minimal P-dimension.
std::optional<RaySet> minimal_centered_collection(const LatticeFan& f);

/// Rays w such that {ray, w} spans no cone.
std::vector<std::size_t> opponents(const LatticeFan& f, std::size_t ray);

struct BundleLocus {
  std::vector<RaySet> cones;  // the cones indexing the bad locus, sorted
  std::optional<int> codim;   // smallest cone dimension; nullopt when empty
};

/// Cones sigma disjoint from P with P' | sigma primitive for some nonempty P'
/// strictly inside P. Throws Error(precondition) if P is not centered.
BundleLocus bundle_locus(const LatticeFan& f, RaySet centered);

/// A relevant collection P' | {a} with P' a proper nonempty subset of the
/// centered collection P, classified by the shape of its relation.
struct RelevantRelation {
  PrimitiveRelation relation;
  RaySet x_part;          // P' (rays of the centered collection)
  std::size_t a = 0;      // the external ray
  int type = 0;           // table type, 0 when the shape is not tabulated
  std::string shape;      // e.g. "x+x+a=b+c", always populated
};

/// Relevant collections w.r.t. a centered collection, sorted by collection.
std::vector<RelevantRelation> relevant_collections(const LatticeFan& f, RaySet centered);

/// Type of a relation shape for fiber dimension m (number of x rays on the
/// left, right-hand coefficients); 0 when untabulated.
int relevant_type(int m, std::size_t x_count, std::vector<Integer> rhs);

/// Shape descriptor such as "x+x+a=2b+c".
std::string relevant_shape(std::size_t x_count, std::vector<Integer> rhs);

/// Nonnegative integer lambda with sum lambda_i * basis_i == target, searched
/// exhaustively with every lambda_i <= bound. The lexicographically smallest
/// solution is returned; nullopt when none exists within the bound.
std::optional<std::vector<Integer>> decompose_relation(const IntVector& target, const std::vector<IntVector>& basis,
                                                       long bound);

/// decompose_relation with the default bound max|target_v| * rank.
std::optional<std::vector<Integer>> decompose_relation(const LatticeFan& f, const IntVector& target,
                                                       const std::vector<PrimitiveRelation>& basis);

}  // namespace toric
