#pragma once

// Text formats and fan builders.
//
// TORICFAN format:
//   TORICFAN 1
//   dim <n> rays <r> maxcones <k>
//   <r lines: n integers, optionally followed by "# label">
//   <k lines: n zero-based ray indices>
// '#' starts a comment; on ray lines the comment text is the ray label.
//
// Relation format, one relation per line:
//   [label:] x0 + x1 + x2 = 0
//   [label:] u + v = 2 b + c        (coefficients may also be written "2b")
// An optional "rays: n1, n2, ..." line fixes the generator order; otherwise
// names are numbered in order of first appearance.

#include <string>
#include <utility>
#include <vector>

#include "toric/fan.hpp"
#include "toric/primitive.hpp"

namespace toric {

LatticeFan parse_fan(const std::string& text);
std::string emit_fan(const LatticeFan& f);
LatticeFan read_fan_file(const std::string& path);
void write_fan_file(const std::string& path, const LatticeFan& f);

struct NamedRelation {
  std::string label;
  std::vector<std::size_t> lhs;                          // generator indices
  std::vector<std::pair<std::size_t, Integer>> rhs;      // empty when centered
};

struct RelationPresentation {
  std::vector<std::string> names;
  std::vector<NamedRelation> relations;

  std::size_t index_of(const std::string& name) const;  // Error(index) when absent
  /// Curve-class vector of a relation over the generators.
  IntVector alpha(const NamedRelation& r) const;
  const NamedRelation& relation(const std::string& label) const;
};

RelationPresentation parse_relations(const std::string& text);
std::string emit_relations(const RelationPresentation& p);
RelationPresentation read_relations_file(const std::string& path);

/// Presentation of a fan by its primitive relations, named by display names.
RelationPresentation extract_presentation(const LatticeFan& f);

/// Rebuilds a fan whose primitive relations are exactly the listed ones. The
/// lexicographically first maximal cone receives the standard basis, so the
/// result is canonical only up to unimodular equivalence. Rays carry the
/// presentation's names as labels.
/// Errors: underdetermined, inconsistent, invalid_fan, pc_mismatch.
LatticeFan reconstruct_fan(const RelationPresentation& p, int dim);

/// Fan of P(O(a_0) + ... + O(a_m)) over P^1 in Z^{m+1}. Rays, in order:
/// p0 = -(e_1 + ... + e_m), p_i = e_i, u = e_{m+1} + sum_{i>=1} (a_i - a_0) e_i,
/// u' = -e_{m+1}. Relations: p0 + ... + pm = 0 and u + u' = sum (a_i - a_0) p_i.
LatticeFan build_bundle_over_p1(const std::vector<long>& a);

}  // namespace toric
