#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/io.hpp"

namespace fixtures {

inline toric::Ray ray(std::initializer_list<long> v, std::string label = {}) {
  return {toric::make_vector(v), std::move(label)};
}

inline toric::LatticeFan p2() {
  return toric::LatticeFan(2, {ray({1, 0}), ray({0, 1}), ray({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}

inline toric::LatticeFan p1xp1() {
  return toric::LatticeFan(2, {ray({1, 0}), ray({-1, 0}), ray({0, 1}), ray({0, -1})},
                           {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

inline toric::LatticeFan f2() {
  return toric::LatticeFan(2, {ray({1, 0}), ray({0, 1}), ray({-1, 2}), ray({0, -1})},
                           {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline toric::LatticeFan blowup_p2() {
  return toric::LatticeFan(2, {ray({1, 0}), ray({1, 1}), ray({0, 1}), ray({-1, -1})},
                           {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// Blowup of P^3 along a line; ray order v1, v2, v3, v0, b.
inline toric::LatticeFan b3() {
  return toric::LatticeFan(
      3,
      {ray({1, 0, 0}, "v1"), ray({0, 1, 0}, "v2"), ray({0, 0, 1}, "v3"), ray({-1, -1, -1}, "v0"),
       ray({0, 1, 1}, "b")},
      {{3, 0, 1}, {3, 0, 2}, {3, 1, 4}, {3, 2, 4}, {0, 1, 4}, {0, 2, 4}});
}

inline toric::LatticeFan p3_b3_order() {
  return toric::LatticeFan(
      3, {ray({1, 0, 0}, "v1"), ray({0, 1, 0}, "v2"), ray({0, 0, 1}, "v3"), ray({-1, -1, -1}, "v0")},
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline std::string data_path(const std::string& name) { return std::string(TORIC_TEST_DATA) + "/" + name; }

inline toric::RelationPresentation presentation(const std::string& id) {
  return toric::read_relations_file(data_path(id + ".rel"));
}

// Fans rebuilt from the relation listings; dimension from the id prefix.
inline toric::LatticeFan listed(const std::string& id) {
  return toric::reconstruct_fan(presentation(id), id.rfind("gr5", 0) == 0 ? 5 : 6);
}

inline const std::vector<std::string>& m2_ids() {
  static const std::vector<std::string> ids{"gr5_550", "gr5_659", "gr5_708", "gr6_276", "gr6_333", "gr6_338"};
  return ids;
}

inline const std::vector<std::string>& m3_ids() {
  static const std::vector<std::string> ids{"gr6_2170", "gr6_2264", "gr6_2268"};
  return ids;
}

inline std::vector<toric::LatticeFan> small_fans() {
  return {p2(), p1xp1(), blowup_p2(), f2(), b3(), p3_b3_order(), toric::projective_space(4)};
}

// Rays of `f` with the given labels.
inline toric::RaySet labels(const toric::LatticeFan& f, std::initializer_list<const char*> names) {
  toric::RaySet s;
  for (const char* n : names) s = s.with(f.find_label(n).value());
  return s;
}

// Relations keyed by name: (sorted lhs names, rhs name -> coefficient).
using NamedForm = std::set<std::pair<std::vector<std::string>, std::map<std::string, toric::Integer>>>;

inline NamedForm named_form(const toric::RelationPresentation& p) {
  NamedForm out;
  for (const auto& r : p.relations) {
    std::vector<std::string> lhs;
    for (auto i : r.lhs) lhs.push_back(p.names[i]);
    std::sort(lhs.begin(), lhs.end());
    std::map<std::string, toric::Integer> rhs;
    for (const auto& [i, c] : r.rhs) rhs[p.names[i]] = c;
    out.emplace(lhs, rhs);
  }
  return out;
}

inline NamedForm named_form(const toric::LatticeFan& f) { return named_form(toric::extract_presentation(f)); }

inline NamedForm named_form(const std::string& relations) { return named_form(toric::parse_relations(relations)); }

}  // namespace fixtures
