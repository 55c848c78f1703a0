#include "toric/primitive.hpp"

#include <algorithm>
#include <unordered_set>

#include "exact_lp.hpp"
#include "toric/error.hpp"

namespace toric {

Integer PrimitiveRelation::mu(std::size_t v) const {
  if (!focus.contains(v)) return 0;
  std::size_t k = 0;
  for (auto w : focus.indices()) {
    if (w == v) return coefficients[k];
    ++k;
  }
  return 0;
}

std::vector<RaySet> primitive_collections(const LatticeFan& f) {
  std::unordered_set<std::uint64_t> faces;
  for (auto cone : f.max_cones()) for_each_subset(cone, [&](RaySet s) { faces.insert(s.mask()); });
  const std::size_t r = f.ray_count();
  std::vector<RaySet> out;
  // Every minimal non-face S is F | {max S} for the face F = S - {max S}.
  for (auto mask : faces) {
    const RaySet face(mask);
    const std::size_t start = face.empty() ? 0 : face.back() + 1;
    for (std::size_t v = start; v < r; ++v) {
      const RaySet s = face.with(v);
      if (faces.contains(s.mask())) continue;
      bool minimal = true;
      face.for_each([&](std::size_t w) { minimal = minimal && faces.contains(s.without(w).mask()); });
      if (minimal) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

PrimitiveRelation primitive_relation(const LatticeFan& f, RaySet p) {
  if (p.empty() || f.spans_cone(p)) throw Error(ErrorKind::precondition, f.names(p) + " spans a cone");
  p.for_each([&](std::size_t v) {
    if (!f.spans_cone(p.without(v)))
      throw Error(ErrorKind::precondition, f.names(p) + " is not a minimal non-face");
  });
  IntVector sum(static_cast<std::size_t>(f.rank()));
  p.for_each([&](std::size_t v) { sum = add(sum, f.vector(v)); });
  auto loc = locate(f, sum);
  PrimitiveRelation r;
  r.collection = p;
  r.focus = loc.cone;
  r.coefficients = std::move(loc.coefficients);
  r.alpha.assign(f.ray_count(), Integer(0));
  p.for_each([&](std::size_t v) { r.alpha[v] = 1; });
  Integer total = static_cast<long>(p.size());
  const auto idx = r.focus.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (p.contains(idx[j])) throw Error(ErrorKind::invalid_fan, "collection meets its focus");
    r.alpha[idx[j]] = -r.coefficients[j];
    total -= r.coefficients[j];
  }
  r.degree = total.get_si();
  return r;
}

std::vector<PrimitiveRelation> primitive_relations(const LatticeFan& f) {
  std::vector<PrimitiveRelation> out;
  for (auto p : primitive_collections(f)) out.push_back(primitive_relation(f, p));
  return out;
}

std::string format_relation(const LatticeFan& f, const PrimitiveRelation& r) {
  std::string s;
  r.collection.for_each([&](std::size_t v) {
    if (!s.empty()) s += " + ";
    s += f.name(v);
  });
  s += " =";
  if (r.centered()) return s + " 0";
  const auto idx = r.focus.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) {
    s += j == 0 ? " " : " + ";
    if (r.coefficients[j] != 1) s += r.coefficients[j].get_str() + " ";
    s += f.name(idx[j]);
  }
  return s;
}

bool is_fano(const LatticeFan& f) {
  for (const auto& r : primitive_relations(f))
    if (r.degree <= 0) return false;
  return true;
}

std::vector<RaySet> centered_collections(const LatticeFan& f) {
  std::vector<RaySet> out;
  for (auto p : primitive_collections(f)) {
    IntVector sum(static_cast<std::size_t>(f.rank()));
    p.for_each([&](std::size_t v) { sum = add(sum, f.vector(v)); });
    if (is_zero(sum)) out.push_back(p);
  }
  std::stable_sort(out.begin(), out.end(), [](RaySet a, RaySet b) { return a.size() < b.size(); });
  return out;
}

std::optional<int> minimal_p_dimension(const LatticeFan& f) {
  const auto c = minimal_centered_collection(f);
  if (!c) return std::nullopt;
  return static_cast<int>(c->size()) - 1;
}

std::optional<RaySet> minimal_centered_collection(const LatticeFan& f) {
  const auto cs = centered_collections(f);
  if (cs.empty()) return std::nullopt;
  return cs.front();
}

std::vector<std::size_t> opponents(const LatticeFan& f, std::size_t ray) {
  if (ray >= f.ray_count()) throw Error(ErrorKind::index, "ray index out of range");
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < f.ray_count(); ++w)
    if (w != ray && !f.spans_cone({ray, w})) out.push_back(w);
  return out;
}

namespace {

void require_centered(const LatticeFan& f, RaySet p) {
  const auto r = primitive_relation(f, p);
  if (!r.centered()) throw Error(ErrorKind::precondition, f.names(p) + " is not a centered collection");
}

}  // namespace

BundleLocus bundle_locus(const LatticeFan& f, RaySet centered) {
  require_centered(f, centered);
  BundleLocus out;
  for (auto q : primitive_collections(f)) {
    const RaySet common = q & centered;
    if (common.empty() || common == centered) continue;
    const RaySet sigma = q - centered;
    if (std::find(out.cones.begin(), out.cones.end(), sigma) == out.cones.end()) out.cones.push_back(sigma);
  }
  std::sort(out.cones.begin(), out.cones.end(), LexLess{});
  for (auto s : out.cones) {
    const int d = static_cast<int>(s.size());
    if (!out.codim || d < *out.codim) out.codim = d;
  }
  return out;
}

namespace {

std::vector<Integer> sorted_desc(std::vector<Integer> v) {
  std::sort(v.begin(), v.end(), [](const Integer& a, const Integer& b) { return a > b; });
  return v;
}

bool rhs_is(const std::vector<Integer>& rhs, std::initializer_list<long> want) {
  if (rhs.size() != want.size()) return false;
  std::size_t k = 0;
  for (long w : want)
    if (rhs[k++] != w) return false;
  return true;
}

}  // namespace

int relevant_type(int m, std::size_t x_count, std::vector<Integer> rhs) {
  rhs = sorted_desc(std::move(rhs));
  if (m == 2) {
    if (x_count == 1 && rhs_is(rhs, {1})) return 1;
    if (x_count == 2 && rhs_is(rhs, {1, 1})) return 2;
    if (x_count == 2 && rhs_is(rhs, {1})) return 3;
    if (x_count == 2 && rhs_is(rhs, {2})) return 4;
    return 0;
  }
  if (m == 3) {
    if (x_count == 1 && rhs_is(rhs, {1})) return 1;
    if (x_count == 2 && rhs_is(rhs, {1, 1})) return 2;
    if (x_count == 2 && rhs_is(rhs, {2})) return 3;
    if (x_count == 2 && rhs_is(rhs, {1})) return 4;
    if (x_count == 3 && rhs_is(rhs, {1, 1, 1})) return 5;
    if (x_count == 3 && rhs_is(rhs, {2, 1})) return 6;
    if (x_count == 3 && rhs_is(rhs, {3})) return 7;
    if (x_count == 3 && rhs_is(rhs, {1, 1})) return 8;
    if (x_count == 3 && rhs_is(rhs, {2})) return 9;
    if (x_count == 3 && rhs_is(rhs, {1})) return 10;
  }
  return 0;
}

std::string relevant_shape(std::size_t x_count, std::vector<Integer> rhs) {
  rhs = sorted_desc(std::move(rhs));
  std::string s;
  for (std::size_t i = 0; i < x_count; ++i) s += "x+";
  s += "a=";
  if (rhs.empty()) return s + "0";
  char name = 'b';
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    if (j > 0) s += "+";
    if (rhs[j] != 1) s += rhs[j].get_str();
    s += name++;
  }
  return s;
}

std::vector<RelevantRelation> relevant_collections(const LatticeFan& f, RaySet centered) {
  require_centered(f, centered);
  const int m = static_cast<int>(centered.size()) - 1;
  std::vector<RelevantRelation> out;
  for (auto q : primitive_collections(f)) {
    const RaySet x = q & centered;
    const RaySet ext = q - centered;
    if (x.empty() || x == centered || ext.size() != 1) continue;
    RelevantRelation rr;
    rr.relation = primitive_relation(f, q);
    rr.x_part = x;
    rr.a = ext.front();
    rr.type = relevant_type(m, x.size(), rr.relation.coefficients);
    rr.shape = relevant_shape(x.size(), rr.relation.coefficients);
    out.push_back(std::move(rr));
  }
  return out;
}

namespace {

struct Decomposer {
  const std::vector<IntVector>& basis;
  long bound;
  std::vector<Integer> lambda;

  // Whether some nonnegative rational combination of basis[k..] hits rest.
  bool relaxed_feasible(std::size_t k, const IntVector& rest) const {
    const std::size_t cols = basis.size() - k;
    if (cols == 0) return is_zero(rest);
    std::vector<std::vector<Rational>> a(rest.size(), std::vector<Rational>(cols));
    std::vector<Rational> b(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) {
      b[i] = rest[i];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = basis[k + j][i];
    }
    return detail::nonnegative_feasible(a, b);
  }

  bool search(std::size_t k, const IntVector& rest) {
    if (k == basis.size()) return is_zero(rest);
    if (!relaxed_feasible(k, rest)) return false;
    IntVector cur = rest;
    for (long c = 0; c <= bound; ++c) {
      lambda[k] = c;
      if (search(k + 1, cur)) return true;
      cur = add(cur, scaled(basis[k], -1));
    }
    lambda[k] = 0;
    return false;
  }
};

}  // namespace

std::optional<std::vector<Integer>> decompose_relation(const IntVector& target, const std::vector<IntVector>& basis,
                                                       long bound) {
  for (const auto& b : basis)
    if (b.size() != target.size()) throw Error(ErrorKind::shape, "relation vectors of unequal length");
  Decomposer d{basis, bound, std::vector<Integer>(basis.size())};
  if (!d.search(0, target)) return std::nullopt;
  return d.lambda;
}

std::optional<std::vector<Integer>> decompose_relation(const LatticeFan& f, const IntVector& target,
                                                       const std::vector<PrimitiveRelation>& basis) {
  Integer top = 0;
  for (const auto& x : target) top = std::max<Integer>(top, abs(x));
  std::vector<IntVector> vecs;
  for (const auto& r : basis) vecs.push_back(r.alpha);
  return decompose_relation(target, vecs, Integer(top * f.rank()).get_si());
}

}  // namespace toric
