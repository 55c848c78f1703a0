#include "toric/birational.hpp"

#include <algorithm>
#include <map>

#include "toric/error.hpp"

namespace toric {

namespace {

// Index map for the removal of ray z.
RaySet drop_index(RaySet s, std::size_t z) {
  const std::uint64_t low = s.mask() & ((std::uint64_t{1} << z) - 1);
  const std::uint64_t high = z >= 63 ? 0 : (s.mask() >> (z + 1)) << z;
  return RaySet(low | high);
}

bool all_unit(const PrimitiveRelation& r) {
  return std::all_of(r.coefficients.begin(), r.coefficients.end(), [](const Integer& c) { return c == 1; });
}

void insert_unique(std::vector<RaySet>& out, RaySet s) {
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

std::vector<RaySet> minimal_elements(const std::vector<RaySet>& sets) {
  std::vector<RaySet> out;
  for (auto s : sets) {
    bool minimal = true;
    for (auto t : sets)
      if (t != s && s.contains(t)) minimal = false;
    if (minimal) insert_unique(out, s);
  }
  return out;
}

}  // namespace

bool is_contractible(const LatticeFan& f, const PrimitiveRelation& r) {
  const RaySet used = r.collection | r.focus;
  for (auto sigma : f.max_cones()) {
    if (!sigma.contains(r.focus)) continue;
    // Every admissible tau lies in some max cone containing the focus.
    bool ok = true;
    for_each_subset(sigma - used, [&](RaySet tau) {
      if (!ok) return;
      r.collection.for_each([&](std::size_t v) {
        if (ok && !f.spans_cone(r.collection.without(v) | r.focus | tau)) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

LatticeFan contract(const LatticeFan& f, const PrimitiveRelation& r) {
  if (r.focus.size() != 1 || r.coefficients.front() != 1)
    throw Error(ErrorKind::precondition, "blowdown needs a relation of the form t_1 + ... + t_s = z");
  if (!is_contractible(f, r))
    throw Error(ErrorKind::contraction, format_relation(f, r) + " is not contractible");
  const std::size_t z = r.focus.front();
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    if (i != z) rays.push_back(f.ray(i));
  std::vector<RaySet> cones;
  for (auto sigma : f.max_cones()) {
    const RaySet c = sigma.contains(z) ? sigma.without(z) | r.collection : sigma;
    if (sigma.contains(z) && c.size() != static_cast<std::size_t>(f.rank()))
      throw Error(ErrorKind::contraction, "merged cone " + f.names(c) + " has the wrong size");
    insert_unique(cones, drop_index(c, z));
  }
  LatticeFan g(f.rank(), std::move(rays), std::move(cones));
  const auto rep = validate(g);
  if (!rep.ok()) throw Error(ErrorKind::contraction, "blowdown is not smooth: " + rep.failures.front());
  return g;
}

Blowup blowup(const LatticeFan& f, RaySet center, std::string new_label) {
  LatticeFan g = star_subdivision(f, center, std::move(new_label));
  auto rel = primitive_relation(g, center);
  return {std::move(g), std::move(rel)};
}

namespace {

void require_flip_shape(const LatticeFan& f, const PrimitiveRelation& r) {
  if (r.collection.size() < 2 || r.focus.size() < 2 || !all_unit(r))
    throw Error(ErrorKind::precondition,
                format_relation(f, r) + " is not of the form a_1 + ... + a_m = c_1 + ... + c_l with m, l >= 2");
}

}  // namespace

LatticeFan flip(const LatticeFan& f, const PrimitiveRelation& r) {
  require_flip_shape(f, r);
  if (!is_contractible(f, r)) throw Error(ErrorKind::flip, format_relation(f, r) + " is not contractible");
  const auto up = star_subdivision(f, r.focus);
  try {
    const auto down_rel = primitive_relation(up, r.collection);
    return contract(up, down_rel);
  } catch (const Error& e) {
    throw Error(ErrorKind::flip, "flip of " + format_relation(f, r) + " failed: " + e.what());
  }
}

LatticeFan flip_by_surgery(const LatticeFan& f, const PrimitiveRelation& r) {
  require_flip_shape(f, r);
  const RaySet a = r.collection;
  const RaySet c = r.focus;
  std::map<std::uint64_t, std::vector<RaySet>> around;
  std::vector<RaySet> cones;
  for (auto sigma : f.max_cones()) {
    if (!sigma.contains(c)) {
      cones.push_back(sigma);
      continue;
    }
    const RaySet rest = sigma - (a | c);
    if ((sigma - c - rest).size() + 1 != a.size())
      throw Error(ErrorKind::flip, "max cone " + f.names(sigma) + " does not fit the flip pattern");
    around[rest.mask()].push_back(sigma);
  }
  for (const auto& [mask, group] : around) {
    if (group.size() != a.size())
      throw Error(ErrorKind::flip, "flip locus around " + f.names(RaySet(mask)) + " is incomplete");
    c.for_each([&](std::size_t cj) { cones.push_back(a | c.without(cj) | RaySet(mask)); });
  }
  LatticeFan g(f.rank(), f.rays(), std::move(cones));
  const auto rep = validate(g);
  if (!rep.ok()) throw Error(ErrorKind::flip, "surgery result is not smooth: " + rep.failures.front());
  return g;
}

LatticeFan multi_flip(const LatticeFan& f, const std::vector<PrimitiveRelation>& rs) {
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j)
      if (f.spans_cone(rs[i].focus | rs[j].focus))
        throw Error(ErrorKind::disjointness,
                    "flip centers " + f.names(rs[i].focus) + " and " + f.names(rs[j].focus) + " meet");
  LatticeFan g = f;
  for (const auto& r : rs) {
    const auto here = primitive_relation(g, r.collection);
    if (here.focus != r.focus || here.coefficients != r.coefficients)
      throw Error(ErrorKind::flip, format_relation(f, r) + " did not survive the earlier flips");
    g = flip(g, here);
  }
  return g;
}

std::vector<RaySet> predicted_collections_after_blowdown(const LatticeFan& f, const PrimitiveRelation& r) {
  if (r.focus.size() != 1) throw Error(ErrorKind::precondition, "blowdown needs a single-ray focus");
  const std::size_t z = r.focus.front();
  const RaySet t = r.collection;
  const auto pcs = primitive_collections(f);
  auto is_pc = [&](RaySet s) { return std::find(pcs.begin(), pcs.end(), s) != pcs.end(); };
  std::vector<RaySet> out;
  for (auto p : pcs) {
    if (!p.contains(z)) {
      if (p != t) insert_unique(out, drop_index(p, z));
      continue;
    }
    const RaySet base = p.without(z);
    bool keep = true;
    for_each_subset(t, [&](RaySet s) {
      if (s != t && is_pc(base | s)) keep = false;
    });
    if (keep) insert_unique(out, drop_index(base | t, z));
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

std::vector<RaySet> predicted_collections_after_blowup(const LatticeFan& f, RaySet center) {
  const std::size_t z = f.ray_count();
  std::vector<RaySet> out{center};
  std::vector<RaySet> third;
  for (auto p : primitive_collections(f)) {
    if (!p.contains(center)) insert_unique(out, p);
    if (p.intersects(center)) third.push_back((p - center).with(z));
  }
  for (auto s : minimal_elements(third)) insert_unique(out, s);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

}  // namespace toric
