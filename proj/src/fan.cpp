#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>
#include <utility>

#include "exact_lp.hpp"
#include "toric/error.hpp"

namespace toric {

bool lex_less(RaySet a, RaySet b) {
  const std::uint64_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  const auto k = static_cast<std::size_t>(std::countr_zero(diff));
  const std::uint64_t above = k >= 63 ? 0 : ~((std::uint64_t{1} << (k + 1)) - 1);
  if (a.contains(k)) return (b.mask() & above) != 0;
  return (a.mask() & above) == 0;
}

std::string RaySet::to_string() const {
  std::string s = "{";
  bool first = true;
  for_each([&](std::size_t i) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  });
  return s + "}";
}

namespace detail {

struct FanCache {
  std::unordered_set<std::uint64_t> faces;
  std::vector<std::optional<IntMatrix>> duals;
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::FanCache> build_cache(const LatticeFan& f) {
  auto cache = std::make_shared<detail::FanCache>();
  cache->faces.insert(0);
  for (const auto& cone : f.max_cones()) {
    for_each_subset(cone, [&](RaySet s) { cache->faces.insert(s.mask()); });
    if (static_cast<int>(cone.size()) == f.rank()) {
      cache->duals.push_back(unimodular_inverse(f.generator_matrix(cone)));
    } else {
      cache->duals.emplace_back(std::nullopt);
    }
  }
  return cache;
}

}  // namespace

LatticeFan::LatticeFan(int rank, std::vector<Ray> rays, std::vector<RaySet> max_cones)
    : rank_(rank), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
  if (rank_ < 0) throw Error(ErrorKind::shape, "negative rank");
  if (rays_.size() > kMaxRays) throw Error(ErrorKind::shape, "more than 64 rays");
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].vector.size() != static_cast<std::size_t>(rank_))
      throw Error(ErrorKind::shape, "ray " + std::to_string(i) + " has wrong length");
  const RaySet all = all_rays();
  for (auto c : max_cones_)
    if (!all.contains(c)) throw Error(ErrorKind::index, "cone refers to a missing ray");
  std::sort(max_cones_.begin(), max_cones_.end(), LexLess{});
  cache_ = build_cache(*this);
}

std::string LatticeFan::name(std::size_t i) const {
  const auto& r = rays_.at(i);
  return r.label.empty() ? "v" + std::to_string(i) : r.label;
}

std::optional<std::size_t> LatticeFan::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (name(i) == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> LatticeFan::find_vector(const IntVector& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].vector == v) return i;
  return std::nullopt;
}

std::string LatticeFan::names(RaySet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ",";
    out += name(i);
    first = false;
  });
  return out + "}";
}

LatticeFan LatticeFan::labeled() const {
  auto rays = rays_;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i].label.empty()) rays[i].label = name(i);
  return LatticeFan(rank_, std::move(rays), max_cones_);
}

bool LatticeFan::spans_cone(RaySet s) const {
  if (!all_rays().contains(s)) throw Error(ErrorKind::index, "ray index out of range");
  return cache_->faces.contains(s.mask());
}

const std::optional<IntMatrix>& LatticeFan::dual_basis(std::size_t cone) const { return cache_->duals.at(cone); }

IntMatrix LatticeFan::generator_matrix(RaySet cone) const {
  std::vector<IntVector> rows;
  cone.for_each([&](std::size_t i) { rows.push_back(rays_.at(i).vector); });
  if (rows.empty()) return IntMatrix(0, static_cast<std::size_t>(rank_));
  return IntMatrix(rows);
}

bool operator==(const LatticeFan& a, const LatticeFan& b) {
  if (a.rank_ != b.rank_ || a.rays_.size() != b.rays_.size() || a.max_cones_ != b.max_cones_) return false;
  for (std::size_t i = 0; i < a.rays_.size(); ++i)
    if (a.rays_[i].vector != b.rays_[i].vector || a.rays_[i].label != b.rays_[i].label) return false;
  return true;
}

namespace {

// Coordinates of p in the basis of max cone `k` (requires a unimodular cone).
std::vector<Integer> cone_coordinates(const LatticeFan& f, std::size_t k, const IntVector& p) {
  const auto& dual = f.dual_basis(k);
  const std::size_t n = static_cast<std::size_t>(f.rank());
  std::vector<Integer> c(n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t r = 0; r < n; ++r) c[col] += p[r] * (*dual)(r, col);
  return c;
}

}  // namespace

ValidationReport validate(const LatticeFan& f) {
  ValidationReport rep;
  const auto n = static_cast<std::size_t>(f.rank());

  for (std::size_t i = 0; i < f.ray_count(); ++i)
    if (!is_primitive(f.vector(i))) {
      rep.nonprimitive_rays.push_back(i);
      rep.failures.push_back("ray " + f.name(i) + " " + to_string(f.vector(i)) + " is not primitive");
    }
  for (std::size_t i = 0; i < f.ray_count(); ++i)
    for (std::size_t j = i + 1; j < f.ray_count(); ++j)
      if (f.vector(i) == f.vector(j)) {
        rep.duplicate_rays = true;
        rep.failures.push_back("rays " + f.name(i) + " and " + f.name(j) + " coincide");
      }

  const auto& cones = f.max_cones();
  for (std::size_t k = 0; k + 1 < cones.size(); ++k)
    if (cones[k] == cones[k + 1]) {
      rep.duplicate_cones = true;
      rep.failures.push_back("duplicate max cone " + f.names(cones[k]));
    }
  for (std::size_t k = 0; k < cones.size(); ++k) {
    if (cones[k].size() != n) {
      rep.wrong_cone_size = true;
      rep.failures.push_back("max cone " + f.names(cones[k]) + " does not have " + std::to_string(n) + " rays");
    } else if (!f.dual_basis(k)) {
      rep.non_unimodular_cones.push_back(k);
      rep.failures.push_back("max cone " + f.names(cones[k]) + " is not unimodular");
    }
  }
  if (cones.empty()) rep.failures.push_back("fan has no maximal cones");
  if (!rep.ok()) return rep;

  std::map<std::uint64_t, std::vector<std::size_t>> wall_owners;
  for (std::size_t k = 0; k < cones.size(); ++k)
    cones[k].for_each([&](std::size_t v) { wall_owners[cones[k].without(v).mask()].push_back(k); });
  std::vector<std::vector<std::size_t>> adjacency(cones.size());
  for (const auto& [mask, owners] : wall_owners) {
    if (owners.size() != 2) {
      rep.unpaired_walls.push_back(RaySet(mask));
      rep.failures.push_back("wall " + f.names(RaySet(mask)) + " lies in " + std::to_string(owners.size()) +
                             " max cones instead of 2");
      continue;
    }
    adjacency[owners[0]].push_back(owners[1]);
    adjacency[owners[1]].push_back(owners[0]);
    // The two cones must lie on opposite sides of their common wall.
    const RaySet wall(mask);
    const std::size_t u1 = (cones[owners[0]] - wall).front();
    const std::size_t u2 = (cones[owners[1]] - wall).front();
    const auto coords = cone_coordinates(f, owners[0], f.vector(u2));
    const auto idx = cones[owners[0]].indices();
    const auto pos = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), u1) - idx.begin());
    if (sgn(coords[pos]) >= 0) {
      rep.overlapping = true;
      rep.failures.push_back("max cones " + f.names(cones[owners[0]]) + " and " + f.names(cones[owners[1]]) +
                             " lie on the same side of their common wall");
    }
  }

  std::vector<bool> seen(cones.size(), false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto k = queue.front();
    queue.pop();
    for (auto nb : adjacency[k])
      if (!seen[nb]) {
        seen[nb] = true;
        ++reached;
        queue.push(nb);
      }
  }
  if (reached != cones.size()) {
    rep.disconnected = true;
    rep.failures.push_back("max-cone adjacency graph is disconnected");
  }

  if (rep.ok() && n > 0) {
    // An interior point of the first cone must lie in no other cone: the
    // pseudomanifold then covers R^n exactly once.
    IntVector p(n);
    cones[0].for_each([&](std::size_t v) { p = add(p, f.vector(v)); });
    for (std::size_t k = 1; k < cones.size(); ++k) {
      const auto c = cone_coordinates(f, k, p);
      if (std::all_of(c.begin(), c.end(), [](const Integer& x) { return sgn(x) >= 0; })) {
        rep.overlapping = true;
        rep.failures.push_back("max cones " + f.names(cones[0]) + " and " + f.names(cones[k]) + " overlap");
        break;
      }
    }
  }
  return rep;
}

void require_valid(const LatticeFan& f) {
  const auto rep = validate(f);
  if (!rep.ok()) throw Error(ErrorKind::invalid_fan, rep.failures.front());
}

Location locate(const LatticeFan& f, const IntVector& p) {
  if (p.size() != static_cast<std::size_t>(f.rank())) throw Error(ErrorKind::shape, "point has wrong dimension");
  if (is_zero(p)) return {};
  const auto& cones = f.max_cones();
  for (std::size_t k = 0; k < cones.size(); ++k) {
    if (!f.dual_basis(k)) continue;
    const auto c = cone_coordinates(f, k, p);
    if (std::any_of(c.begin(), c.end(), [](const Integer& x) { return sgn(x) < 0; })) continue;
    Location loc;
    const auto idx = cones[k].indices();
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (sgn(c[j]) > 0) {
        loc.cone.insert(idx[j]);
        loc.coefficients.push_back(c[j]);
      }
    return loc;
  }
  throw Error(ErrorKind::invalid_fan, "point " + to_string(p) + " lies in no cone; fan is not complete");
}

std::vector<RaySet> faces_of_dim(const LatticeFan& f, int d) {
  if (d < 0 || d > f.rank()) throw Error(ErrorKind::index, "face dimension out of range");
  std::unordered_set<std::uint64_t> seen;
  std::vector<RaySet> out;
  for (auto cone : f.max_cones())
    for_each_subset(cone, [&](RaySet s) {
      if (static_cast<int>(s.size()) == d && seen.insert(s.mask()).second) out.push_back(s);
    });
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

LatticeFan star_subdivision(const LatticeFan& f, RaySet center, std::string new_label) {
  if (center.size() < 2) throw Error(ErrorKind::precondition, "star subdivision center needs at least two rays");
  if (!f.spans_cone(center)) throw Error(ErrorKind::precondition, "center " + f.names(center) + " is not a cone");
  if (f.ray_count() + 1 > kMaxRays) throw Error(ErrorKind::shape, "too many rays");
  IntVector b(static_cast<std::size_t>(f.rank()));
  center.for_each([&](std::size_t v) { b = add(b, f.vector(v)); });
  auto rays = f.rays();
  const std::size_t bi = rays.size();
  rays.push_back({b, std::move(new_label)});
  std::vector<RaySet> cones;
  for (auto cone : f.max_cones()) {
    if (!cone.contains(center)) {
      cones.push_back(cone);
      continue;
    }
    center.for_each([&](std::size_t c) { cones.push_back(cone.without(c).with(bi)); });
  }
  return LatticeFan(f.rank(), std::move(rays), std::move(cones));
}

std::vector<Wall> walls(const LatticeFan& f) {
  std::map<std::uint64_t, std::vector<std::size_t>> owners;
  for (auto cone : f.max_cones())
    cone.for_each([&](std::size_t v) { owners[cone.without(v).mask()].push_back(v); });
  std::vector<Wall> out;
  for (const auto& [mask, opposite] : owners) {
    if (opposite.size() != 2) throw Error(ErrorKind::invalid_fan, "wall " + f.names(RaySet(mask)) + " is not shared by two cones");
    out.push_back({RaySet(mask), opposite[0], opposite[1]});
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) { return lex_less(a.face, b.face); });
  return out;
}

IntVector wall_relation(const LatticeFan& f, const Wall& w) {
  const RaySet left_cone = w.face.with(w.left);
  const auto& cones = f.max_cones();
  const auto it = std::lower_bound(cones.begin(), cones.end(), left_cone, LexLess{});
  if (it == cones.end() || *it != left_cone) throw Error(ErrorKind::precondition, "wall does not bound a max cone");
  const auto k = static_cast<std::size_t>(it - cones.begin());
  if (!f.dual_basis(k)) throw Error(ErrorKind::invalid_fan, "max cone is not unimodular");
  // right = sum_{v in left cone} c_v v with c_left = -1, so
  // left + right - sum_{w in wall} c_w w = 0.
  const auto c = cone_coordinates(f, k, f.vector(w.right));
  IntVector alpha(f.ray_count());
  const auto idx = left_cone.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) alpha[idx[j]] = -c[j];
  alpha[w.left] = 1;
  alpha[w.right] = 1;
  if (-c[static_cast<std::size_t>(std::find(idx.begin(), idx.end(), w.left) - idx.begin())] != 1)
    throw Error(ErrorKind::invalid_fan, "wall " + f.names(w.face) + " separates its cones improperly");
  return alpha;
}

bool is_projective(const LatticeFan& f) {
  require_valid(f);
  // Gordan: a divisor positive on every wall curve exists iff no nonzero
  // nonnegative combination of wall classes vanishes.
  std::vector<IntVector> classes;
  for (const auto& w : walls(f)) {
    auto alpha = wall_relation(f, w);
    if (std::find(classes.begin(), classes.end(), alpha) == classes.end()) classes.push_back(std::move(alpha));
  }
  if (classes.empty()) return true;
  const std::size_t r = f.ray_count();
  std::vector<std::vector<Rational>> a(r + 1, std::vector<Rational>(classes.size()));
  std::vector<Rational> b(r + 1);
  for (std::size_t j = 0; j < classes.size(); ++j) {
    for (std::size_t i = 0; i < r; ++i) a[i][j] = classes[j][i];
    a[r][j] = 1;
  }
  b[r] = 1;
  return !detail::nonnegative_feasible(a, b);
}

LatticeFan product(const LatticeFan& a, const LatticeFan& b) {
  const auto na = static_cast<std::size_t>(a.rank());
  const auto nb = static_cast<std::size_t>(b.rank());
  std::vector<Ray> rays;
  for (const auto& r : a.rays()) {
    IntVector v = r.vector;
    v.resize(na + nb);
    rays.push_back({v, r.label});
  }
  for (const auto& r : b.rays()) {
    IntVector v(na);
    v.insert(v.end(), r.vector.begin(), r.vector.end());
    rays.push_back({v, r.label});
  }
  std::vector<RaySet> cones;
  const auto shift = a.ray_count();
  for (auto ca : a.max_cones())
    for (auto cb : b.max_cones()) cones.push_back(RaySet(ca.mask() | (cb.mask() << shift)));
  return LatticeFan(a.rank() + b.rank(), std::move(rays), std::move(cones));
}

LatticeFan permute_rays(const LatticeFan& f, const std::vector<std::size_t>& order) {
  if (order.size() != f.ray_count()) throw Error(ErrorKind::shape, "permutation has wrong length");
  std::vector<std::size_t> inverse(order.size());
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < order.size(); ++k) {
    inverse.at(order[k]) = k;
    rays.push_back(f.ray(order[k]));
  }
  std::vector<RaySet> cones;
  for (auto c : f.max_cones()) {
    RaySet s;
    c.for_each([&](std::size_t v) { s.insert(inverse[v]); });
    cones.push_back(s);
  }
  return LatticeFan(f.rank(), std::move(rays), std::move(cones));
}

LatticeFan projective_space(int n) {
  const auto dim = static_cast<std::size_t>(n);
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector v(dim);
    v[i] = 1;
    rays.push_back({v, "x" + std::to_string(i + 1)});
  }
  rays.push_back({IntVector(dim, Integer(-1)), "x0"});
  std::vector<RaySet> cones;
  const RaySet all = RaySet::first(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) cones.push_back(all.without(i));
  return LatticeFan(n, std::move(rays), std::move(cones));
}

}  // namespace toric
