#pragma once

// Smooth complete simplicial fans: the combinatorial model of a smooth proper
// toric variety. Cones are stored only as maximal cones; faces are derived.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/ray_set.hpp"

namespace toric {

struct Ray {
  IntVector vector;
  std::string label;  // empty when the ray is unnamed

  friend bool operator==(const Ray&, const Ray&) = default;
};

namespace detail {
struct FanCache;
}

/// Immutable fan: ray generators in Z^n plus maximal cones (each of size n).
/// Maximal cones are kept sorted lexicographically by ray indices.
class LatticeFan {
 public:
  LatticeFan() = default;
  LatticeFan(int rank, std::vector<Ray> rays, std::vector<RaySet> max_cones);

  int rank() const { return rank_; }
  std::size_t ray_count() const { return rays_.size(); }
  std::size_t picard_rank() const { return rays_.size() - static_cast<std::size_t>(rank_); }
  const std::vector<Ray>& rays() const { return rays_; }
  const Ray& ray(std::size_t i) const { return rays_.at(i); }
  const IntVector& vector(std::size_t i) const { return rays_.at(i).vector; }
  const std::vector<RaySet>& max_cones() const { return max_cones_; }
  RaySet all_rays() const { return RaySet::first(rays_.size()); }

  /// Display name: the label, or "v<i>" for unnamed rays.
  std::string name(std::size_t i) const;
  std::optional<std::size_t> find_label(const std::string& label) const;
  std::optional<std::size_t> find_vector(const IntVector& v) const;
  std::string names(RaySet s) const;

  /// Copy where every unnamed ray receives its display name permanently, so
  /// names survive operations that renumber rays.
  LatticeFan labeled() const;

  /// True iff the rays in `s` lie in a common maximal cone (the zero cone
  /// included). Throws Error(index) for out-of-range indices.
  bool spans_cone(RaySet s) const;

  /// Dual basis of a unimodular max cone: column k pairs to 1 with the k-th
  /// ray (in increasing index order) of the cone and 0 with the others.
  /// nullopt when the cone is not unimodular.
  const std::optional<IntMatrix>& dual_basis(std::size_t cone) const;

  /// Generator matrix with the cone's ray vectors as rows, in index order.
  IntMatrix generator_matrix(RaySet cone) const;

  friend bool operator==(const LatticeFan& a, const LatticeFan& b);

 private:
  int rank_ = 0;
  std::vector<Ray> rays_;
  std::vector<RaySet> max_cones_;
  std::shared_ptr<const detail::FanCache> cache_;
};

struct ValidationReport {
  bool ok() const { return failures.empty(); }
  std::vector<std::string> failures;
  std::vector<std::size_t> nonprimitive_rays;
  std::vector<std::size_t> non_unimodular_cones;
  std::vector<RaySet> unpaired_walls;
  bool wrong_cone_size = false;
  bool duplicate_rays = false;
  bool duplicate_cones = false;
  bool disconnected = false;
  bool overlapping = false;
};

/// Checks ray primitivity, unimodularity of every max cone, wall pairing,
/// adjacency connectivity, and that the cones cover space exactly once.
ValidationReport validate(const LatticeFan& f);

/// Throws Error(invalid_fan) with the first failure when validation fails.
void require_valid(const LatticeFan& f);

struct Location {
  RaySet cone;                      // minimal cone containing the point
  std::vector<Integer> coefficients;  // strictly positive, aligned with cone.indices()
};

/// Minimal cone containing p and the positive coordinates of p on its rays.
Location locate(const LatticeFan& f, const IntVector& p);

/// All d-dimensional cones, sorted lexicographically.
std::vector<RaySet> faces_of_dim(const LatticeFan& f, int d);

/// Star subdivision at a cone of size >= 2. The new ray (sum of the center's
/// rays) is appended last.
LatticeFan star_subdivision(const LatticeFan& f, RaySet center, std::string new_label = {});

/// A wall: an (n-1)-cone shared by the max cones face|{left} and face|{right}.
struct Wall {
  RaySet face;
  std::size_t left = 0;
  std::size_t right = 0;
};

/// All walls, sorted by face. Requires a fan that passed validation.
std::vector<Wall> walls(const LatticeFan& f);

/// Integer relation left + right + sum_w b_w w = 0 over the wall's rays,
/// returned as a coefficient vector over all rays (the wall's curve class).
IntVector wall_relation(const LatticeFan& f, const Wall& w);

/// Decides whether a strictly convex support function exists (exact LP).
bool is_projective(const LatticeFan& f);

/// Product fan; rays of `b` follow those of `a`.
LatticeFan product(const LatticeFan& a, const LatticeFan& b);

/// Same fan with rays permuted: new ray k is old ray order[k].
LatticeFan permute_rays(const LatticeFan& f, const std::vector<std::size_t>& order);

/// Standard fans used throughout tests and examples.
LatticeFan projective_space(int n);

}  // namespace toric
