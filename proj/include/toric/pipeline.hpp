#pragma once

// Birational reduction of a toric Fano manifold with minimal P-dimension 2 to
// a manifold Y on which the fixed centered relation x0 + x1 + x2 = 0 has no
// relevant primitive collections: blowdowns of x_i + a = b relations followed
// by simultaneous flips of x_i + x_j + a = b + c relations.
//
// Rays are tracked by label throughout, since blowdowns renumber them; the
// input fan is labeled first with LatticeFan::labeled().

#include <optional>
#include <string>
#include <vector>

#include "toric/birational.hpp"
#include "toric/fan.hpp"
#include "toric/primitive.hpp"

namespace toric {

enum class StepKind { blowdown, exceptional_pair, flip };

std::string_view to_string(StepKind k);

/// A relation recorded by ray labels, independent of ray numbering.
struct LabeledRelation {
  std::vector<std::string> lhs;
  std::vector<std::pair<std::string, Integer>> rhs;  // empty when centered
  std::string text;                                  // formatted, e.g. "x1 + a = b"

  friend bool operator==(const LabeledRelation&, const LabeledRelation&) = default;
};

LabeledRelation label_relation(const LatticeFan& f, const PrimitiveRelation& r);

/// Finds the relation on `f` whose collection has the given labels.
/// Throws Error(malformed_log) when it is not a primitive collection.
PrimitiveRelation resolve_relation(const LatticeFan& f, const LabeledRelation& r);

struct TransformStep {
  StepKind kind = StepKind::blowdown;
  /// One relation, or two for an exceptional pair (in contraction order).
  std::vector<LabeledRelation> relations;
  /// Positions in the centered labeling of the x rays involved: blowdown {i},
  /// exceptional pair {i, j} for (x_i + a = b, then x_j + c = a), flip {i, j}.
  std::vector<std::size_t> x_positions;
  std::vector<std::string> removed_rays;
  /// The ray a (c for an exceptional pair) whose intersection count with the
  /// test curve parametrises this step's correction.
  std::string parameter_ray;
};

struct TransformLog {
  std::string input_id;
  std::vector<std::string> centered;  // labels x0, x1, x2 by position
  std::vector<TransformStep> steps;
};

struct ExceptionalDecomposition {
  /// For m = 2: relations x_i + c = a, x_j + a = b, x_k + b = c. For m = 3:
  /// the matched relations of the pattern, in pattern order.
  std::vector<PrimitiveRelation> relations;
  int pattern = 0;  // 1 or 2 for m = 3, 0 for m = 2
};

/// Throws Error(unsupported) unless |centered| is 3 or 4.
std::optional<ExceptionalDecomposition> detect_exceptional(const LatticeFan& f, RaySet centered);

struct VerificationReport {
  bool centered_primitive = false;
  bool pairs_with_external_rays = false;  // <x_i, x_j, a> cones for all pairs and external a
  bool no_relevant = false;
  bool rays_preserved = true;
  std::optional<int> bundle_codim;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks on the output: the centered collection is still primitive, every
/// <x_i, x_j, a> is a cone, no relevant collections remain, and the bundle
/// locus has codimension >= 2. When `before_flips` is given, also checks that
/// Y has the same rays.
VerificationReport verify_output(const LatticeFan& y, RaySet centered, const LatticeFan* before_flips = nullptr);

struct PipelineOptions {
  /// Exceptional case: position i of the x ray whose relation x_i + a = b is
  /// contracted first. Default: the relation whose external ray has the
  /// smallest index.
  std::optional<std::size_t> exceptional_first;
  std::string input_id;
};

struct PipelineResult {
  LatticeFan output;
  TransformLog log;
  VerificationReport verification;
  LatticeFan after_blowdowns;         // X'
  std::vector<LatticeFan> stages;     // fan after each blowdown, then Y
  bool output_projective = false;
};

/// Errors: non_fano, wrong_minimal_dimension, precondition (dimension <= 2 or
/// bad centered collection), not_contractible, unexpected_relation,
/// verification.
PipelineResult run_step1(const LatticeFan& f, RaySet centered, const PipelineOptions& options = {});

/// Re-applies a log to the (labeled) input fan.
LatticeFan replay(const LatticeFan& f, const TransformLog& log);

struct M3Entry {
  RelevantRelation relevant;
  std::string text;
  bool contractible = false;
  bool singular = false;  // some right-hand coefficient exceeds 1
};

struct M3Report {
  std::vector<M3Entry> relevant;
  std::vector<PrimitiveRelation> auxiliary;  // contractible z-relations hitting relevant collections
  std::optional<ExceptionalDecomposition> exceptional;
};

/// Classification of relevant relations for |centered| = 4; no surgery.
/// Throws Error(unsupported) for other sizes.
M3Report diagnose_m3(const LatticeFan& f, RaySet centered);

}  // namespace toric
