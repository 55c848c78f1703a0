#include "toric/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "toric/error.hpp"

namespace toric {

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::blowdown: return "blowdown";
    case StepKind::exceptional_pair: return "exceptional_pair";
    case StepKind::flip: return "flip";
  }
  return "unknown";
}

LabeledRelation label_relation(const LatticeFan& f, const PrimitiveRelation& r) {
  LabeledRelation out;
  r.collection.for_each([&](std::size_t v) { out.lhs.push_back(f.name(v)); });
  const auto idx = r.focus.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) out.rhs.emplace_back(f.name(idx[j]), r.coefficients[j]);
  out.text = format_relation(f, r);
  return out;
}

namespace {

std::size_t ray_by_label(const LatticeFan& f, const std::string& label) {
  const auto i = f.find_label(label);
  if (!i) throw Error(ErrorKind::malformed_log, "no ray labelled '" + label + "'");
  return *i;
}

RaySet rays_by_label(const LatticeFan& f, const std::vector<std::string>& labels) {
  RaySet s;
  for (const auto& l : labels) s.insert(ray_by_label(f, l));
  return s;
}

std::vector<std::string> labels_of(const LatticeFan& f, RaySet s) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t v) { out.push_back(f.name(v)); });
  return out;
}

bool single_unit_focus(const PrimitiveRelation& r) { return r.focus.size() == 1 && r.coefficients.front() == 1; }

// Opponent pairs {u, v} by label.
std::set<std::pair<std::string, std::string>> opponent_pairs(const LatticeFan& f) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto p : primitive_collections(f))
    if (p.size() == 2) {
      auto a = f.name(p.front()), b = f.name(p.back());
      if (b < a) std::swap(a, b);
      out.emplace(a, b);
    }
  return out;
}

std::vector<LabeledRelation> labeled_relevant(const LatticeFan& f, RaySet centered) {
  std::vector<LabeledRelation> out;
  for (const auto& rr : relevant_collections(f, centered)) out.push_back(label_relation(f, rr.relation));
  return out;
}

}  // namespace

PrimitiveRelation resolve_relation(const LatticeFan& f, const LabeledRelation& r) {
  const RaySet c = rays_by_label(f, r.lhs);
  PrimitiveRelation pr;
  try {
    pr = primitive_relation(f, c);
  } catch (const Error&) {
    throw Error(ErrorKind::malformed_log, "{" + r.text + "} is not a primitive relation here");
  }
  if (!r.rhs.empty() || !r.text.empty()) {
    const auto here = label_relation(f, pr);
    if (here.rhs != r.rhs) throw Error(ErrorKind::malformed_log, "relation changed: expected " + r.text + ", found " + here.text);
  }
  return pr;
}

std::optional<ExceptionalDecomposition> detect_exceptional(const LatticeFan& f, RaySet centered) {
  const int m = static_cast<int>(centered.size()) - 1;
  if (m != 2 && m != 3) throw Error(ErrorKind::unsupported, "exceptional patterns are known only for m = 2 and m = 3");
  // Links x-part + a = z with a single unit focus; the cycle follows
  // focus(R_k) = external ray of R_{k+1}.
  std::vector<RelevantRelation> links;
  for (auto& rr : relevant_collections(f, centered))
    if (single_unit_focus(rr.relation) && !centered.contains(rr.relation.focus.front())) links.push_back(rr);

  std::vector<std::size_t> path;
  std::optional<ExceptionalDecomposition> found;
  std::function<void(RaySet)> extend = [&](RaySet covered) {
    if (found) return;
    const auto& last = links[path.back()];
    const std::size_t z = last.relation.focus.front();
    for (std::size_t k = 0; k < links.size() && !found; ++k) {
      if (links[k].a != z || links[k].x_part.intersects(covered)) continue;
      const RaySet now = covered | links[k].x_part;
      if (now == centered) {
        // Close the cycle: the last focus must be the first external ray.
        if (links[k].relation.focus.front() != links[path.front()].a) continue;
        path.push_back(k);
        std::vector<std::size_t> sizes;
        for (auto p : path) sizes.push_back(links[p].x_part.size());
        std::sort(sizes.begin(), sizes.end());
        int pattern = -1;
        if (m == 2 && sizes == std::vector<std::size_t>{1, 1, 1}) pattern = 0;
        if (m == 3 && sizes == std::vector<std::size_t>{1, 1, 1, 1}) pattern = 1;
        if (m == 3 && sizes == std::vector<std::size_t>{1, 1, 2}) pattern = 2;
        if (pattern >= 0) {
          ExceptionalDecomposition d;
          d.pattern = pattern;
          for (auto p : path) d.relations.push_back(links[p].relation);
          found = std::move(d);
        }
        path.pop_back();
        continue;
      }
      path.push_back(k);
      extend(now);
      path.pop_back();
    }
  };
  // Start from the relation through the lowest-index x ray, so the output
  // reads x_0 + c = a, x_1 + a = b, ... for the standard labeling.
  for (std::size_t k = 0; k < links.size() && !found; ++k) {
    if (!links[k].x_part.contains(centered.front())) continue;
    path = {k};
    extend(links[k].x_part);
  }
  return found;
}

VerificationReport verify_output(const LatticeFan& y, RaySet centered, const LatticeFan* before_flips) {
  VerificationReport rep;
  const auto pcs = primitive_collections(y);
  rep.centered_primitive = std::find(pcs.begin(), pcs.end(), centered) != pcs.end();
  if (!rep.centered_primitive) rep.failures.push_back("centered collection " + y.names(centered) + " is no longer primitive");

  rep.pairs_with_external_rays = true;
  const auto xs = centered.indices();
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      for (std::size_t a = 0; a < y.ray_count(); ++a) {
        if (centered.contains(a)) continue;
        if (!y.spans_cone({xs[i], xs[j], a})) {
          if (rep.pairs_with_external_rays)
            rep.failures.push_back("<" + y.name(xs[i]) + ", " + y.name(xs[j]) + ", " + y.name(a) + "> is not a cone");
          rep.pairs_with_external_rays = false;
        }
      }

  if (rep.centered_primitive) {
    const auto rel = relevant_collections(y, centered);
    rep.no_relevant = rel.empty();
    if (!rep.no_relevant) rep.failures.push_back("relevant relation remains: " + format_relation(y, rel.front().relation));
    rep.bundle_codim = bundle_locus(y, centered).codim;
    if (rep.bundle_codim && *rep.bundle_codim < 2)
      rep.failures.push_back("bundle locus has codimension " + std::to_string(*rep.bundle_codim));
  }

  if (before_flips) {
    rep.rays_preserved = before_flips->ray_count() == y.ray_count();
    for (std::size_t i = 0; rep.rays_preserved && i < y.ray_count(); ++i)
      rep.rays_preserved = before_flips->vector(i) == y.vector(i) && before_flips->name(i) == y.name(i);
    if (!rep.rays_preserved) rep.failures.push_back("flips changed the ray set");
  }
  return rep;
}

namespace {

struct Driver {
  std::vector<std::string> x_labels;
  TransformLog log;
  std::vector<LatticeFan> stages;

  RaySet centered_in(const LatticeFan& f) const { return rays_by_label(f, x_labels); }

  std::size_t position(const LatticeFan& f, std::size_t ray) const {
    const auto it = std::find(x_labels.begin(), x_labels.end(), f.name(ray));
    return static_cast<std::size_t>(it - x_labels.begin());
  }

  std::vector<std::size_t> positions(const LatticeFan& f, RaySet xs) const {
    std::vector<std::size_t> out;
    xs.for_each([&](std::size_t v) { out.push_back(position(f, v)); });
    std::sort(out.begin(), out.end());
    return out;
  }

  LatticeFan blow_down(const LatticeFan& f, const PrimitiveRelation& r) const {
    if (!is_contractible(f, r))
      throw Error(ErrorKind::not_contractible, format_relation(f, r) + " is not contractible");
    return contract(f, r);
  }

  // Checks that survive every blowdown: the centered collection stays
  // primitive and no new opponent pairs appear.
  void check_blowdown(const LatticeFan& before, const LatticeFan& after) const {
    const RaySet c = centered_in(after);
    const auto pcs = primitive_collections(after);
    if (std::find(pcs.begin(), pcs.end(), c) == pcs.end())
      throw Error(ErrorKind::verification, "centered collection lost after a blowdown");
    const auto old_pairs = opponent_pairs(before);
    for (const auto& p : opponent_pairs(after))
      if (!old_pairs.contains(p))
        throw Error(ErrorKind::verification, "new opponents " + p.first + ", " + p.second + " after a blowdown");
  }

  // Relevant relations after a blowdown were already relevant, unchanged.
  void check_stability(const LatticeFan& before, const LatticeFan& after) const {
    const auto old_rel = labeled_relevant(before, centered_in(before));
    for (const auto& r : labeled_relevant(after, centered_in(after)))
      if (std::find(old_rel.begin(), old_rel.end(), r) == old_rel.end())
        throw Error(ErrorKind::unexpected_relation, "new relevant relation " + r.text + " after a blowdown");
  }
};

}  // namespace

PipelineResult run_step1(const LatticeFan& input, RaySet centered, const PipelineOptions& options) {
  require_valid(input);
  if (input.rank() <= 2) throw Error(ErrorKind::precondition, "dimension must exceed 2");
  if (!is_fano(input)) throw Error(ErrorKind::non_fano, "input fan is not Fano");
  const auto m = minimal_p_dimension(input);
  if (!m || *m != 2) throw Error(ErrorKind::wrong_minimal_dimension, "minimal P-dimension is not 2");
  if (centered.size() != 3 || !primitive_relation(input, centered).centered())
    throw Error(ErrorKind::precondition, input.names(centered) + " is not a centered collection of order 3");

  const LatticeFan f = input.labeled();
  Driver d;
  d.x_labels = labels_of(f, centered);
  d.log.centered = d.x_labels;
  d.log.input_id = options.input_id;
  LatticeFan cur = f;

  if (const auto exc = detect_exceptional(cur, centered)) {
    // exc->relations: x_0 + c = a, x_1 + a = b, x_2 + b = c (cyclic).
    const auto& rels = exc->relations;
    std::size_t first = 0;
    if (options.exceptional_first) {
      bool hit = false;
      for (std::size_t k = 0; k < rels.size(); ++k)
        if (d.positions(cur, rels[k].collection & centered).front() == *options.exceptional_first) {
          first = k;
          hit = true;
        }
      if (!hit) throw Error(ErrorKind::precondition, "no exceptional relation through that x ray");
    } else {
      for (std::size_t k = 1; k < rels.size(); ++k)
        if ((rels[k].collection - centered).front() < (rels[first].collection - centered).front()) first = k;
    }
    const auto& r1 = rels[first];
    const std::size_t a = (r1.collection - centered).front();
    std::size_t second = rels.size();
    for (std::size_t k = 0; k < rels.size(); ++k)
      if (rels[k].focus.front() == a) second = k;

    TransformStep step;
    step.kind = StepKind::exceptional_pair;
    step.relations.push_back(label_relation(cur, r1));
    step.x_positions.push_back(d.positions(cur, r1.collection & centered).front());
    step.removed_rays.push_back(cur.name(r1.focus.front()));
    const std::string a_label = cur.name(a);
    const LatticeFan mid = d.blow_down(cur, r1);
    d.check_blowdown(cur, mid);
    d.stages.push_back(mid);

    const auto r2 = resolve_relation(mid, label_relation(cur, rels[second]));
    step.relations.push_back(label_relation(mid, r2));
    step.x_positions.push_back(d.positions(mid, r2.collection & d.centered_in(mid)).front());
    step.removed_rays.push_back(a_label);
    step.parameter_ray = mid.name((r2.collection - d.centered_in(mid)).front());
    const LatticeFan out = d.blow_down(mid, r2);
    d.check_blowdown(mid, out);
    d.stages.push_back(out);
    d.log.steps.push_back(std::move(step));
    cur = out;
  } else {
    while (true) {
      const RaySet c = d.centered_in(cur);
      std::optional<RelevantRelation> next;
      for (const auto& rr : relevant_collections(cur, c))
        if (rr.type == 1 && (!next || rr.a < next->a)) next = rr;
      if (!next) break;
      TransformStep step;
      step.kind = StepKind::blowdown;
      step.relations.push_back(label_relation(cur, next->relation));
      step.x_positions = d.positions(cur, next->x_part);
      step.removed_rays.push_back(cur.name(next->relation.focus.front()));
      step.parameter_ray = cur.name(next->a);
      const LatticeFan out = d.blow_down(cur, next->relation);
      d.check_blowdown(cur, out);
      d.check_stability(cur, out);
      d.stages.push_back(out);
      d.log.steps.push_back(std::move(step));
      cur = out;
    }
  }

  PipelineResult result;
  result.after_blowdowns = cur;
  RaySet c = d.centered_in(cur);
  std::vector<PrimitiveRelation> flips;
  for (const auto& rr : relevant_collections(cur, c)) {
    if (rr.type != 2)
      throw Error(ErrorKind::unexpected_relation,
                  "relevant relation " + format_relation(cur, rr.relation) + " is not of the form x + x + a = b + c");
    if (!is_contractible(cur, rr.relation))
      throw Error(ErrorKind::not_contractible, format_relation(cur, rr.relation) + " is not contractible");
    flips.push_back(rr.relation);
    TransformStep step;
    step.kind = StepKind::flip;
    step.relations.push_back(label_relation(cur, rr.relation));
    step.x_positions = d.positions(cur, rr.x_part);
    step.parameter_ray = cur.name(rr.a);
    d.log.steps.push_back(std::move(step));
  }
  LatticeFan y = flips.empty() ? cur : multi_flip(cur, flips);
  if (!flips.empty()) d.stages.push_back(y);

  result.verification = verify_output(y, d.centered_in(y), &cur);
  if (!result.verification.ok())
    throw Error(ErrorKind::verification, result.verification.failures.front());
  result.output_projective = is_projective(y);
  result.output = std::move(y);
  result.log = std::move(d.log);
  result.stages = std::move(d.stages);
  return result;
}

LatticeFan replay(const LatticeFan& input, const TransformLog& log) {
  LatticeFan cur = input.labeled();
  for (const auto& step : log.steps) {
    switch (step.kind) {
      case StepKind::blowdown:
        if (step.relations.size() != 1) throw Error(ErrorKind::malformed_log, "blowdown step needs one relation");
        cur = contract(cur, resolve_relation(cur, step.relations[0]));
        break;
      case StepKind::exceptional_pair:
        if (step.relations.size() != 2) throw Error(ErrorKind::malformed_log, "exceptional step needs two relations");
        cur = contract(cur, resolve_relation(cur, step.relations[0]));
        cur = contract(cur, resolve_relation(cur, step.relations[1]));
        break;
      case StepKind::flip:
        if (step.relations.size() != 1) throw Error(ErrorKind::malformed_log, "flip step needs one relation");
        cur = flip(cur, resolve_relation(cur, step.relations[0]));
        break;
    }
  }
  return cur;
}

M3Report diagnose_m3(const LatticeFan& f, RaySet centered) {
  if (centered.size() != 4) throw Error(ErrorKind::unsupported, "diagnostics need a centered collection of order 4");
  M3Report rep;
  const auto relevant = relevant_collections(f, centered);
  RaySet relevant_rays;
  for (const auto& rr : relevant) {
    M3Entry e;
    e.relevant = rr;
    e.text = format_relation(f, rr.relation);
    e.contractible = is_contractible(f, rr.relation);
    e.singular = std::any_of(rr.relation.coefficients.begin(), rr.relation.coefficients.end(),
                             [](const Integer& c) { return c > 1; });
    relevant_rays = relevant_rays | rr.relation.collection;
    rep.relevant.push_back(std::move(e));
  }
  for (const auto& r : primitive_relations(f)) {
    const bool is_relevant = std::any_of(relevant.begin(), relevant.end(),
                                         [&](const RelevantRelation& rr) { return rr.relation.collection == r.collection; });
    if (is_relevant || r.centered() || !single_unit_focus(r)) continue;
    if (!relevant_rays.contains(r.focus.front())) continue;
    if (is_contractible(f, r)) rep.auxiliary.push_back(r);
  }
  rep.exceptional = detect_exceptional(f, centered);
  return rep;
}

}  // namespace toric
