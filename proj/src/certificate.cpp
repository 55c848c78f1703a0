#include "toric/certificate.hpp"

#include <algorithm>

#include "toric/error.hpp"

namespace toric {

bool allowed_twice_coefficient(int twice) {
  return twice == 0 || twice == 1 || twice == 2 || twice == 3 || twice == 5;
}

std::vector<int> twice_base_term(int m) {
  if (m < 1) throw Error(ErrorKind::precondition, "fiber dimension must be positive");
  std::vector<int> out(static_cast<std::size_t>(m) + 1, -2);
  out[0] = out[1] = m - 1;
  return out;
}

std::string_view to_string(Verdict v) { return v == Verdict::proven ? "proven" : "not_proven"; }

namespace {

void require_log_shape(const TransformLog& log) {
  if (log.centered.size() != 3)
    throw Error(ErrorKind::malformed_log, "expected 3 centered rays, got " + std::to_string(log.centered.size()));
  bool seen_flip = false, seen_blowdown = false, seen_pair = false;
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    const auto& s = log.steps[k];
    const std::string where = "step " + std::to_string(k) + ": ";
    const std::size_t want_x = s.kind == StepKind::blowdown ? 1 : 2;
    const std::size_t want_rel = s.kind == StepKind::exceptional_pair ? 2 : 1;
    if (s.x_positions.size() != want_x)
      throw Error(ErrorKind::malformed_log, where + "expected " + std::to_string(want_x) + " x positions");
    if (s.relations.size() != want_rel)
      throw Error(ErrorKind::malformed_log, where + "expected " + std::to_string(want_rel) + " relations");
    for (auto p : s.x_positions)
      if (p > 2) throw Error(ErrorKind::malformed_log, where + "x position out of range");
    if (want_x == 2 && s.x_positions[0] == s.x_positions[1])
      throw Error(ErrorKind::malformed_log, where + "repeated x position");
    if (s.parameter_ray.empty()) throw Error(ErrorKind::malformed_log, where + "missing parameter ray");
    switch (s.kind) {
      case StepKind::blowdown:
        if (seen_flip || seen_pair) throw Error(ErrorKind::malformed_log, where + "blowdown out of order");
        seen_blowdown = true;
        break;
      case StepKind::exceptional_pair:
        if (seen_flip || seen_pair || seen_blowdown)
          throw Error(ErrorKind::malformed_log, where + "exceptional pair must be the only contraction");
        seen_pair = true;
        break;
      case StepKind::flip:
        seen_flip = true;
        break;
    }
  }
}

Correction correction_for(const TransformStep& s, std::size_t cut_out) {
  Correction c;
  c.kind = s.kind;
  c.parameter_ray = s.parameter_ray;
  switch (s.kind) {
    case StepKind::blowdown:
      if (s.x_positions[0] == cut_out) {
        c.twice_coefficient = 2;
        c.rule = "blowdown:cut-out";
      } else {
        c.twice_coefficient = 3;
        c.rule = "blowdown:other";
      }
      break;
    case StepKind::exceptional_pair:
      // x_i + a = b contracted first, then x_j + c = a.
      if (s.x_positions[1] == cut_out) {
        c.twice_coefficient = 5;
        c.rule = "exceptional:second-cut-out";
      } else if (s.x_positions[0] == cut_out) {
        c.twice_coefficient = 1;
        c.rule = "exceptional:first-cut-out";
      } else {
        c.twice_coefficient = 3;
        c.rule = "exceptional:neither-cut-out";
      }
      break;
    case StepKind::flip:
      if (s.x_positions[0] == cut_out || s.x_positions[1] == cut_out) {
        c.twice_coefficient = 5;
        c.rule = "flip:cut-out";
      } else {
        c.twice_coefficient = 0;
        c.rule = "flip:disjoint";
      }
      break;
  }
  return c;
}

}  // namespace

Certificate build_certificate(const TransformLog& log, int fiber_dim, std::size_t cut_out) {
  if (fiber_dim != 2)
    throw Error(ErrorKind::unsupported, "certificates exist only for fiber dimension 2, got " + std::to_string(fiber_dim));
  if (cut_out > 2) throw Error(ErrorKind::precondition, "cut-out position must be 0, 1 or 2");
  require_log_shape(log);
  Certificate c;
  c.input_id = log.input_id;
  c.fiber_dim = fiber_dim;
  c.centered = log.centered;
  c.cut_out = cut_out;
  c.twice_base = twice_base_term(fiber_dim);
  for (std::size_t k = 0; k < log.steps.size(); ++k) {
    auto corr = correction_for(log.steps[k], cut_out);
    corr.step = k;
    corr.parameter = "m" + std::to_string(k + 1);
    c.corrections.push_back(std::move(corr));
  }
  return c;
}

Verdict check_certificate(const Certificate& c) {
  if (c.fiber_dim < 1) throw Error(ErrorKind::invalid_certificate, "fiber dimension must be positive");
  if (c.twice_base.size() != static_cast<std::size_t>(c.fiber_dim) + 1)
    throw Error(ErrorKind::invalid_certificate, "base term needs " + std::to_string(c.fiber_dim + 1) + " coefficients");
  for (const auto& corr : c.corrections)
    if (!allowed_twice_coefficient(corr.twice_coefficient))
      throw Error(ErrorKind::invalid_certificate,
                  "coefficient " + format_half(corr.twice_coefficient) + " of " + corr.parameter + " is not allowed");
  long tail = 0;
  for (std::size_t j = c.twice_base.size(); j-- > 1;) {
    tail += c.twice_base[j];
    if (tail > 0) return Verdict::not_proven;
  }
  if (tail + c.twice_base[0] != 0) return Verdict::not_proven;
  return Verdict::proven;
}

Rational evaluate_certificate(const Certificate& c, const std::vector<Integer>& a, const std::vector<Integer>& ms) {
  if (a.size() != c.twice_base.size())
    throw Error(ErrorKind::precondition, "expected " + std::to_string(c.twice_base.size()) + " degrees");
  if (!std::is_sorted(a.begin(), a.end())) throw Error(ErrorKind::precondition, "degrees must be ascending");
  if (ms.size() != c.corrections.size())
    throw Error(ErrorKind::precondition, "expected " + std::to_string(c.corrections.size()) + " parameters");
  Integer twice = 0;
  for (std::size_t i = 0; i < a.size(); ++i) twice += c.twice_base[i] * a[i];
  for (std::size_t l = 0; l < ms.size(); ++l) {
    if (sgn(ms[l]) < 0) throw Error(ErrorKind::precondition, "parameters must be nonnegative");
    twice -= c.corrections[l].twice_coefficient * ms[l];
  }
  Rational r(twice, 2);
  r.canonicalize();
  return r;
}

std::string format_half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

int parse_half(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw Error(ErrorKind::invalid_certificate, "bad rational '" + s + "'");
  if (sgn(q.get_den()) == 0) throw Error(ErrorKind::invalid_certificate, "zero denominator in '" + s + "'");
  q.canonicalize();
  if (q.get_den() != 1 && q.get_den() != 2)
    throw Error(ErrorKind::invalid_certificate, "'" + s + "' is not a half-integer");
  const Integer twice = q.get_num() * (2 / q.get_den());
  if (!twice.fits_sint_p()) throw Error(ErrorKind::invalid_certificate, "'" + s + "' out of range");
  return static_cast<int>(twice.get_si());
}

}  // namespace toric
