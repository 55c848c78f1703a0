#pragma once

// Symbolic upper bound for ch_2(X) . S^0 on the surface swept by the test curve
// through the fibres of the centered relation:
//
//   ch_2(X) . S^0 = base(a_0, ..., a_m) - sum_l c_l * m_l,
//
// where a_0 <= ... <= a_m are the splitting degrees of the bundle on the test
// curve C and m_l >= 0 counts the points of C on the divisor attached to step l.
// Half-integers are stored scaled by 2.

#include <cstddef>
#include <string>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/pipeline.hpp"

namespace toric {

struct Correction {
  std::size_t step = 0;
  StepKind kind = StepKind::blowdown;
  int twice_coefficient = 0;
  std::string parameter;      // symbol m_l, e.g. "m1"
  std::string parameter_ray;  // ray whose divisor C meets m_l times
  std::string rule;           // which case of the step's correction table applied
};

struct Certificate {
  std::string input_id;
  int fiber_dim = 2;
  std::vector<std::string> centered;  // labels by position
  std::size_t cut_out = 2;            // position of the centered ray S cuts out
  std::vector<int> twice_base;        // coefficients of a_0..a_m, scaled by 2
  std::vector<Correction> corrections;
};

/// Allowed correction coefficients, scaled by 2: 0, 1/2, 1, 3/2, 5/2.
bool allowed_twice_coefficient(int twice);

/// Base term for a P^m-bundle: (m-1)/2 (a_0 + a_1) - (a_2 + ... + a_m).
std::vector<int> twice_base_term(int m);

/// One correction per log step. Errors: unsupported (fiber_dim != 2),
/// malformed_log (step shapes or order outside blowdowns-then-flips, or an
/// exceptional pair mixed with blowdowns), precondition (cut_out > 2).
Certificate build_certificate(const TransformLog& log, int fiber_dim, std::size_t cut_out = 2);

enum class Verdict { proven, not_proven };

std::string_view to_string(Verdict v);

/// Proven iff every correction is nonnegative and base <= 0 for every
/// ascending a: the coefficients sum to 0 and every tail sum from index 1 on
/// is <= 0 (Abel summation against the nonnegative gaps a_j - a_{j-1}).
/// Throws Error(invalid_certificate) for a coefficient outside the allowed set
/// or a base of the wrong length.
Verdict check_certificate(const Certificate& c);

/// base(a) - sum c_l ms_l. Throws Error(precondition) for a of the wrong
/// length or not ascending, ms of the wrong length or with negative entries.
Rational evaluate_certificate(const Certificate& c, const std::vector<Integer>& a, const std::vector<Integer>& ms);

/// "p/2" in lowest terms: 3 -> "3/2", 2 -> "1", -1 -> "-1/2".
std::string format_half(int twice);

/// Inverse of format_half; also accepts "0/2"-style unreduced halves. Throws
/// Error(invalid_certificate) when the value is not a half-integer.
int parse_half(const std::string& s);

}  // namespace toric
