#pragma once

// JSON serialisation of certificates and transformation logs. Exact values are
// strings ("5/2"); the documents never contain floating-point numbers.

#include <string>
#include <string_view>

#include "toric/certificate.hpp"
#include "toric/pipeline.hpp"

namespace toric {

inline constexpr int kCertVersion = 1;

/// Pretty-printed document with "cert_version", the base term, the
/// corrections and the verdict computed by check_certificate (or "invalid").
std::string certificate_to_json(const Certificate& c);

/// Throws Error(invalid_certificate) for a malformed document, an unknown
/// version or a coefficient that is not a half-integer. The stored verdict is
/// ignored; callers re-check.
Certificate certificate_from_json(std::string_view text);

std::string log_to_json(const TransformLog& log);

/// Throws Error(malformed_log).
TransformLog log_from_json(std::string_view text);

}  // namespace toric
