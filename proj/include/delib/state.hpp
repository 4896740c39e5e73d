#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "delib/simplex.hpp"

namespace delib {

// One agent's parsed round output: a simplex preference triple over the
// three options, an integer confidence, and exactly two concept tags.
struct PreferenceState {
  Vec3 pref{1.0 / 3, 1.0 / 3, 1.0 / 3};
  int conf = 0;
  std::array<std::string, 2> tags{};

  bool operator==(const PreferenceState&) const = default;
};

enum class ParseFailure {
  none,
  no_state_line,
  malformed_numbers,
  simplex_violation,
  tag_violation,
};

std::string_view to_string(ParseFailure f);

struct ParseOutcome {
  std::optional<PreferenceState> state;
  ParseFailure failure_kind = ParseFailure::no_state_line;
  // True only when the state was obtained through a repair round-trip.
  bool repaired = false;

  bool ok() const { return failure_kind == ParseFailure::none; }
};

struct ParseOptions {
  // Replies whose components sum to 1 +/- tol are renormalized instead of
  // rejected; wider drift is a simplex_violation.
  double renorm_tol = 0.02;
  // Stricter grammar: exactly two snake_case tags and decimal-formatted
  // preference components (a '.' required in each).
  bool strict = false;
};

// Scans `text` for STATE lines and parses the last one found. Surrounding
// argument prose is ignored; absence of any structural match is
// no_state_line, everything after a match classifies as malformed_numbers,
// simplex_violation or tag_violation.
ParseOutcome parse_state_line(std::string_view text, const ParseOptions& opts = {});

// Divides by the component sum when all components are >= 0 and
// |sum - 1| <= tol; nullopt marks a simplex violation. The accepted result
// sums to 1 within 1e-9.
std::optional<Vec3> normalize_preferences(const Vec3& raw, double tol = 0.02);

// Canonical single-line rendering with six decimal places per component.
// parse_state_line(format_state_line(s)) reproduces s up to normalization.
std::string format_state_line(const PreferenceState& state);

// Verbatim repair instruction sent after a failed parse. Pure constant.
std::string_view repair_prompt();

}  // namespace delib
