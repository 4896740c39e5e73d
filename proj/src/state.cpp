#include "delib/state.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <regex>

#include "delib/prompts.hpp"

namespace delib {

std::string_view to_string(ParseFailure f) {
  switch (f) {
    case ParseFailure::none: return "none";
    case ParseFailure::no_state_line: return "no_state_line";
    case ParseFailure::malformed_numbers: return "malformed_numbers";
    case ParseFailure::simplex_violation: return "simplex_violation";
    case ParseFailure::tag_violation: return "tag_violation";
  }
  return "unknown";
}

namespace {

// Structural skeleton of a STATE line. The numeric groups are deliberately
// looser than the canonical grammar (signs, stray dots, decimal conf all
// match) so that a structurally present line with bad numbers classifies as
// malformed_numbers rather than no_state_line.
const std::regex& state_line_regex() {
  static const std::regex re(
      R"(STATE:\s*pref=\[([0-9+\-.eE, ]*)\];\s*conf=([0-9+\-.eE]*);\s*tags=\[([^\]]*)\])");
  return re;
}

std::optional<double> parse_decimal(std::string_view token) {
  // trim surrounding spaces
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool is_snake_case(std::string_view tag) {
  if (tag.empty()) return false;
  for (unsigned char c : tag)
    if (!(std::islower(c) || std::isdigit(c) || c == '_')) return false;
  return true;
}

// Splits `body` (the text between the tag brackets) into quoted strings.
// Returns false on any structural problem: unquoted tokens, unterminated
// quotes, or garbage between entries.
bool split_tags(std::string_view body, std::vector<std::string>& out) {
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < body.size() && body[i] == ' ') ++i; };
  skip_ws();
  if (i == body.size()) return true;  // zero tags, count checked by caller
  while (true) {
    if (i >= body.size() || body[i] != '"') return false;
    ++i;
    std::size_t start = i;
    while (i < body.size() && body[i] != '"') ++i;
    if (i >= body.size()) return false;
    out.emplace_back(body.substr(start, i - start));
    ++i;
    skip_ws();
    if (i == body.size()) return true;
    if (body[i] != ',') return false;
    ++i;
    skip_ws();
  }
}

ParseOutcome fail(ParseFailure kind) {
  ParseOutcome out;
  out.failure_kind = kind;
  return out;
}

}  // namespace

ParseOutcome parse_state_line(std::string_view text, const ParseOptions& opts) {
  std::cmatch match;
  std::cmatch last;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  bool found = false;
  // Agents sometimes echo the template before committing; the last
  // occurrence is the freshest state.
  while (std::regex_search(begin, end, match, state_line_regex())) {
    last = match;
    found = true;
    begin = match[0].second;
  }
  if (!found) return fail(ParseFailure::no_state_line);

  std::string pref_group = last[1].str();
  std::string conf_group = last[2].str();
  std::string tags_group = last[3].str();

  // preferences: exactly three comma-separated decimals
  std::vector<double> prefs;
  std::size_t pos = 0;
  while (pos <= pref_group.size()) {
    std::size_t comma = pref_group.find(',', pos);
    std::string_view token(pref_group.data() + pos,
                           (comma == std::string::npos ? pref_group.size() : comma) - pos);
    auto value = parse_decimal(token);
    if (!value) return fail(ParseFailure::malformed_numbers);
    if (opts.strict && token.find('.') == std::string_view::npos)
      return fail(ParseFailure::malformed_numbers);
    prefs.push_back(*value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (prefs.size() != 3) return fail(ParseFailure::malformed_numbers);

  // conf: integer 0..100, out-of-range rejected rather than clamped
  int conf = 0;
  {
    std::string_view token = conf_group;
    if (token.empty()) return fail(ParseFailure::malformed_numbers);
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), conf);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      return fail(ParseFailure::malformed_numbers);
    if (conf < 0 || conf > 100) return fail(ParseFailure::malformed_numbers);
  }

  auto normalized = normalize_preferences(Vec3(prefs[0], prefs[1], prefs[2]), opts.renorm_tol);
  if (!normalized) return fail(ParseFailure::simplex_violation);

  std::vector<std::string> tags;
  if (!split_tags(tags_group, tags)) return fail(ParseFailure::tag_violation);
  if (tags.size() != 2 || tags[0].empty() || tags[1].empty())
    return fail(ParseFailure::tag_violation);
  if (opts.strict && (!is_snake_case(tags[0]) || !is_snake_case(tags[1])))
    return fail(ParseFailure::tag_violation);

  ParseOutcome out;
  out.failure_kind = ParseFailure::none;
  out.state = PreferenceState{*normalized, conf, {tags[0], tags[1]}};
  return out;
}

std::optional<Vec3> normalize_preferences(const Vec3& raw, double tol) {
  if (raw.minCoeff() < 0.0) return std::nullopt;
  double sum = raw.sum();
  if (std::abs(sum - 1.0) > tol) return std::nullopt;
  return Vec3(raw / sum);
}

std::string format_state_line(const PreferenceState& state) {
  char head[96];
  std::snprintf(head, sizeof(head), "STATE: pref=[%.6f,%.6f,%.6f]; conf=%d; tags=[",
                state.pref[0], state.pref[1], state.pref[2], state.conf);
  std::string line(head);
  line += '"';
  line += state.tags[0];
  line += "\",\"";
  line += state.tags[1];
  line += "\"]";
  return line;
}

std::string_view repair_prompt() { return prompts::kRepair; }

}  // namespace delib
