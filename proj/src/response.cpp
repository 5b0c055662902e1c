#include "trajrl/response.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace trajrl {

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

struct Scanner {
  std::string_view text;
  std::size_t pos = 0;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool consume(std::string_view token) {
    if (text.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }
};

ParseResult fail(ParseErrorCode code, std::size_t offset, std::string message, int tuple_index = -1) {
  ParseResult r;
  r.error = {code, tuple_index, offset, std::move(message)};
  return r;
}

// number = ["+"|"-"] ( digits ["." {digit}] | "." digits )
bool scan_number(Scanner& s, double& out) {
  const std::size_t start = s.pos;
  std::size_t p = s.pos;
  if (p < s.text.size() && (s.text[p] == '+' || s.text[p] == '-')) ++p;
  std::size_t digits = 0;
  while (p < s.text.size() && std::isdigit(static_cast<unsigned char>(s.text[p]))) {
    ++p;
    ++digits;
  }
  if (p < s.text.size() && s.text[p] == '.') {
    ++p;
    while (p < s.text.size() && std::isdigit(static_cast<unsigned char>(s.text[p]))) {
      ++p;
      ++digits;
    }
  }
  if (digits == 0) return false;

  // Normalize the token so std::from_chars(fixed) accepts it everywhere:
  // no leading '+', no bare leading or trailing '.'.
  std::string token(s.text.substr(start, p - start));
  if (!token.empty() && token.front() == '+') token.erase(token.begin());
  const std::size_t dot_at = token.find('.');
  if (dot_at == 0 || (dot_at == 1 && token.front() == '-')) token.insert(dot_at, "0");
  if (!token.empty() && token.back() == '.') token.push_back('0');

  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value,
                                   std::chars_format::fixed);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || !std::isfinite(value)) {
    return false;
  }
  out = value;
  s.pos = p;
  return true;
}

bool scan_tuple(Scanner& s, Vec2& out) {
  if (s.eof() || s.peek() != '(') return false;
  ++s.pos;
  s.skip_ws();
  if (!scan_number(s, out.x)) return false;
  s.skip_ws();
  if (s.eof() || s.peek() != ',') return false;
  ++s.pos;
  s.skip_ws();
  if (!scan_number(s, out.y)) return false;
  s.skip_ws();
  if (s.eof() || s.peek() != ')') return false;
  ++s.pos;
  return true;
}

}  // namespace

const char* to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::none: return "none";
    case ParseErrorCode::missing_think: return "MissingThink";
    case ParseErrorCode::missing_answer: return "MissingAnswer";
    case ParseErrorCode::bad_tuple: return "BadTuple";
    case ParseErrorCode::trailing_content: return "TrailingContent";
  }
  return "unknown";
}

ParseResult parse_response(std::string_view text) {
  Scanner s{text};

  s.skip_ws();
  if (!s.consume(kThinkOpen)) {
    return fail(ParseErrorCode::missing_think, s.pos, "expected <think> block");
  }
  const std::size_t think_start = s.pos;
  const std::size_t think_end = text.find(kThinkClose, s.pos);
  if (think_end == std::string_view::npos) {
    return fail(ParseErrorCode::missing_think, s.pos, "unterminated <think> block");
  }
  s.pos = think_end + kThinkClose.size();

  s.skip_ws();
  if (!s.consume(kAnswerOpen)) {
    return fail(ParseErrorCode::missing_answer, s.pos, "expected <answer> block after </think>");
  }

  ModelResponse resp;
  resp.think = std::string(text.substr(think_start, think_end - think_start));

  int index = 0;
  while (true) {
    s.skip_ws();
    const std::size_t tuple_at = s.pos;
    Vec2 wp;
    if (!scan_tuple(s, wp)) {
      return fail(ParseErrorCode::bad_tuple, tuple_at,
                  "malformed waypoint tuple " + std::to_string(index), index);
    }
    resp.answer.waypoints.push_back(wp);
    ++index;

    s.skip_ws();
    if (!s.eof() && s.peek() == ',') {
      ++s.pos;
      continue;
    }
    break;
  }

  if (!s.consume(kAnswerClose)) {
    return fail(ParseErrorCode::missing_answer, s.pos, "unterminated <answer> block");
  }
  s.skip_ws();
  if (!s.eof()) {
    return fail(ParseErrorCode::trailing_content, s.pos, "content after </answer>");
  }

  ParseResult r;
  r.response = std::move(resp);
  return r;
}

int format_reward(std::string_view text) { return parse_response(text).ok() ? 1 : 0; }

std::string serialize_response(const ModelResponse& resp, int decimals) {
  if (decimals < 1 || decimals > 9) {
    throw std::invalid_argument("serialize_response: decimals must be in [1, 9]");
  }
  if (resp.answer.waypoints.empty()) {
    throw std::invalid_argument("serialize_response: answer needs at least one waypoint");
  }
  if (!resp.answer.finite()) {
    throw std::invalid_argument("serialize_response: non-finite waypoint");
  }
  if (resp.think.find(kThinkClose) != std::string::npos) {
    throw std::invalid_argument("serialize_response: think text contains </think>");
  }

  std::string out;
  out += kThinkOpen;
  out += resp.think;
  out += kThinkClose;
  out += kAnswerOpen;
  char buf[64];
  for (std::size_t i = 0; i < resp.answer.waypoints.size(); ++i) {
    const Vec2& w = resp.answer.waypoints[i];
    if (i > 0) out += ", ";
    std::snprintf(buf, sizeof(buf), "(%.*f, %.*f)", decimals, w.x, decimals, w.y);
    out += buf;
  }
  out += kAnswerClose;
  return out;
}

}  // namespace trajrl
