#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "trajrl/types.hpp"

namespace trajrl {

/// Model responses travel as text in exactly this shape:
///
///   response = ws "<think>" text "</think>" ws "<answer>" tuples "</answer>" ws
///   tuples   = tuple { ws "," ws tuple }
///   tuple    = "(" ws number ws "," ws number ws ")"
///   number   = ["+"|"-"] ( digits ["." {digit}] | "." digits )
///
/// text is any sequence not containing "</think>". No exponents, no content
/// outside the two blocks other than whitespace. This grammar is a wire
/// format and must stay byte-compatible across versions.
struct ModelResponse {
  std::string think;
  Trajectory answer;
};

enum class ParseErrorCode {
  none,
  missing_think,     // no well-formed leading <think>...</think> block
  missing_answer,    // no <answer> block right after, or it never closes
  bad_tuple,         // tuple at tuple_index is malformed
  trailing_content,  // non-whitespace after </answer>
};

const char* to_string(ParseErrorCode code);

struct ParseError {
  ParseErrorCode code = ParseErrorCode::none;
  int tuple_index = -1;   // set for bad_tuple
  std::size_t offset = 0; // byte offset of the first violation
  std::string message;
};

struct ParseResult {
  std::optional<ModelResponse> response;
  ParseError error;

  bool ok() const { return response.has_value(); }
};

/// Parses the full response grammar. Total function; the first violation is
/// reported in the error. Parsed trajectories carry the default dt.
ParseResult parse_response(std::string_view text);

/// 1 iff parse_response succeeds, else 0.
int format_reward(std::string_view text);

/// Inverse of parse_response, with fixed-point coordinates at the given
/// number of fraction digits (1..9). Throws std::invalid_argument on a
/// non-finite waypoint, a think text containing "</think>", or decimals
/// out of range.
std::string serialize_response(const ModelResponse& resp, int decimals);

}  // namespace trajrl
