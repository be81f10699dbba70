#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wc/game.hpp"

namespace wc {

using Json = nlohmann::json;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Elements as [u,v] pairs on K_n boards, plain ids otherwise.
Json element_to_json(const Board& b, Elem x);
Elem element_from_json(const Board& b, const Json& j);
// Sorted ascending.
Json elements_to_json(const Board& b, std::vector<Elem> xs);

Json board_to_json(const Board& b);
Board board_from_json(const Json& j);

Json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);

// Canonical text: sorted keys, no insignificant whitespace.
std::string canonical_dump(const Json& j);
std::string write_transcript(const Transcript& t);
Transcript read_transcript(const std::string& text);

}  // namespace wc
