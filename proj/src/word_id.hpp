#pragma once

#include <json.hpp>

#include <limits>
#include <string>

#include "bovw/core.hpp"
#include "bovw/errors.hpp"

namespace bovw {

// A JSON word id: an unsigned integer that fits WordId.
inline WordId parse_word_id(const nlohmann::json& j, const std::string& path, std::size_t line) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() > std::numeric_limits<WordId>::max()) {
    throw ParseError(path, line, "word id must be an integer in [0, 2^32)");
  }
  return static_cast<WordId>(j.get<std::uint64_t>());
}

}  // namespace bovw
