#pragma once

#include <string>
#include <string_view>

#include "schmidtkit/state.hpp"

namespace schmidtkit {

/// Parses {"dims": [d0, ...], "amps": [[re, im], ...]}. Amplitudes are
/// normalized on load. Structural problems throw MalformedInput; a valid
/// structure with a bad shape or a zero vector throws the usual state errors.
PureState parse_state_json(std::string_view text);

/// Inverse of parse_state_json, with a trailing newline.
std::string state_to_json(const PureState& state);

/// Whole-file read; MalformedInput when the file cannot be opened.
std::string read_text_file(const std::string& path);

/// Lowercase hex SHA-256 of the raw bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace schmidtkit
