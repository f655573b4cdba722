/*
 * config_io.hpp
 *
 * JSON configuration files: one document with battery / thermal / aging /
 * economic / horizon sections. Unknown keys are errors; missing keys keep
 * their defaults.
 */

#pragma once

#include "bess/domain.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace bess {

/// Parses without validating invariants. Throws ConfigError on malformed
/// JSON, unknown keys or wrongly typed values.
Config parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c and
/// serialising again gives identical bytes.
std::string serialize_config(const Config& cfg);

/// Reads, parses and validates.
Config load_config(const std::filesystem::path& path);

}  // namespace bess
