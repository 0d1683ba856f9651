#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace malle {

inline constexpr const char* kToolVersion = "0.1.0";

/// First 16 hex digits of SHA-256 over the canonical config text.
std::string config_hash(std::string_view canonical_config);

/// "# malle-lab <version> config=<hash> seed=<seed>" (no trailing newline).
std::string output_header(std::string_view canonical_config, std::uint64_t seed);

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted and
/// inner quotes doubled.
std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace malle
