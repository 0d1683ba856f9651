#include "malle/report.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace malle {

std::string config_hash(std::string_view canonical_config) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical_config.data(), canonical_config.size(), digest, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (int i = 0; i < 8; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string output_header(std::string_view canonical_config, std::uint64_t seed) {
  return std::string("# malle-lab ") + kToolVersion + " config=" + config_hash(canonical_config) +
         " seed=" + std::to_string(seed);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

}  // namespace malle
