#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace mawc {

// SHA-256 (FIPS 180-4), hex digest.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file_hex(const std::string& path);  // throws on open failure

// Format with `digits` significant digits (CSV default 6); "%.17g" round-trip
// is used for machine-readable channel files, not here.
std::string format_sig(double x, int digits = 6);
std::string csv_field(const std::string& raw);  // RFC-4180 quoting when needed

// Every CLI run that writes outputs also writes manifest.json next to them:
// the exact argv, seed, tool version, and a sha256 per emitted file, so a rerun
// of the same command line can be checked byte-for-byte.
struct RunManifest {
  std::string tool = "mawc";
  std::string version = "1.0.0";
  std::vector<std::string> argv;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;   // (path, sha256)
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, sha256)

  std::string to_json() const;
};

}  // namespace mawc
