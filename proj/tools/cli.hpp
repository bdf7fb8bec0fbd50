#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dioph/counting.hpp"

namespace dioph::cli {

// Resolved settings: config file entries overlaid by command-line flags.
// Keys are flag names without the leading dashes.
class RunConfig {
 public:
  std::string subcommand;
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  FixedReal get_real(const std::string& key, const std::string& fallback) const;
  std::vector<std::int64_t> get_int_list(const std::string& key) const;

  // ApproxConfig from d, c, k, eps, A, B, revalidated.
  ApproxConfig instance() const;
  // FNV-1a over the sorted key=value lines, output paths excluded.
  std::uint64_t hash() const;
};

// "[section]" headers and "key = value" lines; '#' and ';' start comments.
// Later entries win. ConfigError on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Returns the process exit code: 0 success, 1 invariant violation,
// 2 configuration error, 3 resource cap exceeded.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dioph::cli
