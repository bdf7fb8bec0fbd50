#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/counting.hpp"
#include "dioph/experiment.hpp"

namespace dioph {

inline constexpr std::string_view kVersion = "0.1.0";

// A CSV document: header, rows of preformatted cells and the hash of the
// configuration that produced it.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

// Shortest text that round-trips the double.
std::string format_double(double x);

// Header, rows, then "# config_hash=<16 hex digits> version=<version>".
std::string render_csv(const CsvTable& table, std::uint64_t config_hash);
// Writes render_csv to path; ResourceError if the file cannot be written.
void write_csv(const std::string& path, const CsvTable& table, std::uint64_t config_hash);

// p, r, q_1..q_d, slack0, slack_1..slack_d; slacks at 30 significant digits.
CsvTable tuples_csv(const CountResult& result, int d);
// N, a, b, integral_exact, G_N_sec2, G_N_sec3_variant, ratio.
CsvTable theorem_i_csv(const TheoremIReport& report);
// label, P, exact, bound, ratio, J, u.
CsvTable audit_csv(const std::vector<AuditRow>& rows);

struct SieveRow {
  std::int64_t N = 0;
  std::int64_t t1 = 1;
  std::int64_t t2 = 1;
  SieveSideCounts counts;
};
// N, t1, t2, S_exact, main_term, E_bound.
CsvTable sieve_csv(const std::vector<SieveRow>& rows);

}  // namespace dioph
