#include "dioph/report.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <fstream>

#include "dioph/error.hpp"

namespace dioph {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double x) { return fmt::format("{}", x); }

std::string render_csv(const CsvTable& table, std::uint64_t config_hash) {
  std::string out = fmt::format("{}\n", fmt::join(table.header, ","));
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw ContractError("CSV row width does not match the header");
    }
    out += fmt::format("{}\n", fmt::join(row, ","));
  }
  out += fmt::format("# config_hash={:016x} version={}\n", config_hash, kVersion);
  return out;
}

void write_csv(const std::string& path, const CsvTable& table, std::uint64_t config_hash) {
  const std::string text = render_csv(table, config_hash);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ResourceError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw ResourceError("failed writing " + path);
}

CsvTable tuples_csv(const CountResult& result, int d) {
  CsvTable t;
  t.header = {"p", "r"};
  for (int i = 1; i <= d; ++i) t.header.push_back(fmt::format("q_{}", i));
  t.header.push_back("slack0");
  for (int i = 1; i <= d; ++i) t.header.push_back(fmt::format("slack_{}", i));
  for (const SolutionTuple& s : result.tuples) {
    std::vector<std::string> row{std::to_string(s.p), std::to_string(s.r)};
    for (std::int64_t q : s.q) row.push_back(std::to_string(q));
    row.push_back(s.slack0.to_decimal(30));
    for (const FixedReal& x : s.slack) row.push_back(x.to_decimal(30));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable theorem_i_csv(const TheoremIReport& report) {
  CsvTable t;
  t.header = {"N", "a", "b", "integral_exact", "G_N_sec2", "G_N_sec3_variant", "ratio"};
  const std::string a = report.a.to_decimal(30);
  const std::string b = report.b.to_decimal(30);
  for (const TheoremIRow& r : report.rows) {
    t.rows.push_back({std::to_string(r.N), a, b, fmt::format("{}", r.integral),
                      format_double(r.G_N), format_double(r.G_N_variant),
                      format_double(r.ratio)});
  }
  return t;
}

CsvTable audit_csv(const std::vector<AuditRow>& rows) {
  CsvTable t;
  t.header = {"label", "P", "exact", "bound", "ratio", "J", "u"};
  for (const AuditRow& r : rows) {
    t.rows.push_back({r.label, format_double(r.param("P")), format_double(r.exact),
                      format_double(r.bound), format_double(r.ratio), format_double(r.param("J")),
                      format_double(r.param("u"))});
  }
  return t;
}

CsvTable sieve_csv(const std::vector<SieveRow>& rows) {
  CsvTable t;
  t.header = {"N", "t1", "t2", "S_exact", "main_term", "E_bound"};
  for (const SieveRow& r : rows) {
    t.rows.push_back({std::to_string(r.N), std::to_string(r.t1), std::to_string(r.t2),
                      std::to_string(r.counts.S_exact), format_double(r.counts.main_term),
                      format_double(r.counts.E_bound)});
  }
  return t;
}

}  // namespace dioph
