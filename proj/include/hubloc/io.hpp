#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubloc/analysis.hpp"
#include "hubloc/model.hpp"
#include "hubloc/pareto.hpp"

namespace hubloc {

inline constexpr const char* kInstanceSchema = "hubloc-instance";
inline constexpr int kInstanceSchemaVersion = 1;

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File was readable but its contents do not parse.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON text of an instance; non-finite numbers are written as the strings
/// "inf", "-inf" and "nan". Doubles round-trip exactly.
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const std::string& text);

void write_instance(const std::filesystem::path& path, const ProblemInstance& inst);
ProblemInstance read_instance(const std::filesystem::path& path);

/// Table notation for one route: `Direct`, `k5`, `k1->k5`.
std::string route_label(const Route& route);
Route parse_route_label(const std::string& label);

/// Front CSV: solution, alpha_prime, z1, z2, z3, hubs, assignment, routes.
/// Lists are ';'-separated; routes cover pairs i != j in row-major order.
void write_front_csv(std::ostream& os, const ParetoFront& front);
ParetoFront read_front_csv(std::istream& is);
void write_front(const std::filesystem::path& path, const ParetoFront& front);
ParetoFront read_front(const std::filesystem::path& path);

/// Header row plus one row of values; doubles use 17 significant digits.
void write_metrics(const std::filesystem::path& path, const FrontMetrics& metrics);

/// Generic comma-delimited table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_table_csv(std::ostream& os, const Table& table);
Table read_table_csv(std::istream& is);
void write_table(const std::filesystem::path& path, const Table& table);
Table read_table(const std::filesystem::path& path);

/// Shortest text that parses back to the same double ("inf"/"-inf"/"nan"
/// for non-finite values).
std::string format_double(double v);
double parse_double(const std::string& text);

}  // namespace hubloc
