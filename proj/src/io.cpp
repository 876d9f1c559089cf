#include "hubloc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace hubloc {

namespace {

using nlohmann::json;

json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double get_num(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_double(j.get<std::string>());
    } catch (const FormatError&) {
    }
  }
  throw FormatError("field '" + what + "' is not a number");
}

const json& field(const json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError("missing field '" + key + "'");
  return obj.at(key);
}

json vec_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

std::vector<double> vec_from(const json& obj, const std::string& key, std::size_t n) {
  const json& a = field(obj, key);
  if (!a.is_array() || a.size() != n) throw FormatError("field '" + key + "' must have length " + std::to_string(n));
  std::vector<double> out;
  out.reserve(n);
  for (const auto& x : a) out.push_back(get_num(x, key));
  return out;
}

json mat_json(const Matrix<double>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix<double> mat_from(const json& obj, const std::string& key, std::size_t n) {
  const json& a = field(obj, key);
  if (!a.is_array() || a.size() != n) throw FormatError("field '" + key + "' must have " + std::to_string(n) + " rows");
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = a[i];
    if (!row.is_array() || row.size() != n) throw FormatError("field '" + key + "' row has wrong length");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = get_num(row[j], key);
  }
  return m;
}

std::size_t parse_index(const std::string& s, const std::string& what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || s.empty()) throw FormatError("bad " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(v[i]);
  }
  return out;
}

// Split one CSV line; fields containing commas or quotes are quoted.
std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw FormatError("unterminated quote in CSV line");
  out.push_back(cur);
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

bool getline_trimmed(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const char* begin = text.data();
  if (!text.empty() && text[0] == '+') ++begin;
  const char* end = text.data() + text.size();
  const auto r = std::from_chars(begin, end, v);
  if (r.ec != std::errc() || r.ptr != end || begin == end) {
    throw FormatError("not a number: '" + text + "'");
  }
  return v;
}

std::string instance_to_json(const ProblemInstance& inst) {
  json j;
  j["schema"] = kInstanceSchema;
  j["version"] = kInstanceSchemaVersion;
  j["n"] = inst.n;
  j["p"] = inst.p;
  j["omega"] = num(inst.omega);
  j["fixed_cost"] = vec_json(inst.fixed_cost);
  j["capacity"] = vec_json(inst.capacity);
  j["handling_cost"] = vec_json(inst.handling_cost);
  j["distance"] = mat_json(inst.distance);
  j["travel_time"] = mat_json(inst.travel_time);
  j["max_transfer_time"] = mat_json(inst.max_transfer_time);
  j["unit_transport_cost"] = mat_json(inst.unit_transport_cost);
  json demand = json::array();
  for (std::size_t i = 0; i < inst.demand.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < inst.demand.cols(); ++k) {
      const auto& q = inst.demand(i, k);
      row.push_back(json::array({num(q.q1), num(q.q2), num(q.q3), num(q.q4)}));
    }
    demand.push_back(std::move(row));
  }
  j["demand"] = std::move(demand);
  j["alpha_discount"] = num(inst.alpha_discount);
  j["beta_discount"] = num(inst.beta_discount);
  j["early_penalty"] = mat_json(inst.early_penalty);
  j["late_penalty"] = mat_json(inst.late_penalty);
  j["window_lower"] = mat_json(inst.window_lower);
  j["window_upper"] = mat_json(inst.window_upper);
  j["aircraft_capacity"] = num(inst.aircraft_capacity);
  j["lto_p1"] = num(inst.lto_p1);
  j["lto_p2"] = num(inst.lto_p2);
  j["ccd_rate_p1"] = num(inst.ccd_rate_p1);
  j["ccd_rate_p2"] = num(inst.ccd_rate_p2);
  return j.dump(1) + "\n";
}

ProblemInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("instance document must be a JSON object");
  if (!j.contains("schema") || j["schema"] != kInstanceSchema) {
    throw FormatError(std::string("instance schema must be '") + kInstanceSchema + "'");
  }
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kInstanceSchemaVersion) {
    throw FormatError("unsupported instance schema version");
  }
  const json& jn = field(j, "n");
  const json& jp = field(j, "p");
  if (!jn.is_number_unsigned() || !jp.is_number_unsigned()) throw FormatError("n and p must be nonnegative integers");
  const auto n = jn.get<std::size_t>();
  ProblemInstance inst = ProblemInstance::zeros(n, jp.get<std::size_t>());
  inst.omega = get_num(field(j, "omega"), "omega");
  inst.fixed_cost = vec_from(j, "fixed_cost", n);
  inst.capacity = vec_from(j, "capacity", n);
  inst.handling_cost = vec_from(j, "handling_cost", n);
  inst.distance = mat_from(j, "distance", n);
  inst.travel_time = mat_from(j, "travel_time", n);
  inst.max_transfer_time = mat_from(j, "max_transfer_time", n);
  inst.unit_transport_cost = mat_from(j, "unit_transport_cost", n);
  const json& jd = field(j, "demand");
  if (!jd.is_array() || jd.size() != n) throw FormatError("field 'demand' must have " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (!jd[i].is_array() || jd[i].size() != n) throw FormatError("field 'demand' row has wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      const json& q = jd[i][k];
      if (!q.is_array() || q.size() != 4) throw FormatError("demand entries must be [q1,q2,q3,q4]");
      inst.demand(i, k) = {get_num(q[0], "demand"), get_num(q[1], "demand"), get_num(q[2], "demand"),
                           get_num(q[3], "demand")};
    }
  }
  inst.alpha_discount = get_num(field(j, "alpha_discount"), "alpha_discount");
  inst.beta_discount = get_num(field(j, "beta_discount"), "beta_discount");
  inst.early_penalty = mat_from(j, "early_penalty", n);
  inst.late_penalty = mat_from(j, "late_penalty", n);
  inst.window_lower = mat_from(j, "window_lower", n);
  inst.window_upper = mat_from(j, "window_upper", n);
  inst.aircraft_capacity = get_num(field(j, "aircraft_capacity"), "aircraft_capacity");
  inst.lto_p1 = get_num(field(j, "lto_p1"), "lto_p1");
  inst.lto_p2 = get_num(field(j, "lto_p2"), "lto_p2");
  inst.ccd_rate_p1 = get_num(field(j, "ccd_rate_p1"), "ccd_rate_p1");
  inst.ccd_rate_p2 = get_num(field(j, "ccd_rate_p2"), "ccd_rate_p2");
  return inst;
}

void write_instance(const std::filesystem::path& path, const ProblemInstance& inst) {
  write_file(path, instance_to_json(inst));
}

ProblemInstance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_file(path));
}

std::string route_label(const Route& route) {
  switch (route.kind) {
    case RouteKind::Direct:
      return "Direct";
    case RouteKind::OneHub:
      return "k" + std::to_string(route.first);
    case RouteKind::TwoHub:
      return "k" + std::to_string(route.first) + "->k" + std::to_string(route.second);
  }
  return "Direct";
}

Route parse_route_label(const std::string& label) {
  if (label == "Direct") return Route::direct();
  const auto arrow = label.find("->");
  auto hub = [&](const std::string& s) {
    if (s.size() < 2 || s[0] != 'k') throw FormatError("bad route '" + label + "'");
    return parse_index(s.substr(1), "route hub");
  };
  if (arrow == std::string::npos) return Route::one_hub(hub(label));
  return Route::two_hub(hub(label.substr(0, arrow)), hub(label.substr(arrow + 2)));
}

void write_front_csv(std::ostream& os, const ParetoFront& front) {
  os << "solution,alpha_prime,z1,z2,z3,hubs,assignment,routes\n";
  for (std::size_t s = 0; s < front.solutions.size(); ++s) {
    const auto& sol = front.solutions[s];
    const std::size_t n = sol.design.size();
    std::string routes;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!routes.empty()) routes += ';';
        routes += route_label(sol.plan.at(i, j));
      }
    }
    os << s + 1 << ',' << format_double(sol.alpha_prime) << ',' << format_double(sol.objectives.z1)
       << ',' << format_double(sol.objectives.z2) << ',' << format_double(sol.objectives.z3) << ','
       << join_indices(sol.design.hubs()) << ',' << join_indices(sol.design.assignment) << ','
       << routes << '\n';
  }
}

ParetoFront read_front_csv(std::istream& is) {
  std::string line;
  if (!getline_trimmed(is, line)) throw FormatError("front file is empty");
  if (line != "solution,alpha_prime,z1,z2,z3,hubs,assignment,routes") {
    throw FormatError("unexpected front header '" + line + "'");
  }
  ParetoFront front;
  while (getline_trimmed(is, line)) {
    if (line.empty()) continue;
    const auto f = csv_fields(line);
    if (f.size() != 8) throw FormatError("front row needs 8 fields");
    EvaluatedSolution sol;
    sol.alpha_prime = parse_double(f[1]);
    sol.objectives = {parse_double(f[2]), parse_double(f[3]), parse_double(f[4])};
    std::vector<std::size_t> assignment;
    for (const auto& a : split(f[6], ';')) assignment.push_back(parse_index(a, "assignment"));
    const std::size_t n = assignment.size();
    sol.design.assignment = assignment;
    sol.design.hub_open.assign(n, 0);
    for (const auto& h : split(f[5], ';')) {
      const std::size_t k = parse_index(h, "hub");
      if (k >= n) throw FormatError("hub index out of range");
      sol.design.hub_open[k] = 1;
    }
    const auto labels = split(f[7], ';');
    if (labels.size() != n * (n == 0 ? 0 : n - 1)) throw FormatError("route list has wrong length");
    sol.plan = RoutePlan(n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) sol.plan.at(i, j) = parse_route_label(labels[r++]);
      }
    }
    front.solutions.push_back(std::move(sol));
  }
  return front;
}

void write_front(const std::filesystem::path& path, const ParetoFront& front) {
  std::ostringstream os;
  write_front_csv(os, front);
  write_file(path, os.str());
}

ParetoFront read_front(const std::filesystem::path& path) {
  std::istringstream is(read_file(path));
  return read_front_csv(is);
}

void write_metrics(const std::filesystem::path& path, const FrontMetrics& m) {
  Table t;
  t.header = {"npf", "msi", "sm", "cpt"};
  t.rows.push_back({std::to_string(m.npf), format_double(m.msi), format_double(m.sm), format_double(m.cpt)});
  write_table(path, t);
}

void write_table_csv(std::ostream& os, const Table& table) {
  auto row_out = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(row[i]);
    }
    os << '\n';
  };
  row_out(table.header);
  for (const auto& row : table.rows) row_out(row);
}

Table read_table_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!getline_trimmed(is, line)) throw FormatError("table is empty");
  t.header = csv_fields(line);
  while (getline_trimmed(is, line)) {
    if (line.empty()) continue;
    auto f = csv_fields(line);
    if (f.size() != t.header.size()) throw FormatError("table row has wrong number of fields");
    t.rows.push_back(std::move(f));
  }
  return t;
}

void write_table(const std::filesystem::path& path, const Table& table) {
  std::ostringstream os;
  write_table_csv(os, table);
  write_file(path, os.str());
}

Table read_table(const std::filesystem::path& path) {
  std::istringstream is(read_file(path));
  return read_table_csv(is);
}

}  // namespace hubloc
