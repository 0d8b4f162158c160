#include "h2r1/specfile.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "h2r1/errors.hpp"
#include "h2r1/expr.hpp"

namespace h2r1 {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

Expression parse_entry_expr(const Entry& e,
                            const std::vector<Expression::VarBinding>& vars) {
  try {
    return Expression::parse(e.value, vars);
  } catch (const Error& err) {
    throw SpecFileError(std::string(err.what()), e.line);
  }
}

}  // namespace

SurfacePatch parse_surface_spec(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, Entry> entries;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecFileError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw SpecFileError("expected 'key = value'", lineno);
    if (entries.count(key))
      throw SpecFileError("duplicate key '" + key + "'", lineno);
    entries[key] = Entry{value, lineno};
  }

  auto it = entries.find("chart");
  if (it == entries.end()) throw SpecFileError("missing required key 'chart'");
  ChartKind chart;
  if (it->second.value == "disk")
    chart = ChartKind::PoincareDisk;
  else if (it->second.value == "polar")
    chart = ChartKind::GeodesicPolar;
  else
    throw SpecFileError("chart must be 'disk' or 'polar', got '" +
                            it->second.value + "'",
                        it->second.line);

  it = entries.find("domain");
  if (it == entries.end()) throw SpecFileError("missing required key 'domain'");
  Domain dom;
  {
    std::istringstream ds(it->second.value);
    std::string tail;
    if (!(ds >> dom.u0 >> dom.u1 >> dom.v0 >> dom.v1) || (ds >> tail))
      throw SpecFileError("domain needs exactly four numbers 'u0 u1 v0 v1'",
                          it->second.line);
    if (!std::isfinite(dom.u0) || !std::isfinite(dom.u1) ||
        !std::isfinite(dom.v0) || !std::isfinite(dom.v1) ||
        !(dom.u0 < dom.u1) || !(dom.v0 < dom.v1))
      throw SpecFileError("domain bounds must be finite with u0 < u1, v0 < v1",
                          it->second.line);
  }

  const std::vector<Expression::VarBinding> vars =
      (chart == ChartKind::GeodesicPolar) ? Expression::polar_vars()
                                          : Expression::uv_vars();
  const std::string c0_key = (chart == ChartKind::PoincareDisk) ? "x" : "r";
  const std::string c1_key = (chart == ChartKind::PoincareDisk) ? "y" : "theta";

  for (const auto& [key, entry] : entries)
    if (key != "chart" && key != "domain" && key != "graph" && key != c0_key &&
        key != c1_key && key != "t")
      throw SpecFileError("unknown key '" + key + "' for a " +
                              chart_name(chart) + " chart",
                          entry.line);

  const bool has_graph = entries.count("graph") != 0;
  const bool has_coords =
      entries.count(c0_key) || entries.count(c1_key) || entries.count("t");
  if (has_graph && has_coords)
    throw SpecFileError("'graph' excludes explicit coordinate keys",
                        entries.at("graph").line);
  if (has_graph) {
    Expression height = parse_entry_expr(entries.at("graph"), vars);
    return SurfacePatch::graph(chart, dom, height, text);
  }
  if (!entries.count(c0_key) || !entries.count(c1_key) || !entries.count("t"))
    throw SpecFileError("need either 'graph' or all of '" + c0_key + "', '" +
                        c1_key + "', 't'");
  Expression c0 = parse_entry_expr(entries.at(c0_key), vars);
  Expression c1 = parse_entry_expr(entries.at(c1_key), vars);
  Expression c2 = parse_entry_expr(entries.at("t"), vars);
  return SurfacePatch::from_expressions(chart, dom, c0, c1, c2, text);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SurfacePatch load_surface_spec(const std::string& path) {
  return parse_surface_spec(read_text_file(path));
}

RotProfile load_profile_csv(const std::string& path, double K_target) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read file " + path);
  RotProfile prof;
  prof.K_target = K_target;
  prof.breakdown_lo = std::numeric_limits<double>::quiet_NaN();
  prof.breakdown_hi = std::numeric_limits<double>::quiet_NaN();
  prof.radial_length = std::numeric_limits<double>::quiet_NaN();
  prof.K_error_max = std::numeric_limits<double>::quiet_NaN();

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (lineno == 1 && line.find("r,") == 0) continue;  // header
    std::istringstream ls(line);
    double cols[3];
    for (int i = 0; i < 3; ++i) {
      std::string cell;
      if (!std::getline(ls, cell, ','))
        throw SpecFileError("profile row needs at least r,h,dh columns",
                            lineno);
      try {
        cols[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw SpecFileError("bad number '" + trim(cell) + "' in profile row",
                            lineno);
      }
    }
    prof.r.push_back(cols[0]);
    prof.h.push_back(cols[1]);
    prof.dh.push_back(cols[2]);
  }
  if (prof.r.empty()) throw SpecFileError("profile file holds no samples");
  return prof;
}

}  // namespace h2r1
