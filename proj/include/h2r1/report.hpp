#pragma once

#include <map>
#include <string>
#include <vector>

#include "h2r1/deform.hpp"
#include "h2r1/grid.hpp"

namespace h2r1 {

const char* tool_version();

/// FNV-1a 64-bit hash, printed as 16 hex digits; fingerprints spec text.
std::string fingerprint64(const std::string& text);

/// Per-identity tolerance resolution: explicit override, else the built-in
/// per-identity default (pair-level ids at 1e-6), else the base tolerance.
struct ToleranceMap {
  double base = 1e-8;
  std::map<std::string, double> overrides;
  double tol_for(const std::string& id) const;
};

struct IdentityStat {
  std::string id;
  double max = 0.0;
  double mean = 0.0;
  Vec2d argmax{};
  double tol = 0.0;
  bool pass = true;
};

struct ResidualReport {
  std::string version;
  std::string fingerprint;
  GridSpec grid;
  DeformMode mode = DeformMode::FreeC;
  double c = 1.0;
  double asserted_K = 0.0;  // NaN outside ConstantK mode
  std::vector<std::string> warnings;
  std::vector<IdentityStat> identities;
  bool pass = true;

  std::string to_json() const;
  static ResidualReport from_json(const std::string& text);
};

/// Identity ids evaluated for a context (pair-level ids only in a consistent
/// ConstantK context).
std::vector<std::string> identity_ids(const DeformationContext& ctx);

/// Relative residual of every identity at one parameter point, in
/// identity_ids order.
std::vector<double> point_residuals(const DeformationContext& ctx,
                                    const Vec2d& p);

struct SuiteOptions {
  ToleranceMap tolerances;
  int threads = 0;
};

/// Evaluate all identities over the grid; deterministic by index regardless
/// of thread count.
ResidualReport run_suite(const DeformationContext& ctx, const GridSpec& grid,
                         const SuiteOptions& opts = {});

/// Row table for the report command: u, v, Theta, K, normgradh2, detA,
/// Ktilde16, Ktilde18 (row-major grid order).
struct FieldTable {
  static const std::vector<std::string>& columns();
  std::vector<std::array<double, 8>> rows;
};

FieldTable field_table(const DeformationContext& ctx, const GridSpec& grid,
                       int threads = 0);
std::string field_table_csv(const FieldTable& table);
std::string field_table_json(const FieldTable& table);

}  // namespace h2r1
