#include "h2r1/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "h2r1/codazzi.hpp"
#include "h2r1/errors.hpp"
#include "h2r1/parallel.hpp"
#include "json.hpp"

namespace h2r1 {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kAnalyticIds = {
    "eq1",  "eq2",  "eq4",    "eq6",  "eq7",  "eq9", "proj",
    "eq13", "eq14", "eq15", "lemma3", "eq17", "eq18"};
const std::vector<std::string> kPairIds = {"pair_codazzi", "kpair", "lambda",
                                           "eq19"};

bool is_pair_id(const std::string& id) {
  for (const auto& p : kPairIds)
    if (p == id) return true;
  return false;
}

/// Riemannian-ized magnitude of an ambient vector (product metric with the
/// time part counted positively), for residual normalization.
double riem_norm(const PointFrame& f, const Vec3d& v) {
  double q = v[2] * v[2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      q += f.amb.G(a, b).value() * v[a] * v[b];
  return std::sqrt(std::max(q, 0.0));
}

Vec3d jet_values(const Vec3j& v) {
  return Vec3d{v[0].value(), v[1].value(), v[2].value()};
}

double max_abs(const Mat2d& m) {
  double out = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const char* tool_version() { return "0.1.0"; }

std::string fingerprint64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double ToleranceMap::tol_for(const std::string& id) const {
  auto it = overrides.find(id);
  if (it != overrides.end()) return it->second;
  if (is_pair_id(id)) return 1e-6;
  return base;
}

std::vector<std::string> identity_ids(const DeformationContext& ctx) {
  std::vector<std::string> ids = kAnalyticIds;
  if (ctx.mode() == DeformMode::ConstantK && ctx.consistent())
    ids.insert(ids.end(), kPairIds.begin(), kPairIds.end());
  return ids;
}

std::vector<double> point_residuals(const DeformationContext& ctx,
                                    const Vec2d& p) {
  const PointFrame f = frame_at(ctx.patch(), p);
  const double theta = f.theta.value();
  const double s = f.gradh2.value();
  const double c = ctx.c();
  std::vector<double> out;
  out.reserve(kAnalyticIds.size() + kPairIds.size());

  // eq1: tangential/normal split of the ambient acceleration.
  {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Vec3j& fj = (j == 0) ? f.amb.fu : f.amb.fv;
        Vec3j acc = f.amb.covariant_derivative(static_cast<Axis>(i), fj);
        const double scale = 1.0 + riem_norm(f, jet_values(acc));
        worst = std::max(
            worst, riem_norm(f, gauss_formula_residual(f, i, j)) / scale);
      }
    out.push_back(worst);
  }

  // eq2: derivative of the normal against the shape operator.
  {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      Vec3j acc = f.amb.covariant_derivative(static_cast<Axis>(i), f.normal);
      const double scale = 1.0 + riem_norm(f, jet_values(acc));
      worst = std::max(worst, riem_norm(f, weingarten_residual(f, i)) / scale);
    }
    out.push_back(worst);
  }

  // eq4: extrinsic vs intrinsic curvature.
  out.push_back(std::abs(f.k_ext - f.k_int) / (1.0 + std::abs(f.k_ext)));

  // eq6: surface Codazzi equation with the height coupling.
  {
    const double dhmax =
        std::max(std::abs(f.dh[0].value()), std::abs(f.dh[1].value()));
    const double scale =
        1.0 + max_abs(value_of(f.shape)) + std::abs(theta) * dhmax;
    out.push_back(codazzi_residual(f) / scale);
  }

  // eq7: gradient norm against the angle function.
  out.push_back(std::abs(s - (theta * theta - 1.0)) / (1.0 + s));

  // eq9: Hessian of the height against Theta * alpha.
  {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        worst = std::max(worst, std::abs(f.hess(i, j).value() -
                                         theta * f.alpha(i, j).value()));
    out.push_back(worst / (1.0 + max_abs(value_of(f.hess))));
  }

  // proj: positive semidefiniteness of the horizontal pullback minus g.
  {
    const Vec2d eig = projection_defect_eigenvalues(f);
    out.push_back(std::max(0.0, -eig[0]) / (1.0 + max_abs(value_of(f.g))));
  }

  const Mat2j gt = deformed_metric(ctx, f);
  const Mat2d gt0 = value_of(gt);
  const Mat2d g0 = value_of(f.g);

  // eq13: determinant ratio and PSD of the deformation.
  {
    const double w = 1.0 + c * s;
    const double ratio = std::abs(det(gt0) / det(g0) - w) / w;
    const Vec2d eig = sym_eigenvalues(gt0 - g0);
    const double psd = std::max(0.0, -eig[0]) / (1.0 + max_abs(g0));
    out.push_back(std::max(ratio, psd));
  }

  // eq14: defining relation alpha(X, Y) = g~(A~ X, Y).
  {
    const Mat2d at = deformed_shape_operator(ctx, f);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double lhs = f.alpha(i, j).value();
        double rhs = 0.0;
        for (int k = 0; k < 2; ++k) rhs += gt0(k, j) * at(k, i);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    out.push_back(worst / (1.0 + max_abs(value_of(f.alpha))));
  }

  // eq15: connection formula against Christoffels computed from g~ jets.
  {
    const std::array<Mat2j, 2> direct = metric_christoffels(gt);
    double worst = 0.0, scale = 1.0;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          scale = std::max(scale, 1.0 + std::abs(direct[k](i, j).value()));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Vec2d formula = deformed_connection(ctx, f, i, j);
        for (int k = 0; k < 2; ++k)
          worst = std::max(
              worst, std::abs(formula[k] - direct[k](i, j).value()) / scale);
      }
    out.push_back(worst);
  }

  // lemma3: deformation lemma against the curvature tensor of g~.
  const double kt_direct = ktilde_direct(ctx, f);
  const double kt_lemma = ktilde_lemma(ctx, f);
  out.push_back(std::abs(kt_lemma - kt_direct) / (1.0 + std::abs(kt_direct)));

  // eq17: Hessian determinant identities (already normalized).
  out.push_back(hessian_det_identity(ctx, f));

  // eq18: closed form against the lemma value.
  const double kt_closed = ktilde_closed_form(ctx, f);
  out.push_back(std::abs(kt_closed - kt_lemma) / (1.0 + std::abs(kt_lemma)));

  if (ctx.mode() == DeformMode::ConstantK && ctx.consistent()) {
    // pair_codazzi: space-form Codazzi defect of (g~, alpha).
    {
      const Mat2j st = inverse(gt) * f.alpha;
      const double scale = 1.0 + max_abs(value_of(st));
      out.push_back(pair_codazzi_residual_forms(gt, f.alpha, p) / scale);
    }
    const PairCurvatureRecord rec = pair_curvature_and_bound(ctx, f);
    // kpair: extrinsic curvature of the pair against -(K+1).
    out.push_back(std::abs(rec.k_pair + (ctx.asserted_K() + 1.0)));
    // lambda: the eigenvalue-product identity.
    out.push_back(rec.lambda_residual);
    // eq19: one-sided bound K~ <= K - 1.
    out.push_back(rec.ktilde_bound_residual);
  }
  return out;
}

ResidualReport run_suite(const DeformationContext& ctx, const GridSpec& grid,
                         const SuiteOptions& opts) {
  const std::vector<std::string> ids = identity_ids(ctx);
  const int n = grid.count();
  if (n <= 0) throw DomainError("suite grid is empty");

  std::vector<std::vector<double>> values(n);
  parallel_for(n, opts.threads,
               [&](int i) { values[i] = point_residuals(ctx, grid.point(i)); });

  ResidualReport rep;
  rep.version = tool_version();
  rep.fingerprint = fingerprint64(ctx.patch().source);
  rep.grid = grid;
  rep.mode = ctx.mode();
  rep.c = ctx.c();
  rep.asserted_K = (ctx.mode() == DeformMode::ConstantK) ? ctx.asserted_K()
                                                         : kNaN;
  if (ctx.mode() == DeformMode::ConstantK && !ctx.consistent())
    rep.warnings.push_back(
        "constant-curvature assertion inconsistent with the patch (max "
        "deviation " +
        format_double(ctx.max_K_deviation()) + "); pair identities skipped");

  for (std::size_t k = 0; k < ids.size(); ++k) {
    IdentityStat stat;
    stat.id = ids[k];
    stat.tol = opts.tolerances.tol_for(ids[k]);
    int imax = 0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += values[i][k];
      if (values[i][k] > values[imax][k]) imax = i;
    }
    stat.max = values[imax][k];
    stat.mean = sum / n;
    stat.argmax = grid.point(imax);
    stat.pass = stat.max <= stat.tol;
    rep.pass = rep.pass && stat.pass;
    rep.identities.push_back(stat);
  }
  return rep;
}

std::string ResidualReport::to_json() const {
  ordered_json j;
  j["tool"] = "h2r1";
  j["version"] = version;
  j["fingerprint"] = fingerprint;
  j["grid"] = {{"u0", grid.u0}, {"u1", grid.u1}, {"v0", grid.v0},
               {"v1", grid.v1}, {"nu", grid.nu}, {"nv", grid.nv}};
  j["mode"] = (mode == DeformMode::ConstantK) ? "constant_K" : "free_c";
  j["c"] = c;
  j["K"] = asserted_K;  // serialized as null outside ConstantK mode
  j["warnings"] = warnings;
  j["identities"] = ordered_json::array();
  for (const auto& st : identities) {
    ordered_json e;
    e["id"] = st.id;
    e["max"] = st.max;
    e["mean"] = st.mean;
    e["argmax"] = {st.argmax[0], st.argmax[1]};
    e["tol"] = st.tol;
    e["pass"] = st.pass;
    j["identities"].push_back(e);
  }
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

ResidualReport ResidualReport::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  ResidualReport rep;
  rep.version = j.at("version").get<std::string>();
  rep.fingerprint = j.at("fingerprint").get<std::string>();
  const auto& g = j.at("grid");
  rep.grid = GridSpec{g.at("u0").get<double>(), g.at("u1").get<double>(),
                      g.at("v0").get<double>(), g.at("v1").get<double>(),
                      g.at("nu").get<int>(),    g.at("nv").get<int>()};
  rep.mode = (j.at("mode").get<std::string>() == "constant_K")
                 ? DeformMode::ConstantK
                 : DeformMode::FreeC;
  rep.c = j.at("c").get<double>();
  rep.asserted_K = j.at("K").is_null() ? kNaN : j.at("K").get<double>();
  rep.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& e : j.at("identities")) {
    IdentityStat st;
    st.id = e.at("id").get<std::string>();
    st.max = e.at("max").get<double>();
    st.mean = e.at("mean").get<double>();
    st.argmax = Vec2d{e.at("argmax")[0].get<double>(),
                      e.at("argmax")[1].get<double>()};
    st.tol = e.at("tol").get<double>();
    st.pass = e.at("pass").get<bool>();
    rep.identities.push_back(st);
  }
  rep.pass = j.at("pass").get<bool>();
  return rep;
}

const std::vector<std::string>& FieldTable::columns() {
  static const std::vector<std::string> cols = {
      "u", "v", "Theta", "K", "normgradh2", "detA", "Ktilde16", "Ktilde18"};
  return cols;
}

FieldTable field_table(const DeformationContext& ctx, const GridSpec& grid,
                       int threads) {
  const int n = grid.count();
  if (n <= 0) throw DomainError("report grid is empty");
  FieldTable table;
  table.rows.resize(n);
  parallel_for(n, threads, [&](int i) {
    const Vec2d p = grid.point(i);
    const PointFrame f = frame_at(ctx.patch(), p);
    table.rows[i] = {p[0],
                     p[1],
                     f.theta.value(),
                     f.k_ext,
                     f.gradh2.value(),
                     det(value_of(f.shape)),
                     ktilde_lemma(ctx, f),
                     ktilde_closed_form(ctx, f)};
  });
  return table;
}

std::string field_table_csv(const FieldTable& table) {
  std::string out;
  const auto& cols = FieldTable::columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out += cols[i];
    out += (i + 1 < cols.size()) ? ',' : '\n';
  }
  for (const auto& row : table.rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += format_double(row[i]);
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  return out;
}

std::string field_table_json(const FieldTable& table) {
  ordered_json j;
  j["columns"] = FieldTable::columns();
  j["rows"] = ordered_json::array();
  for (const auto& row : table.rows) j["rows"].push_back(row);
  return j.dump(2) + "\n";
}

}  // namespace h2r1
