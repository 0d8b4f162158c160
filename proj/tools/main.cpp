#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "h2r1/codazzi.hpp"
#include "h2r1/deform.hpp"
#include "h2r1/errors.hpp"
#include "h2r1/report.hpp"
#include "h2r1/rotational.hpp"
#include "h2r1/specfile.hpp"

namespace {

using h2r1::DeformationContext;
using h2r1::DeformMode;
using h2r1::GridSpec;
using h2r1::SurfacePatch;
using ordered_json = nlohmann::ordered_json;

struct PatchInput {
  std::string spec_path;     // surface description file
  std::string profile_path;  // rotational profile CSV
  bool from_profile() const { return !profile_path.empty(); }
};

struct ModeInput {
  double c = 1.0;
  double K = 0.0;
  bool has_c = false;
  bool has_K = false;
};

void add_patch_options(CLI::App* cmd, PatchInput& in) {
  auto* spec = cmd->add_option("spec", in.spec_path,
                               "surface description file (chart/domain/graph)");
  auto* prof = cmd->add_option("--profile", in.profile_path,
                               "rotational profile CSV instead of a spec file");
  spec->excludes(prof);
}

void add_mode_options(CLI::App* cmd, ModeInput& in) {
  auto* c = cmd->add_option("--c", in.c,
                            "deformation constant (free-c mode, default 1)");
  auto* K = cmd->add_option(
      "--K", in.K, "asserted constant curvature in (-1,0]; sets c = 1/(K+1)");
  c->excludes(K);
}

SurfacePatch load_patch(const PatchInput& in, const ModeInput& mode) {
  if (in.from_profile()) {
    if (!mode.has_K)
      throw h2r1::Error("--profile input needs --K (the profile's target curvature)");
    h2r1::RotProfile prof =
        h2r1::load_profile_csv(in.profile_path, mode.K);
    return h2r1::profile_to_patch(prof);
  }
  if (in.spec_path.empty())
    throw h2r1::Error("need a spec file argument or --profile");
  return h2r1::load_surface_spec(in.spec_path);
}

DeformationContext make_context(SurfacePatch patch, const ModeInput& mode) {
  if (mode.has_K) return DeformationContext::constant_K(std::move(patch), mode.K);
  return DeformationContext::free_c(std::move(patch), mode.has_c ? mode.c : 1.0);
}

GridSpec make_grid(const h2r1::Domain& dom, const std::string& grid_arg) {
  int nu = 0, nv = 0;
  char tail = '\0';
  if (std::sscanf(grid_arg.c_str(), "%dx%d%c", &nu, &nv, &tail) != 2 ||
      nu < 1 || nv < 1)
    throw h2r1::Error("--grid wants the form NxM with positive counts, got '" +
                      grid_arg + "'");
  return GridSpec{dom.u0, dom.u1, dom.v0, dom.v1, nu, nv};
}

h2r1::ToleranceMap make_tolerances(const std::vector<std::string>& tol_args,
                                   double base, bool base_set,
                                   bool profile_backed) {
  h2r1::ToleranceMap tols;
  tols.base = base_set ? base : (profile_backed ? 1e-5 : 1e-8);
  static const std::vector<std::string> known = {
      "eq1",  "eq2",  "eq4",  "eq6",    "eq7",          "eq9",
      "proj", "eq13", "eq14", "eq15",   "lemma3",       "eq17",
      "eq18", "pair_codazzi", "kpair",  "lambda",       "eq19"};
  for (const std::string& arg : tol_args) {
    const std::size_t eq = arg.find('=');
    if (eq == std::string::npos)
      throw h2r1::Error("--tol wants id=value, got '" + arg + "'");
    const std::string id = arg.substr(0, eq);
    bool ok = false;
    for (const auto& k : known) ok = ok || (k == id);
    if (!ok) throw h2r1::Error("--tol: unknown identity id '" + id + "'");
    try {
      tols.overrides[id] = std::stod(arg.substr(eq + 1));
    } catch (const std::exception&) {
      throw h2r1::Error("--tol: bad value in '" + arg + "'");
    }
  }
  return tols;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw h2r1::Error("cannot open output file " + path);
  out << text;
}

ordered_json grid_json(const GridSpec& g) {
  return {{"u0", g.u0}, {"u1", g.u1}, {"v0", g.v0},
          {"v1", g.v1}, {"nu", g.nu}, {"nv", g.nv}};
}

int run(int argc, char** argv) {
  CLI::App app{"Spacelike surface geometry in the Lorentzian product H2 x R1:"
               " identity residual suites, height-deformation checks and"
               " rotational constant-curvature profiles"};
  app.require_subcommand(1);
  app.fallthrough();  // app-level --threads may follow the subcommand
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = THREADS env or machine parallelism)");

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "run the identity residual suite; JSON report on stdout");
  PatchInput v_in;
  ModeInput v_mode;
  std::string v_grid = "20x20";
  std::vector<std::string> v_tols;
  double v_tol_base = 0.0;
  add_patch_options(verify, v_in);
  add_mode_options(verify, v_mode);
  verify->add_option("--grid", v_grid, "sample grid NxM (default 20x20)");
  auto* v_tol_opt =
      verify->add_option("--tol", v_tols, "per-identity tolerance id=value");
  (void)v_tol_opt;
  auto* v_base_opt = verify->add_option(
      "--tol-default", v_tol_base,
      "base tolerance (default 1e-8, or 1e-5 for --profile input)");

  // report ---------------------------------------------------------------
  auto* report = app.add_subcommand(
      "report", "tabulate pointwise fields over a grid (csv or json)");
  PatchInput r_in;
  ModeInput r_mode;
  std::string r_grid = "20x20", r_format = "csv", r_out = "-";
  add_patch_options(report, r_in);
  add_mode_options(report, r_mode);
  report->add_option("--grid", r_grid, "sample grid NxM (default 20x20)");
  report->add_option("--format", r_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  report->add_option("--out", r_out, "output path (default '-' = stdout)");

  // rotsurf --------------------------------------------------------------
  auto* rotsurf = app.add_subcommand(
      "rotsurf", "shoot a rotational profile of constant curvature");
  double rs_K = 0.0;
  bool rs_axis = false;
  std::vector<double> rs_annulus;
  std::vector<double> rs_span;
  h2r1::ShootOptions rs_opts;
  std::string rs_out = "profile.csv", rs_sidecar;
  rotsurf->add_option("--K", rs_K, "target Gaussian curvature")->required();
  auto* ax = rotsurf->add_flag("--axis", rs_axis,
                               "start at the rotation axis (needs K <= -1)");
  auto* an = rotsurf->add_option("--annulus", rs_annulus,
                                 "interior start: r0 h0 v0")
                 ->expected(3);
  ax->excludes(an);
  rotsurf->add_option("--r-span", rs_span, "radial span: r_min r_max")
      ->expected(2);
  rotsurf->add_option("--max-step", rs_opts.max_step, "largest radial step");
  rotsurf->add_option("--min-step", rs_opts.min_step,
                      "smallest step before breakdown is declared");
  rotsurf->add_option("--atol", rs_opts.atol, "local error tolerance");
  rotsurf->add_option("--out", rs_out, "profile CSV path");
  rotsurf->add_option("--sidecar", rs_sidecar,
                      "diagnostics JSON path (default <out>.json)");

  // scan -----------------------------------------------------------------
  auto* scan = app.add_subcommand(
      "scan", "grid extremes of a derived field; JSON summary on stdout");
  PatchInput s_in;
  ModeInput s_mode;
  std::string s_grid = "20x20", s_quantity;
  add_patch_options(scan, s_in);
  add_mode_options(scan, s_mode);
  scan->add_option("--quantity", s_quantity, "ktilde | kpair | pair_codazzi")
      ->required()
      ->check(CLI::IsMember({"ktilde", "kpair", "pair_codazzi"}));
  scan->add_option("--grid", s_grid, "sample grid NxM (default 20x20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  v_mode.has_c = verify->count("--c") > 0;
  v_mode.has_K = verify->count("--K") > 0;
  r_mode.has_c = report->count("--c") > 0;
  r_mode.has_K = report->count("--K") > 0;
  s_mode.has_c = scan->count("--c") > 0;
  s_mode.has_K = scan->count("--K") > 0;

  if (verify->parsed()) {
    DeformationContext ctx = make_context(load_patch(v_in, v_mode), v_mode);
    h2r1::SuiteOptions opts;
    opts.threads = threads;
    opts.tolerances = make_tolerances(v_tols, v_tol_base,
                                      v_base_opt->count() > 0,
                                      v_in.from_profile());
    h2r1::ResidualReport rep =
        h2r1::run_suite(ctx, make_grid(ctx.patch().domain, v_grid), opts);
    write_output(rep.to_json(), "-");
    return rep.pass ? 0 : 1;
  }

  if (report->parsed()) {
    DeformationContext ctx = make_context(load_patch(r_in, r_mode), r_mode);
    h2r1::FieldTable table =
        h2r1::field_table(ctx, make_grid(ctx.patch().domain, r_grid), threads);
    write_output(r_format == "json" ? h2r1::field_table_json(table)
                                    : h2r1::field_table_csv(table),
                 r_out);
    return 0;
  }

  if (rotsurf->parsed()) {
    if (!rs_axis && rs_annulus.empty())
      throw h2r1::Error("rotsurf needs --axis or --annulus r0 h0 v0");
    if (!rs_span.empty()) {
      rs_opts.r_min = rs_span[0];
      rs_opts.r_max = rs_span[1];
    }
    h2r1::RotStart start =
        rs_axis ? h2r1::RotStart::axis()
                : h2r1::RotStart::annulus(rs_annulus[0], rs_annulus[1],
                                          rs_annulus[2]);
    h2r1::RotProfile prof = h2r1::shoot(start, rs_K, rs_opts);
    h2r1::write_profile_csv(prof, rs_out);
    const std::string sidecar =
        rs_sidecar.empty() ? rs_out + ".json" : rs_sidecar;
    h2r1::write_profile_sidecar(prof, sidecar);
    write_output(h2r1::profile_sidecar_json(prof), "-");
    return 0;
  }

  if (scan->parsed()) {
    DeformationContext ctx = make_context(load_patch(s_in, s_mode), s_mode);
    const GridSpec grid = make_grid(ctx.patch().domain, s_grid);
    const DeformationContext& c = ctx;
    std::function<double(const h2r1::Vec2d&)> field;
    if (s_quantity == "ktilde") {
      field = [&c](const h2r1::Vec2d& p) {
        return h2r1::ktilde_closed_form(c, h2r1::frame_at(c.patch(), p));
      };
    } else if (s_quantity == "kpair") {
      field = [&c](const h2r1::Vec2d& p) {
        h2r1::PointFrame f = h2r1::frame_at(c.patch(), p);
        return det(value_of(f.alpha)) / det(value_of(deformed_metric(c, f)));
      };
    } else {
      field = [&c](const h2r1::Vec2d& p) {
        h2r1::PointFrame f = h2r1::frame_at(c.patch(), p);
        return h2r1::pair_codazzi_residual_forms(deformed_metric(c, f), f.alpha,
                                                 p);
      };
    }
    h2r1::ScanResult res = h2r1::scan_field(field, grid, threads);

    ordered_json j;
    j["quantity"] = s_quantity;
    j["fingerprint"] = h2r1::fingerprint64(ctx.patch().source);
    j["grid"] = grid_json(grid);
    j["mode"] =
        ctx.mode() == DeformMode::ConstantK ? "constant_K" : "free_c";
    j["c"] = ctx.c();
    j["K"] = ctx.asserted_K();  // null outside constant-K mode
    j["count"] = res.count;
    j["min"] = res.min_value;
    j["argmin"] = {res.arg_min[0], res.arg_min[1]};
    j["max"] = res.max_value;
    j["argmax"] = {res.arg_max[0], res.arg_max[1]};
    j["inf_abs"] = res.inf_abs;
    j["arg_inf_abs"] = {res.arg_inf_abs[0], res.arg_inf_abs[1]};
    if (ctx.mode() == DeformMode::ConstantK) {
      if (s_quantity == "ktilde")
        j["reference"] = {{"name", "sup ktilde reference (K-1)"},
                          {"value", ctx.asserted_K() - 1.0}};
      else if (s_quantity == "kpair")
        j["reference"] = {{"name", "pair curvature reference -(K+1)"},
                          {"value", -(ctx.asserted_K() + 1.0)}};
      else
        j["reference"] = {{"name", "Codazzi-pair defect reference"},
                          {"value", 0.0}};
    } else {
      j["reference"] = nullptr;
    }
    write_output(j.dump(2) + "\n", "-");
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const h2r1::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
