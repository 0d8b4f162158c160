#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "h2r1/report.hpp"
#include "h2r1/rotational.hpp"
#include "json.hpp"

using namespace h2r1;

namespace {

SurfacePatch demo_patch() {
  Domain dom{-0.3, 0.3, -0.3, 0.3};
  return SurfacePatch::graph(
      ChartKind::PoincareDisk, dom,
      Expression::parse("0.2*sinh(u)*cos(v)", Expression::uv_vars()));
}

SurfacePatch slice_patch() {
  Domain dom{-0.4, 0.4, -0.4, 0.4};
  return SurfacePatch::graph(ChartKind::PoincareDisk, dom,
                             Expression::parse("0.3", Expression::uv_vars()));
}

bool has_id(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("fingerprint is standard FNV-1a 64") {
  CHECK(fingerprint64("") == "cbf29ce484222325");
  CHECK(fingerprint64("a") == "af63dc4c8601ec8c");
  CHECK(fingerprint64("hello") != fingerprint64("hellp"));
  CHECK(fingerprint64("x").size() == 16);
}

TEST_CASE("tolerance resolution: override, pair default, base") {
  ToleranceMap tm;
  CHECK(tm.tol_for("eq7") == 1e-8);
  CHECK(tm.tol_for("pair_codazzi") == 1e-6);
  CHECK(tm.tol_for("kpair") == 1e-6);
  CHECK(tm.tol_for("lambda") == 1e-6);
  CHECK(tm.tol_for("eq19") == 1e-6);
  tm.base = 1e-5;
  CHECK(tm.tol_for("eq7") == 1e-5);
  CHECK(tm.tol_for("pair_codazzi") == 1e-6);
  tm.overrides["eq7"] = 1e-3;
  tm.overrides["pair_codazzi"] = 1e-4;
  CHECK(tm.tol_for("eq7") == 1e-3);
  CHECK(tm.tol_for("pair_codazzi") == 1e-4);
}

TEST_CASE("identity id sets per mode") {
  DeformationContext free = DeformationContext::free_c(demo_patch(), 1.0);
  auto ids = identity_ids(free);
  for (const char* id : {"eq1", "eq2", "eq4", "eq6", "eq7", "eq9", "proj",
                         "eq13", "eq14", "eq15", "lemma3", "eq17", "eq18"})
    CHECK(has_id(ids, id));
  CHECK(!has_id(ids, "pair_codazzi"));
  CHECK(!has_id(ids, "kpair"));

  ShootOptions opts;
  opts.r_min = 0.85;
  opts.r_max = 1.0;
  opts.max_step = 5e-3;
  RotProfile prof = shoot(RotStart::annulus(1.0, 0.0, 0.2), -0.5, opts);
  SurfacePatch band = profile_to_patch(prof);
  DeformationContext ck = DeformationContext::constant_K(band, -0.5);
  REQUIRE(ck.consistent());
  auto cids = identity_ids(ck);
  for (const char* id : {"pair_codazzi", "kpair", "lambda", "eq19"})
    CHECK(has_id(cids, id));
  CHECK(point_residuals(ck, {0.9, 0.5}).size() == cids.size());
}

TEST_CASE("slice suite passes with residuals at rounding level") {
  DeformationContext ctx = DeformationContext::free_c(slice_patch(), 1.0);
  GridSpec grid{-0.4, 0.4, -0.4, 0.4, 8, 8};
  ResidualReport rep = run_suite(ctx, grid);
  CHECK(rep.pass);
  CHECK(rep.warnings.empty());
  CHECK(rep.identities.size() == identity_ids(ctx).size());
  for (const IdentityStat& st : rep.identities) {
    CHECK(st.pass);
    CHECK(st.max <= 1e-12);
    CHECK(st.mean <= st.max);
    CHECK(st.tol == 1e-8);
  }
}

TEST_CASE("analytic graph suite passes at the default tolerance") {
  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 1.0);
  GridSpec grid{-0.3, 0.3, -0.3, 0.3, 6, 6};
  ResidualReport rep = run_suite(ctx, grid);
  CHECK(rep.pass);
  for (const IdentityStat& st : rep.identities) {
    INFO("identity ", st.id);
    CHECK(st.pass);
    CHECK(st.max <= 1e-8);
  }
}

TEST_CASE("suite output is deterministic across thread counts") {
  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 1.3);
  GridSpec grid{-0.3, 0.3, -0.3, 0.3, 7, 5};
  SuiteOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const std::string a = run_suite(ctx, grid, one).to_json();
  const std::string b = run_suite(ctx, grid, many).to_json();
  const std::string c = run_suite(ctx, grid, many).to_json();
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("report JSON round-trips losslessly") {
  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 2.0);
  GridSpec grid{-0.3, 0.3, -0.3, 0.3, 4, 4};
  ResidualReport rep = run_suite(ctx, grid);
  const std::string text = rep.to_json();
  ResidualReport back = ResidualReport::from_json(text);
  CHECK(back.to_json() == text);
  CHECK(back.pass == rep.pass);
  CHECK(back.identities.size() == rep.identities.size());
  CHECK(back.c == 2.0);
  CHECK(std::isnan(back.asserted_K));

  nlohmann::json j = nlohmann::json::parse(text);
  for (const char* key :
       {"tool", "version", "fingerprint", "grid", "mode", "c", "K",
        "warnings", "identities", "pass"})
    CHECK(j.contains(key));
  CHECK(j["mode"] == "free_c");
  CHECK(j["K"].is_null());
  CHECK(j["identities"].is_array());
  CHECK(j["identities"][0].contains("max"));
  CHECK(j["identities"][0].contains("argmax"));
}

TEST_CASE("inconsistent constant-K context degrades with a warning") {
  // The demo graph is nowhere near constant curvature -0.5.
  DeformationContext ctx = DeformationContext::constant_K(demo_patch(), -0.5);
  CHECK(!ctx.consistent());
  GridSpec grid{-0.3, 0.3, -0.3, 0.3, 4, 4};
  ResidualReport rep = run_suite(ctx, grid);
  CHECK(!rep.warnings.empty());
  for (const IdentityStat& st : rep.identities) {
    CHECK(st.id != "pair_codazzi");
    CHECK(st.id != "kpair");
  }
  // The pointwise identities still hold on the genuine surface.
  CHECK(rep.pass);
}

TEST_CASE("field table columns and row contents") {
  auto cols = FieldTable::columns();
  REQUIRE(cols.size() == 8);
  CHECK(cols[0] == "u");
  CHECK(cols[1] == "v");
  CHECK(cols[2] == "Theta");
  CHECK(cols[3] == "K");
  CHECK(cols[4] == "normgradh2");
  CHECK(cols[5] == "detA");
  CHECK(cols[6] == "Ktilde16");
  CHECK(cols[7] == "Ktilde18");

  DeformationContext ctx = DeformationContext::free_c(demo_patch(), 1.0);
  GridSpec grid{-0.2, 0.2, -0.2, 0.2, 3, 3};
  FieldTable tab = field_table(ctx, grid);
  REQUIRE(static_cast<int>(tab.rows.size()) == grid.count());
  for (int i = 0; i < grid.count(); ++i) {
    const auto& row = tab.rows[i];
    const Vec2d p = grid.point(i);
    CHECK(row[0] == p[0]);
    CHECK(row[1] == p[1]);
    PointFrame f = frame_at(ctx.patch(), p);
    CHECK(row[2] == doctest::Approx(f.theta.value()).epsilon(1e-15));
    CHECK(row[3] == doctest::Approx(f.k_ext).epsilon(1e-15));
    // Row invariant: normgradh2 = Theta^2 - 1.
    CHECK(row[4] == doctest::Approx(row[2] * row[2] - 1.0).epsilon(1e-9));
    // The two deformed-curvature columns agree on genuine surfaces.
    CHECK(row[6] == doctest::Approx(row[7]).epsilon(1e-9));
  }

  const std::string csv = field_table_csv(tab);
  CHECK(csv.rfind("u,v,Theta,K,normgradh2,detA,Ktilde16,Ktilde18\n", 0) == 0);
  const std::string js = field_table_json(tab);
  nlohmann::json parsed = nlohmann::json::parse(js);
  CHECK(parsed["columns"].size() == 8);
  CHECK(parsed["rows"].size() == tab.rows.size());

  // 17 significant digits round-trip through the CSV text.
  const std::size_t line_end = csv.find('\n', csv.find('\n') + 1);
  const std::string first_row = csv.substr(csv.find('\n') + 1,
                                           line_end - csv.find('\n') - 1);
  double u_back = 0.0;
  std::sscanf(first_row.c_str(), "%lg", &u_back);
  CHECK(u_back == tab.rows[0][0]);
}

}  // TEST_SUITE
