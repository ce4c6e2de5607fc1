#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "calabi/report.hpp"
#include "fleet.hpp"

using namespace calabi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "calabi_report_tests";
  fs::create_directories(dir);
  return dir / name;
}

RunConfig cyclic_config(int d, Vec2d nu, Task task) {
  RunConfig c;
  c.cyclic = d;
  c.nu = nu;
  c.tasks = {task};
  return c;
}

}  // namespace

TEST_CASE("report documents round-trip exactly") {
  for (const auto& m : calabi::testing::fleet()) {
    const CurvatureReport r = compute_invariants(m.polytope, m.nu);
    const std::string text = to_json(r).dump(2);
    CHECK(curvature_report_from_json(nlohmann::json::parse(text)) == r);
  }
}

TEST_CASE("input documents") {
  const auto doc = nlohmann::json::parse(R"({"normals": [[0,1],[1,0],[2,-1]], "a": [1,2], "nu": [1,-0.9]})");
  const Problem p = parse_problem(doc);
  CHECK(p.polytope == cyclic_resolution(3));
  CHECK(p.nu.alpha() == 1.0);
  CHECK(parse_problem(doc, Vec2d{0, 0}).nu.is_zero());
  CHECK_THROWS_AS(parse_problem(nlohmann::json::parse(R"({"normals": [[0,1.5],[1,0]], "a": [1]})")), Error);
  CHECK_THROWS_AS(parse_problem(nlohmann::json::parse(R"({"a": [1]})")), Error);
}

TEST_CASE("compute reports the Calabi energy") {
  std::ostringstream out, err;
  CHECK(run(cyclic_config(3, {0, 0}, Task::compute), out, err) == kExitOk);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["report"]["calabi_energy"].get<double>() == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(doc["metadata"]["tool"] == "calabi");
  CHECK(doc["input"]["branch"] == "ALE");
}

TEST_CASE("exit codes") {
  const fs::path poly = scratch("parallel.json");
  std::ofstream(poly) << R"({"normals": [[0,1],[0,1]], "a": [1], "nu": [0,0]})";
  RunConfig bad;
  bad.input_path = poly.string();
  bad.tasks = {Task::compute};
  std::ostringstream out, err;
  CHECK(run(bad, out, err) == kExitValidation);
  CHECK(err.str().find("ParallelUnboundedEdges") != std::string::npos);

  std::ostringstream e2;
  CHECK(run(cyclic_config(3, {1, 0}, Task::compute), out, e2) == kExitValidation);
  CHECK(e2.str().find("NotAdmissible") != std::string::npos);

  RunConfig starved = cyclic_config(3, {1, -0.9}, Task::compute);
  starved.tol = 1e-30;
  std::ostringstream e3;
  CHECK(run(starved, out, e3) == kExitQuadrature);
  CHECK(e3.str().find("QuadratureFailure") != std::string::npos);

  RunConfig unwritable = cyclic_config(3, {0, 0}, Task::profile);
  unwritable.csv_path = "/nonexistent-dir/x/profile.csv";
  std::ostringstream e4;
  CHECK(run(unwritable, out, e4) == kExitUnwritable);
}

TEST_CASE("verify reports passing checks") {
  RunConfig c = cyclic_config(3, {1, -0.9}, Task::verify);
  c.samples = 50;
  std::ostringstream out, err;
  REQUIRE(run(c, out, err) == kExitOk);
  const auto v = nlohmann::json::parse(out.str())["verification"];
  CHECK(v["scalar_curvature"]["max_abs"].get<double>() <= 1e-8);
  CHECK(v["identities"]["passed"] == true);
  CHECK(v["all_passed"] == true);
}

TEST_CASE("profile CSVs") {
  const PolytopeData p = cyclic_resolution(3);
  const std::string ale = profile_csv(p, validate_parameter(p, {0, 0}), 64);
  std::istringstream rows(ale);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "H,G_over_V2,VH_over_V2,T_line");
  int n = 0;
  while (std::getline(rows, line)) {
    ++n;
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    CHECK(std::stod(line.substr(first + 1, second - first - 1)) == 0.0);
  }
  CHECK(n == 64);

  const PolytopeData two = calabi::testing::two_edge();
  std::istringstream trows(profile_csv(two, validate_parameter(two, {0, 0}), 50));
  std::getline(trows, line);
  while (std::getline(trows, line)) CHECK(std::abs(std::stod(line.substr(line.rfind(',') + 1))) < 1e-12);

  CHECK(arc_csv_path("out/profile.csv") == "out/profile_arc.csv");
  CHECK(arc_csv_path("profile") == "profile_arc.csv");
}

TEST_CASE("repeated runs are byte-identical") {
  for (Task t : {Task::compute, Task::verify, Task::profile}) {
    std::string reports[2], csvs[2], arcs[2];
    for (int k = 0; k < 2; ++k) {
      RunConfig c = cyclic_config(4, {1, -1.2}, t);
      c.out_path = scratch("report" + std::to_string(k) + ".json").string();
      c.csv_path = scratch("profile" + std::to_string(k) + ".csv").string();
      c.exec = k == 0 ? Exec::serial : Exec::parallel;
      std::ostringstream out, err;
      REQUIRE(run(c, out, err) == kExitOk);
      reports[k] = slurp(*c.out_path);
      if (t == Task::profile) {
        csvs[k] = slurp(*c.csv_path);
        arcs[k] = slurp(arc_csv_path(*c.csv_path));
      }
    }
    CHECK(reports[0] == reports[1]);
    CHECK(csvs[0] == csvs[1]);
    CHECK(arcs[0] == arcs[1]);
  }
}
