#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "calabi/invariants.hpp"
#include "calabi/parallel.hpp"
#include "calabi/polytope.hpp"

namespace calabi {

inline constexpr const char* kToolName = "calabi";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Task { compute, verify, profile };

struct RunConfig {
  std::optional<std::string> input_path;  // input document
  std::optional<int> cyclic;              // or the cyclic family with spacing 1
  std::optional<Vec2d> nu;                // overrides "nu" from the input document
  double tol = 1e-10;
  std::vector<Task> tasks;
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
  std::size_t samples = 50;
  std::vector<double> radii = {25.0, 50.0, 100.0, 200.0, 400.0};
  Exec exec = Exec::parallel;
};

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitQuadrature = 3;
inline constexpr int kExitUnwritable = 4;

struct Problem {
  PolytopeData polytope;
  TaubNutParameter nu;
};

/// Reads {"normals": [[a, b], ...], "a": [...], "nu": [alpha, beta]}.
Problem parse_problem(const nlohmann::json& doc, std::optional<Vec2d> nu_override = {});
Problem load_problem(const RunConfig& config);

nlohmann::json to_json(const CurvatureReport& report);
CurvatureReport curvature_report_from_json(const nlohmann::json& doc);

nlohmann::json verification_json(const PolytopeData& p, const TaubNutParameter& nu, const RunConfig& config);

/// CSV rows "H,G_over_V2,VH_over_V2,T_line" on a fixed grid.
std::string profile_csv(const PolytopeData& p, const TaubNutParameter& nu, std::size_t samples);
/// CSV rows "R,arc_c1,arc_T".
std::string arc_csv(const PolytopeData& p, const TaubNutParameter& nu, const std::vector<double>& radii,
                    double tol, Exec exec);

/// Path of the arc table written next to the profile: "<stem>_arc.csv".
std::string arc_csv_path(const std::string& csv_path);

/// Full report document for a config (without writing anything).
nlohmann::json build_report(const RunConfig& config);

/// Runs every task, writes artifacts, returns an exit status. Errors go to err
/// as "<Name>: <detail>".
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace calabi
