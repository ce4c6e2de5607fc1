#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "calabi/error.hpp"
#include "calabi/report.hpp"

namespace {

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size())
      throw calabi::Error(calabi::ErrorCode::InvalidInput, std::string(flag) + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature integrals of scalar-flat Kaehler toric metrics"};
  app.require_subcommand(1);

  std::string input, nu, out, csv, radii;
  std::optional<int> cyclic;
  double tol = 1e-10;
  std::size_t samples = 50;
  bool serial = false;

  for (const char* verb : {"compute", "verify", "profile"}) {
    CLI::App* sub = app.add_subcommand(verb);
    auto* in = sub->add_option("--input", input, "input document (normals, a, nu)");
    auto* cy = sub->add_option("--cyclic", cyclic, "cyclic resolution with d edges, spacing 1");
    in->excludes(cy);
    sub->add_option("--nu", nu, "Taub-NUT parameter A,B");
    sub->add_option("--tol", tol, "absolute quadrature tolerance")->capture_default_str();
    sub->add_option("--out", out, "report path (stdout if absent)");
    sub->add_option("--csv", csv, "profile CSV path; the arc table goes to <stem>_arc.csv");
    sub->add_option("--samples", samples, "sample count for verify and profile")->capture_default_str();
    sub->add_option("--radii", radii, "comma-separated arc radii");
    sub->add_flag("--serial", serial, "use the serial reference kernels");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : calabi::kExitValidation;
  }

  calabi::RunConfig config;
  try {
    const std::string verb = app.get_subcommands().front()->get_name();
    config.tasks.push_back(verb == "compute"  ? calabi::Task::compute
                           : verb == "verify" ? calabi::Task::verify
                                              : calabi::Task::profile);
    if (!input.empty()) config.input_path = input;
    config.cyclic = cyclic;
    if (!nu.empty()) {
      const auto v = parse_list(nu, "--nu");
      if (v.size() != 2) throw calabi::Error(calabi::ErrorCode::InvalidInput, "--nu expects A,B");
      config.nu = calabi::Vec2d{v[0], v[1]};
    }
    config.tol = tol;
    if (!out.empty()) config.out_path = out;
    if (!csv.empty()) config.csv_path = csv;
    config.samples = samples;
    if (!radii.empty()) config.radii = parse_list(radii, "--radii");
    config.exec = serial ? calabi::Exec::serial : calabi::Exec::parallel;
  } catch (const calabi::Error& e) {
    std::cerr << e.what() << "\n";
    return calabi::kExitValidation;
  }
  return calabi::run(config, std::cout, std::cerr);
}
