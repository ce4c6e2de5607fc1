#include "calabi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "calabi/error.hpp"
#include "calabi/verify.hpp"

namespace calabi {

using nlohmann::json;

namespace {

std::string task_name(Task t) {
  switch (t) {
    case Task::compute: return "compute";
    case Task::verify: return "verify";
    case Task::profile: return "profile";
  }
  return "unknown";
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json vec_json(Vec2d v) { return json::array({v.a, v.b}); }

Vec2d parse_pair(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path + " for writing");
  os << text;
  os.flush();
  if (!os) throw std::ios_base::failure("cannot write " + path);
}

json limit_check(const Integrand& f, double point, Side side, double expected) {
  json j;
  j["expected"] = expected;
  try {
    const LimitResult r = one_sided_limit_ext(f, point, side);
    j["extrapolated"] = r.value;
    j["deviation"] = std::abs(r.value - expected);
  } catch (const Error& e) {
    j["error"] = e.what();
    j["deviation"] = nullptr;
  }
  return j;
}

json limit_check_infinity(const Integrand& f, int sign, double expected) {
  json j;
  j["expected"] = expected;
  try {
    const LimitResult r = limit_at_infinity(f, sign);
    j["extrapolated"] = r.value;
    j["deviation"] = std::abs(r.value - expected);
  } catch (const Error& e) {
    j["error"] = e.what();
    j["deviation"] = nullptr;
  }
  return j;
}

}  // namespace

Problem parse_problem(const json& doc, std::optional<Vec2d> nu_override) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "input document must be an object");
  if (!doc.contains("normals") || !doc["normals"].is_array())
    throw Error(ErrorCode::InvalidInput, "\"normals\" must be an array of integer pairs");
  std::vector<IntVec2> normals;
  for (const auto& n : doc["normals"]) {
    if (!n.is_array() || n.size() != 2 || !n[0].is_number_integer() || !n[1].is_number_integer())
      throw Error(ErrorCode::InvalidInput, "\"normals\" must be an array of integer pairs");
    normals.push_back({n[0].get<std::int64_t>(), n[1].get<std::int64_t>()});
  }
  std::vector<double> a;
  if (doc.contains("a")) {
    if (!doc["a"].is_array()) throw Error(ErrorCode::InvalidInput, "\"a\" must be an array of numbers");
    for (const auto& x : doc["a"]) {
      if (!x.is_number()) throw Error(ErrorCode::InvalidInput, "\"a\" must be an array of numbers");
      a.push_back(x.get<double>());
    }
  }
  PolytopeData poly(std::move(normals), std::move(a));
  Vec2d nu{};
  if (nu_override) {
    nu = *nu_override;
  } else if (doc.contains("nu")) {
    nu = parse_pair(doc["nu"], "\"nu\"");
  }
  const TaubNutParameter param = validate_parameter(poly, nu);
  return {std::move(poly), param};
}

Problem load_problem(const RunConfig& config) {
  if (config.cyclic && config.input_path)
    throw Error(ErrorCode::InvalidInput, "--input and --cyclic are mutually exclusive");
  if (config.cyclic) {
    PolytopeData poly = cyclic_resolution(*config.cyclic);
    const TaubNutParameter param = validate_parameter(poly, config.nu.value_or(Vec2d{}));
    return {std::move(poly), param};
  }
  if (!config.input_path) throw Error(ErrorCode::InvalidInput, "one of --input or --cyclic is required");
  std::ifstream is(*config.input_path);
  if (!is) throw Error(ErrorCode::InvalidInput, "cannot read " + *config.input_path);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed input document: ") + e.what());
  }
  return parse_problem(doc, config.nu);
}

json to_json(const CurvatureReport& r) {
  json j;
  j["c1_squared"] = r.c1_squared;
  j["pontryagin"] = r.pontryagin;
  j["c2"] = r.c2;
  j["calabi_energy"] = r.calabi_energy;
  j["boundary_terms"] = r.boundary_terms;
  j["interval_integrals"] = r.interval_integrals;
  json bps = json::array();
  for (const auto& e : r.edge_limits.breakpoints)
    bps.push_back({{"index", e.index}, {"point", e.point}, {"left", e.left}, {"right", e.right}});
  j["edge_limits"] = {{"breakpoints", bps},
                      {"minus_infinity", r.edge_limits.minus_infinity},
                      {"plus_infinity", r.edge_limits.plus_infinity}};
  j["quadrature_error"] = r.quadrature_error;
  j["diagnostics"] = r.diagnostics;
  return j;
}

CurvatureReport curvature_report_from_json(const json& j) {
  CurvatureReport r;
  r.c1_squared = j.at("c1_squared").get<double>();
  r.pontryagin = j.at("pontryagin").get<double>();
  r.c2 = j.at("c2").get<double>();
  r.calabi_energy = j.at("calabi_energy").get<double>();
  r.boundary_terms = j.at("boundary_terms").get<std::vector<double>>();
  r.interval_integrals = j.at("interval_integrals").get<std::vector<double>>();
  const json& lim = j.at("edge_limits");
  for (const auto& e : lim.at("breakpoints")) {
    r.edge_limits.breakpoints.push_back({e.at("index").get<std::size_t>(), e.at("point").get<double>(),
                                         e.at("left").get<double>(), e.at("right").get<double>()});
  }
  r.edge_limits.minus_infinity = lim.at("minus_infinity").get<double>();
  r.edge_limits.plus_infinity = lim.at("plus_infinity").get<double>();
  r.quadrature_error = j.at("quadrature_error").get<double>();
  r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
  return r;
}

json verification_json(const PolytopeData& p, const TaubNutParameter& nu, const RunConfig& config) {
  json j;
  bool all = true;
  auto gate = [&](json& section, bool ok) {
    section["passed"] = ok;
    all = all && ok;
  };

  // Pointwise identities.
  const auto interior = halton_points(p, config.samples);
  const auto boundary = boundary_samples(p, config.samples);
  const IdentityResiduals id = check_identities(p, nu, interior, boundary, config.exec);
  json ids = {{"interior_points", id.interior_points},
              {"boundary_points", id.boundary_points},
              {"min_V", id.min_V},
              {"det_hess", id.det_hess},
              {"hess_symmetry", id.hess_symmetry},
              {"hess_vs_dxi", id.hess_vs_dxi},
              {"cauchy_riemann", id.cauchy_riemann},
              {"derivative_vs_autodiff", id.derivative_vs_autodiff},
              {"dxi_vs_autodiff", id.dxi_vs_autodiff},
              {"laplace", id.laplace},
              {"trace_rMr2", id.trace_rMr2},
              {"trace_MH_rMr", id.trace_MH_rMr},
              {"trace_MH_drMr", id.trace_MH_drMr}};
  gate(ids, id.min_V > 0.0 && id.det_hess <= 1e-10 && id.hess_symmetry <= 1e-12 && id.hess_vs_dxi <= 1e-12 &&
                id.cauchy_riemann <= 1e-12 && id.derivative_vs_autodiff <= 1e-12 && id.laplace <= 1e-10 &&
                id.trace_rMr2 <= 1e-10 && id.trace_MH_rMr <= 1e-10 && id.trace_MH_drMr <= 1e-10);
  j["identities"] = ids;

  // Scalar curvature.
  const auto s = map_indexed<double>(
      interior.size(), [&](std::size_t i) { return scalar_curvature(p, nu, interior[i]); }, config.exec);
  double s_max = 0.0;
  for (double x : s) s_max = std::max(s_max, std::abs(x));
  json sc = {{"samples", s.size()}, {"max_abs", s_max}, {"threshold", 1e-8}};
  gate(sc, s_max <= 1e-8);
  j["scalar_curvature"] = sc;

  // Closed-form edge limits against extrapolation.
  const BoundaryProfile profile(p, nu);
  const EdgeLimits lim = edge_limits(p, nu);
  const Integrand ratio = [&](double H) { return profile.VH_over_V2(H); };
  json el = json::array();
  double worst = 0.0;
  bool converged = true;
  auto track = [&](const json& c) {
    if (c["deviation"].is_null()) converged = false;
    else worst = std::max(worst, c["deviation"].get<double>());
  };
  for (const auto& e : lim.breakpoints) {
    json row = {{"index", e.index}, {"point", e.point}};
    row["left"] = limit_check(ratio, e.point, Side::left, e.left);
    row["right"] = limit_check(ratio, e.point, Side::right, e.right);
    track(row["left"]);
    track(row["right"]);
    el.push_back(row);
  }
  json inf = {{"plus_infinity", limit_check_infinity(ratio, +1, lim.plus_infinity)},
              {"minus_infinity", limit_check_infinity(ratio, -1, lim.minus_infinity)}};
  track(inf["plus_infinity"]);
  track(inf["minus_infinity"]);
  json edge = {{"breakpoints", el}, {"infinity", inf}, {"max_deviation", worst}};
  gate(edge, converged && worst <= 1e-6);
  j["edge_limits"] = edge;

  // Decay on large arcs.
  const DecayFit c1_fit = decay_profile(p, nu, DecayQuantity::c1_arc_integrand_sup, config.radii, config.exec);
  std::vector<double> tail_radii;
  for (double R : config.radii) tail_radii.push_back(4.0 * R);
  const DecayFit t_fit = decay_profile(p, nu, DecayQuantity::T_arc_integrand_sup, tail_radii, config.exec);
  const auto arc_c1 = map_indexed<double>(
      config.radii.size(),
      [&](std::size_t i) { return arc_integral(p, nu, config.radii[i], ArcForm::c1, config.tol).value; },
      config.exec);
  auto fit_json = [](const DecayFit& f) {
    json x = {{"radii", f.radii}, {"values", f.values}, {"skipped", f.skipped}};
    x["fitted_exponent"] = f.skipped ? json(nullptr) : json(f.fitted_exponent);
    return x;
  };
  json decay = {{"c1_arc_integrand_sup", fit_json(c1_fit)},
                {"T_arc_integrand_sup", fit_json(t_fit)},
                {"arc_c1", arc_c1}};
  bool decay_ok = c1_fit.skipped || c1_fit.fitted_exponent <= -1.9;
  decay_ok = decay_ok && (t_fit.skipped || t_fit.fitted_exponent <= -1.9);
  gate(decay, decay_ok);
  j["decay"] = decay;

  // Moment polygon from field data.
  json poly = json::array();
  double poly_dev = 0.0;
  for (const auto& e : reconstruct_polygon(p, nu)) {
    poly.push_back({{"index", e.index},
                    {"normal", vec_json(e.normal)},
                    {"vector", vec_json(e.vector)},
                    {"closed_form", vec_json(e.closed_form)},
                    {"deviation", e.deviation}});
    poly_dev = std::max(poly_dev, e.deviation);
  }
  json polygon = {{"edges", poly}, {"max_deviation", poly_dev}};
  gate(polygon, poly_dev <= 1e-10);
  j["polygon"] = polygon;

  // Second route to the Pontryagin integral.
  const PipelineCheck pc = pipeline_cross_check(p, nu, config.tol, config.radii, config.exec);
  json pipe = {{"assembly", pc.assembly},       {"line_integral", pc.line_integral},
               {"line_error", pc.line_error},   {"radii", pc.radii},
               {"arc_T", pc.arc_values},        {"arc_limit", pc.arc_limit},
               {"direct", pc.direct},           {"relative_difference", pc.relative_difference}};
  gate(pipe, pc.relative_difference <= 1e-6);
  j["pipeline"] = pipe;

  j["all_passed"] = all;
  return j;
}

std::string profile_csv(const PolytopeData& p, const TaubNutParameter& nu, std::size_t samples) {
  const auto& a = p.abscissas();
  const double lo = -a.back() - 5.0;
  const double hi = -a.front() + 5.0;
  const BoundaryProfile profile(p, nu);
  std::string out = "H,G_over_V2,VH_over_V2,T_line\n";
  for (std::size_t k = 0; k < samples; ++k) {
    const double H = lo + (static_cast<double>(k) + 0.5) * (hi - lo) / static_cast<double>(samples);
    if (std::any_of(a.begin(), a.end(), [&](double ai) { return std::abs(H + ai) < 1e-9; })) continue;
    out += fmt17(H) + "," + fmt17(profile.G_over_V2(H)) + "," + fmt17(profile.VH_over_V2(H)) + "," +
           fmt17(line_integrand_T(profile, H)) + "\n";
  }
  return out;
}

std::string arc_csv(const PolytopeData& p, const TaubNutParameter& nu, const std::vector<double>& radii,
                    double tol, Exec exec) {
  struct Row {
    double c1, t;
  };
  const auto rows = map_indexed<Row>(
      radii.size(),
      [&](std::size_t i) {
        return Row{arc_integral(p, nu, radii[i], ArcForm::c1, tol).value,
                   arc_integral(p, nu, radii[i], ArcForm::T, tol).value};
      },
      exec);
  std::string out = "R,arc_c1,arc_T\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    out += fmt17(radii[i]) + "," + fmt17(rows[i].c1) + "," + fmt17(rows[i].t) + "\n";
  return out;
}

std::string arc_csv_path(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() >= suffix.size() && csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return csv_path.substr(0, csv_path.size() - suffix.size()) + "_arc.csv";
  return csv_path + "_arc.csv";
}

json build_report(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tol must be positive");
  if (config.tasks.empty()) throw Error(ErrorCode::InvalidInput, "no task selected");
  const Problem prob = load_problem(config);
  const PolytopeData& p = prob.polytope;

  json doc;
  json tasks = json::array();
  for (Task t : config.tasks) tasks.push_back(task_name(t));
  doc["metadata"] = {{"tool", kToolName}, {"version", kToolVersion}, {"tasks", tasks}};
  json normals = json::array();
  for (const auto& n : p.normals()) normals.push_back({n.a, n.b});
  doc["input"] = {{"normals", normals},
                  {"a", p.abscissas()},
                  {"nu", vec_json(prob.nu.vec())},
                  {"branch", prob.nu.is_zero() ? "ALE" : "TaubNut"},
                  {"tol", config.tol}};
  doc["report"] = to_json(compute_invariants(p, prob.nu, config.tol, config.exec));
  if (std::find(config.tasks.begin(), config.tasks.end(), Task::verify) != config.tasks.end())
    doc["verification"] = verification_json(p, prob.nu, config);
  return doc;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const bool profile =
      std::find(config.tasks.begin(), config.tasks.end(), Task::profile) != config.tasks.end();
  try {
    const json doc = build_report(config);
    const std::string text = doc.dump(2) + "\n";
    if (config.out_path) write_file(*config.out_path, text);
    else if (!profile) out << text;

    if (profile) {
      const Problem prob = load_problem(config);
      const std::string csv = profile_csv(prob.polytope, prob.nu, config.samples);
      const std::string arcs = arc_csv(prob.polytope, prob.nu, config.radii, config.tol, config.exec);
      if (config.csv_path) {
        write_file(*config.csv_path, csv);
        write_file(arc_csv_path(*config.csv_path), arcs);
      } else {
        out << csv;
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::QuadratureFailure:
      case ErrorCode::NonFiniteSample:
      case ErrorCode::NoConvergence:
        return kExitQuadrature;
      default:
        return kExitValidation;
    }
  } catch (const std::ios_base::failure& e) {
    err << "UnwritablePath: " << e.what() << "\n";
    return kExitUnwritable;
  }
}

}  // namespace calabi
