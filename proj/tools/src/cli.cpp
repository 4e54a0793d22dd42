#include "polarcvx/cli.hpp"

#include <polarcvx/errors.hpp>
#include <polarcvx/level_sets.hpp>
#include <polarcvx/santalo.hpp>
#include <polarcvx/spec_io.hpp>
#include <polarcvx/transforms.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace polarcvx::cli {

namespace {

using json = nlohmann::ordered_json;

json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

json estimate_json(const IntegralEstimate& e) {
  return json{{"value", num(e.value)},
              {"abs_error", num(e.abs_error)},
              {"method", e.method},
              {"s_truncation", num(e.s_truncation)},
              {"lower_bound_only", e.lower_bound_only}};
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SpecError(path + ": cannot open for writing");
  out << text;
  if (!out) throw SpecError(path + ": write failed");
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

json envelope(std::uint64_t seed, json config) {
  return json{{"tool_version", kToolVersion}, {"seed", seed}, {"config", std::move(config)}};
}

// Maps library exceptions onto the exit-code contract.
template <class F>
int guarded(std::ostream& diag, F&& body) {
  try {
    return body();
  } catch (const NotIntegrable& e) {
    diag << "not integrable: " << e.what() << "\n";
    return kNotIntegrable;
  } catch (const Unsupported& e) {
    diag << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const DepthExceeded& e) {
    diag << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const OffGridQuery& e) {
    diag << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Error& e) {
    diag << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

json santalo_json(const SantaloReport& r, const TheoremVerdict& v) {
  return json{{"n", r.n},
              {"family", r.family},
              {"even", r.even},
              {"integral_phi", estimate_json(r.integral_phi)},
              {"integral_polar", estimate_json(r.integral_polar)},
              {"polar_route", r.polar_route},
              {"integral_polar_interval", json::array({num(r.integral_polar_lo), num(r.integral_polar_hi)})},
              {"product", num(r.product)},
              {"product_error", num(r.product_error)},
              {"product_interval", json::array({num(r.product_lo), num(r.product_hi)})},
              {"normalized_product", num(r.normalized_product)},
              {"upper_bound_factor", num(r.upper_bound_factor)},
              {"upper_bound_value", num(r.upper_bound_value)},
              {"c_test", num(r.c_test)},
              {"lower_bound_value", num(r.lower_bound_value)},
              {"implied_c", num(r.implied_c)},
              {"lower_ok", v.lower_ok},
              {"upper_check", v.upper_checked ? (v.upper_ok ? "pass" : "fail") : "skipped"},
              {"passed", v.passed()}};
}

json levelset_json(const LevelSetReport& r) {
  return json{{"s", num(r.s)},
              {"t", num(r.t)},
              {"route", r.route},
              {"first_ok", r.first_ok},
              {"second_ok", r.second_ok},
              {"worst_first_margin", num(r.worst_first)},
              {"worst_second_margin", num(r.worst_second)},
              {"worst_direction", vec_json(r.worst_direction)}};
}

json volume_sandwich_json(const VolumeSandwichReport& r) {
  return json{{"t", num(r.t)},
              {"route", r.route},
              {"level_volume", estimate_json(r.level)},
              {"level_polar_volume", estimate_json(r.level_polar)},
              {"polar_level_volume", estimate_json(r.polar_level)},
              {"polar_level_volume_upper", estimate_json(r.polar_level_upper)},
              {"lower_ok", r.lower_ok},
              {"upper_ok", r.upper_ok},
              {"printed_reading_lower_ok", r.printed_lower_ok},
              {"printed_reading_upper_ok", r.printed_upper_ok}};
}

std::string grid_text(const std::vector<double>& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + fmt(g[i]);
  return out;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string item(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw SpecError("grid entry '" + item + "' is not a number");
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw SpecError("grid entry '" + item + "' must be a positive level");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

int cmd_transform(const TransformArgs& args, std::ostream& diag) {
  return guarded(diag, [&] {
    if (args.which != "polar" && args.which != "legendre") {
      throw SpecError("transform must be 'polar' or 'legendre'");
    }
    const GeomCvxFn phi = load_function_spec(args.spec_path);
    const GeomCvxFn out =
        args.which == "polar" ? polar_transform(phi) : legendre_transform(phi);
    write_text(args.out_path, function_spec_json(out) + "\n");
    return static_cast<int>(kPass);
  });
}

int cmd_product(const ProductArgs& args, std::ostream& diag) {
  return guarded(diag, [&] {
    if (!(args.c > 0.0)) throw SpecError("--c must be positive");
    if (!(args.tol > 0.0)) throw SpecError("--tol must be positive");
    const GeomCvxFn phi = load_function_spec(args.spec_path);
    SantaloConfig cfg;
    cfg.c_test = args.c;
    cfg.integration.rel_tol = args.tol;
    cfg.integration.volume.seed = args.seed;
    const SantaloReport rep = santalo_product(phi, cfg);
    const TheoremVerdict v = verify_theorem(rep);

    json doc = envelope(args.seed, json{{"command", "product"},
                                        {"c", num(args.c)},
                                        {"tol", num(args.tol)},
                                        {"spec", json::parse(function_spec_json(phi))}});
    const json report = santalo_json(rep, v);
    doc["reports"] = json::array({report});
    write_text(args.out_path, doc.dump(2) + "\n");
    if (!args.csv_path.empty()) {
      std::string csv = "field,value\n";
      for (const auto& [k, val] : report.items()) {
        if (val.is_number()) csv += k + "," + fmt(val.get<double>()) + "\n";
      }
      write_text(args.csv_path, csv);
    }
    return static_cast<int>(v.passed() ? kPass : kBoundViolated);
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& diag) {
  return guarded(diag, [&] {
    for (double v : args.s_grid) {
      if (!(v > 0.0)) throw SpecError("s-grid levels must be positive");
    }
    for (double v : args.t_grid) {
      if (!(v > 0.0)) throw SpecError("t-grid levels must be positive");
    }
    const GeomCvxFn phi = load_function_spec(args.spec_path);
    const auto dirs = default_levelset_directions(phi.dim());
    VolumeConfig vcfg;
    vcfg.seed = args.seed;
    bool all_ok = true;
    json polar = json::array(), legendre = json::array(), volumes = json::array(),
         identity = json::array();
    std::string csv = "check,s,t,first_ok,second_ok,worst_first_margin,worst_second_margin\n";
    for (double s : args.s_grid) {
      for (double t : args.t_grid) {
        const auto p = verify_polar_levelsets(phi, s, t, dirs);
        const auto l = verify_legendre_levelsets(phi, s, t, dirs);
        all_ok = all_ok && p.verdict() && l.verdict();
        polar.push_back(levelset_json(p));
        legendre.push_back(levelset_json(l));
        for (const auto* r : {&p, &l}) {
          csv += std::string(r == &p ? "polar" : "legendre") + "," + fmt(s) + "," + fmt(t) + "," +
                 (r->first_ok ? "1" : "0") + "," + (r->second_ok ? "1" : "0") + "," +
                 fmt(r->worst_first) + "," + fmt(r->worst_second) + "\n";
        }
      }
    }
    for (double t : args.t_grid) {
      const auto v = volume_sandwich_check(phi, t, vcfg);
      all_ok = all_ok && v.verdict();
      volumes.push_back(volume_sandwich_json(v));
    }
    if (has_closed_polar(phi) && has_closed_legendre(phi)) {
      for (double c : args.s_grid) {
        identity.push_back(
            json{{"c", num(c)}, {"max_discrepancy", num(legendre_polar_identity(phi, c, dirs))}});
      }
    }
    const auto rays = classify_rays(phi, dirs);
    json doc = envelope(args.seed, json{{"command", "verify"},
                                        {"s_grid", grid_text(args.s_grid)},
                                        {"t_grid", grid_text(args.t_grid)},
                                        {"directions", dirs.size()},
                                        {"spec", json::parse(function_spec_json(phi))}});
    doc["reports"] = json{{"even", is_even(phi)},
                          {"all_rays_equality_form", rays.all_equality_form},
                          {"polar_levelsets", polar},
                          {"legendre_levelsets", legendre},
                          {"volume_sandwich", volumes},
                          {"legendre_polar_identity", identity},
                          {"passed", all_ok}};
    write_text(args.out_path, doc.dump(2) + "\n");
    if (!args.csv_path.empty()) write_text(args.csv_path, csv);
    return static_cast<int>(all_ok ? kPass : kBoundViolated);
  });
}

int cmd_constants(const ConstantsArgs& args, std::ostream& diag) {
  return guarded(diag, [&] {
    json factors = json::array();
    std::string csv = "n,t_star,factor,reference_t,reference_factor,ball_argument_bound\n";
    for (int n = 1; n <= 10; ++n) {
      const auto f = upper_bound_factor(n);
      factors.push_back(json{{"n", n},
                             {"t_star", num(f.t_star)},
                             {"factor", num(f.factor)},
                             {"reference_t", num(f.reference_t)},
                             {"reference_factor", num(f.reference_factor)}});
      csv += std::to_string(n) + "," + fmt(f.t_star) + "," + fmt(f.factor) + "," +
             fmt(f.reference_t) + "," + fmt(f.reference_factor) + "," +
             (n <= 5 ? fmt(ball_argument_bound(n)) : std::string()) + "\n";
    }
    json ball = json::array();
    for (int n = 1; n <= 5; ++n) ball.push_back(json{{"n", n}, {"value", num(ball_argument_bound(n))}});
    json doc = envelope(0, json{{"command", "constants"}});
    doc["constant_a"] = num(constant_a());
    doc["upper_bound_factor"] = factors;
    doc["ball_argument_bound"] = ball;
    write_text(args.out_path, doc.dump(2) + "\n");
    if (!args.csv_path.empty()) write_text(args.csv_path, csv);
    return static_cast<int>(kPass);
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Polarity and Legendre transforms, layer-cake integrals and functional Santalo checks"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  TransformArgs targs;
  auto* transform = app.add_subcommand("transform", "Write the polar or Legendre transform of a spec");
  transform->add_option("spec", targs.spec_path, "Function spec (JSON)")->required();
  transform->add_option("--which", targs.which, "polar or legendre")
      ->check(CLI::IsMember({"polar", "legendre"}));
  transform->add_option("-o,--out", targs.out_path, "Output path (default stdout)");

  ProductArgs pargs;
  auto* product = app.add_subcommand("product", "Santalo product and bound verification");
  product->add_option("spec", pargs.spec_path, "Function spec (JSON)")->required();
  product->add_option("--c", pargs.c, "Lower-bound constant c")->capture_default_str();
  product->add_option("--seed", pargs.seed, "Seed for Monte Carlo volumes")->capture_default_str();
  product->add_option("--tol", pargs.tol, "Relative integration tolerance")->capture_default_str();
  product->add_option("-o,--out", pargs.out_path, "Report path (default stdout)");
  product->add_option("--csv", pargs.csv_path, "Also write numeric fields as CSV");

  VerifyArgs vargs;
  std::string s_grid = "0.25,0.5,1,2,4", t_grid = "0.25,0.5,1,2,4";
  auto* verify = app.add_subcommand("verify", "Level-set inclusion and volume sandwich checks");
  verify->add_option("spec", vargs.spec_path, "Function spec (JSON)")->required();
  verify->add_option("--s-grid", s_grid, "Comma list of levels s")->capture_default_str();
  verify->add_option("--t-grid", t_grid, "Comma list of levels t")->capture_default_str();
  verify->add_option("--seed", vargs.seed, "Seed for Monte Carlo volumes")->capture_default_str();
  verify->add_option("-o,--out", vargs.out_path, "Report path (default stdout)");
  verify->add_option("--csv", vargs.csv_path, "Also write a per-(s,t) CSV table");

  ConstantsArgs cargs;
  auto* constants = app.add_subcommand("constants", "Constant a, bound factors, Ball bound");
  constants->add_option("-o,--out", cargs.out_path, "Report path (default stdout)");
  constants->add_option("--csv", cargs.csv_path, "Also write the factor table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  if (*transform) return cmd_transform(targs, std::cerr);
  if (*product) return cmd_product(pargs, std::cerr);
  if (*verify) {
    try {
      vargs.s_grid = parse_grid(s_grid);
      vargs.t_grid = parse_grid(t_grid);
    } catch (const SpecError& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return kInputError;
    }
    return cmd_verify(vargs, std::cerr);
  }
  return cmd_constants(cargs, std::cerr);
}

}  // namespace polarcvx::cli
