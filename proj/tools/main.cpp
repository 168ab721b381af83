#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "skewdim/attractor.hpp"
#include "skewdim/dimension.hpp"
#include "skewdim/io.hpp"
#include "skewdim/measure.hpp"
#include "skewdim/skew_system.hpp"
#include "skewdim/symbolic.hpp"
#include "skewdim/util.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw skewdim::json_parse_error("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_config(const std::string& path) {
  json j = json::parse(read_text(path), nullptr, false);
  if (j.is_discarded()) throw skewdim::json_parse_error("malformed JSON config: " + path);
  if (!j.is_object()) throw skewdim::json_parse_error("config root must be an object");
  return j;
}

skewdim::SkewSystem system_of(const json& config) {
  auto it = config.find("system");
  if (it == config.end()) throw skewdim::json_parse_error("config needs a system object");
  return skewdim::skew_system_from_json(it->dump());
}

/// Section parameter with a default; missing sections are fine.
template <typename T>
T param(const json& config, const char* section, const char* key, T fallback) {
  auto sec = config.find(section);
  if (sec == config.end()) return fallback;
  auto it = sec->find(key);
  if (it == sec->end()) return fallback;
  return it->get<T>();
}

std::string variant_of(const json& config, const char* section) {
  return param<std::string>(config, section, "variant", "exact");
}

skewdim::SkewSystem apply_variant(const skewdim::SkewSystem& sys, const std::string& variant) {
  using Kind = skewdim::FiberProfile::Kind;
  if (variant == "exact") {
    if (sys.fiber().kind() != Kind::exact)
      throw std::invalid_argument("config system is a bounding variant; exact fiber unavailable");
    return sys;
  }
  if (variant == "upper")
    return sys.fiber().kind() == Kind::upper_const ? sys : skewdim::derive_upper(sys);
  if (variant == "lower")
    return sys.fiber().kind() == Kind::lower_const ? sys : skewdim::derive_lower(sys);
  throw skewdim::json_parse_error("variant must be \"exact\", \"upper\", or \"lower\"");
}

void emit(const Options& opt, const char* filename, const std::string& text, bool to_stdout) {
  skewdim::atomic_write_text(fs::path(opt.out_dir) / filename, text);
  if (to_stdout) std::cout << text;
}

int cmd_validate(const Options& opt) {
  json config = load_config(opt.config_path);
  skewdim::SkewSystem sys = system_of(config);
  skewdim::ValidationReport report = skewdim::validate_system(sys);

  json out;
  out["ok"] = report.ok();
  out["violations"] = report.violations;
  out["warnings"] = report.warnings;
  emit(opt, "validate.json", out.dump(2) + "\n", true);
  return report.ok() ? 0 : 1;
}

int cmd_cover(const Options& opt) {
  json config = load_config(opt.config_path);
  skewdim::SkewSystem sys = apply_variant(system_of(config), variant_of(config, "cover"));
  int depth = param(config, "cover", "depth", 6);
  int grid = param(config, "cover", "grid", 257);

  skewdim::AttractorCover cover = skewdim::build_cover(sys, depth, grid, opt.threads);
  emit(opt, "cover.csv", skewdim::cover_csv(cover), false);
  emit(opt, "cover.svg", skewdim::cover_svg(cover), false);
  std::cout << "wrote " << cover.bands.size() << " bands of height "
            << skewdim::format_double(cover.bands.empty() ? 0.0 : cover.bands.front().height)
            << " to " << opt.out_dir << "/cover.csv and cover.svg\n";
  return 0;
}

int cmd_dim(const Options& opt) {
  json config = load_config(opt.config_path);
  std::string variant = variant_of(config, "dim");
  skewdim::SkewSystem sys = apply_variant(system_of(config), variant);
  int p_min = param(config, "dim", "p_min", 4);
  int p_max = param(config, "dim", "p_max", 10);
  int grid = param(config, "dim", "grid", 257);
  if (p_min < 1 || p_max < p_min) throw std::invalid_argument("dim needs 1 <= p_min <= p_max");

  skewdim::require_valid(sys);
  std::vector<double> scales, counts;
  for (int p = p_min; p <= p_max; ++p) {
    skewdim::AttractorCover cover = skewdim::build_cover(sys, p, grid, opt.threads);
    double eps = skewdim::lambda_power(sys.lambda(), p);
    scales.push_back(eps);
    counts.push_back(static_cast<double>(skewdim::box_count_bands(cover, eps, opt.threads)));
  }
  skewdim::DimensionFit fit = skewdim::fit_dimension(scales, counts);

  json out;
  out["estimate"] = fit.slope;
  out["theory"] = skewdim::theoretical_dimension(sys.lambda());
  out["intercept"] = fit.intercept;
  out["r2"] = fit.r2;
  out["scales_used"] = fit.scales.size();
  out["scales"] = fit.scales;
  out["counts"] = fit.counts;
  out["p_min"] = p_min;
  out["p_max"] = p_max;
  out["grid"] = grid;
  out["variant"] = variant;
  emit(opt, "dim.json", out.dump(2) + "\n", true);
  emit(opt, "scales.csv", skewdim::scales_csv(fit), false);
  return 0;
}

json audit_json(const skewdim::InvarianceReport& report) {
  json j;
  j["tv_distance"] = report.tv_distance;
  j["dropped"] = report.dropped;
  j["n"] = report.n;
  return j;
}

int cmd_measure(const Options& opt) {
  if (!opt.seed_set) {
    std::cerr << "measure is stochastic: --seed is required\n";
    return 2;
  }
  json config = load_config(opt.config_path);
  skewdim::SkewSystem sys = system_of(config);
  std::size_t n = param<std::size_t>(config, "measure", "n", 100000);
  int depth = param(config, "measure", "depth", 14);
  double epsilon = param(config, "measure", "epsilon", 1.0 / 32.0);
  std::size_t centers = param<std::size_t>(config, "measure", "centers", 1000);
  int radii_count = param(config, "measure", "radii", 3);
  double beta = param(config, "measure", "beta", 0.5);

  skewdim::SkewSystem lower = apply_variant(sys, "lower");
  skewdim::EmpiricalMeasure mu_l =
      skewdim::sample_mu_l(lower, skewdim::Bernoulli::create(beta), n, depth, opt.seed, opt.threads);
  skewdim::EmpiricalMeasure mu = skewdim::pushforward_to_exact(sys, mu_l, opt.threads);
  skewdim::EmpiricalMeasure control = skewdim::sample_uniform_square(lower, n, opt.seed + 1);

  skewdim::InvarianceReport audit_lower = skewdim::invariance_audit(lower, mu_l, epsilon);
  skewdim::InvarianceReport audit_exact = skewdim::invariance_audit(sys, mu, epsilon);
  skewdim::InvarianceReport audit_control = skewdim::invariance_audit(lower, control, epsilon);

  std::vector<double> radii;
  for (int j = 1; j <= radii_count; ++j) radii.push_back(skewdim::lambda_power(sys.lambda(), j));
  skewdim::MeasureDimensionReport dim =
      skewdim::measure_dimension(mu.points, centers, radii, opt.seed, opt.threads);

  json out;
  out["n"] = n;
  out["depth"] = depth;
  out["seed"] = opt.seed;
  out["epsilon"] = epsilon;
  out["beta"] = beta;
  out["invariance_lower"] = audit_json(audit_lower);
  out["invariance_exact"] = audit_json(audit_exact);
  json control_json = audit_json(audit_control);
  control_json["flagged"] = audit_control.tv_distance > 0.3;
  out["negative_control"] = control_json;
  json dim_json;
  dim_json["median"] = dim.median;
  dim_json["iqr"] = dim.iqr;
  dim_json["centers_used"] = dim.centers_used;
  dim_json["centers_skipped"] = dim.centers_skipped;
  dim_json["theory"] = skewdim::theoretical_dimension(sys.lambda());
  out["dimension"] = dim_json;

  emit(opt, "measure_lower.csv", skewdim::measure_csv(mu_l), false);
  emit(opt, "measure_exact.csv", skewdim::measure_csv(mu), false);
  emit(opt, "measure.json", out.dump(2) + "\n", true);
  return 0;
}

int cmd_moran(const Options& opt) {
  json config = load_config(opt.config_path);
  std::vector<double> ratios;
  auto sec = config.find("moran");
  if (sec != config.end() && sec->contains("ratios"))
    ratios = sec->at("ratios").get<std::vector<double>>();
  else {
    skewdim::SkewSystem sys = system_of(config);
    ratios = {sys.lambda(), sys.lambda()};
  }

  double alpha = skewdim::moran_dimension(ratios);
  double sum = 0.0;
  for (double r : ratios) sum += std::pow(r, alpha);

  json out;
  out["alpha"] = alpha;
  out["ratios"] = ratios;
  out["residual"] = std::abs(sum - 1.0);
  emit(opt, "moran.json", out.dump(2) + "\n", true);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attractor covers, box-counting dimension, and invariant-measure audits\n"
               "for coupled-expanding skew products with affine fiber contraction."};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON config path")->required();
    cmd->add_option("--out", opt.out_dir, "output directory (default: out)");
    cmd->add_option("--seed", opt.seed, "RNG seed for stochastic commands");
    cmd->add_option("--threads", opt.threads, "worker threads, 0 = all cores");
  };

  CLI::App* validate = app.add_subcommand("validate", "check system hypotheses");
  CLI::App* cover = app.add_subcommand("cover", "write a depth-p band cover as CSV + SVG");
  CLI::App* dim = app.add_subcommand("dim", "box-counting dimension fit across scales");
  CLI::App* measure = app.add_subcommand("measure", "sample the invariant measure and audit it");
  CLI::App* moran = app.add_subcommand("moran", "solve the Moran equation for the fiber ratios");
  for (CLI::App* cmd : {validate, cover, dim, measure, moran}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  opt.seed_set = measure->count("--seed") > 0;

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (cover->parsed()) return cmd_cover(opt);
    if (dim->parsed()) return cmd_dim(opt);
    if (measure->parsed()) return cmd_measure(opt);
    return cmd_moran(opt);
  } catch (const skewdim::json_parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const skewdim::cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 10;
  }
}
