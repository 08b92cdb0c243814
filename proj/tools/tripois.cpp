// Command-line front end. Exit codes: 0 ok, 1 verification failure,
// 2 input error, 3 quadrature non-convergence, 4 I/O error.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tripois/error.hpp"
#include "tripois/experiments.hpp"
#include "tripois/kappa.hpp"
#include "tripois/serialization.hpp"
#include "tripois/svg.hpp"
#include "tripois/verify.hpp"

namespace fs = std::filesystem;
using namespace tripois;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInput = 2, kNoConvergence = 3, kIo = 4 };

struct Options {
  int threads = 0;

  std::string measure_file;
  std::string method = "quad";
  double tol = 1e-10;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;

  std::string region_file;
  std::vector<double> powers;

  std::string config_file;
  std::string out_dir;

  std::vector<double> betas;
  std::string pi_method = "conditional";

  std::string suite = "core";
  std::uint64_t verify_seed = 42;
  bool inject_fault = false;

  std::string result_dir;
  std::string kind = "hist";
  double alpha = 2.0;
};

int cmd_kappa(const Options& o) {
  const Json echo = read_json_file(o.measure_file);
  const Measure m = measure_from_json(echo);
  std::vector<KappaEstimate> est;
  const bool all = o.method == "all";
  std::optional<KappaEstimate> quad, mc, closed;
  if (all || o.method == "closed") {
    closed = kappa_closed_form(m);
    if (!closed && !all) throw InputError("measure: no closed form for this kind of measure");
  }
  if (all || o.method == "quad") quad = kappa_quadrature(m, o.tol);
  if (all || o.method == "mc") mc = kappa_monte_carlo(m, o.samples, RngStream(o.seed, 0), o.threads);
  if (!all) {
    const KappaEstimate& k = quad ? *quad : mc ? *mc : *closed;
    std::cout << kappa_to_json(k, echo).dump(2) << '\n';
    return kOk;
  }
  Json out{{"measure", echo}, {"estimates", Json::array()}};
  for (const auto* k : {&quad, &mc, &closed}) {
    if (*k) {
      out["estimates"].push_back(
          {{"kappa", (*k)->value}, {"se", (*k)->standard_error}, {"method", to_string((*k)->method)}});
    }
  }
  Json agree;
  const double z = std::abs(mc->value - quad->value) / mc->standard_error;
  agree["quadrature_vs_monte_carlo_se"] = z;
  bool ok = z <= 3.0;
  if (closed) {
    const double r = std::abs(closed->value - quad->value) / quad->value;
    agree["quadrature_vs_closed_form_rel"] = r;
    ok = ok && r <= 1e-5;
  }
  agree["agree"] = ok;
  out["agreement"] = agree;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_crofton(const Options& o) {
  const Region s = region_from_json(read_json_file(o.region_file));
  for (double p : o.powers) {
    if (!(p > 0.0)) throw InputError("p: must be positive");
  }
  std::ostringstream out;
  out << "p,I\n";
  for (double p : o.powers) {
    out << format_double(p) << ',' << format_double(crofton_integral(s, p, o.tol)) << '\n';
  }
  std::cout << out.str();
  return kOk;
}

int cmd_simulate(const Options& o) {
  const SimConfig cfg = config_from_json(read_json_file(o.config_file));
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec || !fs::is_directory(o.out_dir)) throw IoError("cannot create " + o.out_dir);

  const SimResult result = run_simulation(cfg, o.threads);
  const double kappa = kappa_best(cfg.measure, 1e-8).value;
  const SimSummary summary = summarize(result, kappa);

  TheoremBounds bounds;
  const double n3 = std::pow(static_cast<double>(cfg.n), 3);
  const double c3 = n3 * (1.0 - 1.0 / cfg.n) * (1.0 - 2.0 / cfg.n) / 6.0;
  const RngStream pi_rng(splitmix64(cfg.seed), 1);
  for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
    const auto pe = estimate_pi(cfg.measure, cfg.alphas[a] / n3, 100000, pi_rng.substream(a),
                                PiMethod::kConditional, o.threads);
    const double lambda = c3 * pe.pi.value;
    const double n5 = std::pow(static_cast<double>(cfg.n), 5);
    const double mn = std::max(4.0 * lambda, 6.0 * n5 * pe.pi2.value);
    bounds.lambda_hat.push_back(lambda);
    bounds.chen_stein.push_back(lambda > 0.0 ? chen_stein_bound(cfg.n, cfg.alphas[a], pe.pi2, lambda) : 0.0);
    bounds.tail_bound.push_back(mn > 0.0 ? std::exp(-lambda * lambda / mn) : 1.0);
  }

  std::ostringstream csv;
  write_replicates_csv(csv, result);
  write_text_file(fs::path(o.out_dir) / "replicates.csv", csv.str());
  write_text_file(fs::path(o.out_dir) / "summary.json",
                  summary_to_json(result, summary, bounds).dump(2) + "\n");

  std::cout << "implied kappa " << format_double(summary.implied_kappa) << " (limit "
            << format_double(kappa) << "), KS D " << format_double(summary.ks.d);
  for (const auto& pa : summary.per_alpha) {
    std::cout << ", TV alpha=" << pa.alpha << ' ' << format_double(pa.tv_to_poisson);
  }
  std::cout << '\n';
  return kOk;
}

int cmd_pi(const Options& o) {
  const Measure m = measure_from_json(read_json_file(o.measure_file));
  const PiMethod method = o.pi_method == "indicator" ? PiMethod::kIndicator : PiMethod::kConditional;
  std::ostringstream out;
  out << "beta,pi,pi_se,pi1,pi1_se,pi2,pi2_se\n";
  for (std::size_t i = 0; i < o.betas.size(); ++i) {
    const auto pe = estimate_pi(m, o.betas[i], o.samples, RngStream(o.seed, i), method, o.threads);
    out << format_double(pe.beta);
    for (const Estimate& e : {pe.pi, pe.pi1, pe.pi2}) {
      out << ',' << format_double(e.value) << ',' << format_double(e.se);
    }
    out << '\n';
  }
  std::cout << out.str();
  return kOk;
}

int cmd_verify(const Options& o) {
  VerifyOptions vo;
  vo.extended = o.suite == "extended";
  vo.seed = o.verify_seed;
  vo.threads = o.threads;
  if (o.inject_fault) vo.closed_form_scale = 1.01;
  return run_verify(vo, std::cout).all_pass() ? kOk : kVerifyFailed;
}

int cmd_plot(const Options& o) {
  const fs::path dir(o.result_dir);
  const fs::path summary_file = dir / "summary.json";
  const fs::path csv_file = dir / "replicates.csv";
  if (!fs::exists(summary_file) || !fs::exists(csv_file)) {
    throw IoError("no simulation results in " + dir.string());
  }
  const Json summary = read_json_file(summary_file);
  const SimConfig cfg = config_from_json(summary.at("config"));
  std::ifstream in(csv_file);
  if (!in) throw IoError("cannot open " + csv_file.string());
  const SimResult result = read_replicates_csv(in, cfg);
  const double kappa = summary.at("kappa").get<double>();

  std::string svg_text;
  if (o.kind == "hist") {
    svg_text = svg::histogram(result.scaled(0), kappa);
  } else if (o.kind == "qq") {
    svg_text = svg::qq(result.scaled(0), kappa);
  } else {
    const auto it = std::find(cfg.alphas.begin(), cfg.alphas.end(), o.alpha);
    if (it == cfg.alphas.end()) throw InputError("alpha: not one of the simulated values");
    const auto counts = result.counts(static_cast<std::size_t>(it - cfg.alphas.begin()));
    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    svg_text = svg::counts(counts, mean / static_cast<double>(counts.size()));
  }
  const fs::path out = dir / (o.kind + ".svg");
  write_text_file(out, svg_text);
  std::cout << out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smallest random triangles: intensity constants and simulations"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (default: TRIPOIS_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* kappa = app.add_subcommand("kappa", "Intensity of a measure");
  kappa->add_option("measure", o.measure_file, "Measure JSON file")->required();
  kappa->add_option("--method", o.method)->check(CLI::IsMember({"quad", "mc", "closed", "all"}));
  kappa->add_option("--tol", o.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
  kappa->add_option("--samples", o.samples, "Monte Carlo pairs")->check(CLI::Range(1000.0, 1e12));
  kappa->add_option("--seed", o.seed);

  auto* crofton = app.add_subcommand("crofton", "Integral over lines of chord length powers");
  crofton->add_option("region", o.region_file, "Region JSON file")->required();
  crofton->add_option("--p", o.powers, "Powers")->required()->delimiter(',');
  crofton->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Replicated smallest-triangle simulation");
  simulate->add_option("config", o.config_file, "Simulation config JSON file")->required();
  simulate->add_option("--out", o.out_dir, "Output directory")->required();

  auto* pi = app.add_subcommand("pi", "Small-triangle probabilities");
  pi->add_option("measure", o.measure_file, "Measure JSON file")->required();
  pi->add_option("--beta", o.betas, "Area thresholds")->required()->delimiter(',')
      ->check(CLI::PositiveNumber);
  pi->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  pi->add_option("--seed", o.seed);
  pi->add_option("--method", o.pi_method)->check(CLI::IsMember({"conditional", "indicator"}));

  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"core", "extended"}));
  verify->add_option("--seed", o.verify_seed);
  verify->add_flag("--inject-fault", o.inject_fault)->group("");

  auto* plot = app.add_subcommand("plot", "SVG plots of a simulation directory");
  plot->add_option("results", o.result_dir, "Directory written by simulate")->required();
  plot->add_option("--kind", o.kind)->check(CLI::IsMember({"hist", "qq", "counts"}));
  plot->add_option("--alpha", o.alpha, "Threshold for --kind counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*kappa) return cmd_kappa(o);
    if (*crofton) return cmd_crofton(o);
    if (*simulate) return cmd_simulate(o);
    if (*pi) return cmd_pi(o);
    if (*verify) return cmd_verify(o);
    if (*plot) return cmd_plot(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const NonConvergence& e) {
    std::cerr << "no convergence: " << e.what() << " (best " << e.best_estimate()
              << ", error " << e.achieved_error() << ")\n";
    return kNoConvergence;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kInput;
}
