#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "csv.hpp"
#include "svmix/diagnostics.hpp"
#include "svmix/errors.hpp"
#include "svmix/mixture.hpp"
#include "svmix/rng.hpp"

namespace svmix::cli {

namespace fs = std::filesystem;

namespace {

std::string label_for(double beta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", beta);
  return buf;
}

std::vector<double> optional_cells(const ChainSummary& s) {
  return {s.mean, s.sd, s.lower, s.median, s.upper,
          s.inefficiency.value_or(std::numeric_limits<double>::quiet_NaN()), s.prob_positive};
}

// NaN is written as NA so the file stays parseable.
void summary_row(CsvWriter& w, const std::string& name, const ChainSummary& s) {
  std::vector<std::string> cells{name};
  for (double v : optional_cells(s)) cells.push_back(std::isnan(v) ? "NA" : format_double(v));
  w.cells(cells);
}

void write_config(const fs::path& dir, const std::string& text) {
  if (text.empty()) return;
  std::ofstream out(dir / "config.ini", std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + (dir / "config.ini").string() + "'");
  out << text;
}

std::vector<ModelKind> parse_models(const std::vector<std::string>& names) {
  std::vector<ModelKind> out;
  for (const auto& n : names) out.push_back(parse_model_kind(n));
  if (out.empty()) throw ConfigError("no model given");
  return out;
}

}  // namespace

void cmd_simulate(const SimulateOptions& opts) {
  if (opts.n == 0) throw ConfigError("n must be positive");
  SvmParams p;
  p.mu = opts.mu;
  p.phi = opts.phi;
  p.sigma2 = opts.sigma * opts.sigma;
  p.beta = opts.beta;
  p.rho = opts.rho;
  if (!(opts.sigma > 0.0)) throw ConfigError("sigma must be positive");
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  ensure_directory(opts.output_dir);
  Rng rng(opts.seed);
  const SimulatedSeries sim = simulate(p, opts.n, rng);

  CsvWriter data(opts.output_dir / "data.csv", {"t", "y"});
  CsvWriter truth(opts.output_dir / "truth.csv", {"t", "h"});
  for (std::size_t t = 0; t < opts.n; ++t) {
    data.row({static_cast<double>(t + 1), sim.y[t]});
    truth.row({static_cast<double>(t + 1), sim.h[t]});
  }
  data.close();
  truth.close();

  CsvWriter params(opts.output_dir / "truth_params.csv", {"name", "value"});
  params.row("mu", {p.mu});
  params.row("phi", {p.phi});
  params.row("sigma2", {p.sigma2});
  params.row("sigma", {opts.sigma});
  params.row("beta", {p.beta});
  if (p.rho) params.row("rho", {*p.rho});
  params.cells({"seed", std::to_string(opts.seed)});
  params.cells({"n", std::to_string(opts.n)});
  params.close();
}

void write_chain(const ChainOutput& chain, const fs::path& dir, bool record_timing) {
  ensure_directory(dir);
  const std::size_t g = chain.n_draws();
  {
    std::vector<std::string> header{"iter"};
    header.insert(header.end(), chain.param_names.begin(), chain.param_names.end());
    CsvWriter w(dir / "theta_draws.csv", header);
    std::vector<double> row(header.size());
    for (std::size_t i = 0; i < g; ++i) {
      row[0] = static_cast<double>(i + 1);
      for (std::size_t j = 0; j < chain.n_params(); ++j) row[j + 1] = chain.theta_at(i, j);
      w.row(row);
    }
    w.close();
  }
  if (!chain.h_indices.empty()) {
    std::vector<std::string> header{"iter"};
    for (std::size_t t : chain.h_indices) header.push_back("h_" + std::to_string(t));
    CsvWriter w(dir / "h_draws.csv", header);
    const std::size_t m = chain.h_indices.size();
    std::vector<double> row(m + 1);
    for (std::size_t i = 0; i < g; ++i) {
      row[0] = static_cast<double>(i + 1);
      for (std::size_t k = 0; k < m; ++k) row[k + 1] = chain.h_draws[i * m + k];
      w.row(row);
    }
    w.close();
  }
  if (!chain.h_paths.empty()) {
    const VolatilityBand band = volatility_band(chain.h_paths);
    CsvWriter w(dir / "h_band.csv", {"t", "lower", "median", "upper"});
    for (std::size_t t = 0; t < band.median.size(); ++t) {
      w.row({static_cast<double>(t + 1), band.lower[t], band.median[t], band.upper[t]});
    }
    w.close();
  }
  {
    CsvWriter w(dir / "summary.csv",
                {"quantity", "mean", "sd", "lower", "median", "upper", "inefficiency",
                 "prob_positive"});
    for (const auto& name : chain.param_names) summary_row(w, name, summarize(chain.column(name)));
    for (std::size_t k = 0; k < chain.h_indices.size(); ++k) {
      summary_row(w, "h_" + std::to_string(chain.h_indices[k]), summarize(chain.h_column(k)));
    }
    w.close();
  }
  {
    CsvWriter w(dir / "sampler.csv", {"key", "value"});
    w.cells({"model", std::string(to_string(chain.model))});
    w.cells({"algorithm", std::string(to_string(chain.algorithm))});
    w.cells({"seed", std::to_string(chain.seed)});
    w.cells({"stream", std::to_string(chain.stream)});
    w.cells({"n_draws", std::to_string(g)});
    w.cells({"alpha_proposals", std::to_string(chain.alpha_proposals)});
    w.cells({"alpha_accepted", std::to_string(chain.alpha_accepted)});
    w.row("alpha_acceptance_rate", {chain.alpha_acceptance_rate()});
    w.cells({"flat_proposals", std::to_string(chain.flat_proposals)});
    w.cells({"correction_proposals", std::to_string(chain.correction_proposals)});
    w.cells({"correction_accepted", std::to_string(chain.correction_accepted)});
    w.row("correction_acceptance_rate", {chain.correction_acceptance_rate()});
    w.close();
  }
  if (record_timing) {
    CsvWriter w(dir / "timing.csv", {"key", "value"});
    w.row("elapsed_seconds", {chain.elapsed_seconds});
    w.close();
  }
}

void cmd_fit(const FitOptions& opts) {
  opts.mcmc.validate(std::numeric_limits<std::size_t>::max());
  opts.priors.validate();
  if (opts.chains == 0) throw ConfigError("--chains must be positive");
  const std::vector<double> y = read_series(opts.data, opts.column);
  opts.mcmc.validate(y.size());
  ensure_directory(opts.output_dir);
  write_config(opts.output_dir, opts.resolved_config);

  const Rng root(opts.mcmc.seed);
  if (opts.chains == 1) {
    Rng rng = root;
    const ChainOutput chain = run_chain(y, opts.priors, opts.mcmc, rng);
    write_chain(chain, opts.output_dir, opts.record_timing);
    return;
  }
  const std::vector<ChainOutput> chains = run_chains(y, opts.priors, opts.mcmc, opts.chains, root);
  for (std::size_t k = 0; k < chains.size(); ++k) {
    write_chain(chains[k], opts.output_dir / ("chain_" + std::to_string(k + 1)), opts.record_timing);
  }
}

std::vector<MarglikResult> cmd_marglik(const MarglikOptions& opts) {
  if (opts.models.empty()) throw ConfigError("no model given");
  opts.priors.validate();
  opts.pf.validate();
  const std::vector<double> y = read_series(opts.data, opts.column);
  ensure_directory(opts.output_dir);
  write_config(opts.output_dir, opts.resolved_config);

  std::vector<MarglikResult> results;
  CsvWriter w(opts.output_dir / "marglik.csv",
              {"model", "log_marglik", "std_error", "loglik", "loglik_se", "log_prior",
               "log_posterior_ordinate", "ordinate_se", "mu", "phi", "sigma2", "beta", "rho"});
  const Rng root(opts.mcmc.seed);
  for (std::size_t m = 0; m < opts.models.size(); ++m) {
    McmcConfig cfg = opts.mcmc;
    cfg.model = opts.models[m];
    cfg.algorithm = Algorithm::ordinate;
    if (cfg.h_path_thin == 0) cfg.h_path_thin = 10;
    Rng chain_rng = root.split(2 * m);
    const ChainOutput chain = run_chain(y, opts.priors, cfg, chain_rng);
    write_chain(chain, opts.output_dir / std::string(to_string(cfg.model)), false);
    Rng ml_rng = root.split(2 * m + 1);
    const MarglikResult r = estimate_marglik(y, opts.priors, cfg, chain, opts.pf, opts.ord, ml_rng);
    const double recombined = r.loglik + r.log_prior - r.log_posterior_ordinate;
    if (recombined != r.log_marglik) {
      throw NumericalError("marginal likelihood components do not recombine");
    }
    std::vector<std::string> cells{std::string(to_string(cfg.model))};
    for (double v : {r.log_marglik, r.std_error, r.loglik, r.loglik_std_error, r.log_prior,
                     r.log_posterior_ordinate, r.ordinate_std_error, r.theta_star.mu,
                     r.theta_star.phi, r.theta_star.sigma2, r.theta_star.beta}) {
      cells.push_back(format_double(v));
    }
    cells.push_back(r.theta_star.rho ? format_double(*r.theta_star.rho) : "NA");
    w.cells(cells);
    std::printf("%-5s log m(y) = %.3f (%.3f)  [loglik %.3f + prior %.3f - posterior %.3f]\n",
                std::string(to_string(cfg.model)).c_str(), r.log_marglik, r.std_error, r.loglik,
                r.log_prior, r.log_posterior_ordinate);
    results.push_back(r);
  }
  w.close();
  return results;
}

void cmd_report_data(const ReportOptions& opts) {
  ensure_directory(opts.output_dir);

  for (double beta : opts.density_betas) {
    const MixtureGrid grid = build_grid(beta);
    CsvWriter w(opts.output_dir / ("density_beta_" + label_for(beta) + ".csv"),
                {"u", "exact", "approx", "diff"});
    for (int i = 0; i <= 2000; ++i) {
      const double u = -15.0 + 0.01 * i;
      const double exact = exact_log_chisq1_density(u, beta * beta);
      const double approx = approx_density(u, grid);
      w.row({u, exact, approx, exact - approx});
    }
    w.close();
  }

  const Table theta = read_table(opts.fit_dir / "theta_draws.csv");
  Table trace = theta;
  const fs::path h_path = opts.fit_dir / "h_draws.csv";
  if (fs::exists(h_path)) {
    const Table h = read_table(h_path);
    if (h.rows.size() != theta.rows.size()) {
      throw DataError("'" + h_path.string() + "' and theta_draws.csv differ in length");
    }
    trace.header.insert(trace.header.end(), h.header.begin() + 1, h.header.end());
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
      trace.rows[i].insert(trace.rows[i].end(), h.rows[i].begin() + 1, h.rows[i].end());
    }
  }
  {
    CsvWriter w(opts.output_dir / "trace.csv", trace.header);
    for (const auto& r : trace.rows) w.row(r);
    w.close();
  }
  {
    std::vector<std::string> header{"lag"};
    std::vector<std::vector<double>> acfs;
    for (std::size_t j = 1; j < trace.header.size(); ++j) {
      header.push_back(trace.header[j]);
      acfs.push_back(autocorrelation(trace.column(trace.header[j]), opts.max_lag));
    }
    CsvWriter w(opts.output_dir / "acf.csv", header);
    for (std::size_t lag = 0; lag <= opts.max_lag; ++lag) {
      std::vector<std::string> cells{std::to_string(lag)};
      for (const auto& a : acfs) cells.push_back(lag < a.size() ? format_double(a[lag]) : "NA");
      w.cells(cells);
    }
    w.close();
  }

  const fs::path band_path = opts.fit_dir / "h_band.csv";
  if (!fs::exists(band_path)) {
    throw DataError("'" + band_path.string() + "' not found; fit with --h-thin > 0");
  }
  const Table band = read_table(band_path);
  const std::vector<double> y = read_series(opts.data, opts.column);
  if (y.size() != band.rows.size()) {
    throw DataError("data has " + std::to_string(y.size()) + " rows but the band has " +
                    std::to_string(band.rows.size()));
  }
  double beta_hat = 0.0;
  if (std::find(theta.header.begin(), theta.header.end(), "beta") != theta.header.end()) {
    const std::vector<double> b = theta.column("beta");
    for (double v : b) beta_hat += v;
    beta_hat /= static_cast<double>(b.size());
  }
  Rng rng(opts.seed);
  const std::vector<double> proxy =
      volatility_proxy(y, beta_hat, opts.n_mc, rng, opts.half_width, opts.offset);
  CsvWriter w(opts.output_dir / "band.csv", {"t", "lower", "median", "upper", "proxy"});
  const std::size_t lo = band.column_index("lower");
  const std::size_t md = band.column_index("median");
  const std::size_t up = band.column_index("upper");
  for (std::size_t t = 0; t < y.size(); ++t) {
    const auto& r = band.rows[t];
    w.row({static_cast<double>(t + 1), r[lo], r[md], r[up], proxy[t]});
  }
  w.close();
}

namespace {

void add_prior_options(CLI::App* sub, PriorSpec& p) {
  sub->add_option("--mu-mean", p.mu_mean, "prior mean of mu")->capture_default_str();
  sub->add_option("--mu-var", p.mu_var, "prior variance of mu")->capture_default_str();
  sub->add_option("--phi-a", p.phi_a, "Beta prior a for (phi+1)/2")->capture_default_str();
  sub->add_option("--phi-b", p.phi_b, "Beta prior b for (phi+1)/2")->capture_default_str();
  sub->add_option("--sigma2-n0", p.sigma2_n0, "IG prior n0 for sigma^2")->capture_default_str();
  sub->add_option("--sigma2-s0", p.sigma2_s0, "IG prior S0 for sigma^2")->capture_default_str();
  sub->add_option("--beta-mean", p.beta_mean, "prior mean of beta")->capture_default_str();
  sub->add_option("--beta-var", p.beta_var, "prior variance of beta")->capture_default_str();
}

void add_mcmc_options(CLI::App* sub, McmcConfig& m) {
  sub->add_option("--burnin", m.n_burnin, "burn-in iterations")->capture_default_str();
  sub->add_option("--draws", m.n_draws, "retained iterations")->capture_default_str();
  sub->add_option("--seed", m.seed, "random seed")->capture_default_str();
  sub->add_option("-J,--truncation", m.truncation, "Poisson truncation order J")
      ->capture_default_str();
  sub->add_option("-c,--offset", m.offset, "offset c in log(y^2 + c)")->capture_default_str();
  sub->add_option("--c0", m.flat_proposal_scale, "flat proposal variance c0")
      ->capture_default_str();
  sub->add_option("--h-thin", m.h_path_thin, "keep every k-th full h path (0 = none)")
      ->capture_default_str();
}

std::string strip(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

// Arguments after the subcommand name with the keys of its --config file
// spliced in front of the user's own flags. Keys the user passed explicitly
// are dropped so the flags win.
std::vector<std::string> expand_config(CLI::App& app, int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::size_t sub_pos = args.size();
  CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] == '-') continue;
    sub = app.get_subcommand_no_throw(args[i]);
    sub_pos = i;
    break;
  }
  if (sub == nullptr) return args;

  std::string path;
  std::vector<std::string> user;
  for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      user.push_back(args[i]);
    }
  }
  if (path.empty()) return args;

  std::set<const CLI::Option*> given;
  for (const auto& a : user) {
    if (a.size() < 2 || a[0] != '-') continue;
    const std::string name = a.substr(0, a.find('='));
    if (const CLI::Option* o = sub->get_option_no_throw(name)) given.insert(o);
  }

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = strip(line);
    if (t.empty() || t[0] == '#' || t[0] == ';' || t[0] == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = strip(t.substr(0, eq));
    std::string value = strip(t.substr(eq + 1));
    if (key == "config") continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (given.count(opt)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1") injected.push_back("--" + key);
      continue;
    }
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = value.substr(1, value.size() - 2);
      value.erase(std::remove(value.begin(), value.end(), ' '), value.end());
      value.erase(std::remove(value.begin(), value.end(), '"'), value.end());
      if (value.empty()) continue;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }

  std::vector<std::string> out(args.begin(), args.begin() + static_cast<long>(sub_pos) + 1);
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), user.begin(), user.end());
  return out;
}

// The subcommand's resolved options as key=value lines. The output directory
// is left out so the file is identical wherever the run is written.
std::string resolved_config(const CLI::App& sub) {
  std::istringstream in(sub.config_to_str(true, false));
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("config=", 0) == 0 || line.rfind("output-dir=", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

CLI::Option* add_output_dir(CLI::App* sub, fs::path& dir) {
  return sub->add_option("-o,--output-dir", dir, "output directory")
      ->envname("SVMIX_OUTPUT_DIR")
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  std::string config_path;
  CLI::App app{"Stochastic volatility in mean: simulation, mixture-sampler MCMC and marginal likelihood",
               "svmix"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "svmix 0.1.0");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "simulate a series from the SVM(L) model");
  sim_cmd->add_option("--config", config_path, "key=value config file; flags override its keys");
  sim_cmd->add_option("-n,--n", sim.n, "series length")->capture_default_str();
  sim_cmd->add_option("--mu", sim.mu)->capture_default_str();
  sim_cmd->add_option("--phi", sim.phi)->capture_default_str();
  sim_cmd->add_option("--sigma", sim.sigma)->capture_default_str();
  sim_cmd->add_option("--beta", sim.beta)->capture_default_str();
  double sim_rho = 0.0;
  auto* rho_opt = sim_cmd->add_option("--rho", sim_rho, "leverage correlation (omit for none)");
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  add_output_dir(sim_cmd, sim.output_dir);

  FitOptions fit;
  fit.mcmc.h_path_thin = 10;
  std::string fit_model = "svm";
  std::string fit_alg = "gms";
  auto* fit_cmd = app.add_subcommand("fit", "run the MCMC sampler");
  fit_cmd->add_option("--config", config_path, "key=value config file; flags override its keys");
  fit_cmd->add_option("--data", fit.data, "delimited data file")->required();
  fit_cmd->add_option("--column", fit.column, "column name (optional for one-column files)");
  fit_cmd->add_option("--model", fit_model, "sv, svm, svl or svml")->capture_default_str();
  fit_cmd->add_option("--algorithm", fit_alg, "gms, gmh, svml or ordinate")->capture_default_str();
  add_mcmc_options(fit_cmd, fit.mcmc);
  fit_cmd->add_option("--h-index", fit.mcmc.h_indices, "1-based times whose h draws are stored")
      ->delimiter(',');
  bool no_correction = false;
  fit_cmd->add_flag("--no-correction", no_correction, "skip the leverage correction step (svml)");
  fit_cmd->add_option("--chains", fit.chains, "independent chains")->capture_default_str();
  fit_cmd->add_flag("--record-timing", fit.record_timing, "write wall-clock seconds to timing.csv");
  add_prior_options(fit_cmd, fit.priors);
  add_output_dir(fit_cmd, fit.output_dir);

  MarglikOptions ml;
  ml.mcmc.h_path_thin = 10;
  std::vector<std::string> ml_models{"svm"};
  std::string ml_resampling = "systematic";
  auto* ml_cmd = app.add_subcommand("marglik", "log marginal likelihood per model");
  ml_cmd->add_option("--config", config_path, "key=value config file; flags override its keys");
  ml_cmd->add_option("--data", ml.data, "delimited data file")->required();
  ml_cmd->add_option("--column", ml.column, "column name");
  ml_cmd->add_option("--models", ml_models, "comma-separated models")->delimiter(',')
      ->capture_default_str();
  add_mcmc_options(ml_cmd, ml.mcmc);
  ml_cmd->add_option("--particles", ml.pf.n_particles, "particles per filter run")
      ->capture_default_str();
  ml_cmd->add_option("--resampling", ml_resampling, "systematic or multinomial")
      ->capture_default_str();
  ml_cmd->add_option("--pf-reps", ml.ord.pf_replications, "particle-filter replications")
      ->capture_default_str();
  ml_cmd->add_option("--ordinate-draws", ml.ord.n_proposal_draws, "proposal draws for the ordinate")
      ->capture_default_str();
  ml_cmd->add_option("--reduced-burnin", ml.ord.reduced_burnin, "h-step burn-in at theta*")
      ->capture_default_str();
  ml_cmd->add_option("--batches", ml.ord.n_batches, "batches for the standard error")
      ->capture_default_str();
  add_prior_options(ml_cmd, ml.priors);
  add_output_dir(ml_cmd, ml.output_dir);

  ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report-data", "plot-ready files from a fit");
  rep_cmd->add_option("--config", config_path, "key=value config file; flags override its keys");
  rep_cmd->add_option("--fit-dir", rep.fit_dir, "output directory of a fit")->required();
  rep_cmd->add_option("--data", rep.data, "data file used by the fit")->required();
  rep_cmd->add_option("--column", rep.column, "column name");
  rep_cmd->add_option("--betas", rep.density_betas, "beta values for density grids")
      ->delimiter(',')->capture_default_str();
  rep_cmd->add_option("--max-lag", rep.max_lag)->capture_default_str();
  rep_cmd->add_option("--n-mc", rep.n_mc, "draws for E[log chi^2]")->capture_default_str();
  rep_cmd->add_option("--half-width", rep.half_width)->capture_default_str();
  rep_cmd->add_option("-c,--offset", rep.offset)->capture_default_str();
  rep_cmd->add_option("--seed", rep.seed)->capture_default_str();
  add_output_dir(rep_cmd, rep.output_dir);

  try {
    std::vector<std::string> args = expand_config(app, argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (sim_cmd->parsed()) {
      if (rho_opt->count() > 0) sim.rho = sim_rho;
      cmd_simulate(sim);
    } else if (fit_cmd->parsed()) {
      fit.mcmc.model = parse_model_kind(fit_model);
      fit.mcmc.algorithm = parse_algorithm(fit_alg);
      fit.mcmc.leverage_correction = !no_correction;
      fit.resolved_config = resolved_config(*fit_cmd);
      cmd_fit(fit);
    } else if (ml_cmd->parsed()) {
      ml.models = parse_models(ml_models);
      ml.pf.resampling = parse_resampling(ml_resampling);
      ml.resolved_config = resolved_config(*ml_cmd);
      cmd_marglik(ml);
    } else if (rep_cmd->parsed()) {
      cmd_report_data(rep);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace svmix::cli
