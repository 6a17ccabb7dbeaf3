#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "svmix/marginal_likelihood.hpp"
#include "svmix/model.hpp"
#include "svmix/particle_filter.hpp"
#include "svmix/samplers.hpp"

namespace svmix::cli {

struct SimulateOptions {
  std::size_t n = 1000;
  double mu = 0.0;
  double phi = 0.97;
  double sigma = 0.3;
  double beta = 0.5;
  std::optional<double> rho;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
};

struct FitOptions {
  std::filesystem::path data;
  std::string column;
  McmcConfig mcmc;
  PriorSpec priors;
  std::size_t chains = 1;
  bool record_timing = false;
  std::filesystem::path output_dir = ".";
  std::string resolved_config;  // written verbatim as config.ini
};

struct MarglikOptions {
  std::filesystem::path data;
  std::string column;
  std::vector<ModelKind> models;
  McmcConfig mcmc;  // model field is overridden per entry of `models`
  PriorSpec priors;
  PfConfig pf;
  OrdinateConfig ord;
  std::filesystem::path output_dir = ".";
  std::string resolved_config;
};

struct ReportOptions {
  std::filesystem::path fit_dir;
  std::filesystem::path data;
  std::string column;
  std::vector<double> density_betas{0.3, 0.5, 0.7};
  std::size_t max_lag = 500;
  std::size_t n_mc = 1000000;
  std::size_t half_width = 10;
  double offset = kDefaultOffset;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
};

void cmd_simulate(const SimulateOptions& opts);
void cmd_fit(const FitOptions& opts);
std::vector<MarglikResult> cmd_marglik(const MarglikOptions& opts);
void cmd_report_data(const ReportOptions& opts);

// Writes one chain's files into dir.
void write_chain(const ChainOutput& chain, const std::filesystem::path& dir, bool record_timing);

// Parses argv and dispatches. Returns the process exit code: 0 success,
// 2 configuration error, 3 data error, 4 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace svmix::cli
