#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "csv.hpp"
#include "svmix/diagnostics.hpp"

namespace fs = std::filesystem;
using namespace svmix;
using namespace svmix::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("svmix_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "svmix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void expect_same_tree(const fs::path& a, const fs::path& b) {
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a);
    ASSERT_TRUE(fs::exists(b / rel)) << rel;
    EXPECT_EQ(slurp(e.path()), slurp(b / rel)) << rel;
    ++files;
  }
  EXPECT_GT(files, 0u);
}

// simulated dataset shared by several tests
fs::path dataset(std::size_t n, double beta, const std::string& name) {
  const fs::path dir = scratch(name);
  EXPECT_EQ(run({"simulate", "-n", std::to_string(n), "--beta", std::to_string(beta), "--seed", "3",
                 "-o", dir.string()}),
            0);
  return dir;
}

}  // namespace

TEST(Cli, SimulateWritesSeriesAndTruth) {
  const fs::path d = dataset(25, 0.3, "sim");
  EXPECT_EQ(line_count(d / "data.csv"), 26u);
  EXPECT_EQ(line_count(d / "truth.csv"), 26u);
  const std::string params = slurp(d / "truth_params.csv");
  EXPECT_NE(params.find("seed,3"), std::string::npos);
  EXPECT_NE(params.find("n,25"), std::string::npos);
  EXPECT_EQ(read_series(d / "data.csv", "y").size(), 25u);
}

TEST(Cli, SimulateSingleObservation) {
  const fs::path d = scratch("sim1");
  ASSERT_EQ(run({"simulate", "-n", "1", "-o", d.string()}), 0);
  EXPECT_EQ(line_count(d / "data.csv"), 2u);
  EXPECT_EQ(line_count(d / "truth.csv"), 2u);
}

TEST(Cli, SimulateIsDeterministic) {
  const fs::path a = scratch("simdet_a"), b = scratch("simdet_b");
  ASSERT_EQ(run({"simulate", "-n", "200", "--rho", "-0.4", "--seed", "9", "-o", a.string()}), 0);
  ASSERT_EQ(run({"simulate", "-n", "200", "--rho", "-0.4", "--seed", "9", "-o", b.string()}), 0);
  expect_same_tree(a, b);
}

TEST(Cli, FitIsDeterministic) {
  const fs::path d = dataset(120, 0.5, "fitdet_data");
  const fs::path a = scratch("fitdet_a"), b = scratch("fitdet_b");
  for (const fs::path& out : {a, b}) {
    ASSERT_EQ(run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--model", "svm",
                   "--algorithm", "gmh", "--burnin", "20", "--draws", "60", "--h-index", "10,60",
                   "--seed", "4", "-o", out.string()}),
              0);
  }
  expect_same_tree(a, b);
  for (const char* f : {"theta_draws.csv", "h_draws.csv", "h_band.csv", "summary.csv",
                        "sampler.csv", "config.ini"}) {
    EXPECT_TRUE(fs::exists(a / f)) << f;
  }
  EXPECT_FALSE(fs::exists(a / "timing.csv"));
  EXPECT_EQ(line_count(a / "theta_draws.csv"), 61u);
}

TEST(Cli, SummaryRoundTripsExactly) {
  const fs::path d = dataset(100, 0.5, "rt_data");
  const fs::path out = scratch("rt_fit");
  ASSERT_EQ(run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--burnin", "10",
                 "--draws", "80", "--h-index", "5", "-o", out.string()}),
            0);
  const Table theta = read_table(out / "theta_draws.csv");
  const Table h = read_table(out / "h_draws.csv");
  const std::vector<std::string> summary_lines = [&] {
    std::vector<std::string> v;
    std::istringstream in(slurp(out / "summary.csv"));
    for (std::string line; std::getline(in, line);) v.push_back(line);
    return v;
  }();
  auto check = [&](const std::string& name, const std::vector<double>& col) {
    const ChainSummary s = summarize(col);
    std::string want = name;
    for (double v : {s.mean, s.sd, s.lower, s.median, s.upper}) want += "," + format_double(v);
    want += "," + (s.inefficiency ? format_double(*s.inefficiency) : std::string("NA"));
    want += "," + format_double(s.prob_positive);
    EXPECT_NE(std::find(summary_lines.begin(), summary_lines.end(), want), summary_lines.end())
        << want;
  };
  for (const char* name : {"mu", "phi", "sigma2", "sigma", "beta"}) check(name, theta.column(name));
  check("h_5", h.column("h_5"));
}

TEST(Cli, RecordTimingIsOptIn) {
  const fs::path d = dataset(50, 0.3, "timing_data");
  const fs::path out = scratch("timing_fit");
  ASSERT_EQ(run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--burnin", "2",
                 "--draws", "5", "--record-timing", "-o", out.string()}),
            0);
  EXPECT_NE(slurp(out / "timing.csv").find("elapsed_seconds,"), std::string::npos);
}

TEST(Cli, MissingFileIsDataError) {
  const fs::path out = scratch("missing");
  const std::string path = (out / "nope.csv").string();
  testing::internal::CaptureStderr();
  const int code = run({"fit", "--data", path, "-o", out.string()});
  const std::string err = testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, 3);
  EXPECT_NE(err.find(path), std::string::npos) << err;
}

TEST(Cli, NonFiniteRowIsNamed) {
  const fs::path dir = scratch("nan");
  {
    std::ofstream f(dir / "y.csv");
    f << "y\n0.1\n-0.3\nnan\n0.5\n";
  }
  testing::internal::CaptureStderr();
  const int code = run({"fit", "--data", (dir / "y.csv").string(), "-o", dir.string()});
  const std::string err = testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, 3);
  EXPECT_NE(err.find("row 3"), std::string::npos) << err;
}

TEST(Cli, IncompatibleModelAndAlgorithm) {
  const fs::path d = dataset(30, 0.3, "mismatch");
  testing::internal::CaptureStderr();
  const int code = run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--model",
                        "svl", "--algorithm", "gms", "-o", d.string()});
  const std::string err = testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, 2);
  EXPECT_NE(err.find("svl"), std::string::npos);
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"fit", "--data", (d / "data.csv").string(), "--model", "garch"}), 2);
  testing::internal::GetCapturedStderr();
}

TEST(Cli, ParallelChainsGetOwnDirectories) {
  const fs::path d = dataset(60, 0.3, "chains_data");
  const fs::path out = scratch("chains_fit");
  ASSERT_EQ(run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--burnin", "5",
                 "--draws", "10", "--chains", "3", "-o", out.string()}),
            0);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_TRUE(fs::exists(out / ("chain_" + std::to_string(k)) / "theta_draws.csv"));
  }
  EXPECT_NE(slurp(out / "chain_1" / "theta_draws.csv"), slurp(out / "chain_2" / "theta_draws.csv"));
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path d = dataset(40, 0.3, "env_data");
  const fs::path out = scratch("env_out");
  ::setenv("SVMIX_OUTPUT_DIR", out.string().c_str(), 1);
  const int code = run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--burnin",
                        "2", "--draws", "4"});
  ::unsetenv("SVMIX_OUTPUT_DIR");
  ASSERT_EQ(code, 0);
  EXPECT_TRUE(fs::exists(out / "theta_draws.csv"));
}

TEST(Cli, ConfigFileWithOverride) {
  const fs::path d = dataset(80, 0.3, "cfg_data");
  const fs::path a = scratch("cfg_a"), b = scratch("cfg_b"), c = scratch("cfg_c");
  {
    std::ofstream f(a / "run.ini");
    f << "# fit settings\ndata=" << (d / "data.csv").string()
      << "\ncolumn=y\nburnin=5\ndraws=15\nseed=8\nh-index=[3, 40]\n";
  }
  ASSERT_EQ(run({"fit", "--config", (a / "run.ini").string(), "-o", a.string()}), 0);
  // the resolved config reproduces the run
  ASSERT_EQ(run({"fit", "--config", (a / "config.ini").string(), "-o", b.string()}), 0);
  EXPECT_EQ(slurp(a / "theta_draws.csv"), slurp(b / "theta_draws.csv"));
  EXPECT_EQ(line_count(a / "theta_draws.csv"), 16u);
  EXPECT_TRUE(fs::exists(a / "h_draws.csv"));
  // flags win over file keys
  ASSERT_EQ(run({"fit", "--config", (a / "run.ini").string(), "--draws", "7", "-o", c.string()}), 0);
  EXPECT_EQ(line_count(c / "theta_draws.csv"), 8u);
  {
    std::ofstream f(a / "bad.ini");
    f << "data=" << (d / "data.csv").string() << "\nbogus_key=1\n";
  }
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"fit", "--config", (a / "bad.ini").string(), "-o", a.string()}), 2);
  testing::internal::GetCapturedStderr();
}

TEST(Cli, ReportDataSchemas) {
  const fs::path d = dataset(150, 0.5, "rep_data");
  const fs::path fit = scratch("rep_fit");
  ASSERT_EQ(run({"fit", "--data", (d / "data.csv").string(), "--column", "y", "--burnin", "20",
                 "--draws", "200", "--h-index", "50", "--h-thin", "5", "-o", fit.string()}),
            0);
  const fs::path out = scratch("rep_out");
  ASSERT_EQ(run({"report-data", "--fit-dir", fit.string(), "--data", (d / "data.csv").string(),
                 "--column", "y", "--max-lag", "30", "--n-mc", "20000", "-o", out.string()}),
            0);
  for (const char* b : {"0.3", "0.5", "0.7"}) {
    const Table t = read_table(out / (std::string("density_beta_") + b + ".csv"));
    EXPECT_EQ(t.header, (std::vector<std::string>{"u", "exact", "approx", "diff"}));
    ASSERT_EQ(t.rows.size(), 2001u);
    EXPECT_NEAR(t.rows.front()[0], -15.0, 1e-12);
    EXPECT_NEAR(t.rows.back()[0], 5.0, 1e-9);
    for (const auto& r : t.rows) EXPECT_NEAR(r[3], r[1] - r[2], 1e-15);
  }
  const Table trace = read_table(out / "trace.csv");
  EXPECT_EQ(trace.rows.size(), 200u);
  EXPECT_EQ(trace.header.back(), "h_50");
  const Table acf = read_table(out / "acf.csv");
  EXPECT_EQ(acf.rows.size(), 31u);
  EXPECT_EQ(acf.rows[0][1], 1.0);
  const Table band = read_table(out / "band.csv");
  EXPECT_EQ(band.header, (std::vector<std::string>{"t", "lower", "median", "upper", "proxy"}));
  ASSERT_EQ(band.rows.size(), 150u);
  for (const auto& r : band.rows) {
    EXPECT_LE(r[1], r[2]);
    EXPECT_LE(r[2], r[3]);
    EXPECT_TRUE(std::isfinite(r[4]));
  }
}

TEST(Cli, AcfOfIidChainIsNearZero) {
  const fs::path fit = scratch("iid_fit");
  {
    CsvWriter w(fit / "theta_draws.csv", {"iter", "x"});
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 20000; ++i) w.row({static_cast<double>(i + 1), nd(gen)});
    w.close();
    CsvWriter b(fit / "h_band.csv", {"t", "lower", "median", "upper"});
    CsvWriter y(fit / "y.csv", {"y"});
    for (int t = 0; t < 10; ++t) {
      b.row({t + 1.0, -1.0, 0.0, 1.0});
      y.row({0.1 * (t + 1)});
    }
    b.close();
    y.close();
  }
  const fs::path out = scratch("iid_out");
  ASSERT_EQ(run({"report-data", "--fit-dir", fit.string(), "--data", (fit / "y.csv").string(),
                 "--betas", "0.5", "--max-lag", "20", "--n-mc", "10000", "-o", out.string()}),
            0);
  const Table acf = read_table(out / "acf.csv");
  for (std::size_t lag = 1; lag <= 20; ++lag) {
    EXPECT_LT(std::abs(acf.rows[lag][1]), 4.0 / std::sqrt(20000.0));
  }
}

TEST(Cli, FourModelMarglik) {
  const fs::path d = dataset(150, 0.5, "ml_data");
  const fs::path a = scratch("ml_a"), b = scratch("ml_b");
  for (const fs::path& out : {a, b}) {
    testing::internal::CaptureStdout();
    const int code = run({"marglik", "--data", (d / "data.csv").string(), "--column", "y",
                          "--models", "sv,svl,svm,svml", "--burnin", "50", "--draws", "300",
                          "--h-thin", "3", "--particles", "500", "--pf-reps", "3", "--ordinate-draws",
                          "200", "--reduced-burnin", "20", "-o", out.string()});
    const std::string printed = testing::internal::GetCapturedStdout();
    ASSERT_EQ(code, 0);
    EXPECT_NE(printed.find("svml"), std::string::npos);
  }
  expect_same_tree(a, b);
  const std::string text = slurp(a / "marglik.csv");
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> models;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 13u);
    models.push_back(cells[0]);
    const double lm = std::stod(cells[1]), ll = std::stod(cells[3]), lp = std::stod(cells[5]),
                 lo = std::stod(cells[6]);
    EXPECT_EQ(lm, ll + lp - lo);
    EXPECT_EQ(cells[12] == "NA", cells[0] == "sv" || cells[0] == "svm");
  }
  EXPECT_EQ(models, (std::vector<std::string>{"sv", "svl", "svm", "svml"}));
  for (const char* m : {"sv", "svl", "svm", "svml"}) EXPECT_TRUE(fs::exists(a / m / "summary.csv"));
}

TEST(Cli, HelpAndBadFlag) {
  testing::internal::CaptureStdout();
  EXPECT_EQ(run({"--help"}), 0);
  testing::internal::GetCapturedStdout();
  testing::internal::CaptureStderr();
  EXPECT_EQ(run({"fit", "--no-such-flag"}), 2);
  testing::internal::GetCapturedStderr();
}
