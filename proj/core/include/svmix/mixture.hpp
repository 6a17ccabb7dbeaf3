#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace svmix {

class Rng;

// One row of the ten-component normal mixture for log chi^2_1: weight p,
// location m, variance v2, and the linearization constants (a, b) of
// exp(e/2) ~ exp(m/2) {a + b (e - m)} used by the leverage state-space form.
struct MixtureRow {
  double p;
  double m;
  double v2;
  double a;
  double b;
};

inline constexpr std::size_t kMixtureRows = 10;
inline constexpr int kDefaultTruncation = 2;

struct MixtureTable {
  std::array<MixtureRow, kMixtureRows> rows;
};

// Ten-component mixture constants, compiled in at their printed precision.
const MixtureTable& base_mixture_table();

// One normal component of the beta-dependent mixture.
struct MixtureComponent {
  int row;            // 0-based index i into the base table
  int order;          // Poisson order j in 0..J
  double weight;      // normalized p~_{ij}
  double log_weight;  // log p~_{ij}; -inf when the weight is exactly zero
  double mean;        // m~_{ij} = m_i + j v_i^2
  double variance;    // v_i^2
  double sd;
  double a;
  double b;
  double half_mean_exp;  // exp(m~_{ij} / 2)
};

// Normal-mixture approximation of log chi^2_1(lambda), lambda = beta^2,
// with K * (J + 1) components. Immutable after construction.
class MixtureGrid {
 public:
  double lambda() const { return lambda_; }
  double beta() const { return beta_; }
  int truncation() const { return truncation_; }
  std::size_t size() const { return components_.size(); }

  const MixtureComponent& operator[](std::size_t k) const { return components_[k]; }
  const MixtureComponent& at(int row, int order) const;
  const std::vector<MixtureComponent>& components() const { return components_; }

  double weight(int row, int order) const { return at(row, order).weight; }
  double mean(int row, int order) const { return at(row, order).mean; }

  // sum_{ij} w_{ij} including the exp(-lambda/2) Gamma(1/2) factors, i.e. the
  // share of the exact Poisson series mass retained by truncation at J.
  double unnormalized_mass() const { return unnormalized_mass_; }

  static std::size_t flat_index(int row, int order, int truncation) {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(truncation + 1) +
           static_cast<std::size_t>(order);
  }

 private:
  friend MixtureGrid build_grid(double beta, int truncation, const MixtureTable& table);

  double beta_ = 0.0;
  double lambda_ = 0.0;
  int truncation_ = kDefaultTruncation;
  double unnormalized_mass_ = 1.0;
  std::vector<MixtureComponent> components_;
};

MixtureGrid build_grid(double beta, int truncation = kDefaultTruncation,
                       const MixtureTable& table = base_mixture_table());

// Density of U = log X, X ~ chi^2_1(lambda), from the Poisson-mixture series
// truncated once the remaining tail is certified below tol. Throws
// std::domain_error for non-finite u, lambda < 0 or tol <= 0, and
// NumericalError when 200 terms do not reach tol.
double exact_log_chisq1_density(double u, double lambda, double tol = 1e-12);

// Density of log chi^2_1 for lambda = 0.
double central_log_chisq1_density(double u);

double approx_density(double u, const MixtureGrid& grid);

struct MonteCarloEstimate {
  double mean;
  double std_error;
};

// E[log chi^2_1(beta^2)] by simulation of log((beta + Z)^2).
MonteCarloEstimate expected_log_chisq1(double beta, std::size_t n_mc, Rng& rng);

}  // namespace svmix
