#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/ore.hpp"
#include "drinfeld/places.hpp"

namespace drinfeld {

// SplitMix64: a seedable generator whose streams are split by hashing
// (seed, index), so sample k does not depend on how work is distributed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }
  result_type operator()();
  // unbiased draw in [0, n)
  std::uint64_t below(std::uint64_t n);
  // independent stream number k of a seed
  static SplitMix64 split(std::uint64_t seed, std::uint64_t k);

 private:
  std::uint64_t state_;
};

// at_most: every coefficient tuple except the all-zero one (lower ranks
// included). exact: g_r != 0, the population of the reference tables.
enum class RankBound { at_most, exact };
std::string to_string(RankBound b);

// Small models phi_t = t + sum g_i tau^i with deg g_i <= q^i.
class Universe {
 public:
  Universe(const Field& f, int rank, RankBound bound = RankBound::at_most);
  const Field& field() const { return *f_; }
  int rank() const { return r_; }
  RankBound bound() const { return bound_; }
  // nullopt when the count does not fit in 64 bits
  std::optional<std::uint64_t> cardinality() const;
  // the model with index in [0, cardinality()), read as base-q digits of the
  // coefficients of g_1, g_2, ... (low degree first); index 0 is the first
  // admissible tuple
  DrinfeldModel model(std::uint64_t index) const;
  // uniform draw; inadmissible tuples are rejected and redrawn
  DrinfeldModel sample(SplitMix64& rng) const;

 private:
  const Field* f_;
  int r_;
  RankBound bound_;
};

// the model drawn for sample number `index` of a run with this seed
DrinfeldModel sample_model(const Universe& u, std::uint64_t seed, std::uint64_t index = 0);

// 1 iff p is Wieferich in base 1
int wieferich_indicator(const DrinfeldModel& m, const Place& p);

enum class Column { all, non_torsion };
enum class StatsMode { exhaustive, monte_carlo };
std::string to_string(Column c);
std::string to_string(StatsMode m);

// (q^d / #P_d) * mean over models of #{p in P_d Wieferich}, kept as the exact
// fraction hits * q^d / (places * models).
struct CellResult {
  int degree = 0;
  Column column = Column::all;
  std::uint64_t hits = 0;     // Wieferich (model, place) pairs
  std::uint64_t models = 0;   // models counted in this column
  std::uint64_t places = 0;   // #P_d
  std::uint64_t q_pow = 0;    // q^d
  StatsMode mode = StatsMode::exhaustive;
  std::uint64_t seed = 0;     // meaningful in Monte Carlo mode
  std::uint64_t samples = 0;  // samples drawn (all columns), or |universe|

  double value() const;
  // standard deviation of value() when the indicators are independent
  // Bernoulli(q^-d)
  double sigma() const;
  // value * 100 rounded half away from zero, computed exactly
  std::uint64_t hundredths() const;
  // "1.14", "0.00", or ">100"
  std::string display() const;
};

struct StatsConfig {
  int min_degree = 1;
  int max_degree = 1;
  std::optional<std::uint64_t> samples;  // nullopt: exhaustive
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t exhaustive_threshold = 10'000;
};

struct StatsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cells ordered by degree, then column (all before non_torsion).
std::vector<CellResult> stats_table(const Universe& u, const StatsConfig& cfg);

// Chi-square goodness of fit of observed category counts against expected
// counts. Throws StatsError when an expected count is below 5.
struct ChiSquareReport {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  bool rejected(double alpha) const { return p_value < alpha; }
};
ChiSquareReport chi_square(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected);

// Joint law of (W_p) over the given places against the product of
// Bernoulli(q^-deg p); cell index has bit j set when place j is Wieferich.
ChiSquareReport independence_test(const Universe& u, const std::vector<Place>& places, std::uint64_t n_samples,
                                  std::uint64_t seed, int workers = 1);
// W_p against Bernoulli(q^-deg p)
ChiSquareReport frequency_test(const Universe& u, const Place& p, std::uint64_t n_samples, std::uint64_t seed,
                               int workers = 1);

}  // namespace drinfeld
