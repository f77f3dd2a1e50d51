#include "drinfeld/stats.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>

#include "drinfeld/wieferich.hpp"
#include "drinfeld/wieferich_kernel.hpp"
#include "parallel.hpp"

namespace drinfeld {

namespace {

using u128 = unsigned __int128;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::optional<std::uint64_t> checked_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / b) return std::nullopt;
    r *= b;
  }
  return r;
}

std::uint64_t upow(std::uint64_t b, int e) { return *checked_pow(b, e); }

unsigned worker_count(int w) { return w > 0 ? static_cast<unsigned>(w) : detail::default_workers(); }

}  // namespace

// ---- rng ---------------------------------------------------------------------

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  // Lemire's multiply-shift with rejection
  std::uint64_t x = (*this)();
  u128 m = u128(x) * n;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      x = (*this)();
      m = u128(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

SplitMix64 SplitMix64::split(std::uint64_t seed, std::uint64_t k) {
  return SplitMix64(mix64(mix64(seed) ^ mix64(k + 0x632be59bd9b4e019ULL)));
}

// ---- universe ----------------------------------------------------------------

std::string to_string(RankBound b) { return b == RankBound::at_most ? "at_most" : "exact"; }

Universe::Universe(const Field& f, int rank, RankBound bound) : f_(&f), r_(rank), bound_(bound) {
  if (rank < 1) throw std::invalid_argument("Universe: rank must be >= 1");
}

std::optional<std::uint64_t> Universe::cardinality() const {
  // tuples of g_1..g_{r-1} times tuples of g_r, minus the excluded ones
  const std::uint64_t q = f_->order();
  std::uint64_t e = 0;
  for (int i = 1; i < r_; ++i) {
    const auto qi = checked_pow(q, i);
    if (!qi) return std::nullopt;
    e += *qi + 1;
  }
  const auto qr = checked_pow(q, r_);
  if (!qr) return std::nullopt;
  const auto lower = checked_pow(q, e), top = checked_pow(q, *qr + 1);
  if (!lower || !top) return std::nullopt;
  if (bound_ == RankBound::exact) {
    if (*top - 1 > std::numeric_limits<std::uint64_t>::max() / *lower) return std::nullopt;
    return *lower * (*top - 1);
  }
  if (*top > std::numeric_limits<std::uint64_t>::max() / *lower) return std::nullopt;
  return *lower * *top - 1;
}

namespace {

// coefficient tuples: g_1 .. g_r, each with q^i + 1 coefficients
DrinfeldModel model_from_digits(const Field& f, int r, std::uint64_t low, std::uint64_t top) {
  const unsigned q = f.order();
  std::vector<Poly> g;
  for (int i = 1; i <= r; ++i) {
    std::uint64_t& x = i < r ? low : top;
    std::vector<Elem> c(upow(q, i) + 1);
    for (auto& e : c) {
      e = static_cast<Elem>(x % q);
      x /= q;
    }
    g.emplace_back(f, std::move(c));
  }
  while (g.back().is_zero()) g.pop_back();
  return DrinfeldModel::from_coefficients(f, std::move(g));
}

}  // namespace

DrinfeldModel Universe::model(std::uint64_t index) const {
  const auto card = cardinality();
  if (!card || index >= *card) throw std::out_of_range("Universe::model: index out of range");
  const std::uint64_t q = f_->order();
  std::uint64_t e = 0;
  for (int i = 1; i < r_; ++i) e += upow(q, i) + 1;
  const std::uint64_t lower = upow(q, static_cast<int>(e));
  if (bound_ == RankBound::exact) return model_from_digits(*f_, r_, index % lower, index / lower + 1);
  const std::uint64_t x = index + 1;
  return model_from_digits(*f_, r_, x % lower, x / lower);
}

DrinfeldModel Universe::sample(SplitMix64& rng) const {
  const unsigned q = f_->order();
  for (;;) {
    std::vector<Poly> g;
    bool zero = true, top_zero = true;
    for (int i = 1; i <= r_; ++i) {
      std::vector<Elem> c(upow(q, i) + 1);
      for (auto& e : c) {
        e = static_cast<Elem>(rng.below(q));
        zero = zero && e == 0;
        if (i == r_) top_zero = top_zero && e == 0;
      }
      g.emplace_back(*f_, std::move(c));
    }
    if (bound_ == RankBound::exact ? top_zero : zero) continue;
    while (g.back().is_zero()) g.pop_back();
    return DrinfeldModel::from_coefficients(*f_, std::move(g));
  }
}

DrinfeldModel sample_model(const Universe& u, std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng = SplitMix64::split(seed, index);
  return u.sample(rng);
}

int wieferich_indicator(const DrinfeldModel& m, const Place& p) { return is_wieferich(m, p) ? 1 : 0; }

// ---- cells -------------------------------------------------------------------

std::string to_string(Column c) { return c == Column::all ? "all" : "non_torsion"; }
std::string to_string(StatsMode m) { return m == StatsMode::exhaustive ? "exhaustive" : "monte_carlo"; }

double CellResult::value() const {
  if (models == 0 || places == 0) return 0;
  return static_cast<double>(hits) * static_cast<double>(q_pow) /
         (static_cast<double>(places) * static_cast<double>(models));
}

double CellResult::sigma() const {
  if (models == 0 || places == 0) return 0;
  const double qd = static_cast<double>(q_pow);
  return std::sqrt(qd * (1 - 1 / qd) / (static_cast<double>(places) * static_cast<double>(models)));
}

std::uint64_t CellResult::hundredths() const {
  if (models == 0 || places == 0) return 0;
  // floor(100 x + 1/2) with x = hits q^d / (places models) >= 0
  const u128 den = u128(places) * models;
  const u128 num = u128(200) * hits * q_pow + den;
  return static_cast<std::uint64_t>(num / (2 * den));
}

std::string CellResult::display() const {
  if (models == 0 || places == 0) return "n/a";
  if (u128(hits) * q_pow > u128(100) * places * models) return ">100";
  const std::uint64_t h = hundredths();
  const std::string frac = std::to_string(h % 100);
  return std::to_string(h / 100) + "." + (frac.size() < 2 ? "0" : "") + frac;
}

// ---- tables ------------------------------------------------------------------

std::vector<CellResult> stats_table(const Universe& u, const StatsConfig& cfg) {
  if (cfg.min_degree < 1 || cfg.max_degree < cfg.min_degree) throw std::invalid_argument("stats_table: bad degree range");
  const Field& f = u.field();
  const unsigned workers = worker_count(cfg.workers);

  std::vector<DrinfeldModel> models;
  StatsMode mode;
  if (cfg.samples) {
    mode = StatsMode::monte_carlo;
    models.reserve(*cfg.samples);
    for (std::uint64_t k = 0; k < *cfg.samples; ++k) models.push_back(sample_model(u, cfg.seed, k));
  } else {
    mode = StatsMode::exhaustive;
    const auto card = u.cardinality();
    if (!card || *card > cfg.exhaustive_threshold)
      throw StatsError("exhaustive mode: universe larger than the threshold " +
                       std::to_string(cfg.exhaustive_threshold));
    models.reserve(*card);
    for (std::uint64_t k = 0; k < *card; ++k) models.push_back(u.model(k));
  }
  const Poly one = Poly::constant(f, 1);
  std::vector<char> torsion(models.size());
  detail::parallel_for(models.size(), workers,
                       [&](std::size_t i, unsigned) { torsion[i] = is_torsion_point(models[i], one).torsion; });
  std::uint64_t non_torsion = 0;
  for (char t : torsion) non_torsion += !t;

  std::vector<CellResult> out;
  for (int d = cfg.min_degree; d <= cfg.max_degree; ++d) {
    const std::vector<Place> places = places_of_degree(f, d);
    std::vector<std::array<std::uint64_t, 2>> counts(workers, {0, 0});
    detail::parallel_for(places.size(), workers, [&](std::size_t i, unsigned w) {
      const WieferichKernel kernel(places[i], u.rank());
      for (std::size_t k = 0; k < models.size(); ++k) {
        if (!kernel.is_wieferich(models[k])) continue;
        ++counts[w][0];
        if (!torsion[k]) ++counts[w][1];
      }
    });
    std::array<std::uint64_t, 2> total{0, 0};
    for (const auto& c : counts) {
      total[0] += c[0];
      total[1] += c[1];
    }
    for (Column col : {Column::all, Column::non_torsion}) {
      CellResult cell;
      cell.degree = d;
      cell.column = col;
      cell.hits = total[col == Column::all ? 0 : 1];
      cell.models = col == Column::all ? models.size() : non_torsion;
      cell.places = places.size();
      cell.q_pow = upow(f.order(), d);
      cell.mode = mode;
      cell.seed = cfg.seed;
      cell.samples = models.size();
      out.push_back(cell);
    }
  }
  return out;
}

// ---- chi-square --------------------------------------------------------------

ChiSquareReport chi_square(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square: need matching category counts, at least two");
  ChiSquareReport r;
  r.observed = observed;
  r.expected = expected;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < 5)
      throw StatsError("chi-square: expected count " + std::to_string(expected[i]) + " below 5 in cell " +
                       std::to_string(i) + "; draw more samples");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    r.statistic += diff * diff / expected[i];
    r.samples += observed[i];
  }
  r.dof = static_cast<int>(observed.size()) - 1;
  const boost::math::chi_squared_distribution<double> dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

namespace {

ChiSquareReport joint_test(const Universe& u, const std::vector<Place>& places, std::uint64_t n, std::uint64_t seed,
                           int workers_req) {
  if (places.size() > 20) throw std::invalid_argument("independence_test: at most 20 places");
  const unsigned workers = worker_count(workers_req);
  const std::size_t cells = std::size_t(1) << places.size();
  std::vector<double> expected(cells, static_cast<double>(n));
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t j = 0; j < places.size(); ++j) {
      const double pr = std::pow(static_cast<double>(u.field().order()), -places[j].degree());
      expected[c] *= (c >> j) & 1 ? pr : 1 - pr;
    }
  // validity is checked before any sampling work
  for (double e : expected)
    if (e < 5)
      throw StatsError("chi-square: expected cell count " + std::to_string(e) + " below 5; draw more samples");
  std::vector<WieferichKernel> kernels;
  for (const auto& p : places) kernels.emplace_back(p, u.rank());
  std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(cells, 0));
  detail::parallel_for(n, workers, [&](std::size_t k, unsigned w) {
    const DrinfeldModel m = sample_model(u, seed, k);
    std::size_t c = 0;
    for (std::size_t j = 0; j < places.size(); ++j)
      if (kernels[j].is_wieferich(m)) c |= std::size_t(1) << j;
    ++counts[w][c];
  });
  std::vector<std::uint64_t> observed(cells, 0);
  for (const auto& row : counts)
    for (std::size_t c = 0; c < cells; ++c) observed[c] += row[c];
  return chi_square(observed, expected);
}

}  // namespace

ChiSquareReport independence_test(const Universe& u, const std::vector<Place>& places, std::uint64_t n_samples,
                                  std::uint64_t seed, int workers) {
  if (places.size() < 2) throw std::invalid_argument("independence_test: need at least two places");
  return joint_test(u, places, n_samples, seed, workers);
}

ChiSquareReport frequency_test(const Universe& u, const Place& p, std::uint64_t n_samples, std::uint64_t seed,
                               int workers) {
  return joint_test(u, {p}, n_samples, seed, workers);
}

}  // namespace drinfeld
