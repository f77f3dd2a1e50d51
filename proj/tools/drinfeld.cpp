// drinfeld: command-line front end of the core library.
// Exit codes: 0 success, 1 mathematical cross-check or verification failure,
// 2 usage error, 3 resource budget exhausted, 130 interrupted.

#include <atomic>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "drinfeld/anderson.hpp"
#include "drinfeld/checks.hpp"
#include "drinfeld/lseries.hpp"
#include "drinfeld/search.hpp"
#include "drinfeld/stats.hpp"
#include "drinfeld/text.hpp"
#include "drinfeld/wieferich.hpp"
#include "json.hpp"

using namespace drinfeld;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;
constexpr int kInterrupted = 130;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::atomic<bool> g_stop{false};
extern "C" void on_sigint(int) { g_stop = true; }

// ---- resolved configuration ------------------------------------------------

struct Options {
  unsigned q = 3;
  std::string modulus;
  std::uint64_t seed = 20240501;
  int workers = 1;
  std::string format;
  std::string out;
  // budgets
  int c_max = kDefaultCMax;
  int max_terms = 0;
  int unit_budget = 9;
  std::uint64_t exhaustive_threshold = 10'000;
};

unsigned smallest_prime_factor(unsigned n) {
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

const Field& resolve_field(const Options& o) {
  if (o.q < 2) throw UsageError("--q must be a prime power >= 2");
  const unsigned p = smallest_prime_factor(o.q);
  unsigned k = 0;
  for (unsigned n = o.q; n > 1; n /= p, ++k)
    if (n % p) throw UsageError("--q " + std::to_string(o.q) + " is not a prime power");
  if (o.modulus.empty()) return Field::get(o.q);
  const Poly m = parse_poly(Field::get(p), o.modulus, 'z');
  if (m.degree() != static_cast<int>(k))
    throw UsageError("--modulus must have degree " + std::to_string(k) + " for q = " + std::to_string(o.q));
  std::vector<unsigned> coeffs;
  for (int i = 0; i <= m.degree(); ++i) coeffs.push_back(m.coeff(i));
  return Field::get(p, coeffs);
}

std::string modulus_text(const Field& f) {
  if (f.degree() == 1) return "";
  std::vector<Elem> c;
  for (unsigned v : f.modulus()) c.push_back(static_cast<Elem>(v));
  return to_string(Poly(Field::get(f.characteristic()), c), 'z');
}

json field_json(const Field& f) {
  json j = {{"p", f.characteristic()}, {"q", f.order()}, {"k", f.degree()}};
  if (f.degree() > 1) j["modulus"] = modulus_text(f);
  return j;
}

json config_json(const std::string& command, const Options& o, const Field* f, json args) {
  json j;
  j["command"] = command;
  if (f) j["field"] = field_json(*f);
  j["seed"] = o.seed;
  j["workers"] = o.workers;
  j["format"] = o.format;
  j["budgets"] = {{"c_max", o.c_max},
                  {"max_terms", o.max_terms},
                  {"unit_budget", o.unit_budget},
                  {"exhaustive_threshold", o.exhaustive_threshold}};
  j["args"] = std::move(args);
  return j;
}

int resolve_workers(int w) {
  if (w > 0) return w;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// stdout, or the --out file
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path, std::ios::trunc);
    if (!file_) throw UsageError("cannot open --out " + path);
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void comment_header(std::ostream& os, const json& cfg) { os << "# config: " << cfg.dump() << "\n"; }

json ext_json(const ExtInt& e) { return e.is_infinite() ? json("inf") : json(e.value()); }

std::string series_text(const KSeries& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string c = to_string(s[k]);
    if (k == 0) {
      out += c;
      continue;
    }
    if (c != "1") out += "(" + c + ")*";
    out += "T";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// "a..b" or "d"
std::pair<int, int> parse_degrees(const std::string& s) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int d = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {d, d};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--degrees expects a..b or a single degree, got '" + s + "'");
  }
}

// ---- subcommands -----------------------------------------------------------

struct SearchArgs {
  std::string model = "carlitz";
  int max_degree = 0;
  std::string checkpoint;
  std::uint64_t checkpoint_every = 1'000'000;
  std::size_t chunk = 4096;
  bool resume = false;
};

int cmd_search(const Options& o, const SearchArgs& a) {
  SearchConfig cfg;
  cfg.max_degree = a.max_degree;
  cfg.workers = o.workers;
  cfg.checkpoint_every = a.checkpoint_every;
  cfg.chunk = a.chunk;
  cfg.c_max = o.c_max;
  if (!a.checkpoint.empty()) cfg.checkpoint = a.checkpoint;
  cfg.interrupt = [](int, std::uint64_t) { return g_stop.load(); };

  json args = {{"max_degree", a.max_degree},
               {"checkpoint", a.checkpoint},
               {"checkpoint_every", a.checkpoint_every},
               {"chunk", a.chunk},
               {"resume", a.resume},
               {"out", o.out}};
  SearchResult r;
  const Field* field = nullptr;
  if (a.resume) {
    if (a.checkpoint.empty()) throw UsageError("--resume needs --checkpoint");
    std::ifstream in(a.checkpoint);
    if (!in) throw UsageError("cannot read checkpoint " + a.checkpoint);
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("model") || !j.contains("field"))
      throw CheckpointMismatch("checkpoint " + a.checkpoint + " is not a search checkpoint");
    args["model"] = j["model"];
    if (a.max_degree <= 0) args["max_degree"] = j.value("max_degree", 0);
    std::vector<unsigned> mod = j["field"].value("modulus", std::vector<unsigned>{});
    field = &Field::get(j["field"].at("p").get<unsigned>(), mod);
    r = resume(cfg);
  } else {
    if (a.max_degree < 1) throw UsageError("--max-degree must be >= 1");
    field = &resolve_field(o);
    const DrinfeldModel m = parse_model(*field, a.model);
    args["model"] = to_string(m);
    r = search_wieferich(m, cfg);
  }

  const json cfg_json = config_json("search", o, field, args);
  Sink sink(o.out);
  comment_header(sink.os(), cfg_json);
  sink.os() << hits_csv(r.hits);

  // progress summary goes to stdout when the CSV went to a file, else stderr
  std::ostream& log = o.out.empty() ? std::cerr : std::cout;
  if (!o.out.empty()) comment_header(log, cfg_json);
  log << "degree  candidates      places   seconds   places/s\n";
  for (const auto& t : r.throughput)
    log << std::setw(6) << t.degree << std::setw(12) << t.candidates << std::setw(12) << t.places << std::setw(10)
        << std::fixed << std::setprecision(2) << t.seconds << std::setw(11) << std::setprecision(0)
        << t.places_per_second() << "\n";
  log << r.hits.size() << " Wieferich place(s)" << (r.resumed ? " (resumed)" : "") << "\n";

  if (!r.complete) {
    log << "interrupted" << (cfg.checkpoint ? "; continue with --resume --checkpoint " + a.checkpoint : "") << "\n";
    return kInterrupted;
  }
  for (const auto& h : r.hits)
    if (!h.verified_twice) {
      std::cerr << "verification failed at " << to_string(h.place.poly()) << "\n";
      return kMismatch;
    }
  return kOk;
}

struct StatsArgs {
  int rank = 1;
  std::string degrees = "1..3";
  std::optional<std::uint64_t> samples;
  bool exhaustive = false;
  bool exact_rank = false;
};

std::string hundredths_text(const CellResult& c) {
  if (c.models == 0 || c.places == 0) return "n/a";
  const std::uint64_t h = c.hundredths();
  std::ostringstream os;
  os << h / 100 << "." << std::setw(2) << std::setfill('0') << h % 100;
  return os.str();
}

int cmd_stats(const Options& o, const StatsArgs& a) {
  const Field& f = resolve_field(o);
  const auto [lo, hi] = parse_degrees(a.degrees);
  if (a.rank < 1) throw UsageError("--rank must be >= 1");
  const Universe u(f, a.rank, a.exact_rank ? RankBound::exact : RankBound::at_most);
  StatsConfig cfg;
  cfg.min_degree = lo;
  cfg.max_degree = hi;
  cfg.samples = a.samples;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.exhaustive_threshold = o.exhaustive_threshold;
  const json args = {{"rank", a.rank},
                     {"degrees", {lo, hi}},
                     {"mode", a.samples ? "monte_carlo" : "exhaustive"},
                     {"samples", a.samples ? json(*a.samples) : json(nullptr)},
                     {"rank_bound", to_string(u.bound())}};
  const json cfg_json = config_json("stats", o, &f, args);
  const auto cells = stats_table(u, cfg);

  Sink sink(o.out);
  std::ostream& os = sink.os();
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& c : cells)
      rows.push_back({{"degree", c.degree},
                      {"column", to_string(c.column)},
                      {"value", hundredths_text(c)},
                      {"display", c.display()},
                      {"hits", c.hits},
                      {"models", c.models},
                      {"places", c.places},
                      {"q_pow", c.q_pow},
                      {"n_samples", c.samples},
                      {"mode", to_string(c.mode)},
                      {"sigma", c.models ? json(c.sigma()) : json(nullptr)}});
    os << json{{"cells", rows}, {"config", cfg_json}}.dump(2) << "\n";
  } else if (o.format == "csv") {
    comment_header(os, cfg_json);
    os << "q,rank,degree,column,value,n_samples,mode,seed\n";
    for (const auto& c : cells)
      os << f.order() << "," << a.rank << "," << c.degree << "," << to_string(c.column) << "," << hundredths_text(c)
         << "," << c.samples << "," << to_string(c.mode) << "," << o.seed << "\n";
  } else {
    comment_header(os, cfg_json);
    os << "degree      all     n.t.\n";
    for (std::size_t i = 0; i + 1 < cells.size(); i += 2)
      os << std::setw(6) << cells[i].degree << std::setw(9) << cells[i].display() << std::setw(9)
         << cells[i + 1].display() << "\n";
    if (!cells.empty())
      os << "# models: " << cells[0].models << " (all), " << cells[1].models << " (n.t.); mode "
         << to_string(cells[0].mode) << "\n";
  }
  return kOk;
}

struct ModelArgs {
  std::string model = "carlitz";
  std::string place;
  std::string base = "1";
  int prec = 8;
  bool special = false;
  bool cross_check = false;
};

int cmd_lvalue(const Options& o, const ModelArgs& a) {
  const Field& f = resolve_field(o);
  const DrinfeldModel m = parse_model(f, a.model);
  const Place p(parse_poly(f, a.place));
  if (a.prec < 1) throw UsageError("--prec must be >= 1");
  json args = {{"model", to_string(m)}, {"place", to_string(p.poly())}, {"prec", a.prec}, {"special", a.special}};
  const json cfg_json = config_json("lvalue", o, &f, args);
  const LSeriesBudget budget{o.max_terms};
  json out;
  auto fill = [&](const PadicResult& r) {
    out["valuation"] = ext_json(r.value.valuation());
    out["unit_digits"] = r.value.is_zero() ? std::string("0") : to_string(r.value.unit());
    out["precision"] = r.value.absolute_precision();
    out["certified"] = r.certified;
    out["terms"] = r.terms;
  };
  if (a.special) {
    const SpecialValue s = special_lvalue(m, p, a.prec, budget);
    fill(s.value);
    out["order"] = s.order;
    out["twist_route"] = s.twist_route;
    out["expected_valuation"] = s.expected_valuation ? ext_json(*s.expected_valuation) : json(nullptr);
  } else {
    fill(lp_value_at_1(m, p, a.prec, budget));
  }
  out["config"] = cfg_json;
  Sink sink(o.out);
  sink.os() << out.dump() << "\n";
  return kOk;
}

int cmd_cvalue(const Options& o, const ModelArgs& a) {
  const Field& f = resolve_field(o);
  const DrinfeldModel m = parse_model(f, a.model);
  const Place p(parse_poly(f, a.place));
  const Poly x = parse_poly(f, a.base);
  if (o.c_max < 0) throw UsageError("--cmax must be >= 0");
  json args = {{"model", to_string(m)},
               {"place", to_string(p.poly())},
               {"base", to_string(x)},
               {"cross_check", a.cross_check}};
  const OrdicValuation c =
      p.satisfies_h() ? ordic_valuation(m, x, p, o.c_max) : ordic_valuation_by_definition(m, x, p, o.c_max);
  json out = {{"c", ext_json(c.value)},
              {"method", to_string(c.method)},
              {"torsion", c.torsion},
              {"saturated", c.saturated}};
  int rc = kOk;
  if (a.cross_check) {
    const OrdicValuation d = ordic_valuation_by_definition(m, x, p, o.c_max);
    const bool agree = d.value == c.value && d.saturated == c.saturated;
    out["cross_check"] = agree ? "pass" : "fail";
    out["definition_c"] = ext_json(d.value);
    if (!agree) rc = kMismatch;
  }
  out["config"] = config_json("cvalue", o, &f, args);
  Sink sink(o.out);
  sink.os() << out.dump() << "\n";
  return rc;
}

int cmd_unit(const Options& o, const ModelArgs& a) {
  const Field& f = resolve_field(o);
  const DrinfeldModel m = parse_model(f, a.model);
  if (o.unit_budget < 1) throw UsageError("--budget must be >= 1");
  const json cfg_json = config_json("unit", o, &f, {{"model", to_string(m)}});
  const TaelmanUnit u = taelman_unit(m, o.unit_budget);
  Sink sink(o.out);
  if (o.format == "json") {
    sink.os() << json{{"unit", u.u.to_string()},
                      {"certified", u.certified},
                      {"truncation", u.truncation},
                      {"config", cfg_json}}
                     .dump()
              << "\n";
  } else {
    comment_header(sink.os(), cfg_json);
    sink.os() << "# certified: " << (u.certified ? "true" : "false") << "\n" << u.u.to_string() << "\n";
  }
  return kOk;
}

struct CheckArgs {
  std::string selector;
  std::string model = "carlitz";
  int max_degree = 3;
};

int cmd_check(const Options& o, const CheckArgs& a) {
  Sink sink(o.out);
  std::ostream& os = sink.os();
  if (a.selector == "list") {
    for (const auto& c : check_catalog())
      os << std::left << std::setw(26) << c.name << std::setw(14) << c.module << c.statement << "\n";
    return kOk;
  }
  if (a.selector == "euler") {
    const Field& f = resolve_field(o);
    const DrinfeldModel m = parse_model(f, a.model);
    if (a.max_degree < 1) throw UsageError("--max-degree must be >= 1");
    const json cfg_json =
        config_json("check", o, &f, {{"selector", "euler"}, {"model", to_string(m)}, {"max_degree", a.max_degree}});
    const auto rep = check_euler(m, a.max_degree);
    std::size_t bad = 0;
    for (const auto& r : rep) bad += !r.agree;
    if (o.format == "json") {
      json rows = json::array();
      for (const auto& r : rep)
        rows.push_back({{"place", to_string(r.place.poly())},
                        {"local", series_text(r.local)},
                        {"dual", series_text(r.dual)},
                        {"agree", r.agree}});
      os << json{{"result", bad ? "fail" : "pass"}, {"places", rows}, {"config", cfg_json}}.dump(2) << "\n";
    } else {
      comment_header(os, cfg_json);
      for (const auto& r : rep)
        os << (r.agree ? "pass  " : "FAIL  ") << to_string(r.place.poly()) << "  " << series_text(r.local)
           << (r.agree ? "" : "  vs dual " + series_text(r.dual)) << "\n";
      os << (bad ? "fail (" + std::to_string(bad) + " of " + std::to_string(rep.size()) + " places)" : "pass")
         << "\n";
    }
    return bad ? kMismatch : kOk;
  }

  CheckOptions opt;
  opt.seed = o.seed;
  opt.workers = o.workers;
  const json cfg_json = config_json("check", o, nullptr, {{"selector", a.selector}});
  std::vector<CheckOutcome> res;
  try {
    res = run_checks(a.selector, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::size_t failed = 0;
  for (const auto& r : res) failed += !r.passed();
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& r : res)
      rows.push_back({{"name", r.name},
                      {"module", r.module},
                      {"passed", r.passed()},
                      {"cases", r.cases},
                      {"failures", r.failures},
                      {"first_failure", r.first_failure},
                      {"seconds", r.seconds}});
    os << json{{"result", failed ? "fail" : "pass"}, {"suites", rows}, {"config", cfg_json}}.dump(2) << "\n";
  } else {
    comment_header(os, cfg_json);
    for (const auto& r : res) {
      os << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(26) << r.name << std::setw(14) << r.module
         << std::right << std::setw(6) << r.cases << " cases " << std::setw(4) << r.failures << " failures "
         << std::fixed << std::setprecision(2) << std::setw(8) << r.seconds << "s\n";
      if (!r.passed() && !r.first_failure.empty()) os << "      first failure: " << r.first_failure << "\n";
    }
    os << (failed ? "fail (" + std::to_string(failed) + " of " + std::to_string(res.size()) + " suites)" : "pass")
       << "\n";
  }
  return failed ? kMismatch : kOk;
}

struct PlacesArgs {
  std::optional<int> degree;
  int max_degree = 1;
  bool count = false;
};

int cmd_places(const Options& o, const PlacesArgs& a) {
  const Field& f = resolve_field(o);
  const int lo = a.degree.value_or(1), hi = a.degree.value_or(a.max_degree);
  if (lo < 1 || hi < lo) throw UsageError("degree must be >= 1");
  const json cfg_json = config_json("places", o, &f, {{"degrees", {lo, hi}}, {"count", a.count}});
  Sink sink(o.out);
  std::ostream& os = sink.os();
  if (o.format == "json") {
    json rows = json::array();
    for (int d = lo; d <= hi; ++d) {
      json row = {{"degree", d}, {"count", count_places(f.order(), d)}};
      if (!a.count) {
        json ps = json::array();
        for_each_place(f, d, [&](const Place& p) {
          ps.push_back({{"place", to_string(p.poly())}, {"h", p.satisfies_h()}});
          return true;
        });
        row["places"] = ps;
      }
      rows.push_back(row);
    }
    os << json{{"degrees", rows}, {"config", cfg_json}}.dump(2) << "\n";
    return kOk;
  }
  comment_header(os, cfg_json);
  for (int d = lo; d <= hi; ++d) {
    if (a.count) {
      os << d << " " << count_places(f.order(), d) << "\n";
      continue;
    }
    for_each_place(f, d, [&](const Place& p) {
      os << to_string(p.poly()) << "\n";
      return true;
    });
  }
  return kOk;
}

// ---- argument wiring -------------------------------------------------------

void add_field(CLI::App* sub, Options& o) {
  sub->add_option("--q", o.q, "field order (prime power <= 256)");
  sub->add_option("--modulus", o.modulus, "defining polynomial of F_q over F_p in z, e.g. z^2+z+1");
}

void add_out(CLI::App* sub, Options& o) { sub->add_option("--out", o.out, "write output to this file"); }

// the default is applied after parsing, since subcommands share Options
void add_format(CLI::App* sub, Options& o, const std::string& def, std::vector<std::string> allowed) {
  sub->add_option("--format", o.format, "output format (default " + def + ")")->check(CLI::IsMember(allowed));
}

void add_cmax(CLI::App* sub, Options& o, const char* name) {
  sub->add_option(name, o.c_max, "ordic valuation cap")->envname("DRINFELD_C_MAX");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wieferich places, L-values and statistics of Drinfeld modules over F_q[t]", "drinfeld"};
  app.require_subcommand(1);
  Options o;

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "search Wieferich places in base 1 up to a degree");
  add_field(search, o);
  add_out(search, o);
  add_cmax(search, o, "--c-max");
  search->add_option("--model", sa.model, "model, e.g. carlitz or \"t + (t^2)*tau + tau^2\"");
  search->add_option("--max-degree", sa.max_degree, "largest place degree");
  search->add_option("--workers", o.workers, "worker threads (0: all cores)");
  search->add_option("--checkpoint", sa.checkpoint, "checkpoint JSON file");
  search->add_option("--checkpoint-every", sa.checkpoint_every, "candidates between checkpoints")
      ->check(CLI::PositiveNumber);
  search->add_option("--chunk", sa.chunk, "candidates per work item")->check(CLI::PositiveNumber);
  search->add_flag("--resume", sa.resume, "continue the search stored in --checkpoint");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "normalized Wieferich counts over a universe of small models");
  add_field(stats, o);
  add_out(stats, o);
  add_format(stats, o, "table", {"table", "csv", "json"});
  stats->add_option("--rank", st.rank, "rank bound r");
  stats->add_option("--degrees", st.degrees, "degree range a..b");
  auto* samples = stats->add_option("--samples", st.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  stats->add_flag("--exhaustive", st.exhaustive, "enumerate the whole universe (default)")->excludes(samples);
  stats->add_option("--seed", o.seed, "RNG seed");
  stats->add_option("--workers", o.workers, "worker threads (0: all cores)");
  stats->add_flag("--exact-rank", st.exact_rank, "models of exact rank r (g_r != 0) only");
  stats->add_option("--exhaustive-threshold", o.exhaustive_threshold, "largest universe enumerated")
      ->envname("DRINFELD_EXHAUSTIVE_THRESHOLD");

  ModelArgs la;
  auto* lvalue = app.add_subcommand("lvalue", "p-adic L-value L_p(phi;1) or its special value");
  add_field(lvalue, o);
  add_out(lvalue, o);
  lvalue->add_option("--model", la.model, "model");
  lvalue->add_option("--place", la.place, "place p")->required();
  lvalue->add_option("--prec", la.prec, "absolute p-adic precision");
  lvalue->add_flag("--special", la.special, "special value after removing the zero at T = 1");
  lvalue->add_option("--max-terms", o.max_terms, "series term budget (0: automatic)")->envname("DRINFELD_MAX_TERMS");

  ModelArgs ca;
  auto* cvalue = app.add_subcommand("cvalue", "ordic valuation c_p(phi; x)");
  add_field(cvalue, o);
  add_out(cvalue, o);
  add_cmax(cvalue, o, "--cmax");
  cvalue->add_option("--model", ca.model, "model");
  cvalue->add_option("--place", ca.place, "place p")->required();
  cvalue->add_option("--base", ca.base, "base point x");
  cvalue->add_flag("--cross-check", ca.cross_check, "also compute c by definition and compare");

  ModelArgs ua;
  auto* unit = app.add_subcommand("unit", "Taelman unit u_phi(T)");
  add_field(unit, o);
  add_out(unit, o);
  add_format(unit, o, "text", {"text", "json"});
  unit->add_option("--model", ua.model, "model");
  unit->add_option("--budget", o.unit_budget, "T-truncation budget of the heuristic route")
      ->envname("DRINFELD_UNIT_BUDGET");

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "invariant suites: euler, all, list, a module or a suite name");
  add_field(check, o);
  add_out(check, o);
  add_format(check, o, "text", {"text", "json"});
  check->add_option("selector", ka.selector, "euler | all | list | <module> | <suite>")->required();
  check->add_option("--model", ka.model, "model (euler)");
  check->add_option("--max-degree", ka.max_degree, "largest place degree (euler)");
  check->add_option("--seed", o.seed, "suite seed");
  check->add_option("--workers", o.workers, "worker threads (0: all cores)");

  PlacesArgs pa;
  auto* places = app.add_subcommand("places", "monic irreducible polynomials of F_q[t]");
  add_field(places, o);
  add_out(places, o);
  add_format(places, o, "text", {"text", "json"});
  places->add_option("--degree", pa.degree, "exactly this degree");
  places->add_option("--max-degree", pa.max_degree, "all degrees up to this one");
  places->add_flag("--count", pa.count, "print counts only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  o.workers = resolve_workers(o.workers);
  if (o.format.empty()) o.format = *stats ? "table" : (*cvalue || *lvalue) ? "json" : *search ? "csv" : "text";
  std::signal(SIGINT, on_sigint);

  try {
    if (*search) return cmd_search(o, sa);
    if (*stats) return cmd_stats(o, st);
    if (*lvalue) return cmd_lvalue(o, la);
    if (*cvalue) return cmd_cvalue(o, ca);
    if (*unit) return cmd_unit(o, ua);
    if (*check) return cmd_check(o, ka);
    if (*places) return cmd_places(o, pa);
  } catch (const CrossCheckError& e) {
    std::cerr << "cross-check failed: " << e.what() << "\n";
    return kMismatch;
  } catch (const ResourceLimitError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kResource;
  } catch (const CheckpointMismatch& e) {
    std::cerr << "checkpoint: " << e.what() << "\n";
    return kUsage;
  } catch (const SearchError& e) {
    std::cerr << "search: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const StatsError& e) {
    std::cerr << "stats: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
