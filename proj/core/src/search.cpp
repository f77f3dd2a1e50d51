#include "drinfeld/search.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "drinfeld/text.hpp"
#include "drinfeld/wieferich.hpp"
#include "drinfeld/wieferich_kernel.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace drinfeld {

namespace {

using json = nlohmann::json;
using clk = std::chrono::steady_clock;

constexpr int kSchema = 1;
constexpr const char* kKind = "drinfeld-wieferich-search";

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// FNV-1a, printed as 16 hex digits
std::string fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json field_json(const Field& f) {
  return {{"p", f.characteristic()}, {"q", f.order()}, {"modulus", f.modulus()}};
}

struct State {
  int max_degree = 0;
  int completed_degree = 0;
  std::uint64_t next_index = 0;  // within degree completed_degree + 1
  std::vector<SearchHit> hits;
  std::string created;
};

json to_json(const DrinfeldModel& m, const State& s) {
  json found = json::array();
  for (const auto& h : s.hits)
    found.push_back({{"degree", h.place.degree()},
                     {"place", to_string(h.place.poly())},
                     {"c_lower", h.c_lower.to_string()},
                     {"verified_twice", h.verified_twice}});
  return {{"schema", kSchema},
          {"kind", kKind},
          {"field", field_json(m.field())},
          {"model", to_string(m)},
          {"fingerprint", model_fingerprint(m)},
          {"max_degree", s.max_degree},
          {"completed_degree", s.completed_degree},
          {"next_index", s.next_index},
          {"found", found},
          {"created", s.created},
          {"updated", utc_now()}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SearchError("cannot read checkpoint " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CheckpointMismatch("checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
}

void check_header(const json& j) {
  if (j.value("kind", "") != kKind) throw CheckpointMismatch("not a Wieferich search checkpoint");
  if (j.value("schema", 0) != kSchema)
    throw CheckpointMismatch("checkpoint schema " + std::to_string(j.value("schema", 0)) + ", expected " +
                             std::to_string(kSchema));
}

const Field& field_from(const json& j) {
  const auto& fj = j.at("field");
  return Field::get(fj.at("p").get<unsigned>(), fj.at("modulus").get<std::vector<unsigned>>());
}

State state_from(const json& j, const Field& f) {
  State s;
  s.max_degree = j.at("max_degree").get<int>();
  s.completed_degree = j.at("completed_degree").get<int>();
  s.next_index = j.at("next_index").get<std::uint64_t>();
  s.created = j.value("created", utc_now());
  for (const auto& h : j.at("found")) {
    const std::string c = h.at("c_lower").get<std::string>();
    s.hits.push_back({Place(parse_poly(f, h.at("place").get<std::string>())),
                      c == "inf" ? ExtInt::infinity() : ExtInt(std::stoll(c)), h.at("verified_twice").get<bool>()});
  }
  return s;
}

// write-temporary-then-rename, retried before giving up
void write_atomic(const std::filesystem::path& path, const std::string& text) {
  constexpr int kAttempts = 3;
  std::string last;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    if (attempt) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << text;
      out.flush();
      if (!out) {
        last = "cannot write " + tmp.string();
        continue;
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (!ec) return;
    last = "cannot rename " + tmp.string() + ": " + ec.message();
  }
  throw SearchError(last);
}

std::uint64_t candidate_count(unsigned q, int d) {
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) {
    if (n > ~std::uint64_t(0) / q) throw std::invalid_argument("degree too large for the search");
    n *= q;
  }
  return n;
}

// phi_{p-1}(1) == 0 mod p^2 is valid for Carlitz only when |C(A/p)| = p - 1
void check_carlitz_shortcut(const DrinfeldModel& m, int d) {
  const Field& f = m.field();
  std::optional<Place> first;
  for_each_place(f, d, [&](const Place& p) {
    first = p;
    return false;
  });
  const Poly a = first->poly() - Poly::constant(f, 1);
  if (WieferichKernel(*first, 1).fitting_ideal(m) != a)
    throw SearchError("Carlitz Fitting ideal shortcut failed at " + to_string(first->poly()));
}

SearchHit verify(const DrinfeldModel& m, const Place& p, int c_max) {
  const Poly one = Poly::constant(m.field(), 1);
  const bool again = is_wieferich(m, p);
  const OrdicValuation c =
      p.satisfies_h() ? ordic_valuation(m, one, p, c_max) : ordic_valuation_by_definition(m, one, p, c_max);
  return {p, c.value, again && c.value >= ExtInt(1)};
}

SearchResult run(const DrinfeldModel& m, const SearchConfig& cfg, State st, bool resumed) {
  if (cfg.max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
  if (cfg.chunk == 0 || cfg.checkpoint_every == 0) throw std::invalid_argument("chunk sizes must be positive");
  const Field& f = m.field();
  const unsigned q = f.order();
  const bool carlitz = m == DrinfeldModel::carlitz(f);
  const unsigned workers = cfg.workers > 0 ? cfg.workers : detail::default_workers();
  st.max_degree = std::max(st.max_degree, cfg.max_degree);

  SearchResult out;
  out.resumed = resumed;
  auto save = [&] {
    if (cfg.checkpoint) write_atomic(*cfg.checkpoint, to_json(m, st).dump(2) + "\n");
  };

  for (int d = st.completed_degree + 1; d <= cfg.max_degree; ++d) {
    const std::uint64_t n = candidate_count(q, d);
    const bool by_definition = q == 2 && d == 1;
    if (carlitz && !by_definition) check_carlitz_shortcut(m, d);
    DegreeThroughput tp{d};
    std::uint64_t idx = st.next_index;
    while (idx < n) {
      const auto t0 = clk::now();
      const std::uint64_t end = std::min(n, idx + cfg.checkpoint_every);
      const std::size_t chunks = (end - idx + cfg.chunk - 1) / cfg.chunk;
      std::vector<std::vector<SearchHit>> found(chunks);
      std::vector<std::uint64_t> places(workers, 0);
      detail::parallel_for(chunks, workers, [&](std::size_t c, unsigned w) {
        const std::uint64_t lo = idx + c * cfg.chunk, hi = std::min(end, lo + cfg.chunk);
        for (std::uint64_t k = lo; k < hi; ++k) {
          Poly cand = candidate_from_index(f, d, k);
          if (!is_irreducible(cand)) continue;
          ++places[w];
          const Place p(std::move(cand));
          bool hit;
          if (by_definition) {
            hit = is_wieferich_by_definition(m, p, Poly::constant(f, 1));
          } else {
            const WieferichKernel K(p, m.rank());
            const Poly a = carlitz ? p.poly() - Poly::constant(f, 1) : K.fitting_ideal(m);
            hit = K.kills_one_mod_square(m, a);
          }
          if (hit) found[c].push_back(verify(m, p, cfg.c_max));
        }
      });
      for (auto& v : found)
        for (auto& h : v) st.hits.push_back(std::move(h));
      for (auto x : places) tp.places += x;
      tp.candidates += end - idx;
      tp.seconds += std::chrono::duration<double>(clk::now() - t0).count();
      idx = end;
      if (idx == n) {
        st.completed_degree = d;
        st.next_index = 0;
      } else {
        st.next_index = idx;
      }
      save();
      if (cfg.interrupt && cfg.interrupt(d, idx)) {
        out.throughput.push_back(tp);
        out.hits = st.hits;
        return out;
      }
    }
    if (tp.candidates) out.throughput.push_back(tp);
  }
  for (const auto& h : st.hits)
    if (h.place.degree() <= cfg.max_degree) out.hits.push_back(h);
  out.complete = true;
  return out;
}

}  // namespace

std::string model_fingerprint(const DrinfeldModel& m) {
  return fnv1a(field_json(m.field()).dump() + "|" + to_string(m));
}

SearchResult search_wieferich(const DrinfeldModel& m, const SearchConfig& cfg) {
  if (cfg.checkpoint && std::filesystem::exists(*cfg.checkpoint)) {
    const json j = read_json(*cfg.checkpoint);
    check_header(j);
    if (j.at("fingerprint").get<std::string>() != model_fingerprint(m))
      throw CheckpointMismatch("checkpoint " + cfg.checkpoint->string() + " belongs to model " +
                               j.at("model").get<std::string>() + " over F_" +
                               std::to_string(j.at("field").at("q").get<unsigned>()) + ", not " + to_string(m) +
                               " over F_" + std::to_string(m.field().order()));
    return run(m, cfg, state_from(j, m.field()), true);
  }
  State st;
  st.created = utc_now();
  return run(m, cfg, std::move(st), false);
}

SearchResult resume(const SearchConfig& cfg) {
  if (!cfg.checkpoint) throw std::invalid_argument("resume needs a checkpoint path");
  const json j = read_json(*cfg.checkpoint);
  check_header(j);
  const Field& f = field_from(j);
  const DrinfeldModel m = parse_model(f, j.at("model").get<std::string>());
  if (model_fingerprint(m) != j.at("fingerprint").get<std::string>())
    throw CheckpointMismatch("checkpoint fingerprint does not match its model");
  SearchConfig c = cfg;
  if (c.max_degree <= 0) c.max_degree = j.at("max_degree").get<int>();
  return run(m, c, state_from(j, f), true);
}

std::string hits_csv(const std::vector<SearchHit>& hits) {
  std::string s = "degree,place,wieferich,verified_twice\n";
  for (const auto& h : hits)
    s += std::to_string(h.place.degree()) + "," + to_string(h.place.poly()) + ",1," +
         (h.verified_twice ? "true" : "false") + "\n";
  return s;
}

}  // namespace drinfeld
