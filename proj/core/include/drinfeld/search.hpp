#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/ext_int.hpp"
#include "drinfeld/ore.hpp"
#include "drinfeld/places.hpp"

namespace drinfeld {

struct SearchHit {
  Place place;
  // c_p(phi; 1) >= c_lower; exact unless the recomputation saturated
  ExtInt c_lower;
  // the recomputation by a second, independent route agreed
  bool verified_twice = false;
};

struct DegreeThroughput {
  int degree = 0;
  std::uint64_t candidates = 0;  // monic candidates examined in this run
  std::uint64_t places = 0;      // of which irreducible
  double seconds = 0;
  double places_per_second() const { return seconds > 0 ? places / seconds : 0; }
};

struct SearchConfig {
  int max_degree = 1;
  int workers = 1;
  // resumed from when the file exists, rewritten as the search advances
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t checkpoint_every = 1'000'000;  // candidates between writes
  std::uint64_t chunk = 4096;                  // candidates per work item
  int c_max = 8;                               // cap for the c_p recomputation
  // called after each checkpoint boundary with (degree, next index); return
  // true to stop there
  std::function<bool(int, std::uint64_t)> interrupt;
};

struct SearchResult {
  std::vector<SearchHit> hits;  // by degree, then lexicographically
  std::vector<DegreeThroughput> throughput;
  bool complete = false;
  bool resumed = false;
};

struct SearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// checkpoint written for another model, field or schema
struct CheckpointMismatch : SearchError {
  using SearchError::SearchError;
};

// Wieferich places (base 1) of degree 1..max_degree. The fast test is
// phi_a(1) == 0 mod p^2 with a = |phi(A/p)| (for Carlitz a = p - 1, checked
// once per degree); q = 2 degree-one places use the definition. Hits are
// recomputed through the generic route before they are reported.
SearchResult search_wieferich(const DrinfeldModel& m, const SearchConfig& cfg);

// Continue the search stored in cfg.checkpoint; the model and field are read
// from the file. max_degree <= 0 keeps the stored target.
SearchResult resume(const SearchConfig& cfg);

// "degree,place,wieferich,verified_twice" rows, one per hit
std::string hits_csv(const std::vector<SearchHit>& hits);

// fingerprint of (field, model) stored in checkpoints
std::string model_fingerprint(const DrinfeldModel& m);

}  // namespace drinfeld
