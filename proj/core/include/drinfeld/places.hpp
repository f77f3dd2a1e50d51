#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "drinfeld/ext_int.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

bool is_irreducible(const Poly& f);

// A monic irreducible p of A.
class Place {
 public:
  // validates: monic, irreducible; throws std::invalid_argument otherwise
  explicit Place(Poly generator);

  const Poly& poly() const { return gen_; }
  const Field& field() const { return gen_.field(); }
  int degree() const { return gen_.degree(); }
  // hypothesis (H)_p: fails only for q = 2 and deg p = 1
  bool satisfies_h() const { return !(field().order() == 2 && degree() == 1); }
  friend bool operator==(const Place& a, const Place& b) { return a.gen_ == b.gen_; }

 private:
  struct Trusted {};
  Place(Poly generator, Trusted) : gen_(std::move(generator)) {}
  Poly gen_;
  friend std::vector<Place> places_of_degree(const Field&, int);
  friend void for_each_place(const Field&, int, const std::function<bool(const Place&)>&);
};

// Monic polynomial of degree d with index idx in [0, q^d): coefficient vector
// (c_0, ..., c_{d-1}) read as base-q digits with c_0 most significant.
Poly candidate_from_index(const Field& f, int d, std::uint64_t idx);
std::uint64_t index_of_candidate(const Poly& monic);

// Möbius count of monic irreducibles of degree d
std::uint64_t count_places(unsigned q, int d);

// All places of degree d in lexicographic order (constant term first).
std::vector<Place> places_of_degree(const Field& f, int d);
// Streaming form; the callback returns false to stop.
void for_each_place(const Field& f, int d, const std::function<bool(const Place&)>& fn);
// Places of degree 1..max_degree, by degree then lexicographically.
std::vector<Place> places_up_to(const Field& f, int max_degree);

ExtInt valuation(const Poly& f, const Place& p);
ExtInt valuation(const RationalFunction& f, const Place& p);

}  // namespace drinfeld
