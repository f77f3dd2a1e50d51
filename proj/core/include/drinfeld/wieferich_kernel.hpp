#pragma once

#include <cstdint>
#include <memory>

#include "drinfeld/ore.hpp"
#include "drinfeld/places.hpp"

namespace drinfeld {

// Base-1 Wieferich test specialised to one place and many models: the
// Frobenius tables of A/p and A/p^2 are built once, after which a test costs
// a Krylov solve mod p and a Horner pass mod p^2, without allocation.
// q = 2 with 2 deg p <= 64 runs on packed bit vectors.
class WieferichKernel {
 public:
  WieferichKernel(const Place& p, int max_rank);
  ~WieferichKernel();
  WieferichKernel(WieferichKernel&&) noexcept;
  WieferichKernel& operator=(WieferichKernel&&) noexcept;

  const Place& place() const { return place_; }
  int max_rank() const { return max_rank_; }

  // |phi(A/p)|
  Poly fitting_ideal(const DrinfeldModel& m) const;
  // phi_a(1) == 0 mod p^2
  bool kills_one_mod_square(const DrinfeldModel& m, const Poly& a) const;
  // same answer as is_wieferich(m, p); falls back to it when (H)_p fails
  bool is_wieferich(const DrinfeldModel& m) const;

  struct Impl;

 private:
  Place place_;
  int max_rank_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace drinfeld
