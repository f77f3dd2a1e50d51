#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace drinfeld {

// Integer or +infinity. Used for v_p(0) and for ordic valuations of torsion points.
class ExtInt {
 public:
  constexpr ExtInt(std::int64_t v = 0) : v_(v), inf_(false) {}
  static constexpr ExtInt infinity() {
    ExtInt e;
    e.inf_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return inf_; }
  std::int64_t value() const {
    if (inf_) throw std::logic_error("value() of infinity");
    return v_;
  }

  friend constexpr bool operator==(const ExtInt& a, const ExtInt& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.v_ <=> b.v_;
  }
  friend constexpr ExtInt operator+(const ExtInt& a, const ExtInt& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtInt(a.v_ + b.v_);
  }
  friend constexpr ExtInt operator-(const ExtInt& a, std::int64_t b) {
    if (a.inf_) return a;
    return ExtInt(a.v_ - b);
  }

  std::string to_string() const { return inf_ ? "inf" : std::to_string(v_); }
  friend std::ostream& operator<<(std::ostream& os, const ExtInt& e) { return os << e.to_string(); }

 private:
  std::int64_t v_;
  bool inf_;
};

}  // namespace drinfeld
