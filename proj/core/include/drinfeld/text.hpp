#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drinfeld/poly.hpp"
#include "drinfeld/rational.hpp"

namespace drinfeld {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Polynomial grammar: sums of terms c*t^k; coefficients of F_{p^k} are
// polynomials in z, e.g. "(z+1)*t^2 + z". Products, powers, parentheses and
// '-' are accepted as well; whitespace is ignored.
Poly parse_poly(const Field& f, std::string_view text, char var = 't');

// Same grammar with the extra symbol "tau"; entry i is the coefficient of tau^i.
std::vector<Poly> parse_tau_poly(const Field& f, std::string_view text);

// Canonical printer; parse_poly(to_string(f)) == f.
std::string to_string(const Poly& f, char var = 't');
std::string to_string(const RationalFunction& f, char var = 't');

}  // namespace drinfeld
