#pragma once

#include <stdexcept>
#include <string>

#include "moyal/spin_ops.hpp"

namespace moyal {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Operator expression over spins labelled from 1, e.g. "2*I1z*I2z + 0.5*I1x".
// Tokens: I<k>x|y|z|a|alpha|b|beta|p|plus|m|minus, Id (or E), numbers, pi,
// i, sqrt(...), + - * /, parentheses. Products of operators are matrix
// products.
SpinOperator parse_operator_expr(const std::string& text, int n_spins, HalfInt J = kHalf);

// Scalar-only expression such as "pi/20".
double parse_real_expr(const std::string& text);

}  // namespace moyal
