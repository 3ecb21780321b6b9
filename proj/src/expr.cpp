#include "moyal/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace moyal {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error("position " + std::to_string(position) + ": " + what), position_(position) {}

namespace {

struct Value {
  bool is_op = false;
  cplx s = 0.0;
  Matrix m;
};

class Parser {
 public:
  Parser(const std::string& text, int n, HalfInt J) : t_(text), n_(n), J_(J) {
    one_ = SpinOperator::identity(n, J).matrix();
  }

  SpinOperator run() {
    const Value v = whole();
    return SpinOperator(n_, J_, v.is_op ? v.m : Matrix(v.s * one_));
  }

  cplx run_scalar() {
    const Value v = whole();
    if (v.is_op) throw ParseError("expected a number, found an operator", 0);
    return v.s;
  }

 private:
  const std::string& t_;
  std::size_t p_ = 0;
  int n_;
  HalfInt J_;
  Matrix one_;

  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }

  bool eat(char c) {
    skip();
    if (p_ < t_.size() && t_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }

  bool eat_word(const std::string& w) {
    skip();
    if (t_.compare(p_, w.size(), w) != 0) return false;
    const std::size_t end = p_ + w.size();
    if (end < t_.size() && std::isalnum(static_cast<unsigned char>(t_[end]))) return false;
    p_ = end;
    return true;
  }

  Value whole() {
    Value v = expr();
    skip();
    if (p_ < t_.size()) throw ParseError(std::string("unexpected '") + t_[p_] + "'", p_);
    return v;
  }

  Matrix as_matrix(const Value& v) const { return v.is_op ? v.m : Matrix(v.s * one_); }

  Value add(const Value& a, const Value& b, double sign) {
    if (!a.is_op && !b.is_op) return {false, a.s + sign * b.s, {}};
    return {true, 0.0, as_matrix(a) + sign * as_matrix(b)};
  }

  Value mul(const Value& a, const Value& b) {
    if (!a.is_op && !b.is_op) return {false, a.s * b.s, {}};
    if (!a.is_op) return {true, 0.0, a.s * b.m};
    if (!b.is_op) return {true, 0.0, a.m * b.s};
    return {true, 0.0, a.m * b.m};
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+'))
        v = add(v, term(), 1.0);
      else if (eat('-'))
        v = add(v, term(), -1.0);
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        v = mul(v, unary());
      } else if (eat('/')) {
        const std::size_t at = p_;
        const Value d = unary();
        if (d.is_op) throw ParseError("division by an operator", at);
        if (d.s == 0.0) throw ParseError("division by zero", at);
        v = mul(v, Value{false, 1.0 / d.s, {}});
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) return mul(Value{false, -1.0, {}}, unary());
    if (eat('+')) return unary();
    return primary();
  }

  Value primary() {
    skip();
    if (p_ >= t_.size()) throw ParseError("unexpected end of expression", p_);
    const std::size_t start = p_;
    const char c = t_[p_];
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) throw ParseError("expected ')'", p_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (eat_word("pi")) return {false, std::numbers::pi, {}};
    if (eat_word("i")) return {false, cplx(0.0, 1.0), {}};
    if (eat_word("Id") || eat_word("E")) return {true, 0.0, one_};
    if (t_.compare(p_, 4, "\xF0\x9D\x9F\x99") == 0) {  // U+1D7D9
      p_ += 4;
      return {true, 0.0, one_};
    }
    if (eat_word("sqrt")) {
      if (!eat('(')) throw ParseError("expected '(' after sqrt", p_);
      const Value v = expr();
      if (!eat(')')) throw ParseError("expected ')'", p_);
      if (v.is_op) throw ParseError("sqrt of an operator", start);
      return {false, std::sqrt(v.s), {}};
    }
    if (c == 'I') return spin_operator();
    throw ParseError(std::string("unexpected '") + c + "'", start);
  }

  Value number() {
    const char* begin = t_.c_str() + p_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", p_);
    p_ += static_cast<std::size_t>(end - begin);
    return {false, v, {}};
  }

  Value spin_operator() {
    const std::size_t start = p_;
    ++p_;  // 'I'
    std::size_t digits_end = p_;
    while (digits_end < t_.size() && std::isdigit(static_cast<unsigned char>(t_[digits_end]))) ++digits_end;
    if (digits_end == p_) throw ParseError("expected spin label after 'I'", p_);
    const int k = std::stoi(t_.substr(p_, digits_end - p_));
    if (k < 1 || k > n_) throw ParseError("spin label " + std::to_string(k) + " out of range", p_);
    p_ = digits_end;
    std::size_t word_end = p_;
    while (word_end < t_.size() && std::isalpha(static_cast<unsigned char>(t_[word_end]))) ++word_end;
    const std::string word = t_.substr(p_, word_end - p_);
    Axis axis;
    if (word == "x") axis = Axis::x;
    else if (word == "y") axis = Axis::y;
    else if (word == "z") axis = Axis::z;
    else if (word == "a" || word == "alpha") axis = Axis::alpha;
    else if (word == "b" || word == "beta") axis = Axis::beta;
    else if (word == "p" || word == "plus") axis = Axis::plus;
    else if (word == "m" || word == "minus") axis = Axis::minus;
    else throw ParseError("unknown spin component '" + word + "'", p_);
    p_ = word_end;
    try {
      return {true, 0.0, cartesian_op(n_, {{k - 1, axis}}, J_).matrix()};
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), start);
    }
  }
};

}  // namespace

SpinOperator parse_operator_expr(const std::string& text, int n_spins, HalfInt J) {
  return Parser(text, n_spins, J).run();
}

double parse_real_expr(const std::string& text) {
  const cplx v = Parser(text, 1, kHalf).run_scalar();
  if (v.imag() != 0.0) throw ParseError("expected a real number", 0);
  return v.real();
}

}  // namespace moyal
