#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hquat/quaternion.hpp"

namespace hquat {

/// Immutable expression tree for elementary functions of one variable.
///
/// The same tree serves two readings: evaluated over a complex argument
/// (`eval_complex`, unit token `i` means the complex unit) or over a
/// quaternion argument (`eval_quaternion`, where `i` is re-read as the slice
/// unit I of the argument). Power exponents are integers only.
class Expr {
 public:
  enum class Kind : std::uint8_t {
    constant, imag_unit, var, add, sub, mul, div, pow, neg, apply
  };
  // `iunit` is the slice-unit map p -> I(p); in the complex reading it is the
  // constant function xi -> i.
  enum class Func : std::uint8_t { exp, sin, cos, log, sqrt, conj, re, iunit };

  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double v) { return make(Kind::constant, v); }
  static Expr imag_unit() { return make(Kind::imag_unit, 0.0); }
  static Expr var() { return make(Kind::var, 0.0); }
  static Expr add(Expr a, Expr b) { return make2(Kind::add, std::move(a), std::move(b)); }
  static Expr sub(Expr a, Expr b) { return make2(Kind::sub, std::move(a), std::move(b)); }
  static Expr mul(Expr a, Expr b) { return make2(Kind::mul, std::move(a), std::move(b)); }
  static Expr div(Expr a, Expr b) { return make2(Kind::div, std::move(a), std::move(b)); }
  static Expr neg(Expr a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::neg;
    n->a = a.n_;
    return Expr(std::move(n));
  }
  static Expr pow(Expr base, long long k) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::pow;
    n->a = base.n_;
    n->expo = k;
    return Expr(std::move(n));
  }
  static Expr apply(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::apply;
    n->func = f;
    n->a = arg.n_;
    return Expr(std::move(n));
  }

  Kind kind() const { return n_->kind; }
  double value() const { return n_->value; }
  long long exponent() const { return n_->expo; }
  Func func() const { return n_->func; }
  Expr lhs() const { return Expr(n_->a); }
  Expr rhs() const { return Expr(n_->b); }
  Expr arg() const { return Expr(n_->a); }

  friend bool operator==(const Expr& a, const Expr& b) {
    return structurally_equal(*a.n_, *b.n_);
  }

 private:
  struct Node {
    Kind kind = Kind::constant;
    Func func = Func::exp;
    double value = 0.0;
    long long expo = 0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static Expr make(Kind k, double v) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    return Expr(std::move(n));
  }
  static Expr make2(Kind k, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.n_;
    n->b = b.n_;
    return Expr(std::move(n));
  }

  static bool structurally_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::constant: return a.value == b.value;
      case Kind::imag_unit:
      case Kind::var: return true;
      case Kind::pow:
        return a.expo == b.expo && structurally_equal(*a.a, *b.a);
      case Kind::neg: return structurally_equal(*a.a, *b.a);
      case Kind::apply:
        return a.func == b.func && structurally_equal(*a.a, *b.a);
      default:
        return structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
    }
  }

  std::shared_ptr<const Node> n_;
};

namespace detail {

inline const char* func_name(Expr::Func f) {
  switch (f) {
    case Expr::Func::exp: return "exp";
    case Expr::Func::sin: return "sin";
    case Expr::Func::cos: return "cos";
    case Expr::Func::log: return "log";
    case Expr::Func::sqrt: return "sqrt";
    case Expr::Func::conj: return "conj";
    case Expr::Func::re: return "re";
    case Expr::Func::iunit: return "I";
  }
  return "?";
}

inline std::string format_double(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

// Precedence levels: add/sub 1, mul/div 2, neg 3, pow 4, atoms 5.
inline int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    case Expr::Kind::constant:
      return std::signbit(e.value()) ? 0 : 5;  // negative literals get parens
    default: return 5;
  }
}

inline void print_expr(const Expr& e, std::string& out, int min_prec) {
  const bool parens = precedence(e) < min_prec;
  if (parens) out += '(';
  switch (e.kind()) {
    case Expr::Kind::constant: out += format_double(e.value()); break;
    case Expr::Kind::imag_unit: out += 'i'; break;
    case Expr::Kind::var: out += 'p'; break;
    case Expr::Kind::add:
      print_expr(e.lhs(), out, 1); out += '+'; print_expr(e.rhs(), out, 2);
      break;
    case Expr::Kind::sub:
      print_expr(e.lhs(), out, 1); out += '-'; print_expr(e.rhs(), out, 2);
      break;
    case Expr::Kind::mul:
      print_expr(e.lhs(), out, 2); out += '*'; print_expr(e.rhs(), out, 3);
      break;
    case Expr::Kind::div:
      print_expr(e.lhs(), out, 2); out += '/'; print_expr(e.rhs(), out, 3);
      break;
    case Expr::Kind::neg:
      out += '-'; print_expr(e.arg(), out, 3);
      break;
    case Expr::Kind::pow:
      print_expr(e.lhs(), out, 5);
      out += '^';
      if (e.exponent() < 0) {
        out += '(';
        out += std::to_string(e.exponent());
        out += ')';
      } else {
        out += std::to_string(e.exponent());
      }
      break;
    case Expr::Kind::apply:
      out += func_name(e.func());
      out += '(';
      print_expr(e.arg(), out, 0);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

/// Canonical printable form; `parse_expr(to_string(e))` is structurally `e`.
inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_expr(e, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Parser. Grammar (whitespace ignored):
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := atom ('^' unary)?        -- exponent must fold to an integer
//   atom     := number | 'p' | 'xi' | 'i' | name '(' expr ')' | '(' expr ')'
// '^' binds tighter than unary minus and is right-associative.
// ---------------------------------------------------------------------------

namespace detail {

struct ExprParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(errc::syntax, what, pos);
  }

  Expr parse() {
    Expr e = parse_expr();
    if (!at_end()) fail("unexpected trailing input");
    return e;
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      if (consume('+')) e = Expr::add(e, parse_term());
      else if (consume('-')) e = Expr::sub(e, parse_term());
      else return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    while (true) {
      if (consume('*')) e = Expr::mul(e, parse_unary());
      else if (consume('/')) e = Expr::div(e, parse_unary());
      else return e;
    }
  }

  Expr parse_unary() {
    if (consume('-')) {
      Expr inner = parse_unary();
      // Negative literals are stored folded so printing round-trips.
      if (inner.kind() == Expr::Kind::constant)
        return Expr::constant(-inner.value());
      return Expr::neg(inner);
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    skip_ws();
    if (!consume('^')) return base;
    const std::size_t expo_pos = pos;
    Expr expo = parse_unary();
    auto folded = const_fold(expo);
    if (!folded)
      throw Error(errc::non_integer_exponent, "exponent must be a constant integer", expo_pos);
    const std::complex<double> v = *folded;
    const double r = std::round(v.real());
    if (v.imag() != 0.0 || std::abs(v.real() - r) > 1e-9 || std::abs(r) > 1e15)
      throw Error(errc::non_integer_exponent, "exponent must be an integer", expo_pos);
    return Expr::pow(base, static_cast<long long>(r));
  }

  Expr parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* begin = s.data() + pos;
      const char* end = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr == begin) fail("malformed number");
      pos += static_cast<std::size_t>(ptr - begin);
      return Expr::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t name_pos = pos;
      std::size_t j = pos;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string_view name = s.substr(pos, j - pos);
      pos = j;
      if (peek() == '(') {
        ++pos;
        auto f = lookup_func(name);
        if (!f)
          throw Error(errc::unknown_function, "unknown function '" + std::string(name) + "'",
                      name_pos);
        Expr inner = parse_expr();
        if (!consume(')')) fail("expected ')'");
        return Expr::apply(*f, inner);
      }
      if (name == "p" || name == "xi") return Expr::var();
      if (name == "i" || name == "I") return Expr::imag_unit();
      throw Error(errc::syntax, "unexpected identifier '" + std::string(name) + "'", name_pos);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  static std::optional<Expr::Func> lookup_func(std::string_view name) {
    using F = Expr::Func;
    if (name == "exp") return F::exp;
    if (name == "sin") return F::sin;
    if (name == "cos") return F::cos;
    if (name == "log") return F::log;
    if (name == "sqrt") return F::sqrt;
    if (name == "conj") return F::conj;
    if (name == "re" || name == "Re") return F::re;
    if (name == "I") return F::iunit;
    return std::nullopt;
  }

  // Evaluates variable-free subtrees; nullopt if the variable occurs.
  static std::optional<std::complex<double>> const_fold(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
      case K::constant: return std::complex<double>(e.value(), 0.0);
      case K::imag_unit: return std::complex<double>(0.0, 1.0);
      case K::var: return std::nullopt;
      case K::neg: {
        auto a = const_fold(e.arg());
        return a ? std::optional(-*a) : std::nullopt;
      }
      case K::add: case K::sub: case K::mul: case K::div: {
        auto a = const_fold(e.lhs());
        auto b = const_fold(e.rhs());
        if (!a || !b) return std::nullopt;
        switch (e.kind()) {
          case K::add: return *a + *b;
          case K::sub: return *a - *b;
          case K::mul: return *a * *b;
          default:
            if (*b == std::complex<double>(0.0)) return std::nullopt;
            return *a / *b;
        }
      }
      case K::pow: {
        auto a = const_fold(e.lhs());
        if (!a) return std::nullopt;
        return ipow(*a, e.exponent());
      }
      case K::apply: return std::nullopt;
    }
    return std::nullopt;
  }

  static std::complex<double> ipow(std::complex<double> base, long long k) {
    const bool invert = k < 0;
    unsigned long long n = invert ? -static_cast<unsigned long long>(k) : k;
    std::complex<double> acc(1.0, 0.0);
    while (n) {
      if (n & 1) acc *= base;
      base *= base;
      n >>= 1;
    }
    return invert ? 1.0 / acc : acc;
  }
};

}  // namespace detail

/// Parse an elementary-function expression. The variable may be written `p`
/// or `xi`; `i` is the imaginary unit.
inline Expr parse_expr(std::string_view text) {
  detail::ExprParser p{text};
  return p.parse();
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

namespace detail {

inline std::complex<double> complex_ipow(const std::complex<double>& base, long long k,
                                         const Expr& where) {
  if (k < 0 && base == std::complex<double>(0.0))
    throw Error(errc::eval_domain, "zero raised to a negative power in '" + to_string(where) + "'");
  return ExprParser::ipow(base, k);
}

inline std::complex<double> eval_complex_impl(const Expr& e, const std::complex<double>& xi) {
  using K = Expr::Kind;
  using F = Expr::Func;
  switch (e.kind()) {
    case K::constant: return {e.value(), 0.0};
    case K::imag_unit: return {0.0, 1.0};
    case K::var: return xi;
    case K::add: return eval_complex_impl(e.lhs(), xi) + eval_complex_impl(e.rhs(), xi);
    case K::sub: return eval_complex_impl(e.lhs(), xi) - eval_complex_impl(e.rhs(), xi);
    case K::neg: return -eval_complex_impl(e.arg(), xi);
    case K::mul: {
      const auto v = eval_complex_impl(e.lhs(), xi) * eval_complex_impl(e.rhs(), xi);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(errc::eval_domain, "non-finite product in '" + to_string(e) + "'");
      return v;
    }
    case K::div: {
      const auto den = eval_complex_impl(e.rhs(), xi);
      if (den == std::complex<double>(0.0))
        throw Error(errc::eval_domain, "division by zero in '" + to_string(e) + "'");
      const auto v = eval_complex_impl(e.lhs(), xi) / den;
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(errc::eval_domain, "non-finite quotient in '" + to_string(e) + "'");
      return v;
    }
    case K::pow: {
      const auto v = complex_ipow(eval_complex_impl(e.lhs(), xi), e.exponent(), e);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(errc::eval_domain, "non-finite power in '" + to_string(e) + "'");
      return v;
    }
    case K::apply: {
      const auto a = eval_complex_impl(e.arg(), xi);
      std::complex<double> v;
      switch (e.func()) {
        case F::exp: v = std::exp(a); break;
        case F::sin: v = std::sin(a); break;
        case F::cos: v = std::cos(a); break;
        case F::log:
          if (a == std::complex<double>(0.0))
            throw Error(errc::eval_domain, "log of zero in '" + to_string(e) + "'");
          v = std::log(a);
          break;
        case F::sqrt: v = std::sqrt(a); break;
        case F::conj: v = std::conj(a); break;
        case F::re: v = {a.real(), 0.0}; break;
        case F::iunit: v = {0.0, 1.0}; break;
      }
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(errc::eval_domain, "non-finite value in '" + to_string(e) + "'");
      return v;
    }
  }
  throw Error(errc::eval_domain, "corrupt expression node");
}

}  // namespace detail

/// Complex reading of the expression at xi.
inline std::complex<double> eval_complex(const Expr& e, const std::complex<double>& xi) {
  return detail::eval_complex_impl(e, xi);
}

/// Quaternionic reading of the expression via slice reduction: with
/// p = x + v*I the value is the complex value at x + v*i mapped back through
/// i -> I. On the real axis the complex value must be real; otherwise the
/// result would depend on an arbitrary choice of I.
inline Quaternion eval_quaternion(const Expr& e, const Quaternion& p,
                                  double v_min = v_min_default) {
  const double v = p.unreal_norm();
  if (v > v_min) {
    const Quaternion axis = p.unreal() / v;
    return from_slice(eval_complex(e, {p.x, v}), axis);
  }
  const std::complex<double> c = eval_complex(e, {p.x, 0.0});
  if (c.imag() != 0.0)
    throw Error(errc::on_real_axis,
                "complex value " + detail::format_double(c.imag()) +
                    "i at a real point; slice unit undefined");
  return Quaternion(c.real());
}

/// Wrap an expression as a QFunc (quaternionic reading).
inline QFunc to_function(const Expr& e) {
  return [e](const Quaternion& p) { return eval_quaternion(e, p); };
}

// ---------------------------------------------------------------------------
// Symbolic derivative and table antiderivative.
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_const(const Expr& e, double v) {
  return e.kind() == Expr::Kind::constant && e.value() == v;
}

// Folding constructors used for derivative/antiderivative output. Parsing
// never folds, so parse/print round trips stay structural.
inline Expr fneg(const Expr& a) {
  if (a.kind() == Expr::Kind::constant) return Expr::constant(-a.value());
  if (a.kind() == Expr::Kind::neg) return a.arg();
  return Expr::neg(a);
}

inline Expr fadd(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::constant)
    return Expr::constant(a.value() + b.value());
  return Expr::add(a, b);
}

inline Expr fsub(const Expr& a, const Expr& b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return fneg(b);
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::constant)
    return Expr::constant(a.value() - b.value());
  return Expr::sub(a, b);
}

inline Expr fmul(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::constant)
    return Expr::constant(a.value() * b.value());
  // Keep numeric factors folded together on the left: c1*(c2*x) -> (c1*c2)*x.
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::mul &&
      b.lhs().kind() == Expr::Kind::constant)
    return Expr::mul(Expr::constant(a.value() * b.lhs().value()), b.rhs());
  if (b.kind() == Expr::Kind::constant) return fmul(b, a);
  return Expr::mul(a, b);
}

inline Expr fdiv(const Expr& a, const Expr& b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::constant && b.value() != 0.0)
    return Expr::constant(a.value() / b.value());
  return Expr::div(a, b);
}

inline Expr fpow(const Expr& base, long long k) {
  if (k == 0) return Expr::constant(1.0);
  if (k == 1) return base;
  if (base.kind() == Expr::Kind::constant)
    return Expr::constant(ExprParser::ipow({base.value(), 0.0}, k).real());
  return Expr::pow(base, k);
}

inline Expr const_expr(const std::complex<double>& c) {
  if (c.imag() == 0.0) return Expr::constant(c.real());
  Expr im = c.imag() == 1.0 ? Expr::imag_unit()
                            : fmul(Expr::constant(c.imag()), Expr::imag_unit());
  if (c.real() == 0.0) return im;
  return Expr::add(Expr::constant(c.real()), im);
}

}  // namespace detail

/// Symbolic derivative by the complex differentiation rules; by construction
/// the result is also the full quaternionic derivative of the H-reading.
inline Expr derivative(const Expr& e) {
  using K = Expr::Kind;
  using F = Expr::Func;
  using namespace detail;
  switch (e.kind()) {
    case K::constant:
    case K::imag_unit: return Expr::constant(0.0);
    case K::var: return Expr::constant(1.0);
    case K::add: return fadd(derivative(e.lhs()), derivative(e.rhs()));
    case K::sub: return fsub(derivative(e.lhs()), derivative(e.rhs()));
    case K::neg: return fneg(derivative(e.arg()));
    case K::mul:
      return fadd(fmul(derivative(e.lhs()), e.rhs()), fmul(e.lhs(), derivative(e.rhs())));
    case K::div:
      return fdiv(fsub(fmul(derivative(e.lhs()), e.rhs()), fmul(e.lhs(), derivative(e.rhs()))),
                  fpow(e.rhs(), 2));
    case K::pow:
      return fmul(fmul(Expr::constant(static_cast<double>(e.exponent())),
                       fpow(e.lhs(), e.exponent() - 1)),
                  derivative(e.lhs()));
    case K::apply: {
      const Expr g = e.arg();
      const Expr dg = derivative(g);
      switch (e.func()) {
        case F::exp: return fmul(dg, e);
        case F::sin: return fmul(dg, Expr::apply(F::cos, g));
        case F::cos: return fneg(fmul(dg, Expr::apply(F::sin, g)));
        case F::log: return fdiv(dg, g);
        case F::sqrt: return fdiv(dg, fmul(Expr::constant(2.0), e));
        case F::iunit: return Expr::constant(0.0);  // constant in the complex reading
        case F::conj:
        case F::re:
          throw Error(errc::not_differentiable,
                      std::string(detail::func_name(e.func())) + " has no complex derivative");
      }
    }
  }
  throw Error(errc::eval_domain, "corrupt expression node");
}

namespace detail {

struct Linear {
  std::complex<double> slope;
  std::complex<double> offset;
};

// Decompose e as slope*var + offset with constant coefficients.
inline std::optional<Linear> linear_decompose(const Expr& e) {
  using K = Expr::Kind;
  if (auto c = ExprParser::const_fold(e)) return Linear{{0.0, 0.0}, *c};
  switch (e.kind()) {
    case K::var: return Linear{{1.0, 0.0}, {0.0, 0.0}};
    case K::neg: {
      auto a = linear_decompose(e.arg());
      if (!a) return std::nullopt;
      return Linear{-a->slope, -a->offset};
    }
    case K::add: case K::sub: {
      auto a = linear_decompose(e.lhs());
      auto b = linear_decompose(e.rhs());
      if (!a || !b) return std::nullopt;
      if (e.kind() == K::add) return Linear{a->slope + b->slope, a->offset + b->offset};
      return Linear{a->slope - b->slope, a->offset - b->offset};
    }
    case K::mul: {
      if (auto c = ExprParser::const_fold(e.lhs())) {
        auto b = linear_decompose(e.rhs());
        if (!b) return std::nullopt;
        return Linear{*c * b->slope, *c * b->offset};
      }
      if (auto c = ExprParser::const_fold(e.rhs())) {
        auto a = linear_decompose(e.lhs());
        if (!a) return std::nullopt;
        return Linear{*c * a->slope, *c * a->offset};
      }
      return std::nullopt;
    }
    case K::div: {
      auto c = ExprParser::const_fold(e.rhs());
      if (!c || *c == std::complex<double>(0.0)) return std::nullopt;
      auto a = linear_decompose(e.lhs());
      if (!a) return std::nullopt;
      return Linear{a->slope / *c, a->offset / *c};
    }
    default: return std::nullopt;
  }
}

inline bool is_affine(const std::optional<Linear>& l) {
  return l && l->slope != std::complex<double>(0.0);
}

}  // namespace detail

/// Table-driven antiderivative. Covers the power rule (exponent != -1), exp,
/// sin and cos with affine inner arguments, and linear combinations thereof.
/// Returns nullopt when the function falls outside the table; in particular
/// 1/p stays out because no quaternionic logarithm is defined here.
inline std::optional<Expr> antiderivative(const Expr& e) {
  using K = Expr::Kind;
  using F = Expr::Func;
  using namespace detail;

  // Constant (variable-free) subtrees integrate to c*p.
  if (auto c = ExprParser::const_fold(e)) return fmul(const_expr(*c), Expr::var());

  switch (e.kind()) {
    case K::var:
      return fdiv(Expr::pow(Expr::var(), 2), Expr::constant(2.0));
    case K::add: {
      auto a = antiderivative(e.lhs());
      auto b = antiderivative(e.rhs());
      if (!a || !b) return std::nullopt;
      return fadd(*a, *b);
    }
    case K::sub: {
      auto a = antiderivative(e.lhs());
      auto b = antiderivative(e.rhs());
      if (!a || !b) return std::nullopt;
      return fsub(*a, *b);
    }
    case K::neg: {
      auto a = antiderivative(e.arg());
      if (!a) return std::nullopt;
      return fneg(*a);
    }
    case K::mul: {
      if (auto c = ExprParser::const_fold(e.lhs())) {
        auto a = antiderivative(e.rhs());
        if (!a) return std::nullopt;
        return fmul(const_expr(*c), *a);
      }
      if (auto c = ExprParser::const_fold(e.rhs())) {
        auto a = antiderivative(e.lhs());
        if (!a) return std::nullopt;
        return fmul(const_expr(*c), *a);
      }
      return std::nullopt;
    }
    case K::div: {
      if (auto c = ExprParser::const_fold(e.rhs())) {
        if (*c == std::complex<double>(0.0)) return std::nullopt;
        auto a = antiderivative(e.lhs());
        if (!a) return std::nullopt;
        return fmul(const_expr(1.0 / *c), *a);
      }
      // c / g^k  ->  c * g^(-k) via the power rule.
      if (auto c = ExprParser::const_fold(e.lhs())) {
        const Expr den = e.rhs();
        if (den.kind() == K::pow) {
          auto a = antiderivative(Expr::pow(den.lhs(), -den.exponent()));
          if (!a) return std::nullopt;
          return fmul(const_expr(*c), *a);
        }
        auto lin = linear_decompose(den);
        if (is_affine(lin)) return std::nullopt;  // would need a logarithm
      }
      return std::nullopt;
    }
    case K::pow: {
      auto lin = linear_decompose(e.lhs());
      if (!is_affine(lin)) return std::nullopt;
      const long long k = e.exponent();
      if (k == -1) return std::nullopt;
      const std::complex<double> c = (static_cast<double>(k) + 1.0) * lin->slope;
      return fdiv(Expr::pow(e.lhs(), k + 1), const_expr(c));
    }
    case K::apply: {
      auto lin = linear_decompose(e.arg());
      if (!is_affine(lin)) return std::nullopt;
      const Expr g = e.arg();
      switch (e.func()) {
        case F::exp: return fdiv(Expr::apply(F::exp, g), const_expr(lin->slope));
        case F::sin: return fneg(fdiv(Expr::apply(F::cos, g), const_expr(lin->slope)));
        case F::cos: return fdiv(Expr::apply(F::sin, g), const_expr(lin->slope));
        default: return std::nullopt;
      }
    }
    default: return std::nullopt;
  }
}

}  // namespace hquat
