#include "radnorm/dsl.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "radnorm/errors.hpp"
#include "radnorm/exponents.hpp"
#include "radnorm/kernels.hpp"

namespace radnorm::dsl {

namespace {

constexpr unsigned kMaxDegree = 4096;
constexpr int kMaxDepth = 200;

ExprPtr make(auto node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"'+'", "'-'", "end of input"});
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  int peek() {
    skip_ws();
    return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1;
  }

  std::string found() const {
    if (pos_ >= src_.size()) return "end of input";
    const unsigned char c = static_cast<unsigned char>(src_[pos_]);
    if (std::isprint(c)) return std::string("'") + static_cast<char>(c) + "'";
    char buf[16];
    std::snprintf(buf, sizeof buf, "byte 0x%02x", c);
    return buf;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw ParseError(pos_, std::move(expected), found());
  }

  void expect(char c) {
    if (peek() != c) fail({std::string("'") + c + "'"});
    ++pos_;
  }

  static bool starts_number(int c) { return std::isdigit(c) || c == '.'; }
  static bool starts_atom(int c) {
    return c == 'z' || c == '(' || c == 'K' || c == 'U' || starts_number(c);
  }

  ExprPtr expr() {
    if (++depth_ > kMaxDepth) fail({"shallower nesting"});
    ExprPtr lhs = term();
    for (;;) {
      const int c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      ExprPtr rhs = term();
      lhs = c == '+' ? make(Add{lhs, rhs}) : make(Sub{lhs, rhs});
    }
    --depth_;
    return lhs;
  }

  ExprPtr term() {
    const int c = peek();
    if (starts_number(c)) {
      const double value = number();
      if (starts_atom(peek())) return make(Mul{value, atom()});
      return make(Number{value});
    }
    return atom();
  }

  ExprPtr atom() {
    const int c = peek();
    switch (c) {
      case 'z': {
        ++pos_;
        if (peek() == '^') {
          ++pos_;
          return make(Pow{uint_literal()});
        }
        return make(Var{});
      }
      case '(': {
        ++pos_;
        ExprPtr inner = expr();
        expect(')');
        return inner;
      }
      case 'K':
        return kernel();
      case 'U':
        return ushift();
      default:
        if (starts_number(c)) return make(Number{number()});
        fail({"'z'", "number", "'('", "'K('", "'U('"});
    }
  }

  ExprPtr kernel() {
    ++pos_;
    expect('(');
    const std::size_t a_at = (skip_ws(), pos_);
    const double a = number();
    expect(',');
    const std::size_t b_at = (skip_ws(), pos_);
    const double b = number();
    expect(')');
    if (!(a >= 0.0 && a < 1.0)) throw RangeError(a_at, "kernel parameter a must lie in [0, 1)");
    if (!(b > 0.0)) throw RangeError(b_at, "kernel exponent b must be positive");
    return make(Kernel{a, b});
  }

  ExprPtr ushift() {
    ++pos_;
    expect('(');
    const std::size_t d_at = (skip_ws(), pos_);
    const double d = number();
    expect(';');
    const std::size_t p_at = (skip_ws(), pos_);
    const double p = number();
    expect(',');
    const std::size_t q_at = (skip_ws(), pos_);
    const double q = number();
    expect(';');
    const double phi = number();
    expect(')');
    if (!(d > 0.0 && d < 0.5)) throw RangeError(d_at, "U parameter delta must lie in (0, 1/2)");
    if (!(p > 1.0)) throw RangeError(p_at, "U exponent p must exceed 1");
    if (!(q > 1.0)) throw RangeError(q_at, "U exponent q must exceed 1");
    return make(UShift{d, p, q, phi});
  }

  // digits ['.' digits] | '.' digits, then optional [eE][+-]digits
  double number() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail({"number"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail({"exponent digits"});
    }
    const std::string text(src_.substr(start, pos_ - start));
    errno = 0;
    const double v = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(v) || errno == ERANGE) {
      if (!(std::isfinite(v) && v == 0.0) && !(std::isfinite(v) && std::fpclassify(v) == FP_SUBNORMAL)) {
        throw RangeError(start, "number '" + text + "' is outside double range");
      }
    }
    return v;
  }

  unsigned uint_literal() {
    skip_ws();
    const std::size_t start = pos_;
    unsigned long long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(src_[pos_] - '0');
      if (v > kMaxDegree) throw RangeError(start, "exponent exceeds " + std::to_string(kMaxDegree));
      ++pos_;
    }
    if (pos_ == start) fail({"unsigned integer"});
    return static_cast<unsigned>(v);
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_primary(const Expr& e) {
  return std::holds_alternative<Var>(e.node) || std::holds_alternative<Number>(e.node) ||
         std::holds_alternative<Pow>(e.node) || std::holds_alternative<Kernel>(e.node) ||
         std::holds_alternative<UShift>(e.node);
}

bool is_additive(const Expr& e) {
  return std::holds_alternative<Add>(e.node) || std::holds_alternative<Sub>(e.node);
}

std::string print_rhs(const Expr& e) { return is_additive(e) ? "(" + print(e) + ")" : print(e); }

// Linear combination of a polynomial and transcendental terms.
struct Linear {
  std::vector<std::complex<double>> coefficients;
  std::vector<std::pair<std::complex<double>, DiscFunction>> terms;

  void add_coefficient(std::size_t k, std::complex<double> c) {
    if (coefficients.size() <= k) coefficients.resize(k + 1, 0.0);
    coefficients[k] += c;
  }

  void merge(const Linear& other, double sign) {
    for (std::size_t k = 0; k < other.coefficients.size(); ++k) {
      add_coefficient(k, sign * other.coefficients[k]);
    }
    for (const auto& [c, f] : other.terms) terms.emplace_back(sign * c, f);
  }

  void scale(double s) {
    for (auto& c : coefficients) c *= s;
    for (auto& t : terms) t.first *= s;
  }
};

Linear linearise(const Expr& e) {
  Linear out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          out.add_coefficient(1, 1.0);
        } else if constexpr (std::is_same_v<T, Number>) {
          out.add_coefficient(0, n.value);
        } else if constexpr (std::is_same_v<T, Pow>) {
          out.add_coefficient(n.exponent, 1.0);
        } else if constexpr (std::is_same_v<T, Add>) {
          out = linearise(*n.lhs);
          out.merge(linearise(*n.rhs), 1.0);
        } else if constexpr (std::is_same_v<T, Sub>) {
          out = linearise(*n.lhs);
          out.merge(linearise(*n.rhs), -1.0);
        } else if constexpr (std::is_same_v<T, Mul>) {
          out = linearise(*n.operand);
          out.scale(n.scalar);
        } else if constexpr (std::is_same_v<T, Kernel>) {
          out.terms.emplace_back(1.0, test_kernel({n.alpha, n.beta}));
        } else if constexpr (std::is_same_v<T, UShift>) {
          out.terms.emplace_back(1.0, u_delta(n.delta, ExponentPair(n.p, n.q), n.rotation));
        }
      },
      e.node);
  return out;
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Var>) {
          return true;
        } else if constexpr (std::is_same_v<T, Number>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Add> || std::is_same_v<T, Sub>) {
          return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        } else if constexpr (std::is_same_v<T, Mul>) {
          return x.scalar == y.scalar && *x.operand == *y.operand;
        } else if constexpr (std::is_same_v<T, Pow>) {
          return x.exponent == y.exponent;
        } else if constexpr (std::is_same_v<T, Kernel>) {
          return x.alpha == y.alpha && x.beta == y.beta;
        } else {
          return x.delta == y.delta && x.p == y.p && x.q == y.q && x.rotation == y.rotation;
        }
      },
      a.node);
}

ExprPtr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string print(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) {
          return "z";
        } else if constexpr (std::is_same_v<T, Number>) {
          return fmt(n.value);
        } else if constexpr (std::is_same_v<T, Add>) {
          return print(*n.lhs) + " + " + print_rhs(*n.rhs);
        } else if constexpr (std::is_same_v<T, Sub>) {
          return print(*n.lhs) + " - " + print_rhs(*n.rhs);
        } else if constexpr (std::is_same_v<T, Mul>) {
          const std::string inner = print(*n.operand);
          return fmt(n.scalar) + " " + (is_primary(*n.operand) ? inner : "(" + inner + ")");
        } else if constexpr (std::is_same_v<T, Pow>) {
          return "z^" + std::to_string(n.exponent);
        } else if constexpr (std::is_same_v<T, Kernel>) {
          return "K(" + fmt(n.alpha) + ", " + fmt(n.beta) + ")";
        } else {
          return "U(" + fmt(n.delta) + "; " + fmt(n.p) + ", " + fmt(n.q) + "; " + fmt(n.rotation) +
                 ")";
        }
      },
      e.node);
}

DiscFunction lower(const Expr& e) {
  Linear lin = linearise(e);
  if (lin.coefficients.empty() && lin.terms.size() == 1 && lin.terms.front().first == 1.0) {
    return lin.terms.front().second;
  }
  if (lin.terms.empty()) return power_series(std::move(lin.coefficients));

  std::vector<DiscFunction> parts;
  if (!lin.coefficients.empty()) parts.push_back(power_series(std::move(lin.coefficients)));
  for (auto& [c, f] : lin.terms) parts.push_back(c == 1.0 ? f : scale(c, f));
  return parts.size() == 1 ? parts.front() : sum(std::move(parts));
}

DiscFunction compile(std::string_view source) { return lower(*parse(source)); }

}  // namespace radnorm::dsl
