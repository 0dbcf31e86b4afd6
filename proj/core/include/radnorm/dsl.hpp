#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "radnorm/disc_function.hpp"

namespace radnorm::dsl {

/// Grammar accepted by `parse`, whitespace insensitive:
///
///     expr := term (('+'|'-') term)*
///     term := scalar? atom
///     atom := 'z' ('^' uint)? | number | '(' expr ')'
///           | 'K(' number ',' number ')'
///           | 'U(' number ';' number ',' number ';' number ')'
///
/// K(a, b) is (1 - a z)^(-b) with 0 ≤ a < 1 and b > 0. U(δ; p, q; φ) is
/// δ / (1 + δ - z e^{-iφ})^(1 + 1/p + 1/q) with 0 < δ < 1/2 and p, q > 1.
/// Numbers are unsigned decimals with an optional exponent.
inline constexpr std::string_view kGrammar =
    "expr := term (('+'|'-') term)*\n"
    "term := scalar? atom\n"
    "atom := 'z' ('^' uint)? | number | '(' expr ')'\n"
    "      | 'K(' number ',' number ')'\n"
    "      | 'U(' number ';' number ',' number ';' number ')'\n"
    "K(a,b)       = (1 - a z)^(-b),  0 <= a < 1, b > 0\n"
    "U(d;p,q;phi) = d / (1 + d - z e^(-i phi))^(1 + 1/p + 1/q),  0 < d < 1/2, p,q > 1\n"
    "numbers: unsigned decimal with optional exponent, e.g. 0.5, 2, 1e-3\n";

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Var {};
struct Number {
  double value;
};
struct Add {
  ExprPtr lhs, rhs;
};
struct Sub {
  ExprPtr lhs, rhs;
};
struct Mul {
  double scalar;
  ExprPtr operand;
};
struct Pow {
  unsigned exponent;
};
struct Kernel {
  double alpha, beta;
};
struct UShift {
  double delta, p, q, rotation;
};

struct Expr {
  std::variant<Var, Number, Add, Sub, Mul, Pow, Kernel, UShift> node;
};

/// Structural equality; numbers compare exactly.
bool operator==(const Expr& a, const Expr& b);

/// Throws ParseError (with byte offset and expected tokens) on malformed
/// input and RangeError on out-of-range literals.
ExprPtr parse(std::string_view source);

/// Canonical text that parses back to a structurally equal tree.
std::string print(const Expr& e);

/// Polynomial parts merge into one PowerSeries; a lone K lowers to exactly
/// the kernel function; U lowers to a rotated pole shift.
DiscFunction lower(const Expr& e);

/// parse followed by lower.
DiscFunction compile(std::string_view source);

}  // namespace radnorm::dsl
