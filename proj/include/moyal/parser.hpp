#pragma once

#include "moyal/symcalc.hpp"

#include <memory>
#include <string_view>
#include <vector>

// Input language for the symbol algebra.  Precedence, tightest first:
//   ^ (non-negative integer exponents)  >  unary -  >  *  >  + -
// Atoms: x, p, hbar, i, rational literals (e.g. 3, 3/2), parentheses, and
// the calls star(a,b), mb(a,b), bb(a,b), pb(a,b), truncate(a,n).

namespace moyal::symcalc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t column)
        : std::runtime_error(what + " (column " + std::to_string(column) + ")"),
          column_(column) {}
    size_t column() const { return column_; }  // 1-based

private:
    size_t column_;
};

struct SymbolExpr {
    enum class Kind { X, P, Hbar, I, Literal, Add, Sub, Mul, Pow, Neg, Call };
    enum class Fn { Star, Mb, Bb, Pb, Truncate };

    Kind kind;
    Rational literal;                     // Kind::Literal
    unsigned exponent = 0;                // Kind::Pow
    Fn fn = Fn::Star;                     // Kind::Call
    std::vector<std::shared_ptr<SymbolExpr>> args;
};

SymbolExpr parse_symbol(std::string_view text);

PolySymbol eval_expr(const SymbolExpr& e);

// Convenience: parse then evaluate.
PolySymbol eval_text(std::string_view text);

}  // namespace moyal::symcalc
