#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/parser.hpp"
#include "moyal/symcalc.hpp"

#include <random>

using namespace moyal::symcalc;

namespace {

PolySymbol sym(const char* text) { return eval_text(text); }

// Random polynomial of bounded degree with small rational coefficients.
PolySymbol random_poly(std::mt19937& rng, int max_deg, bool with_hbar = false) {
    std::uniform_int_distribution<int> nterms(1, 5);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    PolySymbol out;
    int t = nterms(rng);
    for (int k = 0; k < t; ++k) {
        int dx = deg(rng);
        int dp = deg(rng) % (max_deg - dx + 1);
        int dh = with_hbar ? deg(rng) % 2 : 0;
        CRational c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        out.add_term({unsigned(dx), unsigned(dp), unsigned(dh)}, c);
    }
    return out;
}

}  // namespace

TEST_CASE("parser grammar and errors") {
    // x*p - p*x evaluates to zero in the commutative pointwise product
    CHECK(sym("x*p - p*x").is_zero());

    SymbolExpr ast = parse_symbol("x*p - p*x");
    CHECK(ast.kind == SymbolExpr::Kind::Sub);
    CHECK(ast.args[0]->kind == SymbolExpr::Kind::Mul);
    CHECK(ast.args[1]->kind == SymbolExpr::Kind::Mul);

    SymbolExpr call = parse_symbol("star(x, p)");
    CHECK(call.kind == SymbolExpr::Kind::Call);
    CHECK(call.fn == SymbolExpr::Fn::Star);
    CHECK(call.args.size() == 2);

    CHECK_THROWS_AS(parse_symbol("x^-1"), ParseError);
    try {
        parse_symbol("x^-1");
    } catch (const ParseError& e) {
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_symbol("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_symbol(""), ParseError);
    CHECK_THROWS_AS(parse_symbol("x +"), ParseError);

    // whitespace-insensitive
    CHECK(sym("  star( x ,p )  ") == sym("star(x,p)"));

    // precedence: ^ binds tighter than unary minus, * tighter than +
    CHECK(sym("-x^2") == -sym("x^2"));
    CHECK(sym("1 + 2*x") == sym("(2*x) + 1"));
    CHECK(sym("3/2") == PolySymbol::constant(CRational(Rational(3, 2))));
}

TEST_CASE("star product basics") {
    PolySymbol x = PolySymbol::x();
    PolySymbol p = PolySymbol::p();

    // star(x,p) = xp + i hbar/2
    PolySymbol expect = sym("x*p + (1/2)*i*hbar");
    CHECK(star(x, p) == expect);

    // identity element
    std::mt19937 rng(7);
    for (int k = 0; k < 10; ++k) {
        PolySymbol a = random_poly(rng, 4, true);
        CHECK(star(a, PolySymbol::constant(CRational(1))) == a);
        CHECK(star(PolySymbol::constant(CRational(1)), a) == a);
    }

    // canonical commutation: x*p - p*x = i hbar, exactly
    CHECK(star(x, p) - star(p, x) == sym("i*hbar"));
}

TEST_CASE("brackets") {
    CHECK(sym("mb(x,p)") == sym("1"));
    CHECK(sym("mb(x^3,p^3)") == sym("9*x^2*p^2 - (3/2)*hbar^2"));
    CHECK(sym("bb(x,p)") == sym("x*p"));
    CHECK(sym("bb(x^2,p^2)") == sym("x^2*p^2 - (1/2)*hbar^2"));
    CHECK(sym("pb(x,p)") == sym("1"));
    CHECK(sym("pb(x^3,p^3)") == sym("9*x^2*p^2"));

    std::mt19937 rng(11);
    for (int k = 0; k < 20; ++k) {
        PolySymbol a = random_poly(rng, 4);
        PolySymbol b = random_poly(rng, 3);
        // antisymmetry / symmetry
        CHECK(moyal_bracket(a, a).is_zero());
        CHECK(poisson_bracket(a, a).is_zero());
        PolySymbol ab = baker_bracket(a, b);
        CHECK(ab == baker_bracket(b, a));
        // bb has even powers of hbar only
        for (const auto& [m, c] : ab.terms()) CHECK(m.kh % 2 == 0);
        // identity element of bb
        CHECK(baker_bracket(a, PolySymbol::constant(CRational(1))) == a);
    }
}

TEST_CASE("truncate_order") {
    CHECK(truncate_order(sym("mb(x^3,p^3)"), 1) == sym("9*x^2*p^2"));
    CHECK(truncate_order(sym("i*hbar"), 0).is_zero());
    PolySymbol a = sym("x^2*p + hbar^3*x - 2*hbar");
    CHECK(truncate_order(a, 100) == a);
}

TEST_CASE("classical limits") {
    std::mt19937 rng(13);
    for (int k = 0; k < 50; ++k) {
        PolySymbol a = random_poly(rng, 4);
        PolySymbol b = random_poly(rng, 4);
        CHECK(truncate_order(moyal_bracket(a, b), 0) == poisson_bracket(a, b));
        CHECK(truncate_order(baker_bracket(a, b), 0) == a * b);
    }
    // quadratic polynomials are classical: mb == pb including hbar terms
    for (int k = 0; k < 20; ++k) {
        PolySymbol a = random_poly(rng, 2);
        PolySymbol b = random_poly(rng, 2);
        CHECK(moyal_bracket(a, b) == poisson_bracket(a, b));
    }
}

TEST_CASE("star associativity") {
    std::mt19937 rng(17);
    for (int k = 0; k < 25; ++k) {
        PolySymbol a = random_poly(rng, 4);
        PolySymbol b = random_poly(rng, 4);
        PolySymbol c = random_poly(rng, 4);
        CHECK(star(star(a, b), c) == star(a, star(b, c)));
    }
}

TEST_CASE("moyal bracket is a derivation over the star algebra") {
    std::mt19937 rng(19);
    for (int k = 0; k < 15; ++k) {
        PolySymbol a = random_poly(rng, 3);
        PolySymbol b = random_poly(rng, 3);
        PolySymbol c = random_poly(rng, 3);
        PolySymbol lhs = moyal_bracket(a, star(b, c));
        PolySymbol rhs = star(moyal_bracket(a, b), c) + star(b, moyal_bracket(a, c));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Jordan identity for the Baker bracket") {
    // (a o b) o (a o a) = a o (b o (a o a)) with a o b = bb(a,b)
    std::mt19937 rng(23);
    for (int k = 0; k < 10; ++k) {
        PolySymbol a = random_poly(rng, 3);
        PolySymbol b = random_poly(rng, 3);
        PolySymbol aa = baker_bracket(a, a);
        CHECK(baker_bracket(baker_bracket(a, b), aa) ==
              baker_bracket(a, baker_bracket(b, aa)));
    }
}

TEST_CASE("format round-trip") {
    CHECK(format_symbol(sym("star(x,p)")) == "x*p + (1/2)*i*hbar");
    CHECK(format_symbol(PolySymbol()) == "0");
    CHECK(format_symbol(sym("mb(x^3,p^3)")) == "9*x^2*p^2 - (3/2)*hbar^2");

    std::mt19937 rng(29);
    for (int k = 0; k < 100; ++k) {
        PolySymbol a = random_poly(rng, 5, true);
        CHECK(eval_text(format_symbol(a)) == a);
    }
}

TEST_CASE("numeric hbar substitution") {
    auto terms = to_numeric(sym("mb(x^3,p^3)"), 0.5);
    // 9 x^2 p^2 - (3/2) (1/4)
    CHECK(terms.at({2, 2}) == std::complex<double>(9.0, 0.0));
    CHECK(terms.at({0, 0}) == std::complex<double>(-0.375, 0.0));
}
