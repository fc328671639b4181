#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>

// Exact Weyl-symbol algebra over polynomials in (x, p, hbar).  All
// coefficients are complex rationals; nothing in this module touches
// floating point, so algebraic identities can be checked for equality.

namespace moyal::symcalc {

using Rational = boost::multiprecision::cpp_rational;

struct CRational {
    Rational re{0};
    Rational im{0};

    CRational() = default;
    CRational(Rational r) : re(std::move(r)) {}
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    CRational(long r) : re(r) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    CRational conj() const { return {re, -im}; }

    friend CRational operator+(const CRational& a, const CRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CRational operator-(const CRational& a, const CRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const CRational& a, const CRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    // Division by a purely imaginary unit times a rational: z / (i q) = -i z / q.
    CRational div_i() const { return {im, -re}; }

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    static CRational i() { return {Rational(0), Rational(1)}; }
};

struct Monomial {
    unsigned kx = 0;
    unsigned kp = 0;
    unsigned kh = 0;

    unsigned grade() const { return kx + kp + kh; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class PolySymbol {
public:
    using TermMap = std::map<Monomial, CRational>;

    PolySymbol() = default;

    static PolySymbol constant(CRational c);
    static PolySymbol x();
    static PolySymbol p();
    static PolySymbol hbar();
    static PolySymbol i();

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void set_term(const Monomial& m, CRational c);
    void add_term(const Monomial& m, const CRational& c);

    PolySymbol operator+(const PolySymbol& o) const;
    PolySymbol operator-(const PolySymbol& o) const;
    PolySymbol operator-() const;
    PolySymbol operator*(const PolySymbol& o) const;
    PolySymbol pow(unsigned n) const;
    PolySymbol scaled(const CRational& c) const;

    PolySymbol derivative_x() const;
    PolySymbol derivative_p() const;

    // Highest total degree in (x, p); hbar does not count.  -1 for zero.
    int degree_xp() const;
    int degree_x() const;
    int degree_p() const;

    friend bool operator==(const PolySymbol&, const PolySymbol&) = default;

private:
    TermMap terms_;  // canonical: no zero coefficients stored
};

// Moyal star product as the terminating bidifferential series.  The series
// stops at n = min(deg_xp a, deg_xp b) since Lambda^n annihilates either
// factor beyond that.
PolySymbol star(const PolySymbol& a, const PolySymbol& b);

// (a*b - b*a) / (i hbar).  Throws if the division leaves a remainder, which
// would signal a star-product bug.
PolySymbol moyal_bracket(const PolySymbol& a, const PolySymbol& b);

// (a*b + b*a) / 2, the Jordan product.
PolySymbol baker_bracket(const PolySymbol& a, const PolySymbol& b);

PolySymbol poisson_bracket(const PolySymbol& a, const PolySymbol& b);

// Drops every term with hbar-degree above n.
PolySymbol truncate_order(const PolySymbol& a, unsigned n);

// Deterministic text form, graded-lexicographic in (k_h, k_x, k_p), highest
// grade first.  parse_symbol(format_symbol(a)) evaluates back to a.
std::string format_symbol(const PolySymbol& a);

// Substitutes a numeric value for hbar; key is (kx, kp).
std::map<std::pair<unsigned, unsigned>, std::complex<double>>
to_numeric(const PolySymbol& a, double hbar);

std::string format_numeric(
    const std::map<std::pair<unsigned, unsigned>, std::complex<double>>& terms);

}  // namespace moyal::symcalc
