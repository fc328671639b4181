#include "moyal/symcalc.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace moyal::symcalc {

PolySymbol PolySymbol::constant(CRational c) {
    PolySymbol s;
    s.set_term({0, 0, 0}, std::move(c));
    return s;
}

PolySymbol PolySymbol::x() {
    PolySymbol s;
    s.set_term({1, 0, 0}, CRational(1));
    return s;
}

PolySymbol PolySymbol::p() {
    PolySymbol s;
    s.set_term({0, 1, 0}, CRational(1));
    return s;
}

PolySymbol PolySymbol::hbar() {
    PolySymbol s;
    s.set_term({0, 0, 1}, CRational(1));
    return s;
}

PolySymbol PolySymbol::i() { return constant(CRational::i()); }

void PolySymbol::set_term(const Monomial& m, CRational c) {
    if (c.is_zero())
        terms_.erase(m);
    else
        terms_[m] = std::move(c);
}

void PolySymbol::add_term(const Monomial& m, const CRational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

PolySymbol PolySymbol::operator+(const PolySymbol& o) const {
    PolySymbol r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

PolySymbol PolySymbol::operator-(const PolySymbol& o) const {
    PolySymbol r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

PolySymbol PolySymbol::operator-() const {
    PolySymbol r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

PolySymbol PolySymbol::operator*(const PolySymbol& o) const {
    PolySymbol r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term({ma.kx + mb.kx, ma.kp + mb.kp, ma.kh + mb.kh}, ca * cb);
    return r;
}

PolySymbol PolySymbol::pow(unsigned n) const {
    PolySymbol r = constant(CRational(1));
    for (unsigned k = 0; k < n; ++k) r = r * *this;
    return r;
}

PolySymbol PolySymbol::scaled(const CRational& c) const {
    PolySymbol r;
    if (c.is_zero()) return r;
    for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

PolySymbol PolySymbol::derivative_x() const {
    PolySymbol r;
    for (const auto& [m, c] : terms_) {
        if (m.kx == 0) continue;
        r.add_term({m.kx - 1, m.kp, m.kh}, c * CRational(Rational(m.kx)));
    }
    return r;
}

PolySymbol PolySymbol::derivative_p() const {
    PolySymbol r;
    for (const auto& [m, c] : terms_) {
        if (m.kp == 0) continue;
        r.add_term({m.kx, m.kp - 1, m.kh}, c * CRational(Rational(m.kp)));
    }
    return r;
}

int PolySymbol::degree_xp() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.kx + m.kp));
    return d;
}

int PolySymbol::degree_x() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.kx));
    return d;
}

int PolySymbol::degree_p() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.kp));
    return d;
}

namespace {

Rational binomial(unsigned n, unsigned k) {
    Rational r = 1;
    for (unsigned j = 0; j < k; ++j) r = r * Rational(n - j) / Rational(j + 1);
    return r;
}

}  // namespace

PolySymbol star(const PolySymbol& a, const PolySymbol& b) {
    const int bound = std::min(a.degree_xp(), b.degree_xp());
    PolySymbol result;

    // (i hbar / 2)^n / n!
    CRational coeff(Rational(1));
    for (int n = 0; n <= bound; ++n) {
        if (n > 0) {
            coeff = coeff * CRational(Rational(0), Rational(1, 2));
            coeff = coeff * CRational(Rational(1, n));
        }
        // Lambda^n(a, b) = sum_k C(n,k) (-1)^k (dx^{n-k} dp^k a)(dp^{n-k} dx^k b)
        for (int k = 0; k <= n; ++k) {
            PolySymbol da = a;
            for (int j = 0; j < n - k; ++j) da = da.derivative_x();
            for (int j = 0; j < k; ++j) da = da.derivative_p();
            if (da.is_zero()) continue;
            PolySymbol db = b;
            for (int j = 0; j < n - k; ++j) db = db.derivative_p();
            for (int j = 0; j < k; ++j) db = db.derivative_x();
            if (db.is_zero()) continue;

            Rational w = binomial(n, k);
            if (k % 2) w = -w;
            PolySymbol term = (da * db).scaled(coeff * CRational(w));
            // shift by hbar^n
            PolySymbol shifted;
            for (const auto& [m, c] : term.terms())
                shifted.set_term({m.kx, m.kp, m.kh + unsigned(n)}, c);
            result = result + shifted;
        }
    }
    return result;
}

PolySymbol moyal_bracket(const PolySymbol& a, const PolySymbol& b) {
    PolySymbol diff = star(a, b) - star(b, a);
    PolySymbol r;
    for (const auto& [m, c] : diff.terms()) {
        if (m.kh == 0)
            throw std::logic_error(
                "moyal_bracket: commutator term without hbar factor");
        r.set_term({m.kx, m.kp, m.kh - 1}, c.div_i());
    }
    return r;
}

PolySymbol baker_bracket(const PolySymbol& a, const PolySymbol& b) {
    return (star(a, b) + star(b, a)).scaled(CRational(Rational(1, 2)));
}

PolySymbol poisson_bracket(const PolySymbol& a, const PolySymbol& b) {
    return a.derivative_x() * b.derivative_p() - a.derivative_p() * b.derivative_x();
}

PolySymbol truncate_order(const PolySymbol& a, unsigned n) {
    PolySymbol r;
    for (const auto& [m, c] : a.terms())
        if (m.kh <= n) r.set_term(m, c);
    return r;
}

namespace {

std::string format_rational(const Rational& q, bool parens_if_frac) {
    std::ostringstream os;
    if (boost::multiprecision::denominator(q) == 1) {
        os << boost::multiprecision::numerator(q);
        return os.str();
    }
    if (parens_if_frac) os << '(';
    os << boost::multiprecision::numerator(q) << '/'
       << boost::multiprecision::denominator(q);
    if (parens_if_frac) os << ')';
    return os.str();
}

// Renders |coeff| * monomial; returns the sign separately for real or pure
// imaginary coefficients.  Mixed complex coefficients render inside parens
// with a '+' joiner.
struct RenderedTerm {
    bool negative = false;
    std::string body;
};

RenderedTerm render_term(const Monomial& m, const CRational& c) {
    std::vector<std::string> factors;

    auto mono = [&] {
        auto put = [&](const char* name, unsigned k) {
            if (k == 0) return;
            std::string f = name;
            if (k > 1) f += "^" + std::to_string(k);
            factors.push_back(std::move(f));
        };
        put("x", m.kx);
        put("p", m.kp);
        put("hbar", m.kh);
    };

    RenderedTerm out;
    if (c.is_real()) {
        Rational q = c.re;
        if (q < 0) {
            out.negative = true;
            q = -q;
        }
        if (q != 1 || m.grade() == 0) factors.push_back(format_rational(q, true));
        mono();
    } else if (c.re == 0) {
        Rational q = c.im;
        if (q < 0) {
            out.negative = true;
            q = -q;
        }
        if (q != 1) factors.push_back(format_rational(q, true));
        factors.push_back("i");
        mono();
    } else {
        std::string inner = format_rational(c.re, false);
        Rational q = c.im;
        if (q < 0) {
            inner += " - ";
            q = -q;
        } else {
            inner += " + ";
        }
        if (q != 1) inner += format_rational(q, false) + "*";
        inner += "i";
        factors.push_back("(" + inner + ")");
        mono();
    }

    std::string body;
    for (size_t k = 0; k < factors.size(); ++k) {
        if (k) body += "*";
        body += factors[k];
    }
    out.body = std::move(body);
    return out;
}

}  // namespace

std::string format_symbol(const PolySymbol& a) {
    if (a.is_zero()) return "0";

    std::vector<std::pair<Monomial, CRational>> ordered(a.terms().begin(),
                                                        a.terms().end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
        if (l.first.grade() != r.first.grade())
            return l.first.grade() > r.first.grade();
        return std::tie(l.first.kh, l.first.kx, l.first.kp) <
               std::tie(r.first.kh, r.first.kx, r.first.kp);
    });

    std::string out;
    bool first = true;
    for (const auto& [m, c] : ordered) {
        RenderedTerm t = render_term(m, c);
        if (first) {
            if (t.negative) out += "-";
            out += t.body;
            first = false;
        } else {
            out += t.negative ? " - " : " + ";
            out += t.body;
        }
    }
    return out;
}

std::map<std::pair<unsigned, unsigned>, std::complex<double>>
to_numeric(const PolySymbol& a, double hbar) {
    std::map<std::pair<unsigned, unsigned>, std::complex<double>> out;
    for (const auto& [m, c] : a.terms()) {
        std::complex<double> v = c.to_double() * std::pow(hbar, double(m.kh));
        auto key = std::make_pair(m.kx, m.kp);
        auto it = out.find(key);
        if (it == out.end())
            out.emplace(key, v);
        else
            it->second += v;
    }
    return out;
}

std::string format_numeric(
    const std::map<std::pair<unsigned, unsigned>, std::complex<double>>& terms) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [key, v] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.real();
        if (v.imag() >= 0)
            os << "+" << v.imag() << "i)";
        else
            os << v.imag() << "i)";
        if (key.first) {
            os << "*x";
            if (key.first > 1) os << "^" << key.first;
        }
        if (key.second) {
            os << "*p";
            if (key.second > 1) os << "^" << key.second;
        }
    }
    return os.str();
}

}  // namespace moyal::symcalc
