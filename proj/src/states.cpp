#include "moyal/states.hpp"

#include <cctype>
#include <cmath>
#include <iostream>
#include <map>
#include <string>

namespace moyal::states {

WaveFunction gaussian(const GridSpec& g, double x0, double p0, double sigma) {
    if (sigma <= 0) throw Error("gaussian: sigma must be positive");
    WaveFunction psi(g);
    const double norm = std::pow(2.0 * GridSpec::pi() * sigma * sigma, -0.25);
    for (int j = 0; j < g.n; ++j) {
        double x = g.x(j);
        double arg = -(x - x0) * (x - x0) / (4.0 * sigma * sigma);
        psi.values[j] = norm * std::exp(arg) *
                        std::exp(cplx(0.0, p0 * (x - x0) / g.hbar));
    }
    psi.renormalize();
    return psi;
}

WaveFunction ho_eigenstate(const GridSpec& g, int n, double mass, double omega) {
    if (n < 0) throw Error("ho: n must be non-negative");
    if (mass <= 0 || omega <= 0) throw Error("ho: mass and omega must be positive");
    WaveFunction psi(g);
    const double a = mass * omega / g.hbar;
    const double norm0 = std::pow(a / GridSpec::pi(), 0.25);
    for (int j = 0; j < g.n; ++j) {
        double xi = std::sqrt(a) * g.x(j);
        // normalized Hermite-function recurrence:
        // phi_k = sqrt(2/k) xi phi_{k-1} - sqrt((k-1)/k) phi_{k-2}
        double prev2 = 0.0;
        double prev = norm0 * std::exp(-xi * xi / 2.0);
        for (int k = 1; k <= n; ++k) {
            double cur = std::sqrt(2.0 / k) * xi * prev -
                         std::sqrt(double(k - 1) / k) * prev2;
            prev2 = prev;
            prev = cur;
        }
        psi.values[j] = prev;
    }
    psi.renormalize();
    return psi;
}

double ho_energy(const GridSpec& g, int n, double omega) {
    return g.hbar * omega * (n + 0.5);
}

namespace {

class DescParser {
public:
    DescParser(std::string_view text, const GridSpec& g) : text_(text), grid_(g) {}

    WaveFunction parse() {
        WaveFunction acc(grid_);
        bool first = true;
        for (;;) {
            double sign = 1.0;
            skip_ws();
            if (!first) {
                if (pos_ >= text_.size()) break;
                char c = text_[pos_];
                if (c == '+') {
                    ++pos_;
                } else if (c == '-') {
                    sign = -1.0;
                    ++pos_;
                } else {
                    fail("expected '+' or '-'");
                }
            } else if (peek() == '-') {
                sign = -1.0;
                ++pos_;
            }
            auto [w, base] = term();
            for (int j = 0; j < grid_.n; ++j)
                acc.values[j] += sign * w * base.values[j];
            first = false;
            skip_ws();
            if (pos_ >= text_.size()) break;
        }
        acc.renormalize();
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        throw Error("state descriptor: " + what + " at position " +
                    std::to_string(pos_ + 1));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(unsigned(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool ident_ahead() {
        skip_ws();
        return pos_ < text_.size() && std::isalpha(unsigned(text_[pos_]));
    }

    double number() {
        skip_ws();
        size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(unsigned(text_[end])) || text_[end] == '.' ||
                text_[end] == '-' || text_[end] == '+' || text_[end] == 'e' ||
                text_[end] == 'E')) {
            // '+'/'-' only as leading sign or exponent sign
            if ((text_[end] == '-' || text_[end] == '+') && end != pos_ &&
                text_[end - 1] != 'e' && text_[end - 1] != 'E')
                break;
            ++end;
        }
        if (end == pos_) fail("expected number");
        double v = std::stod(std::string(text_.substr(pos_, end - pos_)));
        pos_ = end;
        return v;
    }

    std::pair<cplx, WaveFunction> term() {
        cplx w = 1.0;
        if (!ident_ahead()) {
            if (peek() == '(') {
                ++pos_;
                double re = number();
                cplx v = re;
                skip_ws();
                if (peek() == '+' || peek() == '-') {
                    double s = text_[pos_] == '-' ? -1.0 : 1.0;
                    ++pos_;
                    double im = number();
                    skip_ws();
                    if (peek() != 'i') fail("expected 'i'");
                    ++pos_;
                    v = cplx(re, s * im);
                }
                skip_ws();
                if (peek() != ')') fail("expected ')'");
                ++pos_;
                w = v;
            } else {
                w = number();
            }
            skip_ws();
            if (peek() != '*') fail("expected '*' after weight");
            ++pos_;
        }
        return {w, base()};
    }

    WaveFunction base() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(unsigned(text_[pos_]))) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (peek() != '(') fail("expected '(' after '" + name + "'");
        ++pos_;
        std::map<std::string, double> kv;
        if (peek() != ')') {
            for (;;) {
                skip_ws();
                size_t ks = pos_;
                while (pos_ < text_.size() &&
                       (std::isalnum(unsigned(text_[pos_])) || text_[pos_] == '_'))
                    ++pos_;
                std::string key(text_.substr(ks, pos_ - ks));
                if (key.empty()) fail("expected parameter name");
                if (peek() != '=') fail("expected '=' after '" + key + "'");
                ++pos_;
                kv[key] = number();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        if (peek() != ')') fail("expected ')'");
        ++pos_;

        auto get = [&](const char* key, double dflt) {
            auto it = kv.find(key);
            if (it == kv.end()) return dflt;
            double v = it->second;
            kv.erase(it);
            return v;
        };
        WaveFunction out(grid_);
        if (name == "gaussian") {
            double x0 = get("x0", 0.0), p0 = get("p0", 0.0), sigma = get("sigma", 1.0);
            if (!kv.empty()) fail("unknown parameter '" + kv.begin()->first + "'");
            out = gaussian(grid_, x0, p0, sigma);
        } else if (name == "ho") {
            double n = get("n", 0.0), m = get("m", 1.0), omega = get("omega", 1.0);
            if (!kv.empty()) fail("unknown parameter '" + kv.begin()->first + "'");
            if (n != std::floor(n)) fail("ho: n must be an integer");
            out = ho_eigenstate(grid_, int(n), m, omega);
        } else {
            fail("unknown state '" + name + "'");
        }
        return out;
    }

    std::string_view text_;
    size_t pos_ = 0;
    const GridSpec& grid_;
};

}  // namespace

WaveFunction state_factory(std::string_view descriptor, const GridSpec& g) {
    if (descriptor.empty()) throw Error("state descriptor: empty");
    WaveFunction psi = DescParser(descriptor, g).parse();
    if (!boundary_decay_ok(psi))
        std::cerr << "warning: state has not decayed below 1e-12 at the box edge; "
                     "the domain may be too small\n";
    return psi;
}

bool boundary_decay_ok(const WaveFunction& psi) {
    int n = psi.grid.n;
    double edge = std::max({std::abs(psi.values[0]), std::abs(psi.values[1]),
                            std::abs(psi.values[n - 2]), std::abs(psi.values[n - 1])});
    return edge < 1e-12;
}

}  // namespace moyal::states
