#include "moyal/parser.hpp"

#include <cctype>

namespace moyal::symcalc {

namespace {

using ExprPtr = std::shared_ptr<SymbolExpr>;

ExprPtr make(SymbolExpr e) { return std::make_shared<SymbolExpr>(std::move(e)); }

struct Token {
    enum class Kind { Ident, Integer, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, End };
    Kind kind;
    std::string text;
    size_t column;  // 1-based
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(unsigned(text_[pos_]))) ++pos_;
        tok_.column = pos_ + 1;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text.clear();
            return;
        }
        char c = text_[pos_];
        auto single = [&](Token::Kind k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            ++pos_;
        };
        switch (c) {
            case '+': single(Token::Kind::Plus); return;
            case '-': single(Token::Kind::Minus); return;
            case '*': single(Token::Kind::Star); return;
            case '^': single(Token::Kind::Caret); return;
            case '/': single(Token::Kind::Slash); return;
            case '(': single(Token::Kind::LParen); return;
            case ')': single(Token::Kind::RParen); return;
            case ',': single(Token::Kind::Comma); return;
            default: break;
        }
        if (std::isdigit(unsigned(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(unsigned(text_[pos_]))) ++pos_;
            tok_.kind = Token::Kind::Integer;
            tok_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha(unsigned(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(unsigned(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = Token::Kind::Ident;
            tok_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_ + 1);
    }

    std::string_view text_;
    size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("unexpected token '" + t.text + "'", t.column);
        return e;
    }

private:
    ExprPtr sum() {
        ExprPtr left = product();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Plus || t.kind == Token::Kind::Minus) {
                bool minus = t.kind == Token::Kind::Minus;
                lex_.take();
                ExprPtr right = product();
                SymbolExpr e;
                e.kind = minus ? SymbolExpr::Kind::Sub : SymbolExpr::Kind::Add;
                e.args = {left, right};
                left = make(std::move(e));
            } else {
                return left;
            }
        }
    }

    ExprPtr product() {
        ExprPtr left = unary();
        for (;;) {
            if (lex_.peek().kind == Token::Kind::Star) {
                lex_.take();
                ExprPtr right = unary();
                SymbolExpr e;
                e.kind = SymbolExpr::Kind::Mul;
                e.args = {left, right};
                left = make(std::move(e));
            } else {
                return left;
            }
        }
    }

    ExprPtr unary() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            SymbolExpr e;
            e.kind = SymbolExpr::Kind::Neg;
            e.args = {unary()};
            return make(std::move(e));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (lex_.peek().kind != Token::Kind::Caret) return base;
        lex_.take();
        const Token t = lex_.peek();
        if (t.kind != Token::Kind::Integer)
            throw ParseError("exponent must be a non-negative integer", t.column);
        lex_.take();
        SymbolExpr e;
        e.kind = SymbolExpr::Kind::Pow;
        e.exponent = unsigned(std::stoul(t.text));
        e.args = {base};
        return make(std::move(e));
    }

    ExprPtr atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::LParen: {
                ExprPtr e = sum();
                Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", close.column);
                return e;
            }
            case Token::Kind::Integer: {
                Rational value(t.text);
                // rational literal: integer '/' integer
                if (lex_.peek().kind == Token::Kind::Slash) {
                    lex_.take();
                    Token den = lex_.take();
                    if (den.kind != Token::Kind::Integer)
                        throw ParseError("expected integer denominator", den.column);
                    Rational d(den.text);
                    if (d == 0) throw ParseError("division by zero", den.column);
                    value /= d;
                }
                SymbolExpr e;
                e.kind = SymbolExpr::Kind::Literal;
                e.literal = value;
                return make(std::move(e));
            }
            case Token::Kind::Ident:
                return ident(std::move(t));
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.column);
        }
    }

    ExprPtr ident(Token t) {
        SymbolExpr e;
        if (t.text == "x") {
            e.kind = SymbolExpr::Kind::X;
        } else if (t.text == "p") {
            e.kind = SymbolExpr::Kind::P;
        } else if (t.text == "hbar") {
            e.kind = SymbolExpr::Kind::Hbar;
        } else if (t.text == "i") {
            e.kind = SymbolExpr::Kind::I;
        } else {
            e.kind = SymbolExpr::Kind::Call;
            if (t.text == "star")
                e.fn = SymbolExpr::Fn::Star;
            else if (t.text == "mb")
                e.fn = SymbolExpr::Fn::Mb;
            else if (t.text == "bb")
                e.fn = SymbolExpr::Fn::Bb;
            else if (t.text == "pb")
                e.fn = SymbolExpr::Fn::Pb;
            else if (t.text == "truncate")
                e.fn = SymbolExpr::Fn::Truncate;
            else
                throw ParseError("unknown identifier '" + t.text + "'", t.column);

            Token open = lex_.take();
            if (open.kind != Token::Kind::LParen)
                throw ParseError("expected '(' after '" + t.text + "'", open.column);
            e.args.push_back(sum());
            while (lex_.peek().kind == Token::Kind::Comma) {
                lex_.take();
                e.args.push_back(sum());
            }
            Token close = lex_.take();
            if (close.kind != Token::Kind::RParen)
                throw ParseError("expected ')'", close.column);
            size_t want = e.fn == SymbolExpr::Fn::Truncate ? 2 : 2;
            if (e.args.size() != want)
                throw ParseError("'" + t.text + "' takes " + std::to_string(want) +
                                     " arguments",
                                 close.column);
        }
        return make(std::move(e));
    }

    Lexer lex_;
};

}  // namespace

SymbolExpr parse_symbol(std::string_view text) {
    if (text.empty()) throw ParseError("empty expression", 1);
    return *Parser(text).parse();
}

PolySymbol eval_expr(const SymbolExpr& e) {
    using K = SymbolExpr::Kind;
    switch (e.kind) {
        case K::X: return PolySymbol::x();
        case K::P: return PolySymbol::p();
        case K::Hbar: return PolySymbol::hbar();
        case K::I: return PolySymbol::i();
        case K::Literal: return PolySymbol::constant(CRational(e.literal));
        case K::Add: return eval_expr(*e.args[0]) + eval_expr(*e.args[1]);
        case K::Sub: return eval_expr(*e.args[0]) - eval_expr(*e.args[1]);
        case K::Mul: return eval_expr(*e.args[0]) * eval_expr(*e.args[1]);
        case K::Neg: return -eval_expr(*e.args[0]);
        case K::Pow: return eval_expr(*e.args[0]).pow(e.exponent);
        case K::Call: {
            if (e.fn == SymbolExpr::Fn::Truncate) {
                PolySymbol a = eval_expr(*e.args[0]);
                PolySymbol n = eval_expr(*e.args[1]);
                if (n.terms().size() > 1 ||
                    (!n.is_zero() && n.terms().begin()->first != Monomial{}))
                    throw std::invalid_argument(
                        "truncate: order must be a constant integer");
                unsigned order = 0;
                if (!n.is_zero()) {
                    const CRational& c = n.terms().begin()->second;
                    if (!c.is_real() || boost::multiprecision::denominator(c.re) != 1 ||
                        c.re < 0)
                        throw std::invalid_argument(
                            "truncate: order must be a non-negative integer");
                    order = unsigned(boost::multiprecision::numerator(c.re));
                }
                return truncate_order(a, order);
            }
            PolySymbol a = eval_expr(*e.args[0]);
            PolySymbol b = eval_expr(*e.args[1]);
            switch (e.fn) {
                case SymbolExpr::Fn::Star: return star(a, b);
                case SymbolExpr::Fn::Mb: return moyal_bracket(a, b);
                case SymbolExpr::Fn::Bb: return baker_bracket(a, b);
                case SymbolExpr::Fn::Pb: return poisson_bracket(a, b);
                default: break;
            }
            break;
        }
    }
    throw std::logic_error("eval_expr: malformed expression tree");
}

PolySymbol eval_text(std::string_view text) {
    return eval_expr(parse_symbol(text));
}

}  // namespace moyal::symcalc
