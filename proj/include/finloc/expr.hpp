#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "finloc/error.hpp"
#include "finloc/extnat.hpp"
#include "finloc/lattice.hpp"
#include "finloc/prime.hpp"

namespace finloc {

// Surface syntax for localisation expressions:
//
//   expr   := term ('|' term)*
//   term   := factor (('*' | '&') factor)*
//   factor := 'id' | 'zero' | 'rat'
//           | 'ploc' '(' prime ')'
//           | 'lift' '(' prime ',' extnat ')'
//           | 'invert' '{' prime (',' prime)* '}'
//           | 'params' '(' extnat (';' prime '->' extnat)* ')'
//           | '(' expr ')'
//   extnat := decimal-integer | 'inf'
//
// '*' and '&' are synonyms: composition of finite localisations is the
// lattice meet (pointwise minimum of parameters). Both bind tighter than
// the join '|'; operators associate to the left.

struct LatticeExpr;

struct IdentityAtom {};
struct ZeroAtom {};
struct RationalAtom {};
struct PLocAtom {
    Prime p;
};
struct LiftAtom {
    Prime p;
    ExtNat height;
};
struct InvertAtom {
    std::vector<Prime> primes;
};
struct ParamsAtom {
    ExtNat default_height;
    GlobalFiniteLoc::ExceptionList exceptions;
};
struct JoinNode {
    std::unique_ptr<LatticeExpr> lhs, rhs;
};
struct MeetNode {
    std::unique_ptr<LatticeExpr> lhs, rhs;
};

struct LatticeExpr {
    std::variant<IdentityAtom, ZeroAtom, RationalAtom, PLocAtom, LiftAtom, InvertAtom,
                 ParamsAtom, JoinNode, MeetNode>
        node;
};

namespace detail {

enum class TokKind : std::uint8_t {
    Ident,
    Integer,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Arrow,
    Pipe,
    Star,
    Amp,
    End,
};

struct Token {
    TokKind kind;
    std::size_t offset;
    std::string text; // identifier spelling or integer digits
};

[[nodiscard]] inline std::string describe(const Token& tok) {
    if (tok.kind == TokKind::End) return "end of input";
    return "'" + tok.text + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    [[nodiscard]] Token next() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) return {TokKind::End, start, ""};

        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            return {TokKind::Integer, start, std::string(text_.substr(start, pos_ - start))};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                ++pos_;
            }
            return {TokKind::Ident, start, std::string(text_.substr(start, pos_ - start))};
        }
        ++pos_;
        switch (c) {
            case '(': return {TokKind::LParen, start, "("};
            case ')': return {TokKind::RParen, start, ")"};
            case '{': return {TokKind::LBrace, start, "{"};
            case '}': return {TokKind::RBrace, start, "}"};
            case ',': return {TokKind::Comma, start, ","};
            case ';': return {TokKind::Semicolon, start, ";"};
            case '|': return {TokKind::Pipe, start, "|"};
            case '*': return {TokKind::Star, start, "*"};
            case '&': return {TokKind::Amp, start, "&"};
            case '-':
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    ++pos_;
                    return {TokKind::Arrow, start, "->"};
                }
                throw ParseError(start, "expected '->', found '-'");
            default:
                throw ParseError(start, std::string("unexpected character '") + c + "'");
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { advance(); }

    [[nodiscard]] LatticeExpr parse() {
        LatticeExpr e = parse_expr();
        expect(TokKind::End, "'|', '*', '&' or end of input");
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    Token expect(TokKind kind, const std::string& what) {
        if (tok_.kind != kind) {
            throw ParseError(tok_.offset, "expected " + what + ", found " + describe(tok_));
        }
        Token t = tok_;
        if (kind != TokKind::End) advance();
        return t;
    }

    [[nodiscard]] std::uint64_t parse_integer(const Token& tok) {
        std::uint64_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
            throw ParseError(tok.offset, "integer '" + tok.text + "' out of range");
        }
        return value;
    }

    [[nodiscard]] Prime parse_prime() {
        const Token tok = expect(TokKind::Integer, "a prime");
        return Prime(parse_integer(tok)); // PrimeError on composite input
    }

    [[nodiscard]] ExtNat parse_extnat() {
        if (tok_.kind == TokKind::Ident && tok_.text == "inf") {
            advance();
            return ExtNat::infinity();
        }
        if (tok_.kind == TokKind::Integer) {
            const Token tok = tok_;
            advance();
            return ExtNat{parse_integer(tok)};
        }
        throw ParseError(tok_.offset,
                         "expected a decimal integer or 'inf', found " + describe(tok_));
    }

    [[nodiscard]] LatticeExpr parse_expr() {
        LatticeExpr lhs = parse_term();
        while (tok_.kind == TokKind::Pipe) {
            advance();
            LatticeExpr rhs = parse_term();
            lhs = LatticeExpr{JoinNode{std::make_unique<LatticeExpr>(std::move(lhs)),
                                       std::make_unique<LatticeExpr>(std::move(rhs))}};
        }
        return lhs;
    }

    [[nodiscard]] LatticeExpr parse_term() {
        LatticeExpr lhs = parse_factor();
        while (tok_.kind == TokKind::Star || tok_.kind == TokKind::Amp) {
            advance();
            LatticeExpr rhs = parse_factor();
            lhs = LatticeExpr{MeetNode{std::make_unique<LatticeExpr>(std::move(lhs)),
                                       std::make_unique<LatticeExpr>(std::move(rhs))}};
        }
        return lhs;
    }

    [[nodiscard]] LatticeExpr parse_factor() {
        if (tok_.kind == TokKind::LParen) {
            advance();
            LatticeExpr inner = parse_expr();
            expect(TokKind::RParen, "')'");
            return inner;
        }
        if (tok_.kind != TokKind::Ident) {
            throw ParseError(tok_.offset,
                             "expected 'id', 'zero', 'rat', 'ploc', 'lift', 'invert', "
                             "'params' or '(', found " +
                                 describe(tok_));
        }
        const Token head = tok_;
        advance();
        if (head.text == "id") return LatticeExpr{IdentityAtom{}};
        if (head.text == "zero") return LatticeExpr{ZeroAtom{}};
        if (head.text == "rat") return LatticeExpr{RationalAtom{}};
        if (head.text == "ploc") {
            expect(TokKind::LParen, "'('");
            Prime p = parse_prime();
            expect(TokKind::RParen, "')'");
            return LatticeExpr{PLocAtom{p}};
        }
        if (head.text == "lift") {
            expect(TokKind::LParen, "'('");
            Prime p = parse_prime();
            expect(TokKind::Comma, "','");
            ExtNat n = parse_extnat();
            expect(TokKind::RParen, "')'");
            return LatticeExpr{LiftAtom{p, n}};
        }
        if (head.text == "invert") {
            expect(TokKind::LBrace, "'{'");
            InvertAtom atom;
            atom.primes.push_back(parse_prime());
            while (tok_.kind == TokKind::Comma) {
                advance();
                const std::size_t offset = tok_.offset;
                Prime p = parse_prime();
                for (Prime q : atom.primes) {
                    if (q == p) throw ParseError(offset, "duplicate prime " + to_string(p));
                }
                atom.primes.push_back(p);
            }
            expect(TokKind::RBrace, "'}' or ','");
            return LatticeExpr{std::move(atom)};
        }
        if (head.text == "params") {
            expect(TokKind::LParen, "'('");
            ParamsAtom atom{parse_extnat(), {}};
            while (tok_.kind == TokKind::Semicolon) {
                advance();
                const std::size_t offset = tok_.offset;
                Prime p = parse_prime();
                for (const auto& [q, n] : atom.exceptions) {
                    if (q == p) throw ParseError(offset, "duplicate prime " + to_string(p));
                }
                expect(TokKind::Arrow, "'->'");
                atom.exceptions.emplace_back(p, parse_extnat());
            }
            expect(TokKind::RParen, "')' or ';'");
            return LatticeExpr{std::move(atom)};
        }
        throw ParseError(head.offset,
                         "expected 'id', 'zero', 'rat', 'ploc', 'lift', 'invert', "
                         "'params' or '(', found '" +
                             head.text + "'");
    }

    Lexer lexer_;
    Token tok_{TokKind::End, 0, ""};
};

} // namespace detail

/// Parse the lattice-expression grammar. Throws ParseError (with byte
/// offset) on malformed input, PrimeError on composite prime atoms.
[[nodiscard]] inline LatticeExpr parse_lattice_expr(std::string_view text) {
    return detail::Parser(text).parse();
}

/// Structural evaluation into the lattice of finite localisations.
[[nodiscard]] inline GlobalFiniteLoc eval_lattice(const LatticeExpr& expr) {
    struct Visitor {
        GlobalFiniteLoc operator()(const IdentityAtom&) const {
            return GlobalFiniteLoc::identity();
        }
        GlobalFiniteLoc operator()(const ZeroAtom&) const { return GlobalFiniteLoc::zero(); }
        GlobalFiniteLoc operator()(const RationalAtom&) const {
            return GlobalFiniteLoc::rationalisation();
        }
        GlobalFiniteLoc operator()(const PLocAtom& a) const {
            return GlobalFiniteLoc::p_localisation(a.p);
        }
        GlobalFiniteLoc operator()(const LiftAtom& a) const {
            return lift_to_global(a.p, PLocalFiniteLoc::lnf(a.height));
        }
        GlobalFiniteLoc operator()(const InvertAtom& a) const {
            return invert_primes({a.primes.begin(), a.primes.end()});
        }
        GlobalFiniteLoc operator()(const ParamsAtom& a) const {
            return GlobalFiniteLoc::params(a.default_height, a.exceptions);
        }
        GlobalFiniteLoc operator()(const JoinNode& n) const {
            return join(eval_lattice(*n.lhs), eval_lattice(*n.rhs));
        }
        GlobalFiniteLoc operator()(const MeetNode& n) const {
            return meet(eval_lattice(*n.lhs), eval_lattice(*n.rhs));
        }
    };
    return std::visit(Visitor{}, expr.node);
}

/// Canonical atom syntax for an evaluated localisation; re-parsing the
/// result yields an equal value. Exception primes appear in ascending order.
[[nodiscard]] inline std::string to_expr_string(const GlobalFiniteLoc& loc) {
    if (loc.is_zero()) return "zero";
    std::string out = "params(" + to_string(loc.default_height());
    for (const auto& [p, n] : loc.exceptions()) {
        out += "; " + to_string(p) + "->" + to_string(n);
    }
    out += ")";
    return out;
}

} // namespace finloc
