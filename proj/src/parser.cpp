#include "accause/parser.hpp"

#include <cctype>
#include <set>

namespace accause {

std::string token_kind_name(TokenKind k) {
    switch (k) {
        case TokenKind::Ident: return "identifier";
        case TokenKind::Number: return "number";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBracket: return "'['";
        case TokenKind::RBracket: return "']'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::Comma: return "','";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Equals: return "'='";
        case TokenKind::NotEquals: return "'!='";
        case TokenKind::Arrow: return "'<-'";
        case TokenKind::CondArrow: return "'~>'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::Amp: return "'&'";
        case TokenKind::Pipe: return "'|'";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto emit = [&](TokenKind k, std::size_t len) {
        out.push_back(Token{k, std::string(text.substr(i, len)), line, col});
        advance(len);
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            emit(TokenKind::Ident, j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
                ++j;
            }
            emit(TokenKind::Number, j - i);
            continue;
        }
        auto two = text.substr(i, 2);
        if (two == "!=") { emit(TokenKind::NotEquals, 2); continue; }
        if (two == "<-") { emit(TokenKind::Arrow, 2); continue; }
        if (two == "~>") { emit(TokenKind::CondArrow, 2); continue; }
        switch (c) {
            case '(': emit(TokenKind::LParen, 1); continue;
            case ')': emit(TokenKind::RParen, 1); continue;
            case '[': emit(TokenKind::LBracket, 1); continue;
            case ']': emit(TokenKind::RBracket, 1); continue;
            case '{': emit(TokenKind::LBrace, 1); continue;
            case '}': emit(TokenKind::RBrace, 1); continue;
            case ',': emit(TokenKind::Comma, 1); continue;
            case ';': emit(TokenKind::Semicolon, 1); continue;
            case ':': emit(TokenKind::Colon, 1); continue;
            case '=': emit(TokenKind::Equals, 1); continue;
            case '!': emit(TokenKind::Bang, 1); continue;
            case '&': emit(TokenKind::Amp, 1); continue;
            case '|': emit(TokenKind::Pipe, 1); continue;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    out.push_back(Token{TokenKind::End, "", line, col});
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t idx = pos_ + ahead;
    if (idx >= tokens_.size()) return tokens_.back();
    return tokens_[idx];
}

const Token& TokenStream::next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

bool TokenStream::accept(TokenKind k) {
    if (peek().kind != k) return false;
    next();
    return true;
}

const Token& TokenStream::expect(TokenKind k, const char* what) {
    if (peek().kind != k) {
        fail(std::string("expected ") + what + ", found " +
             (peek().kind == TokenKind::End ? token_kind_name(TokenKind::End)
                                            : "'" + peek().text + "'"));
    }
    return next();
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
}

namespace {

bool is_value_token(const Token& t) {
    return t.kind == TokenKind::Ident || t.kind == TokenKind::Number;
}

class FormulaParser {
  public:
    FormulaParser(TokenStream& ts, const Signature& sig) : ts_(ts), sig_(sig) {}

    Formula formula() { return disjunction(); }

  private:
    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (ts_.accept(TokenKind::Pipe)) parts.push_back(conjunction());
        return Formula::disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (ts_.accept(TokenKind::Amp)) parts.push_back(unary());
        return Formula::conj(std::move(parts));
    }

    Formula unary() {
        if (ts_.accept(TokenKind::Bang)) return Formula::negate(unary());
        return atom();
    }

    Formula atom() {
        const Token& t = ts_.peek();
        if (t.kind == TokenKind::LParen) {
            ts_.next();
            Formula inner = formula();
            ts_.expect(TokenKind::RParen, "')'");
            if (ts_.accept(TokenKind::CondArrow)) {
                ts_.expect(TokenKind::LParen, "'(' after '~>'");
                Formula consequent = formula();
                ts_.expect(TokenKind::RParen, "')'");
                return Formula::counterfactual(std::move(inner), std::move(consequent));
            }
            return inner;
        }
        if (t.kind == TokenKind::LBracket) return intervention();
        if (t.kind == TokenKind::Ident) {
            TokenKind after = ts_.peek(1).kind;
            if (after != TokenKind::Equals && after != TokenKind::NotEquals) {
                if (t.text == "true") { ts_.next(); return Formula::truth(); }
                if (t.text == "false") { ts_.next(); return Formula::falsity(); }
            }
            return primitive();
        }
        ts_.fail(t.kind == TokenKind::End ? "unexpected end of formula"
                                          : "unexpected '" + t.text + "' in formula");
    }

    Formula intervention() {
        ts_.expect(TokenKind::LBracket, "'['");
        Intervention asg;
        std::set<VarId> seen;
        do {
            const Token& name = ts_.expect(TokenKind::Ident, "variable name");
            VarId v = resolve_var(name);
            if (sig_.is_exogenous(v)) {
                ts_.fail_at(name, "cannot intervene on exogenous variable '" + name.text + "'");
            }
            if (!seen.insert(v).second) {
                ts_.fail_at(name, "variable '" + name.text + "' appears twice in intervention");
            }
            ts_.expect(TokenKind::Arrow, "'<-'");
            asg.push_back(Event{v, resolve_value(v)});
        } while (ts_.accept(TokenKind::Comma));
        ts_.expect(TokenKind::RBracket, "']'");
        return Formula::intervene(std::move(asg), unary());
    }

    Formula primitive() {
        const Token& name = ts_.expect(TokenKind::Ident, "variable name");
        VarId v = resolve_var(name);
        bool negated = false;
        if (ts_.accept(TokenKind::NotEquals)) {
            negated = true;
        } else {
            ts_.expect(TokenKind::Equals, "'=' or '!='");
        }
        Formula e = Formula::event(v, resolve_value(v));
        return negated ? Formula::negate(std::move(e)) : e;
    }

    VarId resolve_var(const Token& name) {
        auto v = sig_.find(name.text);
        if (!v) ts_.fail_at(name, "unknown variable '" + name.text + "'");
        return *v;
    }

    ValueId resolve_value(VarId v) {
        const Token& t = ts_.peek();
        if (!is_value_token(t)) ts_.fail("expected a value for '" + sig_.name(v) + "'");
        ts_.next();
        auto val = sig_.find_value(v, t.text);
        if (!val) {
            ts_.fail_at(t, "value '" + t.text + "' outside the range of '" + sig_.name(v) + "'");
        }
        return *val;
    }

    TokenStream& ts_;
    const Signature& sig_;
};

}  // namespace

Formula parse_formula(TokenStream& ts, const Signature& sig) {
    return FormulaParser(ts, sig).formula();
}

Formula parse_formula(std::string_view text, const Signature& sig) {
    TokenStream ts(tokenize(text));
    Formula f = parse_formula(ts, sig);
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after formula");
    return f;
}

std::vector<Event> parse_event_list(std::string_view text, const Signature& sig) {
    TokenStream ts(tokenize(text));
    std::vector<Event> out;
    std::set<VarId> seen;
    if (ts.at_end()) return out;
    do {
        const Token& name = ts.expect(TokenKind::Ident, "variable name");
        auto v = sig.find(name.text);
        if (!v) ts.fail_at(name, "unknown variable '" + name.text + "'");
        if (!seen.insert(*v).second) {
            ts.fail_at(name, "variable '" + name.text + "' listed twice");
        }
        ts.expect(TokenKind::Equals, "'='");
        const Token& val = ts.peek();
        if (!is_value_token(val)) ts.fail("expected a value");
        ts.next();
        auto id = sig.find_value(*v, val.text);
        if (!id) {
            ts.fail_at(val, "value '" + val.text + "' outside the range of '" + name.text + "'");
        }
        out.push_back(Event{*v, *id});
    } while (ts.accept(TokenKind::Amp) || ts.accept(TokenKind::Comma));
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
    return out;
}

}  // namespace accause
