#ifndef ACCAUSE_PARSER_HPP
#define ACCAUSE_PARSER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "accause/formula.hpp"

namespace accause {

enum class TokenKind {
    Ident,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semicolon,
    Colon,
    Equals,
    NotEquals,
    Arrow,       // <-
    CondArrow,   // ~>
    Bang,
    Amp,
    Pipe,
    End
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Splits text into tokens; `#` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector, shared by the formula, model and structure readers.
class TokenStream {
  public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool accept(TokenKind k);
    const Token& expect(TokenKind k, const char* what);
    bool at_end() const { return peek().kind == TokenKind::End; }
    [[noreturn]] void fail(const std::string& msg) const;
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const;

  private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

/// Parses one formula from the stream, stopping at the first token that
/// cannot continue it.
Formula parse_formula(TokenStream& ts, const Signature& sig);

/// Parses a whole string as a single formula.
Formula parse_formula(std::string_view text, const Signature& sig);

/// Parses "X=a & Y=b" (or "X=a, Y=b") into events. Used for contexts,
/// causes and pins on the command line.
std::vector<Event> parse_event_list(std::string_view text, const Signature& sig);

std::string token_kind_name(TokenKind k);

}  // namespace accause

#endif
