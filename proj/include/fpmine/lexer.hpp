#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpmine/span.hpp"
#include "fpmine/token.hpp"

namespace fpmine {

// A comment as scanned from the token stream. Classification into
// leading/trailing happens later, against the parsed tree.
struct CommentRaw {
    std::size_t start = 0;
    std::size_t end = 0;
    bool is_block = false;
};

// On-demand scanner over raw bytes. The parser drives it: by default a `/`
// lexes as an operator, and the parser re-scans from a token's start when it
// knows a regex literal, a template continuation, or JSX text must follow.
//
// Comments are recorded as a side effect of scanning. Speculative parses
// re-scan regions, so a watermark keeps each comment recorded exactly once.
class Lexer {
public:
    explicit Lexer(std::string_view text, bool tolerant = false);

    // Scans the next token at or after `pos`, skipping whitespace and
    // comments. `newline_before` is set if trivia contained a line break.
    Token next(std::size_t pos);

    // Re-scans a `/` or `/=` token as a regex literal.
    Token relex_as_regex(std::size_t slash_pos);

    // Re-scans a `}` as a template middle/tail part.
    Token relex_template_continuation(std::size_t rbrace_pos);

    // Raw JSX text from `pos` up to the next `<`, `{` or EOF. May be empty.
    Token lex_jsx_text(std::size_t pos);

    // JSX names admit dashes, dots and colons (web components, namespaces).
    Token lex_jsx_name(std::size_t pos);

    // JSX attribute strings do not process escapes.
    Token lex_jsx_string(std::size_t pos);

    const std::vector<CommentRaw>& comments() const { return comments_; }
    std::optional<Span> shebang(const LineIndex& idx) const;
    bool saw_invalid_utf8();  // scans lazily, once

    std::string_view text() const { return text_; }

private:
    std::string_view text_;
    bool tolerant_;
    std::vector<CommentRaw> comments_;
    std::size_t comment_watermark_ = 0;
    std::size_t shebang_end_ = 0;  // 0 = no shebang
    int utf8_checked_ = -1;

    std::size_t skip_trivia(std::size_t pos, bool& newline);
    void record_comment(std::size_t start, std::size_t end, bool block);
    Token make(TokenKind k, std::size_t start, std::size_t end) const;
    Token scan_number(std::size_t pos) const;
    Token scan_string(std::size_t pos) const;
    Token scan_identifier(std::size_t pos) const;
    Token scan_template(std::size_t pos, bool continuation) const;
};

// True if byte `c` can start an identifier. Bytes >= 0x80 are accepted so
// non-ASCII identifiers pass through without decoding.
bool is_ident_start(unsigned char c);
bool is_ident_part(unsigned char c);

}  // namespace fpmine
