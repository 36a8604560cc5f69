#include "fpmine/lexer.hpp"

#include <cctype>

namespace fpmine {

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

namespace {
bool is_line_break(char c) { return c == '\n' || c == '\r'; }
bool is_hex(unsigned char c) { return std::isxdigit(c); }
}  // namespace

Lexer::Lexer(std::string_view text, bool tolerant) : text_(text), tolerant_(tolerant) {
    std::size_t start = 0;
    if (text_.size() >= 3 && static_cast<unsigned char>(text_[0]) == 0xEF &&
        static_cast<unsigned char>(text_[1]) == 0xBB &&
        static_cast<unsigned char>(text_[2]) == 0xBF) {
        start = 3;  // BOM tolerated
    }
    if (text_.size() >= start + 2 && text_[start] == '#' && text_[start + 1] == '!') {
        std::size_t p = start;
        while (p < text_.size() && !is_line_break(text_[p])) ++p;
        shebang_end_ = p;
    }
}

void Lexer::record_comment(std::size_t start, std::size_t end, bool block) {
    if (start < comment_watermark_) return;  // already seen on a prior scan
    comments_.push_back({start, end, block});
    comment_watermark_ = end;
}

std::size_t Lexer::skip_trivia(std::size_t pos, bool& newline) {
    if (pos == 0 && shebang_end_ > 0) pos = shebang_end_;
    while (pos < text_.size()) {
        char c = text_[pos];
        if (c == ' ' || c == '\t' || c == '\v' || c == '\f') {
            ++pos;
        } else if (is_line_break(c)) {
            newline = true;
            ++pos;
        } else if (static_cast<unsigned char>(c) == 0xEF && pos + 2 < text_.size() &&
                   static_cast<unsigned char>(text_[pos + 1]) == 0xBB &&
                   static_cast<unsigned char>(text_[pos + 2]) == 0xBF) {
            pos += 3;  // stray BOM
        } else if (static_cast<unsigned char>(c) == 0xC2 && pos + 1 < text_.size() &&
                   static_cast<unsigned char>(text_[pos + 1]) == 0xA0) {
            pos += 2;  // NBSP counts as whitespace in ES
        } else if (c == '/' && pos + 1 < text_.size() && text_[pos + 1] == '/') {
            std::size_t start = pos;
            pos += 2;
            while (pos < text_.size() && !is_line_break(text_[pos])) ++pos;
            record_comment(start, pos, false);
        } else if (c == '/' && pos + 1 < text_.size() && text_[pos + 1] == '*') {
            std::size_t start = pos;
            pos += 2;
            while (pos + 1 < text_.size() && !(text_[pos] == '*' && text_[pos + 1] == '/')) {
                if (is_line_break(text_[pos])) newline = true;
                ++pos;
            }
            pos = pos + 1 < text_.size() ? pos + 2 : text_.size();
            record_comment(start, pos, true);
        } else {
            break;
        }
    }
    return pos;
}

Token Lexer::make(TokenKind k, std::size_t start, std::size_t end) const {
    Token t;
    t.kind = k;
    t.start = start;
    t.end = end;
    return t;
}

Token Lexer::scan_number(std::size_t pos) const {
    std::size_t p = pos;
    auto digits = [&](auto pred) {
        while (p < text_.size() && (pred(static_cast<unsigned char>(text_[p])) || text_[p] == '_')) ++p;
    };
    if (text_[p] == '0' && p + 1 < text_.size() &&
        (text_[p + 1] == 'x' || text_[p + 1] == 'X')) {
        p += 2;
        digits([](unsigned char c) { return is_hex(c); });
    } else if (text_[p] == '0' && p + 1 < text_.size() &&
               (text_[p + 1] == 'o' || text_[p + 1] == 'O')) {
        p += 2;
        digits([](unsigned char c) { return c >= '0' && c <= '7'; });
    } else if (text_[p] == '0' && p + 1 < text_.size() &&
               (text_[p + 1] == 'b' || text_[p + 1] == 'B')) {
        p += 2;
        digits([](unsigned char c) { return c == '0' || c == '1'; });
    } else {
        digits([](unsigned char c) { return std::isdigit(c); });
        if (p < text_.size() && text_[p] == '.') {
            ++p;
            digits([](unsigned char c) { return std::isdigit(c); });
        }
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                p = q;
                digits([](unsigned char c) { return std::isdigit(c); });
            }
        }
    }
    if (p < text_.size() && text_[p] == 'n') ++p;  // BigInt
    return make(TokenKind::Number, pos, p);
}

Token Lexer::scan_string(std::size_t pos) const {
    char quote = text_[pos];
    std::size_t p = pos + 1;
    while (p < text_.size()) {
        char c = text_[p];
        if (c == '\\') {
            p += 2;
            continue;
        }
        if (c == quote) return make(TokenKind::String, pos, p + 1);
        if (is_line_break(c)) break;  // unterminated
        ++p;
    }
    return make(tolerant_ ? TokenKind::String : TokenKind::Error, pos, std::min(p, text_.size()));
}

Token Lexer::scan_identifier(std::size_t pos) const {
    std::size_t p = pos;
    while (p < text_.size()) {
        unsigned char c = static_cast<unsigned char>(text_[p]);
        if (is_ident_part(c)) {
            ++p;
        } else if (c == '\\' && p + 1 < text_.size() && text_[p + 1] == 'u') {
            p += 2;  // unicode escape in identifier, kept raw
            if (p < text_.size() && text_[p] == '{') {
                while (p < text_.size() && text_[p] != '}') ++p;
                if (p < text_.size()) ++p;
            } else {
                std::size_t n = 0;
                while (p < text_.size() && n < 4 && is_hex(static_cast<unsigned char>(text_[p]))) ++p, ++n;
            }
        } else {
            break;
        }
    }
    return make(TokenKind::Identifier, pos, p);
}

// Scans a template part starting at ` (fresh) or } (continuation). Ends at
// an unescaped ` or at ${.
Token Lexer::scan_template(std::size_t pos, bool continuation) const {
    std::size_t p = pos + 1;
    while (p < text_.size()) {
        char c = text_[p];
        if (c == '\\') {
            p += 2;
            continue;
        }
        if (c == '`') {
            return make(continuation ? TokenKind::TemplateTail : TokenKind::NoSubTemplate,
                        pos, p + 1);
        }
        if (c == '$' && p + 1 < text_.size() && text_[p + 1] == '{') {
            return make(continuation ? TokenKind::TemplateMiddle : TokenKind::TemplateHead,
                        pos, p + 2);
        }
        ++p;
    }
    return make(tolerant_ ? TokenKind::NoSubTemplate : TokenKind::Error, pos, text_.size());
}

Token Lexer::relex_template_continuation(std::size_t rbrace_pos) {
    Token t = scan_template(rbrace_pos, true);
    return t;
}

Token Lexer::relex_as_regex(std::size_t slash_pos) {
    std::size_t p = slash_pos + 1;
    bool in_class = false;
    while (p < text_.size()) {
        char c = text_[p];
        if (c == '\\') {
            p += 2;
            continue;
        }
        if (is_line_break(c)) break;  // unterminated
        if (c == '[') in_class = true;
        else if (c == ']') in_class = false;
        else if (c == '/' && !in_class) {
            ++p;
            while (p < text_.size() && is_ident_part(static_cast<unsigned char>(text_[p]))) ++p;
            return make(TokenKind::Regex, slash_pos, p);
        }
        ++p;
    }
    return make(TokenKind::Error, slash_pos, std::min(p, text_.size()));
}

Token Lexer::lex_jsx_text(std::size_t pos) {
    std::size_t p = pos;
    while (p < text_.size() && text_[p] != '<' && text_[p] != '{' && text_[p] != '}') ++p;
    return make(TokenKind::JsxText, pos, p);
}

Token Lexer::lex_jsx_name(std::size_t pos) {
    std::size_t p = pos;
    while (p < text_.size()) {
        unsigned char c = static_cast<unsigned char>(text_[p]);
        if (is_ident_part(c) || c == '-' || c == '.' || c == ':') ++p;
        else break;
    }
    return make(p > pos ? TokenKind::Identifier : TokenKind::Error, pos, p);
}

Token Lexer::lex_jsx_string(std::size_t pos) {
    char quote = text_[pos];
    std::size_t p = pos + 1;
    while (p < text_.size() && text_[p] != quote) ++p;
    if (p < text_.size()) return make(TokenKind::String, pos, p + 1);
    return make(TokenKind::Error, pos, p);
}

Token Lexer::next(std::size_t pos) {
    bool newline = pos == 0;  // start-of-file behaves like after a newline
    pos = skip_trivia(pos, newline);
    if (pos >= text_.size()) {
        Token t = make(TokenKind::EndOfFile, text_.size(), text_.size());
        t.newline_before = newline;
        return t;
    }

    char c = text_[pos];
    Token t;
    auto punct = [&](TokenKind k, std::size_t len) { return make(k, pos, pos + len); };
    auto peek = [&](std::size_t off) -> char {
        return pos + off < text_.size() ? text_[pos + off] : '\0';
    };

    if (is_ident_start(static_cast<unsigned char>(c)) || (c == '\\' && peek(1) == 'u')) {
        t = scan_identifier(pos);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t = scan_number(pos);
    } else if (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        t = scan_number(pos);
    } else if (c == '"' || c == '\'') {
        t = scan_string(pos);
    } else if (c == '`') {
        t = scan_template(pos, false);
    } else if (c == '#') {
        if (is_ident_start(static_cast<unsigned char>(peek(1)))) {
            t = scan_identifier(pos + 1);
            t.kind = TokenKind::PrivateName;
            t.start = pos;
        } else {
            t = punct(TokenKind::Error, 1);
        }
    } else {
        switch (c) {
            case '{': t = punct(TokenKind::LBrace, 1); break;
            case '}': t = punct(TokenKind::RBrace, 1); break;
            case '(': t = punct(TokenKind::LParen, 1); break;
            case ')': t = punct(TokenKind::RParen, 1); break;
            case '[': t = punct(TokenKind::LBracket, 1); break;
            case ']': t = punct(TokenKind::RBracket, 1); break;
            case ';': t = punct(TokenKind::Semicolon, 1); break;
            case ',': t = punct(TokenKind::Comma, 1); break;
            case '@': t = punct(TokenKind::At, 1); break;
            case ':': t = punct(TokenKind::Colon, 1); break;
            case '~': t = punct(TokenKind::Tilde, 1); break;
            case '.':
                t = peek(1) == '.' && peek(2) == '.' ? punct(TokenKind::DotDotDot, 3)
                                                     : punct(TokenKind::Dot, 1);
                break;
            case '?':
                if (peek(1) == '.' && !std::isdigit(static_cast<unsigned char>(peek(2))))
                    t = punct(TokenKind::QuestionDot, 2);
                else if (peek(1) == '?' && peek(2) == '=')
                    t = punct(TokenKind::QuestionQuestionAssign, 3);
                else if (peek(1) == '?')
                    t = punct(TokenKind::QuestionQuestion, 2);
                else
                    t = punct(TokenKind::Question, 1);
                break;
            case '=':
                if (peek(1) == '=' && peek(2) == '=') t = punct(TokenKind::EqEqEq, 3);
                else if (peek(1) == '=') t = punct(TokenKind::EqEq, 2);
                else if (peek(1) == '>') t = punct(TokenKind::Arrow, 2);
                else t = punct(TokenKind::Assign, 1);
                break;
            case '!':
                if (peek(1) == '=' && peek(2) == '=') t = punct(TokenKind::BangEqEq, 3);
                else if (peek(1) == '=') t = punct(TokenKind::BangEq, 2);
                else t = punct(TokenKind::Bang, 1);
                break;
            case '+':
                if (peek(1) == '+') t = punct(TokenKind::PlusPlus, 2);
                else if (peek(1) == '=') t = punct(TokenKind::PlusAssign, 2);
                else t = punct(TokenKind::Plus, 1);
                break;
            case '-':
                if (peek(1) == '-') t = punct(TokenKind::MinusMinus, 2);
                else if (peek(1) == '=') t = punct(TokenKind::MinusAssign, 2);
                else t = punct(TokenKind::Minus, 1);
                break;
            case '*':
                if (peek(1) == '*' && peek(2) == '=') t = punct(TokenKind::StarStarAssign, 3);
                else if (peek(1) == '*') t = punct(TokenKind::StarStar, 2);
                else if (peek(1) == '=') t = punct(TokenKind::StarAssign, 2);
                else t = punct(TokenKind::Star, 1);
                break;
            case '/':
                t = peek(1) == '=' ? punct(TokenKind::SlashAssign, 2) : punct(TokenKind::Slash, 1);
                break;
            case '%':
                t = peek(1) == '=' ? punct(TokenKind::PercentAssign, 2) : punct(TokenKind::Percent, 1);
                break;
            case '<':
                if (peek(1) == '<' && peek(2) == '=') t = punct(TokenKind::LtLtAssign, 3);
                else if (peek(1) == '<') t = punct(TokenKind::LtLt, 2);
                else if (peek(1) == '=') t = punct(TokenKind::LtEq, 2);
                else t = punct(TokenKind::Lt, 1);
                break;
            case '>':
                if (peek(1) == '>' && peek(2) == '>' && peek(3) == '=') t = punct(TokenKind::GtGtGtAssign, 4);
                else if (peek(1) == '>' && peek(2) == '>') t = punct(TokenKind::GtGtGt, 3);
                else if (peek(1) == '>' && peek(2) == '=') t = punct(TokenKind::GtGtAssign, 3);
                else if (peek(1) == '>') t = punct(TokenKind::GtGt, 2);
                else if (peek(1) == '=') t = punct(TokenKind::GtEq, 2);
                else t = punct(TokenKind::Gt, 1);
                break;
            case '&':
                if (peek(1) == '&' && peek(2) == '=') t = punct(TokenKind::AmpAmpAssign, 3);
                else if (peek(1) == '&') t = punct(TokenKind::AmpAmp, 2);
                else if (peek(1) == '=') t = punct(TokenKind::AmpAssign, 2);
                else t = punct(TokenKind::Amp, 1);
                break;
            case '|':
                if (peek(1) == '|' && peek(2) == '=') t = punct(TokenKind::PipePipeAssign, 3);
                else if (peek(1) == '|') t = punct(TokenKind::PipePipe, 2);
                else if (peek(1) == '=') t = punct(TokenKind::PipeAssign, 2);
                else t = punct(TokenKind::Pipe, 1);
                break;
            case '^':
                t = peek(1) == '=' ? punct(TokenKind::CaretAssign, 2) : punct(TokenKind::Caret, 1);
                break;
            default:
                t = punct(TokenKind::Error, 1);
                break;
        }
    }
    t.newline_before = newline;
    return t;
}

std::optional<Span> Lexer::shebang(const LineIndex& idx) const {
    if (shebang_end_ == 0) return std::nullopt;
    std::size_t start = text_.size() >= 3 && static_cast<unsigned char>(text_[0]) == 0xEF ? 3 : 0;
    return idx.span(start, shebang_end_);
}

bool Lexer::saw_invalid_utf8() {
    if (utf8_checked_ >= 0) return utf8_checked_ == 1;
    bool bad = false;
    std::size_t i = 0;
    const auto* s = reinterpret_cast<const unsigned char*>(text_.data());
    while (i < text_.size()) {
        unsigned char c = s[i];
        std::size_t need;
        if (c < 0x80) need = 0;
        else if ((c & 0xE0) == 0xC0) need = 1;
        else if ((c & 0xF0) == 0xE0) need = 2;
        else if ((c & 0xF8) == 0xF0) need = 3;
        else { bad = true; ++i; continue; }
        if (i + need >= text_.size() && need > 0) { bad = true; break; }
        for (std::size_t k = 1; k <= need; ++k) {
            if ((s[i + k] & 0xC0) != 0x80) { bad = true; break; }
        }
        i += need + 1;
    }
    utf8_checked_ = bad ? 1 : 0;
    return bad;
}

}  // namespace fpmine
