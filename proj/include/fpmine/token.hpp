#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fpmine {

enum class TokenKind : std::uint8_t {
    EndOfFile,
    Error,
    Identifier,
    PrivateName,  // #name
    Number,
    String,
    Regex,
    NoSubTemplate,   // `...`
    TemplateHead,    // `...${
    TemplateMiddle,  // }...${
    TemplateTail,    // }...`
    JsxText,

    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Semicolon, Comma, Dot, DotDotDot, QuestionDot, Arrow,
    Question, Colon, At,

    Assign,
    Plus, Minus, Star, Slash, Percent, StarStar,
    PlusPlus, MinusMinus,
    LtLt, GtGt, GtGtGt,
    Amp, Pipe, Caret, Bang, Tilde,
    AmpAmp, PipePipe, QuestionQuestion,
    Lt, Gt, LtEq, GtEq,
    EqEq, BangEq, EqEqEq, BangEqEq,
    PlusAssign, MinusAssign, StarAssign, SlashAssign, PercentAssign,
    StarStarAssign, LtLtAssign, GtGtAssign, GtGtGtAssign,
    AmpAssign, PipeAssign, CaretAssign,
    AmpAmpAssign, PipePipeAssign, QuestionQuestionAssign,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::size_t start = 0;
    std::size_t end = 0;
    bool newline_before = false;

    std::string_view text(std::string_view source) const {
        return source.substr(start, end - start);
    }
    bool is(TokenKind k) const { return kind == k; }
};

}  // namespace fpmine
