#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpmine/ast.hpp"
#include "fpmine/lexer.hpp"
#include "fpmine/span.hpp"

namespace fpmine {

struct ParseOptions {
    // JSX elements recognized in expression position (.js/.jsx/.mjs/.cjs/.tsx).
    bool jsx = true;
    // TypeScript syntax: annotations, interfaces, enums, as-expressions, ...
    bool typescript = false;

    static ParseOptions for_extension(std::string_view ext);
};

struct Diagnostic {
    std::string message;
    std::size_t byte = 0;
    std::uint32_t line = 0;
};

struct ParseOutput {
    std::optional<Tree> tree;  // engaged iff the file parsed
    std::vector<CommentRaw> comments;
    std::optional<Span> shebang;
    std::vector<Diagnostic> diagnostics;
    bool invalid_utf8 = false;
};

// Parses one whole source text. On failure the tree is absent and a
// file-level diagnostic describes the first error.
ParseOutput parse_program(std::string_view text, const ParseOptions& opts);

}  // namespace fpmine
