#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpmine/ast.hpp"
#include "fpmine/lexer.hpp"
#include "fpmine/parser.hpp"
#include "fpmine/span.hpp"

namespace fpmine {

struct FileDiscoveryOptions {
    std::vector<std::string> extensions = default_extensions();
    std::vector<std::string> excluded_segments = default_exclusions();

    static std::vector<std::string> default_extensions() {
        return {".js", ".jsx", ".mjs", ".cjs", ".ts", ".tsx", ".mts", ".cts"};
    }
    static std::vector<std::string> default_exclusions() {
        return {"node_modules", "coverage", "build", "bin", "stories", "dist", "3rdParty"};
    }
};

// Analyzable files under `root`, as '/'-separated repo-relative paths in
// lexicographic order. Throws std::runtime_error when the root itself is
// unreadable.
std::vector<std::string> discover_files(const std::filesystem::path& root,
                                        const FileDiscoveryOptions& options);

enum class LineClass : std::uint8_t { Blank, Code, Comment };

struct LocStats {
    std::uint64_t total_files = 0;
    std::uint64_t code_lines = 0;
    std::uint64_t blank_lines = 0;
    std::uint64_t comment_lines = 0;

    std::uint64_t physical_lines() const { return code_lines + blank_lines + comment_lines; }
};

// Per-physical-line classification, index 0 = line 1. Lines carrying any
// non-comment token are code; otherwise comment if a comment or shebang
// overlaps them; otherwise blank. Strings and templates never open comments
// because classification runs on the real token stream.
std::vector<LineClass> classify_lines(std::string_view text);

struct FileText {
    std::string path;  // repo-relative
    std::string text;
};

LocStats count_loc(const std::vector<FileText>& files);

// Reads files from disk; unreadable files are skipped with a warning.
LocStats count_loc(const std::filesystem::path& root, const std::vector<std::string>& rel_paths,
                   std::vector<std::string>* warnings);

std::optional<std::string> read_file(const std::filesystem::path& path);

// One parsed source file. Immutable after construction; safe to share
// across threads.
struct SourceUnit {
    std::string path;
    std::shared_ptr<const std::string> text;
    LineIndex lines;
    Tree tree;
    std::vector<CommentRaw> comments;
    std::optional<Span> shebang;
    std::vector<LineClass> line_classes;

    std::string_view text_view() const { return *text; }
    std::string_view text_of(const Span& s) const {
        return std::string_view(*text).substr(s.start_byte, s.end_byte - s.start_byte);
    }
    std::string_view text_of(const Node& n) const { return text_of(n.span); }
    std::string_view node_text(std::uint32_t idx) const { return text_of(tree[idx]); }
};

struct ParseResult {
    std::optional<SourceUnit> unit;  // absent when the file failed to parse
    std::vector<Diagnostic> diagnostics;
    bool invalid_utf8 = false;
};

// Parse options are derived from the path's extension.
ParseResult parse_source(std::string path, std::string text);

}  // namespace fpmine
