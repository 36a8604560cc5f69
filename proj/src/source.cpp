#include "fpmine/source.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fpmine {

namespace fs = std::filesystem;

namespace {

std::string lower_ext(const fs::path& p) {
    std::string e = p.extension().string();
    for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e;
}

std::string to_slash_path(const fs::path& rel) {
    std::string s = rel.generic_string();
    return s;
}

}  // namespace

std::vector<std::string> discover_files(const fs::path& root,
                                        const FileDiscoveryOptions& options) {
    std::error_code ec;
    if (!fs::exists(root, ec) || ec) throw std::runtime_error("root does not exist: " + root.string());
    if (!fs::is_directory(root, ec) || ec) throw std::runtime_error("root is not a directory: " + root.string());

    auto excluded = [&](const std::string& name) {
        return std::find(options.excluded_segments.begin(), options.excluded_segments.end(),
                         name) != options.excluded_segments.end();
    };
    auto wanted_ext = [&](const fs::path& p) {
        std::string e = lower_ext(p);
        return std::find(options.extensions.begin(), options.extensions.end(), e) !=
               options.extensions.end();
    };

    std::vector<std::string> out;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw std::runtime_error("cannot read root: " + root.string());
    fs::recursive_directory_iterator end;
    while (it != end) {
        const fs::directory_entry& entry = *it;
        std::string name = entry.path().filename().string();
        if (entry.is_directory(ec) && !entry.is_symlink(ec)) {
            if (excluded(name)) it.disable_recursion_pending();
        } else if (entry.is_regular_file(ec)) {
            if (!excluded(name) && wanted_ext(entry.path())) {
                out.push_back(to_slash_path(entry.path().lexically_relative(root)));
            }
        }
        it.increment(ec);
        if (ec) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LineClass> classify_lines(std::string_view text) {
    LineIndex idx(text);
    std::uint32_t n_lines = idx.line_count();
    std::vector<LineClass> classes(n_lines, LineClass::Blank);
    if (n_lines == 0) return classes;

    std::vector<bool> has_code(n_lines, false), has_comment(n_lines, false);
    auto mark = [&](std::size_t start, std::size_t end, std::vector<bool>& flags) {
        if (end <= start) return;
        std::uint32_t a = idx.line_of(start);
        std::uint32_t b = idx.line_of(end - 1);
        for (std::uint32_t l = a; l <= b && l >= 1; ++l) flags[l - 1] = true;
    };

    Lexer lex(text, /*tolerant=*/true);
    std::size_t pos = 0;
    for (;;) {
        Token t = lex.next(pos);
        if (t.kind == TokenKind::EndOfFile) break;
        mark(t.start, t.end, has_code);
        pos = t.end > pos ? t.end : pos + 1;
    }
    for (const CommentRaw& c : lex.comments()) mark(c.start, c.end, has_comment);
    if (auto sb = lex.shebang(idx)) mark(sb->start_byte, sb->end_byte, has_comment);

    for (std::uint32_t i = 0; i < n_lines; ++i) {
        if (has_code[i]) classes[i] = LineClass::Code;
        else if (has_comment[i]) classes[i] = LineClass::Comment;
    }
    return classes;
}

LocStats count_loc(const std::vector<FileText>& files) {
    LocStats stats;
    stats.total_files = files.size();
    for (const FileText& f : files) {
        for (LineClass c : classify_lines(f.text)) {
            switch (c) {
                case LineClass::Code: ++stats.code_lines; break;
                case LineClass::Blank: ++stats.blank_lines; break;
                case LineClass::Comment: ++stats.comment_lines; break;
            }
        }
    }
    return stats;
}

LocStats count_loc(const fs::path& root, const std::vector<std::string>& rel_paths,
                   std::vector<std::string>* warnings) {
    std::vector<FileText> files;
    files.reserve(rel_paths.size());
    for (const std::string& rel : rel_paths) {
        auto text = read_file(root / rel);
        if (!text) {
            if (warnings) warnings->push_back("unreadable file skipped: " + rel);
            continue;
        }
        files.push_back({rel, std::move(*text)});
    }
    return count_loc(files);
}

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

ParseResult parse_source(std::string path, std::string text) {
    ParseResult result;
    std::string ext;
    if (auto dot = path.find_last_of('.'); dot != std::string::npos) {
        ext = path.substr(dot);
        for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    ParseOptions opts = ParseOptions::for_extension(ext);

    auto shared_text = std::make_shared<const std::string>(std::move(text));
    ParseOutput out = parse_program(*shared_text, opts);
    result.diagnostics = std::move(out.diagnostics);
    result.invalid_utf8 = out.invalid_utf8;
    if (!out.tree) return result;

    SourceUnit unit;
    unit.path = std::move(path);
    unit.text = shared_text;
    unit.lines = LineIndex(*shared_text);
    unit.tree = std::move(*out.tree);
    unit.comments = std::move(out.comments);
    unit.shebang = out.shebang;
    unit.line_classes = classify_lines(*shared_text);
    result.unit = std::move(unit);
    return result;
}

}  // namespace fpmine
