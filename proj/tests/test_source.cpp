#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using namespace fpmine;
using namespace fpmine::test;
namespace fs = std::filesystem;

namespace {

struct TempTree {
    fs::path root;
    TempTree() {
        root = fs::temp_directory_path() /
               ("fpmine-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(root);
    }
    ~TempTree() { fs::remove_all(root); }
    void put(const std::string& rel, const std::string& text) {
        fs::path p = root / rel;
        fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        out << text;
    }
};

}  // namespace

TEST_CASE("discover_files filters extensions and excluded segments") {
    TempTree t;
    t.put("a/x.js", "1;");
    t.put("node_modules/y.js", "1;");
    t.put("a.ts", "1;");
    t.put("b.tsx", "1;");
    t.put("c.md", "# no");
    t.put("src/coverage/z.js", "1;");
    t.put("src/app.mjs", "1;");
    t.put("dist/out.js", "1;");
    t.put("3rdParty/lib.js", "1;");
    t.put("deep/build/gen.ts", "1;");
    t.put("ok/binder.js", "1;");  // 'bin' must match whole segments only

    auto files = discover_files(t.root, FileDiscoveryOptions{});
    std::vector<std::string> expected = {"a.ts", "a/x.js", "b.tsx", "ok/binder.js", "src/app.mjs"};
    CHECK(files == expected);
}

TEST_CASE("discover_files is deterministic and sorted") {
    TempTree t;
    t.put("z.js", "1;");
    t.put("a.js", "1;");
    t.put("m/q.js", "1;");
    auto f1 = discover_files(t.root, FileDiscoveryOptions{});
    auto f2 = discover_files(t.root, FileDiscoveryOptions{});
    CHECK(f1 == f2);
    CHECK(std::is_sorted(f1.begin(), f1.end()));
}

TEST_CASE("discover_files empty directory") {
    TempTree t;
    CHECK(discover_files(t.root, FileDiscoveryOptions{}).empty());
}

TEST_CASE("discover_files bad root throws") {
    CHECK_THROWS_AS(discover_files("/nonexistent/fpmine-nowhere", FileDiscoveryOptions{}),
                    std::runtime_error);
}

TEST_CASE("count_loc hand-classified cases") {
    // "a\n\n// c\nb // t\n" -> code 2, blank 1, comment 1
    LocStats s = count_loc({{"f.js", "a\n\n// c\nb // t\n"}});
    CHECK(s.code_lines == 2);
    CHECK(s.blank_lines == 1);
    CHECK(s.comment_lines == 1);

    // empty file
    s = count_loc({{"e.js", ""}});
    CHECK(s.code_lines == 0);
    CHECK(s.blank_lines == 0);
    CHECK(s.comment_lines == 0);

    // "/* a\nb */\n" -> code 0, comment 2
    s = count_loc({{"c.js", "/* a\nb */\n"}});
    CHECK(s.code_lines == 0);
    CHECK(s.comment_lines == 2);
}

TEST_CASE("line classification is a partition of physical lines") {
    const std::string samples[] = {
        "a\n\n// c\nb // t\n",
        "/* a\nb */\n",
        "let s = \"// not a comment\";\n",
        "let t = `multi\n\nline`;\n",
        "#!/usr/bin/env node\nlet x = 1;\n",
        "/* leading */ code();\n",
        "   \t\n\n",
        "x;\n/* c */ /* c2 */\n",
    };
    for (const std::string& text : samples) {
        auto classes = classify_lines(text);
        LineIndex idx(text);
        CHECK(classes.size() == idx.line_count());
        LocStats s = count_loc({{"x.js", text}});
        CHECK(s.physical_lines() == idx.line_count());
    }
}

TEST_CASE("strings containing comment markers stay code") {
    auto classes = classify_lines("let s = \"// nope\";\nlet r = '/* no */';\n");
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == LineClass::Code);
    CHECK(classes[1] == LineClass::Code);
}

TEST_CASE("shebang classified as comment") {
    auto classes = classify_lines("#!/usr/bin/env node\nlet x = 1;\n");
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == LineClass::Comment);
    CHECK(classes[1] == LineClass::Code);
}

TEST_CASE("code with trailing block comment interior") {
    // line 1 has code, lines 2-3 fully inside the block comment
    auto classes = classify_lines("f(); /* start\nmiddle\nend */\n");
    REQUIRE(classes.size() == 3);
    CHECK(classes[0] == LineClass::Code);
    CHECK(classes[1] == LineClass::Comment);
    CHECK(classes[2] == LineClass::Comment);
}

TEST_CASE("count_loc determinism over unchanged tree") {
    TempTree t;
    t.put("a.js", "let a = 1;\n// c\n");
    t.put("b.ts", "export const b: number = 2;\n");
    auto files = discover_files(t.root, FileDiscoveryOptions{});
    std::vector<std::string> w1, w2;
    LocStats s1 = count_loc(t.root, files, &w1);
    LocStats s2 = count_loc(t.root, files, &w2);
    CHECK(s1.code_lines == s2.code_lines);
    CHECK(s1.comment_lines == s2.comment_lines);
    CHECK(s1.blank_lines == s2.blank_lines);
    CHECK(s1.total_files == 2);
}

TEST_CASE("parse_source basics") {
    ParseResult ok = parse_source("a.js", "const x = 1;");
    REQUIRE(ok.unit.has_value());
    CHECK(ok.unit->tree[ok.unit->tree.root()].children.size() == 1);
    CHECK(ok.unit->comments.empty());

    ParseResult bad = parse_source("b.js", "}{");
    CHECK(!bad.unit.has_value());
    CHECK(!bad.diagnostics.empty());
}

TEST_CASE("invalid utf-8 is tolerated and flagged") {
    std::string text = "let a = '\xFF\xFE';\n";
    ParseResult r = parse_source("x.js", text);
    REQUIRE(r.unit.has_value());
    CHECK(r.invalid_utf8);
}

TEST_CASE("mixed line endings index correctly") {
    std::string text = "a;\r\nb;\rc;\n";
    LineIndex idx(text);
    CHECK(idx.line_count() == 3);
    SourceUnit u = parse_or_fail(text);
    CHECK(count_kind(u, NodeKind::ExpressionStatement) == 3);
}

TEST_CASE("byte_to_line round trip for produced spans") {
    std::string text = "let a = 1;\nlet b = () => {\n  return 2;\n};\n";
    SourceUnit u = parse_or_fail(text);
    walk(u.tree, u.tree.root(), [&](std::uint32_t idx) {
        const Node& n = u.tree[idx];
        if (n.span.end_byte > n.span.start_byte)
            CHECK(u.lines.line_of(n.span.start_byte) == n.span.start_line);
        return true;
    });
}
