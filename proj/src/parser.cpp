#include "fpmine/parser.hpp"

#include <cassert>
#include <stdexcept>

namespace fpmine {

using namespace node_flags;

ParseOptions ParseOptions::for_extension(std::string_view ext) {
    ParseOptions o;
    if (ext == ".ts" || ext == ".mts" || ext == ".cts") {
        o.typescript = true;
        o.jsx = false;  // `<T>expr` assertions instead of JSX
    } else if (ext == ".tsx") {
        o.typescript = true;
        o.jsx = true;
    } else {
        o.typescript = false;
        o.jsx = true;
    }
    return o;
}

namespace {

struct ParseError {
    std::string msg;
    std::size_t pos;
};

constexpr int kMaxNesting = 4000;

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts)
        : text_(text), opts_(opts), lex_(text) {}

    Tree parse() {
        cur_ = lex_.next(0);
        std::uint32_t root = start_node(NodeKind::Program, 0);
        while (!at(TokenKind::EndOfFile)) {
            add_child(root, parse_statement());
        }
        tree_[root].span.end_byte = text_.size();
        fill_lines();
        return std::move(tree_);
    }

    Lexer& lexer() { return lex_; }

private:
    std::string_view text_;
    ParseOptions opts_;
    Lexer lex_;
    Tree tree_;
    Token cur_;
    std::size_t prev_end_ = 0;
    int depth_ = 0;
    // yield/await are operators only inside matching function kinds; the
    // module top level is await-capable.
    struct FnCtx {
        bool is_async;
        bool is_generator;
    };
    std::vector<FnCtx> fnctx_{{true, false}};

    struct State {
        Token cur;
        std::size_t prev_end;
    };
    State save() const { return {cur_, prev_end_}; }
    void restore(const State& s) {
        cur_ = s.cur;
        prev_end_ = s.prev_end;
    }

    struct NestGuard {
        Parser& p;
        explicit NestGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxNesting) p.fail("nesting too deep");
        }
        ~NestGuard() { --p.depth_; }
    };

    [[noreturn]] void fail(std::string msg) const { throw ParseError{std::move(msg), cur_.start}; }

    std::string_view tok_text(const Token& t) const { return t.text(text_); }

    bool at(TokenKind k) const { return cur_.kind == k; }
    bool at_word(std::string_view w) const {
        return cur_.kind == TokenKind::Identifier && tok_text(cur_) == w;
    }
    Token peek() { return lex_.next(cur_.end); }

    void advance() {
        prev_end_ = cur_.end;
        cur_ = lex_.next(cur_.end);
    }
    void set_cur_at(std::size_t pos) { cur_ = lex_.next(pos); }

    bool eat(TokenKind k) {
        if (!at(k)) return false;
        advance();
        return true;
    }
    void expect(TokenKind k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        advance();
    }
    bool eat_word(std::string_view w) {
        if (!at_word(w)) return false;
        advance();
        return true;
    }

    // Splits the leading `>` off a multi-char token (>> >>> >= >>= >>>=)
    // while skipping type argument lists.
    void split_right_angle() {
        Token t = cur_;
        prev_end_ = t.start + 1;
        Token nt;
        nt.start = t.start + 1;
        nt.end = t.end;
        nt.newline_before = false;
        switch (t.kind) {
            case TokenKind::GtGt: nt.kind = TokenKind::Gt; break;
            case TokenKind::GtGtGt: nt.kind = TokenKind::GtGt; break;
            case TokenKind::GtEq: nt.kind = TokenKind::Assign; break;
            case TokenKind::GtGtAssign: nt.kind = TokenKind::GtEq; break;
            case TokenKind::GtGtGtAssign: nt.kind = TokenKind::GtGtAssign; break;
            default: fail("not a right angle");
        }
        cur_ = nt;
    }

    void semicolon() {
        if (eat(TokenKind::Semicolon)) return;
        if (at(TokenKind::RBrace) || at(TokenKind::EndOfFile) || cur_.newline_before) return;
        fail("expected ;");
    }

    // ---- tree helpers -----------------------------------------------------

    std::uint32_t start_node(NodeKind k, std::size_t start) {
        Node n;
        n.kind = k;
        n.span.start_byte = start;
        return tree_.add(std::move(n));
    }
    std::uint32_t start_node(NodeKind k) { return start_node(k, cur_.start); }
    void finish(std::uint32_t n) { tree_[n].span.end_byte = prev_end_; }
    void add_child(std::uint32_t parent, std::uint32_t child) {
        tree_[parent].children.push_back(child);
        tree_[child].parent = parent;
    }
    std::uint32_t leaf(NodeKind k, const Token& t) {
        Node n;
        n.kind = k;
        n.span.start_byte = t.start;
        n.span.end_byte = t.end;
        return tree_.add(std::move(n));
    }

    void fill_lines() {
        LineIndex idx(text_);
        for (std::uint32_t i = 0; i < tree_.size(); ++i) {
            Node& n = tree_[i];
            n.span = idx.span(n.span.start_byte, n.span.end_byte);
        }
    }

    bool is_ts() const { return opts_.typescript; }

    // ---- statements -------------------------------------------------------

    std::uint32_t parse_statement() {
        NestGuard guard(*this);
        switch (cur_.kind) {
            case TokenKind::LBrace: return parse_block();
            case TokenKind::Semicolon: {
                std::uint32_t n = start_node(NodeKind::EmptyStatement);
                advance();
                finish(n);
                return n;
            }
            case TokenKind::At: return parse_decorated();
            case TokenKind::Identifier: break;
            default: return parse_expression_statement();
        }

        std::string_view w = tok_text(cur_);
        if (w == "if") return parse_if();
        if (w == "for") return parse_for();
        if (w == "while") return parse_while();
        if (w == "do") return parse_do_while();
        if (w == "switch") return parse_switch();
        if (w == "try") return parse_try();
        if (w == "throw") return parse_throw();
        if (w == "return") return parse_return();
        if (w == "break" || w == "continue") return parse_break_continue(w == "break");
        if (w == "debugger") {
            std::uint32_t n = start_node(NodeKind::DebuggerStatement);
            advance();
            semicolon();
            finish(n);
            return n;
        }
        if (w == "with") return parse_with();
        if (w == "var") return parse_var_statement(0);
        if (w == "const") {
            // `const enum E {}` is a TS construct
            if (is_ts() && peek().kind == TokenKind::Identifier && tok_text(peek()) == "enum") {
                std::uint32_t start = cur_.start;
                advance();
                return parse_ts_enum(start);
            }
            return parse_var_statement(DeclConst);
        }
        if (w == "let") {
            Token p = peek();
            if (p.kind == TokenKind::Identifier || p.kind == TokenKind::LBracket ||
                p.kind == TokenKind::LBrace)
                return parse_var_statement(DeclLet);
            return parse_expression_statement();
        }
        if (w == "function") return parse_function(NodeKind::FunctionDecl, false, cur_.start);
        if (w == "async") {
            Token p = peek();
            if (p.kind == TokenKind::Identifier && tok_text(p) == "function" && !p.newline_before) {
                std::size_t start = cur_.start;
                advance();
                return parse_function(NodeKind::FunctionDecl, true, start);
            }
            // falls through to expression (async arrows handled there)
        }
        if (w == "class") return parse_class(NodeKind::ClassDecl, cur_.start, {});
        if (w == "import") {
            Token p = peek();
            if (p.kind == TokenKind::LParen || p.kind == TokenKind::Dot)
                return parse_expression_statement();
            return parse_import();
        }
        if (w == "export") return parse_export();
        if (is_ts()) {
            if (w == "interface" && peek().kind == TokenKind::Identifier)
                return parse_ts_interface();
            if (w == "type" && peek().kind == TokenKind::Identifier) {
                // `type X = ...` / `type X<T> = ...`; anything else is an expression
                State s = save();
                std::size_t start = cur_.start;
                advance();
                advance();
                if (at(TokenKind::Assign) || at(TokenKind::Lt)) {
                    return parse_ts_type_alias(start);
                }
                restore(s);
            }
            if (w == "enum") return parse_ts_enum(cur_.start);
            if ((w == "namespace" || w == "module") &&
                (peek().kind == TokenKind::Identifier || peek().kind == TokenKind::String)) {
                // `module` as a namespace only when a body follows
                State s = save();
                std::size_t start = cur_.start;
                advance();
                while (at(TokenKind::Identifier) || at(TokenKind::String)) {
                    advance();
                    if (!eat(TokenKind::Dot)) break;
                }
                if (at(TokenKind::LBrace)) return parse_ts_module_body(start);
                restore(s);
            }
            if (w == "declare") {
                Token p = peek();
                if (p.kind == TokenKind::Identifier && !p.newline_before) {
                    std::size_t start = cur_.start;
                    advance();
                    std::uint32_t inner = parse_statement();
                    tree_[inner].flags |= Ambient;
                    tree_[inner].span.start_byte = start;
                    return inner;
                }
            }
            if (w == "abstract" && peek().kind == TokenKind::Identifier &&
                tok_text(peek()) == "class") {
                std::size_t start = cur_.start;
                advance();
                return parse_class(NodeKind::ClassDecl, start, {});
            }
        }
        // labeled statement
        if (peek().kind == TokenKind::Colon) {
            std::uint32_t n = start_node(NodeKind::LabeledStatement);
            add_child(n, leaf(NodeKind::Identifier, cur_));
            advance();
            advance();  // :
            add_child(n, parse_statement());
            finish(n);
            return n;
        }
        return parse_expression_statement();
    }

    std::uint32_t parse_expression_statement() {
        std::uint32_t n = start_node(NodeKind::ExpressionStatement);
        add_child(n, parse_expression(true));
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_block() {
        std::uint32_t n = start_node(NodeKind::Block);
        expect(TokenKind::LBrace, "{");
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated block");
            add_child(n, parse_statement());
        }
        advance();
        finish(n);
        return n;
    }

    std::uint32_t parse_if() {
        std::uint32_t n = start_node(NodeKind::IfStatement);
        advance();
        expect(TokenKind::LParen, "(");
        add_child(n, parse_expression(true));
        expect(TokenKind::RParen, ")");
        add_child(n, parse_statement());
        if (eat_word("else")) add_child(n, parse_statement());
        finish(n);
        return n;
    }

    std::uint32_t parse_while() {
        std::uint32_t n = start_node(NodeKind::WhileStatement);
        advance();
        expect(TokenKind::LParen, "(");
        add_child(n, parse_expression(true));
        expect(TokenKind::RParen, ")");
        add_child(n, parse_statement());
        finish(n);
        return n;
    }

    std::uint32_t parse_do_while() {
        std::uint32_t n = start_node(NodeKind::DoWhileStatement);
        advance();
        add_child(n, parse_statement());
        if (!eat_word("while")) fail("expected while");
        expect(TokenKind::LParen, "(");
        add_child(n, parse_expression(true));
        expect(TokenKind::RParen, ")");
        eat(TokenKind::Semicolon);
        finish(n);
        return n;
    }

    std::uint32_t parse_for() {
        std::size_t start = cur_.start;
        advance();
        bool awaited = eat_word("await");
        expect(TokenKind::LParen, "(");

        std::uint32_t init = kNoNode;
        if (at(TokenKind::Semicolon)) {
            init = leaf(NodeKind::Hole, cur_);
        } else if (at_word("var") || at_word("const") ||
                   (at_word("let") && (peek().kind == TokenKind::Identifier ||
                                       peek().kind == TokenKind::LBracket ||
                                       peek().kind == TokenKind::LBrace))) {
            std::uint32_t flags = at_word("const") ? DeclConst : (at_word("let") ? DeclLet : 0);
            init = parse_var_declaration_list(flags, /*in_for=*/true);
        } else {
            std::uint32_t e = start_node(NodeKind::ExpressionStatement);
            add_child(e, parse_expression(/*allow_in=*/false));
            finish(e);
            init = e;
        }

        if (at_word("in") || at_word("of")) {
            bool is_of = at_word("of");
            std::uint32_t n = start_node(is_of ? NodeKind::ForOfStatement : NodeKind::ForInStatement, start);
            if (awaited) tree_[n].flags |= AwaitedFor;
            advance();
            add_child(n, init);
            add_child(n, is_of ? parse_assign(true) : parse_expression(true));
            expect(TokenKind::RParen, ")");
            add_child(n, parse_statement());
            finish(n);
            return n;
        }

        std::uint32_t n = start_node(NodeKind::ForStatement, start);
        add_child(n, init);
        expect(TokenKind::Semicolon, ";");
        if (at(TokenKind::Semicolon)) add_child(n, leaf(NodeKind::Hole, cur_));
        else add_child(n, parse_expression(true));
        expect(TokenKind::Semicolon, ";");
        if (at(TokenKind::RParen)) add_child(n, leaf(NodeKind::Hole, cur_));
        else add_child(n, parse_expression(true));
        expect(TokenKind::RParen, ")");
        add_child(n, parse_statement());
        finish(n);
        return n;
    }

    std::uint32_t parse_switch() {
        std::uint32_t n = start_node(NodeKind::SwitchStatement);
        advance();
        expect(TokenKind::LParen, "(");
        add_child(n, parse_expression(true));
        expect(TokenKind::RParen, ")");
        expect(TokenKind::LBrace, "{");
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated switch");
            std::uint32_t c = start_node(NodeKind::SwitchCase);
            if (eat_word("case")) {
                add_child(c, parse_expression(true));
            } else if (eat_word("default")) {
                tree_[c].flags |= Default;
            } else {
                fail("expected case or default");
            }
            expect(TokenKind::Colon, ":");
            while (!at(TokenKind::RBrace) && !at_word("case") && !at_word("default")) {
                if (at(TokenKind::EndOfFile)) fail("unterminated switch");
                add_child(c, parse_statement());
            }
            finish(c);
            add_child(n, c);
        }
        advance();
        finish(n);
        return n;
    }

    std::uint32_t parse_try() {
        std::uint32_t n = start_node(NodeKind::TryStatement);
        advance();
        add_child(n, parse_block());
        if (at_word("catch")) {
            std::uint32_t c = start_node(NodeKind::CatchClause);
            advance();
            if (eat(TokenKind::LParen)) {
                tree_[c].flags |= HasParam;
                add_child(c, parse_binding_pattern());
                if (is_ts() && eat(TokenKind::Colon)) skip_type();
                expect(TokenKind::RParen, ")");
            }
            add_child(c, parse_block());
            finish(c);
            add_child(n, c);
        }
        if (eat_word("finally")) add_child(n, parse_block());
        finish(n);
        return n;
    }

    std::uint32_t parse_throw() {
        std::uint32_t n = start_node(NodeKind::ThrowStatement);
        advance();
        if (cur_.newline_before) fail("newline after throw");
        add_child(n, parse_expression(true));
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_return() {
        std::uint32_t n = start_node(NodeKind::ReturnStatement);
        advance();
        if (!at(TokenKind::Semicolon) && !at(TokenKind::RBrace) &&
            !at(TokenKind::EndOfFile) && !cur_.newline_before) {
            add_child(n, parse_expression(true));
        }
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_break_continue(bool is_break) {
        std::uint32_t n = start_node(is_break ? NodeKind::BreakStatement : NodeKind::ContinueStatement);
        advance();
        if (at(TokenKind::Identifier) && !cur_.newline_before && !at_word("case") &&
            !at_word("default")) {
            add_child(n, leaf(NodeKind::Identifier, cur_));
            advance();
        }
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_with() {
        std::uint32_t n = start_node(NodeKind::WithStatement);
        advance();
        expect(TokenKind::LParen, "(");
        add_child(n, parse_expression(true));
        expect(TokenKind::RParen, ")");
        add_child(n, parse_statement());
        finish(n);
        return n;
    }

    std::uint32_t parse_var_statement(std::uint32_t flags) {
        std::uint32_t n = parse_var_declaration_list(flags, false);
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_var_declaration_list(std::uint32_t flags, bool in_for) {
        std::uint32_t n = start_node(NodeKind::VarStatement);
        tree_[n].flags |= flags;
        advance();  // var/let/const
        do {
            std::uint32_t d = start_node(NodeKind::VarDeclarator);
            add_child(d, parse_binding_pattern());
            if (is_ts()) {
                if (at(TokenKind::Bang) && !cur_.newline_before) advance();  // definite assignment
                if (eat(TokenKind::Colon)) skip_type();
            }
            if (eat(TokenKind::Assign)) {
                tree_[d].flags |= HasInit;
                add_child(d, parse_assign(!in_for));
            }
            finish(d);
            add_child(n, d);
            if (in_for && (at_word("in") || at_word("of"))) break;
        } while (eat(TokenKind::Comma));
        finish(n);
        return n;
    }

    // ---- patterns ---------------------------------------------------------

    std::uint32_t parse_binding_pattern() {
        NestGuard guard(*this);
        if (at(TokenKind::Identifier)) {
            std::uint32_t n = leaf(NodeKind::Identifier, cur_);
            advance();
            return n;
        }
        if (at(TokenKind::LBracket)) return parse_array_pattern();
        if (at(TokenKind::LBrace)) return parse_object_pattern();
        fail("expected binding pattern");
    }

    std::uint32_t parse_pattern_with_default() {
        std::uint32_t pat = parse_binding_pattern();
        if (at(TokenKind::Assign)) {
            std::uint32_t n = start_node(NodeKind::AssignPattern, tree_[pat].span.start_byte);
            advance();
            add_child(n, pat);
            add_child(n, parse_assign(true));
            finish(n);
            return n;
        }
        return pat;
    }

    std::uint32_t parse_array_pattern() {
        std::uint32_t n = start_node(NodeKind::ArrayPattern);
        advance();  // [
        while (!at(TokenKind::RBracket)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated array pattern");
            if (at(TokenKind::Comma)) {
                add_child(n, leaf(NodeKind::Hole, cur_));
                advance();
                continue;
            }
            if (at(TokenKind::DotDotDot)) {
                std::uint32_t r = start_node(NodeKind::RestElement);
                advance();
                add_child(r, parse_binding_pattern());
                finish(r);
                add_child(n, r);
            } else {
                add_child(n, parse_pattern_with_default());
            }
            if (!at(TokenKind::RBracket)) expect(TokenKind::Comma, ",");
        }
        advance();
        finish(n);
        return n;
    }

    std::uint32_t parse_object_pattern() {
        std::uint32_t n = start_node(NodeKind::ObjectPattern);
        advance();  // {
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated object pattern");
            if (at(TokenKind::DotDotDot)) {
                std::uint32_t r = start_node(NodeKind::RestElement);
                advance();
                add_child(r, parse_binding_pattern());
                finish(r);
                add_child(n, r);
            } else {
                std::uint32_t p = start_node(NodeKind::PatternProp);
                if (at(TokenKind::LBracket)) {
                    tree_[p].flags |= Computed;
                    advance();
                    add_child(p, parse_assign(true));
                    expect(TokenKind::RBracket, "]");
                    expect(TokenKind::Colon, ":");
                    add_child(p, parse_pattern_with_default());
                } else if (at(TokenKind::String) || at(TokenKind::Number)) {
                    add_child(p, leaf(at(TokenKind::String) ? NodeKind::StringLit : NodeKind::NumberLit, cur_));
                    advance();
                    expect(TokenKind::Colon, ":");
                    add_child(p, parse_pattern_with_default());
                } else if (at(TokenKind::Identifier)) {
                    Token key = cur_;
                    advance();
                    if (eat(TokenKind::Colon)) {
                        add_child(p, leaf(NodeKind::Identifier, key));
                        add_child(p, parse_pattern_with_default());
                    } else {
                        tree_[p].flags |= Shorthand;
                        std::uint32_t id = leaf(NodeKind::Identifier, key);
                        add_child(p, id);
                        if (at(TokenKind::Assign)) {
                            std::uint32_t a = start_node(NodeKind::AssignPattern, key.start);
                            advance();
                            add_child(a, id);
                            add_child(a, parse_assign(true));
                            finish(a);
                            tree_[p].children.back() = a;
                            tree_[a].parent = p;
                        }
                    }
                } else {
                    fail("expected property pattern");
                }
                finish(p);
                add_child(n, p);
            }
            if (!at(TokenKind::RBrace)) expect(TokenKind::Comma, ",");
        }
        advance();
        finish(n);
        return n;
    }

    // ---- functions & classes ----------------------------------------------

    bool is_ts_param_modifier() {
        if (!is_ts() || !at(TokenKind::Identifier)) return false;
        std::string_view w = tok_text(cur_);
        if (w != "public" && w != "private" && w != "protected" && w != "readonly" &&
            w != "override")
            return false;
        Token p = peek();
        return p.kind == TokenKind::Identifier || p.kind == TokenKind::LBrace ||
               p.kind == TokenKind::LBracket || p.kind == TokenKind::DotDotDot;
    }

    void parse_params_into(std::uint32_t fn) {
        expect(TokenKind::LParen, "(");
        while (!at(TokenKind::RParen)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated parameter list");
            std::uint32_t p = start_node(NodeKind::Param);
            while (at(TokenKind::At)) add_child(p, parse_decorator());
            while (is_ts_param_modifier()) advance();
            if (at(TokenKind::DotDotDot)) {
                tree_[p].flags |= Rest;
                advance();
            }
            if (at_word("this") && is_ts()) {
                // `this: Type` pseudo-parameter
                add_child(p, leaf(NodeKind::Identifier, cur_));
                advance();
            } else {
                add_child(p, parse_binding_pattern());
            }
            if (is_ts() && at(TokenKind::Question)) {
                tree_[p].flags |= Optional;
                advance();
            }
            if (is_ts() && eat(TokenKind::Colon)) skip_type();
            if (eat(TokenKind::Assign)) {
                tree_[p].flags |= HasDefaultFlag();
                add_child(p, parse_assign(true));
            }
            finish(p);
            add_child(fn, p);
            if (!at(TokenKind::RParen)) expect(TokenKind::Comma, ",");
        }
        advance();
    }

    static constexpr std::uint32_t HasDefaultFlag() { return HasInit; }

    std::uint32_t parse_function(NodeKind kind, bool is_async, std::size_t start) {
        std::uint32_t n = start_node(kind, start);
        if (is_async) tree_[n].flags |= Async;
        advance();  // function
        if (eat(TokenKind::Star)) tree_[n].flags |= Generator;
        if (at(TokenKind::Identifier)) {
            tree_[n].flags |= HasName;
            add_child(n, leaf(NodeKind::Identifier, cur_));
            advance();
        } else if (kind == NodeKind::FunctionDecl && !at(TokenKind::LParen) && !at(TokenKind::Lt)) {
            fail("expected function name");
        }
        fnctx_.push_back({tree_[n].has(Async), tree_[n].has(Generator)});
        if (is_ts() && at(TokenKind::Lt)) skip_type_params();
        parse_params_into(n);
        if (is_ts() && eat(TokenKind::Colon)) skip_type();
        if (at(TokenKind::LBrace)) {
            tree_[n].flags |= HasBody;
            add_child(n, parse_block());
        } else {
            // ambient declaration or overload signature
            tree_[n].flags |= Ambient;
            fnctx_.pop_back();
            semicolon();
            finish(n);
            return n;
        }
        fnctx_.pop_back();
        finish(n);
        return n;
    }

    std::uint32_t parse_decorator() {
        std::uint32_t n = start_node(NodeKind::Decorator);
        expect(TokenKind::At, "@");
        std::uint32_t expr = parse_primary();
        expr = parse_call_chain(expr, true);
        add_child(n, expr);
        finish(n);
        return n;
    }

    std::uint32_t parse_decorated() {
        std::vector<std::uint32_t> decorators;
        std::size_t start = cur_.start;
        while (at(TokenKind::At)) decorators.push_back(parse_decorator());
        bool exported = false;
        std::size_t export_start = cur_.start;
        if (at_word("export")) {
            exported = true;
            advance();
            eat_word("default");
        }
        if (at_word("abstract")) advance();
        if (!at_word("class")) fail("expected class after decorators");
        std::uint32_t cls = parse_class(NodeKind::ClassDecl, start, decorators);
        if (exported) {
            std::uint32_t ex = start_node(NodeKind::ExportDecl, export_start);
            add_child(ex, cls);
            finish(ex);
            return ex;
        }
        return cls;
    }

    std::uint32_t parse_class(NodeKind kind, std::size_t start,
                              const std::vector<std::uint32_t>& decorators) {
        std::uint32_t n = start_node(kind, start);
        advance();  // class
        if (at(TokenKind::Identifier) && !at_word("extends") && !at_word("implements")) {
            tree_[n].flags |= HasName;
            add_child(n, leaf(NodeKind::Identifier, cur_));
            advance();
        }
        if (is_ts() && at(TokenKind::Lt)) skip_type_params();
        if (eat_word("extends")) {
            tree_[n].flags |= HasHeritage;
            std::uint32_t h = parse_call_chain(parse_primary(), true);
            add_child(n, h);
            if (is_ts() && at(TokenKind::Lt)) skip_type_params();
        }
        if (is_ts() && eat_word("implements")) {
            do {
                skip_type();
            } while (eat(TokenKind::Comma));
        }
        for (std::uint32_t d : decorators) add_child(n, d);
        expect(TokenKind::LBrace, "{");
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated class body");
            if (eat(TokenKind::Semicolon)) continue;
            add_child(n, parse_class_member());
        }
        advance();
        finish(n);
        return n;
    }

    // A modifier word is a modifier only if a member name (or `*`, or a
    // static block `{`) can follow; otherwise the word itself is the name.
    bool word_is_modifier() {
        switch (peek().kind) {
            case TokenKind::Identifier:
            case TokenKind::String:
            case TokenKind::Number:
            case TokenKind::LBracket:
            case TokenKind::Star:
            case TokenKind::PrivateName:
            case TokenKind::LBrace:
                return true;
            default:
                return false;
        }
    }

    std::uint32_t parse_class_member() {
        std::vector<std::uint32_t> decorators;
        while (at(TokenKind::At)) decorators.push_back(parse_decorator());
        std::size_t start = decorators.empty() ? cur_.start : tree_[decorators[0]].span.start_byte;

        bool is_static = false, is_async = false, is_generator = false;
        bool is_getter = false, is_setter = false;
        for (;;) {
            if (at_word("static") && word_is_modifier()) {
                is_static = true;
                advance();
                if (at(TokenKind::LBrace)) {
                    std::uint32_t b = start_node(NodeKind::StaticBlock, start);
                    tree_[b].flags |= Static | HasBody;
                    fnctx_.push_back({false, false});
                    add_child(b, parse_block());
                    fnctx_.pop_back();
                    finish(b);
                    return b;
                }
                continue;
            }
            if (is_ts() && (at_word("public") || at_word("private") || at_word("protected") ||
                            at_word("readonly") || at_word("abstract") || at_word("override") ||
                            at_word("declare") || at_word("accessor")) &&
                word_is_modifier()) {
                advance();
                continue;
            }
            if (at_word("async") && word_is_modifier() && !peek().newline_before) {
                is_async = true;
                advance();
                continue;
            }
            break;
        }
        if (at(TokenKind::Star)) {
            is_generator = true;
            advance();
        }
        if ((at_word("get") || at_word("set")) && word_is_modifier()) {
            is_getter = at_word("get");
            is_setter = !is_getter;
            advance();
        }

        std::uint32_t m = start_node(NodeKind::MethodDef, start);
        if (is_static) tree_[m].flags |= Static;
        if (is_async) tree_[m].flags |= Async;
        if (is_generator) tree_[m].flags |= Generator;
        if (is_getter) tree_[m].flags |= Getter;
        if (is_setter) tree_[m].flags |= Setter;
        for (std::uint32_t d : decorators) add_child(m, d);

        // key
        if (at(TokenKind::LBracket)) {
            tree_[m].flags |= Computed;
            advance();
            add_child(m, parse_assign(true));
            expect(TokenKind::RBracket, "]");
        } else if (at(TokenKind::String)) {
            add_child(m, leaf(NodeKind::StringLit, cur_));
            advance();
        } else if (at(TokenKind::Number)) {
            add_child(m, leaf(NodeKind::NumberLit, cur_));
            advance();
        } else if (at(TokenKind::PrivateName)) {
            add_child(m, leaf(NodeKind::PrivateRef, cur_));
            advance();
        } else if (at(TokenKind::Identifier)) {
            add_child(m, leaf(NodeKind::Identifier, cur_));
            advance();
        } else {
            fail("expected class member name");
        }

        if (is_ts() && at(TokenKind::Question)) advance();
        if (is_ts() && at(TokenKind::Bang) && !cur_.newline_before) advance();

        if (at(TokenKind::Lt) && is_ts()) skip_type_params();
        if (at(TokenKind::LParen)) {
            fnctx_.push_back({is_async, is_generator});
            parse_params_into(m);
            if (is_ts() && eat(TokenKind::Colon)) skip_type();
            if (at(TokenKind::LBrace)) {
                tree_[m].flags |= HasBody;
                add_child(m, parse_block());
            } else {
                tree_[m].flags |= Ambient;
                semicolon();
            }
            fnctx_.pop_back();
            finish(m);
            return m;
        }

        // field
        tree_[m].kind = NodeKind::FieldDef;
        if (is_ts() && eat(TokenKind::Colon)) skip_type();
        if (eat(TokenKind::Assign)) {
            tree_[m].flags |= HasInit;
            add_child(m, parse_assign(true));
        }
        semicolon();
        finish(m);
        return m;
    }

    // ---- modules ------------------------------------------------------------

    std::uint32_t parse_import() {
        std::uint32_t n = start_node(NodeKind::ImportDecl);
        advance();  // import
        bool type_only = false;
        if (is_ts() && at_word("type")) {
            Token p = peek();
            if (p.kind == TokenKind::Identifier || p.kind == TokenKind::LBrace ||
                p.kind == TokenKind::Star) {
                type_only = true;
                advance();
            }
        }
        if (at(TokenKind::String)) {  // bare import for side effects
            advance();
            semicolon();
            finish(n);
            return n;
        }
        auto add_spec = [&](const Token& local) {
            std::uint32_t s = start_node(NodeKind::ImportSpec, local.start);
            if (type_only) tree_[s].flags |= Ambient;
            add_child(s, leaf(NodeKind::Identifier, local));
            tree_[s].span.end_byte = local.end;
            add_child(n, s);
        };
        if (at(TokenKind::Identifier)) {
            Token def = cur_;
            advance();
            if (at(TokenKind::Assign)) {
                // TS `import x = require('m')`
                add_spec(def);
                advance();
                parse_assign(true);
                semicolon();
                finish(n);
                return n;
            }
            add_spec(def);
            eat(TokenKind::Comma);
        }
        if (at(TokenKind::Star)) {
            advance();
            if (!eat_word("as")) fail("expected as");
            if (!at(TokenKind::Identifier)) fail("expected namespace name");
            add_spec(cur_);
            advance();
        } else if (at(TokenKind::LBrace)) {
            advance();
            while (!at(TokenKind::RBrace)) {
                if (at(TokenKind::EndOfFile)) fail("unterminated import");
                bool spec_type_only = type_only;
                if (is_ts() && at_word("type") && peek().kind == TokenKind::Identifier &&
                    tok_text(peek()) != "as") {
                    spec_type_only = true;
                    advance();
                }
                if (!at(TokenKind::Identifier) && !at(TokenKind::String))
                    fail("expected import name");
                Token imported = cur_;
                advance();
                Token local = imported;
                if (at_word("as")) {
                    advance();
                    if (!at(TokenKind::Identifier)) fail("expected local name");
                    local = cur_;
                    advance();
                }
                std::uint32_t s = start_node(NodeKind::ImportSpec, imported.start);
                if (spec_type_only) tree_[s].flags |= Ambient;
                add_child(s, leaf(NodeKind::Identifier, local));
                tree_[s].span.end_byte = local.end;
                add_child(n, s);
                if (!at(TokenKind::RBrace)) expect(TokenKind::Comma, ",");
            }
            advance();
        }
        if (!eat_word("from")) fail("expected from");
        if (!at(TokenKind::String)) fail("expected module specifier");
        advance();
        // import assertions / attributes
        if ((at_word("assert") || at_word("with")) && !cur_.newline_before &&
            peek().kind == TokenKind::LBrace) {
            advance();
            skip_balanced(TokenKind::LBrace, TokenKind::RBrace);
        }
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_export() {
        std::uint32_t n = start_node(NodeKind::ExportDecl);
        advance();  // export
        bool type_only = false;
        if (is_ts() && at_word("type")) {
            Token p = peek();
            if (p.kind == TokenKind::LBrace || p.kind == TokenKind::Star) {
                type_only = true;
                advance();
            }
        }
        if (at_word("default")) {
            tree_[n].flags |= Default;
            advance();
            if (at_word("function") ||
                (at_word("async") && peek().kind == TokenKind::Identifier &&
                 tok_text(peek()) == "function")) {
                bool is_async = eat_word("async");
                add_child(n, parse_function(NodeKind::FunctionDecl, is_async, cur_.start));
            } else if (at_word("class") || (at_word("abstract") && is_ts())) {
                eat_word("abstract");
                add_child(n, parse_class(NodeKind::ClassDecl, cur_.start, {}));
            } else {
                add_child(n, parse_assign(true));
                semicolon();
            }
            finish(n);
            return n;
        }
        if (at(TokenKind::Star)) {
            advance();
            if (eat_word("as")) {
                if (!at(TokenKind::Identifier)) fail("expected name");
                advance();
            }
            if (!eat_word("from")) fail("expected from");
            if (!at(TokenKind::String)) fail("expected module specifier");
            advance();
            semicolon();
            finish(n);
            return n;
        }
        if (at(TokenKind::LBrace)) {
            advance();
            std::vector<Token> locals;
            while (!at(TokenKind::RBrace)) {
                if (at(TokenKind::EndOfFile)) fail("unterminated export");
                if (is_ts() && at_word("type") && peek().kind == TokenKind::Identifier) advance();
                if (!at(TokenKind::Identifier) && !at(TokenKind::String)) fail("expected export name");
                Token local = cur_;
                advance();
                if (at_word("as")) {
                    advance();
                    if (!at(TokenKind::Identifier) && !at(TokenKind::String)) fail("expected alias");
                    advance();
                }
                locals.push_back(local);
                if (!at(TokenKind::RBrace)) expect(TokenKind::Comma, ",");
            }
            advance();
            bool reexport = false;
            if (eat_word("from")) {
                reexport = true;
                if (!at(TokenKind::String)) fail("expected module specifier");
                advance();
            }
            // local exported names are value uses unless re-exporting or
            // type-only
            if (!reexport && !type_only) {
                for (const Token& t : locals)
                    if (t.kind == TokenKind::Identifier)
                        add_child(n, leaf(NodeKind::Identifier, t));
            }
            semicolon();
            finish(n);
            return n;
        }
        if (is_ts() && at(TokenKind::Assign)) {  // `export = x`
            advance();
            add_child(n, parse_assign(true));
            semicolon();
            finish(n);
            return n;
        }
        // export <declaration>
        add_child(n, parse_statement());
        finish(n);
        return n;
    }

    // ---- TypeScript-only declarations ---------------------------------------

    std::uint32_t parse_ts_interface() {
        std::uint32_t n = start_node(NodeKind::TsInterfaceDecl);
        advance();  // interface
        expect(TokenKind::Identifier, "interface name");
        if (at(TokenKind::Lt)) skip_type_params();
        while (at_word("extends")) {
            advance();
            do {
                skip_type();
            } while (eat(TokenKind::Comma));
        }
        skip_balanced(TokenKind::LBrace, TokenKind::RBrace);
        finish(n);
        return n;
    }

    std::uint32_t parse_ts_type_alias(std::size_t start) {
        std::uint32_t n = start_node(NodeKind::TsTypeAliasDecl, start);
        if (at(TokenKind::Lt)) skip_type_params();
        expect(TokenKind::Assign, "=");
        skip_type();
        semicolon();
        finish(n);
        return n;
    }

    std::uint32_t parse_ts_enum(std::size_t start) {
        std::uint32_t n = start_node(NodeKind::TsEnumDecl, start);
        advance();  // enum
        if (!at(TokenKind::Identifier)) fail("expected enum name");
        tree_[n].flags |= HasName;
        add_child(n, leaf(NodeKind::Identifier, cur_));
        advance();
        expect(TokenKind::LBrace, "{");
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated enum");
            std::uint32_t m = start_node(NodeKind::TsEnumMember);
            if (at(TokenKind::String)) add_child(m, leaf(NodeKind::StringLit, cur_));
            else if (at(TokenKind::Identifier)) add_child(m, leaf(NodeKind::Identifier, cur_));
            else fail("expected enum member");
            advance();
            if (eat(TokenKind::Assign)) {
                tree_[m].flags |= HasInit;
                add_child(m, parse_assign(true));
            }
            finish(m);
            add_child(n, m);
            if (!at(TokenKind::RBrace)) expect(TokenKind::Comma, ",");
        }
        advance();
        finish(n);
        return n;
    }

    std::uint32_t parse_ts_module_body(std::size_t start) {
        std::uint32_t n = start_node(NodeKind::TsModuleDecl, start);
        add_child(n, parse_block());
        finish(n);
        return n;
    }

    // ---- type skipping ------------------------------------------------------

    void skip_balanced(TokenKind open, TokenKind close) {
        expect(open, "opening bracket");
        int depth = 1;
        while (depth > 0) {
            if (at(TokenKind::EndOfFile)) fail("unterminated bracket");
            if (at(open)) ++depth;
            else if (at(close)) --depth;
            advance();
        }
    }

    void skip_type_params() {
        // `<...>` with nested brackets; multi-char `>` tokens are split
        int depth = 0;
        for (;;) {
            if (at(TokenKind::EndOfFile)) fail("unterminated type arguments");
            switch (cur_.kind) {
                case TokenKind::Lt: ++depth; advance(); break;
                case TokenKind::LtLt: depth += 2; advance(); break;
                case TokenKind::Gt:
                    --depth;
                    advance();
                    if (depth == 0) return;
                    break;
                case TokenKind::GtGt:
                case TokenKind::GtGtGt:
                case TokenKind::GtEq:
                case TokenKind::GtGtAssign:
                case TokenKind::GtGtGtAssign:
                    --depth;
                    if (depth == 0) {
                        split_right_angle();
                        return;
                    }
                    split_right_angle();
                    break;
                case TokenKind::LParen: skip_balanced(TokenKind::LParen, TokenKind::RParen); break;
                case TokenKind::LBracket: skip_balanced(TokenKind::LBracket, TokenKind::RBracket); break;
                case TokenKind::LBrace: skip_balanced(TokenKind::LBrace, TokenKind::RBrace); break;
                default: advance(); break;
            }
        }
    }

    // `stop_at_arrow` keeps a depth-0 `=>` unconsumed: arrow return-type
    // annotations end there, while ordinary annotations admit function types.
    void skip_type(bool stop_at_arrow = false) {
        NestGuard guard(*this);
        skip_type_operand(stop_at_arrow);
        for (;;) {
            if (at(TokenKind::Pipe) || at(TokenKind::Amp)) {
                advance();
                skip_type_operand(stop_at_arrow);
            } else if (at_word("extends")) {
                advance();
                skip_type_operand(true);
                // conditional type
                if (eat(TokenKind::Question)) {
                    skip_type();
                    expect(TokenKind::Colon, ":");
                    skip_type(stop_at_arrow);
                }
            } else if (at_word("is")) {
                advance();
                skip_type_operand(stop_at_arrow);
            } else {
                break;
            }
        }
    }

    void skip_type_operand(bool stop_at_arrow = false) {
        // prefix words
        while (at_word("keyof") || at_word("typeof") || at_word("readonly") ||
               at_word("infer") || at_word("unique") || at_word("asserts") ||
               at_word("abstract")) {
            advance();
        }
        if (at_word("new")) {
            advance();  // constructor type `new (...) => T`
        }
        if (at(TokenKind::Lt)) {        // generic function type `<T>(x) => R`
            skip_type_params();
        }
        if (at(TokenKind::Identifier)) {
            advance();
            while (eat(TokenKind::Dot)) {
                if (!at(TokenKind::Identifier)) fail("expected name in type");
                advance();
            }
            if (at(TokenKind::Lt)) skip_type_params();
        } else if (at(TokenKind::String) || at(TokenKind::Number) ||
                   at(TokenKind::NoSubTemplate)) {
            advance();
        } else if (at(TokenKind::Minus) && peek().kind == TokenKind::Number) {
            advance();
            advance();
        } else if (at(TokenKind::TemplateHead)) {
            // template literal type: parts hold types
            advance();
            for (;;) {
                skip_type();
                if (!at(TokenKind::RBrace)) fail("unterminated template type");
                Token part = lex_.relex_template_continuation(cur_.start);
                prev_end_ = part.end;
                cur_ = lex_.next(part.end);
                if (part.kind == TokenKind::TemplateTail) break;
                if (part.kind != TokenKind::TemplateMiddle) fail("bad template type");
            }
        } else if (at(TokenKind::LBrace)) {
            skip_balanced(TokenKind::LBrace, TokenKind::RBrace);
        } else if (at(TokenKind::LBracket)) {
            skip_balanced(TokenKind::LBracket, TokenKind::RBracket);
        } else if (at(TokenKind::LParen)) {
            skip_balanced(TokenKind::LParen, TokenKind::RParen);
            if (eat(TokenKind::Arrow)) skip_type();
        } else {
            fail("expected type");
        }
        // postfix
        for (;;) {
            if (at(TokenKind::LBracket) && !cur_.newline_before) {
                skip_balanced(TokenKind::LBracket, TokenKind::RBracket);
            } else if (at(TokenKind::Dot)) {
                advance();
                if (!at(TokenKind::Identifier)) fail("expected name in type");
                advance();
                if (at(TokenKind::Lt)) skip_type_params();
            } else if (at(TokenKind::Arrow) && !stop_at_arrow) {
                advance();
                skip_type();
            } else {
                break;
            }
        }
    }

    // ---- expressions --------------------------------------------------------

    std::uint32_t parse_expression(bool allow_in) {
        NestGuard guard(*this);
        std::uint32_t first = parse_assign(allow_in);
        if (!at(TokenKind::Comma)) return first;
        std::uint32_t n = start_node(NodeKind::SequenceExpr, tree_[first].span.start_byte);
        add_child(n, first);
        while (eat(TokenKind::Comma)) add_child(n, parse_assign(allow_in));
        finish(n);
        return n;
    }

    bool is_assign_op(TokenKind k) const {
        switch (k) {
            case TokenKind::Assign:
            case TokenKind::PlusAssign:
            case TokenKind::MinusAssign:
            case TokenKind::StarAssign:
            case TokenKind::SlashAssign:
            case TokenKind::PercentAssign:
            case TokenKind::StarStarAssign:
            case TokenKind::LtLtAssign:
            case TokenKind::GtGtAssign:
            case TokenKind::GtGtGtAssign:
            case TokenKind::AmpAssign:
            case TokenKind::PipeAssign:
            case TokenKind::CaretAssign:
            case TokenKind::AmpAmpAssign:
            case TokenKind::PipePipeAssign:
            case TokenKind::QuestionQuestionAssign:
                return true;
            default:
                return false;
        }
    }

    std::uint32_t parse_assign(bool allow_in) {
        NestGuard guard(*this);

        // yield
        if (at_word("yield") && fnctx_.back().is_generator) {
            std::uint32_t n = start_node(NodeKind::YieldExpr);
            advance();
            if (at(TokenKind::Star) && !cur_.newline_before) {
                tree_[n].flags |= Delegate;
                advance();
            }
            if (!cur_.newline_before && can_start_expression()) {
                add_child(n, parse_assign(allow_in));
            }
            finish(n);
            return n;
        }

        // arrow functions
        if (std::uint32_t arrow = try_parse_arrow(allow_in); arrow != kNoNode) return arrow;

        std::uint32_t lhs = parse_conditional(allow_in);
        if (is_assign_op(cur_.kind)) {
            std::uint32_t n = start_node(NodeKind::AssignExpr, tree_[lhs].span.start_byte);
            tree_[n].op = static_cast<std::uint16_t>(cur_.kind);
            advance();
            add_child(n, lhs);
            add_child(n, parse_assign(allow_in));
            finish(n);
            return n;
        }
        return lhs;
    }

    bool can_start_expression() const {
        switch (cur_.kind) {
            case TokenKind::Semicolon:
            case TokenKind::RParen:
            case TokenKind::RBracket:
            case TokenKind::RBrace:
            case TokenKind::Comma:
            case TokenKind::Colon:
            case TokenKind::EndOfFile:
                return false;
            default:
                return true;
        }
    }

    // Returns kNoNode when the tokens at hand are not an arrow function.
    std::uint32_t try_parse_arrow(bool allow_in) {
        bool is_async = false;
        State pre = save();
        std::size_t start = cur_.start;

        if (at_word("async")) {
            Token p = peek();
            if (!p.newline_before &&
                (p.kind == TokenKind::LParen || p.kind == TokenKind::Identifier ||
                 (is_ts() && p.kind == TokenKind::Lt))) {
                if (p.kind == TokenKind::Identifier && tok_text(p) == "function") return kNoNode;
                is_async = true;
                advance();
            } else {
                return kNoNode;
            }
        }

        if (at(TokenKind::Identifier)) {
            Token param = cur_;
            Token p = peek();
            if (p.kind == TokenKind::Arrow && !p.newline_before) {
                std::uint32_t n = start_node(NodeKind::ArrowFunction, start);
                if (is_async) tree_[n].flags |= Async;
                std::uint32_t pm = start_node(NodeKind::Param, param.start);
                add_child(pm, leaf(NodeKind::Identifier, param));
                tree_[pm].span.end_byte = param.end;
                add_child(n, pm);
                advance();  // param
                advance();  // =>
                parse_arrow_body(n, allow_in);
                finish(n);
                return n;
            }
            restore(pre);
            return kNoNode;
        }

        if (is_ts() && at(TokenKind::Lt)) {
            try {
                skip_type_params();
                if (!at(TokenKind::LParen)) throw ParseError{"not an arrow", cur_.start};
            } catch (const ParseError&) {
                restore(pre);
                return kNoNode;
            }
            std::uint32_t n = try_finish_paren_arrow(start, is_async, allow_in);
            if (n == kNoNode) restore(pre);
            return n;
        }

        if (!at(TokenKind::LParen)) {
            restore(pre);
            return kNoNode;
        }
        std::uint32_t n = try_finish_paren_arrow(start, is_async, allow_in);
        if (n == kNoNode) restore(pre);
        return n;
    }

    // cur_ is at `(`. Speculatively parses a parameter list; commits once the
    // `=>` is found.
    std::uint32_t try_finish_paren_arrow(std::size_t start, bool is_async, bool allow_in) {
        State s = save();
        std::uint32_t n = start_node(NodeKind::ArrowFunction, start);
        if (is_async) tree_[n].flags |= Async;
        try {
            parse_params_into(n);
            if (is_ts() && at(TokenKind::Colon)) {
                advance();
                skip_type(/*stop_at_arrow=*/true);
            }
            if (!at(TokenKind::Arrow) || cur_.newline_before)
                throw ParseError{"not an arrow", cur_.start};
        } catch (const ParseError&) {
            restore(s);
            return kNoNode;
        }
        advance();  // =>
        parse_arrow_body(n, allow_in);
        finish(n);
        return n;
    }

    void parse_arrow_body(std::uint32_t n, bool allow_in) {
        tree_[n].flags |= HasBody;
        fnctx_.push_back({tree_[n].has(Async), false});
        if (at(TokenKind::LBrace)) {
            add_child(n, parse_block());
        } else {
            tree_[n].flags |= ExprBody;
            add_child(n, parse_assign(allow_in));
        }
        fnctx_.pop_back();
    }

    std::uint32_t parse_conditional(bool allow_in) {
        std::uint32_t cond = parse_binary(0, allow_in);
        if (!at(TokenKind::Question)) return cond;
        std::uint32_t n = start_node(NodeKind::ConditionalExpr, tree_[cond].span.start_byte);
        advance();
        add_child(n, cond);
        add_child(n, parse_assign(true));
        expect(TokenKind::Colon, ":");
        add_child(n, parse_assign(allow_in));
        finish(n);
        return n;
    }

    int binary_prec(bool allow_in) const {
        switch (cur_.kind) {
            case TokenKind::QuestionQuestion: return 1;
            case TokenKind::PipePipe: return 2;
            case TokenKind::AmpAmp: return 3;
            case TokenKind::Pipe: return 4;
            case TokenKind::Caret: return 5;
            case TokenKind::Amp: return 6;
            case TokenKind::EqEq:
            case TokenKind::BangEq:
            case TokenKind::EqEqEq:
            case TokenKind::BangEqEq: return 7;
            case TokenKind::Lt:
            case TokenKind::Gt:
            case TokenKind::LtEq:
            case TokenKind::GtEq: return 8;
            case TokenKind::LtLt:
            case TokenKind::GtGt:
            case TokenKind::GtGtGt: return 9;
            case TokenKind::Plus:
            case TokenKind::Minus: return 10;
            case TokenKind::Star:
            case TokenKind::Slash:
            case TokenKind::Percent: return 11;
            case TokenKind::StarStar: return 12;
            case TokenKind::Identifier: {
                std::string_view w = tok_text(cur_);
                if (w == "instanceof") return 8;
                if (w == "in" && allow_in) return 8;
                if (is_ts() && (w == "as" || w == "satisfies") && !cur_.newline_before) return 8;
                return 0;
            }
            default: return 0;
        }
    }

    std::uint32_t parse_binary(int min_prec, bool allow_in) {
        NestGuard guard(*this);
        std::uint32_t lhs = parse_unary(allow_in);
        for (;;) {
            int prec = binary_prec(allow_in);
            if (prec == 0 || prec < min_prec) break;

            if (cur_.kind == TokenKind::Identifier) {
                std::string_view w = tok_text(cur_);
                if (is_ts() && (w == "as" || w == "satisfies")) {
                    std::uint32_t n = start_node(NodeKind::TsAsExpr, tree_[lhs].span.start_byte);
                    tree_[n].op = w == "as" ? op_code::As : op_code::Satisfies;
                    advance();
                    if (at_word("const")) advance();  // `as const`
                    else skip_type();
                    add_child(n, lhs);
                    finish(n);
                    lhs = n;
                    continue;
                }
            }

            TokenKind op = cur_.kind;
            bool word = op == TokenKind::Identifier;
            std::uint16_t opcode = word ? (tok_text(cur_) == "in" ? op_code::In : op_code::Instanceof)
                                        : static_cast<std::uint16_t>(op);
            bool right_assoc = op == TokenKind::StarStar;
            bool logical = op == TokenKind::AmpAmp || op == TokenKind::PipePipe ||
                           op == TokenKind::QuestionQuestion;
            advance();
            std::uint32_t rhs = parse_binary(right_assoc ? prec : prec + 1, allow_in);
            std::uint32_t n = start_node(logical ? NodeKind::LogicalExpr : NodeKind::BinaryExpr,
                                         tree_[lhs].span.start_byte);
            tree_[n].op = opcode;
            add_child(n, lhs);
            add_child(n, rhs);
            finish(n);
            lhs = n;
        }
        return lhs;
    }

    std::uint32_t parse_unary(bool allow_in) {
        NestGuard guard(*this);
        if (at(TokenKind::Plus) || at(TokenKind::Minus) || at(TokenKind::Bang) ||
            at(TokenKind::Tilde)) {
            std::uint32_t n = start_node(NodeKind::UnaryExpr);
            tree_[n].op = static_cast<std::uint16_t>(cur_.kind);
            advance();
            add_child(n, parse_unary(allow_in));
            finish(n);
            return n;
        }
        if (at(TokenKind::PlusPlus) || at(TokenKind::MinusMinus)) {
            std::uint32_t n = start_node(NodeKind::UpdateExpr);
            tree_[n].flags |= Prefix;
            tree_[n].op = static_cast<std::uint16_t>(cur_.kind);
            advance();
            add_child(n, parse_unary(allow_in));
            finish(n);
            return n;
        }
        if (at(TokenKind::Identifier)) {
            std::string_view w = tok_text(cur_);
            if (w == "typeof" || w == "void" || w == "delete") {
                std::uint32_t n = start_node(NodeKind::UnaryExpr);
                tree_[n].op = w == "typeof" ? op_code::Typeof
                            : w == "void"   ? op_code::Void
                                            : op_code::Delete;
                advance();
                add_child(n, parse_unary(allow_in));
                finish(n);
                return n;
            }
            if (w == "await" && fnctx_.back().is_async) {
                Token p = peek();
                bool arg_follows = p.kind != TokenKind::EndOfFile && !is_assign_op(p.kind) &&
                                   p.kind != TokenKind::Semicolon && p.kind != TokenKind::RParen &&
                                   p.kind != TokenKind::RBracket && p.kind != TokenKind::RBrace &&
                                   p.kind != TokenKind::Comma && p.kind != TokenKind::Colon &&
                                   p.kind != TokenKind::Dot && p.kind != TokenKind::Arrow &&
                                   p.kind != TokenKind::Question && binary_prec_of(p) == 0;
                if (arg_follows) {
                    std::uint32_t n = start_node(NodeKind::AwaitExpr);
                    advance();
                    add_child(n, parse_unary(allow_in));
                    finish(n);
                    return n;
                }
            }
        }
        // TS `<T>expr` type assertion (only without JSX)
        if (is_ts() && !opts_.jsx && at(TokenKind::Lt)) {
            std::uint32_t n = start_node(NodeKind::TsTypeAssertion);
            skip_type_params();
            add_child(n, parse_unary(allow_in));
            finish(n);
            return n;
        }
        return parse_postfix(allow_in);
    }

    // Precedence of a *peeked* token; keywords need text from this parser.
    int binary_prec_of(const Token& t) const {
        if (t.kind != TokenKind::Identifier) return 0;
        std::string_view w = t.text(text_);
        if (w == "instanceof" || w == "in") return 8;
        return 0;
    }

    std::uint32_t parse_postfix(bool allow_in) {
        std::uint32_t expr = parse_call_chain(parse_primary(), true);
        if ((at(TokenKind::PlusPlus) || at(TokenKind::MinusMinus)) && !cur_.newline_before) {
            std::uint32_t n = start_node(NodeKind::UpdateExpr, tree_[expr].span.start_byte);
            tree_[n].op = static_cast<std::uint16_t>(cur_.kind);
            advance();
            add_child(n, expr);
            finish(n);
            return n;
        }
        (void)allow_in;
        return expr;
    }

    std::uint32_t parse_arguments(std::uint32_t call) {
        expect(TokenKind::LParen, "(");
        while (!at(TokenKind::RParen)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated arguments");
            if (at(TokenKind::DotDotDot)) {
                std::uint32_t s = start_node(NodeKind::SpreadElement);
                advance();
                add_child(s, parse_assign(true));
                finish(s);
                add_child(call, s);
            } else {
                add_child(call, parse_assign(true));
            }
            if (!at(TokenKind::RParen)) expect(TokenKind::Comma, ",");
        }
        advance();
        return call;
    }

    std::uint32_t parse_call_chain(std::uint32_t base, bool allow_call) {
        NestGuard guard(*this);
        for (;;) {
            if (at(TokenKind::Dot)) {
                std::uint32_t n = start_node(NodeKind::MemberExpr, tree_[base].span.start_byte);
                advance();
                add_child(n, base);
                if (at(TokenKind::PrivateName)) {
                    add_child(n, leaf(NodeKind::PrivateRef, cur_));
                } else if (at(TokenKind::Identifier)) {
                    add_child(n, leaf(NodeKind::Identifier, cur_));
                } else {
                    fail("expected property name");
                }
                advance();
                finish(n);
                base = n;
            } else if (at(TokenKind::QuestionDot)) {
                std::size_t start = tree_[base].span.start_byte;
                advance();
                if (at(TokenKind::LParen)) {
                    if (!allow_call) fail("call not allowed here");
                    std::uint32_t n = start_node(NodeKind::CallExpr, start);
                    tree_[n].flags |= OptionalChain;
                    add_child(n, base);
                    parse_arguments(n);
                    finish(n);
                    base = n;
                } else if (at(TokenKind::LBracket)) {
                    std::uint32_t n = start_node(NodeKind::MemberExpr, start);
                    tree_[n].flags |= Computed | OptionalChain;
                    advance();
                    add_child(n, base);
                    add_child(n, parse_expression(true));
                    expect(TokenKind::RBracket, "]");
                    finish(n);
                    base = n;
                } else if (is_ts() && at(TokenKind::Lt)) {
                    // `a?.<T>(...)`
                    skip_type_params();
                    if (!at(TokenKind::LParen)) fail("expected call after type arguments");
                    std::uint32_t n = start_node(NodeKind::CallExpr, start);
                    tree_[n].flags |= OptionalChain;
                    add_child(n, base);
                    parse_arguments(n);
                    finish(n);
                    base = n;
                } else {
                    std::uint32_t n = start_node(NodeKind::MemberExpr, start);
                    tree_[n].flags |= OptionalChain;
                    add_child(n, base);
                    if (at(TokenKind::PrivateName)) add_child(n, leaf(NodeKind::PrivateRef, cur_));
                    else if (at(TokenKind::Identifier)) add_child(n, leaf(NodeKind::Identifier, cur_));
                    else fail("expected property name");
                    advance();
                    finish(n);
                    base = n;
                }
            } else if (at(TokenKind::LBracket)) {
                std::uint32_t n = start_node(NodeKind::MemberExpr, tree_[base].span.start_byte);
                tree_[n].flags |= Computed;
                advance();
                add_child(n, base);
                add_child(n, parse_expression(true));
                expect(TokenKind::RBracket, "]");
                finish(n);
                base = n;
            } else if (at(TokenKind::LParen) && allow_call) {
                std::uint32_t n = start_node(NodeKind::CallExpr, tree_[base].span.start_byte);
                add_child(n, base);
                parse_arguments(n);
                finish(n);
                base = n;
            } else if (at(TokenKind::NoSubTemplate) || at(TokenKind::TemplateHead)) {
                std::uint32_t n = start_node(NodeKind::TaggedTemplate, tree_[base].span.start_byte);
                add_child(n, base);
                add_child(n, parse_template());
                finish(n);
                base = n;
            } else if (is_ts() && at(TokenKind::Bang) && !cur_.newline_before) {
                std::uint32_t n = start_node(NodeKind::TsNonNull, tree_[base].span.start_byte);
                advance();
                add_child(n, base);
                finish(n);
                base = n;
            } else if (is_ts() && at(TokenKind::Lt) && allow_call) {
                // possible `f<T>(...)` / `f<T>`tagged``
                State s = save();
                bool ok = true;
                try {
                    skip_type_params();
                } catch (const ParseError&) {
                    ok = false;
                }
                if (ok && (at(TokenKind::LParen) || at(TokenKind::NoSubTemplate) ||
                           at(TokenKind::TemplateHead))) {
                    if (at(TokenKind::LParen)) {
                        std::uint32_t n = start_node(NodeKind::CallExpr, tree_[base].span.start_byte);
                        add_child(n, base);
                        parse_arguments(n);
                        finish(n);
                        base = n;
                    } else {
                        std::uint32_t n = start_node(NodeKind::TaggedTemplate, tree_[base].span.start_byte);
                        add_child(n, base);
                        add_child(n, parse_template());
                        finish(n);
                        base = n;
                    }
                } else {
                    restore(s);
                    break;
                }
            } else {
                break;
            }
        }
        return base;
    }

    std::uint32_t parse_template() {
        std::uint32_t n = start_node(NodeKind::TemplateLit);
        if (at(TokenKind::NoSubTemplate)) {
            advance();
            finish(n);
            return n;
        }
        expect(TokenKind::TemplateHead, "template");
        for (;;) {
            add_child(n, parse_expression(true));
            if (!at(TokenKind::RBrace)) fail("unterminated template");
            Token part = lex_.relex_template_continuation(cur_.start);
            if (part.kind == TokenKind::Error) fail("unterminated template");
            prev_end_ = part.end;
            cur_ = lex_.next(part.end);
            if (part.kind == TokenKind::TemplateTail) break;
        }
        finish(n);
        return n;
    }

    std::uint32_t parse_new() {
        std::uint32_t n = start_node(NodeKind::NewExpr);
        advance();  // new
        if (at(TokenKind::Dot)) {  // new.target
            tree_[n].kind = NodeKind::MetaProperty;
            advance();
            expect(TokenKind::Identifier, "target");
            finish(n);
            return n;
        }
        std::uint32_t callee = at_word("new") ? parse_new() : parse_primary();
        callee = parse_call_chain(callee, /*allow_call=*/false);
        add_child(n, callee);
        if (is_ts() && at(TokenKind::Lt)) {
            State s = save();
            bool ok = true;
            try {
                skip_type_params();
            } catch (const ParseError&) {
                ok = false;
            }
            if (!ok || !at(TokenKind::LParen)) restore(s);
        }
        if (at(TokenKind::LParen)) parse_arguments(n);
        finish(n);
        return n;
    }

    std::uint32_t parse_object_literal() {
        std::uint32_t n = start_node(NodeKind::ObjectLit);
        advance();  // {
        while (!at(TokenKind::RBrace)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated object literal");
            if (at(TokenKind::DotDotDot)) {
                std::uint32_t s = start_node(NodeKind::SpreadAssignment);
                advance();
                add_child(s, parse_assign(true));
                finish(s);
                add_child(n, s);
            } else {
                add_child(n, parse_object_member());
            }
            if (!at(TokenKind::RBrace)) expect(TokenKind::Comma, ",");
        }
        advance();
        finish(n);
        return n;
    }

    std::uint32_t parse_object_member() {
        std::size_t start = cur_.start;
        bool is_async = false, is_generator = false, is_getter = false, is_setter = false;

        if (at_word("async") && word_is_object_modifier()) {
            is_async = true;
            advance();
        }
        if (at(TokenKind::Star)) {
            is_generator = true;
            advance();
        }
        if ((at_word("get") || at_word("set")) && word_is_object_modifier()) {
            is_getter = at_word("get");
            is_setter = !is_getter;
            advance();
        }

        // key
        bool computed = false;
        std::uint32_t key = kNoNode;
        Token key_tok = cur_;
        if (at(TokenKind::LBracket)) {
            computed = true;
            advance();
            key = parse_assign(true);
            expect(TokenKind::RBracket, "]");
        } else if (at(TokenKind::String)) {
            key = leaf(NodeKind::StringLit, cur_);
            advance();
        } else if (at(TokenKind::Number)) {
            key = leaf(NodeKind::NumberLit, cur_);
            advance();
        } else if (at(TokenKind::Identifier)) {
            key = leaf(NodeKind::Identifier, cur_);
            advance();
        } else {
            fail("expected property key");
        }

        if (at(TokenKind::LParen) || (is_ts() && at(TokenKind::Lt))) {
            std::uint32_t m = start_node(NodeKind::MethodDef, start);
            if (is_async) tree_[m].flags |= Async;
            if (is_generator) tree_[m].flags |= Generator;
            if (is_getter) tree_[m].flags |= Getter;
            if (is_setter) tree_[m].flags |= Setter;
            if (computed) tree_[m].flags |= Computed;
            add_child(m, key);
            fnctx_.push_back({is_async, is_generator});
            if (is_ts() && at(TokenKind::Lt)) skip_type_params();
            parse_params_into(m);
            if (is_ts() && eat(TokenKind::Colon)) skip_type();
            tree_[m].flags |= HasBody;
            add_child(m, parse_block());
            fnctx_.pop_back();
            finish(m);
            return m;
        }

        std::uint32_t p = start_node(NodeKind::ObjectProp, start);
        if (computed) tree_[p].flags |= Computed;
        add_child(p, key);
        if (eat(TokenKind::Colon)) {
            add_child(p, parse_assign(true));
        } else if (at(TokenKind::Assign) && !computed && tree_[key].kind == NodeKind::Identifier) {
            // cover grammar for destructuring targets: `{ a = 1 }`
            tree_[p].flags |= Shorthand | HasInit;
            advance();
            add_child(p, parse_assign(true));
        } else {
            if (computed || tree_[key].kind != NodeKind::Identifier)
                fail("expected : after property key");
            tree_[p].flags |= Shorthand;
            (void)key_tok;
        }
        finish(p);
        return p;
    }

    bool word_is_object_modifier() {
        Token p = peek();
        switch (p.kind) {
            case TokenKind::Comma:
            case TokenKind::RBrace:
            case TokenKind::Colon:
            case TokenKind::LParen:
            case TokenKind::Assign:
                return false;  // `async: 1`, `get() {}` etc. use the word as key
            default:
                return true;
        }
    }

    std::uint32_t parse_array_literal() {
        std::uint32_t n = start_node(NodeKind::ArrayLit);
        advance();  // [
        while (!at(TokenKind::RBracket)) {
            if (at(TokenKind::EndOfFile)) fail("unterminated array literal");
            if (at(TokenKind::Comma)) {
                add_child(n, leaf(NodeKind::Hole, cur_));
                advance();
                continue;
            }
            if (at(TokenKind::DotDotDot)) {
                std::uint32_t s = start_node(NodeKind::SpreadElement);
                advance();
                add_child(s, parse_assign(true));
                finish(s);
                add_child(n, s);
            } else {
                add_child(n, parse_assign(true));
            }
            if (!at(TokenKind::RBracket)) expect(TokenKind::Comma, ",");
        }
        advance();
        finish(n);
        return n;
    }

    std::uint32_t parse_primary() {
        NestGuard guard(*this);
        switch (cur_.kind) {
            case TokenKind::Number: {
                std::uint32_t n = leaf(NodeKind::NumberLit, cur_);
                advance();
                return n;
            }
            case TokenKind::String: {
                std::uint32_t n = leaf(NodeKind::StringLit, cur_);
                advance();
                return n;
            }
            case TokenKind::NoSubTemplate:
            case TokenKind::TemplateHead:
                return parse_template();
            case TokenKind::Slash:
            case TokenKind::SlashAssign: {
                Token re = lex_.relex_as_regex(cur_.start);
                if (re.kind == TokenKind::Error) fail("unterminated regex");
                std::uint32_t n = leaf(NodeKind::RegexLit, re);
                prev_end_ = re.end;
                cur_ = lex_.next(re.end);
                return n;
            }
            case TokenKind::LParen: {
                std::uint32_t n = start_node(NodeKind::ParenExpr);
                advance();
                add_child(n, parse_expression(true));
                expect(TokenKind::RParen, ")");
                finish(n);
                return n;
            }
            case TokenKind::LBracket:
                return parse_array_literal();
            case TokenKind::LBrace:
                return parse_object_literal();
            case TokenKind::Lt:
                if (opts_.jsx) return parse_jsx_element();
                fail("unexpected <");
            case TokenKind::PrivateName: {
                std::uint32_t n = leaf(NodeKind::PrivateRef, cur_);
                advance();
                return n;
            }
            case TokenKind::Identifier:
                break;
            default:
                fail("unexpected token");
        }

        std::string_view w = tok_text(cur_);
        if (w == "function") return parse_function(NodeKind::FunctionExpr, false, cur_.start);
        if (w == "async" && peek().kind == TokenKind::Identifier &&
            tok_text(peek()) == "function" && !peek().newline_before) {
            std::size_t start = cur_.start;
            advance();
            return parse_function(NodeKind::FunctionExpr, true, start);
        }
        if (w == "class") return parse_class(NodeKind::ClassExpr, cur_.start, {});
        if (w == "new") return parse_new();
        if (w == "true" || w == "false") {
            std::uint32_t n = leaf(NodeKind::BoolLit, cur_);
            advance();
            return n;
        }
        if (w == "null") {
            std::uint32_t n = leaf(NodeKind::NullLit, cur_);
            advance();
            return n;
        }
        if (w == "import") {
            std::size_t start = cur_.start;
            advance();
            if (at(TokenKind::Dot)) {  // import.meta
                std::uint32_t n = start_node(NodeKind::MetaProperty, start);
                advance();
                expect(TokenKind::Identifier, "meta");
                finish(n);
                return n;
            }
            std::uint32_t n = start_node(NodeKind::ImportExpr, start);
            parse_arguments(n);
            finish(n);
            return n;
        }
        std::uint32_t n = leaf(NodeKind::Identifier, cur_);
        advance();
        return n;
    }

    // ---- JSX ----------------------------------------------------------------

    // cur_ is at `<`. Children are scanned raw; expression containers and
    // attribute expressions recurse into the normal grammar.
    std::uint32_t parse_jsx_element() {
        NestGuard guard(*this);
        std::size_t start = cur_.start;
        advance();  // <

        if (at(TokenKind::Gt)) {  // fragment
            std::uint32_t n = start_node(NodeKind::JsxFragment, start);
            parse_jsx_children(n);
            // cur_ is at `/` of `</>` after the `<`
            if (!eat(TokenKind::Slash)) fail("expected </ in fragment close");
            expect(TokenKind::Gt, ">");
            finish(n);
            return n;
        }

        std::uint32_t n = start_node(NodeKind::JsxElement, start);
        parse_jsx_name();
        if (is_ts() && at(TokenKind::Lt)) skip_type_params();

        // attributes
        for (;;) {
            if (at(TokenKind::EndOfFile)) fail("unterminated JSX element");
            if (at(TokenKind::Slash) || at(TokenKind::Gt)) break;
            if (at(TokenKind::LBrace)) {
                // {...spread}
                std::uint32_t a = start_node(NodeKind::JsxSpreadAttribute);
                advance();
                expect(TokenKind::DotDotDot, "...");
                add_child(a, parse_assign(true));
                expect(TokenKind::RBrace, "}");
                finish(a);
                add_child(n, a);
                continue;
            }
            std::uint32_t a = start_node(NodeKind::JsxAttribute);
            parse_jsx_name();
            if (eat(TokenKind::Assign)) {
                if (at(TokenKind::String)) {
                    Token s = lex_.lex_jsx_string(cur_.start);
                    if (s.kind == TokenKind::Error) fail("unterminated JSX string");
                    add_child(a, leaf(NodeKind::StringLit, s));
                    prev_end_ = s.end;
                    cur_ = lex_.next(s.end);
                } else if (at(TokenKind::LBrace)) {
                    advance();
                    add_child(a, parse_assign(true));
                    expect(TokenKind::RBrace, "}");
                } else if (at(TokenKind::Lt)) {
                    add_child(a, parse_jsx_element());
                } else {
                    fail("expected JSX attribute value");
                }
            }
            finish(a);
            add_child(n, a);
        }

        if (at(TokenKind::Slash)) {  // self-closing
            advance();
            expect(TokenKind::Gt, ">");
            finish(n);
            return n;
        }
        expect(TokenKind::Gt, ">");
        parse_jsx_children(n);
        // at close: cur_ is `/` (the `<` was consumed by the children loop)
        if (!eat(TokenKind::Slash)) fail("expected closing tag");
        parse_jsx_name();
        expect(TokenKind::Gt, ">");
        finish(n);
        return n;
    }

    // JSX names may contain `-`, `.` and `:`; the scanner splits them, so
    // consume the joined run.
    void parse_jsx_name() {
        if (!at(TokenKind::Identifier)) fail("expected JSX name");
        std::size_t end = cur_.end;
        for (;;) {
            if (end < text_.size() && (text_[end] == '-' || text_[end] == '.' || text_[end] == ':') &&
                end + 1 < text_.size() && is_ident_part(static_cast<unsigned char>(text_[end + 1]))) {
                Token t = lex_.lex_jsx_name(end + 1);
                end = t.end;
            } else {
                break;
            }
        }
        prev_end_ = end;
        cur_ = lex_.next(end);
    }

    // Scans raw children until the opening `<` of the closing tag is consumed.
    void parse_jsx_children(std::uint32_t n) {
        std::size_t pos = prev_end_;  // right after `>`
        for (;;) {
            Token text = lex_.lex_jsx_text(pos);
            pos = text.end;
            if (pos >= text_.size()) fail("unterminated JSX children");
            char c = text_[pos];
            if (c == '<') {
                if (pos + 1 < text_.size() && text_[pos + 1] == '/') {
                    // closing tag: position cur_ after `<`
                    prev_end_ = pos + 1;
                    cur_ = lex_.next(pos + 1);
                    return;
                }
                set_cur_at(pos);
                add_child(n, parse_jsx_element());
                pos = prev_end_;
            } else if (c == '{') {
                set_cur_at(pos);
                std::uint32_t ec = start_node(NodeKind::JsxExprContainer);
                advance();  // {
                if (!at(TokenKind::RBrace)) {
                    if (at(TokenKind::DotDotDot)) advance();  // child spread `{...xs}`
                    add_child(ec, parse_expression(true));
                }
                expect(TokenKind::RBrace, "}");
                finish(ec);
                add_child(n, ec);
                pos = prev_end_;
            } else {
                fail("unexpected } in JSX text");
            }
        }
    }
};

}  // namespace

ParseOutput parse_program(std::string_view text, const ParseOptions& opts) {
    ParseOutput out;
    Parser parser(text, opts);
    try {
        Tree t = parser.parse();
        out.tree = std::move(t);
    } catch (const ParseError& e) {
        LineIndex idx(text);
        Diagnostic d;
        d.message = e.msg;
        d.byte = e.pos;
        d.line = text.empty() ? 1 : idx.line_of(std::min(e.pos, text.size() ? text.size() - 1 : 0));
        out.diagnostics.push_back(std::move(d));
    }
    out.comments = parser.lexer().comments();
    LineIndex idx(text);
    out.shebang = parser.lexer().shebang(idx);
    out.invalid_utf8 = parser.lexer().saw_invalid_utf8();
    return out;
}

}  // namespace fpmine
