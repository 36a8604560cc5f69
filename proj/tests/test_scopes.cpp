#include <doctest.h>

#include "helpers.hpp"

using namespace fpmine;
using namespace fpmine::test;

namespace {

// k-th identifier node with the given text, in preorder.
std::uint32_t find_ident(const SourceUnit& u, std::string_view name, std::size_t k = 0) {
    std::uint32_t found = kNoNode;
    std::size_t seen = 0;
    walk(u.tree, u.tree.root(), [&](std::uint32_t idx) {
        if (found != kNoNode) return false;
        if (u.tree[idx].kind == NodeKind::Identifier && u.node_text(idx) == name) {
            if (seen++ == k) found = idx;
        }
        return true;
    });
    REQUIRE(found != kNoNode);
    return found;
}

struct Scoped {
    SourceUnit unit;
    ScopeTable scopes;
    explicit Scoped(const std::string& text, const std::string& path = "t.js")
        : unit(parse_or_fail(text, path)), scopes(build_scopes(unit)) {}
};

}  // namespace

TEST_CASE("var hoists to the function scope") {
    Scoped s("function f(){ var x; }");
    std::uint32_t x = find_ident(s.unit, "x");
    auto b = s.scopes.resolve(x);
    REQUIRE(b.has_value());
    const Scope& owner = s.scopes.scope(s.scopes.binding(*b).scope);
    CHECK(owner.kind == Scope::Kind::Function);
}

TEST_CASE("local binding shadows global Object") {
    Scoped s("let Object = 1; Object;");
    CHECK(!s.scopes.resolves_to_global("Object", find_ident(s.unit, "Object", 1)));

    Scoped g("Object.freeze(x);");
    CHECK(g.scopes.resolves_to_global("Object", find_ident(g.unit, "Object", 0)));
}

TEST_CASE("redeclared let in nested block is a distinct binding") {
    Scoped s("let v = 1; { let v = 2; v; } v;");
    auto inner = s.scopes.resolve(find_ident(s.unit, "v", 2));
    auto outer = s.scopes.resolve(find_ident(s.unit, "v", 3));
    REQUIRE(inner.has_value());
    REQUIRE(outer.has_value());
    CHECK(*inner != *outer);
}

TEST_CASE("is_function_valued basics") {
    Scoped yes("const x = () => 1; use(x);");
    CHECK(yes.scopes.is_function_valued(find_ident(yes.unit, "x", 1)) == Typedness::Yes);

    Scoped no("const x = 5; use(x);");
    CHECK(no.scopes.is_function_valued(find_ident(no.unit, "x", 1)) == Typedness::No);

    Scoped param("function f(p){ p; }");
    CHECK(param.scopes.is_function_valued(find_ident(param.unit, "p", 1)) == Typedness::Unknown);

    Scoped decl("function g(){} use(g);");
    CHECK(decl.scopes.is_function_valued(find_ident(decl.unit, "g", 1)) == Typedness::Yes);

    Scoped fnexpr("const h = function(){}; h;");
    CHECK(fnexpr.scopes.is_function_valued(find_ident(fnexpr.unit, "h", 1)) == Typedness::Yes);

    Scoped lit("(() => 1);");
    std::uint32_t arrow = kNoNode;
    walk(lit.unit.tree, lit.unit.tree.root(), [&](std::uint32_t idx) {
        if (lit.unit.tree[idx].kind == NodeKind::ArrowFunction) arrow = idx;
        return true;
    });
    REQUIRE(arrow != kNoNode);
    CHECK(lit.scopes.is_function_valued(arrow) == Typedness::Yes);
}

TEST_CASE("reassignment forces Unknown") {
    Scoped s("let x = () => 1; x = 5; use(x);");
    CHECK(s.scopes.is_function_valued(find_ident(s.unit, "x", 2)) == Typedness::Unknown);

    Scoped upd("let n = [1]; n++; use(n);");
    CHECK(upd.scopes.is_array_valued(find_ident(upd.unit, "n", 2)) == Typedness::Unknown);

    Scoped destr("let f = () => 1; [f] = pair; use(f);");
    CHECK(destr.scopes.is_function_valued(find_ident(destr.unit, "f", 2)) == Typedness::Unknown);
}

TEST_CASE("multiple initializers force Unknown") {
    Scoped s("var x = () => 1; var x = 2; use(x);");
    CHECK(s.scopes.is_function_valued(find_ident(s.unit, "x", 2)) == Typedness::Unknown);
}

TEST_CASE("is_array_valued basics") {
    Scoped lit("([1,2]);");
    std::uint32_t arr = kNoNode;
    walk(lit.unit.tree, lit.unit.tree.root(), [&](std::uint32_t idx) {
        if (lit.unit.tree[idx].kind == NodeKind::ArrayLit) arr = idx;
        return true;
    });
    CHECK(lit.scopes.is_array_valued(arr) == Typedness::Yes);

    Scoped str("('s');");
    std::uint32_t sl = kNoNode;
    walk(str.unit.tree, str.unit.tree.root(), [&](std::uint32_t idx) {
        if (str.unit.tree[idx].kind == NodeKind::StringLit) sl = idx;
        return true;
    });
    CHECK(str.scopes.is_array_valued(sl) == Typedness::No);

    Scoped opaque("let a = f(); use(a);");
    CHECK(opaque.scopes.is_array_valued(find_ident(opaque.unit, "a", 1)) == Typedness::Unknown);

    Scoped newarr("const a = new Array(3); use(a);");
    CHECK(newarr.scopes.is_array_valued(find_ident(newarr.unit, "a", 1)) == Typedness::Yes);

    Scoped chain("[1].map(f).filter(g);");
    std::uint32_t outer_call = kNoNode;
    walk(chain.unit.tree, chain.unit.tree.root(), [&](std::uint32_t idx) {
        if (chain.unit.tree[idx].kind == NodeKind::CallExpr && outer_call == kNoNode)
            outer_call = idx;
        return true;
    });
    REQUIRE(outer_call != kNoNode);
    CHECK(chain.scopes.is_array_valued(outer_call) == Typedness::Yes);
}

TEST_CASE("resolves_to_global for imports") {
    Scoped s("import {Promise} from 'bluebird'; new Promise(f);", "t.js");
    CHECK(!s.scopes.resolves_to_global("Promise", find_ident(s.unit, "Promise", 1)));
}

TEST_CASE("named function expression name binds in its own scope") {
    Scoped s("const f = function self(){ self(); }; self;");
    // the call inside resolves
    auto inner = s.scopes.resolve(find_ident(s.unit, "self", 1));
    CHECK(inner.has_value());
    // the outer reference does not
    auto outer = s.scopes.resolve(find_ident(s.unit, "self", 2));
    CHECK(!outer.has_value());
}

TEST_CASE("catch parameter scoping") {
    Scoped s("try {} catch (e) { e; } ");
    auto b = s.scopes.resolve(find_ident(s.unit, "e", 1));
    REQUIRE(b.has_value());
    CHECK(s.scopes.binding(*b).kind == BindingKind::Parameter);
}

TEST_CASE("with statement poisons inferences inside") {
    Scoped s("const f = () => 1; with (o) { use(f); }");
    CHECK(s.scopes.is_function_valued(find_ident(s.unit, "f", 1)) == Typedness::Unknown);

    Scoped clean("const f = () => 1; use(f);");
    CHECK(clean.scopes.is_function_valued(find_ident(clean.unit, "f", 1)) == Typedness::Yes);
}

TEST_CASE("direct eval poisons the enclosing function scope") {
    Scoped s("function f(){ const g = () => 1; eval('x'); use(g); }");
    CHECK(s.scopes.is_function_valued(find_ident(s.unit, "g", 1)) == Typedness::Unknown);

    // shadowed eval is not direct eval
    Scoped shadowed("function f(){ const eval = noop; const g = () => 1; eval('x'); use(g); }");
    CHECK(shadowed.scopes.is_function_valued(find_ident(shadowed.unit, "g", 1)) == Typedness::Yes);
}

TEST_CASE("monotonicity: appending unrelated code keeps judgments") {
    std::string base = "const probe = () => 1; use(probe);";
    std::string more = base + "\nfunction unrelated(q){ return q; }\nlet other = [1,2];";
    Scoped s1(base), s2(more);
    CHECK(s1.scopes.is_function_valued(find_ident(s1.unit, "probe", 1)) == Typedness::Yes);
    CHECK(s2.scopes.is_function_valued(find_ident(s2.unit, "probe", 1)) == Typedness::Yes);

    std::string base_no = "const probe = 5; use(probe);";
    Scoped s3(base_no), s4(base_no + "\nlet fresh = 1;");
    CHECK(s3.scopes.is_function_valued(find_ident(s3.unit, "probe", 1)) == Typedness::No);
    CHECK(s4.scopes.is_function_valued(find_ident(s4.unit, "probe", 1)) == Typedness::No);
}

TEST_CASE("resolves_to_global is the negation of local declaration") {
    Scoped s("let a = 1; { let b = 2; probe(); }");
    std::uint32_t probe = find_ident(s.unit, "probe");
    CHECK(s.scopes.resolves_to_global("Object", probe));
    CHECK(!s.scopes.resolves_to_global("a", probe));
    CHECK(!s.scopes.resolves_to_global("b", probe));
    CHECK(s.scopes.resolves_to_global("zzz", probe));
}

TEST_CASE("parameters of destructured patterns register as parameters") {
    Scoped s("function f({cb, deep: {x}}, [y]){ cb; x; y; }");
    for (const char* name : {"cb", "x", "y"}) {
        std::uint32_t use = find_ident(s.unit, name, 1);
        auto b = s.scopes.resolve(use);
        REQUIRE(b.has_value());
        CHECK(s.scopes.binding(*b).kind == BindingKind::Parameter);
    }
}

TEST_CASE("class declaration binds its name, class expression does not leak") {
    Scoped s("class C {} use(C);");
    auto b = s.scopes.resolve(find_ident(s.unit, "C", 1));
    REQUIRE(b.has_value());
    CHECK(s.scopes.binding(*b).kind == BindingKind::Class);

    Scoped e("const k = class Inner {}; Inner;");
    CHECK(!e.scopes.resolve(find_ident(e.unit, "Inner", 1)).has_value());
}
