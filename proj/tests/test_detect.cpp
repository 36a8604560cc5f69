#include <doctest.h>

#include "fixtures.hpp"
#include "helpers.hpp"

using namespace fpmine;
using namespace fpmine::test;

namespace {

const std::string kListing1 =
    "const person = { age: 50 };\n"
    "const anotherPerson = { ...person, age: 51 };\n"
    "console.log(person.age); // 50\n"
    "console.log(anotherPerson.age); // 51\n";

const std::string kListing2 =
    "function* range() {\n"
    "    let count = 0;\n"
    "    for (let i = 0; i < Infinity; i++) {\n"
    "        count++;\n"
    "        yield i;\n"
    "    }\n"
    "    return count;\n"
    "}\n"
    "const iterator = range();\n"
    "console.log(iterator.next().value); // 0\n"
    "console.log(iterator.next().value); // 1\n";

const std::string kListing3 = "const four = () => 2 + 2;\n";

const std::string kListing4 =
    "new Promise((resolve) => {\n"
    "\tresolve(1)\n"
    "}).then(console.log) // 1\n";

std::vector<Structure> structures_of(const std::vector<FpOccurrence>& occs) {
    std::vector<Structure> out;
    for (const auto& o : occs) out.push_back(o.structure);
    return out;
}

}  // namespace

TEST_CASE("detector fixture suite agrees with hand annotations") {
    for (const DetectorFixture& fx : detector_fixtures()) {
        DetectorPolicy policy;
        policy.include_const = fx.include_const;
        CAPTURE(fx.name);
        auto occs = detect_in(fx.source, fx.path, policy);
        CHECK_MESSAGE(count_structure(occs, fx.structure) == fx.expected, fx.name);
    }
}

TEST_CASE("every structure has at least one positive and one negative fixture") {
    for (Structure s : all_structures()) {
        bool pos = false, neg = false;
        for (const DetectorFixture& fx : detector_fixtures()) {
            if (fx.structure != s) continue;
            if (fx.expected > 0) pos = true;
            else neg = true;
        }
        CAPTURE(structure_name(s));
        CHECK(pos);
        CHECK(neg);
    }
}

TEST_CASE("paper listings detect exactly their structures") {
    auto l1 = detect_in(kListing1);
    CHECK(structures_of(l1) == std::vector<Structure>{Structure::SpreadAssignment});

    auto l2 = detect_in(kListing2);
    CHECK(structures_of(l2) == std::vector<Structure>{Structure::Generator});

    auto l3 = detect_in(kListing3);
    CHECK(structures_of(l3) == std::vector<Structure>{Structure::Thunk});

    auto l4 = detect_in(kListing4);
    CHECK(structures_of(l4) == std::vector<Structure>{Structure::Promise, Structure::Callback});
}

TEST_CASE("extent spans cover the whole construct") {
    SourceUnit u = parse_or_fail(kListing1);
    ScopeTable sc = build_scopes(u);
    auto occs = detect_all(u, sc, {});
    REQUIRE(occs.size() == 1);
    CHECK(u.text_of(occs[0].extent_span) == "{ ...person, age: 51 }");
    CHECK(u.text_of(occs[0].site_span) == "...person");

    SourceUnit f = parse_or_fail("function fact(n){ return n < 2 ? 1 : n * fact(n - 1); }");
    ScopeTable fs = build_scopes(f);
    auto focc = detect_all(f, fs, {});
    REQUIRE(focc.size() == 1);
    CHECK(f.text_of(focc[0].extent_span) ==
          "function fact(n){ return n < 2 ? 1 : n * fact(n - 1); }");
}

TEST_CASE("promise extent includes the executor body") {
    SourceUnit u = parse_or_fail(kListing4);
    ScopeTable sc = build_scopes(u);
    auto occs = detect_all(u, sc, {});
    REQUIRE(occs.size() == 2);
    CHECK(occs[0].structure == Structure::Promise);
    CHECK(occs[0].extent_span.start_line == 1);
    CHECK(occs[0].extent_span.end_line == 3);
}

TEST_CASE("nested occurrences multi-count") {
    auto occs = detect_in("const xs = [1]; xs.map(() => 1);");
    CHECK(count_structure(occs, Structure::HofMap) == 1);
    CHECK(count_structure(occs, Structure::Thunk) == 1);

    auto make = detect_in("function make(){ return () => 1; }");
    CHECK(count_structure(make, Structure::HofNonNative) == 1);
    CHECK(count_structure(make, Structure::Thunk) == 1);
}

TEST_CASE("unknown policy widens slice and hof receivers monotonically") {
    const std::string sources[] = {
        "function f(x){ x.slice(); }",
        "function f(xs){ xs.map((v) => v); }",
        "function f(xs, h){ xs.map(h); }",
        "const xs = [1]; xs.filter((v) => v);",
        "maybe().slice();",
    };
    DetectorPolicy exclude;
    DetectorPolicy include;
    include.unknown_policy = DetectorPolicy::UnknownPolicy::Include;
    for (const std::string& src : sources) {
        auto e = detect_in(src, "t.js", exclude);
        auto i = detect_in(src, "t.js", include);
        CAPTURE(src);
        CHECK(e.size() <= i.size());
        for (Structure s : all_structures())
            CHECK(count_structure(e, s) <= count_structure(i, s));
    }

    // unknown receiver + literal argument counts even under exclude
    auto lit = detect_in("function f(xs){ xs.map((v) => v); }", "t.js", exclude);
    CHECK(count_structure(lit, Structure::HofMap) == 1);
    // unknown receiver + named Yes argument needs include policy
    auto named = detect_in("const g = (v) => v; function f(xs){ xs.map(g); }", "t.js", exclude);
    CHECK(count_structure(named, Structure::HofMap) == 0);
    auto named_inc = detect_in("const g = (v) => v; function f(xs){ xs.map(g); }", "t.js", include);
    CHECK(count_structure(named_inc, Structure::HofMap) == 1);
}

TEST_CASE("async thunk policy") {
    DetectorPolicy no_async;
    no_async.include_async_thunks = false;
    auto with = detect_in("const t = async () => 1;");
    CHECK(count_structure(with, Structure::Thunk) == 1);
    auto without = detect_in("const t = async () => 1;", "t.js", no_async);
    CHECK(count_structure(without, Structure::Thunk) == 0);
}

TEST_CASE("detect_all determinism and ordering") {
    const std::string src = kListing1 + kListing2 + kListing3 + kListing4;
    auto a = detect_in(src);
    auto b = detect_in(src);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].structure == b[i].structure);
        CHECK(a[i].site_span.start_byte == b[i].site_span.start_byte);
    }
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(a[i - 1].site_span.start_byte <= a[i].site_span.start_byte);
}

TEST_CASE("detect_all on empty file") {
    CHECK(detect_in("").empty());
    CHECK(detect_in("// only a comment\n").empty());
}

TEST_CASE("site spans stay within extents and the file") {
    const std::string src = kListing1 + kListing2 + kListing3 + kListing4 +
                            "function outer(cb){ cb(); return () => [...cb];}\n";
    SourceUnit u = parse_or_fail(src);
    ScopeTable sc = build_scopes(u);
    for (const auto& o : detect_all(u, sc, {})) {
        CHECK(o.extent_span.contains(o.site_span));
        CHECK(o.extent_span.end_byte <= src.size());
        CHECK(o.file == u.path);
    }
}

TEST_CASE("structure to concept mapping matches the table") {
    CHECK(concept_of(Structure::Recursion) == Concept::Recursion);
    for (Structure s : {Structure::ObjectFreeze, Structure::ObjectAssignEmpty,
                        Structure::ArraySliceNoArgs, Structure::SpreadElement,
                        Structure::SpreadAssignment})
        CHECK(concept_of(s) == Concept::Immutability);
    for (Structure s : {Structure::Generator, Structure::Thunk})
        CHECK(concept_of(s) == Concept::LazyEvaluation);
    for (Structure s : {Structure::HofEvery, Structure::HofFilter, Structure::HofFind,
                        Structure::HofFindIndex, Structure::HofFlat, Structure::HofFlatMap,
                        Structure::HofForEach, Structure::HofMap, Structure::HofReduce,
                        Structure::HofReduceRight, Structure::HofSome, Structure::HofNonNative})
        CHECK(concept_of(s) == Concept::HigherOrderFunctions);
    for (Structure s : {Structure::Callback, Structure::Promise})
        CHECK(concept_of(s) == Concept::CallbacksPromises);
    CHECK(concept_of(Structure::ConstDecl) == Concept::ConstDeclaration);
    CHECK(all_structures().size() == kStructureCount);
}

TEST_CASE("optional chaining counts as property access") {
    auto occs = detect_in("const xs = [1]; xs?.map((v) => v + 1);");
    CHECK(count_structure(occs, Structure::HofMap) == 1);
    auto freeze = detect_in("Object?.freeze(cfg);");
    CHECK(count_structure(freeze, Structure::ObjectFreeze) == 1);
}

TEST_CASE("const granularity and for-headers") {
    DetectorPolicy with_const;
    with_const.include_const = true;
    auto multi = detect_in("const a = 1, b = 2;", "t.js", with_const);
    CHECK(count_structure(multi, Structure::ConstDecl) == 1);
    auto loop = detect_in("for (const x of xs) { use(x); }", "t.js", with_const);
    CHECK(count_structure(loop, Structure::ConstDecl) == 0);
}

TEST_CASE("informational callsite counter") {
    SourceUnit u = parse_or_fail("take(() => 1); take(named); const named = () => 2; take(5);");
    ScopeTable sc = build_scopes(u);
    DetectorExtras extras;
    detect_callbacks_promises(u, sc, &extras);
    // () => 1 literal and `named` (sole function init) count; 5 does not
    CHECK(extras.callsites_with_function_args == 2);
}

TEST_CASE("detectors in typescript and jsx files") {
    auto ts = detect_in("const xs: number[] = [1]; xs.map((v: number): number => v + 1);", "t.ts");
    CHECK(count_structure(ts, Structure::HofMap) == 1);

    auto tsx = detect_in("const View = () => <div>{new Promise((res) => res(1))}</div>;", "t.tsx");
    CHECK(count_structure(tsx, Structure::Thunk) == 1);
    CHECK(count_structure(tsx, Structure::Promise) == 1);
    CHECK(count_structure(tsx, Structure::Callback) == 1);
}
