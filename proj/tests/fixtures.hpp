#pragma once

#include <string>
#include <vector>

#include "fpmine/detect.hpp"

namespace fpmine::test {

struct DetectorFixture {
    std::string name;
    std::string path;  // decides parse options
    std::string source;
    Structure structure;
    std::size_t expected;  // occurrences of `structure`
    bool include_const = false;
};

// One positive and at least one negative fixture per structure,
// hand-annotated.
inline const std::vector<DetectorFixture>& detector_fixtures() {
    static const std::vector<DetectorFixture> fixtures = {
        // recursion
        {"recursion.pos.factorial", "t.js",
         "function fact(n){ return n < 2 ? 1 : n * fact(n - 1); }", Structure::Recursion, 1},
        {"recursion.pos.nested-call-site", "t.js",
         "function outer(){ function helper(){ outer(); } }", Structure::Recursion, 1},
        {"recursion.pos.named-expression", "t.js",
         "const walk = function self(node){ self(node.next); };", Structure::Recursion, 1},
        {"recursion.neg.shadowed", "t.js", "function f(){ let f = () => 1; f(); }",
         Structure::Recursion, 0},
        {"recursion.neg.plain-call", "t.js", "function f(){ g(); }", Structure::Recursion, 0},
        {"recursion.neg.indirect", "t.js",
         "function a(){ b(); }\nfunction b(){ a(); }", Structure::Recursion, 0},

        // object-freeze
        {"object-freeze.pos", "t.js", "Object.freeze(config);", Structure::ObjectFreeze, 1},
        {"object-freeze.neg.shadowed", "t.js",
         "let Object = { freeze: (x) => x }; Object.freeze(config);", Structure::ObjectFreeze, 0},
        {"object-freeze.neg.other-receiver", "t.js", "icebox.freeze(food);",
         Structure::ObjectFreeze, 0},

        // object-assign-empty
        {"object-assign-empty.pos", "t.js", "const copy = Object.assign({}, source);",
         Structure::ObjectAssignEmpty, 1},
        {"object-assign-empty.neg.three-args", "t.js", "Object.assign({}, a, b);",
         Structure::ObjectAssignEmpty, 0},
        {"object-assign-empty.neg.nonempty-first", "t.js", "Object.assign(target, source);",
         Structure::ObjectAssignEmpty, 0},

        // array-slice-noargs
        {"array-slice-noargs.pos.literal", "t.js", "const copy = [1, 2].slice();",
         Structure::ArraySliceNoArgs, 1},
        {"array-slice-noargs.pos.binding", "t.js", "const xs = [1]; const copy = xs.slice();",
         Structure::ArraySliceNoArgs, 1},
        {"array-slice-noargs.neg.with-args", "t.js", "const xs = [1, 2, 3]; xs.slice(1);",
         Structure::ArraySliceNoArgs, 0},
        {"array-slice-noargs.neg.unknown-receiver", "t.js", "function f(x){ x.slice(); }",
         Structure::ArraySliceNoArgs, 0},

        // spread-element
        {"spread-element.pos", "t.js", "const merged = [...first, ...second];",
         Structure::SpreadElement, 2},
        {"spread-element.neg.call-args", "t.js", "f(...args);", Structure::SpreadElement, 0},
        {"spread-element.neg.rest-param", "t.js", "function f(...rest){}",
         Structure::SpreadElement, 0},

        // spread-assignment
        {"spread-assignment.pos.listing1", "t.js",
         "const person = { age: 50 };\nconst anotherPerson = { ...person, age: 51 };",
         Structure::SpreadAssignment, 1},
        {"spread-assignment.neg.array", "t.js", "const a = [...xs];", Structure::SpreadAssignment,
         0},
        {"spread-assignment.neg.destructuring", "t.js", "const {a, ...rest} = o;",
         Structure::SpreadAssignment, 0},

        // generator
        {"generator.pos.declaration", "t.js",
         "function* range(){ let i = 0; while (true) yield i++; }", Structure::Generator, 1},
        {"generator.pos.method", "t.js", "class Seq { *items(){ yield 1; } }",
         Structure::Generator, 1},
        {"generator.pos.async", "t.js", "async function* stream(){ yield await next(); }",
         Structure::Generator, 1},
        {"generator.neg.plain", "t.js", "function range(){ return [1, 2]; }",
         Structure::Generator, 0},

        // thunk
        {"thunk.pos.listing3", "t.js", "const four = () => 2 + 2;", Structure::Thunk, 1},
        {"thunk.pos.async", "t.js", "const later = async () => compute();", Structure::Thunk, 1},
        {"thunk.neg.unary", "t.js", "const id = (x) => x;", Structure::Thunk, 0},
        {"thunk.neg.function-expression", "t.js", "const f = function(){ return 1; };",
         Structure::Thunk, 0},

        // the 11 native HOFs
        {"hof-every.pos", "t.js", "const xs = [1]; xs.every((v) => v > 0);", Structure::HofEvery, 1},
        {"hof-every.neg", "t.js", "const xs = [1]; xs.every(limit);", Structure::HofEvery, 0},
        {"hof-filter.pos", "t.js", "const xs = [1]; xs.filter((v) => v > 0);", Structure::HofFilter, 1},
        {"hof-filter.neg", "t.js", "filter((v) => v);", Structure::HofFilter, 0},
        {"hof-find.pos", "t.js", "const xs = [1]; xs.find((v) => v === 1);", Structure::HofFind, 1},
        {"hof-find.neg.string-receiver", "t.js", "'abc'.find((c) => c);", Structure::HofFind, 0},
        {"hof-findIndex.pos", "t.js", "const xs = [1]; xs.findIndex(function(v){ return v > 0; });",
         Structure::HofFindIndex, 1},
        {"hof-findIndex.neg", "t.js", "const xs = [1]; xs.findIndex(2);", Structure::HofFindIndex, 0},
        {"hof-flat.pos.synthetic", "t.js", "const xs = [[1], [2]]; xs.flat(() => 1);",
         Structure::HofFlat, 1},
        {"hof-flat.neg.depth-arg", "t.js", "const xs = [[1]]; xs.flat(2);", Structure::HofFlat, 0},
        {"hof-flatMap.pos", "t.js", "const xs = [1]; xs.flatMap((v) => [v, v]);",
         Structure::HofFlatMap, 1},
        {"hof-flatMap.neg", "t.js", "const xs = [1]; xs.flatMap(depth);", Structure::HofFlatMap, 0},
        {"hof-forEach.pos", "t.js", "const xs = [1]; xs.forEach((v) => log(v));",
         Structure::HofForEach, 1},
        {"hof-forEach.neg.unknown-callee-arg", "t.js", "function f(h){ const xs = [1]; xs.forEach(h); }",
         Structure::HofForEach, 0},
        {"hof-map.pos", "t.js", "const xs = [1]; xs.map((v) => v + 1);", Structure::HofMap, 1},
        {"hof-map.pos.bound-function", "t.js",
         "const double = (v) => v * 2; const xs = [1]; xs.map(double);", Structure::HofMap, 1},
        {"hof-map.neg.unknown-arg", "t.js", "function f(h){ const xs = [1]; xs.map(h); }",
         Structure::HofMap, 0},
        {"hof-map.neg.element-access", "t.js", "const xs = [1]; xs['map']((v) => v);",
         Structure::HofMap, 0},
        {"hof-reduce.pos", "t.js", "const xs = [1]; xs.reduce((acc, v) => acc + v, 0);",
         Structure::HofReduce, 1},
        {"hof-reduce.neg", "t.js", "const xs = [1]; xs.reduce(sum, 0);", Structure::HofReduce, 0},
        {"hof-reduceRight.pos", "t.js", "const xs = [1]; xs.reduceRight((a, v) => a.concat(v), []);",
         Structure::HofReduceRight, 1},
        {"hof-reduceRight.neg", "t.js", "const xs = [1]; xs.reduceRight(combine);",
         Structure::HofReduceRight, 0},
        {"hof-some.pos", "t.js", "const xs = [1]; xs.some((v) => v < 0);", Structure::HofSome, 1},
        {"hof-some.neg.object-receiver", "t.js", "const o = {some: (f) => f()}; o.some((v) => v);",
         Structure::HofSome, 0},

        // non-native HOF
        {"hof-non-native.pos.return-statement", "t.js",
         "function make(){ return () => 1; }", Structure::HofNonNative, 1},
        {"hof-non-native.pos.curried-arrow", "t.js", "const add = (a) => (b) => a + b;",
         Structure::HofNonNative, 1},
        {"hof-non-native.pos.named-inner", "t.js",
         "function wrap(){ const inner = () => 1; return inner; }", Structure::HofNonNative, 1},
        {"hof-non-native.neg.takes-function", "t.js", "function take(cb){ cb(); }",
         Structure::HofNonNative, 0},
        {"hof-non-native.neg.returns-value", "t.js", "function id(x){ return x; }",
         Structure::HofNonNative, 0},
        {"hof-non-native.inner-owns-nested-return", "t.js",
         "function outer(){ function inner(){ return () => 1; } }", Structure::HofNonNative, 1},

        // callback
        {"callback.pos.two-calls-one-occurrence", "t.js", "function on(cb){ cb(1); cb(2); }",
         Structure::Callback, 1},
        {"callback.pos.destructured-param", "t.js", "function go({done}){ done(); }",
         Structure::Callback, 1},
        {"callback.neg.param-never-called", "t.js", "function id(x){ return x; }",
         Structure::Callback, 0},
        {"callback.call-resolves-to-inner-param-only", "t.js",
         "function f(cb){ function g(cb){ cb(); } }", Structure::Callback, 1},

        // promise
        {"promise.pos.listing4", "t.js",
         "new Promise((resolve) => {\n\tresolve(1)\n}).then(console.log)", Structure::Promise, 1},
        {"promise.neg.then-chain", "t.js", "Promise.resolve(1).then(log);", Structure::Promise, 0},
        {"promise.neg.shadowed-import", "t.js",
         "import {Promise} from 'bluebird';\nnew Promise(run);", Structure::Promise, 0},
        {"promise.neg.other-constructor", "t.js", "new Deferred(run);", Structure::Promise, 0},

        // const-decl (opt-in)
        {"const-decl.pos.multi-declarator", "t.js", "const a = 1, b = 2;", Structure::ConstDecl, 1,
         true},
        {"const-decl.pos.three-statements", "t.js", "const a = 1; const b = 2; const c = 3;",
         Structure::ConstDecl, 3, true},
        {"const-decl.neg.let", "t.js", "let a = 1;", Structure::ConstDecl, 0, true},
        {"const-decl.neg.disabled", "t.js", "const a = 1;", Structure::ConstDecl, 0, false},
    };
    return fixtures;
}

}  // namespace fpmine::test
