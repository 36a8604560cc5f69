#include "fpmine/detect.hpp"

#include <algorithm>
#include <sstream>

namespace fpmine {

using namespace node_flags;

Concept concept_of(Structure s) {
    switch (s) {
        case Structure::Recursion:
            return Concept::Recursion;
        case Structure::ObjectFreeze:
        case Structure::ObjectAssignEmpty:
        case Structure::ArraySliceNoArgs:
        case Structure::SpreadElement:
        case Structure::SpreadAssignment:
            return Concept::Immutability;
        case Structure::Generator:
        case Structure::Thunk:
            return Concept::LazyEvaluation;
        case Structure::Callback:
        case Structure::Promise:
            return Concept::CallbacksPromises;
        case Structure::ConstDecl:
            return Concept::ConstDeclaration;
        default:
            return Concept::HigherOrderFunctions;
    }
}

std::string_view structure_name(Structure s) {
    switch (s) {
        case Structure::Recursion: return "recursion";
        case Structure::ObjectFreeze: return "object-freeze";
        case Structure::ObjectAssignEmpty: return "object-assign-empty";
        case Structure::ArraySliceNoArgs: return "array-slice-noargs";
        case Structure::SpreadElement: return "spread-element";
        case Structure::SpreadAssignment: return "spread-assignment";
        case Structure::Generator: return "generator";
        case Structure::Thunk: return "thunk";
        case Structure::HofEvery: return "hof-every";
        case Structure::HofFilter: return "hof-filter";
        case Structure::HofFind: return "hof-find";
        case Structure::HofFindIndex: return "hof-findIndex";
        case Structure::HofFlat: return "hof-flat";
        case Structure::HofFlatMap: return "hof-flatMap";
        case Structure::HofForEach: return "hof-forEach";
        case Structure::HofMap: return "hof-map";
        case Structure::HofReduce: return "hof-reduce";
        case Structure::HofReduceRight: return "hof-reduceRight";
        case Structure::HofSome: return "hof-some";
        case Structure::HofNonNative: return "hof-non-native";
        case Structure::Callback: return "callback";
        case Structure::Promise: return "promise";
        case Structure::ConstDecl: return "const-decl";
    }
    return "?";
}

std::string_view concept_name(Concept c) {
    switch (c) {
        case Concept::Recursion: return "Recursion";
        case Concept::Immutability: return "Immutability";
        case Concept::LazyEvaluation: return "LazyEvaluation";
        case Concept::HigherOrderFunctions: return "HigherOrderFunctions";
        case Concept::CallbacksPromises: return "CallbacksPromises";
        case Concept::ConstDeclaration: return "ConstDeclaration";
    }
    return "?";
}

const std::vector<Structure>& all_structures() {
    static const std::vector<Structure> v = {
        Structure::Recursion,        Structure::ObjectFreeze,   Structure::ObjectAssignEmpty,
        Structure::ArraySliceNoArgs, Structure::SpreadElement,  Structure::SpreadAssignment,
        Structure::Generator,        Structure::Thunk,          Structure::HofEvery,
        Structure::HofFilter,        Structure::HofFind,        Structure::HofFindIndex,
        Structure::HofFlat,          Structure::HofFlatMap,     Structure::HofForEach,
        Structure::HofMap,           Structure::HofReduce,      Structure::HofReduceRight,
        Structure::HofSome,          Structure::HofNonNative,   Structure::Callback,
        Structure::Promise,          Structure::ConstDecl};
    return v;
}

const std::vector<Concept>& all_concepts() {
    static const std::vector<Concept> v = {
        Concept::Recursion, Concept::Immutability, Concept::LazyEvaluation,
        Concept::HigherOrderFunctions, Concept::CallbacksPromises, Concept::ConstDeclaration};
    return v;
}

std::string DetectorPolicy::describe() const {
    std::ostringstream ss;
    ss << "unknown_policy=" << (unknown_policy == UnknownPolicy::Include ? "include" : "exclude")
       << " include_const=" << (include_const ? "true" : "false")
       << " include_async_thunks=" << (include_async_thunks ? "true" : "false");
    return ss.str();
}

namespace {

FpOccurrence make_occ(const SourceUnit& unit, Structure s, const Span& site, const Span& extent) {
    FpOccurrence o;
    o.group = concept_of(s);
    o.structure = s;
    o.site_span = site;
    o.extent_span = extent;
    o.file = unit.path;
    return o;
}

std::uint32_t unwrap_expr(const Tree& t, std::uint32_t node) {
    for (;;) {
        const Node& n = t[node];
        if ((n.kind == NodeKind::ParenExpr || n.kind == NodeKind::TsAsExpr ||
             n.kind == NodeKind::TsNonNull || n.kind == NodeKind::TsTypeAssertion) &&
            !n.children.empty()) {
            node = n.children[0];
            continue;
        }
        return node;
    }
}

// Non-spread call arguments of a CallExpr/NewExpr node.
std::vector<std::uint32_t> direct_arguments(const Tree& t, std::uint32_t call) {
    std::vector<std::uint32_t> out;
    const Node& n = t[call];
    for (std::size_t i = 1; i < n.children.size(); ++i) {
        if (t[n.children[i]].kind != NodeKind::SpreadElement) out.push_back(n.children[i]);
    }
    return out;
}

// Property-access callee: {object, name-node} for `o.f(...)` / `o?.f(...)`.
struct PropertyCallee {
    std::uint32_t object;
    std::uint32_t name;
};

std::optional<PropertyCallee> property_callee(const SourceUnit& unit, std::uint32_t call) {
    const Tree& t = unit.tree;
    std::uint32_t callee = unwrap_expr(t, t[call].children[0]);
    const Node& cn = t[callee];
    if (cn.kind != NodeKind::MemberExpr || cn.has(Computed) || cn.children.size() != 2)
        return std::nullopt;
    if (t[cn.children[1]].kind != NodeKind::Identifier) return std::nullopt;
    return PropertyCallee{cn.children[0], cn.children[1]};
}

// Return expressions belonging to `fn` itself: its own return statements,
// plus the expression body of an arrow.
void own_return_expressions(const Tree& t, std::uint32_t fn, std::vector<std::uint32_t>& out) {
    const Node& n = t[fn];
    std::uint32_t body = function_body(t, fn);
    if (body == kNoNode) return;
    if (n.kind == NodeKind::ArrowFunction && n.has(ExprBody)) {
        out.push_back(body);
        return;
    }
    walk(t, body, [&](std::uint32_t idx) {
        if (idx != body && is_function_like(t[idx].kind)) return false;
        if (t[idx].kind == NodeKind::ReturnStatement && !t[idx].children.empty())
            out.push_back(t[idx].children[0]);
        return true;
    });
}

Structure hof_structure_for(std::string_view name) {
    if (name == "every") return Structure::HofEvery;
    if (name == "filter") return Structure::HofFilter;
    if (name == "find") return Structure::HofFind;
    if (name == "findIndex") return Structure::HofFindIndex;
    if (name == "flat") return Structure::HofFlat;
    if (name == "flatMap") return Structure::HofFlatMap;
    if (name == "forEach") return Structure::HofForEach;
    if (name == "map") return Structure::HofMap;
    if (name == "reduce") return Structure::HofReduce;
    if (name == "reduceRight") return Structure::HofReduceRight;
    return Structure::HofSome;
}

}  // namespace

std::vector<FpOccurrence> detect_recursion(const SourceUnit& unit, const ScopeTable& scopes) {
    std::vector<FpOccurrence> out;
    const Tree& t = unit.tree;
    walk(t, t.root(), [&](std::uint32_t idx) {
        const Node& n = t[idx];
        if ((n.kind != NodeKind::FunctionDecl && n.kind != NodeKind::FunctionExpr) ||
            !n.has(HasName))
            return true;
        std::uint32_t name = n.children[0];
        auto self = scopes.resolve(name);
        if (!self) return true;
        std::uint32_t body = function_body(t, idx);
        if (body == kNoNode) return true;
        bool recursive = false;
        walk(t, body, [&](std::uint32_t node) {
            if (recursive) return false;
            const Node& c = t[node];
            if (c.kind == NodeKind::CallExpr && !c.children.empty()) {
                std::uint32_t callee = unwrap_expr(t, c.children[0]);
                if (t[callee].kind == NodeKind::Identifier) {
                    auto target = scopes.resolve(callee);
                    if (target && *target == *self) recursive = true;
                }
            }
            return true;
        });
        if (recursive) out.push_back(make_occ(unit, Structure::Recursion, n.span, n.span));
        return true;
    });
    return out;
}

std::vector<FpOccurrence> detect_immutability(const SourceUnit& unit, const ScopeTable& scopes,
                                              const DetectorPolicy& policy) {
    std::vector<FpOccurrence> out;
    const Tree& t = unit.tree;
    bool include_unknown = policy.unknown_policy == DetectorPolicy::UnknownPolicy::Include;

    walk(t, t.root(), [&](std::uint32_t idx) {
        const Node& n = t[idx];
        switch (n.kind) {
            case NodeKind::CallExpr: {
                auto pc = property_callee(unit, idx);
                if (!pc) break;
                std::string_view prop = unit.node_text(pc->name);
                std::uint32_t obj = unwrap_expr(t, pc->object);
                std::size_t argc = t[idx].children.size() - 1;

                if (t[obj].kind == NodeKind::Identifier && unit.node_text(obj) == "Object" &&
                    scopes.resolves_to_global("Object", obj)) {
                    if (prop == "freeze") {
                        out.push_back(make_occ(unit, Structure::ObjectFreeze, n.span, n.span));
                        break;
                    }
                    if (prop == "assign" && argc == 2) {
                        std::uint32_t first = unwrap_expr(t, n.children[1]);
                        if (t[first].kind == NodeKind::ObjectLit && t[first].children.empty()) {
                            out.push_back(
                                make_occ(unit, Structure::ObjectAssignEmpty, n.span, n.span));
                        }
                        break;
                    }
                }
                if (prop == "slice" && argc == 0) {
                    Typedness rx = scopes.is_array_valued(pc->object);
                    if (rx == Typedness::Yes || (rx == Typedness::Unknown && include_unknown)) {
                        out.push_back(make_occ(unit, Structure::ArraySliceNoArgs, n.span, n.span));
                    }
                }
                break;
            }
            case NodeKind::ArrayLit:
                for (std::uint32_t c : n.children) {
                    if (t[c].kind == NodeKind::SpreadElement)
                        out.push_back(make_occ(unit, Structure::SpreadElement, t[c].span, n.span));
                }
                break;
            case NodeKind::ObjectLit:
                for (std::uint32_t c : n.children) {
                    if (t[c].kind == NodeKind::SpreadAssignment)
                        out.push_back(
                            make_occ(unit, Structure::SpreadAssignment, t[c].span, n.span));
                }
                break;
            default:
                break;
        }
        return true;
    });
    return out;
}

std::vector<FpOccurrence> detect_lazy(const SourceUnit& unit, const ScopeTable& scopes,
                                      const DetectorPolicy& policy) {
    (void)scopes;
    std::vector<FpOccurrence> out;
    const Tree& t = unit.tree;
    walk(t, t.root(), [&](std::uint32_t idx) {
        const Node& n = t[idx];
        if (n.has(Generator) &&
            (n.kind == NodeKind::FunctionDecl || n.kind == NodeKind::FunctionExpr ||
             n.kind == NodeKind::MethodDef)) {
            out.push_back(make_occ(unit, Structure::Generator, n.span, n.span));
        }
        if (n.kind == NodeKind::ArrowFunction && function_params(t, idx).empty()) {
            if (!n.has(Async) || policy.include_async_thunks)
                out.push_back(make_occ(unit, Structure::Thunk, n.span, n.span));
        }
        return true;
    });
    return out;
}

std::vector<FpOccurrence> detect_hof(const SourceUnit& unit, const ScopeTable& scopes,
                                     const DetectorPolicy& policy) {
    std::vector<FpOccurrence> out;
    const Tree& t = unit.tree;
    bool include_unknown = policy.unknown_policy == DetectorPolicy::UnknownPolicy::Include;

    walk(t, t.root(), [&](std::uint32_t idx) {
        const Node& n = t[idx];

        // (a) native traversal methods, property-access call form only
        if (n.kind == NodeKind::CallExpr) {
            auto pc = property_callee(unit, idx);
            if (pc) {
                std::string_view prop = unit.node_text(pc->name);
                if (is_native_hof_name(prop)) {
                    bool fn_yes = false, fn_literal = false;
                    for (std::uint32_t arg : direct_arguments(t, idx)) {
                        std::uint32_t a = unwrap_expr(t, arg);
                        if (t[a].kind == NodeKind::ArrowFunction ||
                            t[a].kind == NodeKind::FunctionExpr)
                            fn_literal = true;
                        if (scopes.is_function_valued(arg) == Typedness::Yes) fn_yes = true;
                    }
                    if (fn_yes) {
                        Typedness rx = scopes.is_array_valued(pc->object);
                        bool receiver_ok =
                            rx == Typedness::Yes ||
                            (rx == Typedness::Unknown && (include_unknown || fn_literal));
                        if (receiver_ok)
                            out.push_back(make_occ(unit, hof_structure_for(prop), n.span, n.span));
                    }
                }
            }
        }

        // (b) developer-defined functions returning functions; taking
        // function parameters does not count here
        if (n.kind == NodeKind::FunctionDecl || n.kind == NodeKind::FunctionExpr ||
            n.kind == NodeKind::ArrowFunction) {
            std::vector<std::uint32_t> returns;
            own_return_expressions(t, idx, returns);
            for (std::uint32_t r : returns) {
                if (scopes.is_function_valued(r) == Typedness::Yes) {
                    out.push_back(make_occ(unit, Structure::HofNonNative, n.span, n.span));
                    break;
                }
            }
        }
        return true;
    });
    return out;
}

std::vector<FpOccurrence> detect_callbacks_promises(const SourceUnit& unit,
                                                    const ScopeTable& scopes,
                                                    DetectorExtras* extras) {
    std::vector<FpOccurrence> out;
    const Tree& t = unit.tree;

    walk(t, t.root(), [&](std::uint32_t idx) {
        const Node& n = t[idx];

        if (is_function_like(n.kind) && n.kind != NodeKind::StaticBlock) {
            std::uint32_t fscope = scopes.function_scope(idx);
            std::uint32_t body = function_body(t, idx);
            bool has_params = false;
            for (const auto& [name, b] : scopes.scope(fscope).bindings) {
                if (scopes.binding(b).kind == BindingKind::Parameter) {
                    has_params = true;
                    break;
                }
            }
            if (has_params && body != kNoNode) {
                bool invoked = false;
                walk(t, body, [&](std::uint32_t node) {
                    if (invoked) return false;
                    const Node& c = t[node];
                    if (c.kind == NodeKind::CallExpr && !c.children.empty()) {
                        std::uint32_t callee = unwrap_expr(t, c.children[0]);
                        if (t[callee].kind == NodeKind::Identifier) {
                            auto target = scopes.resolve(callee);
                            if (target && scopes.binding(*target).kind == BindingKind::Parameter &&
                                scopes.binding(*target).scope == fscope)
                                invoked = true;
                        }
                    }
                    return true;
                });
                if (invoked) out.push_back(make_occ(unit, Structure::Callback, n.span, n.span));
            }
        }

        if (n.kind == NodeKind::NewExpr && !n.children.empty()) {
            std::uint32_t callee = unwrap_expr(t, n.children[0]);
            if (t[callee].kind == NodeKind::Identifier && unit.node_text(callee) == "Promise" &&
                scopes.resolves_to_global("Promise", callee)) {
                out.push_back(make_occ(unit, Structure::Promise, n.span, n.span));
            }
        }

        if (extras && n.kind == NodeKind::CallExpr) {
            for (std::uint32_t arg : direct_arguments(t, idx)) {
                if (scopes.is_function_valued(arg) == Typedness::Yes) {
                    ++extras->callsites_with_function_args;
                    break;
                }
            }
        }
        return true;
    });
    return out;
}

std::vector<FpOccurrence> detect_const(const SourceUnit& unit, const DetectorPolicy& policy) {
    std::vector<FpOccurrence> out;
    if (!policy.include_const) return out;
    const Tree& t = unit.tree;
    walk(t, t.root(), [&](std::uint32_t idx) {
        const Node& n = t[idx];
        if (n.kind == NodeKind::VarStatement && n.has(DeclConst)) {
            // for-header declarations are not declaration statements
            NodeKind parent =
                n.parent == kNoNode ? NodeKind::Program : t[n.parent].kind;
            if (parent != NodeKind::ForStatement && parent != NodeKind::ForInStatement &&
                parent != NodeKind::ForOfStatement)
                out.push_back(make_occ(unit, Structure::ConstDecl, n.span, n.span));
        }
        return true;
    });
    return out;
}

std::vector<FpOccurrence> detect_all(const SourceUnit& unit, const ScopeTable& scopes,
                                     const DetectorPolicy& policy, DetectorExtras* extras) {
    std::vector<FpOccurrence> all;
    auto append = [&](std::vector<FpOccurrence> v) {
        all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    append(detect_recursion(unit, scopes));
    append(detect_immutability(unit, scopes, policy));
    append(detect_lazy(unit, scopes, policy));
    append(detect_hof(unit, scopes, policy));
    append(detect_callbacks_promises(unit, scopes, extras));
    append(detect_const(unit, policy));

    std::sort(all.begin(), all.end(), [](const FpOccurrence& x, const FpOccurrence& y) {
        if (x.file != y.file) return x.file < y.file;
        if (x.site_span.start_byte != y.site_span.start_byte)
            return x.site_span.start_byte < y.site_span.start_byte;
        if (x.structure != y.structure) return x.structure < y.structure;
        return x.extent_span.start_byte < y.extent_span.start_byte;
    });
    return all;
}

}  // namespace fpmine
