#include "fpmine/scopes.hpp"

#include <array>

namespace fpmine {

using namespace node_flags;

bool is_native_hof_name(std::string_view name) {
    static constexpr std::array<std::string_view, 11> names = {
        "every", "filter", "find", "findIndex", "flat", "flatMap",
        "forEach", "map", "reduce", "reduceRight", "some"};
    for (std::string_view n : names)
        if (n == name) return true;
    return false;
}

class ScopeBuilder {
public:
    ScopeBuilder(const SourceUnit& unit, ScopeTable& table) : unit_(unit), t_(table) {}

    void run() {
        t_.node_scope_.assign(unit_.tree.size(), 0);
        std::uint32_t module_scope = new_scope(Scope::Kind::Module, kNoNode, unit_.tree.root());
        t_.fn_scopes_[unit_.tree.root()] = module_scope;
        visit(unit_.tree.root(), module_scope);
        resolve_deferred();
    }

private:
    const SourceUnit& unit_;
    ScopeTable& t_;
    std::vector<std::uint32_t> assigned_idents_;           // reassignment targets
    std::vector<std::uint32_t> maybe_eval_calls_;          // callee nodes named eval

    const Tree& tree() const { return unit_.tree; }

    std::uint32_t new_scope(Scope::Kind kind, std::uint32_t parent, std::uint32_t owner) {
        Scope s;
        s.kind = kind;
        s.parent = parent;
        s.owner_node = owner;
        t_.scopes_.push_back(std::move(s));
        return static_cast<std::uint32_t>(t_.scopes_.size() - 1);
    }

    std::uint32_t hoist_target(std::uint32_t scope) const {
        std::uint32_t s = scope;
        for (;;) {
            Scope::Kind k = t_.scopes_[s].kind;
            if (k == Scope::Kind::Module || k == Scope::Kind::Function) return s;
            s = t_.scopes_[s].parent;
        }
    }

    std::uint32_t bind(std::string_view name, BindingKind kind, std::uint32_t scope,
                       const Span& span) {
        Scope& s = t_.scopes_[scope];
        auto it = s.bindings.find(name);
        if (it != s.bindings.end()) {
            Binding& b = t_.bindings_[it->second];
            if (b.kind != kind) b.mixed_kinds = true;
            return it->second;
        }
        Binding b;
        b.name = name;
        b.kind = kind;
        b.decl_span = span;
        b.scope = scope;
        t_.bindings_.push_back(std::move(b));
        std::uint32_t idx = static_cast<std::uint32_t>(t_.bindings_.size() - 1);
        s.bindings.emplace(name, idx);
        return idx;
    }

    // Registers every identifier bound by a pattern. `direct_init` is set
    // only when the whole pattern is one identifier.
    void bind_pattern(std::uint32_t pat, BindingKind kind, std::uint32_t scope,
                      std::uint32_t direct_init) {
        const Node& n = tree()[pat];
        switch (n.kind) {
            case NodeKind::Identifier: {
                std::uint32_t b = bind(unit_.node_text(pat), kind, scope, n.span);
                if (direct_init != kNoNode) t_.bindings_[b].init_nodes.push_back(direct_init);
                break;
            }
            case NodeKind::ObjectPattern:
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    if (cn.kind == NodeKind::RestElement) {
                        bind_pattern(cn.children[0], kind, scope, kNoNode);
                    } else if (cn.kind == NodeKind::PatternProp) {
                        std::uint32_t value = cn.has(Shorthand) ? cn.children[0] : cn.children[1];
                        bind_pattern(value, kind, scope, kNoNode);
                    }
                }
                break;
            case NodeKind::ArrayPattern:
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    if (cn.kind == NodeKind::Hole) continue;
                    if (cn.kind == NodeKind::RestElement) bind_pattern(cn.children[0], kind, scope, kNoNode);
                    else bind_pattern(c, kind, scope, kNoNode);
                }
                break;
            case NodeKind::AssignPattern:
                bind_pattern(n.children[0], kind, scope, kNoNode);
                break;
            default:
                break;
        }
    }

    // Destructuring assignment targets: every identifier in value position.
    void collect_assigned(std::uint32_t node) {
        const Node& n = tree()[node];
        switch (n.kind) {
            case NodeKind::Identifier:
                assigned_idents_.push_back(node);
                break;
            case NodeKind::ObjectLit:
            case NodeKind::ObjectPattern:
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    if (cn.kind == NodeKind::SpreadAssignment || cn.kind == NodeKind::RestElement) {
                        collect_assigned(cn.children[0]);
                    } else if (cn.kind == NodeKind::ObjectProp || cn.kind == NodeKind::PatternProp) {
                        collect_assigned(cn.has(Shorthand) ? cn.children[0]
                                                           : cn.children.size() > 1 ? cn.children[1]
                                                                                    : cn.children[0]);
                    }
                }
                break;
            case NodeKind::ArrayLit:
            case NodeKind::ArrayPattern:
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    if (cn.kind == NodeKind::Hole) continue;
                    if (cn.kind == NodeKind::SpreadElement || cn.kind == NodeKind::RestElement)
                        collect_assigned(cn.children[0]);
                    else
                        collect_assigned(c);
                }
                break;
            case NodeKind::AssignPattern:
            case NodeKind::AssignExpr:  // `[a = 1]` target with default
                collect_assigned(n.children[0]);
                break;
            case NodeKind::ParenExpr:
            case NodeKind::TsAsExpr:
            case NodeKind::TsNonNull:
            case NodeKind::TsTypeAssertion:
                if (!n.children.empty()) collect_assigned(n.children[0]);
                break;
            default:
                break;  // member expressions mutate properties, not bindings
        }
    }

    void visit_children(const Node& n, std::uint32_t scope) {
        for (std::uint32_t c : n.children) visit(c, scope);
    }

    void visit_function(std::uint32_t idx, std::uint32_t outer) {
        const Node& n = tree()[idx];
        std::uint32_t enclosing = outer;

        if (n.kind == NodeKind::FunctionDecl && n.has(HasName)) {
            std::uint32_t name = n.children[0];
            bind(unit_.node_text(name), BindingKind::FunctionDecl, outer, tree()[name].span);
            t_.node_scope_[name] = outer;
        } else if (n.kind == NodeKind::FunctionExpr && n.has(HasName)) {
            std::uint32_t name_scope = new_scope(Scope::Kind::FunctionName, outer, idx);
            std::uint32_t name = n.children[0];
            bind(unit_.node_text(name), BindingKind::FunctionDecl, name_scope, tree()[name].span);
            t_.node_scope_[name] = name_scope;
            enclosing = name_scope;
        }

        std::uint32_t fscope = new_scope(Scope::Kind::Function, enclosing, idx);
        t_.fn_scopes_[idx] = fscope;

        std::size_t first = (n.kind == NodeKind::FunctionDecl || n.kind == NodeKind::FunctionExpr) &&
                                    n.has(HasName)
                                ? 1
                                : 0;
        if (n.kind == NodeKind::MethodDef) {
            // key and decorators stay outside; walk them in the outer scope
            for (std::uint32_t c : n.children) {
                if (tree()[c].kind != NodeKind::Param && c != function_body(tree(), idx)) {
                    visit(c, outer);
                }
            }
            for (std::uint32_t c : n.children) {
                if (tree()[c].kind == NodeKind::Param) visit_param(c, fscope);
            }
            if (std::uint32_t body = function_body(tree(), idx); body != kNoNode) visit(body, fscope);
            return;
        }
        for (std::size_t i = first; i < n.children.size(); ++i) {
            std::uint32_t c = n.children[i];
            if (tree()[c].kind == NodeKind::Param) visit_param(c, fscope);
            else visit(c, fscope);
        }
    }

    void visit_param(std::uint32_t idx, std::uint32_t fscope) {
        const Node& n = tree()[idx];
        t_.node_scope_[idx] = fscope;
        bind_pattern(n.children[0], BindingKind::Parameter, fscope, kNoNode);
        mark_pattern_scopes(n.children[0], fscope);
        for (std::size_t i = 1; i < n.children.size(); ++i) visit(n.children[i], fscope);
    }

    // Pattern identifiers are declarations; give them scopes but skip use
    // handling. Defaults inside patterns are expressions and are visited.
    void mark_pattern_scopes(std::uint32_t idx, std::uint32_t scope) {
        const Node& n = tree()[idx];
        t_.node_scope_[idx] = scope;
        switch (n.kind) {
            case NodeKind::Identifier:
                break;
            case NodeKind::ObjectPattern:
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    t_.node_scope_[c] = scope;
                    if (cn.kind == NodeKind::RestElement) {
                        mark_pattern_scopes(cn.children[0], scope);
                    } else if (cn.kind == NodeKind::PatternProp) {
                        if (cn.has(Computed)) visit(cn.children[0], scope);
                        else t_.node_scope_[cn.children[0]] = scope;
                        if (cn.has(Shorthand)) mark_pattern_scopes(cn.children[0], scope);
                        else if (cn.children.size() > 1) mark_pattern_scopes(cn.children[1], scope);
                    }
                }
                break;
            case NodeKind::ArrayPattern:
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    t_.node_scope_[c] = scope;
                    if (cn.kind == NodeKind::Hole) continue;
                    if (cn.kind == NodeKind::RestElement) mark_pattern_scopes(cn.children[0], scope);
                    else mark_pattern_scopes(c, scope);
                }
                break;
            case NodeKind::AssignPattern:
                mark_pattern_scopes(n.children[0], scope);
                if (n.children.size() > 1) visit(n.children[1], scope);
                break;
            default:
                visit(idx, scope);
                break;
        }
    }

    void visit(std::uint32_t idx, std::uint32_t scope) {
        const Node& n = tree()[idx];
        t_.node_scope_[idx] = scope;

        switch (n.kind) {
            case NodeKind::FunctionDecl:
            case NodeKind::FunctionExpr:
            case NodeKind::ArrowFunction:
            case NodeKind::MethodDef:
            case NodeKind::StaticBlock:
                visit_function(idx, scope);
                return;

            case NodeKind::ClassDecl:
            case NodeKind::ClassExpr: {
                std::uint32_t inner = scope;
                std::size_t first = 0;
                if (n.has(HasName)) {
                    std::uint32_t name = n.children[0];
                    first = 1;
                    if (n.kind == NodeKind::ClassDecl) {
                        bind(unit_.node_text(name), BindingKind::Class, scope, tree()[name].span);
                        t_.node_scope_[name] = scope;
                    } else {
                        inner = new_scope(Scope::Kind::ClassName, scope, idx);
                        bind(unit_.node_text(name), BindingKind::Class, inner, tree()[name].span);
                        t_.node_scope_[name] = inner;
                    }
                }
                for (std::size_t i = first; i < n.children.size(); ++i)
                    visit(n.children[i], inner);
                return;
            }

            case NodeKind::Block: {
                std::uint32_t inner = new_scope(Scope::Kind::Block, scope, idx);
                visit_children(n, inner);
                return;
            }

            case NodeKind::ForStatement:
            case NodeKind::ForInStatement:
            case NodeKind::ForOfStatement: {
                std::uint32_t inner = new_scope(Scope::Kind::Block, scope, idx);
                visit_children(n, inner);
                if (n.kind != NodeKind::ForStatement) {
                    // expression targets are assignments
                    std::uint32_t target = n.children[0];
                    if (tree()[target].kind != NodeKind::VarStatement) collect_assigned(target);
                }
                return;
            }

            case NodeKind::CatchClause: {
                std::uint32_t inner = new_scope(Scope::Kind::Catch, scope, idx);
                if (n.has(HasParam)) {
                    bind_pattern(n.children[0], BindingKind::Parameter, inner, kNoNode);
                    mark_pattern_scopes(n.children[0], inner);
                    for (std::size_t i = 1; i < n.children.size(); ++i) visit(n.children[i], inner);
                } else {
                    visit_children(n, inner);
                }
                return;
            }

            case NodeKind::WithStatement: {
                visit(n.children[0], scope);
                std::uint32_t inner = new_scope(Scope::Kind::Block, scope, idx);
                t_.scopes_[inner].poisoned = true;
                visit(n.children[1], inner);
                return;
            }

            case NodeKind::VarStatement: {
                bool is_var = !n.has(DeclLet) && !n.has(DeclConst);
                std::uint32_t target = is_var ? hoist_target(scope) : scope;
                for (std::uint32_t d : n.children) {
                    const Node& dn = tree()[d];
                    t_.node_scope_[d] = scope;
                    std::uint32_t pat = dn.children[0];
                    std::uint32_t init =
                        dn.has(HasInit) && dn.children.size() > 1 ? dn.children[1] : kNoNode;
                    bool direct = tree()[pat].kind == NodeKind::Identifier;
                    bind_pattern(pat, BindingKind::Variable, target,
                                 direct && init != kNoNode ? init : kNoNode);
                    mark_pattern_scopes(pat, scope);
                    if (init != kNoNode) visit(init, scope);
                }
                return;
            }

            case NodeKind::ImportSpec: {
                if (!n.has(Ambient)) {
                    std::uint32_t local = n.children[0];
                    bind(unit_.node_text(local), BindingKind::Import, scope, tree()[local].span);
                }
                t_.node_scope_[n.children[0]] = scope;
                return;
            }

            case NodeKind::TsEnumDecl: {
                if (n.has(HasName)) {
                    std::uint32_t name = n.children[0];
                    bind(unit_.node_text(name), BindingKind::Class, scope, tree()[name].span);
                    t_.node_scope_[name] = scope;
                }
                for (std::size_t i = n.has(HasName) ? 1 : 0; i < n.children.size(); ++i) {
                    const Node& m = tree()[n.children[i]];
                    t_.node_scope_[n.children[i]] = scope;
                    if (m.has(HasInit) && m.children.size() > 1) visit(m.children[1], scope);
                }
                return;
            }

            case NodeKind::AssignExpr:
                collect_assigned(n.children[0]);
                visit_children(n, scope);
                return;

            case NodeKind::UpdateExpr:
                collect_assigned(n.children[0]);
                visit_children(n, scope);
                return;

            case NodeKind::CallExpr: {
                if (!n.children.empty()) {
                    const Node& callee = tree()[n.children[0]];
                    if (callee.kind == NodeKind::Identifier &&
                        unit_.node_text(n.children[0]) == "eval") {
                        maybe_eval_calls_.push_back(n.children[0]);
                    }
                }
                visit_children(n, scope);
                return;
            }

            case NodeKind::MemberExpr: {
                visit(n.children[0], scope);
                if (n.has(Computed)) visit(n.children[1], scope);
                else t_.node_scope_[n.children[1]] = scope;  // property name, not a use
                return;
            }

            case NodeKind::ObjectLit: {
                for (std::uint32_t c : n.children) {
                    const Node& cn = tree()[c];
                    t_.node_scope_[c] = scope;
                    if (cn.kind == NodeKind::ObjectProp) {
                        if (cn.has(Computed)) visit(cn.children[0], scope);
                        else t_.node_scope_[cn.children[0]] = scope;
                        if (cn.has(Shorthand)) {
                            // shorthand value is a use of the identifier
                            visit(cn.children[0], scope);
                            if (cn.has(HasInit) && cn.children.size() > 1) visit(cn.children[1], scope);
                        } else if (cn.children.size() > 1) {
                            visit(cn.children[1], scope);
                        }
                    } else {
                        visit(c, scope);
                    }
                }
                return;
            }

            case NodeKind::LabeledStatement:
                t_.node_scope_[n.children[0]] = scope;  // label, not a use
                visit(n.children[1], scope);
                return;

            case NodeKind::BreakStatement:
            case NodeKind::ContinueStatement:
                for (std::uint32_t c : n.children) t_.node_scope_[c] = scope;
                return;

            case NodeKind::FieldDef: {
                if (n.has(Computed) && !n.children.empty()) visit(n.children[0], scope);
                else if (!n.children.empty()) t_.node_scope_[n.children[0]] = scope;
                for (std::size_t i = 1; i < n.children.size(); ++i) visit(n.children[i], scope);
                return;
            }

            default:
                visit_children(n, scope);
                return;
        }
    }

    void resolve_deferred() {
        for (std::uint32_t ident : assigned_idents_) {
            bool crossed = false;
            auto b = t_.lookup(unit_.node_text(ident), t_.node_scope_[ident], &crossed);
            if (b) t_.bindings_[*b].reassigned = true;
        }
        for (std::uint32_t callee : maybe_eval_calls_) {
            if (t_.resolves_to_global("eval", callee)) {
                std::uint32_t s = hoist_target(t_.node_scope_[callee]);
                t_.scopes_[s].poisoned = true;
            }
        }
    }
};

ScopeTable build_scopes(const SourceUnit& unit) {
    ScopeTable table;
    table.unit_ = &unit;
    ScopeBuilder builder(unit, table);
    builder.run();
    return table;
}

std::optional<std::uint32_t> ScopeTable::lookup(std::string_view name, std::uint32_t from_scope,
                                                bool* crossed_poisoned) const {
    // Poisoning covers everything lexically inside the poisoned scope, so the
    // whole chain from the use site matters, not just the path to the binding.
    if (crossed_poisoned) {
        bool crossed = false;
        for (std::uint32_t s = from_scope;;) {
            if (scopes_[s].poisoned) {
                crossed = true;
                break;
            }
            if (scopes_[s].parent == kNoNode) break;
            s = scopes_[s].parent;
        }
        *crossed_poisoned = crossed;
    }
    std::uint32_t s = from_scope;
    for (;;) {
        const Scope& sc = scopes_[s];
        auto it = sc.bindings.find(name);
        if (it != sc.bindings.end()) return it->second;
        if (sc.parent == kNoNode) break;
        s = sc.parent;
    }
    return std::nullopt;
}

std::optional<std::uint32_t> ScopeTable::resolve(std::uint32_t ident_node) const {
    return lookup(unit_->node_text(ident_node), node_scope_[ident_node], nullptr);
}

bool ScopeTable::resolves_to_global(std::string_view name, std::uint32_t at_node) const {
    return !lookup(name, node_scope_[at_node], nullptr).has_value();
}

std::uint32_t ScopeTable::unwrap(std::uint32_t node) const {
    const Tree& tree = unit_->tree;
    for (;;) {
        const Node& n = tree[node];
        if ((n.kind == NodeKind::ParenExpr || n.kind == NodeKind::TsAsExpr ||
             n.kind == NodeKind::TsNonNull || n.kind == NodeKind::TsTypeAssertion) &&
            !n.children.empty()) {
            node = n.children[0];
            continue;
        }
        return node;
    }
}

InitShape ScopeTable::classify_init(std::uint32_t node) const {
    const Tree& tree = unit_->tree;
    node = unwrap(node);
    const Node& n = tree[node];
    switch (n.kind) {
        case NodeKind::FunctionExpr:
        case NodeKind::ArrowFunction:
            return InitShape::FunctionLiteral;
        case NodeKind::ArrayLit:
            return InitShape::ArrayLiteral;
        case NodeKind::ObjectLit:
            return InitShape::ObjectLiteral;
        case NodeKind::NewExpr: {
            if (!n.children.empty()) {
                std::uint32_t callee = unwrap(n.children[0]);
                if (tree[callee].kind == NodeKind::Identifier) {
                    std::string_view name = unit_->node_text(callee);
                    if (name == "Promise" && resolves_to_global("Promise", callee))
                        return InitShape::PromiseNew;
                    if (name == "Array" && resolves_to_global("Array", callee))
                        return InitShape::ArrayLiteral;
                }
            }
            return InitShape::Opaque;
        }
        case NodeKind::NumberLit:
        case NodeKind::StringLit:
        case NodeKind::BoolLit:
        case NodeKind::NullLit:
        case NodeKind::RegexLit:
        case NodeKind::TemplateLit:
        case NodeKind::ClassExpr:
            return InitShape::OtherLiteral;
        default:
            return InitShape::Opaque;
    }
}

Typedness ScopeTable::is_function_valued(std::uint32_t expr_node) const {
    const Tree& tree = unit_->tree;
    std::uint32_t node = unwrap(expr_node);
    const Node& n = tree[node];
    switch (n.kind) {
        case NodeKind::FunctionExpr:
        case NodeKind::ArrowFunction:
            return Typedness::Yes;
        case NodeKind::ArrayLit:
        case NodeKind::ObjectLit:
        case NodeKind::NumberLit:
        case NodeKind::StringLit:
        case NodeKind::BoolLit:
        case NodeKind::NullLit:
        case NodeKind::RegexLit:
        case NodeKind::TemplateLit:
        case NodeKind::ClassExpr:
            return Typedness::No;
        case NodeKind::Identifier: {
            bool crossed = false;
            auto b = lookup(unit_->node_text(node), node_scope_[node], &crossed);
            if (!b) return Typedness::Unknown;
            if (crossed) return Typedness::Unknown;
            const Binding& binding = bindings_[*b];
            if (binding.reassigned || binding.mixed_kinds) return Typedness::Unknown;
            if (binding.kind == BindingKind::FunctionDecl) return Typedness::Yes;
            if (binding.kind != BindingKind::Variable) return Typedness::Unknown;
            if (binding.init_nodes.size() != 1) return Typedness::Unknown;
            switch (classify_init(binding.init_nodes[0])) {
                case InitShape::FunctionLiteral: return Typedness::Yes;
                case InitShape::ArrayLiteral:
                case InitShape::ObjectLiteral:
                case InitShape::PromiseNew:
                case InitShape::OtherLiteral: return Typedness::No;
                default: return Typedness::Unknown;
            }
        }
        default:
            return Typedness::Unknown;
    }
}

Typedness ScopeTable::is_array_valued(std::uint32_t expr_node) const {
    const Tree& tree = unit_->tree;
    std::uint32_t node = unwrap(expr_node);
    const Node& n = tree[node];
    switch (n.kind) {
        case NodeKind::ArrayLit:
            return Typedness::Yes;
        case NodeKind::NewExpr: {
            if (!n.children.empty()) {
                std::uint32_t callee = unwrap(n.children[0]);
                if (tree[callee].kind == NodeKind::Identifier &&
                    unit_->node_text(callee) == "Array" && resolves_to_global("Array", callee))
                    return Typedness::Yes;
            }
            return Typedness::Unknown;
        }
        case NodeKind::FunctionExpr:
        case NodeKind::ArrowFunction:
        case NodeKind::ObjectLit:
        case NodeKind::NumberLit:
        case NodeKind::StringLit:
        case NodeKind::BoolLit:
        case NodeKind::NullLit:
        case NodeKind::RegexLit:
        case NodeKind::TemplateLit:
        case NodeKind::ClassExpr:
            return Typedness::No;
        case NodeKind::CallExpr: {
            // results of the native traversal set keep array-ness when the
            // receiver is an array
            if (!n.children.empty()) {
                const Node& callee = tree[unwrap(n.children[0])];
                if (callee.kind == NodeKind::MemberExpr && !callee.has(Computed) &&
                    callee.children.size() == 2 &&
                    tree[callee.children[1]].kind == NodeKind::Identifier &&
                    is_native_hof_name(unit_->node_text(callee.children[1]))) {
                    if (is_array_valued(callee.children[0]) == Typedness::Yes)
                        return Typedness::Yes;
                }
            }
            return Typedness::Unknown;
        }
        case NodeKind::Identifier: {
            bool crossed = false;
            auto b = lookup(unit_->node_text(node), node_scope_[node], &crossed);
            if (!b) return Typedness::Unknown;
            if (crossed) return Typedness::Unknown;
            const Binding& binding = bindings_[*b];
            if (binding.reassigned || binding.mixed_kinds) return Typedness::Unknown;
            if (binding.kind == BindingKind::FunctionDecl) return Typedness::No;
            if (binding.kind != BindingKind::Variable) return Typedness::Unknown;
            if (binding.init_nodes.size() != 1) return Typedness::Unknown;
            switch (classify_init(binding.init_nodes[0])) {
                case InitShape::ArrayLiteral: return Typedness::Yes;
                case InitShape::FunctionLiteral:
                case InitShape::ObjectLiteral:
                case InitShape::PromiseNew:
                case InitShape::OtherLiteral: return Typedness::No;
                default: return Typedness::Unknown;
            }
        }
        default:
            return Typedness::Unknown;
    }
}

}  // namespace fpmine
