#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fpmine/source.hpp"

namespace fpmine {

enum class BindingKind : std::uint8_t {
    FunctionDecl,
    Variable,
    Parameter,
    Class,
    Import,
    Unresolved,
};

// Shape of a declarator initializer. `OtherLiteral` is definitely neither a
// function nor an array; `Opaque` (calls, members, identifiers, ...) yields
// Unknown.
enum class InitShape : std::uint8_t {
    FunctionLiteral,
    ArrayLiteral,
    PromiseNew,
    ObjectLiteral,
    OtherLiteral,
    Opaque,
    None,
};

enum class Typedness : std::uint8_t { Yes, No, Unknown };

struct Binding {
    std::string_view name;
    BindingKind kind = BindingKind::Variable;
    Span decl_span;
    std::uint32_t scope = 0;
    bool reassigned = false;
    bool mixed_kinds = false;             // e.g. `var x` + `function x`
    std::vector<std::uint32_t> init_nodes;  // direct-identifier declarator inits
};

struct Scope {
    enum class Kind : std::uint8_t { Module, Function, Block, Catch, ClassName, FunctionName };
    Kind kind = Kind::Block;
    std::uint32_t parent = kNoNode;
    std::uint32_t owner_node = kNoNode;
    bool poisoned = false;  // `with` body or direct eval in scope
    std::unordered_map<std::string_view, std::uint32_t> bindings;
};

// Lexical scopes plus conservative typedness queries for one SourceUnit.
// Immutable after build_scopes; all queries are const and thread-safe.
// Holds views into the unit's text, so the unit must outlive the table.
class ScopeTable {
public:
    const Scope& scope(std::uint32_t i) const { return scopes_[i]; }
    std::size_t scope_count() const { return scopes_.size(); }
    std::uint32_t scope_of_node(std::uint32_t node) const { return node_scope_[node]; }

    const Binding& binding(std::uint32_t i) const { return bindings_[i]; }

    // Resolves an identifier node through the scope chain. nullopt = global.
    std::optional<std::uint32_t> resolve(std::uint32_t ident_node) const;

    // True iff no enclosing scope declares `name` at the given node.
    bool resolves_to_global(std::string_view name, std::uint32_t at_node) const;

    Typedness is_function_valued(std::uint32_t expr_node) const;
    Typedness is_array_valued(std::uint32_t expr_node) const;

    // Function scope introduced by a function-like node.
    std::uint32_t function_scope(std::uint32_t fn_node) const {
        return fn_scopes_.at(fn_node);
    }

private:
    friend class ScopeBuilder;
    friend ScopeTable build_scopes(const SourceUnit& unit);

    const SourceUnit* unit_ = nullptr;
    std::vector<Scope> scopes_;
    std::vector<Binding> bindings_;
    std::vector<std::uint32_t> node_scope_;
    std::unordered_map<std::uint32_t, std::uint32_t> fn_scopes_;

    std::optional<std::uint32_t> lookup(std::string_view name, std::uint32_t from_scope,
                                        bool* crossed_poisoned) const;
    InitShape classify_init(std::uint32_t node) const;
    std::uint32_t unwrap(std::uint32_t node) const;
};

ScopeTable build_scopes(const SourceUnit& unit);

// Property names treated as the native array-traversal set.
bool is_native_hof_name(std::string_view name);

}  // namespace fpmine
