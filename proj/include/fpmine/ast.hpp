#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fpmine/span.hpp"

namespace fpmine {

enum class NodeKind : std::uint8_t {
    Program,

    // Statements and declarations
    VarStatement,
    VarDeclarator,
    FunctionDecl,
    ClassDecl,
    MethodDef,
    FieldDef,
    StaticBlock,
    Block,
    IfStatement,
    ForStatement,
    ForInStatement,
    ForOfStatement,
    WhileStatement,
    DoWhileStatement,
    SwitchStatement,
    SwitchCase,
    TryStatement,
    CatchClause,
    ReturnStatement,
    ThrowStatement,
    BreakStatement,
    ContinueStatement,
    LabeledStatement,
    ExpressionStatement,
    EmptyStatement,
    DebuggerStatement,
    WithStatement,
    ImportDecl,
    ImportSpec,
    ExportDecl,
    TsInterfaceDecl,
    TsTypeAliasDecl,
    TsEnumDecl,
    TsEnumMember,
    TsModuleDecl,
    Hole,

    // Binding patterns
    ObjectPattern,
    PatternProp,
    ArrayPattern,
    RestElement,
    AssignPattern,
    Param,

    // Expressions
    Identifier,
    PrivateRef,
    NumberLit,
    StringLit,
    BoolLit,
    NullLit,
    RegexLit,
    TemplateLit,
    TaggedTemplate,
    ArrayLit,
    ObjectLit,
    ObjectProp,
    SpreadElement,
    SpreadAssignment,
    FunctionExpr,
    ArrowFunction,
    ClassExpr,
    CallExpr,
    NewExpr,
    MemberExpr,
    ConditionalExpr,
    BinaryExpr,
    LogicalExpr,
    AssignExpr,
    UnaryExpr,
    UpdateExpr,
    SequenceExpr,
    ParenExpr,
    YieldExpr,
    AwaitExpr,
    TsAsExpr,
    TsNonNull,
    TsTypeAssertion,
    ImportExpr,
    MetaProperty,
    Decorator,

    // JSX
    JsxElement,
    JsxFragment,
    JsxExprContainer,
    JsxAttribute,
    JsxSpreadAttribute,
};

namespace node_flags {
constexpr std::uint32_t Async = 1u << 0;
constexpr std::uint32_t Generator = 1u << 1;
constexpr std::uint32_t HasName = 1u << 2;
constexpr std::uint32_t Static = 1u << 3;
constexpr std::uint32_t Getter = 1u << 4;
constexpr std::uint32_t Setter = 1u << 5;
constexpr std::uint32_t Computed = 1u << 6;
constexpr std::uint32_t Shorthand = 1u << 7;
constexpr std::uint32_t HasInit = 1u << 8;
constexpr std::uint32_t Default = 1u << 9;
constexpr std::uint32_t HasParam = 1u << 10;
constexpr std::uint32_t Rest = 1u << 11;
constexpr std::uint32_t Optional = 1u << 12;
constexpr std::uint32_t ExprBody = 1u << 13;
constexpr std::uint32_t Prefix = 1u << 14;
constexpr std::uint32_t Delegate = 1u << 15;
constexpr std::uint32_t OptionalChain = 1u << 16;
constexpr std::uint32_t AwaitedFor = 1u << 17;
constexpr std::uint32_t DeclLet = 1u << 18;
constexpr std::uint32_t DeclConst = 1u << 19;
constexpr std::uint32_t Ambient = 1u << 20;   // `declare` / no-body overload
constexpr std::uint32_t HasBody = 1u << 21;
constexpr std::uint32_t HasHeritage = 1u << 22;
}  // namespace node_flags

constexpr std::uint32_t kNoNode = 0xFFFFFFFFu;

// Word operators stored in Node::op alongside TokenKind values, which stay
// below 128.
namespace op_code {
constexpr std::uint16_t Typeof = 200;
constexpr std::uint16_t Void = 201;
constexpr std::uint16_t Delete = 202;
constexpr std::uint16_t In = 203;
constexpr std::uint16_t Instanceof = 204;
constexpr std::uint16_t As = 205;
constexpr std::uint16_t Satisfies = 206;
}  // namespace op_code

struct Node {
    NodeKind kind = NodeKind::Program;
    std::uint32_t flags = 0;
    std::uint16_t op = 0;
    Span span;
    std::uint32_t parent = kNoNode;
    std::vector<std::uint32_t> children;

    bool has(std::uint32_t f) const { return (flags & f) != 0; }
};

// Arena of nodes; index 0 is the Program root after a successful parse.
class Tree {
public:
    std::uint32_t add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }
    Node& operator[](std::uint32_t i) { return nodes_[i]; }
    const Node& operator[](std::uint32_t i) const { return nodes_[i]; }
    std::size_t size() const { return nodes_.size(); }
    std::uint32_t root() const { return 0; }

private:
    std::vector<Node> nodes_;
};

inline bool is_function_like(NodeKind k) {
    return k == NodeKind::FunctionDecl || k == NodeKind::FunctionExpr ||
           k == NodeKind::ArrowFunction || k == NodeKind::MethodDef ||
           k == NodeKind::StaticBlock;
}

// For function-like nodes: index of the name child (FunctionDecl/Expr with
// HasName), or kNoNode.
inline std::uint32_t function_name_child(const Tree& t, std::uint32_t fn) {
    const Node& n = t[fn];
    if ((n.kind == NodeKind::FunctionDecl || n.kind == NodeKind::FunctionExpr) &&
        n.has(node_flags::HasName))
        return n.children.empty() ? kNoNode : n.children[0];
    return kNoNode;
}

// Parameter children of a function-like node, in order.
inline std::vector<std::uint32_t> function_params(const Tree& t, std::uint32_t fn) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c : t[fn].children)
        if (t[c].kind == NodeKind::Param) out.push_back(c);
    return out;
}

// Body child of a function-like node (Block, or the expression of an arrow
// with ExprBody), or kNoNode for ambient/overload declarations.
inline std::uint32_t function_body(const Tree& t, std::uint32_t fn) {
    const Node& n = t[fn];
    if (!n.has(node_flags::HasBody)) return kNoNode;
    return n.children.empty() ? kNoNode : n.children.back();
}

// Preorder traversal. The callback returns false to skip a subtree.
template <typename Fn>
void walk(const Tree& t, std::uint32_t idx, Fn&& fn) {
    if (idx == kNoNode) return;
    if (!fn(idx)) return;
    for (std::uint32_t c : t[idx].children) walk(t, c, fn);
}

}  // namespace fpmine
