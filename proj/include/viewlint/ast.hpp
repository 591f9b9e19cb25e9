//===- ast.hpp - AST of the analyzed language -------------------*- C++ -*-===//
//
// A single node type with a kind tag. Children layout per kind:
//
//   FunctionDecl  params..., [Block body]      (body absent for prototypes)
//   ParamDecl     -
//   VarDecl       [init]
//   Block         statements...
//   If            cond, then Block, [else Block]
//   While         cond, body Block
//   Return        [value]
//   ExprStmt      expr
//   Assign        target VarRef, value          (name is "=" or "+=")
//   Call          args...                       (name is the callee)
//   MethodCall    receiver, args...             (name is the method)
//   Convert       operand                       (String -> StringView)
//   Literal       -
//   VarRef        -
//   BinaryOp      lhs, rhs                      (name is the operator)
//   UnaryOp       operand                       (name is "!" or "-")
//   Index         base, index
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/source.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace viewlint {

struct MethodInfo;

enum class TypeKind { Void, Bool, Int, String, StringView, CharPtr };
enum class RefKind { None, ConstRef, MutRef };

struct CvlType {
  TypeKind kind = TypeKind::Void;
  RefKind ref = RefKind::None;

  friend bool operator==(const CvlType &, const CvlType &) = default;
  bool isRef() const { return ref != RefKind::None; }
  /// Object kinds whose lifetime the checkers track.
  bool isTracked() const {
    return kind == TypeKind::String || kind == TypeKind::StringView ||
           kind == TypeKind::CharPtr;
  }
};

std::string_view typeKindSpelling(TypeKind K);
std::string typeSpelling(const CvlType &T);

enum class NodeKind {
  FunctionDecl,
  ParamDecl,
  VarDecl,
  Block,
  If,
  While,
  Return,
  ExprStmt,
  Assign,
  Call,
  MethodCall,
  Convert,
  Literal,
  VarRef,
  BinaryOp,
  UnaryOp,
  Index,
};

std::string_view nodeKindName(NodeKind K);

enum class LiteralKind { Int, Bool, String, Char };
enum class InitStyle { None, Paren, Equals };

struct Node {
  NodeKind kind;
  /// Unique within a translation unit, assigned in creation order.
  unsigned id = 0;
  SourceRange range;
  /// Declared type for declarations, value type for expressions, return type
  /// for functions.
  CvlType type;
  /// Declared name, referenced name, callee, method or operator spelling.
  std::string name;
  std::vector<std::unique_ptr<Node>> children;

  LiteralKind literalKind = LiteralKind::Int;
  std::int64_t intValue = 0;
  std::string stringValue;

  InitStyle initStyle = InitStyle::None;
  bool hasBody = false;
  /// Block synthesized around a non-block branch or loop body.
  bool implicitBlock = false;

  // Filled by resolve().
  const Node *decl = nullptr;
  const MethodInfo *method = nullptr;
  bool external = false;
  /// The expression materializes a temporary object that is destroyed at the
  /// end of the enclosing full expression.
  bool temporary = false;

  const SourceLocation &loc() const { return range.begin; }
  bool isExpr() const;

  // FunctionDecl helpers.
  std::vector<const Node *> params() const;
  const Node *body() const;
};

using NodePtr = std::unique_ptr<Node>;

struct TranslationUnit {
  std::string file;
  std::vector<NodePtr> functions;
  unsigned nextNodeId = 0;

  NodePtr makeNode(NodeKind K, SourceRange R) {
    auto N = std::make_unique<Node>();
    N->kind = K;
    N->id = nextNodeId++;
    N->range = std::move(R);
    return N;
  }

  /// The definition of \p Name if one exists, else its first declaration.
  const Node *findFunction(std::string_view Name) const;
};

/// Renders the AST back to source text. Converts and resolver rewrites are
/// printed in their source form.
std::string printAst(const TranslationUnit &TU);
std::string printExpr(const Node &E);
std::string printStmtHeader(const Node &S);

/// Structural equality ignoring ids, locations and resolution results.
bool structurallyEqual(const Node &A, const Node &B);
bool structurallyEqual(const TranslationUnit &A, const TranslationUnit &B);

/// S-expression style dump used by tests and debugging.
std::string dumpTree(const Node &N);

} // namespace viewlint
