//===- cfg.hpp - Per-function control-flow graph ----------------*- C++ -*-===//
//
// Expressions are linearized: every subexpression is its own element, in
// evaluation order, followed by the statement that consumes them. Scope exits
// become explicit Destroy elements and ends of full expressions become
// TempDestroy elements.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/ast.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace viewlint {

struct CfgElement {
  enum class Kind { Expr, Stmt, Destroy, TempDestroy };
  Kind kind;
  /// Expression, statement, destroyed declaration, or temporary-creating
  /// expression.
  const Node *node;
  /// Where the element happens; for Destroy this is the scope's closing brace
  /// or the return statement that leaves the scope.
  SourceLocation loc;
};

struct Terminator {
  enum class Kind { Jump, Branch, Return, Exit };
  Kind kind = Kind::Exit;
  const Node *cond = nullptr;
  /// Jump/Return: succs[0]. Branch: succs[0] true, succs[1] false.
  std::vector<int> succs;
};

struct CfgBlock {
  int id = 0;
  std::vector<CfgElement> elements;
  Terminator term;
  std::vector<int> preds;
};

class Cfg {
public:
  const Node *function = nullptr;
  std::vector<CfgBlock> blocks;
  int entry = 0;
  int exit = 0;
  std::set<std::pair<int, int>> backEdges;

  const CfgBlock &block(int Id) const { return blocks[Id]; }
  bool isBackEdge(int From, int To) const { return backEdges.contains({From, To}); }

  /// `B<id>: [elements] -> succs` per block, in id order.
  std::string dump() const;
};

/// Builds the CFG of a resolved function definition.
Cfg buildCfg(const Node &FunctionDecl);

/// Reverse post-order over the CFG. Successors are visited so that the true
/// branch precedes the false branch in the result.
std::vector<int> topoOrder(const Cfg &G);

std::string describeElement(const CfgElement &E);

} // namespace viewlint
