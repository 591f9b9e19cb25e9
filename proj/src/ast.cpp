//===- ast.cpp - AST utilities --------------------------------------------===//

#include "viewlint/ast.hpp"

#include <sstream>

namespace viewlint {

std::string_view typeKindSpelling(TypeKind K) {
  switch (K) {
  case TypeKind::Void:
    return "void";
  case TypeKind::Bool:
    return "bool";
  case TypeKind::Int:
    return "int";
  case TypeKind::String:
    return "std::string";
  case TypeKind::StringView:
    return "std::string_view";
  case TypeKind::CharPtr:
    return "const char *";
  }
  return "?";
}

std::string typeSpelling(const CvlType &T) {
  std::string S(typeKindSpelling(T.kind));
  if (T.ref == RefKind::ConstRef)
    return "const " + S + " &";
  if (T.ref == RefKind::MutRef)
    return S + " &";
  return S;
}

std::string_view nodeKindName(NodeKind K) {
  switch (K) {
  case NodeKind::FunctionDecl:
    return "FunctionDecl";
  case NodeKind::ParamDecl:
    return "ParamDecl";
  case NodeKind::VarDecl:
    return "VarDecl";
  case NodeKind::Block:
    return "Block";
  case NodeKind::If:
    return "If";
  case NodeKind::While:
    return "While";
  case NodeKind::Return:
    return "Return";
  case NodeKind::ExprStmt:
    return "ExprStmt";
  case NodeKind::Assign:
    return "Assign";
  case NodeKind::Call:
    return "Call";
  case NodeKind::MethodCall:
    return "MethodCall";
  case NodeKind::Convert:
    return "Convert";
  case NodeKind::Literal:
    return "Literal";
  case NodeKind::VarRef:
    return "VarRef";
  case NodeKind::BinaryOp:
    return "BinaryOp";
  case NodeKind::UnaryOp:
    return "UnaryOp";
  case NodeKind::Index:
    return "Index";
  }
  return "?";
}

bool Node::isExpr() const {
  switch (kind) {
  case NodeKind::Call:
  case NodeKind::MethodCall:
  case NodeKind::Convert:
  case NodeKind::Literal:
  case NodeKind::VarRef:
  case NodeKind::BinaryOp:
  case NodeKind::UnaryOp:
  case NodeKind::Index:
    return true;
  default:
    return false;
  }
}

std::vector<const Node *> Node::params() const {
  std::vector<const Node *> Ps;
  for (const auto &C : children)
    if (C->kind == NodeKind::ParamDecl)
      Ps.push_back(C.get());
  return Ps;
}

const Node *Node::body() const {
  if (hasBody && !children.empty() && children.back()->kind == NodeKind::Block)
    return children.back().get();
  return nullptr;
}

const Node *TranslationUnit::findFunction(std::string_view Name) const {
  const Node *First = nullptr;
  for (const auto &F : functions) {
    if (F->name != Name)
      continue;
    if (F->hasBody)
      return F.get();
    if (!First)
      First = F.get();
  }
  return First;
}

// Printing --------------------------------------------------------------------

namespace {

std::string quote(const std::string &S, char Q) {
  std::string Out(1, Q);
  for (char C : S) {
    if (C == Q || C == '\\')
      Out += '\\';
    if (C == '\n') {
      Out += "\\n";
      continue;
    }
    if (C == '\t') {
      Out += "\\t";
      continue;
    }
    if (C == '\0') {
      Out += "\\0";
      continue;
    }
    Out += C;
  }
  Out += Q;
  return Out;
}

std::string printOperand(const Node &E) {
  const Node *N = &E;
  while (N->kind == NodeKind::Convert)
    N = N->children[0].get();
  if (N->kind == NodeKind::BinaryOp)
    return "(" + printExpr(*N) + ")";
  return printExpr(*N);
}

std::string printArgs(const Node &Call, std::size_t First) {
  std::string S = "(";
  for (std::size_t I = First; I < Call.children.size(); ++I) {
    if (I != First)
      S += ", ";
    S += printExpr(*Call.children[I]);
  }
  return S + ")";
}

class StmtPrinter {
public:
  explicit StmtPrinter(std::ostringstream &OS) : OS(OS) {}

  void function(const Node &F) {
    OS << typeKindSpelling(F.type.kind) << ' ' << F.name << '(';
    bool First = true;
    for (const Node *P : F.params()) {
      if (!First)
        OS << ", ";
      First = false;
      OS << typeSpelling(P->type) << ' ' << P->name;
    }
    OS << ')';
    if (const Node *B = F.body()) {
      OS << ' ';
      block(*B, 0);
      OS << '\n';
    } else {
      OS << ";\n";
    }
  }

  void block(const Node &B, int Indent) {
    OS << "{\n";
    for (const auto &S : B.children)
      stmt(*S, Indent + 1);
    pad(Indent);
    OS << '}';
  }

  void stmt(const Node &S, int Indent) {
    pad(Indent);
    switch (S.kind) {
    case NodeKind::Block:
      block(S, Indent);
      OS << '\n';
      return;
    case NodeKind::If:
      OS << "if (" << printExpr(*S.children[0]) << ") ";
      block(*S.children[1], Indent);
      if (S.children.size() > 2) {
        OS << " else ";
        block(*S.children[2], Indent);
      }
      OS << '\n';
      return;
    case NodeKind::While:
      OS << "while (" << printExpr(*S.children[0]) << ") ";
      block(*S.children[1], Indent);
      OS << '\n';
      return;
    default:
      OS << printStmtHeader(S) << '\n';
      return;
    }
  }

private:
  void pad(int Indent) {
    for (int I = 0; I < Indent; ++I)
      OS << "  ";
  }
  std::ostringstream &OS;
};

} // namespace

std::string printExpr(const Node &E) {
  switch (E.kind) {
  case NodeKind::Literal:
    switch (E.literalKind) {
    case LiteralKind::Int:
      return std::to_string(E.intValue);
    case LiteralKind::Bool:
      return E.intValue ? "true" : "false";
    case LiteralKind::Char:
      return quote(std::string(1, static_cast<char>(E.intValue)), '\'');
    case LiteralKind::String:
      return quote(E.stringValue, '"');
    }
    break;
  case NodeKind::VarRef:
    return E.name;
  case NodeKind::Convert:
    return printExpr(*E.children[0]);
  case NodeKind::Call:
    return E.name + printArgs(E, 0);
  case NodeKind::MethodCall:
    if (E.name == "operator=" || E.name == "operator+=")
      return printExpr(*E.children[0]) + " " + E.name.substr(8) + " " +
             printExpr(*E.children[1]);
    return printOperand(*E.children[0]) + "." + E.name + printArgs(E, 1);
  case NodeKind::Index:
    return printOperand(*E.children[0]) + "[" + printExpr(*E.children[1]) + "]";
  case NodeKind::BinaryOp:
    return printOperand(*E.children[0]) + " " + E.name + " " +
           printOperand(*E.children[1]);
  case NodeKind::UnaryOp:
    return E.name + printOperand(*E.children[0]);
  default:
    break;
  }
  return "<" + std::string(nodeKindName(E.kind)) + ">";
}

std::string printStmtHeader(const Node &S) {
  switch (S.kind) {
  case NodeKind::VarDecl: {
    std::string Out = typeSpelling(S.type) + " " + S.name;
    if (S.initStyle == InitStyle::Paren)
      Out += "(" + printExpr(*S.children[0]) + ")";
    else if (S.initStyle == InitStyle::Equals)
      Out += " = " + printExpr(*S.children[0]);
    return Out + ";";
  }
  case NodeKind::Assign:
    return printExpr(*S.children[0]) + " " + S.name + " " +
           printExpr(*S.children[1]) + ";";
  case NodeKind::ExprStmt:
    return printExpr(*S.children[0]) + ";";
  case NodeKind::Return:
    if (S.children.empty())
      return "return;";
    return "return " + printExpr(*S.children[0]) + ";";
  case NodeKind::If:
    return "if (" + printExpr(*S.children[0]) + ")";
  case NodeKind::While:
    return "while (" + printExpr(*S.children[0]) + ")";
  case NodeKind::Block:
    return "{...}";
  default:
    return printExpr(S);
  }
}

std::string printAst(const TranslationUnit &TU) {
  std::ostringstream OS;
  StmtPrinter P(OS);
  for (const auto &F : TU.functions)
    P.function(*F);
  return OS.str();
}

bool structurallyEqual(const Node &A, const Node &B) {
  if (A.kind != B.kind || A.name != B.name || A.type != B.type ||
      A.children.size() != B.children.size() || A.initStyle != B.initStyle ||
      A.hasBody != B.hasBody)
    return false;
  if (A.kind == NodeKind::Literal) {
    bool BothIntLike = A.literalKind != LiteralKind::String &&
                       B.literalKind != LiteralKind::String;
    if (A.literalKind != B.literalKind && !BothIntLike)
      return false;
    if (A.intValue != B.intValue || A.stringValue != B.stringValue)
      return false;
  }
  for (std::size_t I = 0; I < A.children.size(); ++I)
    if (!structurallyEqual(*A.children[I], *B.children[I]))
      return false;
  return true;
}

bool structurallyEqual(const TranslationUnit &A, const TranslationUnit &B) {
  if (A.functions.size() != B.functions.size())
    return false;
  for (std::size_t I = 0; I < A.functions.size(); ++I)
    if (!structurallyEqual(*A.functions[I], *B.functions[I]))
      return false;
  return true;
}

std::string dumpTree(const Node &N) {
  std::string S = "(" + std::string(nodeKindName(N.kind));
  if (!N.name.empty())
    S += " " + N.name;
  if (N.kind == NodeKind::Literal)
    S += " " + printExpr(N);
  for (const auto &C : N.children)
    S += " " + dumpTree(*C);
  return S + ")";
}

} // namespace viewlint
