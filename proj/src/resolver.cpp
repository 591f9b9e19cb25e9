//===- resolver.cpp - Name resolution and implicit conversions ------------===//

#include "viewlint/method_tables.hpp"
#include "viewlint/parser.hpp"

#include <map>

namespace viewlint {

namespace {

bool isIntLike(TypeKind K) { return K == TypeKind::Int || K == TypeKind::Bool; }

class Resolver {
public:
  explicit Resolver(TranslationUnit &TU) : TU(TU) {}

  std::vector<FrontendError> run() {
    checkFunctionTable();
    for (auto &F : TU.functions)
      resolveFunction(*F);
    return std::move(Errors);
  }

private:
  struct Failure {};

  void error(const SourceLocation &L, std::string Msg) {
    Errors.push_back({FrontendErrorKind::Resolve, L, std::move(Msg)});
  }
  [[noreturn]] void fail(const SourceLocation &L, std::string Msg) {
    error(L, std::move(Msg));
    throw Failure{};
  }

  static bool sameSignature(const Node &A, const Node &B) {
    auto PA = A.params(), PB = B.params();
    if (A.type != B.type || PA.size() != PB.size())
      return false;
    for (std::size_t I = 0; I < PA.size(); ++I)
      if (PA[I]->type != PB[I]->type)
        return false;
    return true;
  }

  void checkFunctionTable() {
    std::map<std::string, const Node *, std::less<>> Seen;
    std::map<std::string, const Node *, std::less<>> Defined;
    for (const auto &F : TU.functions) {
      auto [It, Inserted] = Seen.emplace(F->name, F.get());
      if (!Inserted && !sameSignature(*It->second, *F))
        error(F->loc(), "conflicting declaration of '" + F->name + "'");
      if (F->hasBody && !Defined.emplace(F->name, F.get()).second)
        error(F->loc(), "redefinition of '" + F->name + "'");
    }
  }

  // Scopes --------------------------------------------------------------------

  const Node *lookup(const std::string &Name) const {
    for (auto It = Scopes.rbegin(); It != Scopes.rend(); ++It)
      if (auto F = It->find(Name); F != It->end())
        return F->second;
    return nullptr;
  }
  void declare(const Node &D) {
    if (!Scopes.back().emplace(D.name, &D).second)
      error(D.loc(), "redeclaration of '" + D.name + "'");
  }

  // Declarations and statements -------------------------------------------

  void resolveFunction(Node &F) {
    CurrentFunction = &F;
    Scopes.clear();
    Scopes.emplace_back();
    for (const Node *P : F.params())
      declare(*P);
    for (auto &C : F.children)
      if (C->kind == NodeKind::Block)
        resolveBlock(*C);
    Scopes.clear();
  }

  void resolveBlock(Node &B) {
    Scopes.emplace_back();
    for (auto &S : B.children) {
      try {
        resolveStmt(S);
      } catch (Failure &) {
      }
    }
    Scopes.pop_back();
  }

  void resolveStmt(NodePtr &Slot) {
    Node &S = *Slot;
    switch (S.kind) {
    case NodeKind::Block:
      resolveBlock(S);
      return;
    case NodeKind::VarDecl:
      if (!S.children.empty()) {
        resolveExpr(S.children[0]);
        coerce(S.children[0], S.type.kind, /*Construct=*/true);
      } else if (S.initStyle != InitStyle::None) {
        fail(S.loc(), "missing initializer");
      }
      declare(S);
      return;
    case NodeKind::Assign:
      resolveAssign(Slot);
      return;
    case NodeKind::ExprStmt:
      resolveExpr(S.children[0]);
      return;
    case NodeKind::Return: {
      TypeKind Ret = CurrentFunction->type.kind;
      if (S.children.empty()) {
        if (Ret != TypeKind::Void)
          fail(S.loc(), "non-void function '" + CurrentFunction->name +
                            "' must return a value");
        return;
      }
      if (Ret == TypeKind::Void)
        fail(S.loc(), "void function '" + CurrentFunction->name +
                          "' cannot return a value");
      resolveExpr(S.children[0]);
      coerce(S.children[0], Ret, /*Construct=*/false);
      return;
    }
    case NodeKind::If:
    case NodeKind::While:
      resolveCondition(S.children[0]);
      for (std::size_t I = 1; I < S.children.size(); ++I)
        resolveBlock(*S.children[I]);
      return;
    default:
      fail(S.loc(), "unexpected " + std::string(nodeKindName(S.kind)) +
                        " in statement position");
    }
  }

  void resolveCondition(NodePtr &E) {
    TypeKind K = resolveExpr(E);
    if (!isIntLike(K))
      fail(E->loc(), "condition of type '" + std::string(typeKindSpelling(K)) +
                         "' is not a boolean or integer");
  }

  void resolveAssign(NodePtr &Slot) {
    Node &A = *Slot;
    Node &Target = *A.children[0];
    const Node *D = lookup(Target.name);
    if (!D)
      fail(Target.loc(), "use of undeclared identifier '" + Target.name + "'");
    Target.decl = D;
    Target.type = {D->type.kind, RefKind::None};
    TypeKind K = D->type.kind;

    if (K == TypeKind::String) {
      // s = e and s += e are member calls on the string.
      TypeKind V = resolveExpr(A.children[1]);
      if (V != TypeKind::String && V != TypeKind::StringView && V != TypeKind::CharPtr)
        fail(A.children[1]->loc(), "cannot assign '" +
                                       std::string(typeKindSpelling(V)) +
                                       "' to 'std::string'");
      auto Call = TU.makeNode(NodeKind::MethodCall, A.range);
      Call->name = A.name == "=" ? "operator=" : "operator+=";
      Call->method = lookupMethod(TypeKind::String, Call->name);
      Call->type = {TypeKind::Void, RefKind::None};
      Call->children = std::move(A.children);
      auto Stmt = TU.makeNode(NodeKind::ExprStmt, A.range);
      Stmt->children.push_back(std::move(Call));
      Slot = std::move(Stmt);
      return;
    }

    if (A.name == "+=") {
      if (!isIntLike(K))
        fail(A.loc(), "'+=' requires an integer or string target");
      resolveExpr(A.children[1]);
      coerce(A.children[1], TypeKind::Int, false);
      auto Load = TU.makeNode(NodeKind::VarRef, Target.range);
      Load->name = Target.name;
      Load->decl = D;
      Load->type = Target.type;
      auto Sum = TU.makeNode(NodeKind::BinaryOp, A.range);
      Sum->name = "+";
      Sum->type = {TypeKind::Int, RefKind::None};
      Sum->children.push_back(std::move(Load));
      Sum->children.push_back(std::move(A.children[1]));
      A.children[1] = std::move(Sum);
      A.name = "=";
      return;
    }

    resolveExpr(A.children[1]);
    coerce(A.children[1], K, /*Construct=*/false);
  }

  // Expressions ---------------------------------------------------------------

  /// Converts \p E in place to \p Target, inserting a Convert node for
  /// string-to-view flows. \p Construct allows explicit constructions that
  /// are only legal in a declaration (std::string from a view).
  void coerce(NodePtr &E, TypeKind Target, bool Construct) {
    TypeKind From = E->type.kind;
    if (From == Target)
      return;
    if (isIntLike(From) && isIntLike(Target))
      return;
    if (From == TypeKind::String && Target == TypeKind::StringView) {
      auto C = TU.makeNode(NodeKind::Convert, E->range);
      C->type = {TypeKind::StringView, RefKind::None};
      C->children.push_back(std::move(E));
      E = std::move(C);
      return;
    }
    if (From == TypeKind::CharPtr &&
        (Target == TypeKind::String || Target == TypeKind::StringView))
      return;
    if (Construct && From == TypeKind::StringView && Target == TypeKind::String)
      return;
    fail(E->loc(), "cannot convert '" + std::string(typeKindSpelling(From)) +
                       "' to '" + std::string(typeKindSpelling(Target)) + "'");
  }

  static bool isLvalueOf(const Node &E, TypeKind K) {
    return E.kind == NodeKind::VarRef && E.type.kind == K;
  }

  void resolveArg(NodePtr &Arg, const CvlType &Param, const std::string &Callee) {
    resolveExpr(Arg);
    if (Param.ref == RefKind::MutRef) {
      if (!isLvalueOf(*Arg, Param.kind))
        fail(Arg->loc(), "argument to non-const reference parameter of '" + Callee +
                             "' must be a variable of type '" +
                             std::string(typeKindSpelling(Param.kind)) + "'");
      return;
    }
    coerce(Arg, Param.kind, false);
    // A const reference to a non-lvalue binds to a materialized temporary.
    if (Param.ref == RefKind::ConstRef && !isLvalueOf(*Arg, Param.kind) &&
        (Param.kind == TypeKind::String || Param.kind == TypeKind::StringView))
      Arg->temporary = true;
  }

  void resolveMethodArg(NodePtr &Arg, ArgKind K, const std::string &Method) {
    resolveExpr(Arg);
    TypeKind T = Arg->type.kind;
    switch (K) {
    case ArgKind::Int:
      coerce(Arg, TypeKind::Int, false);
      return;
    case ArgKind::StringLike:
      if (T != TypeKind::String && T != TypeKind::StringView && T != TypeKind::CharPtr)
        fail(Arg->loc(), "argument of '" + Method + "' must be a string");
      return;
    case ArgKind::View:
      coerce(Arg, TypeKind::StringView, false);
      return;
    case ArgKind::StringRef:
      if (!isLvalueOf(*Arg, TypeKind::String))
        fail(Arg->loc(), "argument of '" + Method + "' must be a string variable");
      return;
    case ArgKind::ViewRef:
      if (!isLvalueOf(*Arg, TypeKind::StringView))
        fail(Arg->loc(), "argument of '" + Method + "' must be a view variable");
      return;
    }
  }

  TypeKind resolveExpr(NodePtr &Slot) {
    Node &E = *Slot;
    TypeKind K = computeType(E);
    E.type = {K, RefKind::None};
    return K;
  }

  TypeKind computeType(Node &E) {
    switch (E.kind) {
    case NodeKind::Literal:
      switch (E.literalKind) {
      case LiteralKind::Int:
      case LiteralKind::Char:
        return TypeKind::Int;
      case LiteralKind::Bool:
        return TypeKind::Bool;
      case LiteralKind::String:
        return TypeKind::CharPtr;
      }
      break;
    case NodeKind::VarRef: {
      const Node *D = lookup(E.name);
      if (!D)
        fail(E.loc(), "use of undeclared identifier '" + E.name + "'");
      E.decl = D;
      return D->type.kind;
    }
    case NodeKind::Call:
      return resolveCall(E);
    case NodeKind::MethodCall:
      return resolveMethodCall(E);
    case NodeKind::Index: {
      TypeKind Base = resolveExpr(E.children[0]);
      if (Base == TypeKind::String || Base == TypeKind::StringView)
        E.method = lookupMethod(Base, "operator[]");
      else if (Base != TypeKind::CharPtr)
        fail(E.loc(), "subscripted value of type '" +
                          std::string(typeKindSpelling(Base)) +
                          "' is not a string, view or pointer");
      resolveExpr(E.children[1]);
      coerce(E.children[1], TypeKind::Int, false);
      return TypeKind::Int;
    }
    case NodeKind::UnaryOp: {
      TypeKind K = resolveExpr(E.children[0]);
      if (!isIntLike(K))
        fail(E.loc(), "invalid operand to unary '" + E.name + "'");
      return E.name == "!" ? TypeKind::Bool : TypeKind::Int;
    }
    case NodeKind::BinaryOp:
      return resolveBinary(E);
    case NodeKind::Convert:
      resolveExpr(E.children[0]);
      return TypeKind::StringView;
    default:
      break;
    }
    fail(E.loc(), "unexpected " + std::string(nodeKindName(E.kind)));
  }

  TypeKind resolveCall(Node &E) {
    const Node *Callee = TU.findFunction(E.name);
    if (!Callee)
      fail(E.loc(), "call to undeclared function '" + E.name + "'");
    E.decl = Callee;
    E.external = !Callee->hasBody;
    auto Params = Callee->params();
    if (Params.size() != E.children.size())
      fail(E.loc(), "'" + E.name + "' expects " + std::to_string(Params.size()) +
                        " argument(s), " + std::to_string(E.children.size()) +
                        " given");
    for (std::size_t I = 0; I < Params.size(); ++I)
      resolveArg(E.children[I], Params[I]->type, E.name);
    TypeKind R = Callee->type.kind;
    if (R == TypeKind::String || R == TypeKind::StringView)
      E.temporary = true;
    return R;
  }

  TypeKind resolveMethodCall(Node &E) {
    TypeKind Recv = resolveExpr(E.children[0]);
    if (Recv != TypeKind::String && Recv != TypeKind::StringView)
      fail(E.loc(), "member call '" + E.name + "' on non-class type '" +
                        std::string(typeKindSpelling(Recv)) + "'");
    const MethodInfo *M = lookupMethod(Recv, E.name);
    if (!M)
      fail(E.loc(), "no member named '" + E.name + "' in '" +
                        std::string(typeKindSpelling(Recv)) + "'");
    E.method = M;
    int NArgs = static_cast<int>(E.children.size()) - 1;
    if (NArgs < M->minArgs || NArgs > M->maxArgs)
      fail(E.loc(), "'" + E.name + "' called with " + std::to_string(NArgs) +
                        " argument(s)");
    for (int I = 0; I < NArgs; ++I)
      resolveMethodArg(E.children[I + 1], M->argKind(I), E.name);
    if (M->result == TypeKind::StringView || M->result == TypeKind::String)
      E.temporary = true;
    return M->result;
  }

  TypeKind resolveBinary(Node &E) {
    TypeKind L = resolveExpr(E.children[0]);
    TypeKind R = resolveExpr(E.children[1]);
    auto Bad = [&]() -> TypeKind {
      fail(E.loc(), "invalid operands to '" + E.name + "' ('" +
                        std::string(typeKindSpelling(L)) + "' and '" +
                        std::string(typeKindSpelling(R)) + "')");
    };
    auto StringLike = [](TypeKind K) {
      return K == TypeKind::String || K == TypeKind::StringView || K == TypeKind::CharPtr;
    };
    if (isIntLike(L) && isIntLike(R)) {
      if (E.name == "+" || E.name == "-")
        return TypeKind::Int;
      return TypeKind::Bool;
    }
    if (E.name == "+") {
      bool Ok = (L == TypeKind::String && (R == TypeKind::String || R == TypeKind::CharPtr)) ||
                (R == TypeKind::String && L == TypeKind::CharPtr);
      if (!Ok)
        return Bad();
      E.method = lookupOperator("+", TypeKind::String);
      E.temporary = true;
      return TypeKind::String;
    }
    if (E.name == "-")
      return Bad();
    if (!StringLike(L) || !StringLike(R) ||
        (L == TypeKind::CharPtr && R == TypeKind::CharPtr))
      return Bad();
    if (L == TypeKind::StringView || R == TypeKind::StringView) {
      coerce(E.children[0], TypeKind::StringView, false);
      coerce(E.children[1], TypeKind::StringView, false);
      E.method = lookupOperator(E.name, TypeKind::StringView);
    } else {
      E.method = lookupOperator(E.name, TypeKind::String);
    }
    return TypeKind::Bool;
  }

  TranslationUnit &TU;
  const Node *CurrentFunction = nullptr;
  std::vector<std::map<std::string, const Node *>> Scopes;
  std::vector<FrontendError> Errors;
};

} // namespace

std::vector<FrontendError> resolve(TranslationUnit &TU) {
  return Resolver(TU).run();
}

} // namespace viewlint
