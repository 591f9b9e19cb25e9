//===- interpreter.cpp - Concrete reference interpreter -------------------===//

#include "oracle.hpp"

#include "viewlint/method_tables.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

using namespace viewlint;

namespace oracle {

namespace {

struct Value {
  TypeKind kind = TypeKind::Void;
  std::int64_t i = 0;
  /// String object id.
  int obj = -1;
  /// Buffer a view or pointer refers to; -1 for literals and empty views.
  int buf = -1;
};

using Cell = std::shared_ptr<Value>;

struct StringObj {
  int buf;
  /// Frame instance that destroys it; -1 when owned by the outside caller.
  int owner;
  bool alive = true;
};

struct Stop {
  Finding f;
};

struct Frame {
  int id;
  const Node *fn;
  std::vector<std::vector<std::pair<const Node *, Cell>>> scopes;
  std::vector<int> temps;
  std::vector<int> ownedParams;
};

struct Return {
  Value v;
};

class Interp {
public:
  explicit Interp(const TranslationUnit &TU, std::set<const Node *> &Entered)
      : TU(TU), Entered(Entered) {}

  void runTopLevel(const Node &F, const std::vector<std::int64_t> &Inputs) {
    Active = {&F};
    Frame Fr{nextFrame++, &F, {}, {}, {}};
    Fr.scopes.emplace_back();
    std::size_t K = 0;
    for (const Node *P : F.params()) {
      Value V;
      V.kind = P->type.kind;
      switch (P->type.kind) {
      case TypeKind::Int:
      case TypeKind::Bool:
        V.i = Inputs[K++];
        break;
      case TypeKind::String:
        V.obj = newString(P->type.isRef() ? -1 : Fr.id);
        if (!P->type.isRef())
          Fr.ownedParams.push_back(V.obj);
        break;
      default:
        break;
      }
      Fr.scopes.back().push_back({P, std::make_shared<Value>(V)});
    }
    runBody(Fr);
  }

private:
  // Objects ----------------------------------------------------------------

  int newBuffer() {
    Freed.push_back(false);
    return static_cast<int>(Freed.size()) - 1;
  }
  int newString(int Owner) {
    Objs.push_back({newBuffer(), Owner});
    return static_cast<int>(Objs.size()) - 1;
  }
  void destroy(int Obj) {
    Freed[Objs[Obj].buf] = true;
    Objs[Obj].alive = false;
  }
  void invalidate(int Obj) {
    Freed[Objs[Obj].buf] = true;
    Objs[Obj].buf = newBuffer();
  }
  bool dangling(const Value &V) const { return V.buf >= 0 && Freed[V.buf]; }

  [[noreturn]] void report(const char *Cat, const Node &At) {
    throw Stop{{Cat, At.loc().line}};
  }
  void checkUse(const Value &V, const Node &At) {
    if ((V.kind == TypeKind::StringView || V.kind == TypeKind::CharPtr) && dangling(V))
      report("UseAfterFree", At);
  }

  // Frames -------------------------------------------------------------------

  Cell lookup(Frame &F, const Node *D) {
    for (auto S = F.scopes.rbegin(); S != F.scopes.rend(); ++S)
      for (auto &[Decl, C] : *S)
        if (Decl == D)
          return C;
    throw std::logic_error("oracle: unbound variable " + D->name);
  }

  void endFullExpr(Frame &F) {
    for (auto It = F.temps.rbegin(); It != F.temps.rend(); ++It)
      destroy(*It);
    F.temps.clear();
  }

  void popScope(Frame &F) {
    auto &S = F.scopes.back();
    for (auto It = S.rbegin(); It != S.rend(); ++It)
      if (It->first->kind == NodeKind::VarDecl && It->first->type.kind == TypeKind::String)
        destroy(It->second->obj);
    F.scopes.pop_back();
  }

  /// Runs the body; returns the returned value.
  Value runBody(Frame &F) {
    Value Result;
    try {
      execBlock(F, *F.fn->body());
    } catch (Return &R) {
      Result = R.v;
    }
    while (!F.scopes.empty())
      popScope(F);
    for (auto It = F.ownedParams.rbegin(); It != F.ownedParams.rend(); ++It)
      destroy(*It);
    return Result;
  }

  // Statements ---------------------------------------------------------------

  void execBlock(Frame &F, const Node &B) {
    F.scopes.emplace_back();
    for (const auto &S : B.children)
      exec(F, *S);
    popScope(F);
  }

  void exec(Frame &F, const Node &S) {
    switch (S.kind) {
    case NodeKind::Block:
      execBlock(F, S);
      return;
    case NodeKind::VarDecl: {
      Value V;
      V.kind = S.type.kind;
      if (!S.children.empty()) {
        Value Init = eval(F, *S.children[0]);
        if (S.type.kind == TypeKind::String) {
          if (Init.kind == TypeKind::StringView || Init.kind == TypeKind::CharPtr)
            checkUse(Init, S);
        } else if (S.type.kind == TypeKind::StringView && Init.kind == TypeKind::CharPtr) {
          V.buf = -1;
        } else {
          V.i = Init.i;
          V.buf = Init.buf;
        }
      }
      if (S.type.kind == TypeKind::String)
        V.obj = newString(F.id);
      endFullExpr(F);
      F.scopes.back().push_back({&S, std::make_shared<Value>(V)});
      return;
    }
    case NodeKind::Assign: {
      Value V = eval(F, *S.children[1]);
      Cell C = lookup(F, S.children[0]->decl);
      if (C->kind == TypeKind::StringView && V.kind == TypeKind::CharPtr)
        V.buf = -1;
      C->i = V.i;
      C->buf = V.buf;
      endFullExpr(F);
      return;
    }
    case NodeKind::ExprStmt:
      eval(F, *S.children[0]);
      endFullExpr(F);
      return;
    case NodeKind::If: {
      bool Taken = eval(F, *S.children[0]).i != 0;
      endFullExpr(F);
      if (Taken)
        execBlock(F, *S.children[1]);
      else if (S.children.size() > 2)
        execBlock(F, *S.children[2]);
      return;
    }
    case NodeKind::While:
      throw std::logic_error("oracle: loops are not supported");
    case NodeKind::Return: {
      Value V;
      if (!S.children.empty()) {
        V = eval(F, *S.children[0]);
        TypeKind Ret = F.fn->type.kind;
        if (Ret == TypeKind::StringView || Ret == TypeKind::CharPtr)
          checkUse(V, S);
        if (Ret == TypeKind::StringView && V.kind == TypeKind::CharPtr)
          V.buf = -1;
        if (Ret == TypeKind::StringView && V.buf >= 0)
          for (const StringObj &O : Objs)
            if (O.alive && O.buf == V.buf && O.owner == F.id)
              report("StackUseAfterReturn", S);
        V.kind = Ret;
      }
      endFullExpr(F);
      throw Return{V};
    }
    default:
      throw std::logic_error("oracle: unexpected statement");
    }
  }

  // Expressions --------------------------------------------------------------

  Value eval(Frame &F, const Node &E) {
    switch (E.kind) {
    case NodeKind::Literal: {
      Value V;
      if (E.literalKind == LiteralKind::String) {
        V.kind = TypeKind::CharPtr;
      } else {
        V.kind = TypeKind::Int;
        V.i = E.intValue;
      }
      return V;
    }
    case NodeKind::VarRef:
      return *lookup(F, E.decl);
    case NodeKind::Convert: {
      Value S = eval(F, *E.children[0]);
      Value V;
      V.kind = TypeKind::StringView;
      V.buf = S.kind == TypeKind::String ? Objs[S.obj].buf : -1;
      return V;
    }
    case NodeKind::UnaryOp: {
      Value V = eval(F, *E.children[0]);
      V.kind = TypeKind::Int;
      V.i = E.name == "!" ? (V.i == 0) : -V.i;
      return V;
    }
    case NodeKind::BinaryOp:
      return evalBinary(F, E);
    case NodeKind::Index: {
      Value Base = eval(F, *E.children[0]);
      eval(F, *E.children[1]);
      if (Base.kind != TypeKind::String)
        checkUse(Base, E);
      Value V;
      V.kind = TypeKind::Int;
      return V;
    }
    case NodeKind::MethodCall:
      return evalMethod(F, E);
    case NodeKind::Call:
      return evalCall(F, E);
    default:
      throw std::logic_error("oracle: unexpected expression");
    }
  }

  Value evalBinary(Frame &F, const Node &E) {
    Value L = eval(F, *E.children[0]);
    Value R = eval(F, *E.children[1]);
    Value V;
    V.kind = TypeKind::Int;
    if (E.method) {
      checkUse(L, E);
      checkUse(R, E);
      if (E.name == "+") {
        V.kind = TypeKind::String;
        V.obj = newString(F.id);
        F.temps.push_back(V.obj);
      }
      return V;
    }
    const std::string &Op = E.name;
    if (Op == "+")
      V.i = L.i + R.i;
    else if (Op == "-")
      V.i = L.i - R.i;
    else if (Op == "==")
      V.i = L.i == R.i;
    else if (Op == "!=")
      V.i = L.i != R.i;
    else if (Op == "<")
      V.i = L.i < R.i;
    else if (Op == ">")
      V.i = L.i > R.i;
    return V;
  }

  Value evalMethod(Frame &F, const Node &E) {
    const MethodInfo &M = *E.method;
    const Node &RecvE = *E.children[0];
    Value Recv = eval(F, RecvE);
    std::vector<Value> Args;
    for (std::size_t I = 1; I < E.children.size(); ++I)
      Args.push_back(eval(F, *E.children[I]));
    for (std::size_t I = 0; I < Args.size(); ++I) {
      ArgKind K = M.argKind(static_cast<int>(I));
      if (K == ArgKind::View || K == ArgKind::StringLike)
        checkUse(Args[I], E);
    }
    Value V;
    V.kind = M.result;
    if (M.receiver == TypeKind::String) {
      if (M.invalidates()) {
        invalidate(Recv.obj);
        if (M.name == "swap")
          invalidate(Args[0].obj);
      }
      if (M.name == "c_str" || M.name == "data")
        V.buf = Objs[Recv.obj].buf;
      if (M.result == TypeKind::String) {
        V.obj = newString(F.id);
        F.temps.push_back(V.obj);
      }
      return V;
    }
    if (M.isUse())
      checkUse(Recv, E);
    if (M.name == "substr" || M.name == "data") {
      V.buf = Recv.buf;
    } else if (M.name == "swap") {
      Cell A = lookup(F, RecvE.decl);
      Cell B = lookup(F, E.children[1]->decl);
      std::swap(A->buf, B->buf);
    }
    return V;
  }

  Value evalCall(Frame &F, const Node &E) {
    const Node &Callee = *E.decl;
    auto Params = Callee.params();
    std::vector<Value> Args;
    for (const auto &A : E.children)
      Args.push_back(eval(F, *A));
    for (std::size_t I = 0; I < Args.size(); ++I) {
      const CvlType &PT = Params[I]->type;
      if (Args[I].kind == TypeKind::CharPtr ||
          (PT.kind == TypeKind::StringView && PT.ref != RefKind::MutRef))
        checkUse(Args[I], E);
    }

    Value Result;
    Result.kind = Callee.type.kind;
    const Node *Def = TU.findFunction(Callee.name);
    bool Inline = Def && Def->hasBody && Depth < 4 &&
                  std::find(Active.begin(), Active.end(), Def) == Active.end();
    if (!Inline) {
      for (std::size_t I = 0; I < Args.size(); ++I)
        if (Params[I]->type.kind == TypeKind::String && Params[I]->type.ref == RefKind::MutRef)
          invalidate(Args[I].obj);
      if (Result.kind == TypeKind::String) {
        Result.obj = newString(F.id);
        F.temps.push_back(Result.obj);
      }
      return Result;
    }

    Entered.insert(Def);
    Frame Callee2{nextFrame++, Def, {}, {}, {}};
    Callee2.scopes.emplace_back();
    auto DefParams = Def->params();
    for (std::size_t I = 0; I < Args.size(); ++I) {
      const Node *P = DefParams[I];
      const Node &ArgE = *E.children[I];
      Cell C;
      if (P->type.isRef() && ArgE.kind == NodeKind::VarRef) {
        C = lookup(F, ArgE.decl);
      } else {
        Value V = Args[I];
        if (P->type.kind == TypeKind::String) {
          if (!P->type.isRef()) {
            V.obj = newString(Callee2.id);
            Callee2.ownedParams.push_back(V.obj);
          } else if (V.kind != TypeKind::String) {
            // A const reference bound to a materialized temporary.
            V.obj = newString(F.id);
            F.temps.push_back(V.obj);
          }
        }
        if (P->type.kind == TypeKind::StringView && V.kind == TypeKind::CharPtr)
          V.buf = -1;
        V.kind = P->type.kind;
        C = std::make_shared<Value>(V);
      }
      Callee2.scopes.back().push_back({P, C});
    }
    ++Depth;
    Active.push_back(Def);
    Value R = runBody(Callee2);
    Active.pop_back();
    --Depth;
    if (Result.kind == TypeKind::String) {
      Result.obj = newString(F.id);
      F.temps.push_back(Result.obj);
    } else {
      Result.i = R.i;
      Result.buf = R.buf;
    }
    return Result;
  }

  const TranslationUnit &TU;
  std::set<const Node *> &Entered;
  std::vector<StringObj> Objs;
  std::vector<bool> Freed;
  int nextFrame = 0;
  int Depth = 0;
  std::vector<const Node *> Active;
};

void enumerate(const Node &F, std::vector<std::int64_t> &Cur, std::size_t K,
               const std::function<void(const std::vector<std::int64_t> &)> &Fn) {
  auto Ps = F.params();
  while (K < Ps.size() && Ps[K]->type.kind != TypeKind::Int && Ps[K]->type.kind != TypeKind::Bool)
    ++K;
  if (K == Ps.size()) {
    Fn(Cur);
    return;
  }
  std::int64_t Lo = Ps[K]->type.kind == TypeKind::Bool ? 0 : -2;
  std::int64_t Hi = Ps[K]->type.kind == TypeKind::Bool ? 1 : 2;
  for (std::int64_t V = Lo; V <= Hi; ++V) {
    Cur.push_back(V);
    enumerate(F, Cur, K + 1, Fn);
    Cur.pop_back();
  }
}

} // namespace

std::set<Finding> interpretAll(const TranslationUnit &TU) {
  std::set<Finding> Out;
  std::set<const Node *> Visited;
  for (const auto &F : TU.functions) {
    if (!F->hasBody || Visited.contains(F.get()))
      continue;
    std::set<const Node *> Entered;
    std::vector<std::int64_t> Cur;
    enumerate(*F, Cur, 0, [&](const std::vector<std::int64_t> &Inputs) {
      Interp I(TU, Entered);
      try {
        I.runTopLevel(*F, Inputs);
      } catch (Stop &S) {
        Out.insert(S.f);
      }
    });
    Visited.insert(Entered.begin(), Entered.end());
  }
  return Out;
}

} // namespace oracle
