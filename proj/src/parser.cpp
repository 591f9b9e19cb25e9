//===- parser.cpp - Recursive-descent parser ------------------------------===//

#include "viewlint/parser.hpp"

#include <optional>

namespace viewlint {

namespace {

struct ParseFailure {};

class Parser {
public:
  Parser(std::span<const Token> All, const std::string &File) : File(File) {
    for (const Token &T : All)
      if (T.kind != TokenKind::Comment)
        Toks.push_back(T);
    Unit = std::make_unique<TranslationUnit>();
    Unit->file = File;
  }

  ParseResult run() {
    while (!atEnd()) {
      std::size_t Before = Pos;
      try {
        Unit->functions.push_back(parseFunction());
      } catch (ParseFailure &) {
        syncToplevel();
      }
      if (Pos == Before)
        ++Pos;
    }
    return {std::move(Unit), std::move(Errors)};
  }

private:
  // Token access ------------------------------------------------------------

  bool atEnd() const { return Pos >= Toks.size(); }
  const Token &peek(std::size_t Ahead = 0) const {
    static const Token Eof{TokenKind::Punct, "<end of input>", {}, {}};
    if (Pos + Ahead < Toks.size())
      return Toks[Pos + Ahead];
    return Eof;
  }
  SourceLocation curLoc() const {
    if (!atEnd())
      return Toks[Pos].loc;
    if (!Toks.empty())
      return Toks.back().endLoc;
    return {File, 1, 1};
  }
  SourceLocation prevEnd() const {
    return Pos > 0 ? Toks[Pos - 1].endLoc : SourceLocation{File, 1, 1};
  }
  const Token &take() { return Toks[Pos++]; }
  bool acceptPunct(std::string_view P) {
    if (!atEnd() && peek().isPunct(P)) {
      ++Pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::string Expected) {
    std::string Found = atEnd() ? "end of input" : "'" + peek().text + "'";
    if (!atEnd() && peek().kind == TokenKind::StringLiteral)
      Found = "string literal";
    Errors.push_back({FrontendErrorKind::Parse, curLoc(),
                      "expected " + Expected + ", found " + Found});
    throw ParseFailure{};
  }
  const Token &expectPunct(std::string_view P) {
    if (atEnd() || !peek().isPunct(P))
      fail("'" + std::string(P) + "'");
    return take();
  }
  const Token &expectIdent(std::string_view What) {
    if (atEnd() || peek().kind != TokenKind::Identifier || isKeyword(peek().text))
      fail(std::string(What));
    return take();
  }

  static bool isKeyword(std::string_view S) {
    return S == "void" || S == "bool" || S == "int" || S == "const" ||
           S == "char" || S == "if" || S == "else" || S == "while" ||
           S == "return" || S == "true" || S == "false" || S == "std";
  }

  void syncStatement() {
    while (!atEnd()) {
      if (peek().isPunct(";")) {
        ++Pos;
        return;
      }
      if (peek().isPunct("}"))
        return;
      ++Pos;
    }
  }
  void syncToplevel() {
    int Depth = 0;
    while (!atEnd()) {
      if (peek().isPunct("{"))
        ++Depth;
      if (peek().isPunct("}")) {
        ++Pos;
        if (--Depth <= 0)
          return;
        continue;
      }
      if (Depth == 0 && peek().isPunct(";")) {
        ++Pos;
        return;
      }
      ++Pos;
    }
  }

  // Types -------------------------------------------------------------------

  bool startsType() const {
    if (atEnd() || peek().kind != TokenKind::Identifier)
      return false;
    const std::string &T = peek().text;
    if (T == "void" || T == "bool" || T == "int" || T == "const")
      return true;
    return T == "std" && peek(1).isPunct("::");
  }

  /// type := "void" | "bool" | "int" | "std::string" | "std::string_view"
  ///       | "const" "char" "*"
  TypeKind parseTypeName() {
    const Token &T = peek();
    if (T.isIdent("void") || T.isIdent("bool") || T.isIdent("int")) {
      take();
      return T.text == "void" ? TypeKind::Void
             : T.text == "bool" ? TypeKind::Bool
                                : TypeKind::Int;
    }
    if (T.isIdent("std")) {
      take();
      expectPunct("::");
      if (peek().isIdent("string")) {
        take();
        return TypeKind::String;
      }
      if (peek().isIdent("string_view")) {
        take();
        return TypeKind::StringView;
      }
      fail("'string' or 'string_view'");
    }
    if (T.isIdent("const") && peek(1).isIdent("char")) {
      take();
      take();
      expectPunct("*");
      return TypeKind::CharPtr;
    }
    fail("type");
  }

  /// param := type ("&")? ident | "const" type "&" ident
  NodePtr parseParam() {
    SourceLocation Begin = curLoc();
    CvlType Ty;
    if (peek().isIdent("const") && !peek(1).isIdent("char")) {
      take();
      Ty.kind = parseTypeName();
      expectPunct("&");
      Ty.ref = RefKind::ConstRef;
    } else {
      Ty.kind = parseTypeName();
      if (acceptPunct("&"))
        Ty.ref = RefKind::MutRef;
    }
    if (Ty.kind == TypeKind::Void)
      Errors.push_back({FrontendErrorKind::Parse, Begin, "parameter of type void"});
    const Token &Name = expectIdent("parameter name");
    auto P = Unit->makeNode(NodeKind::ParamDecl, {Begin, Name.endLoc});
    P->type = Ty;
    P->name = Name.text;
    return P;
  }

  // Declarations --------------------------------------------------------------

  NodePtr parseFunction() {
    SourceLocation Begin = curLoc();
    if (!startsType())
      fail("function declaration");
    TypeKind Ret = parseTypeName();
    const Token &Name = expectIdent("function name");
    auto F = Unit->makeNode(NodeKind::FunctionDecl, {Begin, Begin});
    F->type.kind = Ret;
    F->name = Name.text;
    expectPunct("(");
    if (!peek().isPunct(")")) {
      do {
        F->children.push_back(parseParam());
      } while (acceptPunct(","));
    }
    expectPunct(")");
    if (acceptPunct(";")) {
      F->range.end = prevEnd();
      return F;
    }
    F->hasBody = true;
    F->children.push_back(parseBlock());
    F->range.end = F->children.back()->range.end;
    return F;
  }

  NodePtr parseBlock() {
    SourceLocation Begin = curLoc();
    expectPunct("{");
    auto B = Unit->makeNode(NodeKind::Block, {Begin, Begin});
    while (!atEnd() && !peek().isPunct("}")) {
      std::size_t Before = Pos;
      try {
        B->children.push_back(parseStatement());
      } catch (ParseFailure &) {
        syncStatement();
        if (Pos == Before)
          ++Pos;
      }
    }
    // The closing brace location is where scope-exit destruction happens.
    B->range.end = curLoc();
    expectPunct("}");
    return B;
  }

  NodePtr wrapInBlock(NodePtr S) {
    if (S->kind == NodeKind::Block)
      return S;
    auto B = Unit->makeNode(NodeKind::Block, S->range);
    B->implicitBlock = true;
    B->children.push_back(std::move(S));
    return B;
  }

  // Statements ----------------------------------------------------------------

  NodePtr parseStatement() {
    const Token &T = peek();
    if (T.isPunct("{"))
      return parseBlock();
    if (T.isIdent("if"))
      return parseIf();
    if (T.isIdent("while"))
      return parseWhile();
    if (T.isIdent("return"))
      return parseReturn();
    if (startsType())
      return parseVarDecl();
    if (T.kind == TokenKind::Identifier && !isKeyword(T.text) &&
        (peek(1).isPunct("=") || peek(1).isPunct("+=")))
      return parseAssign();
    SourceLocation Begin = curLoc();
    auto E = parseExpr();
    expectPunct(";");
    auto S = Unit->makeNode(NodeKind::ExprStmt, {Begin, prevEnd()});
    S->children.push_back(std::move(E));
    return S;
  }

  NodePtr parseVarDecl() {
    SourceLocation Begin = curLoc();
    CvlType Ty;
    Ty.kind = parseTypeName();
    if (Ty.kind == TypeKind::Void)
      Errors.push_back({FrontendErrorKind::Parse, Begin, "variable of type void"});
    const Token &Name = expectIdent("variable name");
    auto D = Unit->makeNode(NodeKind::VarDecl, {Begin, Begin});
    D->type = Ty;
    D->name = Name.text;
    if (acceptPunct("(")) {
      D->initStyle = InitStyle::Paren;
      if (peek().isPunct(")"))
        fail("constructor argument");
      D->children.push_back(parseExpr());
      expectPunct(")");
    } else if (acceptPunct("=")) {
      D->initStyle = InitStyle::Equals;
      D->children.push_back(parseExpr());
    }
    expectPunct(";");
    D->range.end = prevEnd();
    return D;
  }

  NodePtr parseAssign() {
    SourceLocation Begin = curLoc();
    const Token &Name = take();
    auto Target = Unit->makeNode(NodeKind::VarRef, {Name.loc, Name.endLoc});
    Target->name = Name.text;
    std::string Op = take().text;
    auto Value = parseExpr();
    expectPunct(";");
    auto A = Unit->makeNode(NodeKind::Assign, {Begin, prevEnd()});
    A->name = Op;
    A->children.push_back(std::move(Target));
    A->children.push_back(std::move(Value));
    return A;
  }

  NodePtr parseIf() {
    SourceLocation Begin = curLoc();
    take();
    expectPunct("(");
    auto Cond = parseExpr();
    expectPunct(")");
    auto I = Unit->makeNode(NodeKind::If, {Begin, Begin});
    I->children.push_back(std::move(Cond));
    I->children.push_back(wrapInBlock(parseStatement()));
    if (peek().isIdent("else")) {
      take();
      I->children.push_back(wrapInBlock(parseStatement()));
    }
    I->range.end = I->children.back()->range.end;
    return I;
  }

  NodePtr parseWhile() {
    SourceLocation Begin = curLoc();
    take();
    expectPunct("(");
    auto Cond = parseExpr();
    expectPunct(")");
    auto W = Unit->makeNode(NodeKind::While, {Begin, Begin});
    W->children.push_back(std::move(Cond));
    W->children.push_back(wrapInBlock(parseStatement()));
    W->range.end = W->children.back()->range.end;
    return W;
  }

  NodePtr parseReturn() {
    SourceLocation Begin = curLoc();
    take();
    auto R = Unit->makeNode(NodeKind::Return, {Begin, Begin});
    if (!peek().isPunct(";"))
      R->children.push_back(parseExpr());
    expectPunct(";");
    R->range.end = prevEnd();
    return R;
  }

  // Expressions ---------------------------------------------------------------
  //
  //   equality   := relational (("==" | "!=") relational)*
  //   relational := additive (("<" | ">") additive)*
  //   additive   := unary (("+" | "-") unary)*
  //   unary      := ("!" | "-") unary | postfix
  //   postfix    := primary ("." ident "(" args ")" | "[" expr "]")*

  NodePtr parseExpr() { return parseEquality(); }

  NodePtr makeBinary(std::string Op, NodePtr L, NodePtr R) {
    auto B = Unit->makeNode(NodeKind::BinaryOp, {L->range.begin, R->range.end});
    B->name = std::move(Op);
    B->children.push_back(std::move(L));
    B->children.push_back(std::move(R));
    return B;
  }

  NodePtr parseEquality() {
    auto L = parseRelational();
    while (peek().isPunct("==") || peek().isPunct("!=")) {
      std::string Op = take().text;
      L = makeBinary(Op, std::move(L), parseRelational());
    }
    return L;
  }

  NodePtr parseRelational() {
    auto L = parseAdditive();
    while (peek().isPunct("<") || peek().isPunct(">")) {
      std::string Op = take().text;
      L = makeBinary(Op, std::move(L), parseAdditive());
    }
    return L;
  }

  NodePtr parseAdditive() {
    auto L = parseUnary();
    while (peek().isPunct("+") || peek().isPunct("-")) {
      std::string Op = take().text;
      L = makeBinary(Op, std::move(L), parseUnary());
    }
    return L;
  }

  NodePtr parseUnary() {
    if (peek().isPunct("!") || peek().isPunct("-")) {
      const Token &Op = take();
      auto Operand = parseUnary();
      auto U = Unit->makeNode(NodeKind::UnaryOp, {Op.loc, Operand->range.end});
      U->name = Op.text;
      U->children.push_back(std::move(Operand));
      return U;
    }
    return parsePostfix();
  }

  void parseArgs(Node &Call) {
    expectPunct("(");
    if (!peek().isPunct(")")) {
      do {
        Call.children.push_back(parseExpr());
      } while (acceptPunct(","));
    }
    expectPunct(")");
  }

  NodePtr parsePostfix() {
    auto E = parsePrimary();
    while (true) {
      if (acceptPunct(".")) {
        const Token &Name = expectIdent("member name");
        auto M = Unit->makeNode(NodeKind::MethodCall, {E->range.begin, Name.endLoc});
        M->name = Name.text;
        M->children.push_back(std::move(E));
        parseArgs(*M);
        M->range.end = prevEnd();
        E = std::move(M);
        continue;
      }
      if (acceptPunct("[")) {
        auto Idx = parseExpr();
        expectPunct("]");
        auto I = Unit->makeNode(NodeKind::Index, {E->range.begin, prevEnd()});
        I->children.push_back(std::move(E));
        I->children.push_back(std::move(Idx));
        E = std::move(I);
        continue;
      }
      return E;
    }
  }

  NodePtr parsePrimary() {
    if (atEnd())
      fail("expression");
    const Token &T = peek();
    switch (T.kind) {
    case TokenKind::IntLiteral:
    case TokenKind::CharLiteral: {
      take();
      auto L = Unit->makeNode(NodeKind::Literal, {T.loc, T.endLoc});
      L->literalKind =
          T.kind == TokenKind::IntLiteral ? LiteralKind::Int : LiteralKind::Char;
      L->intValue = T.intValue;
      return L;
    }
    case TokenKind::StringLiteral: {
      take();
      auto L = Unit->makeNode(NodeKind::Literal, {T.loc, T.endLoc});
      L->literalKind = LiteralKind::String;
      L->stringValue = T.text;
      return L;
    }
    case TokenKind::Identifier: {
      if (T.text == "true" || T.text == "false") {
        take();
        auto L = Unit->makeNode(NodeKind::Literal, {T.loc, T.endLoc});
        L->literalKind = LiteralKind::Bool;
        L->intValue = T.text == "true";
        return L;
      }
      if (isKeyword(T.text))
        fail("expression");
      take();
      if (peek().isPunct("(")) {
        auto C = Unit->makeNode(NodeKind::Call, {T.loc, T.endLoc});
        C->name = T.text;
        parseArgs(*C);
        C->range.end = prevEnd();
        return C;
      }
      auto R = Unit->makeNode(NodeKind::VarRef, {T.loc, T.endLoc});
      R->name = T.text;
      return R;
    }
    case TokenKind::Punct:
      if (T.isPunct("(")) {
        take();
        auto E = parseExpr();
        expectPunct(")");
        return E;
      }
      break;
    case TokenKind::Comment:
      break;
    }
    fail("expression");
  }

  std::vector<Token> Toks;
  std::size_t Pos = 0;
  const std::string &File;
  std::unique_ptr<TranslationUnit> Unit;
  std::vector<FrontendError> Errors;
};

} // namespace

ParseResult parse(std::span<const Token> Tokens, const std::string &File) {
  return Parser(Tokens, File).run();
}

FrontendResult parseSource(std::string_view Source, const std::string &File) {
  FrontendResult R;
  LexResult L = lex(Source, File);
  R.tokens = std::move(L.tokens);
  R.errors = std::move(L.errors);
  ParseResult P = parse(R.tokens, File);
  R.errors.insert(R.errors.end(), P.errors.begin(), P.errors.end());
  if (!R.errors.empty())
    return R;
  auto ResolveErrors = resolve(*P.unit);
  if (!ResolveErrors.empty()) {
    R.errors = std::move(ResolveErrors);
    return R;
  }
  R.unit = std::move(P.unit);
  return R;
}

} // namespace viewlint
