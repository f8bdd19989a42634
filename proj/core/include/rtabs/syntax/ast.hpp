#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rtabs/value.hpp"

namespace rtabs::syntax {

struct SourcePos {
  std::shared_ptr<const std::string> file;
  int line = 0;
  int column = 0;

  std::string file_name() const { return file ? *file : std::string("<unknown>"); }
};

struct TypeRef {
  std::string name;
  std::vector<TypeRef> args;

  std::string str() const;
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

struct Expr;
struct Stmt;
struct Guard;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;
using GuardPtr = std::shared_ptr<const Guard>;
using Block = std::vector<StmtPtr>;

// ---------------------------------------------------------------------------
// Patterns

struct Pattern;

struct WildcardPattern {};
struct VarPattern {
  std::string name;
};
struct ValuePattern {
  Value value;
};
struct ConstructorPattern {
  std::string name;
  std::vector<Pattern> args;
};

struct Pattern {
  SourcePos pos;
  std::variant<WildcardPattern, VarPattern, ValuePattern, ConstructorPattern> node;
};

// ---------------------------------------------------------------------------
// Expressions

enum class UnaryOp { Not, Neg };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);

struct LiteralExpr {
  Value value;  // Bool, number or String
};
struct NullExpr {};
struct VarExpr {
  std::string name;
};
struct ThisExpr {};
struct DestinyExpr {};
/// Reads the `deadline` local of the current activation.
struct DeadlineExpr {};
/// Reads the global clock as a `Time` value.
struct NowExpr {};
struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct ConstructorExpr {
  std::string name;
  std::vector<ExprPtr> args;
};
struct CallExpr {
  std::string function;
  std::vector<ExprPtr> args;
};
struct CaseBranch {
  Pattern pattern;
  ExprPtr body;
};
struct CaseExpr {
  ExprPtr scrutinee;
  std::vector<CaseBranch> branches;
};
struct IfExpr {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

struct Expr {
  SourcePos pos;
  std::variant<LiteralExpr, NullExpr, VarExpr, ThisExpr, DestinyExpr, DeadlineExpr, NowExpr,
               UnaryExpr, BinaryExpr, ConstructorExpr, CallExpr, CaseExpr, IfExpr>
      node;
};

template <typename T>
ExprPtr make_expr(SourcePos pos, T node) {
  return std::make_shared<const Expr>(Expr{std::move(pos), std::move(node)});
}

// ---------------------------------------------------------------------------
// Annotations

enum class AnnotationKind { Deadline, Cost, Critical, Scheduler };
const char* to_string(AnnotationKind kind);

struct Annotation {
  SourcePos pos;
  AnnotationKind kind;
  ExprPtr value;
};

struct AnnotationSet {
  std::vector<Annotation> items;

  const Annotation* find(AnnotationKind kind) const;
  bool has(AnnotationKind kind) const { return find(kind) != nullptr; }
  /// Replaces an existing annotation of the same kind or appends.
  void set(Annotation a);
  bool empty() const { return items.empty(); }
};

// ---------------------------------------------------------------------------
// Guards

struct BoolGuard {
  ExprPtr expr;
};
/// `x?`: true once the future bound to `x` is resolved.
struct FutureGuard {
  std::string var;
};
struct DurationGuard {
  ExprPtr best;
  ExprPtr worst;
};
struct AndGuard {
  GuardPtr lhs;
  GuardPtr rhs;
};

struct Guard {
  SourcePos pos;
  std::variant<BoolGuard, FutureGuard, DurationGuard, AndGuard> node;
};

// ---------------------------------------------------------------------------
// Statements

struct ExprRhs {
  ExprPtr expr;
};
struct NewRhs {
  std::string class_name;
  std::vector<ExprPtr> args;
};
struct GetRhs {
  ExprPtr future;
};
/// `o!m(args)`.
struct AsyncCallRhs {
  ExprPtr callee;
  std::string method;
  std::vector<ExprPtr> args;
};
/// `o.m(args)`: removed by desugaring.
struct SyncCallRhs {
  ExprPtr callee;
  std::string method;
  std::vector<ExprPtr> args;
};
using Rhs = std::variant<ExprRhs, NewRhs, GetRhs, AsyncCallRhs, SyncCallRhs>;

struct SkipStmt {};
struct SuspendStmt {};
struct ReturnStmt {
  ExprPtr value;
};
struct IfStmt {
  ExprPtr cond;
  Block then_block;
  std::optional<Block> else_block;
};
struct WhileStmt {
  ExprPtr cond;
  Block body;
};
struct AwaitStmt {
  GuardPtr guard;
};
struct DurationStmt {
  ExprPtr best;
  ExprPtr worst;
};
/// `[a] T x = rhs;`, `[a] x = rhs;` or a bare `rhs;` (no target).
struct AssignStmt {
  AnnotationSet annotations;
  std::optional<TypeRef> declared_type;
  std::optional<std::string> target;
  Rhs rhs;
};
/// `[a] await x = o.m(args);`: removed by desugaring.
struct AwaitCallStmt {
  AnnotationSet annotations;
  std::optional<TypeRef> declared_type;
  std::optional<std::string> target;
  ExprPtr callee;
  std::string method;
  std::vector<ExprPtr> args;
};

struct Stmt {
  SourcePos pos;
  std::variant<SkipStmt, SuspendStmt, ReturnStmt, IfStmt, WhileStmt, AwaitStmt, DurationStmt,
               AssignStmt, AwaitCallStmt>
      node;
};

template <typename T>
StmtPtr make_stmt(SourcePos pos, T node) {
  return std::make_shared<const Stmt>(Stmt{std::move(pos), std::move(node)});
}

// ---------------------------------------------------------------------------
// Declarations

struct Param {
  TypeRef type;
  std::string name;
  SourcePos pos;
};

struct ConstructorArg {
  TypeRef type;
  std::optional<std::string> name;
};

struct ConstructorDecl {
  std::string name;
  std::vector<ConstructorArg> args;
  SourcePos pos;
};

struct DataDecl {
  std::string name;
  std::vector<std::string> type_params;
  std::vector<ConstructorDecl> constructors;
  SourcePos pos;
};

struct FunctionDecl {
  TypeRef return_type;
  std::string name;
  std::vector<std::string> type_params;
  std::vector<Param> params;
  ExprPtr body;
  SourcePos pos;
};

struct MethodSig {
  TypeRef return_type;
  std::string name;
  std::vector<Param> params;
  SourcePos pos;
};

struct InterfaceDecl {
  std::string name;
  std::vector<MethodSig> methods;
  SourcePos pos;
};

struct FieldDecl {
  TypeRef type;
  std::string name;
  ExprPtr init;  // may be null
  SourcePos pos;
};

/// A method body or the main block: locals declared without an
/// initializer, plus the statement list (which may declare more locals
/// through `T x = rhs;` assignments).
struct Body {
  std::vector<Param> locals;
  Block stmts;
};

struct MethodDecl {
  AnnotationSet annotations;
  MethodSig sig;
  Body body;
};

struct ClassDecl {
  AnnotationSet annotations;
  std::string name;
  std::vector<Param> params;
  std::vector<std::string> interfaces;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  SourcePos pos;

  const MethodDecl* find_method(std::string_view name) const;
};

struct Model {
  std::vector<DataDecl> datatypes;
  std::vector<FunctionDecl> functions;
  std::vector<InterfaceDecl> interfaces;
  std::vector<ClassDecl> classes;
  std::optional<Body> main;

  /// Appends all declarations of `other`; `other`'s main block, if any,
  /// replaces this one.
  void append(Model other);
};

/// Local variable names reserved for the runtime process record.
inline constexpr const char* kReservedNames[] = {
    "method", "arrival", "cost", "deadline", "start", "finish",
    "critical", "value", "destiny", "queue"};
bool is_reserved_name(std::string_view name);

}  // namespace rtabs::syntax
