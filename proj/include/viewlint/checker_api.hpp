//===- checker_api.hpp - Checker callbacks and registry ---------*- C++ -*-===//
//
// Checkers observe the simulation through event handlers. Each handler takes
// a state and returns a (possibly) new one; reports and path notes go through
// the CheckerContext. Handlers of one event run in registration order.
//
//===----------------------------------------------------------------------===//

#pragma once

#include "viewlint/method_tables.hpp"
#include "viewlint/program_state.hpp"
#include "viewlint/report.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace viewlint {

struct CallArg {
  SVal value;
  const Node *expr = nullptr;
  /// How the callee takes the argument.
  CvlType param;
};

struct CallEvent {
  enum class Kind {
    Function,
    Method,
    /// Comparison or concatenation operator.
    Operator,
    /// Implicit string-to-view conversion.
    Conversion,
    /// std::string constructed from a view.
    Constructor,
    /// Subscript of a `const char *`.
    PointerIndex,
  };
  Kind kind = Kind::Function;
  const Node *expr = nullptr;
  std::string name;
  /// Function declaration for Function calls.
  const Node *callee = nullptr;
  const MethodInfo *method = nullptr;
  SVal receiver;
  std::vector<CallArg> args;
  /// The callee body is simulated; its effects need no modeling.
  bool inlined = false;
  /// Call result, for postCall.
  SVal result;
};

struct BindEvent {
  RegionId target;
  SVal value;
  const Node *stmt;
};

struct DestroyEvent {
  RegionId region;
  SourceLocation loc;
};

struct ReturnEvent {
  SVal value;
  const Node *stmt;
  FrameId frame;
  const Node *function;
};

struct DeadSymbolsEvent {
  std::vector<SymbolId> dead;
};

/// An explanation attached to the exploded-graph edge it was produced on.
struct NoteTag {
  enum class Kind {
    /// `view` became associated with a string.
    Assoc,
    /// `view` copied the released status of `other`.
    ReleasedCopy,
    /// A string was invalidated; `views` and `sym` were released.
    Release,
    /// `view` and `other` exchanged contents.
    Swap,
    /// Buffer symbol `sym` was handed out.
    BufferObtained,
    /// Conversion result `sym` was created.
    CastCreated,
    /// A branch was taken; `assumption` tells which.
    Control,
  };
  Kind kind;
  std::string message;
  SourceLocation loc;
  FrameId frame = -1;
  RegionId view = -1;
  RegionId other = -1;
  std::vector<RegionId> views;
  SymbolId sym = -1;
  bool assumption = false;
};

struct PendingReport {
  std::string checkerId;
  BugCategory category;
  std::string message;
  SourceLocation loc;
  /// Regions and symbols whose history explains the report.
  std::vector<RegionId> views;
  std::vector<SymbolId> syms;
};

class CheckerContext {
public:
  CheckerContext(SymbolicContext &SC, FrameId Frame, SourceLocation Loc)
      : SC(SC), Frame(Frame), Loc(std::move(Loc)) {}

  SymbolicContext &symbols() { return SC; }
  FrameId frame() const { return Frame; }
  const SourceLocation &loc() const { return Loc; }
  /// Loop iteration of the current frame, used to key fresh symbols.
  int iteration = 0;

  void addNote(NoteTag T) {
    T.frame = Frame;
    Notes.push_back(std::move(T));
  }
  /// Records a report and marks the path as a sink.
  void report(PendingReport R) {
    R.checkerId = Current;
    Reports.push_back(std::move(R));
  }
  bool isSink() const { return !Reports.empty(); }

  std::vector<NoteTag> Notes;
  std::vector<PendingReport> Reports;
  /// Id of the checker whose handler is running.
  std::string Current;

private:
  SymbolicContext &SC;
  FrameId Frame;
  SourceLocation Loc;
};

template <typename Event>
using CheckerHandler = std::function<ProgramStateRef(CheckerContext &, ProgramStateRef, const Event &)>;

struct CheckerCallbacks {
  CheckerHandler<CallEvent> preCall;
  CheckerHandler<CallEvent> postCall;
  CheckerHandler<BindEvent> bind;
  CheckerHandler<DestroyEvent> destroyRegion;
  CheckerHandler<ReturnEvent> preReturn;
  CheckerHandler<DeadSymbolsEvent> deadSymbols;
};

class CheckerRegistry {
public:
  struct Entry {
    std::string id;
    std::string description;
    CheckerCallbacks callbacks;
  };

  void add(std::string Id, std::string Description, CheckerCallbacks CB);
  const std::vector<Entry> &checkers() const { return Entries; }
  bool has(const std::string &Id) const;

  /// Returns false for an unknown id.
  bool setEnabled(const std::string &Id, bool Enabled);
  bool isEnabled(const std::string &Id) const { return !Disabled.contains(Id); }

  TraitRegistry &traits() { return Traits; }
  const TraitRegistry &traits() const { return Traits; }

  /// Runs every enabled handler for the event in order, threading the state.
  /// Stops after the first handler that reports.
  template <typename Event>
  ProgramStateRef dispatch(CheckerHandler<Event> CheckerCallbacks::*Slot, CheckerContext &C,
                           ProgramStateRef S, const Event &E) const {
    for (const Entry &En : Entries) {
      const auto &H = En.callbacks.*Slot;
      if (!H || !isEnabled(En.id))
        continue;
      C.Current = En.id;
      S = H(C, S, E);
      if (C.isSink())
        break;
    }
    return S;
  }

private:
  std::vector<Entry> Entries;
  std::set<std::string> Disabled;
  TraitRegistry Traits;
};

} // namespace viewlint
