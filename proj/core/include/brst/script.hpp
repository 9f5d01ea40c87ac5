#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace brst::script {

struct Span {
  int line = 1, col = 1;  // 1-based start
  int end_line = 1, end_col = 1;  // one past the last character
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(const std::string& msg, Span span)
      : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.col) + ": " + msg),
        message_(msg), span_(span) {}
  const std::string& message() const { return message_; }
  const Span& span() const { return span_; }

 private:
  std::string message_;
  Span span_;
};

struct Value {
  enum class Kind { Int, Bool, Ident, String } kind = Kind::Int;
  long integer = 0;
  bool boolean = false;
  std::string text;

  friend bool operator==(const Value&, const Value&) = default;
};

struct KeyValue {
  std::string key;
  Value value;
  Span span;
  friend bool operator==(const KeyValue& a, const KeyValue& b) { return a.key == b.key && a.value == b.value; }
};

/// scene NAME = KIND(k=v, ...);
struct SceneDecl {
  std::string name, kind;
  std::vector<KeyValue> args;
  Span name_span;
};
/// rule SCENE: s|sigma FIELD = 0;
struct RuleDecl {
  std::string scene, op, field;
  long value = 0;
  Span scene_span;
};
/// shift SCENE;
struct ShiftDirective {
  std::string scene;
  Span scene_span;
};
/// dress SCENE with DRESSING;
struct DressDirective {
  std::string scene, dressing;
  Span scene_span;
};
/// check suite SCENE [(...)];  or  check SELECTOR on SCENE [(...)];
struct CheckDirective {
  bool suite = true;
  std::string selector;  // identity id prefix when !suite
  std::string scene;
  std::vector<KeyValue> args;
  Span scene_span;
};
/// report json|md "path";
struct ReportDirective {
  std::string format, path;
};

struct Statement {
  std::variant<SceneDecl, RuleDecl, ShiftDirective, DressDirective, CheckDirective, ReportDirective> node;
  Span span;
};

struct Ast {
  std::vector<Statement> statements;
};

/// Structural equality, spans ignored.
bool equal(const Ast& a, const Ast& b);

/// Parses and resolves names; throws ScriptError at the first problem.
Ast parse_script(const std::string& text);

/// Canonical text (one statement per line); parse(print(ast)) equals ast.
std::string print_script(const Ast& ast);

/// Dressings a scene kind accepts.
std::vector<std::string> dressings_for(const std::string& kind);

}  // namespace brst::script
