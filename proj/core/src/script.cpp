#include "brst/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace brst::script {

namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  long integer = 0;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Span sp{line_, col_, line_, col_};
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", 0, sp});
        return out;
      }
      char c = s_[i_];
      Token t;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
          t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
        t.kind = Tok::Int;
        t.text += advance();
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t.text += advance();
        if (t.text.size() > 12) throw ScriptError("integer literal too large", sp);
        t.integer = std::stol(t.text);
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        for (;;) {
          if (i_ >= s_.size() || s_[i_] == '\n') throw ScriptError("unterminated string", sp);
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (i_ >= s_.size()) throw ScriptError("unterminated string", sp);
            char e = advance();
            if (e != '"' && e != '\\') throw ScriptError(std::string("unknown escape \\") + e, sp);
            d = e;
          }
          t.text += d;
        }
      } else if (std::string("=;(),:").find(c) != std::string::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, advance());
      } else {
        throw ScriptError(std::string("unexpected character '") + c + "'", sp);
      }
      sp.end_line = line_;
      sp.end_col = col_;
      t.span = sp;
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

const std::map<std::string, std::vector<std::string>>& scene_keys() {
  static const std::map<std::string, std::vector<std::string>> k = {
      {"gr", {"dim"}},
      {"conformal", {"dim", "normal"}},
      {"yang_mills", {"dim", "size"}},
  };
  return k;
}

int min_dim(const std::string& kind) { return kind == "conformal" ? 3 : 2; }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Ast run() {
    Ast ast;
    while (peek().kind != Tok::End) ast.statements.push_back(statement());
    if (ast.statements.empty()) throw ScriptError("empty script", peek().span);
    return ast;
  }

 private:
  const Token& peek() const { return t_[p_]; }
  Token next() { return t_[p_ == t_.size() - 1 ? p_ : p_++]; }
  bool is(const std::string& text) const { return peek().kind != Tok::String && peek().text == text; }

  Token expect_punct(const std::string& p) {
    if (peek().kind != Tok::Punct || peek().text != p) throw ScriptError("expected '" + p + "'" + found(), peek().span);
    return next();
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) throw ScriptError("expected " + what + found(), peek().span);
    return next();
  }
  void expect_keyword(const std::string& kw) {
    if (peek().kind != Tok::Ident || peek().text != kw) throw ScriptError("expected '" + kw + "'" + found(), peek().span);
    next();
  }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::End) return ", found end of input";
    return ", found '" + t.text + "'";
  }

  std::string scene_ref(Span& span) {
    Token t = expect_ident("scene name");
    span = t.span;
    auto it = scenes_.find(t.text);
    if (it == scenes_.end()) throw ScriptError("undefined scene '" + t.text + "'", t.span);
    return t.text;
  }

  Value value() {
    Token t = next();
    Value v;
    switch (t.kind) {
      case Tok::Int:
        v.kind = Value::Kind::Int;
        v.integer = t.integer;
        return v;
      case Tok::String:
        v.kind = Value::Kind::String;
        v.text = t.text;
        return v;
      case Tok::Ident:
        if (t.text == "true" || t.text == "false") {
          v.kind = Value::Kind::Bool;
          v.boolean = t.text == "true";
        } else {
          v.kind = Value::Kind::Ident;
          v.text = t.text;
        }
        return v;
      default:
        throw ScriptError("expected a value, found '" + t.text + "'", t.span);
    }
  }

  std::vector<KeyValue> kvlist() {
    std::vector<KeyValue> out;
    expect_punct("(");
    if (peek().kind == Tok::Punct && peek().text == ")") {
      next();
      return out;
    }
    for (;;) {
      Token k = expect_ident("argument name");
      expect_punct("=");
      KeyValue kv{k.text, value(), k.span};
      kv.span.end_line = t_[p_ - 1].span.end_line;
      kv.span.end_col = t_[p_ - 1].span.end_col;
      for (const auto& o : out)
        if (o.key == kv.key) throw ScriptError("duplicate argument '" + kv.key + "'", kv.span);
      out.push_back(std::move(kv));
      if (peek().kind == Tok::Punct && peek().text == ",") {
        next();
        continue;
      }
      expect_punct(")");
      return out;
    }
  }

  Statement statement() {
    Span start = peek().span;
    Statement st;
    Token kw = expect_ident("a statement keyword (scene, rule, shift, dress, check, report)");
    if (kw.text == "scene") {
      st.node = scene_decl();
    } else if (kw.text == "rule") {
      st.node = rule_decl();
    } else if (kw.text == "shift") {
      ShiftDirective d;
      d.scene = scene_ref(d.scene_span);
      st.node = d;
    } else if (kw.text == "dress") {
      st.node = dress();
    } else if (kw.text == "check") {
      st.node = check();
    } else if (kw.text == "report") {
      ReportDirective r;
      Token f = expect_ident("report format (json or md)");
      if (f.text != "json" && f.text != "md") throw ScriptError("unknown report format '" + f.text + "'", f.span);
      r.format = f.text;
      if (peek().kind != Tok::String) throw ScriptError("expected a quoted path" + found(), peek().span);
      r.path = next().text;
      st.node = r;
    } else {
      throw ScriptError("unknown statement '" + kw.text + "'", kw.span);
    }
    Token semi = expect_punct(";");
    st.span = start;
    st.span.end_line = semi.span.end_line;
    st.span.end_col = semi.span.end_col;
    return st;
  }

  SceneDecl scene_decl() {
    SceneDecl d;
    Token name = expect_ident("scene name");
    d.name = name.text;
    d.name_span = name.span;
    if (scenes_.count(d.name)) throw ScriptError("scene '" + d.name + "' already defined", name.span);
    expect_punct("=");
    Token kind = expect_ident("scene kind");
    auto keys = scene_keys().find(kind.text);
    if (keys == scene_keys().end())
      throw ScriptError("unknown scene kind '" + kind.text + "' (expected gr, conformal or yang_mills)", kind.span);
    d.kind = kind.text;
    d.args = kvlist();
    for (const auto& kv : d.args) {
      const auto& allowed = keys->second;
      if (std::find(allowed.begin(), allowed.end(), kv.key) == allowed.end())
        throw ScriptError("unknown argument '" + kv.key + "' for " + d.kind, kv.span);
      if (kv.key == "normal") {
        if (kv.value.kind != Value::Kind::Bool) throw ScriptError("normal expects true or false", kv.span);
      } else {
        if (kv.value.kind != Value::Kind::Int) throw ScriptError(kv.key + " expects an integer", kv.span);
        long lo = kv.key == "dim" ? min_dim(d.kind) : 1;
        if (kv.value.integer < lo || kv.value.integer > 8)
          throw ScriptError(kv.key + " must lie in [" + std::to_string(lo) + ", 8]", kv.span);
      }
    }
    scenes_[d.name] = d.kind;
    return d;
  }

  RuleDecl rule_decl() {
    RuleDecl r;
    r.scene = scene_ref(r.scene_span);
    if (scenes_[r.scene] != "yang_mills") throw ScriptError("rule overrides apply to yang_mills scenes only", r.scene_span);
    expect_punct(":");
    Token op = expect_ident("operator (s or sigma)");
    if (op.text != "s" && op.text != "sigma") throw ScriptError("unknown operator '" + op.text + "'", op.span);
    r.op = op.text;
    Token f = expect_ident("field name");
    if (f.text != "A" && f.text != "v" && f.text != "psi") throw ScriptError("unknown field '" + f.text + "' (expected A, v or psi)", f.span);
    r.field = f.text;
    expect_punct("=");
    if (peek().kind != Tok::Int) throw ScriptError("expected an integer" + found(), peek().span);
    Token v = next();
    if (v.integer != 0) throw ScriptError("only zero rules can be declared", v.span);
    r.value = 0;
    return r;
  }

  DressDirective dress() {
    DressDirective d;
    d.scene = scene_ref(d.scene_span);
    expect_keyword("with");
    Token t = expect_ident("dressing name");
    auto ok = dressings_for(scenes_[d.scene]);
    if (std::find(ok.begin(), ok.end(), t.text) == ok.end())
      throw ScriptError("unknown dressing '" + t.text + "' for " + scenes_[d.scene], t.span);
    d.dressing = t.text;
    return d;
  }

  CheckDirective check() {
    CheckDirective c;
    if (is("suite")) {
      next();
      c.suite = true;
    } else {
      c.suite = false;
      if (peek().kind != Tok::Ident && peek().kind != Tok::String)
        throw ScriptError("expected 'suite' or an identity id" + found(), peek().span);
      c.selector = next().text;
      if (c.selector.empty()) throw ScriptError("empty identity selector", t_[p_ - 1].span);
      expect_keyword("on");
    }
    c.scene = scene_ref(c.scene_span);
    if (peek().kind == Tok::Punct && peek().text == "(") {
      c.args = kvlist();
      for (const auto& kv : c.args) {
        if (kv.key == "trials") {
          if (kv.value.kind != Value::Kind::Int || kv.value.integer < 1 || kv.value.integer > 100)
            throw ScriptError("trials must be an integer in [1, 100]", kv.span);
        } else if (kv.key == "mode") {
          static const std::set<std::string> modes = {"symbolic", "randomized", "both"};
          if (kv.value.kind != Value::Kind::Ident || !modes.count(kv.value.text))
            throw ScriptError("mode must be symbolic, randomized or both", kv.span);
        } else if (kv.key == "fault") {
          if (kv.value.kind != Value::Kind::String) throw ScriptError("fault expects a quoted \"id#term\"", kv.span);
        } else if (kv.key == "seed") {
          if (kv.value.kind != Value::Kind::Int || kv.value.integer < 0) throw ScriptError("seed must be a non-negative integer", kv.span);
        } else {
          throw ScriptError("unknown check argument '" + kv.key + "'", kv.span);
        }
      }
    }
    return c;
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  std::map<std::string, std::string> scenes_;
};

std::string quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

bool bare_ident(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  if (s == "suite") return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; });
}

std::string print_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return std::to_string(v.integer);
    case Value::Kind::Bool: return v.boolean ? "true" : "false";
    case Value::Kind::Ident: return v.text;
    case Value::Kind::String: return quote(v.text);
  }
  return {};
}

std::string print_args(const std::vector<KeyValue>& args) {
  std::string r = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) r += ", ";
    r += args[i].key + "=" + print_value(args[i].value);
  }
  return r + ")";
}

struct Printer {
  std::ostringstream& os;
  void operator()(const SceneDecl& d) const { os << "scene " << d.name << " = " << d.kind << print_args(d.args); }
  void operator()(const RuleDecl& r) const { os << "rule " << r.scene << ": " << r.op << " " << r.field << " = " << r.value; }
  void operator()(const ShiftDirective& d) const { os << "shift " << d.scene; }
  void operator()(const DressDirective& d) const { os << "dress " << d.scene << " with " << d.dressing; }
  void operator()(const CheckDirective& c) const {
    os << "check ";
    if (c.suite) os << "suite " << c.scene;
    else os << (bare_ident(c.selector) ? c.selector : quote(c.selector)) << " on " << c.scene;
    if (!c.args.empty()) os << " " << print_args(c.args);
  }
  void operator()(const ReportDirective& r) const { os << "report " << r.format << " " << quote(r.path); }
};

struct Equal {
  bool operator()(const SceneDecl& a, const SceneDecl& b) const { return a.name == b.name && a.kind == b.kind && a.args == b.args; }
  bool operator()(const RuleDecl& a, const RuleDecl& b) const {
    return a.scene == b.scene && a.op == b.op && a.field == b.field && a.value == b.value;
  }
  bool operator()(const ShiftDirective& a, const ShiftDirective& b) const { return a.scene == b.scene; }
  bool operator()(const DressDirective& a, const DressDirective& b) const { return a.scene == b.scene && a.dressing == b.dressing; }
  bool operator()(const CheckDirective& a, const CheckDirective& b) const {
    return a.suite == b.suite && a.selector == b.selector && a.scene == b.scene && a.args == b.args;
  }
  bool operator()(const ReportDirective& a, const ReportDirective& b) const { return a.format == b.format && a.path == b.path; }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

std::vector<std::string> dressings_for(const std::string& kind) {
  if (kind == "gr") return {"vielbein"};
  if (kind == "conformal") return {"u1", "u0", "u"};
  if (kind == "yang_mills") return {"formal", "tensorial"};
  return {};
}

bool equal(const Ast& a, const Ast& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i)
    if (!std::visit(Equal{}, a.statements[i].node, b.statements[i].node)) return false;
  return true;
}

Ast parse_script(const std::string& text) { return Parser(Lexer(text).run()).run(); }

std::string print_script(const Ast& ast) {
  std::ostringstream os;
  for (const auto& st : ast.statements) {
    std::visit(Printer{os}, st.node);
    os << ";\n";
  }
  return os.str();
}

}  // namespace brst::script
