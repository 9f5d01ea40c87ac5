#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "brst/run.hpp"
#include "brst/version.hpp"

using namespace brst;

namespace {

struct Flags {
  int dim = 0;
  bool normal = false;
  int jet_order = 4;
  std::optional<std::uint64_t> seed;
  std::string mode = "symbolic";
  int trials = 5;
  std::string report, format = "json", fault;
  bool timings = false, trace = false, quiet = false, print_script = false;
};

void add_run_flags(CLI::App* c, Flags& f) {
  c->add_option("--jet-order", f.jet_order, "jet truncation order")->check(CLI::Range(2, 8));
  c->add_option("--seed", f.seed, "base seed for trial points (default: $BRSTV_SEED or 0)");
  c->add_option("--mode", f.mode, "symbolic, randomized or both")->check(CLI::IsMember({"symbolic", "randomized", "both"}));
  c->add_option("--trials", f.trials, "randomized trials per identity")->check(CLI::Range(1, 100));
  c->add_option("--report", f.report, "write the run report here ('-' for stdout)");
  c->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "md"}));
  c->add_option("--fault", f.fault, "flip one display term, as <identity id>#<term>");
  c->add_flag("--timings", f.timings, "include elapsed times in reports");
  c->add_flag("--trace", f.trace, "record evaluated sides of randomized trials");
  c->add_flag("-q,--quiet", f.quiet, "print only the summary line");
}

RunOptions run_options(const Flags& f) {
  RunOptions o;
  if (f.seed) {
    o.seed = *f.seed;
    o.seed_source = "flag";
  } else if (const char* env = std::getenv("BRSTV_SEED")) {
    o.seed = std::stoull(env);
    o.seed_source = "env";
  }
  o.mode = parse_mode(f.mode);
  o.trials = f.trials;
  o.jet_order = f.jet_order;
  o.fault = f.fault;
  o.timings = f.timings;
  o.trace = f.trace;
  return o;
}

void print_diagnostic(const std::string& file, const std::string& text, const script::ScriptError& e) {
  std::cerr << file << ":" << e.what() << "\n";
  std::istringstream is(text);
  std::string line;
  for (int i = 1; std::getline(is, line); ++i) {
    if (i != e.span().line) continue;
    std::cerr << "  " << line << "\n  " << std::string(static_cast<std::size_t>(e.span().col - 1), ' ') << "^\n";
    break;
  }
}

void write(const std::string& path, const std::string& body) {
  if (path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << body;
  if (!os) throw std::runtime_error("write failed for " + path);
}

std::string render(const RunReport& r, const std::string& format) { return format == "md" ? to_markdown(r) : to_json(r); }

int run_text(const std::string& file, const std::string& text, const Flags& f) {
  script::Ast ast;
  Execution ex;
  try {
    ast = script::parse_script(text);
    ex = execute_script(ast, run_options(f));
  } catch (const script::ScriptError& e) {
    print_diagnostic(file, text, e);
    return 2;
  }
  const RunReport& r = ex.report;
  if (!f.quiet && f.report != "-") {
    for (const auto& s : r.identities) {
      const auto& rep = s.report;
      std::cout << (rep.pass ? "PASS " : "FAIL ") << s.scene << " " << rep.identity_id << " [" << rep.tier << "]";
      if (f.timings) std::cout << " " << static_cast<long>(rep.elapsed_ms) << " ms";
      std::cout << "\n";
      if (!rep.pass && !rep.error.empty()) std::cout << "     error: " << rep.error << "\n";
      if (!rep.pass && !rep.residual.empty()) std::cout << "     residual: " << rep.residual.substr(0, 200) << "\n";
    }
  }
  if (f.report != "-")
    std::cout << "overall: " << (r.pass ? "pass" : "fail") << " (" << r.passed << "/" << r.identities.size() << " identities)\n";
  try {
    if (!f.report.empty()) write(f.report, render(r, f.format));
    for (const auto& o : ex.outputs) write(o.path, render(r, o.format));
  } catch (const std::exception& e) {
    std::cerr << "brstv: " << e.what() << "\n";
    return 2;
  }
  return r.pass ? 0 : 1;
}

int explain(const std::string& id) {
  std::string kind = id.rfind("gr.", 0) == 0 ? "gr" : id.rfind("conf.", 0) == 0 ? "conformal" : id.rfind("ym.", 0) == 0 ? "ym" : "";
  if (kind.empty()) {
    std::cerr << "brstv: identity ids start with gr., conf. or ym.\n";
    return 2;
  }
  auto cat = identity_catalog(kind);
  for (const auto& e : cat) {
    if (e.id != id) continue;
    std::cout << e.id << "\n  suite: " << e.suite << "\n";
    if (!e.anchor.empty()) std::cout << "  topic: " << e.anchor << "\n";
    if (!e.note.empty()) std::cout << "  note: " << e.note << "\n";
    if (e.check == "oracle")
      std::cout << "  check: engine side against an independent component display built from the jet oracle;\n"
                   "         always decided by exact evaluation at seeded rational points\n";
    if (e.display_terms > 0)
      std::cout << "  display terms: " << e.display_terms << " (--fault " << e.id << "#0 .. #" << e.display_terms - 1 << ")\n";
    else if (e.check == "symbolic")
      std::cout << "  check: both sides expanded symbolically; a residual with inverse generators is reduced\n"
                   "         modulo U X = 1 and otherwise decided by exact evaluation\n";
    else if (e.check == "nilpotency")
      std::cout << "  check: operator applied twice to every generator, residual must normalise to zero\n";
    else
      std::cout << "  check: condition expanded and compared with the declared rules at this bidegree\n";
    return 0;
  }
  std::cerr << "brstv: unknown identity '" << id << "'";
  std::string stem = id.substr(0, id.rfind('.') == std::string::npos ? id.size() : id.rfind('.'));
  bool first = true;
  for (const auto& e : cat) {
    if (e.id.rfind(stem, 0) != 0) continue;
    std::cerr << (first ? "; related: " : ", ") << e.id;
    first = false;
  }
  std::cerr << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify BRST identities of gauge and Cartan geometries"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags f;

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a built-in suite");
  verify->add_option("suite", suite, "gr, conformal or ym")->required()->check(CLI::IsMember({"gr", "conformal", "ym"}));
  verify->add_option("--dim", f.dim, "spacetime dimension (default 4, ym 3)")->check(CLI::Range(2, 8));
  verify->add_flag("--normal", f.normal, "conformal: trial points carry the normal connection");
  verify->add_flag("--print-script", f.print_script, "print the built-in script and exit");
  add_run_flags(verify, f);

  std::string file;
  auto* run = app.add_subcommand("run", "run a script file");
  run->add_option("file", file, "script path ('-' for stdin)")->required();
  add_run_flags(run, f);

  std::string id;
  auto* expl = app.add_subcommand("explain", "describe an identity");
  expl->add_option("identity", id, "identity id")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      int dim = f.dim ? f.dim : suite == "ym" ? 3 : 4;
      if (suite == "conformal" && dim < 3) {
        std::cerr << "brstv: conformal needs --dim >= 3\n";
        return 2;
      }
      std::string text = builtin_script(suite, dim, f.normal);
      if (f.print_script) {
        std::cout << text;
        return 0;
      }
      return run_text("<" + suite + ">", text, f);
    }
    if (*run) {
      std::stringstream ss;
      if (file == "-") {
        ss << std::cin.rdbuf();
      } else {
        std::ifstream is(file, std::ios::binary);
        if (!is) {
          std::cerr << "brstv: cannot read " << file << "\n";
          return 2;
        }
        ss << is.rdbuf();
      }
      return run_text(file, ss.str(), f);
    }
    return explain(id);
  } catch (const std::exception& e) {
    std::cerr << "brstv: " << e.what() << "\n";
    return 2;
  }
}
