#include "termlat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "termlat/generalize.hpp"
#include "termlat/oracle.hpp"
#include "termlat/substitution.hpp"
#include "termlat/syntax.hpp"
#include "termlat/unify.hpp"

namespace termlat::cli {

using Json = nlohmann::ordered_json;

std::string format_degree(Degree d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", d);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

namespace {

// Same rounding as format_degree, so both outputs agree to 6 decimals.
double json_degree(Degree d) { return std::round(d * 1e6) / 1e6; }

constexpr double kVerifyTolerance = 1e-9;

struct Options {
  std::string mode;
  std::string tnorm;
  std::string sig_path;
  std::string batch_path;
  bool no_occurs_check = false;
  bool trace = false;
  bool json = false;
  bool verify = false;
  bool strict_arity = false;
  bool check_transitive = false;
  bool keep_shared = false;
};

struct Context {
  Options opt;
  SimilaritySignature sig;
  bool have_sig = false;
  std::string mode;  // resolved: crisp | weak | full
};

// One executed problem. `line` is the compact batch form.
struct Result {
  int code = kOk;
  std::string status;
  std::vector<std::string> human;
  Json json;
  std::string line;
  std::vector<std::string> diagnostics;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerifyMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json substitution_json(const Substitution& s) {
  Json j = Json::object();
  for (const Binding& b : s) j[b.var.name] = print_term(b.term);
  return j;
}

Json dropped_json(const std::vector<DroppedArgument>& dropped) {
  Json j = Json::array();
  for (const DroppedArgument& d : dropped) {
    j.push_back({{"functor", d.functor.str()}, {"position", d.position},
                 {"term", print_term(d.term)}});
  }
  return j;
}

std::string dropped_note(const DroppedArgument& d) {
  return "   dropped argument " + std::to_string(d.position) + " of " + d.functor.str() + ": " +
         print_term(d.term);
}

std::string equations_str(const std::vector<Equation>& eqs) {
  std::string s = "{";
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (i > 0) s += ", ";
    s += eqs[i].str();
  }
  return s + "}";
}

std::string degree_arrow(Degree before, Degree after) {
  return "[" + format_degree(before) + " -> " + format_degree(after) + "]";
}

Term parse_input(const std::string& text, const char* which, ArityTable* arities) {
  ParseOptions po;
  po.reserve_fresh_names = true;
  po.strict_arity = arities;
  try {
    return parse_term(text, po);
  } catch (const SyntaxError& e) {
    throw SyntaxError(std::string(which) + ": " + e.what(), e.offset(), e.line(), e.column());
  }
}

SimilarityMode similarity_mode(const std::string& mode) {
  return mode == "weak" ? SimilarityMode::EqualArity : SimilarityMode::Mapped;
}

// Ground terms over the symbols of t1 and t2 up to the deeper input's depth,
// or nothing when that space is out of reach.
std::optional<std::vector<Term>> ground_range(const Term& t1, const Term& t2) {
  oracle::TermSpace space;
  for (const Term* t : {&t1, &t2}) {
    for (const Symbol& s : symbols_of(*t)) {
      if (std::find(space.symbols.begin(), space.symbols.end(), s) == space.symbols.end()) {
        space.symbols.push_back(s);
      }
    }
  }
  if (std::none_of(space.symbols.begin(), space.symbols.end(),
                   [](const Symbol& s) { return s.arity == 0; })) {
    space.symbols.push_back(Symbol{"zz", 0});
  }
  space.max_depth = std::max(t1.depth(), t2.depth());
  try {
    return oracle::enumerate_terms(space);
  } catch (const oracle::SpaceTooLarge&) {
    return std::nullopt;
  }
}

void verify_unify(const Context& ctx, const Term& t1, const Term& t2, const UnifyOutcome& r,
                  Result& out) {
  if (r.solved() && !r.substitution.is_idempotent()) {
    out.diagnostics.push_back("verify: cyclic solved form, skipped");
    return;
  }
  if (r.solved()) {
    const Term i1 = apply(r.substitution, t1);
    const Term i2 = apply(r.substitution, t2);
    if (ctx.mode == "crisp") {
      if (!(i1 == i2)) throw VerifyMismatch("instances differ: " + print_term(i1) + " vs " +
                                            print_term(i2));
      return;
    }
    const Degree sim = oracle::naive_similarity(ctx.sig, i1, i2, similarity_mode(ctx.mode));
    const bool ok = ctx.sig.tnorm() == TNorm::Min ? std::abs(sim - r.degree) <= kVerifyTolerance
                                                  : sim > 0.0;
    if (!ok) {
      throw VerifyMismatch("instance similarity " + format_degree(sim) +
                           " does not match degree " + format_degree(r.degree));
    }
    return;
  }
  if (ctx.mode != "crisp") {
    out.diagnostics.push_back("verify: no oracle for fuzzy failures, skipped");
    return;
  }
  const auto range = ground_range(t1, t2);
  try {
    if (!range) throw oracle::SpaceTooLarge(oracle::kMaxSpace + 1);
    const auto unifiers = oracle::oracle_unifiers(t1, t2, *range);
    if (!unifiers.empty()) {
      throw VerifyMismatch("oracle found unifier " + unifiers.front().str());
    }
  } catch (const oracle::SpaceTooLarge&) {
    out.diagnostics.push_back("verify: oracle space too large, skipped");
  }
}

void verify_generalize(const Context& ctx, const GenResult& g) {
  const std::pair<const Substitution*, const Term*> sides[] = {{&g.sigma1, &g.input1},
                                                               {&g.sigma2, &g.input2}};
  for (const auto& [sigma, input] : sides) {
    const Term inst = apply(*sigma, g.generalizer);
    if (ctx.mode == "crisp") {
      if (!(inst == *input)) {
        throw VerifyMismatch("generalizer instance " + print_term(inst) + " differs from " +
                             print_term(*input));
      }
      continue;
    }
    const Degree sim = oracle::naive_similarity(ctx.sig, inst, *input, similarity_mode(ctx.mode));
    if (sim + kVerifyTolerance < g.degree) {
      throw VerifyMismatch("generalizer instance " + print_term(inst) + " is only " +
                           format_degree(sim) + "-similar to " + print_term(*input));
    }
  }
}

UnifyConfig unify_config(const Context& ctx) {
  UnifyConfig cfg;
  cfg.mode = ctx.mode == "crisp" ? UnifyMode::Crisp
             : ctx.mode == "weak" ? UnifyMode::Weak
                                  : UnifyMode::Full;
  cfg.occurs_check = !ctx.opt.no_occurs_check;
  cfg.signature = ctx.sig;
  return cfg;
}

GenConfig gen_config(const Context& ctx) {
  GenConfig cfg;
  cfg.mode = ctx.mode == "crisp" ? GenMode::Crisp
             : ctx.mode == "weak" ? GenMode::FunctorWeak
                                  : GenMode::Full;
  cfg.signature = ctx.sig;
  cfg.shared = ctx.opt.keep_shared ? SharedVariables::Keep : SharedVariables::Rename;
  return cfg;
}

Result run_unify(const Context& ctx, const Term& t1, const Term& t2) {
  const UnifyOutcome r = unify(t1, t2, unify_config(ctx));
  Result out;
  out.status = std::string(to_string(r.status));
  out.code = r.solved() ? kOk : kNegative;

  Json trace = Json::array();
  std::vector<std::string> trace_lines;
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    const TraceStep& s = r.trace[k];
    Json produced = Json::array();
    for (const Equation& e : s.produced) produced.push_back(e.str());
    trace.push_back({{"step", k + 1},
                     {"rule", rule_name(s.rule)},
                     {"consumed", s.consumed.str()},
                     {"produced", produced},
                     {"degree_before", json_degree(s.degree_before)},
                     {"degree_after", json_degree(s.degree_after)},
                     {"dropped_args", dropped_json(s.dropped)}});
    trace_lines.push_back(std::to_string(k + 1) + ". " + std::string(rule_name(s.rule)) + ": " +
                          s.consumed.str() + " ==> " + equations_str(s.produced) + " " +
                          degree_arrow(s.degree_before, s.degree_after));
    for (const DroppedArgument& d : s.dropped) trace_lines.push_back(dropped_note(d));
  }

  out.json = {{"status", out.status},
              {"degree", json_degree(r.degree)},
              {"substitution", substitution_json(r.substitution)},
              {"trace", trace},
              {"dropped_args", dropped_json(r.dropped)}};
  if (r.offending) out.json["offending"] = r.offending->str();

  if (ctx.opt.trace) {
    out.human.push_back("trace:");
    for (std::string& l : trace_lines) out.human.push_back(std::move(l));
  }
  out.human.push_back("status: " + out.status);
  out.human.push_back("degree: " + format_degree(r.degree));
  if (r.solved()) {
    out.human.push_back("substitution: " + r.substitution.str());
  } else if (r.offending) {
    out.human.push_back("offending: " + r.offending->str());
  }
  for (const DroppedArgument& d : r.dropped) out.human.push_back(dropped_note(d).substr(3));

  out.line = out.status + "\tdegree=" + format_degree(r.degree) + "\t" +
             (r.solved() ? r.substitution.str() : r.offending ? r.offending->str() : "");
  if (ctx.opt.verify) verify_unify(ctx, t1, t2, r, out);
  return out;
}

Result run_generalize(const Context& ctx, const Term& t1, const Term& t2) {
  const GenResult g = generalize(t1, t2, gen_config(ctx));
  Result out;
  out.status = "GENERALIZED";

  Json trace = Json::array();
  std::vector<std::string> trace_lines;
  for (std::size_t k = 0; k < g.trace.size(); ++k) {
    const GenStep& s = g.trace[k];
    trace.push_back({{"step", k + 1},
                     {"rule", rule_name(s.rule)},
                     {"depth", s.depth},
                     {"left", print_term(s.left)},
                     {"right", print_term(s.right)},
                     {"unapplied", s.unapplied},
                     {"generalizer", print_term(s.generalizer)},
                     {"degree_before", json_degree(s.degree_before)},
                     {"degree_after", json_degree(s.degree_after)},
                     {"dropped_args", dropped_json(s.dropped)}});
    trace_lines.push_back(std::to_string(k + 1) + ". " + std::string(rule_name(s.rule)) + ": " +
                          print_term(s.left) + " ^ " + print_term(s.right) + " ==> " +
                          print_term(s.generalizer) + " " +
                          degree_arrow(s.degree_before, s.degree_after));
    for (const DroppedArgument& d : s.dropped) trace_lines.push_back(dropped_note(d));
  }

  out.json = {{"status", out.status},
              {"degree", json_degree(g.degree)},
              {"substitution", substitution_json(g.renaming)},
              {"generalizer", print_term(g.generalizer)},
              {"sigma1", substitution_json(g.sigma1)},
              {"sigma2", substitution_json(g.sigma2)},
              {"trace", trace},
              {"dropped_args", dropped_json(g.dropped)}};

  if (ctx.opt.trace) {
    out.human.push_back("trace:");
    for (std::string& l : trace_lines) out.human.push_back(std::move(l));
  }
  if (!g.renaming.empty()) out.human.push_back("renamed second input: " + g.renaming.str());
  out.human.push_back("generalizer: " + print_term(g.generalizer));
  out.human.push_back("sigma1: " + g.sigma1.str());
  out.human.push_back("sigma2: " + g.sigma2.str());
  out.human.push_back("degree: " + format_degree(g.degree));
  for (const DroppedArgument& d : g.dropped) out.human.push_back(dropped_note(d).substr(3));

  out.line = out.status + "\tdegree=" + format_degree(g.degree) + "\t" +
             print_term(g.generalizer) + "\t" + g.sigma1.str() + "\t" + g.sigma2.str();
  if (ctx.opt.verify) verify_generalize(ctx, g);
  return out;
}

Result run_similarity(const Context& ctx, const Term& t1, const Term& t2) {
  const SimilaritySignature none(ctx.sig.tnorm());
  const SimilaritySignature& sig = ctx.mode == "crisp" ? none : ctx.sig;
  const SimilarityMode mode = similarity_mode(ctx.mode);
  const Degree d = term_similarity(sig, t1, t2, mode);
  Result out;
  out.status = d > 0.0 ? "SIMILAR" : "DISSIMILAR";
  out.code = d > 0.0 ? kOk : kNegative;
  out.json = {{"status", out.status},
              {"degree", json_degree(d)},
              {"substitution", Json::object()},
              {"trace", Json::array()},
              {"dropped_args", Json::array()}};
  out.human.push_back("degree: " + format_degree(d));
  out.line = out.status + "\tdegree=" + format_degree(d);
  if (ctx.opt.verify) {
    const Degree naive = oracle::naive_similarity(sig, t1, t2, mode);
    if (std::abs(naive - d) > kVerifyTolerance) {
      throw VerifyMismatch("naive similarity is " + format_degree(naive));
    }
  }
  return out;
}

Result run_subsumes(const Context& ctx, const Term& general, const Term& specific) {
  const std::optional<Substitution> m = subsumes(general, specific);
  Result out;
  out.status = m ? "SUBSUMES" : "NO_MATCH";
  out.code = m ? kOk : kNegative;
  out.json = {{"status", out.status},
              {"degree", m ? 1.0 : 0.0},
              {"substitution", m ? substitution_json(*m) : Json::object()},
              {"trace", Json::array()},
              {"dropped_args", Json::array()}};
  out.human.push_back(m ? "true" : "false");
  if (m) out.human.push_back("matcher: " + m->str());
  out.line = out.status + (m ? "\t" + m->str() : "");
  if (ctx.opt.verify) {
    Substitution witness;
    const bool naive = oracle::naive_matches(general, specific, &witness);
    if (naive != m.has_value() || (m && !(apply(*m, general) == specific))) {
      throw VerifyMismatch("oracle matcher disagrees");
    }
  }
  return out;
}

// Runs one two-term command; every error is folded into the Result.
Result execute(const Context& ctx, const std::string& command, const std::string& s1,
               const std::string& s2) {
  try {
    ArityTable arities;
    ArityTable* table = ctx.opt.strict_arity ? &arities : nullptr;
    const Term t1 = parse_input(s1, "first term", table);
    const Term t2 = parse_input(s2, "second term", table);
    if (command == "unify") return run_unify(ctx, t1, t2);
    if (command == "generalize") return run_generalize(ctx, t1, t2);
    if (command == "similarity") return run_similarity(ctx, t1, t2);
    if (command == "subsumes") return run_subsumes(ctx, t1, t2);
    throw UsageError("unknown command '" + command + "'");
  } catch (const VerifyMismatch& e) {
    Result r;
    r.code = kVerifyMismatch;
    r.status = "VERIFY_MISMATCH";
    r.diagnostics.push_back(std::string("verify mismatch: ") + e.what());
    return r;
  } catch (const std::exception& e) {
    Result r;
    r.code = kError;
    r.status = "ERROR";
    r.diagnostics.push_back(std::string("error: ") + e.what());
    return r;
  }
}

void emit(const Context& ctx, const Result& r, std::ostream& out, std::ostream& err) {
  for (const std::string& d : r.diagnostics) err << d << '\n';
  if (r.code == kError || r.code == kVerifyMismatch) return;
  if (ctx.opt.json) {
    Json j = r.json;
    if (ctx.opt.verify) j["verified"] = true;
    out << j.dump(2) << '\n';
    return;
  }
  for (const std::string& l : r.human) out << l << '\n';
  if (ctx.opt.verify) out << "verified: yes\n";
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, '\t')) fields.push_back(field);
  if (!line.empty() && line.back() == '\t') fields.emplace_back();
  return fields;
}

int run_batch(const Context& ctx, std::ostream& out, std::ostream& err) {
  std::ifstream in(ctx.opt.batch_path);
  if (!in) {
    err << "error: cannot open batch file '" << ctx.opt.batch_path << "'\n";
    return kError;
  }
  std::size_t ok = 0;
  std::size_t fail = 0;
  std::size_t errors = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;

    const std::vector<std::string> fields = split_tabs(line);
    Result r;
    std::string command = fields.empty() ? "" : fields[0];
    if (fields.size() != 3) {
      r.code = kError;
      r.status = "ERROR";
      r.diagnostics.push_back("expected COMMAND<TAB>TERM1<TAB>TERM2");
    } else {
      r = execute(ctx, command, fields[1], fields[2]);
    }

    const std::string prefix = std::to_string(lineno) + "\t" + command + "\t";
    if (r.code == kOk) ++ok;
    else if (r.code == kNegative) ++fail;
    else ++errors;

    if (r.code == kError || r.code == kVerifyMismatch) {
      for (const std::string& d : r.diagnostics) err << "line " << lineno << ": " << d << '\n';
      if (ctx.opt.json) {
        out << Json{{"line", lineno}, {"status", r.status}}.dump() << '\n';
      } else {
        out << prefix << r.status << '\n';
      }
      continue;
    }
    for (const std::string& d : r.diagnostics) err << "line " << lineno << ": " << d << '\n';
    if (ctx.opt.json) {
      Json j = {{"line", lineno}, {"command", command}};
      for (const auto& [k, v] : r.json.items()) j[k] = v;
      out << j.dump() << '\n';
    } else {
      out << prefix << r.line << '\n';
    }
  }
  out << "ok=" << ok << " fail=" << fail << " err=" << errors << '\n';
  return errors == 0 ? kOk : kError;
}

int run_check_sig(const Context& ctx, const std::string& path, std::ostream& out,
                  std::ostream& err) {
  SimilaritySignature sig;
  try {
    sig = load_signature_file(path);
  } catch (const std::exception& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return kError;
  }
  if (ctx.opt.check_transitive) {
    for (const TransitivityViolation& v : transitivity_violations(sig)) {
      err << "warning: not min-transitive: " << v.a.str() << " ~ " << v.b.str() << " ("
          << format_degree(v.ab) << "), " << v.b.str() << " ~ " << v.c.str() << " ("
          << format_degree(v.bc) << "), but " << v.a.str() << " ~ " << v.c.str() << " ("
          << format_degree(v.ac) << ")\n";
    }
  }
  const std::string tnorm = sig.tnorm() == TNorm::Min ? "min" : "product";
  if (ctx.opt.json) {
    out << Json{{"status", "VALID"}, {"entries", sig.entries().size()}, {"tnorm", tnorm}}.dump(2)
        << '\n';
  } else {
    out << "ok: " << sig.entries().size() << " entries, tnorm " << tnorm << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unification and generalization of first-order terms over similar signatures",
               "termlat"};
  app.fallthrough();

  Options opt;
  app.add_option("--sig", opt.sig_path, "Similarity signature file (default: $TERMLAT_SIG)");
  app.add_option("--mode", opt.mode, "crisp, weak or full (default: full with a signature)")
      ->check(CLI::IsMember({"crisp", "weak", "full"}));
  app.add_option("--tnorm", opt.tnorm, "Override the signature's t-norm")
      ->check(CLI::IsMember({"min", "product"}));
  app.add_flag("--no-occurs-check", opt.no_occurs_check, "Unify without the occurs-check");
  app.add_flag("--trace", opt.trace, "Print the derivation");
  app.add_flag("--json", opt.json, "JSON output");
  app.add_flag("--verify", opt.verify, "Re-check the result against the brute-force oracle");
  app.add_flag("--strict-arity", opt.strict_arity,
               "Reject a functor name used at two arities in one problem");
  app.add_flag("--keep-shared", opt.keep_shared,
               "generalize: do not rename variables shared by both inputs");
  app.add_flag("--check-transitive", opt.check_transitive,
               "check-sig: warn about triples that are not min-transitive");
  app.add_option("--batch", opt.batch_path, "Run COMMAND<TAB>TERM1<TAB>TERM2 lines from FILE");

  std::string t1;
  std::string t2;
  std::string sig_file;
  std::vector<CLI::App*> two_term;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"unify", "Most general (weak) unifier of two terms"},
           {"generalize", "Least general (fuzzy) generalization of two terms"},
           {"similarity", "Similarity degree of two terms"},
           {"subsumes", "Whether the first term subsumes the second"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("term1", t1, "First term")->required();
    sub->add_option("term2", t2, "Second term")->required();
    two_term.push_back(sub);
  }
  CLI::App* check = app.add_subcommand("check-sig", "Validate a signature file");
  check->add_option("file", sig_file, "Signature file (default: --sig)");
  app.require_subcommand(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  Context ctx;
  ctx.opt = opt;
  if (ctx.opt.sig_path.empty()) {
    if (const char* env = std::getenv("TERMLAT_SIG"); env != nullptr && *env != '\0') {
      ctx.opt.sig_path = env;
    }
  }

  if (check->parsed()) {
    const std::string path = sig_file.empty() ? ctx.opt.sig_path : sig_file;
    if (path.empty()) {
      err << "error: check-sig needs a signature file\n";
      return kError;
    }
    return run_check_sig(ctx, path, out, err);
  }

  std::string command;
  for (CLI::App* sub : two_term) {
    if (sub->parsed()) command = sub->get_name();
  }
  if (command.empty() == ctx.opt.batch_path.empty()) {
    err << "error: give exactly one of a command or --batch\n" << app.help();
    return kError;
  }

  if (!ctx.opt.sig_path.empty()) {
    try {
      ctx.sig = load_signature_file(ctx.opt.sig_path);
      ctx.have_sig = true;
    } catch (const std::exception& e) {
      err << "error: " << ctx.opt.sig_path << ": " << e.what() << '\n';
      return kError;
    }
  }
  if (!ctx.opt.tnorm.empty()) {
    ctx.sig.set_tnorm(ctx.opt.tnorm == "min" ? TNorm::Min : TNorm::Product);
  }
  ctx.mode = !ctx.opt.mode.empty() ? ctx.opt.mode : ctx.have_sig ? "full" : "crisp";

  if (!ctx.opt.batch_path.empty()) return run_batch(ctx, out, err);
  const Result r = execute(ctx, command, t1, t2);
  emit(ctx, r, out, err);
  return r.code;
}

}  // namespace termlat::cli
