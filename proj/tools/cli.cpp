#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "finlin/automata.hpp"
#include "finlin/error.hpp"
#include "finlin/eval.hpp"
#include "finlin/interp.hpp"
#include "finlin/parser.hpp"
#include "finlin/shrink.hpp"
#include "finlin/split.hpp"
#include "finlin/structure.hpp"
#include "finlin/tis.hpp"
#include "finlin/witness.hpp"

namespace fs = std::filesystem;

namespace finlin::cli {

std::string Report::render(Format format) const {
  std::ostringstream os;
  if (format == Format::Kv) {
    os << "verdict=" << verdict << '\n';
    for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
    return os.str();
  }
  os << verdict << '\n';
  for (const auto& l : lines) os << l << '\n';
  return os.str();
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "decide",    "find-model", "shrink",       "split",    "theory",        "compile",
      "tis-check", "tis-classify", "tis-pad", "interp-verify", "corpus"};
  return names;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("FINLIN_BUDGET")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultBudget;
}

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string text_or_file(const std::string& arg) {
  std::error_code ec;
  return fs::is_regular_file(arg, ec) ? read_file(arg) : arg;
}

struct Source {
  std::string text;
  std::optional<std::vector<std::string>> sig;
};

// Drops `#` comment lines; `# sig: P,Q` declares the signature.
Source strip_comments(const std::string& raw) {
  Source s;
  std::istringstream in(raw);
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b != std::string::npos && line[b] == '#') {
      const std::string rest = line.substr(b + 1);
      const auto k = rest.find("sig:");
      if (k != std::string::npos && rest.find_first_not_of(" \t") == k) {
        s.sig = split_list(rest.substr(k + 4));
      }
      continue;
    }
    s.text += line + '\n';
  }
  return s;
}

struct Loaded {
  Formula formula;
  Signature sig;
  std::size_t next = 0;  // first unused positional
};

Loaded load_formula(const Job& job) {
  Loaded l;
  Source src;
  if (job.expr) {
    src = strip_comments(*job.expr);
  } else {
    if (job.inputs.empty()) throw UsageError(job.command + " needs a formula (file or -e)");
    src = strip_comments(text_or_file(job.inputs[0]));
    l.next = 1;
  }
  const auto names = job.sig ? job.sig : src.sig;
  if (names) {
    l.sig = Signature(*names);
    l.formula = parse(src.text, l.sig);
  } else {
    std::tie(l.formula, l.sig) = parse_infer(src.text);
  }
  return l;
}

const std::string& positional(const Job& job, std::size_t i, const char* what) {
  if (i >= job.inputs.size()) throw UsageError(job.command + " needs " + what);
  return job.inputs[i];
}

std::string word_text(const WordModel& w) { return to_string(w); }

std::string joined(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out;
}

AutomataOptions automata_options(const Job& job) {
  AutomataOptions o;
  o.max_states = job.budget;
  return o;
}

SplitOptions split_options(const Job& job) {
  SplitOptions o;
  o.max_states = job.budget;
  return o;
}

void add_stats(Report& r, const CompileStats& stats) {
  for (const auto& s : stats.stages) {
    r.lines.push_back("stage " + s.stage + ": " + std::to_string(s.states_before_min) + " -> " +
                      std::to_string(s.states) + " states");
  }
  r.lines.push_back("peak states: " + std::to_string(stats.peak_states));
  r.kv.emplace_back("stages", std::to_string(stats.stages.size()));
}

void write_dot_file(const Job& job, const Acceptor& a, const Signature& sig) {
  if (!job.emit_dot) return;
  std::ofstream out(*job.emit_dot);
  if (!out) throw UsageError("cannot write " + *job.emit_dot);
  write_dot(out, a, sig);
}

Report cmd_decide(const Job& job) {
  const Loaded l = load_formula(job);
  const DecisionResult d = decide_fmp(l.formula, l.sig, automata_options(job));
  Report r;
  if (d.verdict == Verdict::HasFiniteModel) {
    r.verdict = "SAT-FIN " + word_text(*d.minimal);
    r.kv.emplace_back("word", word_text(*d.minimal));
    r.kv.emplace_back("length", std::to_string(d.minimal->size()));
    if (d.only_empty_model()) r.lines.push_back("only the empty word is a model");
    if (d.minimal_nonempty && d.minimal_nonempty != d.minimal) {
      r.lines.push_back("least nonempty model: " + word_text(*d.minimal_nonempty));
      r.kv.emplace_back("nonempty_word", word_text(*d.minimal_nonempty));
    }
  } else {
    r.verdict = "UNSAT-FIN";
    r.exit_code = kNegative;
  }
  if (d.acceptor) r.kv.emplace_back("states", std::to_string(d.acceptor->num_states()));
  r.kv.emplace_back("peak_states", std::to_string(d.stats.peak_states));
  if (job.stats) add_stats(r, d.stats);
  if (d.acceptor) write_dot_file(job, *d.acceptor, l.sig);
  return r;
}

Report cmd_find_model(const Job& job) {
  const Loaded l = load_formula(job);
  if (!is_sentence(l.formula)) throw PreconditionError("find-model needs a sentence");
  Report r;
  r.kv.emplace_back("max_len", std::to_string(job.max_len));
  if (auto w = find_finite_model(l.formula, l.sig, job.max_len)) {
    r.verdict = "FOUND " + word_text(*w);
    r.kv.emplace_back("word", word_text(*w));
  } else {
    r.verdict = "NONE up to length " + std::to_string(job.max_len);
    r.exit_code = kNegative;
  }
  return r;
}

Report cmd_shrink(const Job& job) {
  const Loaded l = load_formula(job);
  const WordModel w = parse_word(text_or_file(positional(job, l.next, "a word")), l.sig);
  const Shrinker s(l.formula, split_options(job));
  const auto [core, trace] = s.shrink_to_core(w);
  Report r;
  r.verdict = "CORE " + word_text(core);
  for (const auto& st : trace.steps) {
    r.lines.push_back("remove (" + std::to_string(st.a) + "," + std::to_string(st.b) +
                      "] type " + to_string(st.type) + ": " + std::to_string(st.before_len) +
                      " -> " + std::to_string(st.after_len));
  }
  r.kv.emplace_back("core", word_text(core));
  r.kv.emplace_back("core_len", std::to_string(core.size()));
  r.kv.emplace_back("steps", std::to_string(trace.steps.size()));
  r.kv.emplace_back("ell", std::to_string(s.thetas().size()));
  return r;
}

Report cmd_split(const Job& job) {
  const Loaded l = load_formula(job);
  VarPartition vp({job.left.begin(), job.left.end()}, {job.right.begin(), job.right.end()});
  const SplitForm f = split_decompose(l.formula, vp, split_options(job));
  Report r;
  r.verdict = "SPLIT pairs=" + std::to_string(f.pairs.size());
  r.lines.push_back("prefix | suffix");
  for (const auto& p : f.pairs) r.lines.push_back(to_string(p.prefix) + " | " + to_string(p.suffix));
  r.kv.emplace_back("pairs", std::to_string(f.pairs.size()));
  if (is_sentence(l.formula)) {
    const SentenceComponents c = sentence_components(l.formula, split_options(job));
    r.kv.emplace_back("etas", std::to_string(c.etas.size()));
    r.kv.emplace_back("ell", std::to_string(c.thetas.size()));
    for (std::size_t j = 0; j < c.thetas.size(); ++j) {
      r.lines.push_back("theta" + std::to_string(j) + ": " + to_string(c.thetas[j]));
    }
  }
  return r;
}

Report cmd_theory(const Job& job) {
  const Loaded l = load_formula(job);
  const AlphaTheory t = build_theory(l.formula, split_options(job));
  const auto axioms = t.axioms();
  Report r;
  r.verdict = "THEORY axioms=" + std::to_string(axioms.size());
  for (const auto& a : axioms) r.lines.push_back(to_string(a));
  r.kv.emplace_back("ell", std::to_string(t.thetas.size()));
  r.kv.emplace_back("axioms", std::to_string(axioms.size()));
  return r;
}

Report cmd_compile(const Job& job) {
  const Loaded l = load_formula(job);
  const std::set<std::string> fv = free_vars(l.formula);
  const std::vector<std::string> ctx(fv.begin(), fv.end());
  CompileStats stats;
  const Acceptor a = compile(l.formula, l.sig, ctx, automata_options(job), &stats);
  Report r;
  r.verdict = "ACCEPTOR states=" + std::to_string(a.num_states());
  r.kv.emplace_back("states", std::to_string(a.num_states()));
  r.kv.emplace_back("tracks", joined(ctx));
  r.kv.emplace_back("empty", is_empty(a) ? "yes" : "no");
  if (job.stats) add_stats(r, stats);
  write_dot_file(job, a, l.sig);
  return r;
}

FinStructure load_structure(const Job& job, std::size_t i) {
  return parse_structure(text_or_file(positional(job, i, "a structure")));
}

Report cmd_tis_check(const Job& job) {
  const FinStructure m = load_structure(job, 0);
  const AxiomReport a = job.star ? check_tis_star(m) : check_tis(m);
  const std::string name = job.star ? "TiS*" : "TiS";
  Report r;
  r.verdict = name + (a.ok() ? " yes" : " no");
  r.exit_code = a.ok() ? kDecided : kNegative;
  if (!a.nonempty) r.lines.push_back("empty structure");
  for (const auto& [ax, holds] : a.axioms) {
    r.lines.push_back(ax + ": " + (holds ? "holds" : "fails"));
  }
  r.kv.emplace_back("model", a.ok() ? "yes" : "no");
  r.kv.emplace_back("size", std::to_string(m.size()));
  return r;
}

Report cmd_tis_classify(const Job& job) {
  const FinStructure m = load_structure(job, 0);
  Report r;
  if (!check_tis(m).ok()) {
    r.verdict = "NOT-TIS";
    r.exit_code = kNegative;
    return r;
  }
  const Classification c = classify_tis(m);
  r.verdict = "X = " + to_string(c.x);
  for (std::size_t a = 0; a < c.image.size(); ++a) {
    r.lines.push_back(std::to_string(a) + " -> " + to_string(c.image[a]));
  }
  r.kv.emplace_back("x", to_string(c.x));
  r.kv.emplace_back("size", std::to_string(m.size()));
  return r;
}

Report cmd_tis_pad(const Job& job) {
  const FinStructure m = load_structure(job, 0);
  const FinStructure p = pad_model(m, job.pad, job.pad_target);
  Report r;
  r.verdict = to_string(p);
  r.kv.emplace_back("structure", to_string(p));
  r.kv.emplace_back("size", std::to_string(p.size()));
  r.kv.emplace_back("tis_star", check_tis_star(p).ok() ? "yes" : "no");
  return r;
}

Report cmd_interp_verify(const Job& job) {
  const Signature set_sig({}, {"In"});
  InterpretationWitness w;
  std::optional<Formula> beta;
  if (job.diagram) {
    const FinStructure m = parse_structure(text_or_file(*job.diagram));
    w.translation = build_diagram_interpretation(m);
    beta = diagram_sentence(m);
  } else if (job.translation) {
    w.translation = parse_translation(text_or_file(*job.translation), set_sig);
  } else {
    throw UsageError("interp-verify needs --translation or --diagram");
  }
  if (job.expr || !job.inputs.empty()) {
    const std::string text = job.expr ? *job.expr : text_or_file(job.inputs[0]);
    beta = parse(strip_comments(text).text, set_sig);
  }
  if (!beta) throw UsageError("interp-verify needs a sentence (-e) with --translation");
  if (!job.target) throw UsageError("interp-verify needs --target");
  w.target = parse_structure(text_or_file(*job.target));
  w.parameters = job.params;
  const bool ok = verify_interpretation(w, *beta);
  Report r;
  r.verdict = ok ? "VERIFIED" : "REFUTED";
  r.exit_code = ok ? kDecided : kNegative;
  r.lines.push_back("lifted: " + to_string(lift(w.translation, *beta)));
  r.kv.emplace_back("holds", ok ? "yes" : "no");
  r.kv.emplace_back("params", std::to_string(w.translation.params()));
  return r;
}

void validate(const Job& job) {
  if (job.budget < 1) throw UsageError("budget must be at least 1");
  const auto& cs = commands();
  if (std::find(cs.begin(), cs.end(), job.command) == cs.end()) {
    throw UsageError("unknown command '" + job.command + "'");
  }
}

Report error_report(int code, const std::string& verdict, const std::string& msg) {
  Report r;
  r.exit_code = code;
  r.verdict = verdict;
  r.lines.push_back(msg);
  r.kv.emplace_back("message", msg);
  return r;
}

}  // namespace

Report run(const Job& job) {
  try {
    validate(job);
    const std::string& c = job.command;
    if (c == "decide") return cmd_decide(job);
    if (c == "find-model") return cmd_find_model(job);
    if (c == "shrink") return cmd_shrink(job);
    if (c == "split") return cmd_split(job);
    if (c == "theory") return cmd_theory(job);
    if (c == "compile") return cmd_compile(job);
    if (c == "tis-check") return cmd_tis_check(job);
    if (c == "tis-classify") return cmd_tis_classify(job);
    if (c == "tis-pad") return cmd_tis_pad(job);
    if (c == "interp-verify") return cmd_interp_verify(job);
    return corpus_run(positional(job, 0, "a directory"), job);
  } catch (const BudgetExceeded& e) {
    return error_report(kBudget, "BUDGET", e.what());
  } catch (const std::exception& e) {
    return error_report(kError, "ERROR", e.what());
  }
}

Report corpus_run(const std::string& dir, const Job& job) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw UsageError(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  Report r;
  std::size_t budget_rows = 0, error_rows = 0, disagree = 0;
  r.lines.push_back("file verdict min_len ell bound states agree");
  for (const auto& path : files) {
    Job one = job;
    one.expr.reset();
    one.inputs = {path.string()};
    const std::string name = path.filename().string();
    std::string verdict = "ERROR", min_len = "-", ell = "-", bound = "-", states = "-",
                agree = "-";
    try {
      const Loaded l = load_formula(one);
      try {
        const DecisionResult d = decide_fmp(l.formula, l.sig, automata_options(job));
        const bool sat = d.verdict == Verdict::HasFiniteModel;
        verdict = sat ? "SAT-FIN" : "UNSAT-FIN";
        if (sat) min_len = std::to_string(d.minimal->size());
        if (d.acceptor) states = std::to_string(d.acceptor->num_states());
        const bool within = sat && d.minimal->size() <= job.max_len;
        const bool found = find_finite_model(l.formula, l.sig, job.max_len).has_value();
        agree = within == found ? "yes" : "no";
        if (within != found) ++disagree;
      } catch (const BudgetExceeded&) {
        verdict = "BUDGET";
        ++budget_rows;
      }
      try {
        const std::size_t n = sentence_components(l.formula, split_options(job)).thetas.size();
        ell = std::to_string(n);
        if (n < 64) bound = std::to_string(std::uint64_t{1} << n);
      } catch (const BudgetExceeded&) {
      }
    } catch (const BudgetExceeded&) {
      verdict = "BUDGET";
      ++budget_rows;
    } catch (const std::exception& e) {
      ++error_rows;
      r.kv.emplace_back(name + ".error", e.what());
    }
    r.lines.push_back(name + " " + verdict + " " + min_len + " " + ell + " " + bound + " " +
                      states + " " + agree);
    r.kv.emplace_back(name, verdict + " min_len=" + min_len + " ell=" + ell + " agree=" + agree);
  }
  r.verdict = "CORPUS files=" + std::to_string(files.size()) +
              " budget=" + std::to_string(budget_rows) + " errors=" + std::to_string(error_rows) +
              " disagree=" + std::to_string(disagree);
  r.kv.emplace_back("files", std::to_string(files.size()));
  r.kv.emplace_back("disagree", std::to_string(disagree));
  if (error_rows || disagree) {
    r.exit_code = kError;
  } else if (budget_rows) {
    r.exit_code = kBudget;
  }
  return r;
}

}  // namespace finlin::cli
