#include "finlin/split.hpp"

#include <unordered_map>
#include <unordered_set>

#include "finlin/automata.hpp"
#include "finlin/error.hpp"

namespace finlin {

VarPartition::VarPartition(std::set<std::string> l, std::set<std::string> r)
    : left(std::move(l)), right(std::move(r)) {
  for (const auto& v : left) {
    if (right.contains(v)) {
      throw PreconditionError("variable '" + v + "' on both sides of the partition");
    }
  }
}

bool SplitForm::is_true() const {
  return pairs.size() == 1 && pairs[0].prefix.kind() == Kind::True &&
         pairs[0].suffix.kind() == Kind::True;
}

namespace {

using Pairs = std::vector<SplitPair>;

enum class Side { Left, Right };

class Splitter {
 public:
  explicit Splitter(const SplitOptions& opt) : opt_(opt) {}

  Pairs split(const Formula& f, const VarPartition& part) {
    switch (f.kind()) {
      case Kind::True:
        return {{top(), top()}};
      case Kind::False:
        return {};
      case Kind::Less:
      case Kind::Eq:
      case Kind::Pred:
      case Kind::Rel:
        return atom(f, part, true);
      case Kind::Not:
        return atom(f.body(), part, false);
      case Kind::And: {
        Pairs acc{{top(), top()}};
        for (const auto& c : f.children()) {
          acc = product(acc, split(c, part));
          if (acc.empty()) break;
        }
        return acc;
      }
      case Kind::Or: {
        Pairs acc;
        for (const auto& c : f.children()) {
          Pairs p = split(c, part);
          acc.insert(acc.end(), p.begin(), p.end());
        }
        return normalize(std::move(acc));
      }
      case Kind::Exists:
        return quantify_exists(f, part);
      case Kind::Forall:
        return quantify_forall(f, part);
      case Kind::Implies:
      case Kind::Iff:
        break;
    }
    throw PreconditionError("split expects negation normal form");
  }

  Pairs normalize(Pairs in) {
    Pairs out;
    for (auto& p : in) {
      if (p.prefix.kind() == Kind::False || p.suffix.kind() == Kind::False) continue;
      if (p.prefix.kind() == Kind::True && p.suffix.kind() == Kind::True) {
        return {{top(), top()}};
      }
      out.push_back(std::move(p));
    }
    out = group(std::move(out), /*by_suffix=*/true);
    out = group(std::move(out), /*by_suffix=*/false);
    for (const auto& p : out) {
      if (p.prefix.kind() == Kind::True && p.suffix.kind() == Kind::True) {
        return {{top(), top()}};
      }
    }
    if (out.size() > opt_.max_pairs) {
      throw BudgetExceeded("split decomposition exceeds " +
                           std::to_string(opt_.max_pairs) + " pairs");
    }
    return out;
  }

 private:
  // Merges pairs agreeing on one side by disjoining the other side.
  Pairs group(Pairs in, bool by_suffix) {
    std::unordered_map<Formula, std::size_t, FormulaHash> index;
    std::vector<std::vector<Formula>> merged;
    Pairs out;
    for (auto& p : in) {
      const Formula& shared = by_suffix ? p.suffix : p.prefix;
      const Formula& other = by_suffix ? p.prefix : p.suffix;
      auto [it, fresh] = index.emplace(shared, out.size());
      if (fresh) {
        out.push_back(p);
        merged.push_back({other});
      } else {
        merged[it->second].push_back(other);
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (merged[i].size() == 1) continue;
      Formula d = disj(merged[i]);
      (by_suffix ? out[i].prefix : out[i].suffix) = d;
    }
    return out;
  }

  Pairs product(const Pairs& a, const Pairs& b) {
    if (a.size() * b.size() > opt_.max_pairs * 4) {
      throw BudgetExceeded("split decomposition exceeds " +
                           std::to_string(opt_.max_pairs) + " pairs");
    }
    Pairs out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
      for (const auto& y : b) {
        out.push_back({conj({x.prefix, y.prefix}), conj({x.suffix, y.suffix})});
      }
    }
    return normalize(std::move(out));
  }

  static Side side_of(const std::string& v, const VarPartition& part) {
    if (part.left.contains(v)) return Side::Left;
    if (part.right.contains(v)) return Side::Right;
    throw PreconditionError("variable '" + v + "' is outside the partition");
  }

  // Atoms whose variables sit on one side stay on that side; mixed atoms
  // collapse to a constant because every prefix position precedes every
  // suffix position.
  Pairs atom(const Formula& a, const VarPartition& part, bool positive) {
    if (a.kind() == Kind::Rel) {
      throw PreconditionError("binary relation '" + a.symbol() + "' cannot be split");
    }
    if (!a.is_atom()) throw PreconditionError("split expects negation normal form");
    const Formula lit = positive ? a : neg(a);
    const Side s0 = side_of(a.vars()[0], part);
    const Side s1 = a.vars().size() > 1 ? side_of(a.vars()[1], part) : s0;
    if (s0 == s1) {
      if (s0 == Side::Left) return {{lit, top()}};
      return {{top(), lit}};
    }
    bool value = false;
    if (a.kind() == Kind::Less) value = s0 == Side::Left;  // x<y across the cut
    if (a.kind() == Kind::Eq) value = false;
    if (value == positive) return {{top(), top()}};
    return {};
  }

  static Formula mk_exists(const std::string& u, const Formula& f) {
    if (f.kind() == Kind::False) return f;
    if (f.kind() != Kind::True && !free_vars(f).contains(u)) {
      return conj({f, exists(u, top())});
    }
    return exists(u, f);
  }

  static Formula mk_forall(const std::string& u, const Formula& f) {
    if (f.kind() == Kind::True) return f;
    if (f.kind() != Kind::False && !free_vars(f).contains(u)) {
      return disj({f, forall(u, bottom())});
    }
    return forall(u, f);
  }

  static VarPartition with(const VarPartition& part, const std::string& u, Side s) {
    VarPartition p = part;
    p.left.erase(u);
    p.right.erase(u);
    (s == Side::Left ? p.left : p.right).insert(u);
    return p;
  }

  // E u. a(u) holds iff a witness lies in the prefix or in the suffix.
  Pairs quantify_exists(const Formula& f, const VarPartition& part) {
    const std::string& u = f.bound_var();
    Pairs out;
    for (const auto& p : split(f.body(), with(part, u, Side::Left))) {
      out.push_back({mk_exists(u, p.prefix), p.suffix});
    }
    for (const auto& p : split(f.body(), with(part, u, Side::Right))) {
      out.push_back({p.prefix, mk_exists(u, p.suffix)});
    }
    return normalize(std::move(out));
  }

  // A u. a(u) is (A u in prefix. a) & (A u in suffix. a). With u on the
  // prefix side a = OR_i (eta_i(u) & theta_i), and
  //   A u. OR_i (eta_i(u) & theta_i)  <->  OR_S (A u. OR_{i in S} eta_i(u)) & AND_{i in S} theta_i
  // ranging over index sets S; symmetrically for the suffix side.
  Pairs quantify_forall(const Formula& f, const VarPartition& part) {
    const std::string& u = f.bound_var();
    Pairs lower = forall_side(u, split(f.body(), with(part, u, Side::Left)), Side::Left);
    if (lower.empty()) return {};
    Pairs upper = forall_side(u, split(f.body(), with(part, u, Side::Right)), Side::Right);
    return product(lower, upper);
  }

  Pairs forall_side(const std::string& u, const Pairs& body, Side s) {
    const auto quantified = [s](const SplitPair& p) -> const Formula& {
      return s == Side::Left ? p.prefix : p.suffix;
    };
    const auto fixed = [s](const SplitPair& p) -> const Formula& {
      return s == Side::Left ? p.suffix : p.prefix;
    };
    // A pair whose fixed side is true belongs to every useful index set.
    std::vector<std::size_t> always, optional;
    for (std::size_t i = 0; i < body.size(); ++i) {
      (fixed(body[i]).kind() == Kind::True ? always : optional).push_back(i);
    }
    if (optional.size() > 12 || (std::size_t{1} << optional.size()) > opt_.max_pairs) {
      throw BudgetExceeded("universal quantifier over " + std::to_string(body.size()) +
                           " pairs exceeds the split budget");
    }
    Pairs out;
    const std::size_t subsets = std::size_t{1} << optional.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Formula> qs, fs;
      for (auto i : always) qs.push_back(quantified(body[i]));
      for (std::size_t k = 0; k < optional.size(); ++k) {
        if ((mask >> k) & 1U) {
          qs.push_back(quantified(body[optional[k]]));
          fs.push_back(fixed(body[optional[k]]));
        }
      }
      Formula q = mk_forall(u, disj(std::move(qs)));
      Formula c = conj(std::move(fs));
      if (s == Side::Left) {
        out.push_back({q, c});
      } else {
        out.push_back({c, q});
      }
    }
    return normalize(std::move(out));
  }

  SplitOptions opt_;
};

void collect_leaves(const Formula& f, std::vector<Formula>& out,
                    std::unordered_set<Formula, FormulaHash>& seen) {
  if (f.is_constant() || !seen.insert(f).second) return;
  if (f.kind() == Kind::And || f.kind() == Kind::Or) {
    for (const auto& c : f.children()) collect_leaves(c, out, seen);
    return;
  }
  out.push_back(f);
}

// Drops leaves that differ only in bound-variable names.
std::vector<Formula> distinct_up_to_renaming(const std::vector<Formula>& in) {
  std::unordered_set<Formula, FormulaHash> keys;
  std::vector<Formula> out;
  for (const auto& f : in) {
    if (keys.insert(canonical(f)).second) out.push_back(f);
  }
  return out;
}

std::size_t tree_size(const Formula& f,
                      std::unordered_map<Formula, std::size_t, FormulaHash>& memo) {
  if (auto it = memo.find(f); it != memo.end()) return it->second;
  std::size_t n = 1;
  for (const auto& c : f.children()) n += tree_size(c, memo);
  memo.emplace(f, n);
  return n;
}

void collect_preds(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::Pred) out.insert(f.symbol());
  for (const auto& c : f.children()) collect_preds(c, out);
}

std::vector<Formula> distinct_languages(const std::vector<Formula>& sentences,
                                        const SplitOptions& options) {
  std::set<std::string> names;
  for (const auto& f : sentences) collect_preds(f, names);
  if (names.size() > kMaxPredicates) return sentences;
  const Signature sig(std::vector<std::string>(names.begin(), names.end()));
  AutomataOptions aopt;
  aopt.max_states = options.max_states;
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const auto& f : sentences) {
    try {
      const Acceptor a = minimize(compile(simplify(f), sig, {}, aopt));
      if (a.num_states() == 1) continue;  // true or false everywhere
      if (seen.insert(language_key(a)).second) out.push_back(f);
    } catch (const BudgetExceeded&) {
      out.push_back(f);
    }
  }
  return out;
}

}  // namespace

SplitForm split_decompose(const Formula& phi, const VarPartition& partition,
                          const SplitOptions& options) {
  for (const auto& v : free_vars(phi)) {
    if (!partition.contains(v)) {
      throw PreconditionError("free variable '" + v + "' is outside the partition");
    }
  }
  Splitter s(options);
  SplitForm form{partition, s.normalize(s.split(simplify(phi), partition))};
  std::unordered_map<Formula, std::size_t, FormulaHash> memo;
  std::size_t total = 0;
  for (const auto& p : form.pairs) {
    total += tree_size(p.prefix, memo) + tree_size(p.suffix, memo);
    if (total > options.max_output_nodes) {
      throw BudgetExceeded("split decomposition exceeds " +
                           std::to_string(options.max_output_nodes) + " formula nodes");
    }
  }
  return form;
}

bool eval_split(const SplitForm& form, const WordModel& w, std::size_t cut,
                const Assignment& a) {
  return SplitEvaluator(form, w.sig).eval(w, cut, a);
}

SplitEvaluator::SplitEvaluator(const SplitForm& form, const Signature& sig)
    : partition_(form.partition) {
  const SymbolTable table = model_symbols(WordModel{sig, {}});
  std::unordered_map<Formula, std::size_t, FormulaHash> pre, suf;
  auto intern = [&](const Formula& f, auto& index, std::vector<CompiledFormula>& out) {
    auto [it, fresh] = index.emplace(f, out.size());
    if (fresh) out.emplace_back(f, table);
    return it->second;
  };
  for (const auto& p : form.pairs) {
    pairs_.emplace_back(intern(p.prefix, pre, prefixes_), intern(p.suffix, suf, suffixes_));
  }
}

std::vector<bool> SplitEvaluator::truth(const WordModel& m, const Assignment& a,
                                        bool prefix) const {
  const auto& forms = prefix ? prefixes_ : suffixes_;
  std::vector<bool> side(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) side[i] = forms[i].eval(m, a);
  std::vector<bool> out(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    out[i] = side[prefix ? pairs_[i].first : pairs_[i].second];
  }
  return out;
}

std::vector<bool> SplitEvaluator::prefix_truth(const WordModel& u, const Assignment& lower) const {
  return truth(u, lower, true);
}

std::vector<bool> SplitEvaluator::suffix_truth(const WordModel& v, const Assignment& upper) const {
  return truth(v, upper, false);
}

bool SplitEvaluator::combine(const std::vector<bool>& prefix, const std::vector<bool>& suffix) {
  for (std::size_t i = 0; i < prefix.size() && i < suffix.size(); ++i) {
    if (prefix[i] && suffix[i]) return true;
  }
  return false;
}

bool SplitEvaluator::eval(const WordModel& w, std::size_t cut, const Assignment& a) const {
  if (cut > w.size()) throw PreconditionError("cut beyond the end of the word");
  Assignment lower, upper;
  for (const auto& [v, p] : a) {
    if (partition_.left.contains(v)) {
      if (p >= cut) throw PreconditionError("left variable '" + v + "' assigned above the cut");
      lower[v] = p;
    } else if (partition_.right.contains(v)) {
      if (p < cut) throw PreconditionError("right variable '" + v + "' assigned below the cut");
      upper[v] = p - cut;
    }
  }
  const WordModel u = w.prefix(cut);
  const WordModel v = w.suffix(cut);
  // Each distinct side formula is evaluated at most once.
  std::vector<std::int8_t> pv(prefixes_.size(), -1), sv(suffixes_.size(), -1);
  for (const auto& [i, j] : pairs_) {
    if (pv[i] < 0) pv[i] = prefixes_[i].eval(u, lower) ? 1 : 0;
    if (!pv[i]) continue;
    if (sv[j] < 0) sv[j] = suffixes_[j].eval(v, upper) ? 1 : 0;
    if (sv[j]) return true;
  }
  return false;
}

SentenceComponents sentence_components(const Formula& alpha,
                                       const SplitOptions& options) {
  if (!is_sentence(alpha)) {
    throw PreconditionError("sentence_components needs a sentence");
  }
  SentenceComponents out{split_decompose(alpha, VarPartition{}, options), {}, {}};
  std::unordered_set<Formula, FormulaHash> seen_eta, seen_theta;
  for (const auto& p : out.form.pairs) {
    collect_leaves(p.prefix, out.etas, seen_eta);
    collect_leaves(p.suffix, out.thetas, seen_theta);
  }
  out.etas = distinct_up_to_renaming(out.etas);
  out.thetas = distinct_up_to_renaming(out.thetas);
  if (options.semantic_components) {
    out.thetas = distinct_languages(out.thetas, options);
  }
  return out;
}

}  // namespace finlin
