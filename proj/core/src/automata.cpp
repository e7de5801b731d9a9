#include "finlin/automata.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "finlin/error.hpp"

namespace finlin {

Acceptor::Acceptor(std::size_t letter_bits, std::vector<std::string> tracks,
                   std::uint32_t num_states)
    : letter_bits_(letter_bits),
      tracks_(std::move(tracks)),
      num_states_(num_states),
      delta_(static_cast<std::size_t>(num_states) << (letter_bits + tracks_.size()), 0),
      accepting_(num_states, false) {
  if (num_states == 0) throw PreconditionError("an acceptor needs at least one state");
}

bool Acceptor::accepts(const std::vector<Symbol>& word) const {
  State s = initial();
  for (Symbol a : word) {
    if (a >= alphabet_size()) throw PreconditionError("symbol outside the alphabet");
    s = next(s, a);
  }
  return accepting(s);
}

namespace {

void check_budget(std::size_t states, const AutomataOptions& opt) {
  if (states > opt.max_states) {
    throw BudgetExceeded("acceptor exceeds the budget of " +
                         std::to_string(opt.max_states) + " states");
  }
}

void check_alphabet(std::size_t bits, const AutomataOptions& opt) {
  if (bits > opt.max_symbol_bits) {
    throw BudgetExceeded("alphabet of 2^" + std::to_string(bits) + " symbols is too large");
  }
}

// Builds an acceptor from a dense transition list collected during a BFS.
Acceptor assemble(std::size_t letter_bits, const std::vector<std::string>& tracks,
                  const std::vector<State>& delta, const std::vector<bool>& accepting) {
  Acceptor out(letter_bits, tracks, static_cast<std::uint32_t>(accepting.size()));
  const std::size_t k = out.alphabet_size();
  for (State s = 0; s < accepting.size(); ++s) {
    out.set_accepting(s, accepting[s]);
    for (Symbol a = 0; a < k; ++a) out.set_next(s, a, delta[s * k + a]);
  }
  return out;
}

template <class Accept>
Acceptor product(const Acceptor& a, const Acceptor& b, Accept accept,
                 const AutomataOptions& opt) {
  if (a.letter_bits() != b.letter_bits() || a.tracks() != b.tracks()) {
    throw PreconditionError("product of acceptors over different alphabets");
  }
  const std::size_t k = a.alphabet_size();
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto id_of = [&](State x, State y) {
    const std::uint64_t key = (std::uint64_t{x} << 32) | y;
    auto [it, fresh] = ids.emplace(key, static_cast<State>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(x, y);
      check_budget(pairs.size(), opt);
    }
    return it->second;
  };
  id_of(a.initial(), b.initial());
  std::vector<State> delta;
  std::vector<bool> acc;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, y] = pairs[i];
    acc.push_back(accept(a.accepting(x), b.accepting(y)));
    delta.resize((i + 1) * k);
    for (Symbol s = 0; s < k; ++s) delta[i * k + s] = id_of(a.next(x, s), b.next(y, s));
  }
  return assemble(a.letter_bits(), a.tracks(), delta, acc);
}

}  // namespace

Acceptor well_formed(std::size_t letter_bits, const std::vector<std::string>& tracks) {
  const std::size_t t = tracks.size();
  if (t > 16) throw PreconditionError("too many tracks");
  const State dead = static_cast<State>(std::size_t{1} << t);
  // State = set of tracks already marked; `dead` after a repeated mark.
  Acceptor out(letter_bits, tracks, dead + 1);
  const std::size_t k = out.alphabet_size();
  for (State s = 0; s <= dead; ++s) {
    out.set_accepting(s, s + 1 == dead);
    for (Symbol a = 0; a < k; ++a) {
      const State marks = a >> letter_bits;
      out.set_next(s, a, (s == dead || (s & marks)) ? dead : (s | marks));
    }
  }
  return out;
}

Acceptor complement(const Acceptor& a) {
  Acceptor out = a;
  for (State s = 0; s < a.num_states(); ++s) out.set_accepting(s, !a.accepting(s));
  return out;
}

Acceptor intersect(const Acceptor& a, const Acceptor& b, const AutomataOptions& opt) {
  return product(a, b, [](bool x, bool y) { return x && y; }, opt);
}

Acceptor unite(const Acceptor& a, const Acceptor& b, const AutomataOptions& opt) {
  return product(a, b, [](bool x, bool y) { return x || y; }, opt);
}

Acceptor project_last(const Acceptor& a, const AutomataOptions& opt) {
  if (a.tracks().empty()) throw PreconditionError("no track to project");
  std::vector<std::string> tracks(a.tracks().begin(), a.tracks().end() - 1);
  const std::size_t lb = a.letter_bits();
  const std::size_t k = std::size_t{1} << (lb + tracks.size());
  const Symbol high = Symbol{1} << (lb + tracks.size());
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  auto id_of = [&](std::vector<State> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<State>(sets.size()));
    if (fresh) {
      sets.push_back(std::move(set));
      check_budget(sets.size(), opt);
    }
    return it->second;
  };
  id_of({a.initial()});
  std::vector<State> delta;
  std::vector<bool> acc;
  std::vector<State> buf;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::vector<State> cur = sets[i];
    acc.push_back(std::any_of(cur.begin(), cur.end(),
                              [&](State s) { return a.accepting(s); }));
    delta.resize((i + 1) * k);
    for (Symbol s = 0; s < k; ++s) {
      buf.clear();
      for (State q : cur) {
        buf.push_back(a.next(q, s));
        buf.push_back(a.next(q, s | high));
      }
      std::sort(buf.begin(), buf.end());
      buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
      delta[i * k + s] = id_of(buf);
    }
  }
  return assemble(lb, tracks, delta, acc);
}

// Moore partition refinement on the reachable part.
Acceptor minimize(const Acceptor& a) {
  const std::size_t k = a.alphabet_size();
  // Reachable states in BFS order.
  std::vector<State> order;
  std::vector<std::int64_t> pos(a.num_states(), -1);
  order.push_back(a.initial());
  pos[a.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      const State t = a.next(order[i], s);
      if (pos[t] < 0) {
        pos[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<std::uint32_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = a.accepting(order[i]) ? 1 : 0;
  std::size_t count = 0;
  {
    bool any0 = false, any1 = false;
    for (auto c : cls) (c ? any1 : any0) = true;
    count = static_cast<std::size_t>(any0) + static_cast<std::size_t>(any1);
    if (!any0) std::fill(cls.begin(), cls.end(), 0);
  }
  std::vector<std::uint32_t> sig(k + 1);
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next_cls(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (Symbol s = 0; s < k; ++s) {
        sig[s + 1] = cls[static_cast<std::size_t>(pos[a.next(order[i], s)])];
      }
      auto [it, fresh] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size()));
      next_cls[i] = it->second;
    }
    const bool stable = ids.size() == count;
    cls = std::move(next_cls);
    count = ids.size();
    if (stable) break;
  }
  // Renumber classes so that the initial state's class is 0, BFS order.
  std::vector<std::int64_t> renum(count, -1);
  std::uint32_t next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (renum[cls[i]] < 0) renum[cls[i]] = next_id++;
  }
  Acceptor out(a.letter_bits(), a.tracks(), static_cast<std::uint32_t>(count));
  for (std::size_t i = 0; i < n; ++i) {
    const State c = static_cast<State>(renum[cls[i]]);
    out.set_accepting(c, a.accepting(order[i]));
    for (Symbol s = 0; s < k; ++s) {
      const auto t = static_cast<std::size_t>(pos[a.next(order[i], s)]);
      out.set_next(c, s, static_cast<State>(renum[cls[t]]));
    }
  }
  return out;
}

namespace {

class Compiler {
 public:
  Compiler(const Signature& sig, const AutomataOptions& opt, CompileStats* stats)
      : sig_(sig), opt_(opt), stats_(stats) {}

  Acceptor run(const Formula& f, const std::vector<std::string>& ctx) {
    check_alphabet(sig_.size() + ctx.size(), opt_);
    switch (f.kind()) {
      case Kind::True:
        return record("true", wf(ctx));
      case Kind::False:
        return record("false", Acceptor(sig_.size(), ctx, 1));
      case Kind::Less:
      case Kind::Eq:
      case Kind::Pred:
        return record(to_string(f), intersect(atom(f, ctx), wf(ctx), opt_));
      case Kind::Rel:
        throw PreconditionError("binary relation '" + f.symbol() + "' cannot be compiled");
      case Kind::Not:
        return record("not", intersect(complement(run(f.body(), ctx)), wf(ctx), opt_));
      case Kind::And:
      case Kind::Or: {
        Acceptor acc = run(f.child(0), ctx);
        for (std::size_t i = 1; i < f.children().size(); ++i) {
          Acceptor rhs = run(f.child(i), ctx);
          acc = f.kind() == Kind::And ? intersect(acc, rhs, opt_) : unite(acc, rhs, opt_);
          acc = record(f.kind() == Kind::And ? "and" : "or", std::move(acc));
        }
        return acc;
      }
      case Kind::Implies:
        return run(lor(neg(f.child(0)), f.child(1)), ctx);
      case Kind::Iff:
        return run(lor(land(f.child(0), f.child(1)),
                       land(neg(f.child(0)), neg(f.child(1)))),
                   ctx);
      case Kind::Exists:
      case Kind::Forall:
        return quantifier(f, ctx);
    }
    throw PreconditionError("unhandled formula kind");
  }

 private:
  Acceptor quantifier(const Formula& f, const std::vector<std::string>& ctx) {
    std::string v = f.bound_var();
    Formula body = f.body();
    if (std::find(ctx.begin(), ctx.end(), v) != ctx.end()) {
      std::set<std::string> avoid = all_vars(body);
      avoid.insert(ctx.begin(), ctx.end());
      std::string nv = fresh_name(v, avoid);
      body = substitute(body, v, nv);
      v = nv;
    }
    std::vector<std::string> inner = ctx;
    inner.push_back(v);
    const bool universal = f.kind() == Kind::Forall;
    // A v. b  ==  ~E v. ~b
    Acceptor b = run(universal ? neg(body) : body, inner);
    Acceptor p = record("exists " + v, project_last(b, opt_));
    if (!universal) return p;
    return record("forall " + v, intersect(complement(p), wf(ctx), opt_));
  }

  Acceptor wf(const std::vector<std::string>& ctx) {
    auto it = wf_cache_.find(ctx);
    if (it != wf_cache_.end()) return it->second;
    Acceptor w = well_formed(sig_.size(), ctx);
    wf_cache_.emplace(ctx, w);
    return w;
  }

  std::size_t track(const std::vector<std::string>& ctx, const std::string& v) const {
    auto it = std::find(ctx.begin(), ctx.end(), v);
    if (it == ctx.end()) throw UnboundVariable("variable '" + v + "' not in context");
    return static_cast<std::size_t>(it - ctx.begin());
  }

  // Atom checkers; well-formedness is imposed separately.
  Acceptor atom(const Formula& f, const std::vector<std::string>& ctx) {
    const std::size_t lb = sig_.size();
    const std::size_t x = track(ctx, f.vars()[0]);
    const Symbol mx = Symbol{1} << (lb + x);
    if (f.kind() == Kind::Pred) {
      auto p = sig_.unary_index(f.symbol());
      if (!p) throw UnknownSymbol("unknown predicate '" + f.symbol() + "'");
      // 0: unmarked, 1: marked on a P-letter, 2: marked elsewhere.
      Acceptor a(lb, ctx, 3);
      a.set_accepting(1, true);
      for (Symbol s = 0; s < a.alphabet_size(); ++s) {
        a.set_next(0, s, (s & mx) ? (((s >> *p) & 1U) ? 1 : 2) : 0);
        a.set_next(1, s, 1);
        a.set_next(2, s, 2);
      }
      return a;
    }
    const std::size_t y = track(ctx, f.vars()[1]);
    const Symbol my = Symbol{1} << (lb + y);
    Acceptor a(lb, ctx, 4);
    if (f.kind() == Kind::Eq) {
      // 0: nothing seen, 1: both on one position, 3: dead.
      a.set_accepting(1, true);
      for (Symbol s = 0; s < a.alphabet_size(); ++s) {
        const bool hx = s & mx, hy = s & my;
        a.set_next(0, s, (hx && hy) ? 1 : (hx || hy) ? 3 : 0);
        a.set_next(1, s, 1);
        a.set_next(2, s, 3);
        a.set_next(3, s, 3);
      }
      return a;
    }
    // Less: 0: nothing, 1: x seen, 2: x then y, 3: dead.
    a.set_accepting(2, true);
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      const bool hx = s & mx, hy = s & my;
      State from0 = 0;
      if (hy) {
        from0 = 3;
      } else if (hx) {
        from0 = 1;
      }
      a.set_next(0, s, from0);
      a.set_next(1, s, hy ? 2 : 1);
      a.set_next(2, s, 2);
      a.set_next(3, s, 3);
    }
    return a;
  }

  Acceptor record(const std::string& stage, Acceptor a) {
    const std::size_t before = a.num_states();
    Acceptor m = minimize(a);
    if (stats_) {
      stats_->stages.push_back({stage, before, m.num_states()});
      stats_->peak_states = std::max(stats_->peak_states, before);
    }
    return m;
  }

  Signature sig_;
  AutomataOptions opt_;
  CompileStats* stats_;
  std::map<std::vector<std::string>, Acceptor> wf_cache_;
};

}  // namespace

Acceptor compile(const Formula& phi, const Signature& sig,
                 const std::vector<std::string>& ctx, const AutomataOptions& opt,
                 CompileStats* stats) {
  std::set<std::string> seen;
  for (const auto& v : ctx) {
    if (!seen.insert(v).second) throw PreconditionError("duplicate context variable '" + v + "'");
  }
  for (const auto& v : free_vars(phi)) {
    if (!seen.contains(v)) throw UnboundVariable("free variable '" + v + "' not in context");
  }
  return Compiler(sig, opt, stats).run(phi, ctx);
}

std::vector<Symbol> encode(const WordModel& w, const std::vector<std::string>& ctx,
                           const Assignment& a) {
  std::vector<Symbol> out(w.letters.begin(), w.letters.end());
  const std::size_t lb = w.sig.size();
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    auto it = a.find(ctx[i]);
    if (it == a.end()) throw UnboundVariable("variable '" + ctx[i] + "' is unassigned");
    if (it->second >= w.size()) throw PreconditionError("assignment outside the word");
    out[it->second] |= Symbol{1} << (lb + i);
  }
  return out;
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Distance from each state to the nearest accepting state.
std::vector<std::size_t> distances_to_accept(const Acceptor& a) {
  const std::size_t n = a.num_states();
  const std::size_t k = a.alphabet_size();
  std::vector<std::vector<State>> rev(n);
  for (State s = 0; s < n; ++s) {
    for (Symbol x = 0; x < k; ++x) rev[a.next(s, x)].push_back(s);
  }
  std::vector<std::size_t> dist(n, kUnreachable);
  std::deque<State> queue;
  for (State s = 0; s < n; ++s) {
    if (a.accepting(s)) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const State t = queue.front();
    queue.pop_front();
    for (State s : rev[t]) {
      if (dist[s] == kUnreachable) {
        dist[s] = dist[t] + 1;
        queue.push_back(s);
      }
    }
  }
  return dist;
}

void walk(const Acceptor& a, const std::vector<std::size_t>& dist, State s,
          std::vector<Symbol>& out) {
  while (dist[s] > 0) {
    for (Symbol x = 0; x < a.alphabet_size(); ++x) {
      const State t = a.next(s, x);
      if (dist[t] + 1 == dist[s]) {
        out.push_back(x);
        s = t;
        break;
      }
    }
  }
}

}  // namespace

bool is_empty(const Acceptor& a) { return !shortest_accepted(a).has_value(); }

std::optional<std::vector<Symbol>> shortest_accepted(const Acceptor& a) {
  const auto dist = distances_to_accept(a);
  if (dist[a.initial()] == kUnreachable) return std::nullopt;
  std::vector<Symbol> out;
  walk(a, dist, a.initial(), out);
  return out;
}

std::optional<std::vector<Symbol>> shortest_nonempty_accepted(const Acceptor& a) {
  const auto dist = distances_to_accept(a);
  std::size_t best = kUnreachable;
  Symbol first = 0;
  for (Symbol x = 0; x < a.alphabet_size(); ++x) {
    const std::size_t d = dist[a.next(a.initial(), x)];
    if (d < best) {
      best = d;
      first = x;
    }
  }
  if (best == kUnreachable) return std::nullopt;
  std::vector<Symbol> out{first};
  walk(a, dist, a.next(a.initial(), first), out);
  return out;
}

WordModel to_word(const std::vector<Symbol>& symbols, const Signature& sig) {
  const Symbol mask = static_cast<Symbol>(alphabet_size(sig) - 1);
  WordModel w{sig, {}};
  for (Symbol s : symbols) w.letters.push_back(s & mask);
  return w;
}

void write_dot(std::ostream& os, const Acceptor& a, const Signature& sig) {
  auto label = [&](Symbol s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if ((s >> i) & 1U) {
        if (!first) out += ',';
        out += sig.unary_preds()[i];
        first = false;
      }
    }
    out += '}';
    for (std::size_t t = 0; t < a.tracks().size(); ++t) {
      if ((s >> (a.letter_bits() + t)) & 1U) out += "^" + a.tracks()[t];
    }
    return out;
  };
  os << "digraph acceptor {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State s = 0; s < a.num_states(); ++s) {
    os << "  q" << s << " [shape=" << (a.accepting(s) ? "doublecircle" : "circle") << "];\n";
  }
  os << "  start -> q" << a.initial() << ";\n";
  for (State s = 0; s < a.num_states(); ++s) {
    std::map<State, std::vector<Symbol>> by_target;
    for (Symbol x = 0; x < a.alphabet_size(); ++x) by_target[a.next(s, x)].push_back(x);
    for (const auto& [t, syms] : by_target) {
      os << "  q" << s << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i) os << ' ';
        os << label(syms[i]);
      }
      os << "\"];\n";
    }
  }
  os << "}\n";
}

DecisionResult decide_fmp(const Formula& alpha, const Signature& sig,
                          const AutomataOptions& opt) {
  if (!is_sentence(alpha)) throw PreconditionError("decide_fmp needs a sentence");
  DecisionResult r;
  Acceptor a = compile(alpha, sig, {}, opt, &r.stats);
  if (auto w = shortest_accepted(a)) {
    r.verdict = Verdict::HasFiniteModel;
    r.minimal = to_word(*w, sig);
    if (auto n = shortest_nonempty_accepted(a)) r.minimal_nonempty = to_word(*n, sig);
  }
  r.acceptor = std::move(a);
  return r;
}

}  // namespace finlin

namespace finlin {

std::string language_key(const Acceptor& a) {
  const Acceptor m = minimize(a);
  const std::size_t k = m.alphabet_size();
  std::vector<std::int64_t> id(m.num_states(), -1);
  std::vector<State> order{m.initial()};
  id[m.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol x = 0; x < k; ++x) {
      const State t = m.next(order[i], x);
      if (id[t] < 0) {
        id[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  }
  std::string key = std::to_string(m.letter_bits());
  for (const auto& t : m.tracks()) key += "," + t;
  for (State s : order) {
    key += m.accepting(s) ? "|+" : "|-";
    for (Symbol x = 0; x < k; ++x) key += std::to_string(id[m.next(s, x)]) + ' ';
  }
  return key;
}

}  // namespace finlin
