#include "finlin/eval.hpp"

namespace finlin {

SymbolTable model_symbols(const WordModel& w) {
  SymbolTable t;
  Signature sig = w.sig;
  t.unary = [sig](const std::string& name) -> std::optional<std::uint32_t> {
    if (auto i = sig.unary_index(name)) return static_cast<std::uint32_t>(*i);
    return std::nullopt;
  };
  t.binary = [](const std::string&) -> std::optional<std::uint32_t> {
    return std::nullopt;
  };
  t.has_order = true;
  return t;
}

CompiledFormula::CompiledFormula(const Formula& f, const SymbolTable& symbols) {
  std::unordered_map<std::string, std::vector<std::uint32_t>> scope;
  for (const auto& v : finlin::free_vars(f)) {
    scope[v].push_back(num_slots_++);
    free_.push_back(v);
  }
  root_ = build(f, symbols, scope);
}

std::uint32_t CompiledFormula::build(
    const Formula& f, const SymbolTable& symbols,
    std::unordered_map<std::string, std::vector<std::uint32_t>>& scope) {
  Op op{f.kind()};
  auto slot = [&](const std::string& v) { return scope.at(v).back(); };
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      break;
    case Kind::Less:
      if (!symbols.has_order) throw UnknownSymbol("model has no order '<'");
      op.x = slot(f.vars()[0]);
      op.y = slot(f.vars()[1]);
      break;
    case Kind::Eq:
      op.x = slot(f.vars()[0]);
      op.y = slot(f.vars()[1]);
      break;
    case Kind::Pred: {
      auto s = symbols.unary(f.symbol());
      if (!s) throw UnknownSymbol("model lacks unary predicate '" + f.symbol() + "'");
      op.sym = *s;
      op.x = slot(f.vars()[0]);
      break;
    }
    case Kind::Rel: {
      auto s = symbols.binary(f.symbol());
      if (!s) throw UnknownSymbol("model lacks binary relation '" + f.symbol() + "'");
      op.sym = *s;
      op.x = slot(f.vars()[0]);
      op.y = slot(f.vars()[1]);
      break;
    }
    case Kind::Exists:
    case Kind::Forall: {
      op.x = num_slots_++;
      auto& stack = scope[f.bound_var()];
      stack.push_back(op.x);
      const std::uint32_t body = build(f.body(), symbols, scope);
      stack.pop_back();
      op.begin = static_cast<std::uint32_t>(kids_.size());
      kids_.push_back(body);
      op.end = op.begin + 1;
      break;
    }
    default: {
      std::vector<std::uint32_t> kids;
      for (const auto& c : f.children()) kids.push_back(build(c, symbols, scope));
      op.begin = static_cast<std::uint32_t>(kids_.size());
      kids_.insert(kids_.end(), kids.begin(), kids.end());
      op.end = static_cast<std::uint32_t>(kids_.size());
      break;
    }
  }
  ops_.push_back(op);
  return static_cast<std::uint32_t>(ops_.size() - 1);
}

std::optional<WordModel> find_finite_model(const Formula& alpha,
                                           const Signature& sig,
                                           std::size_t max_len) {
  if (!is_sentence(alpha)) throw PreconditionError("find_finite_model needs a sentence");
  WordEnumerator words(sig, max_len);
  const CompiledFormula c(alpha, model_symbols(WordModel{sig, {}}));
  while (words.next()) {
    if (c.eval(words.current(), Assignment{})) return words.current();
  }
  return std::nullopt;
}

}  // namespace finlin
