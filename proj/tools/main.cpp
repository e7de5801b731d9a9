#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli.hpp"

using finlin::cli::Format;
using finlin::cli::Job;

namespace {

void common_flags(CLI::App* sub, Job& job, std::string& sig, std::string& format) {
  sub->add_option("-e,--expr", job.expr, "Inline formula");
  sub->add_option("--sig", sig, "Unary predicates, comma separated");
  sub->add_option("--budget", job.budget, "Largest automaton (states)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-len", job.max_len, "Longest word for bounded search");
  sub->add_option("--emit-dot", job.emit_dot, "Write the final acceptor as DOT");
  sub->add_flag("--stats", job.stats, "Per-stage state counts");
  sub->add_option("--format", format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  sub->add_option("inputs", job.inputs, "Files or inline arguments");
}

}  // namespace

int main(int argc, char** argv) {
  // `tis check` is accepted as `tis-check`.
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() >= 2 && args[0] == "tis") {
    args[1] = "tis-" + args[1];
    args.erase(args.begin());
  }
  std::reverse(args.begin(), args.end());

  CLI::App app{"Finite model property for linear orders with unary predicates.\n"
               "Sentences are read as theories over finite linear orders: the caller\n"
               "is responsible for the sentence implying the order axioms."};
  app.require_subcommand(1);

  Job job;
  job.budget = finlin::cli::default_budget();
  std::string sig, format = "text", left, right, params;

  for (const auto& name : finlin::cli::commands()) {
    CLI::App* sub = app.add_subcommand(name);
    common_flags(sub, job, sig, format);
    if (name == "split") {
      sub->add_option("--left", left, "Prefix variables");
      sub->add_option("--right", right, "Suffix variables");
    } else if (name == "tis-check") {
      sub->add_flag("--star", job.star, "Check TiS* instead of TiS");
    } else if (name == "tis-pad") {
      sub->add_option("-k,--copies", job.pad, "Number of copies to add");
      sub->add_option("--target", job.pad_target, "Element to copy");
    } else if (name == "interp-verify") {
      sub->add_option("--translation", job.translation, "Translation file or text");
      sub->add_option("--diagram", job.diagram, "Interpret this structure by its diagram");
      sub->add_option("--target", job.target, "Target structure");
      sub->add_option("--params", params, "Parameter values, comma separated");
    }
    sub->callback([&job, name] { job.command = name; });
  }

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : finlin::cli::kError;
  }

  auto list = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + ",") {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
    return out;
  };
  if (!sig.empty()) job.sig = list(sig);
  job.left = list(left);
  job.right = list(right);
  try {
    for (const auto& p : list(params)) job.params.push_back(std::stoul(p));
  } catch (const std::exception&) {
    std::cerr << "bad --params\n";
    return finlin::cli::kError;
  }
  job.format = format == "kv" ? Format::Kv : Format::Text;

  const auto report = finlin::cli::run(job);
  (report.exit_code == finlin::cli::kError ? std::cerr : std::cout) << report.render(job.format);
  return report.exit_code;
}
