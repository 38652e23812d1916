#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "credal/checks.hpp"
#include "credal/errors.hpp"
#include "credal/lts.hpp"
#include "credal/protocol.hpp"
#include "credal/scenario_io.hpp"

namespace {

// Exit codes: 0 clean, 1 input or budget errors, 2 a run that ended in an
// abort or a refusal.
constexpr int kExitError = 1;
constexpr int kExitIncomplete = 2;

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

credal::Scenario resolve_scenario(const std::string& name) {
  if (file_exists(name)) return credal::load_scenario(name);
  return credal::builtin_scenario(name);
}

int print_run(const credal::Scenario& sc) {
  credal::ScenarioResult res = credal::run_scenario(sc);
  std::cout << res.trace.str();
  for (const auto& [id, state] : res.finals) {
    std::cout << "FINAL " << id << " " << state.str() << "\n";
  }
  if (!sc.hypothesis.empty()) {
    for (const auto& a : sc.agents) {
      if (a.role != "TOF") continue;
      const credal::CredalState& fin = res.final_state(a.id);
      if (fin.signature().contains(sc.hypothesis)) {
        std::cout << "RESULT prob(" << sc.hypothesis << ") = "
                  << fin.prob(credal::Sentence::atom(sc.hypothesis)).str() << "\n";
      }
    }
  }
  return (res.aborted || res.refused) ? kExitIncomplete : 0;
}

std::vector<credal::CredalState> load_seeds(const std::string& path) {
  // A seeds file is either one state object or a JSON array of them; an
  // array is spliced by reading each element back through the state parser.
  std::ifstream in(path);
  if (!in) throw credal::ParseError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<credal::CredalState> seeds;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    // Minimal array splitting: rely on the object parser for each element.
    std::size_t depth = 0, start = std::string::npos;
    for (std::size_t i = first + 1; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '{') {
        if (depth == 0) start = i;
        ++depth;
      } else if (ch == '}') {
        if (depth == 0) throw credal::ParseError(path + ": unbalanced braces");
        if (--depth == 0) {
          seeds.push_back(credal::state_from_json(text.substr(start, i - start + 1)));
        }
      }
    }
    if (seeds.empty()) throw credal::ParseError(path + ": no states in array");
  } else {
    seeds.push_back(credal::state_from_json(text));
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact belief-revision engine: conditioning calculus, revision "
               "combinators, transition systems and scheduled report transfer"};
  app.require_subcommand(1);

  // run -----------------------------------------------------------------
  std::string run_target;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario (a JSON file or a built-in name)");
  run_cmd->add_option("scenario", run_target, "Scenario file or built-in name")->required();

  // check ---------------------------------------------------------------
  std::string selector = "all";
  credal::CheckOptions copt;
  auto* check_cmd = app.add_subcommand("check", "Run a verification family");
  check_cmd->add_option("selector", selector, "Check name, or 'all'");
  check_cmd->add_option("--cases", copt.cases, "Randomized cases per family");
  check_cmd->add_option("--seed", copt.seed, "Generator seed");
  check_cmd->add_flag("--allow-zero", copt.allow_zero,
                      "Let random states carry zero-mass minterms");

  // lts -----------------------------------------------------------------
  std::string lts_action;
  std::string seeds_path;
  std::string labels_spec = "BC(E)";
  std::size_t depth = 2;
  auto* lts_cmd = app.add_subcommand("lts", "Generate and analyze a transition fragment");
  lts_cmd->add_option("action", lts_action, "dump | bisim | search")->required();
  lts_cmd->add_option("--seeds", seeds_path, "JSON state (or array of states) to start from");
  lts_cmd->add_option("--labels", labels_spec, "Combinator term supplying the label schemas");
  lts_cmd->add_option("--depth", depth, "Generation depth");

  // taxi ----------------------------------------------------------------
  auto* taxi_cmd = app.add_subcommand("taxi", "Run the built-in two-atom reference scenario");

  // prosecutor ----------------------------------------------------------
  std::size_t pn = 100000, pk = 100;
  std::string pp = "1/10";
  auto* pros_cmd = app.add_subcommand("prosecutor", "Evidence-concentration report");
  pros_cmd->add_option("--n", pn, "Population size");
  pros_cmd->add_option("--k", pk, "Number of trait carriers");
  pros_cmd->add_option("--p", pp, "Suspect's share of the hypothesis (exact rational)");

  // eval ----------------------------------------------------------------
  std::string eval_state, eval_sentence;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a sentence's probability in a state");
  eval_cmd->add_option("state", eval_state, "State JSON file")->required();
  eval_cmd->add_option("sentence", eval_sentence, "Sentence, e.g. 'E & !H'")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return print_run(resolve_scenario(run_target));

    if (*check_cmd) {
      bool all_ok = true;
      for (const auto& rep : credal::run_checks(selector, copt)) {
        std::cout << rep.str() << "\n";
        all_ok = all_ok && rep.ok();
      }
      return all_ok ? 0 : kExitError;
    }

    if (*lts_cmd) {
      std::vector<credal::CredalState> seeds =
          seeds_path.empty() ? std::vector<credal::CredalState>{credal::taxi_prior()}
                             : load_seeds(seeds_path);
      auto schemas =
          credal::schemas_from_combinator(credal::parse_combinator(labels_spec));
      credal::Fragment f = credal::generate_fragment(seeds, schemas, depth);
      if (lts_action == "dump") {
        std::cout << f.str();
      } else if (lts_action == "bisim") {
        auto id_rep = credal::is_bisimulation(f, credal::identity_relation(f));
        auto max_rep = credal::is_bisimulation(f, credal::max_compatibility(f));
        std::cout << "identity: " << (id_rep.ok ? "bisimulation" : id_rep.reason) << "\n";
        std::cout << "max-compatibility: " << (max_rep.ok ? "bisimulation" : max_rep.reason)
                  << "\n";
        if (!id_rep.ok || !max_rep.ok) return kExitError;
      } else if (lts_action == "search") {
        auto found = credal::search_intermediate_bisimulations(f);
        std::cout << "fragment: " << f.states.size() << " states, " << f.edges.size()
                  << " edges\n";
        std::cout << "intermediate bisimulations: " << found.size() << "\n";
        for (const auto& fb : found) {
          std::cout << "  {";
          bool first = true;
          for (const auto& [x, y] : fb.rel) {
            if (x >= y) continue;  // print the off-diagonal pairs once
            std::cout << (first ? "" : ", ") << "S" << x << "~S" << y;
            first = false;
          }
          std::cout << "}" << (fb.is_max ? "  (maximal)" : "") << "\n";
        }
      } else {
        std::cerr << "error: unknown action '" << lts_action << "' (dump | bisim | search)\n";
        return kExitError;
      }
      return 0;
    }

    if (*taxi_cmd) return print_run(credal::builtin_scenario("taxi"));

    if (*pros_cmd) {
      auto rep =
          credal::prosecutor_conditioning(pn, pk, credal::Rational::parse(pp));
      std::cout << rep.str();
      return 0;
    }

    if (*eval_cmd) {
      credal::CredalState s = credal::load_state(eval_state);
      credal::Sentence phi = credal::parse_sentence(eval_sentence);
      std::cout << "prob(" << phi.str() << ") = " << s.prob(phi).str() << "\n";
      return 0;
    }
  } catch (const credal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
