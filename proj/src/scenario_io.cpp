#include "credal/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "credal/errors.hpp"
#include "json.hpp"

namespace credal {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v, const std::string& where) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    throw ParseError(where + ": floating-point values are not accepted; write \"p/q\"");
  }
  throw ParseError(where + ": expected an exact rational (\"p/q\" string or integer)");
}

json rational_to_json(const Rational& r) { return json(r.str()); }

json state_to_value(const CredalState& s) {
  json atoms = json::array();
  for (const auto& a : s.signature().atoms()) atoms.push_back(a);
  json mass = json::array();
  for (std::size_t i = 0; i < s.signature().minterms(); ++i) {
    mass.push_back(rational_to_json(s.mass(i)));
  }
  return json{{"atoms", atoms}, {"mass", mass}};
}

CredalState state_from_value(const json& v, const std::string& where) {
  if (!v.is_object() || !v.contains("atoms") || !v.contains("mass")) {
    throw ParseError(where + ": expected {\"atoms\": [...], \"mass\": [...]}");
  }
  std::vector<std::string> atoms;
  for (const auto& a : v.at("atoms")) {
    if (!a.is_string()) throw ParseError(where + ": atom names must be strings");
    atoms.push_back(a.get<std::string>());
  }
  Signature sig(atoms);
  const json& mass = v.at("mass");
  if (!mass.is_array() || mass.size() != sig.minterms()) {
    throw ParseError(where + ": signature over " + std::to_string(sig.size()) +
                     " atoms needs exactly " + std::to_string(sig.minterms()) +
                     " mass entries");
  }
  std::vector<Rational> m;
  m.reserve(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i) {
    m.push_back(rational_from_json(mass[i], where + ".mass[" + std::to_string(i) + "]"));
  }
  return CredalState(sig, std::move(m));
}

MoeMode mode_from_name(const std::string& name) {
  for (MoeMode m : {MoeMode::SingleMessage, MoeMode::Sequential, MoeMode::ParallelNaive,
                    MoeMode::ParallelNotified}) {
    if (name == mode_name(m)) return m;
  }
  throw ParseError("unknown mode '" + name + "'");
}

json scenario_to_value(const Scenario& sc) {
  json agents = json::array();
  for (const auto& a : sc.agents) {
    json ja{{"id", a.id}, {"role", a.role}, {"prior", state_to_value(a.prior)}};
    if (!a.behavior.empty()) {
      json b = json::array();
      for (const auto& step : a.behavior) b.push_back(step);
      ja["behavior"] = b;
    }
    agents.push_back(ja);
  }
  json v{{"agents", agents}, {"mode", mode_name(sc.mode)}, {"seed", sc.seed}};
  if (!sc.evidence.empty()) v["evidence"] = sc.evidence;
  if (!sc.hypothesis.empty()) v["hypothesis"] = sc.hypothesis;
  if (sc.input) {
    if (sc.input->from_ratio) {
      v["input"] = json{{"r", rational_to_json(sc.input->r())}};
    } else {
      v["input"] =
          json{{"l", rational_to_json(sc.input->l)}, {"l2", rational_to_json(sc.input->l2)}};
    }
  }
  if (!sc.descriptor.empty()) v["descriptor"] = sc.descriptor;
  if (sc.repeat_report) v["repeat_report"] = true;
  return v;
}

Scenario scenario_from_value(const json& v) {
  if (!v.is_object() || !v.contains("agents")) {
    throw ParseError("scenario: expected an object with an \"agents\" array");
  }
  Scenario sc;
  for (const auto& ja : v.at("agents")) {
    if (!ja.is_object() || !ja.contains("id") || !ja.contains("role") ||
        !ja.contains("prior")) {
      throw ParseError("scenario agent: expected {\"id\", \"role\", \"prior\"}");
    }
    std::string id = ja.at("id").get<std::string>();
    std::string role = ja.at("role").get<std::string>();
    CredalState prior = state_from_value(ja.at("prior"), "agent '" + id + "' prior");
    std::vector<std::string> behavior;
    if (ja.contains("behavior")) {
      for (const auto& step : ja.at("behavior")) behavior.push_back(step.get<std::string>());
    }
    sc.agents.push_back(
        AgentSpec{std::move(id), std::move(role), std::move(prior), std::move(behavior)});
  }
  if (v.contains("mode")) sc.mode = mode_from_name(v.at("mode").get<std::string>());
  if (v.contains("seed")) sc.seed = v.at("seed").get<std::uint64_t>();
  if (v.contains("evidence")) sc.evidence = v.at("evidence").get<std::string>();
  if (v.contains("hypothesis")) sc.hypothesis = v.at("hypothesis").get<std::string>();
  if (v.contains("input")) {
    const json& in = v.at("input");
    if (in.contains("r")) {
      sc.input = LikelihoodInput::ratio(rational_from_json(in.at("r"), "input.r"));
    } else if (in.contains("l") && in.contains("l2")) {
      sc.input = LikelihoodInput::pair(rational_from_json(in.at("l"), "input.l"),
                                       rational_from_json(in.at("l2"), "input.l2"));
    } else {
      throw ParseError("scenario input: expected {\"r\"} or {\"l\", \"l2\"}");
    }
  }
  if (v.contains("descriptor")) sc.descriptor = v.at("descriptor").get<std::string>();
  if (v.contains("repeat_report")) sc.repeat_report = v.at("repeat_report").get<bool>();
  return sc;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string state_to_json(const CredalState& s) { return state_to_value(s).dump(2); }

CredalState state_from_json(const std::string& text) {
  return state_from_value(parse_text(text, "state"), "state");
}

std::string scenario_to_json(const Scenario& sc) { return scenario_to_value(sc).dump(2); }

Scenario scenario_from_json(const std::string& text) {
  try {
    return scenario_from_value(parse_text(text, "scenario"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
}

CredalState load_state(const std::string& path) {
  try {
    return state_from_json(slurp(path));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  try {
    return scenario_from_json(slurp(path));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

CredalState taxi_prior() {
  Signature sig({"E", "H"});
  std::vector<Rational> m{Rational(68) / Rational(100), Rational(17) / Rational(100),
                          Rational(3) / Rational(100), Rational(12) / Rational(100)};
  return CredalState(sig, std::move(m));
}

std::vector<std::string> builtin_scenario_names() {
  return {"taxi", "prosecutor", "moe-parallel"};
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "taxi") {
    // An observer who has already confirmed the evidence reports it to a
    // trier of fact, who conditions with the likelihoods it already holds.
    Scenario sc;
    sc.mode = MoeMode::Sequential;
    sc.seed = 1;
    sc.evidence = "E";
    sc.hypothesis = "H";
    sc.descriptor = "witness-report";
    AgentSpec tof{"tof", "TOF", taxi_prior(), {}};
    AgentSpec moe{"moe", "MOE",
                  CredalState(Signature({"E"}),
                              {Rational(71) / Rational(100), Rational(29) / Rational(100)}),
                  {}};
    sc.agents = {tof, moe};
    return sc;
  }
  if (name == "prosecutor") {
    // A small population with one suspect: conditioning on trait evidence
    // with a forced likelihood of 1 concentrates mass on the recorded
    // carriers instead of merely rescaling the suspect's cell.
    Scenario sc;
    sc.mode = MoeMode::Sequential;
    sc.seed = 1;
    sc.evidence = "E";
    sc.hypothesis = "H";
    sc.descriptor = "trait-match";
    CredalState pop = prosecutor_boolean_state(4, 2, Rational(1) / Rational(2));
    AgentSpec tof{"tof", "TOF", pop, {"apply:SLAC(1,E,H)"}};
    AgentSpec poc{"poc", "POC", pop, {}};
    sc.agents = {tof, poc};
    return sc;
  }
  if (name == "moe-parallel") {
    // Two experts: one sends the likelihood ratio, the other confirms the
    // evidence, with the notification step that keeps them ordered.
    Scenario sc;
    sc.mode = MoeMode::ParallelNotified;
    sc.seed = 1;
    sc.evidence = "E";
    sc.hypothesis = "H";
    sc.descriptor = "expert-report";
    sc.input = LikelihoodInput::ratio(Rational(4));
    AgentSpec tof{"tof", "TOF", taxi_prior(), {}};
    AgentSpec lr{"moe-lr", "MOE-LR", taxi_prior(), {}};
    AgentSpec ev{"moe-e", "MOE-E",
                 CredalState(Signature({"E"}), {Rational(1) / Rational(2), Rational(1) / Rational(2)}),
                 {}};
    sc.agents = {tof, lr, ev};
    return sc;
  }
  throw ParseError("unknown scenario '" + name + "' (try: taxi, prosecutor, moe-parallel)");
}

}  // namespace credal
