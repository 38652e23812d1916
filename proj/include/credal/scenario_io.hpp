#pragma once

#include <string>
#include <vector>

#include "credal/protocol.hpp"
#include "credal/state.hpp"

// JSON serialization for credal states and scheduled scenarios, plus the
// built-in scenario catalog used by the command-line driver.
//
// A state is {"atoms": ["E","H"], "mass": ["17/25","3/25", ...]} with masses
// in canonical minterm order (bit j of the minterm index is the truth value
// of the j-th atom in sorted order).  Mass entries are exact rationals,
// written as "p/q" strings or plain JSON integers; floating-point literals
// are rejected rather than rounded.
//
// A scenario is
//   {"agents": [{"id": ..., "role": ..., "prior": <state>, "behavior": [...]?}],
//    "mode": "sequential" | "single-message" | "parallel-naive" | "parallel-notified",
//    "seed": 1, "evidence": "E", "hypothesis": "H",
//    "input": {"r": "4"} | {"l": "1/2", "l2": "1/8"},
//    "descriptor": "...", "repeat_report": false}
// where seed, input, descriptor, behavior and repeat_report are optional.

namespace credal {

std::string state_to_json(const CredalState& s);
CredalState state_from_json(const std::string& text);

std::string scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const std::string& text);

// File loaders; throw ParseError with the path on malformed input.
CredalState load_state(const std::string& path);
Scenario load_scenario(const std::string& path);

// The two-atom state over {E,H} used throughout the test suite: a witness
// reports seeing evidence E for hypothesis H, with P(H) = 3/20 and
// likelihoods P0(E|H) = 4/5, P0(E|!H) = 1/5.
CredalState taxi_prior();

// Built-in scenarios runnable by name from the CLI.
std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

}  // namespace credal
