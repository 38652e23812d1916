#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The verification harness: each check replays a family of exact identities
// on randomly generated states (or on frozen reference instances) and
// reports how many assertions held.  Everything is seeded and exact, so a
// report is reproducible byte for byte.

namespace credal {

struct CheckOptions {
  std::size_t cases = 1000;    // size of the randomized families
  std::uint64_t seed = 7;      // base seed for the generators
  bool allow_zero = false;     // let random states carry zero-mass minterms
};

struct CheckReport {
  std::string id;
  std::size_t attempted = 0;
  std::size_t passed = 0;
  std::string counterexample;  // first failing assertion, if any

  bool ok() const { return attempted == passed; }
  std::string str() const;  // "ok    adamsbayes   14000/14000"
};

// Check identifiers, in the order "all" runs them.
std::vector<std::string> check_names();

// Runs one named check, or every check for "all".  Unknown selectors throw
// ParseError.
std::vector<CheckReport> run_checks(const std::string& selector,
                                    const CheckOptions& opt = CheckOptions{});

}  // namespace credal
