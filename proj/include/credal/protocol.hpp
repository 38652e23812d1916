#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "credal/combinator.hpp"
#include "credal/conditioning.hpp"
#include "credal/lts.hpp"
#include "credal/state.hpp"

namespace credal {

// Deterministic simulation of likelihood-ratio transfer between a reporting
// agent (the mediator of evidence, MOE) and a receiving agent (the trier of
// fact, TOF).  Everything is exact and reproducible: a scenario plus a seed
// fixes the trace byte for byte.

// ---------------------------------------------------------------------------
// Likelihood input: either a ratio r (factored internally) or an explicit
// pair (l, l2) with r = l / l2.

struct LikelihoodInput {
  Rational l;   // P(E|H) to install
  Rational l2;  // P(E|!H) to install
  bool from_ratio = false;

  static LikelihoodInput ratio(const Rational& r);
  static LikelihoodInput pair(const Rational& l, const Rational& l2);
  Rational r() const;  // l / l2
};

// Factors r > 0 into (l, l2) with 0 < l, l2 <= 1 and l / l2 = r:
// l2 = min(1, 1/r) / 2 and l = r * l2.  Any factorization is equivalent for
// the posterior (decomposition independence); tests run a second one to
// assert that.
std::pair<Rational, Rational> decompose_ratio(const Rational& r);

// The closed form r*p / (1 + (r-1)*p) for the revised hypothesis belief.
Rational posterior_hypothesis(const Rational& r, const Rational& p);

// The auxiliary-workspace route to the same value: a one-atom space over
// `h` seeded with prob p, parametrized expansion by `e` installing the
// likelihoods, Bayes conditioning with kinetics, then reading prob(h) back.
Rational workspace_posterior(const Rational& p, const Rational& l, const Rational& l2);

// ---------------------------------------------------------------------------
// The four revision pipelines available to the receiving agent.

enum class PipelineKind {
  SlacTwiceThenBC,          // slac(l,E,H); slac(l2,E,!H); bayes(E)
  DlacThenBC,               // dlac(l,l2,E,H); bayes(E)
  KineticsBCThenJeffrey,    // workspace posterior p^, then jeffrey(P, p^, H)
  TwoSpaceBayesThenJeffrey  // the literal six-step two-space path
};

const char* pipeline_name(PipelineKind k);

// Runs one pipeline.  The first two kinds need E and H in the signature;
// the last two need H in the signature and E absent from it.
CredalState run_pipeline(PipelineKind kind, const CredalState& prior, const std::string& e,
                         const std::string& h, const LikelihoodInput& input);

// True iff dlac(l,l2,E,H) followed by bayes(E) equals bayes(E) followed by
// jeffrey at p^ = posterior_hypothesis(l/l2, prob(H)) — minterm-exact.  On
// failure `detail` receives the first differing minterm sentence.
bool commutation_check(const CredalState& prior, const std::string& e, const std::string& h,
                       const Rational& l, const Rational& l2, std::string* detail = nullptr);

// ---------------------------------------------------------------------------
// Messages and traces.

struct Message {
  enum class Kind {
    Likelihood,       // "L(E,H) = l"   (or L(E,!H) when negated)
    LikelihoodPair,   // "(L(E,H) = l, L(E,!H) = l2)"
    LikelihoodRatio,  // "LR(E,H,!H) = r"
    Evidence,         // "P(E) = 1"
    Combined,         // ratio and evidence in one simultaneous message
    Notification      // "the ratio has been sent"
  };

  Kind kind = Kind::Notification;
  std::string sender, receiver;
  std::string evidence, hypothesis;
  Rational l, l2;        // per kind; ratio carried as l/l2
  bool negated = false;  // Likelihood about !H instead of H
  std::string descriptor;

  std::string payload() const;  // e.g. "LR(E,H,!H)=4"
};

struct TraceEvent {
  enum class Kind { Sent, Delivered, Applied, Aborted, Refused, Flagged };

  Kind kind;
  std::string actor;  // agent id ("" for protocol-level events)
  std::string text;

  std::string str() const;  // "SENT moe->tof LR(E,H,!H)=4" etc.
};

struct ScenarioTrace {
  std::vector<TraceEvent> events;

  void add(TraceEvent::Kind kind, const std::string& actor, const std::string& text);
  bool has(TraceEvent::Kind kind) const;
  // Index of the first event of `kind` whose text contains `needle`.
  std::optional<std::size_t> find(TraceEvent::Kind kind, const std::string& needle) const;
  std::string str() const;  // one event per line
};

// ---------------------------------------------------------------------------
// Background knowledge: which evidence items have already been processed.
// An arriving report whose content descriptor is already present is not
// novel and must be refused rather than conditioned on a second time.

class KnowledgeBase {
 public:
  bool novelty_check(const std::string& descriptor) const;
  void update(const std::string& evidence, const std::string& descriptor);
  std::size_t size() const { return entries_.size(); }

 private:
  std::set<std::pair<std::string, std::string>> entries_;
};

// ---------------------------------------------------------------------------
// The reference protocol run: likelihood-ratio transfer with the abort
// conditions checked in order.  Both signatures must contain E and H.
// Aborts are trace events, never exceptions.

ScenarioTrace lrtmr_outline(const CredalState& tof_prior, const CredalState& moe_prior,
                            const std::string& e, const std::string& h);

// ---------------------------------------------------------------------------
// Scheduled multi-agent scenarios.

enum class MoeMode { SingleMessage, Sequential, ParallelNaive, ParallelNotified };

const char* mode_name(MoeMode m);

struct AgentSpec {
  std::string id;
  std::string role;  // "TOF" | "MOE" | "MOE-LR" | "MOE-E" | "POC"
  CredalState prior;
  // Script of action strings; empty means the role default for the mode.
  // Vocabulary: set_likelihood, set_likelihood_neg, confirm_evidence,
  // send_ratio, send_pair, send_likelihood, send_likelihood_neg,
  // send_evidence, send_combined, send_notification, await_notification,
  // apply:<combinator term>.
  std::vector<std::string> behavior;
};

struct Scenario {
  std::vector<AgentSpec> agents;
  MoeMode mode = MoeMode::Sequential;
  std::uint64_t seed = 0;
  std::string evidence, hypothesis;
  std::optional<LikelihoodInput> input;  // absent: evidence-only scenario
  std::string descriptor;                // defaults to a derived tag
  bool repeat_report = false;            // run the report a second time
};

struct ScenarioResult {
  ScenarioTrace trace;
  std::map<std::string, CredalState> finals;  // by agent id
  bool aborted = false;
  bool refused = false;

  const CredalState& final_state(const std::string& id) const { return finals.at(id); }
};

ScenarioResult run_scenario(const Scenario& sc);

// First seed in [first, last] whose ParallelNaive run delivers the evidence
// message before the ratio message (the weakness the notification repairs).
std::optional<std::uint64_t> find_naive_reordering_seed(Scenario sc, std::uint64_t first,
                                                        std::uint64_t last);

// ---------------------------------------------------------------------------
// Prosecutor-style conditioning: n equiprobable suspects D_1..D_n, evidence
// E true exactly on D_1..D_k, hypothesis H concentrated on D_1 with weight
// p.  Installing P(E|H) = 1 multiplies prob(H & D_1) by
// 1 / (p + (1-p)(k-1)/(n-1)).  The state is kept as 2n cells (H x selector),
// exact because all mass sits on partition-respecting minterms.

struct ProsecutorReport {
  std::size_t n = 0, k = 0;
  Rational p;
  Rational prior_h;        // prob(H) = 1/n
  Rational prior_e;        // prob(E) = k/n
  Rational prior_h_d1;     // prob(H & D_1) = p/n
  Rational posterior_h_d1;
  Rational factor;         // posterior_h_d1 / prior_h_d1
  std::vector<Rational> posterior_h_cell;   // posterior mass of H & D_i
  std::vector<Rational> posterior_nh_cell;  // posterior mass of !H & D_i

  std::string str() const;
};

ProsecutorReport prosecutor_conditioning(std::size_t n, std::size_t k, const Rational& p);

// Boolean-atom cross-check oracle for small n: the same prior over atoms
// {H, E, D1..Dn} with zero mass off the partition, suitable for the strict
// slac operation.  Practical for n <= 4.
CredalState prosecutor_boolean_state(std::size_t n, std::size_t k, const Rational& p);

}  // namespace credal
