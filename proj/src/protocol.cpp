#include "credal/protocol.hpp"

#include <deque>
#include <random>
#include <sstream>

#include "credal/errors.hpp"

namespace credal {

// ---------------------------------------------------------------------------
// Likelihood input.

LikelihoodInput LikelihoodInput::ratio(const Rational& r) {
  auto [l, l2] = decompose_ratio(r);
  LikelihoodInput in;
  in.l = l;
  in.l2 = l2;
  in.from_ratio = true;
  return in;
}

LikelihoodInput LikelihoodInput::pair(const Rational& l, const Rational& l2) {
  if (sign(l) <= 0 || l > Rational(1) || sign(l2) <= 0 || l2 > Rational(1)) {
    throw ParameterOutOfRange("likelihoods must lie in (0,1], got " + l.str() + " and " +
                              l2.str());
  }
  LikelihoodInput in;
  in.l = l;
  in.l2 = l2;
  return in;
}

Rational LikelihoodInput::r() const { return l / l2; }

std::pair<Rational, Rational> decompose_ratio(const Rational& r) {
  if (sign(r) <= 0) throw ParameterOutOfRange("likelihood ratio must be positive, got " + r.str());
  const Rational one(1);
  Rational inv = one / r;
  Rational l2 = (inv < one ? inv : one) / Rational(2);
  return {r * l2, l2};
}

Rational posterior_hypothesis(const Rational& r, const Rational& p) {
  // r*p / (1 + (r-1)*p); the denominator is (1-p) + r*p > 0 for r > 0,
  // 0 <= p <= 1.
  return (r * p) / (Rational(1) + (r - Rational(1)) * p);
}

Rational workspace_posterior(const Rational& p, const Rational& l, const Rational& l2) {
  const Sentence h = Sentence::atom("H");
  CredalState ws(Signature({"H"}), {Rational(1) - p, p});
  ws = expand_parametrized(ws, "E", {l2, l});
  ws = bayes(ws, Sentence::atom("E"), /*kinetics=*/true);
  return ws.prob(h);
}

// ---------------------------------------------------------------------------
// Pipelines.

const char* pipeline_name(PipelineKind k) {
  switch (k) {
    case PipelineKind::SlacTwiceThenBC: return "slac-twice-then-bc";
    case PipelineKind::DlacThenBC: return "dlac-then-bc";
    case PipelineKind::KineticsBCThenJeffrey: return "kinetics-bc-then-jeffrey";
    case PipelineKind::TwoSpaceBayesThenJeffrey: return "two-space-bayes-then-jeffrey";
  }
  return "?";
}

CredalState run_pipeline(PipelineKind kind, const CredalState& prior, const std::string& e,
                         const std::string& h, const LikelihoodInput& input) {
  const Sentence E = Sentence::atom(e);
  const Sentence H = Sentence::atom(h);
  const Rational& l = input.l;
  const Rational& l2 = input.l2;
  switch (kind) {
    case PipelineKind::SlacTwiceThenBC: {
      CredalState s = slac(prior, l, E, H);
      s = slac(s, l2, E, Sentence::negate(H));
      return bayes(s, E);
    }
    case PipelineKind::DlacThenBC:
      return bayes(dlac(prior, l, l2, E, H), E);
    case PipelineKind::KineticsBCThenJeffrey: {
      if (prior.signature().contains(e)) {
        throw AtomAlreadyPresent("pipeline " + std::string(pipeline_name(kind)) +
                                 " needs the evidence atom to be outside the signature");
      }
      Rational phat = workspace_posterior(prior.prob(H), l, l2);
      return jeffrey(prior, phat, H);
    }
    case PipelineKind::TwoSpaceBayesThenJeffrey: {
      if (prior.signature().contains(e)) {
        throw AtomAlreadyPresent("pipeline " + std::string(pipeline_name(kind)) +
                                 " needs the evidence atom to be outside the signature");
      }
      // The literal two-space path: (1) a fresh one-atom space over H seeded
      // from the prior, (2) expansion by E installing the likelihoods,
      // (3) Bayes conditioning with kinetics there, (4) reading off the
      // revised hypothesis belief, (5) Bayes conditioning with kinetics on
      // the original space (E is adjoined at probability 1 first, so this
      // leaves the prior untouched), (6) Jeffrey conditioning at the
      // revised belief.
      CredalState aux(Signature({h}), {Rational(1) - prior.prob(H), prior.prob(H)});
      aux = expand_parametrized(aux, e, {l2, l});
      aux = bayes(aux, E, /*kinetics=*/true);
      Rational phat = aux.prob(H);
      Combinator sandwich = Combinator::compose(
          Combinator::psr(e),
          Combinator::compose(Combinator::bc(E), Combinator::pse(e, ExpansionMode::One)));
      CredalState base = apply(sandwich, prior);
      return jeffrey(base, phat, H);
    }
  }
  throw ParameterOutOfRange("unknown pipeline kind");
}

bool commutation_check(const CredalState& prior, const std::string& e, const std::string& h,
                       const Rational& l, const Rational& l2, std::string* detail) {
  const Sentence E = Sentence::atom(e);
  const Sentence H = Sentence::atom(h);
  CredalState lhs = bayes(dlac(prior, l, l2, E, H), E);
  Rational phat = posterior_hypothesis(l / l2, prior.prob(H));
  CredalState rhs = jeffrey(bayes(prior, E), phat, H);
  for (std::size_t i = 0; i < lhs.minterm_count(); ++i) {
    if (lhs.mass(i) != rhs.mass(i)) {
      if (detail != nullptr) {
        *detail = minterm_sentence(lhs.signature(), i).str() + ": " + lhs.mass(i).str() +
                  " vs " + rhs.mass(i).str();
      }
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Messages and traces.

std::string Message::payload() const {
  switch (kind) {
    case Kind::Likelihood:
      return "L(" + evidence + "," + (negated ? "!" + hypothesis : hypothesis) +
             ")=" + (negated ? l2 : l).str();
    case Kind::LikelihoodPair:
      return "(L(" + evidence + "," + hypothesis + ")=" + l.str() + ",L(" + evidence + ",!" +
             hypothesis + ")=" + l2.str() + ")";
    case Kind::LikelihoodRatio:
      return "LR(" + evidence + "," + hypothesis + ",!" + hypothesis + ")=" + (l / l2).str();
    case Kind::Evidence:
      return "P(" + evidence + ")=1";
    case Kind::Combined:
      return "LR(" + evidence + "," + hypothesis + ",!" + hypothesis + ")=" + (l / l2).str() +
             " & P(" + evidence + ")=1";
    case Kind::Notification:
      return "notification";
  }
  return {};
}

std::string TraceEvent::str() const {
  const char* word = "?";
  switch (kind) {
    case Kind::Sent: word = "SENT"; break;
    case Kind::Delivered: word = "DELIVERED"; break;
    case Kind::Applied: word = "APPLIED"; break;
    case Kind::Aborted: word = "ABORTED"; break;
    case Kind::Refused: word = "REFUSED"; break;
    case Kind::Flagged: word = "FLAGGED"; break;
  }
  return std::string(word) + " " + text;
}

void ScenarioTrace::add(TraceEvent::Kind kind, const std::string& actor, const std::string& text) {
  events.push_back(TraceEvent{kind, actor, text});
}

bool ScenarioTrace::has(TraceEvent::Kind kind) const {
  for (const auto& ev : events)
    if (ev.kind == kind) return true;
  return false;
}

std::optional<std::size_t> ScenarioTrace::find(TraceEvent::Kind kind,
                                              const std::string& needle) const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].kind == kind && events[i].text.find(needle) != std::string::npos) return i;
  }
  return std::nullopt;
}

std::string ScenarioTrace::str() const {
  std::string out;
  for (const auto& ev : events) {
    out += ev.str();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Knowledge base.

bool KnowledgeBase::novelty_check(const std::string& descriptor) const {
  for (const auto& [name, desc] : entries_)
    if (desc == descriptor) return false;
  return true;
}

void KnowledgeBase::update(const std::string& evidence, const std::string& descriptor) {
  entries_.insert({evidence, descriptor});
}

// ---------------------------------------------------------------------------
// Reference protocol run.

ScenarioTrace lrtmr_outline(const CredalState& tof_prior, const CredalState& moe_prior,
                            const std::string& e, const std::string& h) {
  ScenarioTrace t;
  const Sentence E = Sentence::atom(e);
  const Sentence H = Sentence::atom(h);
  const Rational zero(0), one(1);

  // Step 1: the reporter's priors must leave both H and E genuinely open.
  Rational phb = moe_prior.prob(H);
  Rational peb = moe_prior.prob(E);
  if (!(zero < phb && phb < one && zero < peb && peb < one)) {
    t.add(TraceEvent::Kind::Aborted, "moe",
          "moe prior must satisfy 0 < P(" + h + ") < 1 and 0 < P(" + e + ") < 1, has P(" + h +
              ")=" + phb.str() + ", P(" + e + ")=" + peb.str());
    return t;
  }

  // Step 2: the reporter determines its likelihood ratio.
  Rational l = likelihood(moe_prior, E, H);
  Rational l2 = likelihood(moe_prior, E, Sentence::negate(H));

  // Step 3: a zero denominator likelihood leaves the ratio meaningless.
  if (l2 == zero) {
    t.add(TraceEvent::Kind::Aborted, "moe",
          "likelihood L(" + e + ",!" + h + ") is zero, the ratio cannot be transferred");
    return t;
  }
  Rational r = l / l2;

  // Steps 4 and 5: the ratio and then the evidence confirmation reach the
  // receiver (synchronously here; the scheduled scenarios model delays).
  t.add(TraceEvent::Kind::Sent, "moe", "moe->tof LR(" + e + "," + h + ",!" + h + ")=" + r.str());
  t.add(TraceEvent::Kind::Delivered, "tof",
        "moe->tof LR(" + e + "," + h + ",!" + h + ")=" + r.str());
  t.add(TraceEvent::Kind::Sent, "moe", "moe->tof P(" + e + ")=1");
  t.add(TraceEvent::Kind::Delivered, "tof", "moe->tof P(" + e + ")=1");

  // Steps 6 and 7: the receiver adopts the reported ratio (factored into an
  // arbitrary pair, which cannot matter) and conditions on the evidence.
  try {
    auto [la, lb] = decompose_ratio(r);
    CredalState s = dlac(tof_prior, la, lb, E, H);
    t.add(TraceEvent::Kind::Applied, "tof",
          "tof " + TransitionLabel::dlac(la, lb, E, H).str() + " -> " + s.str());
    CredalState post = bayes(s, E);
    t.add(TraceEvent::Kind::Applied, "tof",
          "tof " + TransitionLabel::bc(E, s.prob(E)).str() + " -> " + post.str());
    if (post.prob(H) != posterior_hypothesis(r, tof_prior.prob(H))) {
      t.add(TraceEvent::Kind::Aborted, "tof", "posterior hypothesis value failed its closed form");
    }
  } catch (const Error& err) {
    t.add(TraceEvent::Kind::Aborted, "tof", std::string("tof ") + err.what());
  }
  return t;
}

// ---------------------------------------------------------------------------
// Scheduled scenarios.

const char* mode_name(MoeMode m) {
  switch (m) {
    case MoeMode::SingleMessage: return "single-message";
    case MoeMode::Sequential: return "sequential";
    case MoeMode::ParallelNaive: return "parallel-naive";
    case MoeMode::ParallelNotified: return "parallel-notified";
  }
  return "?";
}

namespace {

std::vector<std::string> default_script(const Scenario& sc, const std::string& role,
                                        bool repeat) {
  using V = std::vector<std::string>;
  const bool has_input = sc.input.has_value();
  if (role == "MOE") {
    if (!has_input) return repeat ? V{"send_evidence"} : V{"confirm_evidence", "send_evidence"};
    if (sc.mode == MoeMode::SingleMessage) {
      return repeat ? V{"send_combined"}
                    : V{"set_likelihood", "set_likelihood_neg", "confirm_evidence",
                        "send_combined"};
    }
    return repeat ? V{"send_ratio", "send_evidence"}
                  : V{"set_likelihood", "set_likelihood_neg", "send_ratio", "confirm_evidence",
                      "send_evidence"};
  }
  if (role == "MOE-LR") {
    if (!has_input) return {};
    V v = repeat ? V{"send_ratio"} : V{"set_likelihood", "set_likelihood_neg", "send_ratio"};
    if (sc.mode == MoeMode::ParallelNotified) v.push_back("send_notification");
    return v;
  }
  if (role == "MOE-E") {
    V v;
    if (sc.mode == MoeMode::ParallelNotified) v.push_back("await_notification");
    if (!repeat) v.push_back("confirm_evidence");
    v.push_back("send_evidence");
    return v;
  }
  return {};  // TOF and POC are reactive
}

struct AgentRt {
  enum class Phase { AwaitLR, HaveLR, Done, Dead };

  AgentSpec spec;
  CredalState state;
  std::deque<std::string> script;
  KnowledgeBase kb;
  bool notified = false;
  Phase phase = Phase::AwaitLR;
  std::optional<LikelihoodInput> pending;  // stored pair for the Jeffrey path
  std::optional<Rational> got_l, got_l2;   // singles collected so far

  explicit AgentRt(const AgentSpec& s) : spec(s), state(s.prior) {}
};

struct Runner {
  const Scenario& sc;
  ScenarioResult out;
  std::vector<AgentRt> agents;
  std::map<std::string, std::deque<Message>> inflight;
  std::mt19937_64 rng;
  std::string descriptor;
  Sentence E, H;
  bool halted = false;

  explicit Runner(const Scenario& s) : sc(s), rng(s.seed) {
    for (const auto& a : sc.agents) agents.emplace_back(a);
    descriptor = sc.descriptor;
    if (descriptor.empty()) {
      descriptor = sc.input
                       ? "lr(" + sc.evidence + "," + sc.hypothesis + ")=" + sc.input->r().str()
                       : "evidence(" + sc.evidence + ")";
    }
    if (!sc.evidence.empty()) E = Sentence::atom(sc.evidence);
    if (!sc.hypothesis.empty()) H = Sentence::atom(sc.hypothesis);
  }

  const Sentence& ev() const {
    if (!E.valid()) throw InvalidState("scenario names no evidence atom");
    return E;
  }
  const Sentence& hyp() const {
    if (!H.valid()) throw InvalidState("scenario names no hypothesis atom");
    return H;
  }
  const LikelihoodInput& input() const {
    if (!sc.input) throw InvalidState("scenario carries no likelihood input");
    return *sc.input;
  }

  std::string tof_id() const {
    for (const auto& a : agents)
      if (a.spec.role == "TOF") return a.spec.id;
    throw InvalidState("scenario has no TOF agent to report to");
  }

  void install_scripts(bool repeat) {
    for (auto& a : agents) {
      a.notified = false;
      auto beh = a.spec.behavior.empty() ? default_script(sc, a.spec.role, repeat)
                                         : a.spec.behavior;
      a.script.assign(beh.begin(), beh.end());
    }
  }

  ScenarioResult run() {
    install_scripts(false);
    round();
    if (!halted && sc.repeat_report) {
      install_scripts(true);
      round();
    }
    for (auto& a : agents) out.finals.emplace(a.spec.id, a.state);
    out.aborted = out.trace.has(TraceEvent::Kind::Aborted);
    out.refused = out.trace.has(TraceEvent::Kind::Refused);
    return std::move(out);
  }

  void round() {
    while (!halted) {
      // Candidate moves, in a fixed order: agent script steps first, then
      // one delivery candidate per agent with queued messages (per-receiver
      // queues preserve send order).  The seed picks among them.
      std::vector<std::pair<int, std::size_t>> moves;
      for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& a = agents[i];
        if (a.script.empty()) continue;
        if (a.script.front() == "await_notification" && !a.notified) continue;
        moves.push_back({0, i});
      }
      for (std::size_t i = 0; i < agents.size(); ++i) {
        auto it = inflight.find(agents[i].spec.id);
        if (it != inflight.end() && !it->second.empty()) moves.push_back({1, i});
      }
      if (moves.empty()) {
        for (const auto& a : agents) {
          if (!a.script.empty()) {
            out.trace.add(TraceEvent::Kind::Aborted, a.spec.id,
                          a.spec.id + " waits for a notification that never arrives");
            halted = true;
          }
        }
        return;
      }
      auto [type, idx] = moves[rng() % moves.size()];
      if (type == 0) {
        exec_step(idx);
      } else {
        deliver(idx);
      }
    }
  }

  void applied(AgentRt& a, const TransitionLabel& label) {
    a.state = step(a.state, label);
    out.trace.add(TraceEvent::Kind::Applied, a.spec.id,
                  a.spec.id + " " + label.str() + " -> " + a.state.str());
  }

  void abort_run(const std::string& actor, const std::string& reason) {
    out.trace.add(TraceEvent::Kind::Aborted, actor, actor + " " + reason);
    halted = true;
  }

  void refuse(const AgentRt& a, const std::string& reason) {
    out.trace.add(TraceEvent::Kind::Refused, a.spec.id, a.spec.id + " " + reason);
  }

  void send(const Message& m) {
    out.trace.add(TraceEvent::Kind::Sent, m.sender, m.sender + "->" + m.receiver + " " + m.payload());
    inflight[m.receiver].push_back(m);
  }

  Message report_message(const AgentRt& a, Message::Kind kind, bool negated) {
    Message m;
    m.kind = kind;
    m.sender = a.spec.id;
    m.receiver = tof_id();
    m.evidence = sc.evidence;
    m.hypothesis = sc.hypothesis;
    m.l = input().l;
    m.l2 = input().l2;
    m.negated = negated;
    m.descriptor = descriptor;
    return m;
  }

  // A report should match the sender's beliefs at the moment of sending;
  // when it does not, the trace carries a flag rather than an error.
  void flag_if_stale(const AgentRt& a, const Message& m) {
    const Signature& sig = a.state.signature();
    if (!sig.contains(sc.evidence)) return;
    if (m.kind == Message::Kind::Evidence) {
      Rational pe = a.state.prob(ev());
      if (pe != Rational(1)) {
        out.trace.add(TraceEvent::Kind::Flagged, a.spec.id,
                      a.spec.id + " reports " + sc.evidence + " as true while believing P(" +
                          sc.evidence + ")=" + pe.str());
      }
      return;
    }
    if (!sig.contains(sc.hypothesis)) return;
    if (m.kind == Message::Kind::LikelihoodRatio || m.kind == Message::Kind::Combined) {
      Rational cur = likelihood_ratio(a.state, ev(), hyp());
      Rational sent = m.l / m.l2;
      if (cur != sent) {
        out.trace.add(TraceEvent::Kind::Flagged, a.spec.id,
                      a.spec.id + " reports ratio " + sent.str() +
                          " while its current ratio is " + cur.str());
      }
      return;
    }
    Rational cur_l = likelihood(a.state, ev(), hyp());
    Rational cur_l2 = likelihood(a.state, ev(), Sentence::negate(hyp()));
    bool stale = false;
    if (m.kind == Message::Kind::LikelihoodPair) {
      stale = cur_l != m.l || cur_l2 != m.l2;
    } else if (m.kind == Message::Kind::Likelihood) {
      stale = m.negated ? cur_l2 != m.l2 : cur_l != m.l;
    }
    if (stale) {
      out.trace.add(TraceEvent::Kind::Flagged, a.spec.id,
                    a.spec.id + " reports likelihoods that differ from its current beliefs");
    }
  }

  void exec_step(std::size_t i) {
    AgentRt& a = agents[i];
    std::string act = a.script.front();
    a.script.pop_front();
    try {
      if (act == "set_likelihood") {
        applied(a, TransitionLabel::slac(input().l, ev(), hyp()));
      } else if (act == "set_likelihood_neg") {
        applied(a, TransitionLabel::slac(input().l2, ev(), Sentence::negate(hyp())));
      } else if (act == "confirm_evidence") {
        applied(a, TransitionLabel::bc(ev(), a.state.prob(ev())));
      } else if (act == "send_ratio") {
        Message m = report_message(a, Message::Kind::LikelihoodRatio, false);
        flag_if_stale(a, m);
        send(m);
      } else if (act == "send_pair") {
        // A pair sent as one message is adopted as one revision: the sender
        // installs both likelihoods together before reporting them, so the
        // report matches its beliefs at send time.
        const Signature& sig = a.state.signature();
        if (sig.contains(sc.evidence) && sig.contains(sc.hypothesis)) {
          applied(a, TransitionLabel::dlac(input().l, input().l2, ev(), hyp()));
        }
        Message m = report_message(a, Message::Kind::LikelihoodPair, false);
        flag_if_stale(a, m);
        send(m);
      } else if (act == "send_likelihood") {
        Message m = report_message(a, Message::Kind::Likelihood, false);
        flag_if_stale(a, m);
        send(m);
      } else if (act == "send_likelihood_neg") {
        Message m = report_message(a, Message::Kind::Likelihood, true);
        flag_if_stale(a, m);
        send(m);
      } else if (act == "send_combined") {
        Message m = report_message(a, Message::Kind::Combined, false);
        flag_if_stale(a, m);
        send(m);
      } else if (act == "send_evidence") {
        Message m;
        m.kind = Message::Kind::Evidence;
        m.sender = a.spec.id;
        m.receiver = tof_id();
        m.evidence = sc.evidence;
        m.descriptor = descriptor;
        flag_if_stale(a, m);
        send(m);
      } else if (act == "send_notification") {
        std::string target;
        for (const auto& b : agents)
          if (b.spec.role == "MOE-E") target = b.spec.id;
        if (target.empty()) throw InvalidState("no MOE-E agent to notify");
        Message m;
        m.kind = Message::Kind::Notification;
        m.sender = a.spec.id;
        m.receiver = target;
        send(m);
      } else if (act == "await_notification") {
        // Only scheduled once the notification has been delivered.
      } else if (act.rfind("apply:", 0) == 0) {
        Combinator c = parse_combinator(act.substr(6));
        for (const auto& schema : schemas_from_combinator(c)) {
          auto label = instantiate(schema, a.state);
          if (!label) {
            throw GuardFailed("move " + schema.proto.str() + " is not admitted");
          }
          applied(a, *label);
        }
      } else {
        throw ParseError("unknown behavior action '" + act + "'");
      }
    } catch (const Error& err) {
      abort_run(a.spec.id, err.what());
    }
  }

  void deliver(std::size_t i) {
    AgentRt& recv = agents[i];
    auto& queue = inflight[recv.spec.id];
    Message m = queue.front();
    queue.pop_front();
    out.trace.add(TraceEvent::Kind::Delivered, recv.spec.id,
                  m.sender + "->" + m.receiver + " " + m.payload());
    if (m.kind == Message::Kind::Notification) {
      recv.notified = true;
      return;
    }
    if (recv.spec.role != "TOF") return;
    try {
      handle_report(recv, m);
    } catch (const Error& err) {
      abort_run(recv.spec.id, err.what());
    }
  }

  void handle_report(AgentRt& t, const Message& m) {
    if (m.kind == Message::Kind::Evidence) {
      handle_evidence(t, m);
      return;
    }
    // Likelihood information of some form.
    if (t.phase == AgentRt::Phase::Dead) return;
    if (!t.kb.novelty_check(m.descriptor)) {
      refuse(t, "report with already-processed content descriptor '" + m.descriptor + "'");
      t.phase = AgentRt::Phase::Dead;
      return;
    }
    if (t.phase != AgentRt::Phase::AwaitLR) {
      refuse(t, "duplicate likelihood report");
      return;
    }
    const bool has_e = t.state.signature().contains(sc.evidence);
    if (m.kind == Message::Kind::Likelihood) {
      // Two single-likelihood messages arrive separately; with the evidence
      // atom present each one is installed as it comes.
      if (m.negated) {
        t.got_l2 = m.l2;
        if (has_e) applied(t, TransitionLabel::slac(m.l2, ev(), Sentence::negate(hyp())));
      } else {
        t.got_l = m.l;
        if (has_e) applied(t, TransitionLabel::slac(m.l, ev(), hyp()));
      }
      if (t.got_l && t.got_l2) {
        if (!has_e) t.pending = LikelihoodInput::pair(*t.got_l, *t.got_l2);
        t.phase = AgentRt::Phase::HaveLR;
      }
      return;
    }
    LikelihoodInput in = m.kind == Message::Kind::LikelihoodPair
                             ? LikelihoodInput::pair(m.l, m.l2)
                             : LikelihoodInput::ratio(m.l / m.l2);
    if (has_e) {
      applied(t, TransitionLabel::dlac(in.l, in.l2, ev(), hyp()));
    } else {
      t.pending = in;
    }
    t.phase = AgentRt::Phase::HaveLR;
    if (m.kind == Message::Kind::Combined) complete_evidence(t, m);
  }

  void handle_evidence(AgentRt& t, const Message& m) {
    if (t.phase == AgentRt::Phase::Dead) return;
    if (t.phase == AgentRt::Phase::Done) {
      refuse(t, t.kb.novelty_check(m.descriptor)
                    ? "duplicate evidence message"
                    : "evidence with already-processed content descriptor '" + m.descriptor +
                          "'");
      return;
    }
    if (!sc.input) {
      // Evidence-only scenario: plain conditioning on the confirmed fact.
      if (!t.kb.novelty_check(m.descriptor)) {
        refuse(t, "evidence with already-processed content descriptor '" + m.descriptor + "'");
        t.phase = AgentRt::Phase::Dead;
        return;
      }
      applied(t, TransitionLabel::bc(ev(), t.state.prob(ev())));
      t.kb.update(sc.evidence, m.descriptor);
      t.phase = AgentRt::Phase::Done;
      return;
    }
    if (t.phase == AgentRt::Phase::AwaitLR) {
      refuse(t, "evidence message before any likelihood report");
      t.phase = AgentRt::Phase::Dead;
      return;
    }
    complete_evidence(t, m);
  }

  void complete_evidence(AgentRt& t, const Message& m) {
    if (t.state.signature().contains(sc.evidence)) {
      applied(t, TransitionLabel::bc(ev(), t.state.prob(ev())));
    } else {
      if (!t.pending) throw InvalidState("no stored likelihood pair for the Jeffrey step");
      Rational phat = workspace_posterior(t.state.prob(hyp()), t.pending->l, t.pending->l2);
      applied(t, TransitionLabel::jc(phat, hyp()));
    }
    t.kb.update(sc.evidence, m.descriptor);
    t.phase = AgentRt::Phase::Done;
  }
};

}  // namespace

ScenarioResult run_scenario(const Scenario& sc) {
  Runner runner(sc);
  return runner.run();
}

std::optional<std::uint64_t> find_naive_reordering_seed(Scenario sc, std::uint64_t first,
                                                        std::uint64_t last) {
  sc.mode = MoeMode::ParallelNaive;
  for (std::uint64_t seed = first; seed <= last; ++seed) {
    sc.seed = seed;
    ScenarioResult res = run_scenario(sc);
    auto ev = res.trace.find(TraceEvent::Kind::Delivered, "P(" + sc.evidence + ")=1");
    auto lr = res.trace.find(TraceEvent::Kind::Delivered, "LR(");
    if (ev && (!lr || *ev < *lr)) return seed;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Prosecutor-style conditioning.

ProsecutorReport prosecutor_conditioning(std::size_t n, std::size_t k, const Rational& p) {
  if (n < 2 || k < 1 || k >= n) {
    throw ParameterOutOfRange("need n >= 2 and 1 <= k < n");
  }
  const Rational one(1);
  const Rational rn(static_cast<long long>(n));
  if (!(p * rn > one) || p > one) {
    throw ParameterOutOfRange("need 1/n < p <= 1, got p=" + p.str() +
                              " with n=" + std::to_string(n));
  }

  // Prior cells: prob(D_i) = 1/n for every i; the hypothesis weight p sits
  // on D_1, the remainder spread evenly over D_2..D_n.
  std::vector<Rational> h(n), nh(n);
  h[0] = p / rn;
  Rational spread = (one - p) / (Rational(static_cast<long long>(n - 1)) * rn);
  for (std::size_t i = 1; i < n; ++i) h[i] = spread;
  for (std::size_t i = 0; i < n; ++i) nh[i] = one / rn - h[i];

  ProsecutorReport rep;
  rep.n = n;
  rep.k = k;
  rep.p = p;
  rep.prior_h = one / rn;
  rep.prior_e = Rational(static_cast<long long>(k)) / rn;
  rep.prior_h_d1 = h[0];

  // Installing P(E|H) = 1 concentrates the H-mass on the E-cells D_1..D_k,
  // scaled by 1/P(E|H); the complement cells keep their mass.
  Rational he(0);
  for (std::size_t i = 0; i < k; ++i) he += h[i];
  Rational factor = rep.prior_h / he;  // positive since h[0] = p/n > 1/n^2 > 0
  rep.posterior_h_cell.assign(n, Rational(0));
  for (std::size_t i = 0; i < k; ++i) rep.posterior_h_cell[i] = h[i] * factor;
  rep.posterior_nh_cell = nh;
  rep.posterior_h_d1 = rep.posterior_h_cell[0];
  rep.factor = factor;
  return rep;
}

std::string ProsecutorReport::str() const {
  std::ostringstream os;
  os << "suspects n=" << n << "  evidence-pool k=" << k << "  p=" << p.str() << "\n";
  os << "prior:     P(H)=" << prior_h.str() << "  P(E)=" << prior_e.str()
     << "  P(H&D1)=" << prior_h_d1.str() << "\n";
  os << "posterior: P(H&D1)=" << posterior_h_d1.str() << "\n";
  os << "update factor on H&D1: " << factor.str() << " (~" << factor.approx() << ")\n";
  return os.str();
}

CredalState prosecutor_boolean_state(std::size_t n, std::size_t k, const Rational& p) {
  if (n > 4) throw ParameterOutOfRange("Boolean cross-check is sized for n <= 4");
  (void)prosecutor_conditioning(n, k, p);  // reuse the parameter validation
  const Rational one(1);
  const Rational rn(static_cast<long long>(n));
  std::vector<std::string> atoms = {"H", "E"};
  for (std::size_t i = 1; i <= n; ++i) atoms.push_back("D" + std::to_string(i));
  Signature sig(atoms);
  std::vector<Rational> mass(sig.minterms(), Rational(0));
  Rational spread = (one - p) / (Rational(static_cast<long long>(n - 1)) * rn);
  for (std::size_t d = 1; d <= n; ++d) {
    Rational hmass = (d == 1) ? p / rn : spread;
    Rational nhmass = one / rn - hmass;
    std::size_t base = std::size_t{1} << sig.index_of("D" + std::to_string(d));
    if (d <= k) base |= std::size_t{1} << sig.index_of("E");
    mass[base | (std::size_t{1} << sig.index_of("H"))] = hmass;
    mass[base] = nhmass;
  }
  return CredalState(std::move(sig), std::move(mass));
}

}  // namespace credal
