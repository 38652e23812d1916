#include "credal/checks.hpp"

#include <random>
#include <tuple>

#include "credal/combinator.hpp"
#include "credal/conditioning.hpp"
#include "credal/errors.hpp"
#include "credal/lts.hpp"
#include "credal/protocol.hpp"
#include "credal/scenario_io.hpp"

namespace credal {

namespace {

using Rng = std::mt19937_64;

Rational rat(long long n, long long d) { return Rational(n) / Rational(d); }

// Random full-support state: integer weights in 1..64 per minterm,
// normalized exactly.  With allow_zero, weights in 0..64 (at least one cell
// forced positive) so boundary-support states appear.
CredalState random_state(Rng& rng, const Signature& sig, bool allow_zero) {
  std::vector<unsigned long long> w(sig.minterms());
  unsigned long long total = 0;
  for (auto& wi : w) {
    wi = allow_zero ? rng() % 65 : 1 + rng() % 64;
    total += wi;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> m;
  m.reserve(w.size());
  for (auto wi : w) m.push_back(Rational((long long)wi) / Rational((long long)total));
  return CredalState(sig, std::move(m));
}

// Uniform random rational in (0, 1]: denominator 1..64, numerator 1..q.
Rational random_unit_halfopen(Rng& rng) {
  unsigned long long q = 1 + rng() % 64;
  unsigned long long p = 1 + rng() % q;
  return Rational((long long)p) / Rational((long long)q);
}

// Uniform random rational strictly inside (0, 1).
Rational random_unit_open(Rng& rng) {
  unsigned long long q = 2 + rng() % 63;
  unsigned long long p = 1 + rng() % (q - 1);
  return Rational((long long)p) / Rational((long long)q);
}

// A small random sentence over the signature's atoms (possibly bottom, so
// zero-probability conditions show up even on full-support states).
Sentence random_sentence(Rng& rng, const Signature& sig) {
  const auto& atoms = sig.atoms();
  auto pick = [&]() { return Sentence::atom(atoms[rng() % atoms.size()]); };
  switch (rng() % 5) {
    case 0: return pick();
    case 1: return Sentence::negate(pick());
    case 2: return Sentence::conj(pick(), Sentence::negate(pick()));
    case 3: return Sentence::disj(pick(), pick());
    default: return Sentence::bottom();
  }
}

Sentence random_nonbottom_sentence(Rng& rng, const Signature& sig) {
  for (;;) {
    Sentence s = random_sentence(rng, sig);
    bool sat = false;
    for (std::size_t i = 0; i < sig.minterms() && !sat; ++i) sat = evaluate(s, sig, i);
    if (sat) return s;
  }
}

// Assertion collector: failures keep the first counterexample only.
struct Ctx {
  CheckReport rep;
  explicit Ctx(std::string id) { rep.id = std::move(id); }
  void require(bool cond, const std::string& detail) {
    ++rep.attempted;
    if (cond) {
      ++rep.passed;
    } else if (rep.counterexample.empty()) {
      rep.counterexample = detail;
    }
  }
};

std::string tag(const char* what, std::size_t i) {
  return std::string(what) + ", case " + std::to_string(i);
}

// ---------------------------------------------------------------------------
// taxi: the frozen two-atom reference instance, end to end.

CheckReport check_taxi(const CheckOptions&) {
  Ctx c("taxi");
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  CredalState P = taxi_prior();

  c.require(P.prob(E) == rat(29, 100), "prob(E) = " + P.prob(E).str());
  c.require(P.prob(H) == rat(3, 20), "prob(H) = " + P.prob(H).str());
  c.require(likelihood(P, E, H) == rat(4, 5), "L(E,H) = " + likelihood(P, E, H).str());
  c.require(likelihood(P, E, Sentence::negate(H)) == rat(1, 5),
            "L(E,!H) = " + likelihood(P, E, Sentence::negate(H)).str());
  c.require(likelihood_ratio(P, E, H) == Rational(4),
            "LR = " + likelihood_ratio(P, E, H).str());

  CredalState post = bayes(P, E);
  c.require(post.prob(H) == rat(12, 29), "posterior prob(H) = " + post.prob(H).str());
  c.require(cond_prob0(P, H, E) == rat(12, 29), "P0(H|E) = " + cond_prob0(P, H, E).str());

  // Odds form: posterior odds on H equal the likelihood ratio times the
  // prior odds.
  Rational post_odds = div(post.prob(H), post.prob(Sentence::negate(H)));
  Rational prior_odds = div(P.prob(H), P.prob(Sentence::negate(H)));
  c.require(post_odds == Rational(4) * prior_odds,
            "posterior odds " + post_odds.str() + " vs r * prior odds " +
                (Rational(4) * prior_odds).str());
  c.require(post_odds == rat(12, 17), "posterior odds = " + post_odds.str());

  // The same state built from scratch: empty space, base-rate inclusion of
  // H, parametrized expansion by E with the two likelihoods.
  CredalState base(Signature{}, {Rational(1)});
  CredalState withH = base_rate(base, "H", rat(3, 20));
  CredalState rebuilt = expand_parametrized(withH, "E", {rat(1, 5), rat(4, 5)});
  c.require(rebuilt == P, "rebuilt state " + rebuilt.str());

  // Ratio input r = 4 matches the prior's own ratio, so installing it and
  // conditioning is plain conditioning.
  CredalState via_ratio =
      run_pipeline(PipelineKind::DlacThenBC, P, "E", "H", LikelihoodInput::ratio(Rational(4)));
  c.require(via_ratio == post, "ratio-install pipeline " + via_ratio.str());
  c.require(posterior_hypothesis(Rational(4), rat(3, 20)) == rat(12, 29),
            "closed form " + posterior_hypothesis(Rational(4), rat(3, 20)).str());

  // Reference protocol run between two holders of this prior.
  ScenarioTrace t = lrtmr_outline(P, P, "E", "H");
  c.require(!t.has(TraceEvent::Kind::Aborted), "outline aborted:\n" + t.str());
  c.require(t.find(TraceEvent::Kind::Applied, post.str()).has_value(),
            "outline posterior missing from trace:\n" + t.str());

  // Abort conditions: degenerate reporter beliefs, then a zero likelihood
  // under the alternative.
  CredalState degenerate(Signature({"E", "H"}),
                         {Rational(0), Rational(0), rat(1, 2), rat(1, 2)});
  c.require(lrtmr_outline(P, degenerate, "E", "H").has(TraceEvent::Kind::Aborted),
            "no abort for P(H)=1 reporter");
  CredalState zero_alt(Signature({"E", "H"}), {rat(1, 2), Rational(0), rat(3, 10), rat(1, 5)});
  c.require(lrtmr_outline(P, zero_alt, "E", "H").has(TraceEvent::Kind::Aborted),
            "no abort for L(E,!H)=0 reporter");

  // The built-in scenario reproduces the posterior through the scheduler.
  ScenarioResult r = run_scenario(builtin_scenario("taxi"));
  c.require(!r.aborted && !r.refused, "builtin scenario did not complete:\n" + r.trace.str());
  c.require(r.final_state("tof").prob(H) == rat(12, 29),
            "builtin tof prob(H) = " + r.final_state("tof").prob(H).str());
  c.require(r.final_state("moe").prob(E) == Rational(1),
            "builtin moe prob(E) = " + r.final_state("moe").prob(E).str());
  return c.rep;
}

// ---------------------------------------------------------------------------
// variants: the four conditional-probability readings, their fallbacks, and
// the strict-operation / total-combinator coincidence on admissible input.

CheckReport check_variants(const CheckOptions& opt) {
  Ctx c("variants");
  Rng rng(opt.seed);
  const Signature sig2({"E", "H"});
  const Signature sig3({"E", "H", "X"});
  for (std::size_t i = 0; i < opt.cases; ++i) {
    const Signature& sig = (i % 2 == 0) ? sig2 : sig3;
    CredalState P = random_state(rng, sig, true);
    Sentence x = random_sentence(rng, sig);
    Sentence y = random_sentence(rng, sig);
    Rational py = P.prob(y);
    Rational pxy = P.prob(Sentence::conj(x, y));
    Rational z = cond_prob0(P, x, y);
    Rational o = cond_prob1(P, x, y);
    Rational s = cond_prob_safe(P, x, y);
    auto k = cond_prob(P, CondVariant::Kolmogorov, x, y);

    c.require(z == div(pxy, py), tag("total-division form", i));
    if (py != Rational(0)) {
      c.require(o == z && s == z && k.has_value() && *k == z,
                tag("variants disagree on a nonzero condition", i) + ": P=" + P.str());
    } else {
      c.require(z == Rational(0), tag("zero fallback", i));
      c.require(o == Rational(1), tag("one fallback", i));
      c.require(s == P.prob(x), tag("safe fallback", i) + ": got " + s.str());
      c.require(!k.has_value(), tag("undefined fallback", i));
    }

    // The safe conditional is itself a probability function in x.
    Rational row;
    bool in_range = true;
    for (std::size_t m = 0; m < sig.minterms(); ++m) {
      Rational v = cond_prob_safe(P, minterm_sentence(sig, m), y);
      in_range = in_range && sign(v) >= 0 && v <= Rational(1);
      row = row + v;
    }
    c.require(row == Rational(1) && in_range,
              tag("safe conditional row sum", i) + " = " + row.str());

    // Strict operations agree with their combinator forms whenever the
    // strict preconditions hold (full support gives them all).
    CredalState F = random_state(rng, sig, false);
    Sentence phi = random_nonbottom_sentence(rng, sig);
    c.require(apply(Combinator::bc(phi), F) == bayes(F, phi),
              tag("conditioning combinator", i) + " on " + phi.str());
    Sentence m = Sentence::atom(sig.atoms()[rng() % sig.size()]);
    Rational p = random_unit_open(rng);
    c.require(apply(Combinator::jc(p, m), F) == jeffrey(F, p, m),
              tag("reweighting combinator", i));
    Rational l = random_unit_halfopen(rng);
    Rational l2 = random_unit_halfopen(rng);
    const Sentence E = Sentence::atom("E");
    const Sentence H = Sentence::atom("H");
    c.require(apply(Combinator::slac(l, E, H), F) == slac(F, l, E, H),
              tag("single-likelihood combinator", i));
    c.require(apply(Combinator::dlac(l, l2, E, H), F) == dlac(F, l, l2, E, H),
              tag("double-likelihood combinator", i));
    c.require(apply(Combinator::br("M", l), F) == base_rate(F, "M", l),
              tag("base-rate combinator", i));
    ExpansionMode mode = (i % 3 == 0)   ? ExpansionMode::One
                         : (i % 3 == 1) ? ExpansionMode::Zero
                                        : ExpansionMode::Half;
    CredalState ex = expand(F, "M", mode);
    c.require(apply(Combinator::pse("M", mode), F) == ex, tag("expansion combinator", i));
    c.require(apply(Combinator::psr("M"), ex) == reduce(ex, "M"),
              tag("reduction combinator", i));
  }
  return c.rep;
}

// ---------------------------------------------------------------------------
// adamsbayes: installing one likelihood, then the complementary one, then
// conditioning — every intermediate pinned by a closed form.

CheckReport check_adamsbayes(const CheckOptions& opt) {
  Ctx c("adamsbayes");
  Rng rng(opt.seed);
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  const Sentence nH = Sentence::negate(H);
  const Signature sig2({"E", "H"});
  const Signature sig3({"E", "H", "X"});
  for (std::size_t i = 0; i < opt.cases; ++i) {
    const Signature& sig = (i % 2 == 0) ? sig2 : sig3;
    CredalState P = random_state(rng, sig, false);
    Rational l = random_unit_halfopen(rng);
    Rational l2 = random_unit_halfopen(rng);
    Rational r = l / l2;

    CredalState Q = slac(P, l, E, H);
    c.require(cond_prob0(Q, E, H) == l, tag("first install", i) + ": P=" + P.str());

    CredalState R = slac(Q, l2, E, nH);
    c.require(cond_prob0(R, E, H) == l, tag("first likelihood survives the second", i));
    c.require(cond_prob0(R, E, nH) == l2, tag("second install", i));
    c.require(likelihood_ratio(R, E, H) == r, tag("installed ratio", i));

    // Closed form for the doubly-revised state, cell by cell.
    Rational ceh = div(l, cond_prob0(P, E, H));
    Rational cenh = div(l2, cond_prob0(P, E, nH));
    Rational cneh = div(Rational(1) - l, cond_prob0(P, Sentence::negate(E), H));
    Rational cnenh = div(Rational(1) - l2, cond_prob0(P, Sentence::negate(E), nH));
    bool cells_ok = true;
    for (std::size_t m = 0; m < sig.minterms() && cells_ok; ++m) {
      Sentence x = minterm_sentence(sig, m);
      Rational want = P.prob(Sentence::conj(Sentence::conj(nH, E), x)) * cenh +
                      P.prob(Sentence::conj(Sentence::conj(nH, Sentence::negate(E)), x)) * cnenh +
                      P.prob(Sentence::conj(Sentence::conj(H, E), x)) * ceh +
                      P.prob(Sentence::conj(Sentence::conj(H, Sentence::negate(E)), x)) * cneh;
      cells_ok = R.mass(m) == want;
    }
    c.require(cells_ok, tag("cellwise closed form", i) + ": P=" + P.str());

    // The two installs commute, and together they are the simultaneous
    // double install.
    c.require(slac(slac(P, l2, E, nH), l, E, H) == R, tag("install order", i));
    c.require(dlac(P, l, l2, E, H) == R, tag("simultaneous install", i));

    CredalState Rhat = bayes(R, E);
    Rational want_h = posterior_hypothesis(r, P.prob(H));
    c.require(Rhat.prob(H) == want_h,
              tag("posterior hypothesis", i) + ": got " + Rhat.prob(H).str() + ", want " +
                  want_h.str());
  }
  return c.rep;
}

// ---------------------------------------------------------------------------
// simadamsbayes: the simultaneous double install followed by conditioning,
// including the conditional decomposition of the posterior and independence
// from the ratio's factorization.

CheckReport check_simadamsbayes(const CheckOptions& opt) {
  Ctx c("simadamsbayes");
  Rng rng(opt.seed);
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  const Sentence nH = Sentence::negate(H);
  const Signature sig2({"E", "H"});
  const Signature sig3({"E", "H", "X"});
  for (std::size_t i = 0; i < opt.cases; ++i) {
    const Signature& sig = (i % 2 == 0) ? sig2 : sig3;
    CredalState P = random_state(rng, sig, false);
    Rational l = random_unit_halfopen(rng);
    Rational l2 = random_unit_halfopen(rng);
    Rational r = l / l2;

    CredalState Q = dlac(P, l, l2, E, H);
    c.require(cond_prob0(Q, E, H) == l, tag("installed likelihood", i));
    c.require(cond_prob0(Q, E, nH) == l2, tag("installed alternative likelihood", i));
    c.require(likelihood_ratio(Q, E, H) == r, tag("installed ratio", i));

    CredalState Qhat = bayes(Q, E);
    Rational ph = P.prob(H);
    Rational denom = r * ph + (Rational(1) - ph);
    bool cells_ok = true;
    for (std::size_t m = 0; m < sig.minterms() && cells_ok; ++m) {
      Sentence x = minterm_sentence(sig, m);
      Rational want = div(r * ph * cond_prob0(P, x, Sentence::conj(H, E)) +
                              (Rational(1) - ph) * cond_prob0(P, x, Sentence::conj(nH, E)),
                          denom);
      cells_ok = Qhat.mass(m) == want;
    }
    c.require(cells_ok, tag("posterior decomposition", i) + ": P=" + P.str());
    c.require(Qhat.prob(H) == posterior_hypothesis(r, ph), tag("posterior hypothesis", i));

    // The full posterior state depends on the pair only through the ratio.
    auto [fl, fl2] = decompose_ratio(r);
    c.require(bayes(dlac(P, fl, fl2, E, H), E) == Qhat,
              tag("factorization independence (canonical)", i));
    Rational alt2 = (r <= Rational(1) ? Rational(1) : div(Rational(1), r)) / Rational(3);
    Rational alt = r * alt2;
    c.require(bayes(dlac(P, alt, alt2, E, H), E) == Qhat,
              tag("factorization independence (alternate)", i));
  }
  return c.rep;
}

// ---------------------------------------------------------------------------
// commute: install-then-condition equals condition-then-reweight at the
// derived posterior, as full states.

CheckReport check_commute(const CheckOptions& opt) {
  Ctx c("commute");
  Rng rng(opt.seed);
  const Signature sig2({"E", "H"});
  const Signature sig3({"E", "H", "L"});
  for (std::size_t i = 0; i < opt.cases; ++i) {
    const Signature& sig = (i % 2 == 0) ? sig2 : sig3;
    CredalState P = random_state(rng, sig, false);
    Rational l = random_unit_halfopen(rng);
    Rational l2 = random_unit_halfopen(rng);
    std::string detail;
    bool ok = commutation_check(P, "E", "H", l, l2, &detail);
    c.require(ok, tag("commutation", i) + ": " + detail + " (P=" + P.str() + ")");
  }
  return c.rep;
}

// ---------------------------------------------------------------------------
// gsfail: two parameter choices that agree on every hypothesis-level
// quantity yet disagree on a refined proposition — soundness of the
// aggregate report does not extend to the finer space.

CheckReport check_gsfail(const CheckOptions&) {
  Ctx c("gsfail");
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  const Sentence L = Sentence::atom("L");
  const Sentence nH = Sentence::negate(H);
  CredalState base = CredalState::uniform(Signature({"H", "L"}));

  struct Instance {
    Rational u, v;      // P(E | H&L), P(E | H&!L)
    Rational want_l;    // posterior prob(L)
  };
  // Both instances share u' = v' = 1/3 below H's complement and the same
  // aggregate likelihoods; only the split of E across H&L / H&!L differs.
  const Rational uprime = rat(1, 3);
  const Instance cases[2] = {{rat(3, 7), rat(4, 7), rat(16, 35)},
                             {rat(4, 7), rat(3, 7), rat(19, 35)}};
  Rational got[2];
  for (int k = 0; k < 2; ++k) {
    const Instance& in = cases[k];
    // Minterm order over {H,L}: !H!L, H!L, !HL, HL.
    std::vector<Rational> q{uprime, in.v, uprime, in.u};
    CredalState QE = expand_parametrized(base, "E", q);
    c.require(cond_prob0(QE, E, Sentence::conj(H, L)) == in.u, "install of P(E|H&L)");
    c.require(cond_prob0(QE, E, Sentence::conj(H, Sentence::negate(L))) == in.v,
              "install of P(E|H&!L)");
    c.require(cond_prob0(QE, E, Sentence::conj(nH, L)) == uprime, "install of P(E|!H&L)");
    c.require(cond_prob0(QE, E, Sentence::conj(nH, Sentence::negate(L))) == uprime,
              "install of P(E|!H&!L)");
    // Aggregates agree across the two instances: u + v = 1 makes
    // P(E|H) = 1/2, P(E|!H) = 1/3, ratio 3/2.
    c.require(cond_prob0(QE, E, H) == rat(1, 2), "aggregate likelihood");
    c.require(cond_prob0(QE, E, nH) == rat(1, 3), "aggregate alternative likelihood");
    c.require(likelihood_ratio(QE, E, H) == rat(3, 2), "aggregate ratio");

    CredalState Qhat = bayes(QE, E, /*kinetics=*/true);
    got[k] = Qhat.prob(L);
    c.require(got[k] == in.want_l,
              "posterior prob(L) = " + got[k].str() + ", want " + in.want_l.str());
    c.require(got[k] == div(in.u + uprime, in.u + in.v + uprime + uprime),
              "posterior prob(L) closed form");
    c.require(Qhat.prob(H) == rat(3, 5), "posterior prob(H) = " + Qhat.prob(H).str());
  }
  c.require(got[0] != got[1],
            "refined posteriors coincide at " + got[0].str() +
                " although the parameter splits differ");
  return c.rep;
}

// ---------------------------------------------------------------------------
// toc: acquiring the value of one's own likelihood is a null revision, so
// the transposed conditional is untouched; acquiring a *different* value
// moves it, and in particular never justifies transposing the learned
// number itself.

CheckReport check_toc(const CheckOptions& opt) {
  Ctx c("toc");
  Rng rng(opt.seed);
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  const Signature sig2({"E", "H"});
  const Signature sig3({"E", "H", "X"});
  for (std::size_t i = 0; i < opt.cases; ++i) {
    const Signature& sig = (i % 2 == 0) ? sig2 : sig3;
    CredalState P = random_state(rng, sig, false);
    Rational l = cond_prob0(P, E, H);  // the acquired value of the likelihood
    CredalState Phat = slac(P, l, E, H);
    c.require(cond_prob0(Phat, H, E) == cond_prob0(P, H, E),
              tag("transposed conditional moved", i) + ": P=" + P.str() + ", l=" + l.str() +
                  ", got " + cond_prob0(Phat, H, E).str() + ", want " +
                  cond_prob0(P, H, E).str());
    c.require(Phat.prob(H) == P.prob(H), tag("hypothesis belief moved", i));
  }

  // Frozen contrast on the reference instance: revising the likelihood to
  // 1/2 neither transposes (P0(H|E) != 1/2) nor stays put (15/49 != 12/29).
  CredalState P = taxi_prior();
  CredalState Phat = slac(P, rat(1, 2), E, H);
  Rational moved = cond_prob0(Phat, H, E);
  c.require(moved == rat(15, 49), "revised P0(H|E) = " + moved.str());
  c.require(moved != rat(1, 2), "transposition fallacy value matched");
  c.require(moved != cond_prob0(P, H, E),
            "a genuinely new likelihood left the transposed conditional at " + moved.str());
  c.require(Phat.prob(H) == rat(3, 20), "hypothesis belief moved on the reference instance");
  return c.rep;
}

// ---------------------------------------------------------------------------
// prosecutor: forcing P(E|H) = 1 rescales the suspect cell by the exact
// reciprocal of p + (1-p)(k-1)/(n-1) — not by the naive two-term sum.

CheckReport check_prosecutor(const CheckOptions&) {
  Ctx c("prosecutor");
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");

  ProsecutorReport rep = prosecutor_conditioning(100000, 100, rat(1, 10));
  Rational denom = rat(1, 10) + rat(9, 10) * rat(99, 99999);
  c.require(denom == rat(1121, 11111), "scaling denominator = " + denom.str());
  c.require(rep.factor == rat(11111, 1121), "factor = " + rep.factor.str());
  c.require(rep.factor * denom == Rational(1), "factor is not the reciprocal");
  // The naive reading p + (1-p)k/n rounds the denominator up to 19/100;
  // the exact value is strictly smaller, so the factor strictly beats 100/19.
  c.require(denom != rat(19, 100), "denominator collapsed to the naive sum");
  c.require(denom < rat(19, 100), "denominator not below the naive sum");
  c.require(rep.factor > rat(100, 19), "factor = " + rep.factor.str() + " not above 100/19");
  c.require(rep.prior_h == rat(1, 100000), "prior prob(H) = " + rep.prior_h.str());
  c.require(rep.prior_e == rat(1, 1000), "prior prob(E) = " + rep.prior_e.str());
  c.require(rep.prior_h_d1 == rat(1, 1000000), "prior suspect cell = " + rep.prior_h_d1.str());
  c.require(rep.posterior_h_d1 == rep.prior_h_d1 * rep.factor, "suspect cell scaling");
  Rational total;
  for (const auto& v : rep.posterior_h_cell) total = total + v;
  for (const auto& v : rep.posterior_nh_cell) total = total + v;
  c.require(total == Rational(1), "posterior mass sums to " + total.str());
  bool zeroed = true;
  for (std::size_t i = 100; i < rep.posterior_h_cell.size(); ++i) {
    zeroed = zeroed && rep.posterior_h_cell[i] == Rational(0);
  }
  c.require(zeroed, "carriers beyond the evidence set kept mass");

  // Boolean-atom cross-check at small size: the compact cell report agrees
  // with the strict likelihood install on the explicit minterm space.
  ProsecutorReport small = prosecutor_conditioning(4, 2, rat(1, 2));
  CredalState pop = prosecutor_boolean_state(4, 2, rat(1, 2));
  c.require(pop.prob(H) == small.prior_h, "boolean prior prob(H)");
  c.require(pop.prob(E) == small.prior_e, "boolean prior prob(E)");
  c.require(pop.prob(Sentence::conj(H, Sentence::atom("D1"))) == small.prior_h_d1,
            "boolean prior suspect cell");
  CredalState post = slac(pop, Rational(1), E, H);
  for (std::size_t i = 1; i <= 4; ++i) {
    Sentence Di = Sentence::atom("D" + std::to_string(i));
    c.require(post.prob(Sentence::conj(H, Di)) == small.posterior_h_cell[i - 1],
              "boolean posterior H cell " + std::to_string(i));
    c.require(post.prob(Sentence::conj(Sentence::negate(H), Di)) ==
                  small.posterior_nh_cell[i - 1],
              "boolean posterior !H cell " + std::to_string(i));
  }
  c.require(div(post.prob(Sentence::conj(H, Sentence::atom("D1"))), small.prior_h_d1) ==
                small.factor,
            "boolean factor");
  c.require(post.prob(H) == pop.prob(H), "likelihood install moved prob(H)");

  // Degenerate concentration: with p = 1 the evidence is already certain
  // under H, so nothing rescales.
  c.require(prosecutor_conditioning(100, 5, Rational(1)).factor == Rational(1),
            "factor for p = 1");

  // The built-in scheduled version reaches the same posterior.
  ScenarioResult r = run_scenario(builtin_scenario("prosecutor"));
  c.require(!r.aborted && !r.refused, "builtin scenario did not complete:\n" + r.trace.str());
  c.require(r.final_state("tof") == post, "builtin tof final state");
  c.require(r.final_state("poc") == pop, "builtin poc state changed");
  return c.rep;
}

// ---------------------------------------------------------------------------
// combinators: expansion/reduction inverses and the three composition
// identities for likelihood-ratio installation started from an arbitrary
// state (the evidence and hypothesis atoms need not be present).

CheckReport check_combinators(const CheckOptions& opt) {
  Ctx c("combinators");
  Rng rng(opt.seed);
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  const std::size_t n = opt.cases < 200 ? opt.cases : 200;

  const Signature pool[] = {Signature{}, Signature({"H"}), Signature({"H", "X"}),
                            Signature({"E", "H"}), Signature({"E", "H", "X"})};
  for (std::size_t i = 0; i < n; ++i) {
    // Reduction undoes expansion in every mode, including over states with
    // zero-mass cells.
    const Signature& rsig = pool[1 + rng() % 4];
    CredalState P = random_state(rng, rsig, i % 2 == 1);
    for (ExpansionMode mode : {ExpansionMode::One, ExpansionMode::Zero, ExpansionMode::Half}) {
      Combinator round =
          Combinator::compose(Combinator::psr("M"), Combinator::pse("M", mode));
      c.require(apply(round, P) == P, tag("reduction after expansion", i));
    }

    // The installation sandwich: ensure H and E are present, install the
    // pair, condition.  The resulting hypothesis belief has the closed form
    // in r and the (possibly expanded) prior hypothesis belief alone.
    const Signature& sig = pool[i % 5];
    CredalState S = random_state(rng, sig, false);
    Rational l = random_unit_halfopen(rng);
    Rational l2 = random_unit_halfopen(rng);
    Rational r = l / l2;
    Combinator pse_h = Combinator::pse("H", ExpansionMode::One);
    Combinator pse_e = Combinator::pse("E", ExpansionMode::One);
    Combinator lead = Combinator::compose(pse_e, pse_h);
    Rational p = apply(pse_h, S).prob(H);
    Rational want = posterior_hypothesis(r, p);

    Combinator t1 = Combinator::compose(
        Combinator::bc(E), Combinator::compose(Combinator::dlac(l, l2, E, H), lead));
    CredalState inner = apply(t1, S);
    c.require(inner.prob(H) == want,
              tag("pair-install identity", i) + ": got " + inner.prob(H).str() + ", want " +
                  want.str() + " (S=" + S.str() + ")");

    Combinator t2 = Combinator::compose(
        Combinator::bc(E),
        Combinator::compose(Combinator::slac(l2, E, Sentence::negate(H)),
                            Combinator::compose(Combinator::slac(l, E, H), lead)));
    c.require(apply(t2, S).prob(H) == want, tag("stepwise-install identity", i));

    // Third identity: conditioning after the install equals conditioning
    // first and reweighting the hypothesis to the derived posterior.
    CredalState lhs = apply(Combinator::psr("E"), inner);
    Rational phat = inner.prob(H);
    CredalState mid = apply(Combinator::compose(Combinator::bc(E), lead), S);
    CredalState rhs = apply(Combinator::psr("E"), apply(Combinator::jc(phat, H), mid));
    c.require(lhs == rhs, tag("reweighting identity", i) + ": S=" + S.str());
  }
  return c.rep;
}

// ---------------------------------------------------------------------------
// lts: relation checking on generated fragments — identity and maximal
// compatibility pass, incompatible pairings fail with a witness, and the
// exhaustive search returns only relations that re-verify.

CheckReport check_lts(const CheckOptions& opt) {
  Ctx c("lts");
  const Sentence E = Sentence::atom("E");
  const Sentence H = Sentence::atom("H");
  const Signature sigEH({"E", "H"});
  const std::size_t n = opt.cases < 50 ? opt.cases : 50;

  for (std::size_t s = 0; s < n; ++s) {
    Rng rng(opt.seed + 1000 * (s + 1));
    CredalState seed = random_state(rng, sigEH, false);
    // Draw two label parameters distinct from each other and from the
    // seed's current value, so no generated state collapses into the seed.
    auto two_fresh = [&rng](const Rational& current) {
      Rational a = random_unit_open(rng);
      while (a == current) a = random_unit_open(rng);
      Rational b = random_unit_open(rng);
      while (b == current || b == a) b = random_unit_open(rng);
      return std::pair<Rational, Rational>(a, b);
    };
    Fragment f;
    if (s % 3 == 0) {
      // Two reweighting labels with distinct targets of the same sentence:
      // closed in two levels because reweighting composes by last-wins.
      auto [q1, q2] = two_fresh(seed.prob(H));
      Combinator term = Combinator::compose(Combinator::jc(q1, H), Combinator::jc(q2, H));
      f = generate_fragment({seed}, schemas_from_combinator(term), 2, 8);
      c.require(f.closed(), tag("reweighting fragment not closed", s));
      c.require(f.states.size() == 3, tag("reweighting fragment size", s));
    } else if (s % 3 == 1) {
      // Two likelihood installs; same last-wins composition.
      auto [l1, l2] = two_fresh(likelihood(seed, E, H));
      Combinator term = Combinator::compose(Combinator::slac(l1, E, H),
                                            Combinator::slac(l2, E, H));
      f = generate_fragment({seed}, schemas_from_combinator(term), 2, 8);
      c.require(f.closed(), tag("install fragment not closed", s));
      c.require(f.states.size() == 3, tag("install fragment size", s));
    } else {
      // Conditioning on E and on H; the corner state is reached both ways.
      Combinator term = Combinator::compose(Combinator::bc(E), Combinator::bc(H));
      f = generate_fragment({seed}, schemas_from_combinator(term), 2, 8);
      c.require(f.states.size() == 4, tag("conditioning fragment size", s));
    }
    BisimReport id_rep = is_bisimulation(f, identity_relation(f));
    c.require(id_rep.ok, tag("identity relation rejected", s) + ": " + id_rep.reason);
    BisimReport max_rep = is_bisimulation(f, max_compatibility(f));
    c.require(max_rep.ok, tag("maximal compatibility rejected", s) + ": " + max_rep.reason);
  }

  // Pairing a certain and an uncertain state must fail with a concrete
  // unmatched move: the uncertain one can condition on !H, the other cannot.
  CredalState certain(Signature({"H"}), {Rational(0), Rational(1)});
  CredalState uncertain(Signature({"H"}), {rat(1, 2), rat(1, 2)});
  Fragment g = generate_fragment({certain, uncertain},
                                 schemas_from_combinator(Combinator::bc(Sentence::negate(H))),
                                 1, 8);
  c.require(g.states.size() == 3, "witness fragment size");
  c.require(!max_compatibility(g).count({0, 1}), "incompatible pair in maximal relation");
  Relation r = identity_relation(g);
  r.insert({0, 1});
  r.insert({1, 0});
  BisimReport bad = is_bisimulation(g, r);
  c.require(!bad.ok, "incompatible pairing accepted");
  c.require(bad.counterexample.has_value(), "no witness for the failing pairing");
  if (bad.counterexample) {
    auto [a, b, label] = *bad.counterexample;
    c.require(a == 1 && b == 0, "witness names the wrong pair");
    c.require(label.kind == TransitionLabel::Kind::BC, "witness label kind");
  }
  c.require(is_bisimulation(g, identity_relation(g)).ok, "identity rejected on witness fragment");
  c.require(is_bisimulation(g, max_compatibility(g)).ok,
            "maximal relation rejected on witness fragment");

  // Exhaustive search between identity and maximal compatibility: on a
  // fragment whose three states share their dynamics, every partition
  // passes and exactly the full pairing is maximal.
  CredalState a(Signature({"H"}), {rat(1, 2), rat(1, 2)});
  CredalState b(Signature({"H"}), {rat(1, 3), rat(2, 3)});
  Fragment h = generate_fragment({a, b},
                                 schemas_from_combinator(Combinator::jc(rat(1, 4), H)), 2, 8);
  c.require(h.closed() && h.states.size() == 3, "search fragment shape");
  auto found = search_intermediate_bisimulations(h);
  c.require(found.size() == 4, "search found " + std::to_string(found.size()) + " relations");
  std::size_t maximal = 0;
  for (const auto& fb : found) {
    c.require(is_bisimulation(h, fb.rel).ok, "search returned a non-bisimulation");
    if (fb.is_max) {
      ++maximal;
      c.require(fb.rel == max_compatibility(h), "maximal flag on a non-maximal relation");
    }
  }
  c.require(maximal == 1, "maximal relations found: " + std::to_string(maximal));

  // On the conditioning fragment all compatibility classes are singletons,
  // so nothing lies strictly between identity and maximal compatibility.
  CredalState seed0 = CredalState::uniform(sigEH);
  Fragment k = generate_fragment(
      {seed0},
      schemas_from_combinator(Combinator::compose(Combinator::bc(E), Combinator::bc(H))), 2, 8);
  c.require(search_intermediate_bisimulations(k).empty(),
            "intermediate relations on a rigid fragment");

  // Guarded stepping: the annotated prior must match the source state.
  CredalState taxi = taxi_prior();
  c.require(step(taxi, TransitionLabel::bc(E, rat(29, 100))) == bayes(taxi, E),
            "guarded conditioning step");
  c.require(!admits(taxi, TransitionLabel::bc(E, rat(1, 2))),
            "conditioning step with a wrong annotation admitted");
  return c.rep;
}

// ---------------------------------------------------------------------------
// modes: the scheduled delivery variants agree with the direct pipelines,
// the notification repairs the parallel race, and stale reports are
// flagged exactly when they disagree with the sender's current beliefs.

CheckReport check_modes(const CheckOptions& opt) {
  Ctx c("modes");
  Rng rng(opt.seed);
  const Signature sigEH({"E", "H"});
  const Signature sigHX({"H", "X"});
  const std::size_t n = opt.cases < 100 ? opt.cases : 100;

  Scenario first_parallel;
  for (std::size_t i = 0; i < n; ++i) {
    CredalState prior_t = random_state(rng, sigEH, false);
    CredalState prior_lr = random_state(rng, sigEH, false);
    Rational pe = random_unit_halfopen(rng);
    CredalState prior_e(Signature({"E"}), {Rational(1) - pe, pe});
    Rational r = div(random_unit_halfopen(rng), random_unit_halfopen(rng));
    LikelihoodInput input = LikelihoodInput::ratio(r);
    CredalState want = run_pipeline(PipelineKind::DlacThenBC, prior_t, "E", "H", input);

    Scenario sc;
    sc.mode = MoeMode::ParallelNotified;
    sc.seed = i;
    sc.evidence = "E";
    sc.hypothesis = "H";
    sc.input = input;
    sc.agents = {AgentSpec{"tof", "TOF", prior_t, {}},
                 AgentSpec{"moe-lr", "MOE-LR", prior_lr, {}},
                 AgentSpec{"moe-e", "MOE-E", prior_e, {}}};
    if (i == 0) first_parallel = sc;

    ScenarioResult res = run_scenario(sc);
    c.require(!res.aborted && !res.refused,
              tag("notified run incomplete", i) + ":\n" + res.trace.str());
    auto lr_at = res.trace.find(TraceEvent::Kind::Delivered, "LR(");
    auto ev_at = res.trace.find(TraceEvent::Kind::Delivered, "P(E)=1");
    c.require(lr_at.has_value() && ev_at.has_value() && *lr_at < *ev_at,
              tag("notified delivery order", i) + ":\n" + res.trace.str());
    c.require(res.final_state("tof") == want, tag("notified receiver state", i));

    // One reporter, strictly ordered sends: same receiver state, and the
    // sent values match the reporter's beliefs at send time, so no flags.
    Scenario seq;
    seq.mode = MoeMode::Sequential;
    seq.seed = i;
    seq.evidence = "E";
    seq.hypothesis = "H";
    seq.input = input;
    seq.agents = {AgentSpec{"tof", "TOF", prior_t, {}},
                  AgentSpec{"moe", "MOE", prior_lr, {}}};
    ScenarioResult rs = run_scenario(seq);
    c.require(!rs.aborted && !rs.refused, tag("sequential run incomplete", i));
    c.require(rs.final_state("tof") == want, tag("sequential receiver state", i));
    c.require(!rs.trace.has(TraceEvent::Kind::Flagged),
              tag("sequential run flagged", i) + ":\n" + rs.trace.str());

    // Single combined message: the reporter conditions first, so the sent
    // ratio is stale exactly when r != 1.
    Scenario single = seq;
    single.mode = MoeMode::SingleMessage;
    ScenarioResult ss = run_scenario(single);
    c.require(!ss.aborted && !ss.refused, tag("combined run incomplete", i));
    c.require(ss.final_state("tof") == want, tag("combined receiver state", i));
    c.require(ss.trace.has(TraceEvent::Kind::Flagged) == (r != Rational(1)),
              tag("combined staleness flag", i) + ":\n" + ss.trace.str());

    // Resending the same report is refused on novelty grounds and leaves
    // the receiver untouched.
    Scenario again = seq;
    again.repeat_report = true;
    ScenarioResult ra = run_scenario(again);
    c.require(ra.trace.has(TraceEvent::Kind::Refused), tag("repeat not refused", i));
    c.require(ra.final_state("tof") == want, tag("repeat changed the receiver", i));

    // Receiver without the evidence atom: the report is folded in through
    // the auxiliary-workspace posterior and a reweighting step.
    CredalState prior_hx = random_state(rng, sigHX, false);
    CredalState want_hx =
        run_pipeline(PipelineKind::KineticsBCThenJeffrey, prior_hx, "E", "H", input);
    c.require(run_pipeline(PipelineKind::TwoSpaceBayesThenJeffrey, prior_hx, "E", "H", input) ==
                  want_hx,
              tag("two-space pipeline disagrees", i));
    Scenario jr = seq;
    jr.agents[0].prior = prior_hx;
    ScenarioResult rj = run_scenario(jr);
    c.require(!rj.aborted && !rj.refused, tag("workspace run incomplete", i));
    c.require(rj.final_state("tof") == want_hx, tag("workspace receiver state", i));
  }

  // Without the notification the parallel race really happens: some seed
  // in 0..99 delivers the evidence first, and the receiver then refuses it.
  if (n > 0) {
    auto bad_seed = find_naive_reordering_seed(first_parallel, 0, 99);
    c.require(bad_seed.has_value(), "no reordering seed in 0..99");
    if (bad_seed) {
      Scenario naive = first_parallel;
      naive.mode = MoeMode::ParallelNaive;
      naive.seed = *bad_seed;
      ScenarioResult rn = run_scenario(naive);
      c.require(rn.refused, "reordered delivery not refused:\n" + rn.trace.str());
      c.require(rn.final_state("tof") == first_parallel.agents[0].prior,
                "refused run still revised the receiver");
    }
  }

  // A ratio of exactly 1 stays honest through its own conditioning, so the
  // combined message carries no stale value.
  Scenario unit;
  unit.mode = MoeMode::SingleMessage;
  unit.seed = 3;
  unit.evidence = "E";
  unit.hypothesis = "H";
  unit.input = LikelihoodInput::ratio(Rational(1));
  unit.agents = {AgentSpec{"tof", "TOF", taxi_prior(), {}},
                 AgentSpec{"moe", "MOE", taxi_prior(), {}}};
  ScenarioResult ru = run_scenario(unit);
  c.require(!ru.aborted && !ru.refused, "unit-ratio run incomplete");
  c.require(!ru.trace.has(TraceEvent::Kind::Flagged),
            "unit-ratio combined message flagged:\n" + ru.trace.str());
  return c.rep;
}

using CheckFn = CheckReport (*)(const CheckOptions&);

struct Entry {
  const char* id;
  CheckFn fn;
};

constexpr Entry kChecks[] = {
    {"taxi", check_taxi},
    {"variants", check_variants},
    {"adamsbayes", check_adamsbayes},
    {"simadamsbayes", check_simadamsbayes},
    {"commute", check_commute},
    {"gsfail", check_gsfail},
    {"toc", check_toc},
    {"prosecutor", check_prosecutor},
    {"combinators", check_combinators},
    {"lts", check_lts},
    {"modes", check_modes},
};

}  // namespace

std::string CheckReport::str() const {
  std::string line = ok() ? "ok    " : "FAIL  ";
  line += id;
  if (id.size() < 14) line += std::string(14 - id.size(), ' ');
  line += std::to_string(passed) + "/" + std::to_string(attempted);
  if (!counterexample.empty()) line += "  [" + counterexample + "]";
  return line;
}

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& e : kChecks) names.push_back(e.id);
  return names;
}

std::vector<CheckReport> run_checks(const std::string& selector, const CheckOptions& opt) {
  std::vector<CheckReport> out;
  if (selector == "all") {
    for (const auto& e : kChecks) out.push_back(e.fn(opt));
    return out;
  }
  for (const auto& e : kChecks) {
    if (selector == e.id) {
      out.push_back(e.fn(opt));
      return out;
    }
  }
  std::string names = "all";
  for (const auto& e : kChecks) names += std::string(", ") + e.id;
  throw ParseError("unknown check '" + selector + "' (try: " + names + ")");
}

}  // namespace credal
