#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

// Ordered set of propositional atoms generating a finite proposition space.
// Atoms are kept sorted by name; minterm index i assigns atom j the truth
// value (i >> j) & 1.  Spaces stay tiny (a handful of generators), so the
// 2^n enumeration underneath is deliberate, not an oversight.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::string> atoms);

  std::size_t size() const { return atoms_.size(); }
  std::size_t minterms() const { return std::size_t{1} << atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws UnknownAtom

  Signature with(const std::string& name) const;     // throws AtomAlreadyPresent
  Signature without(const std::string& name) const;  // throws AtomNotPresent
  bool subset_of(const Signature& other) const;

  bool operator==(const Signature& other) const { return atoms_ == other.atoms_; }

  std::string str() const;  // "{E,H}"

 private:
  std::vector<std::string> atoms_;  // sorted, unique
};

// Immutable propositional sentence over named atoms.
// Concrete syntax: atoms are identifiers; "T"/"F" are the constants;
// connectives are ! or ~ (not), & (and), | (or), -> (implies, right
// associative); precedence not > and > or > implies.
class Sentence {
 public:
  enum class Kind : std::uint8_t { Top, Bottom, Atom, Not, And, Or, Implies };

  static Sentence top();
  static Sentence bottom();
  static Sentence atom(std::string name);
  static Sentence negate(Sentence s);
  static Sentence conj(Sentence a, Sentence b);
  static Sentence disj(Sentence a, Sentence b);
  static Sentence implies(Sentence a, Sentence b);

  Kind kind() const;
  const std::string& atom_name() const;
  const Sentence& child() const;  // operand of Not
  const Sentence& lhs() const;
  const Sentence& rhs() const;

  bool is_atom() const;

  // Structural (syntactic) equality.
  bool same_tree(const Sentence& other) const;

  std::string str() const;

 private:
  struct Node;
  explicit Sentence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;  // null only inside leaf nodes' unused children

 public:
  Sentence() : node_(nullptr) {}  // empty handle; only valid as a Node slot
  bool valid() const { return node_ != nullptr; }
};

struct Sentence::Node {
  Kind kind;
  std::string name;  // Atom
  Sentence lhs;      // Not/And/Or/Implies (Not uses lhs only)
  Sentence rhs;
  Node(Kind k, std::string n, Sentence l, Sentence r)
      : kind(k), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {}
};

inline Sentence::Kind Sentence::kind() const { return node_->kind; }
inline const std::string& Sentence::atom_name() const { return node_->name; }
inline const Sentence& Sentence::child() const { return node_->lhs; }
inline const Sentence& Sentence::lhs() const { return node_->lhs; }
inline const Sentence& Sentence::rhs() const { return node_->rhs; }
inline bool Sentence::is_atom() const { return node_->kind == Kind::Atom; }

Sentence parse_sentence(std::string_view text);  // throws ParseError

// Truth value of `s` in minterm `index` of `sig`; throws UnknownAtom if `s`
// mentions an atom outside `sig`.
bool evaluate(const Sentence& s, const Signature& sig, std::size_t index);

// The (sorted) set of atoms syntactically occurring in `s`; H & !H yields {H}.
Signature signature_of(const Sentence& s);

// Semantic equivalence over the union of the two syntactic signatures.
bool equivalent(const Sentence& a, const Sentence& b);

// Conjunction of literals characterizing minterm `index` of `sig`
// (T for the empty signature).
Sentence minterm_sentence(const Signature& sig, std::size_t index);

}  // namespace credal
