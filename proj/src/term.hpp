#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace llfp {

// One stratified tree for kinds, families and objects. Binders are de
// Bruijn indices; the `name` field is a printing hint only (constants and
// lock predicates use it as their actual name).
enum class Tag {
  Type,      // kind
  KindPi,    // kind:   !x:family. kind
  FamConst,  // family
  FamPi,     // family: !x:family. family
  FamApp,    // family: family object
  LockTy,    // family: Lock[pred, witness, witnessTy](family)
  ObjConst,  // object
  Var,       // object
  Abs,       // object: \x:family. object
  App,       // object: object object
  Lock,      // object: lock[pred, witness, witnessTy](object)
  Unlock,    // object: unlock[pred, witness, witnessTy](object)
};

enum class Level { Kind, Family, Object };

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
  Tag tag;
  int index = -1;    // Var
  std::string name;  // constant name, binder hint, or lock predicate
  TermPtr a, b, c;
};

class Term {
public:
  Term() = default;
  explicit Term(TermPtr p) : p_(std::move(p)) {}

  bool empty() const { return p_ == nullptr; }
  Tag tag() const { return p_->tag; }
  int index() const { return p_->index; }
  const std::string& name() const { return p_->name; }
  Term a() const { return Term(p_->a); }
  Term b() const { return Term(p_->b); }
  Term c() const { return Term(p_->c); }
  const TermNode* node() const { return p_.get(); }
  const TermPtr& ptr() const { return p_; }

private:
  TermPtr p_;
};

// Constructors.
Term tType();
Term kindPi(std::string hint, Term domain, Term body);
Term famConst(std::string name);
Term famPi(std::string hint, Term domain, Term body);
Term famApp(Term fam, Term arg);
Term lockTy(std::string pred, Term witness, Term witnessTy, Term body);
Term objConst(std::string name);
Term var(int index, std::string hint = "x");
Term abs(std::string hint, Term domain, Term body);
Term app(Term fun, Term arg);
Term lock(std::string pred, Term witness, Term witnessTy, Term body);
Term unlock(std::string pred, Term witness, Term witnessTy, Term body);

// Non-dependent Pi; picks KindPi vs FamPi from the codomain level.
Term arrow(Term domain, Term codomain);

Level level(Term t);

// Identity up to renaming of bound variables: with de Bruijn indices this
// is structural equality ignoring hints.
bool alphaEq(Term s, Term t);

// Shift free indices >= cutoff by d.
Term shift(Term t, int d, int cutoff = 0);

// Capture-avoiding substitution of `repl` for the free variable with index
// `idx` at the top of `t`. Lock/unlock annotations are ordinary subterms.
Term substFree(Term t, int idx, Term repl);

// Beta instantiation: body of a binder applied to arg.
Term instantiate(Term body, Term arg);

// Free variable indices relative to the top of t.
std::set<int> freeVars(Term t);

bool occursFree(Term t, int idx);

// True iff a constant with this name occurs anywhere in t.
bool mentionsConst(Term t, const std::string& name);

// Collect the predicate names of every lock/unlock node in t.
void collectPredicates(Term t, std::set<std::string>& out);

struct StratificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Checks that every node sits at the level Fig-style grammar allows.
void validateStratification(Term t);

// Spine view: peels App/FamApp into head + arguments, left to right.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spineOf(Term t);

// Canonical serialization: ignores hints, so alpha-equivalent terms
// serialize identically. Used for keying synthesized constants.
std::string canonical(Term t);

uint64_t fnv1a(const std::string& s);

}  // namespace llfp
