#include "term.hpp"

#include <sstream>

namespace llfp {

namespace {

TermPtr mk(Tag tag, int index, std::string name, TermPtr a, TermPtr b, TermPtr c) {
  auto n = std::make_shared<TermNode>();
  n->tag = tag;
  n->index = index;
  n->name = std::move(name);
  n->a = std::move(a);
  n->b = std::move(b);
  n->c = std::move(c);
  return n;
}

TermPtr keep(const Term& t) { return t.ptr(); }

}  // namespace

Term tType() { return Term(mk(Tag::Type, -1, "", nullptr, nullptr, nullptr)); }
Term kindPi(std::string hint, Term domain, Term body) {
  return Term(mk(Tag::KindPi, -1, std::move(hint), keep(domain), keep(body), nullptr));
}
Term famConst(std::string name) { return Term(mk(Tag::FamConst, -1, std::move(name), nullptr, nullptr, nullptr)); }
Term famPi(std::string hint, Term domain, Term body) {
  return Term(mk(Tag::FamPi, -1, std::move(hint), keep(domain), keep(body), nullptr));
}
Term famApp(Term fam, Term arg) { return Term(mk(Tag::FamApp, -1, "", keep(fam), keep(arg), nullptr)); }
Term lockTy(std::string pred, Term witness, Term witnessTy, Term body) {
  return Term(mk(Tag::LockTy, -1, std::move(pred), keep(witness), keep(witnessTy), keep(body)));
}
Term objConst(std::string name) { return Term(mk(Tag::ObjConst, -1, std::move(name), nullptr, nullptr, nullptr)); }
Term var(int index, std::string hint) { return Term(mk(Tag::Var, index, std::move(hint), nullptr, nullptr, nullptr)); }
Term abs(std::string hint, Term domain, Term body) {
  return Term(mk(Tag::Abs, -1, std::move(hint), keep(domain), keep(body), nullptr));
}
Term app(Term fun, Term arg) { return Term(mk(Tag::App, -1, "", keep(fun), keep(arg), nullptr)); }
Term lock(std::string pred, Term witness, Term witnessTy, Term body) {
  return Term(mk(Tag::Lock, -1, std::move(pred), keep(witness), keep(witnessTy), keep(body)));
}
Term unlock(std::string pred, Term witness, Term witnessTy, Term body) {
  return Term(mk(Tag::Unlock, -1, std::move(pred), keep(witness), keep(witnessTy), keep(body)));
}

Term arrow(Term domain, Term codomain) {
  Term shifted = shift(codomain, 1);
  if (level(codomain) == Level::Kind) return kindPi("_", domain, shifted);
  return famPi("_", domain, shifted);
}

Level level(Term t) {
  switch (t.tag()) {
    case Tag::Type:
    case Tag::KindPi:
      return Level::Kind;
    case Tag::FamConst:
    case Tag::FamPi:
    case Tag::FamApp:
    case Tag::LockTy:
      return Level::Family;
    default:
      return Level::Object;
  }
}

bool alphaEq(Term s, Term t) {
  if (s.node() == t.node()) return true;
  if (s.empty() || t.empty()) return false;
  if (s.tag() != t.tag()) return false;
  switch (s.tag()) {
    case Tag::Type:
      return true;
    case Tag::Var:
      return s.index() == t.index();
    case Tag::FamConst:
    case Tag::ObjConst:
      return s.name() == t.name();
    case Tag::KindPi:
    case Tag::FamPi:
    case Tag::Abs:
      return alphaEq(s.a(), t.a()) && alphaEq(s.b(), t.b());
    case Tag::FamApp:
    case Tag::App:
      return alphaEq(s.a(), t.a()) && alphaEq(s.b(), t.b());
    case Tag::LockTy:
    case Tag::Lock:
    case Tag::Unlock:
      return s.name() == t.name() && alphaEq(s.a(), t.a()) && alphaEq(s.b(), t.b()) &&
             alphaEq(s.c(), t.c());
  }
  return false;
}

Term shift(Term t, int d, int cutoff) {
  if (d == 0) return t;
  switch (t.tag()) {
    case Tag::Type:
    case Tag::FamConst:
    case Tag::ObjConst:
      return t;
    case Tag::Var:
      if (t.index() >= cutoff) return var(t.index() + d, t.name());
      return t;
    case Tag::KindPi:
      return kindPi(t.name(), shift(t.a(), d, cutoff), shift(t.b(), d, cutoff + 1));
    case Tag::FamPi:
      return famPi(t.name(), shift(t.a(), d, cutoff), shift(t.b(), d, cutoff + 1));
    case Tag::Abs:
      return abs(t.name(), shift(t.a(), d, cutoff), shift(t.b(), d, cutoff + 1));
    case Tag::FamApp:
      return famApp(shift(t.a(), d, cutoff), shift(t.b(), d, cutoff));
    case Tag::App:
      return app(shift(t.a(), d, cutoff), shift(t.b(), d, cutoff));
    case Tag::LockTy:
      return lockTy(t.name(), shift(t.a(), d, cutoff), shift(t.b(), d, cutoff),
                    shift(t.c(), d, cutoff));
    case Tag::Lock:
      return lock(t.name(), shift(t.a(), d, cutoff), shift(t.b(), d, cutoff),
                  shift(t.c(), d, cutoff));
    case Tag::Unlock:
      return unlock(t.name(), shift(t.a(), d, cutoff), shift(t.b(), d, cutoff),
                    shift(t.c(), d, cutoff));
  }
  throw std::logic_error("shift: bad tag");
}

Term substFree(Term t, int idx, Term repl) {
  switch (t.tag()) {
    case Tag::Type:
    case Tag::FamConst:
    case Tag::ObjConst:
      return t;
    case Tag::Var:
      if (t.index() == idx) return shift(repl, idx);
      return t;
    case Tag::KindPi:
      return kindPi(t.name(), substFree(t.a(), idx, repl), substFree(t.b(), idx + 1, repl));
    case Tag::FamPi:
      return famPi(t.name(), substFree(t.a(), idx, repl), substFree(t.b(), idx + 1, repl));
    case Tag::Abs:
      return abs(t.name(), substFree(t.a(), idx, repl), substFree(t.b(), idx + 1, repl));
    case Tag::FamApp:
      return famApp(substFree(t.a(), idx, repl), substFree(t.b(), idx, repl));
    case Tag::App:
      return app(substFree(t.a(), idx, repl), substFree(t.b(), idx, repl));
    case Tag::LockTy:
      return lockTy(t.name(), substFree(t.a(), idx, repl), substFree(t.b(), idx, repl),
                    substFree(t.c(), idx, repl));
    case Tag::Lock:
      return lock(t.name(), substFree(t.a(), idx, repl), substFree(t.b(), idx, repl),
                  substFree(t.c(), idx, repl));
    case Tag::Unlock:
      return unlock(t.name(), substFree(t.a(), idx, repl), substFree(t.b(), idx, repl),
                    substFree(t.c(), idx, repl));
  }
  throw std::logic_error("substFree: bad tag");
}

namespace {

// instantiate helper: replace Var(depth) by arg shifted to depth, lowering
// the indices above it.
Term inst(Term t, int depth, const Term& arg) {
  switch (t.tag()) {
    case Tag::Type:
    case Tag::FamConst:
    case Tag::ObjConst:
      return t;
    case Tag::Var:
      if (t.index() == depth) return shift(arg, depth);
      if (t.index() > depth) return var(t.index() - 1, t.name());
      return t;
    case Tag::KindPi:
      return kindPi(t.name(), inst(t.a(), depth, arg), inst(t.b(), depth + 1, arg));
    case Tag::FamPi:
      return famPi(t.name(), inst(t.a(), depth, arg), inst(t.b(), depth + 1, arg));
    case Tag::Abs:
      return abs(t.name(), inst(t.a(), depth, arg), inst(t.b(), depth + 1, arg));
    case Tag::FamApp:
      return famApp(inst(t.a(), depth, arg), inst(t.b(), depth, arg));
    case Tag::App:
      return app(inst(t.a(), depth, arg), inst(t.b(), depth, arg));
    case Tag::LockTy:
      return lockTy(t.name(), inst(t.a(), depth, arg), inst(t.b(), depth, arg),
                    inst(t.c(), depth, arg));
    case Tag::Lock:
      return lock(t.name(), inst(t.a(), depth, arg), inst(t.b(), depth, arg),
                  inst(t.c(), depth, arg));
    case Tag::Unlock:
      return unlock(t.name(), inst(t.a(), depth, arg), inst(t.b(), depth, arg),
                    inst(t.c(), depth, arg));
  }
  throw std::logic_error("inst: bad tag");
}

void freeVarsAt(Term t, int depth, std::set<int>& out) {
  if (t.empty()) return;
  switch (t.tag()) {
    case Tag::Type:
    case Tag::FamConst:
    case Tag::ObjConst:
      return;
    case Tag::Var:
      if (t.index() >= depth) out.insert(t.index() - depth);
      return;
    case Tag::KindPi:
    case Tag::FamPi:
    case Tag::Abs:
      freeVarsAt(t.a(), depth, out);
      freeVarsAt(t.b(), depth + 1, out);
      return;
    case Tag::FamApp:
    case Tag::App:
      freeVarsAt(t.a(), depth, out);
      freeVarsAt(t.b(), depth, out);
      return;
    case Tag::LockTy:
    case Tag::Lock:
    case Tag::Unlock:
      freeVarsAt(t.a(), depth, out);
      freeVarsAt(t.b(), depth, out);
      freeVarsAt(t.c(), depth, out);
      return;
  }
}

}  // namespace

Term instantiate(Term body, Term arg) { return inst(body, 0, arg); }

std::set<int> freeVars(Term t) {
  std::set<int> out;
  freeVarsAt(t, 0, out);
  return out;
}

bool occursFree(Term t, int idx) {
  auto fv = freeVars(t);
  return fv.count(idx) > 0;
}

bool mentionsConst(Term t, const std::string& name) {
  if (t.empty()) return false;
  if ((t.tag() == Tag::FamConst || t.tag() == Tag::ObjConst) && t.name() == name) return true;
  switch (t.tag()) {
    case Tag::KindPi:
    case Tag::FamPi:
    case Tag::Abs:
    case Tag::FamApp:
    case Tag::App:
      return mentionsConst(t.a(), name) || mentionsConst(t.b(), name);
    case Tag::LockTy:
    case Tag::Lock:
    case Tag::Unlock:
      return mentionsConst(t.a(), name) || mentionsConst(t.b(), name) ||
             mentionsConst(t.c(), name);
    default:
      return false;
  }
}

void collectPredicates(Term t, std::set<std::string>& out) {
  if (t.empty()) return;
  switch (t.tag()) {
    case Tag::LockTy:
    case Tag::Lock:
    case Tag::Unlock:
      out.insert(t.name());
      collectPredicates(t.a(), out);
      collectPredicates(t.b(), out);
      collectPredicates(t.c(), out);
      return;
    case Tag::KindPi:
    case Tag::FamPi:
    case Tag::Abs:
    case Tag::FamApp:
    case Tag::App:
      collectPredicates(t.a(), out);
      collectPredicates(t.b(), out);
      return;
    default:
      return;
  }
}

namespace {

void validateAt(Term t, Level want) {
  if (t.empty()) throw StratificationError("missing subterm");
  if (level(t) != want) throw StratificationError("node at the wrong syntactic level");
  switch (t.tag()) {
    case Tag::Type:
    case Tag::FamConst:
    case Tag::ObjConst:
    case Tag::Var:
      return;
    case Tag::KindPi:
      validateAt(t.a(), Level::Family);
      validateAt(t.b(), Level::Kind);
      return;
    case Tag::FamPi:
      validateAt(t.a(), Level::Family);
      validateAt(t.b(), Level::Family);
      return;
    case Tag::FamApp:
      validateAt(t.a(), Level::Family);
      validateAt(t.b(), Level::Object);
      return;
    case Tag::LockTy:
      validateAt(t.a(), Level::Object);
      validateAt(t.b(), Level::Family);
      validateAt(t.c(), Level::Family);
      return;
    case Tag::Abs:
      validateAt(t.a(), Level::Family);
      validateAt(t.b(), Level::Object);
      return;
    case Tag::App:
      validateAt(t.a(), Level::Object);
      validateAt(t.b(), Level::Object);
      return;
    case Tag::Lock:
    case Tag::Unlock:
      validateAt(t.a(), Level::Object);
      validateAt(t.b(), Level::Family);
      validateAt(t.c(), Level::Object);
      return;
  }
}

}  // namespace

void validateStratification(Term t) { validateAt(t, level(t)); }

Spine spineOf(Term t) {
  Spine s;
  std::vector<Term> rev;
  Term cur = t;
  while (cur.tag() == Tag::App || cur.tag() == Tag::FamApp) {
    rev.push_back(cur.b());
    cur = cur.a();
  }
  s.head = cur;
  s.args.assign(rev.rbegin(), rev.rend());
  return s;
}

namespace {

void canon(Term t, std::string& out) {
  switch (t.tag()) {
    case Tag::Type:
      out += 'T';
      return;
    case Tag::Var:
      out += '#';
      out += std::to_string(t.index());
      return;
    case Tag::FamConst:
      out += 'a';
      out += t.name();
      out += ';';
      return;
    case Tag::ObjConst:
      out += 'c';
      out += t.name();
      out += ';';
      return;
    case Tag::KindPi:
      out += 'K';
      canon(t.a(), out);
      canon(t.b(), out);
      return;
    case Tag::FamPi:
      out += 'P';
      canon(t.a(), out);
      canon(t.b(), out);
      return;
    case Tag::Abs:
      out += 'L';
      canon(t.a(), out);
      canon(t.b(), out);
      return;
    case Tag::FamApp:
    case Tag::App:
      out += '@';
      canon(t.a(), out);
      canon(t.b(), out);
      return;
    case Tag::LockTy:
      out += 'Y';
      out += t.name();
      out += ';';
      canon(t.a(), out);
      canon(t.b(), out);
      canon(t.c(), out);
      return;
    case Tag::Lock:
      out += 'l';
      out += t.name();
      out += ';';
      canon(t.a(), out);
      canon(t.b(), out);
      canon(t.c(), out);
      return;
    case Tag::Unlock:
      out += 'u';
      out += t.name();
      out += ';';
      canon(t.a(), out);
      canon(t.b(), out);
      canon(t.c(), out);
      return;
  }
}

}  // namespace

std::string canonical(Term t) {
  std::string out;
  canon(t, out);
  return out;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace llfp
