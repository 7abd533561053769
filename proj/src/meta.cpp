#include "indsem/meta.hpp"

#include "indsem/error.hpp"
#include "indsem/parser.hpp"

namespace indsem::meta {

namespace {

Program builtin(std::string_view text) { return parse_program(text, "<builtin>"); }

}  // namespace

Program builtin_rules(bool with_negation_metarule) {
  if (with_negation_metarule)
    throw Error(ErrorKind::Unsupported,
                "not(X) :- not(X). is not stratifiable and cannot be included");
  return builtin("true.\n(A,B) :- A, B.\n");
}

Program call_rule() { return builtin("call(X) :- X.\n"); }

Program clause_interpreter() { return builtin("H :- clause(H,Body), Body.\n"); }

Term encode_body(const std::vector<Term>& literals) {
  if (literals.empty()) return Term::constant("true");
  Term out = literals.back();
  for (std::size_t i = literals.size() - 1; i-- > 0;)
    out = Term::compound(",", {literals[i], out});
  return out;
}

std::vector<Term> decode_body(const Term& body) {
  if (body.is("true", 0)) return {};
  std::vector<Term> out;
  Term t = body;
  while (t.is(",", 2)) {
    out.push_back(t.arg(0));
    t = t.arg(1);
  }
  out.push_back(t);
  return out;
}

Program synthesize_clause_facts(const Program& object) {
  Program out;
  for (const auto& r : object.templates) {
    if (!r.neg_body.empty())
      throw Error(ErrorKind::NegationInObjectProgram,
                  to_string(r.loc) + ": object programs must be free of negation");
    RuleTemplate fact{Term::compound("clause", {r.head, encode_body(r.pos_body)}), {}, {}, r.loc};
    out.templates.push_back(std::move(fact));
  }
  return out;
}

Program wrap(const Program& program, const std::string& functor,
             const std::set<Signature>& exclude) {
  auto collides = [&](const Term& t) { return occurs_symbol(t, functor); };
  for (const auto* list : {&program.templates, &program.object_templates})
    for (const auto& r : *list) {
      bool hit = collides(r.head);
      for (const auto& b : r.pos_body) hit = hit || collides(b);
      for (const auto& n : r.neg_body) hit = hit || collides(n);
      if (hit)
        throw Error(ErrorKind::FunctorCollision,
                    to_string(r.loc) + ": symbol '" + functor + "' already occurs in the program");
    }

  auto wrap_one = [&](const Term& t) {
    if (t.is_compound() && exclude.count({t.name(), t.arity()})) return t;
    return Term::compound(functor, {t});
  };
  Program out;
  out.object_templates = program.object_templates;
  for (const auto& r : program.templates) {
    RuleTemplate w{wrap_one(r.head), {}, {}, r.loc};
    for (const auto& b : r.pos_body) w.pos_body.push_back(wrap_one(b));
    for (const auto& n : r.neg_body) w.neg_body.push_back(wrap_one(n));
    out.templates.push_back(std::move(w));
  }
  return out;
}

AtomSet wrap_params(const AtomSet& params, const std::string& functor,
                    const std::set<Signature>& exclude) {
  AtomSet out;
  for (const auto& p : params)
    out.insert(exclude.count({p.name(), p.arity()}) ? p : Term::compound(functor, {p}));
  return out;
}

Program with_meta(const Program& program) {
  Program out;
  out.templates = program.templates;
  for (const Program& part : {builtin_rules(), call_rule(),
                              synthesize_clause_facts({program.object_templates, {}})})
    out.templates.insert(out.templates.end(), part.templates.begin(), part.templates.end());
  return out;
}

}  // namespace indsem::meta
