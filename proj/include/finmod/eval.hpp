#ifndef FINMOD_EVAL_HPP
#define FINMOD_EVAL_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "general_frame.hpp"
#include "kripke.hpp"
#include "world_set.hpp"

namespace finmod {

/// Variable name -> admissible world-set.
using Valuation = std::map<std::string, WorldSet>;

inline constexpr std::uint64_t kDefaultValuationBudget = 10'000'000;

/**
 * Truth set of f over the frame under v. Box is evaluated directly as
 * {x : every successor satisfies the operand}; debug builds assert it equals
 * the complement of the preimage of the complement.
 */
inline WorldSet truth_set(const KripkeFrame& f, const Valuation& v,
                          const Formula& phi) {
  const std::size_t n = f.size();
  switch (phi.op()) {
    case Connective::variable: {
      auto it = v.find(phi.name());
      if (it == v.end())
        throw PreconditionError("truth_set: unbound variable '" + phi.name() +
                                "'");
      if (it->second.universe() != n)
        throw PreconditionError("truth_set: valuation of '" + phi.name() +
                                "' has the wrong universe");
      return it->second;
    }
    case Connective::falsum:
      return WorldSet(n);
    case Connective::verum:
      return WorldSet::full(n);
    case Connective::negation:
      return ~truth_set(f, v, phi.lhs());
    case Connective::conjunction:
      return truth_set(f, v, phi.lhs()) & truth_set(f, v, phi.rhs());
    case Connective::disjunction:
      return truth_set(f, v, phi.lhs()) | truth_set(f, v, phi.rhs());
    case Connective::implication:
      return ~truth_set(f, v, phi.lhs()) | truth_set(f, v, phi.rhs());
    case Connective::biconditional: {
      WorldSet a = truth_set(f, v, phi.lhs());
      WorldSet b = truth_set(f, v, phi.rhs());
      return (a & b) | (~a & ~b);
    }
    case Connective::diamond:
      return f.preimage(truth_set(f, v, phi.lhs()));
    case Connective::box: {
      WorldSet inner = truth_set(f, v, phi.lhs());
      WorldSet direct = f.box(inner);
      assert(direct == ~f.preimage(~inner));
      return direct;
    }
  }
  return WorldSet(n);
}

/// As above, additionally requiring every valuation image to be admissible.
inline WorldSet truth_set(const GeneralFrame& g, const Valuation& v,
                          const Formula& phi) {
  for (const auto& [name, set] : v)
    if (set.universe() != g.size() || !g.contains(set))
      throw PreconditionError("truth_set: valuation of '" + name +
                              "' is not an admissible set");
  return truth_set(g.base(), v, phi);
}

struct ValidityResult {
  bool valid = true;
  /// First falsifying valuation (variables in sorted order) when invalid.
  Valuation countervaluation;
  /// A world where the countervaluation falsifies the formula.
  World world = 0;
  /// Valuations (lexicographic enumeration) or search nodes (pruned search)
  /// examined.
  std::uint64_t examined = 0;
};

namespace detail {

inline std::string power_string(std::uint64_t base, std::size_t exp) {
  // Little-endian decimal digits.
  std::vector<std::uint64_t> digits{1};
  for (std::size_t i = 0; i < exp; ++i) {
    std::uint64_t carry = 0;
    for (auto& d : digits) {
      // base < 2^32 for every algebra this is called with.
      std::uint64_t x = d * base + carry;
      d = x % 10;
      carry = x / 10;
    }
    while (carry > 0) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  }
  std::string s;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    s.push_back(static_cast<char>('0' + *it));
  return s;
}

}  // namespace detail

/**
 * Exhaustive validity over the admissible valuations of g. Assignments are
 * enumerated lexicographically over member indices (first variable most
 * significant), so the reported countervaluation is the lexicographically
 * least one. Refuses, with the exact count, when |algebra|^#vars > budget.
 */
inline ValidityResult valid_in(const GeneralFrame& g, const Formula& phi,
                               std::uint64_t budget = kDefaultValuationBudget) {
  const auto vars = phi.variables();
  const auto& members = g.members();
  const std::uint64_t base = members.size();
  std::uint64_t total = 1;
  bool over = false;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (total > budget / base) {
      over = true;
      break;
    }
    total *= base;
  }
  if (over || total > budget)
    throw CapExceeded("valid_in: valuation space " + std::to_string(base) +
                      "^" + std::to_string(vars.size()) + " = " +
                      detail::power_string(base, vars.size()) +
                      " exceeds budget " + std::to_string(budget));

  ValidityResult r;
  std::vector<std::size_t> digits(vars.size(), 0);
  Valuation v;
  for (const auto& name : vars) v[name] = members[0];
  while (true) {
    ++r.examined;
    WorldSet t = truth_set(g.base(), v, phi);
    if (!t.is_full()) {
      r.valid = false;
      r.countervaluation = v;
      r.world = (~t).first();
      return r;
    }
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++digits[i] < base) {
        v[vars[i]] = members[digits[i]];
        break;
      }
      digits[i] = 0;
      v[vars[i]] = members[0];
      if (i == 0) return r;
    }
    if (vars.empty()) return r;
  }
}

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

namespace detail {

/// Three-valued truth sets: worlds where a formula is already true or
/// already false under a partial valuation.
struct Kleene {
  WorldSet yes;
  WorldSet no;
};

class PartialEvaluator {
 public:
  PartialEvaluator(const KripkeFrame& f, const std::vector<std::string>& vars)
      : f_(f), vars_(vars) {}

  /// values[i] holds variable i at assigned worlds.
  Kleene eval(const Formula& phi, const WorldSet& assigned,
              const std::vector<WorldSet>& values) const {
    const std::size_t n = f_.size();
    switch (phi.op()) {
      case Connective::variable: {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), phi.name());
        const WorldSet& val = values[static_cast<std::size_t>(it - vars_.begin())];
        return {assigned & val, assigned - val};
      }
      case Connective::falsum:
        return {WorldSet(n), WorldSet::full(n)};
      case Connective::verum:
        return {WorldSet::full(n), WorldSet(n)};
      case Connective::negation: {
        Kleene a = eval(phi.lhs(), assigned, values);
        return {std::move(a.no), std::move(a.yes)};
      }
      case Connective::conjunction: {
        Kleene a = eval(phi.lhs(), assigned, values);
        Kleene b = eval(phi.rhs(), assigned, values);
        return {a.yes & b.yes, a.no | b.no};
      }
      case Connective::disjunction: {
        Kleene a = eval(phi.lhs(), assigned, values);
        Kleene b = eval(phi.rhs(), assigned, values);
        return {a.yes | b.yes, a.no & b.no};
      }
      case Connective::implication: {
        Kleene a = eval(phi.lhs(), assigned, values);
        Kleene b = eval(phi.rhs(), assigned, values);
        return {a.no | b.yes, a.yes & b.no};
      }
      case Connective::biconditional: {
        Kleene a = eval(phi.lhs(), assigned, values);
        Kleene b = eval(phi.rhs(), assigned, values);
        return {(a.yes & b.yes) | (a.no & b.no),
                (a.yes & b.no) | (a.no & b.yes)};
      }
      case Connective::diamond: {
        Kleene a = eval(phi.lhs(), assigned, values);
        return {f_.preimage(a.yes), f_.box(a.no)};
      }
      case Connective::box: {
        Kleene a = eval(phi.lhs(), assigned, values);
        return {f_.box(a.yes), f_.preimage(a.no)};
      }
    }
    return {WorldSet(n), WorldSet(n)};
  }

 private:
  const KripkeFrame& f_;
  const std::vector<std::string>& vars_;
};

}  // namespace detail

/**
 * Exact validity on a Kripke frame (every subset admissible) without
 * enumerating whole valuations.
 *
 * For each world w the search assigns variable values world by world over
 * the worlds within modal-depth steps of w (the only ones the truth value at
 * w depends on), and evaluates the formula three-valued after each step. A
 * branch is closed as soon as the value at w is fixed: true closes it, false
 * yields a countervaluation (unassigned worlds default to false). Kleene
 * evaluation is sound, and a fully assigned neighbourhood fixes the value,
 * so the search covers every valuation.
 *
 * Worlds are assigned w first, then by decreasing in-degree (ties by index);
 * values per world run 0..2^k-1 with variable i as bit i. Throws CapExceeded
 * after `budget` search nodes.
 */
inline ValidityResult search_valid(const KripkeFrame& f, const Formula& phi,
                                   std::uint64_t budget = kDefaultSearchBudget) {
  const auto vars = phi.variables();
  const std::size_t k = vars.size();
  if (k > 16)
    throw CapExceeded("search_valid: more than 16 variables");
  const std::size_t n = f.size();
  const std::size_t depth = phi.modal_depth();
  const detail::PartialEvaluator ev(f, vars);
  ValidityResult r;

  for (World w = 0; w < n; ++w) {
    std::vector<World> order;
    {
      auto near = f.reachable_within(w, depth).points();
      near.erase(std::find(near.begin(), near.end(), w));
      std::stable_sort(near.begin(), near.end(), [&](World a, World b) {
        return f.predecessors(a).size() > f.predecessors(b).size();
      });
      order.push_back(w);
      order.insert(order.end(), near.begin(), near.end());
    }
    WorldSet assigned(n);
    std::vector<WorldSet> values(k, WorldSet(n));
    // choice[d] = value tried at order[d]; depth-first with explicit stack.
    std::vector<std::uint32_t> choice(order.size(), 0);
    std::size_t d = 0;
    bool fresh = true;
    const std::uint32_t options = std::uint32_t{1} << k;
    while (true) {
      if (fresh) {
        // Evaluate the current partial valuation before extending it.
        if (++r.examined > budget)
          throw CapExceeded("search_valid: search budget of " +
                            std::to_string(budget) + " nodes exhausted");
        detail::Kleene val = ev.eval(phi, assigned, values);
        if (val.no.test(w)) {
          r.valid = false;
          r.world = w;
          for (std::size_t i = 0; i < k; ++i) r.countervaluation[vars[i]] = values[i];
          return r;
        }
        bool closed = val.yes.test(w);
        if (!closed && d == order.size())
          throw Error("search_valid: value at world " + std::to_string(w) +
                      " undetermined under a full neighbourhood assignment");
        if (!closed) {
          choice[d] = 0;
          assigned.set(order[d]);
          for (std::size_t i = 0; i < k; ++i) values[i].reset(order[d]);
          ++d;
          continue;
        }
      }
      // Backtrack to the deepest world with an untried value.
      if (d == 0) break;
      const World x = order[d - 1];
      if (++choice[d - 1] < options) {
        for (std::size_t i = 0; i < k; ++i)
          values[i].assign(x, (choice[d - 1] >> i) & 1U);
        fresh = true;
        continue;
      }
      assigned.reset(x);
      for (std::size_t i = 0; i < k; ++i) values[i].reset(x);
      --d;
      fresh = false;
    }
  }
  return r;
}

struct AxiomSpec {
  std::string name;
  std::string text;
};

/// The named battery, in report order.
inline const std::vector<AxiomSpec>& named_axioms() {
  static const std::vector<AxiomSpec> kAxioms = {
      {"N", "~<>false"},
      {"K", "<>(p | q) -> <>p | <>q"},
      {"T", "p -> <>p"},
      {"4", "<><>p -> <>p"},
      {".2", "<>[]p -> []<>p"},
      {".1c", "[]<>p -> <>[]p"},
      {".2.1", "[]<>p <-> <>[]p"},
      {"Grz", "[]([](p -> []p) -> p) -> p"},
      {"TRIV", "p <-> <>p"},
  };
  return kAxioms;
}

inline const AxiomSpec& axiom(const std::string& name) {
  for (const auto& a : named_axioms())
    if (a.name == name) return a;
  throw PreconditionError("unknown axiom '" + name + "'");
}

inline const std::vector<std::string>& s4_axioms() {
  static const std::vector<std::string> k = {"N", "K", "T", "4"};
  return k;
}

inline const std::vector<std::string>& s421_axioms() {
  static const std::vector<std::string> k = {"N",  "K",   "T",   "4",
                                             ".2", ".1c", ".2.1"};
  return k;
}

inline std::vector<std::string> all_axiom_names() {
  std::vector<std::string> out;
  for (const auto& a : named_axioms()) out.push_back(a.name);
  return out;
}

struct AxiomOutcome {
  std::string name;
  std::string formula;
  ValidityResult result;
};

struct AxiomReport {
  std::vector<AxiomOutcome> entries;

  const AxiomOutcome& at(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw PreconditionError("axiom '" + name + "' not in report");
  }
  bool valid(const std::string& name) const { return at(name).result.valid; }
};

/// Battery over a general frame by lexicographic valuation enumeration.
inline AxiomReport axiom_battery(const GeneralFrame& g,
                                 const std::vector<std::string>& names =
                                     all_axiom_names(),
                                 std::uint64_t budget = kDefaultValuationBudget) {
  AxiomReport rep;
  for (const auto& n : names) {
    const auto& a = axiom(n);
    rep.entries.push_back({a.name, a.text, valid_in(g, parse_formula(a.text), budget)});
  }
  return rep;
}

/// Battery over a Kripke frame (full powerset) by the pruned exact search.
inline AxiomReport axiom_battery(const KripkeFrame& f,
                                 const std::vector<std::string>& names =
                                     all_axiom_names(),
                                 std::uint64_t budget = kDefaultSearchBudget) {
  AxiomReport rep;
  for (const auto& n : names) {
    const auto& a = axiom(n);
    rep.entries.push_back(
        {a.name, a.text, search_valid(f, parse_formula(a.text), budget)});
  }
  return rep;
}

}  // namespace finmod

#endif  // FINMOD_EVAL_HPP
