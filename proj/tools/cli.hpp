#ifndef FINMOD_TOOLS_CLI_HPP
#define FINMOD_TOOLS_CLI_HPP

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finmod/an_model.hpp"
#include "finmod/class_frame.hpp"
#include "finmod/eval.hpp"
#include "finmod/formula.hpp"
#include "finmod/general_frame.hpp"
#include "finmod/io.hpp"
#include "finmod/kripke.hpp"
#include "finmod/morphism.hpp"
#include "finmod/shehtman.hpp"
#include "finmod/structure.hpp"
#include "finmod/submodels.hpp"
#include "finmod/verify.hpp"

namespace finmod::cli {

enum Exit : int { kPass = 0, kViolation = 1, kUsage = 2 };

namespace detail {

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string set_text(const WorldSet& s) { return finmod::detail::set_string(s); }

inline std::string blocks_text(const BlockLabels& labels) {
  std::string out = "{";
  const auto blocks = blocks_of(labels);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += " | ";
    for (std::size_t i = 0; i < blocks[b].size(); ++i)
      out += (i ? "," : "") + std::to_string(blocks[b][i]);
  }
  return out + "}";
}

inline std::string class_frame_text(const ClassFrame& cf) {
  std::string out = "orientation: " + orientation_note(cf.kind) + "\n";
  out += std::to_string(cf.representatives.size()) + " classes\n";
  for (std::size_t i = 0; i < cf.representatives.size(); ++i) {
    out += "  class " + std::to_string(i) + ": size " +
           std::to_string(cf.representatives[i].size()) + ", first input " +
           std::to_string(cf.origins[i]) + ", sees";
    for (auto [a, b] : cf.relation)
      if (a == i) out += " " + std::to_string(b);
    out += "\n";
  }
  return out;
}

inline std::string validity_text(const ValidityResult& r) {
  if (r.valid) return "valid\n";
  return "invalid at world " + std::to_string(r.world) + " under " +
         finmod::detail::valuation_string(r.countervaluation) + "\n";
}

/// Full-powerset validity: enumeration when the valuation count fits the
/// budget, the pruned exact search otherwise.
inline ValidityResult check_full(const KripkeFrame& f, const Formula& phi,
                                 std::uint64_t budget, std::string& method) {
  const std::size_t bits = f.size() * phi.variables().size();
  if (f.size() <= kDefaultAlgebraCap && bits < 64 &&
      (std::uint64_t{1} << bits) <= budget) {
    method = "enumeration";
    return valid_in(full_general(f), phi, budget);
  }
  method = "pruned search";
  return search_valid(f, phi, std::max(budget, kDefaultSearchBudget));
}

inline std::vector<std::size_t> parse_lengths(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t at = 0;
  while (at <= text.size()) {
    const std::size_t comma = std::min(text.find(',', at), text.size());
    const std::string piece = text.substr(at, comma - at);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
      throw FormatError("cycle lengths must be a comma-separated list of positive integers");
    out.push_back(std::stoul(piece));
    if (out.back() == 0) throw FormatError("cycle lengths must be positive");
    at = comma + 1;
  }
  return out;
}

}  // namespace detail

/**
 * Runs the command line `args` (without the program name). Exit status:
 * 0 pass or valid, 1 counterexample or violation, 2 usage, format or cap
 * error.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Finite structures, frames of classes and modal validity", "finmod"};
  app.require_subcommand(1);
  int status = kPass;

  // parse
  auto* parse = app.add_subcommand("parse", "Parse a formula and print it back");
  std::string formula_text;
  parse->add_option("formula", formula_text, "Formula text")->required();
  parse->callback([&] {
    const Formula f = parse_formula(formula_text);
    out << to_string(f) << "\n";
    out << "modal depth: " << f.modal_depth() << "\n";
    out << "variables: " << finmod::detail::join(f.variables(), ",") << "\n";
  });

  // structure info
  auto* structure = app.add_subcommand("structure", "Inspect a structure document");
  structure->require_subcommand(1);
  auto* info = structure->add_subcommand("info", "Summarize a structure");
  std::string file;
  info->add_option("file", file, "Structure document")->required();
  info->callback([&] {
    const Structure s = load_structure(file);
    out << "universe: " << s.size() << "\n";
    for (const auto& f : s.signature().functions())
      out << "function " << f.name << "/" << f.arity << "\n";
    for (const auto& p : s.signature().predicates())
      out << "predicate " << p.name << "/" << p.arity << "\n";
    for (std::size_t c = 0; c < s.signature().constants().size(); ++c)
      out << "constant " << s.signature().constants()[c] << " = " << s.constant(c)
          << "\n";
    if (s.size() <= kDefaultSubmodelCap)
      out << "submodels: " << submodels(s).size() << "\n";
    if (s.size() <= kDefaultCongruenceCap)
      out << "congruences: " << congruences(s).size() << "\n";
  });

  // submodels / quotients
  bool up_to_iso = false;
  std::string dot_path, json_path;
  auto* subm = app.add_subcommand("submodels", "List the submodels of a structure");
  subm->add_option("file", file, "Structure document")->required();
  subm->add_flag("--up-to-iso", up_to_iso, "Group into iso-classes ordered by 'is a submodel of'");
  subm->add_option("--dot", dot_path, "Write a DOT drawing to this file");
  subm->callback([&] {
    const Structure s = load_structure(file);
    const auto sets = submodels(s);
    if (up_to_iso) {
      std::vector<Structure> cs;
      for (const auto& u : sets) cs.push_back(induced_submodel(s, u));
      const ClassFrame cf = class_frame(cs, RelationKind::sub);
      out << detail::class_frame_text(cf);
      if (!dot_path.empty()) write_text_file(dot_path, class_frame_dot(cf));
      return;
    }
    out << sets.size() << " submodels\n";
    std::vector<std::string> labels;
    for (const auto& u : sets) {
      out << "  " << detail::set_text(u) << "\n";
      labels.push_back(detail::set_text(u));
    }
    if (!dot_path.empty()) {
      std::vector<Edge> e;
      for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = 0; b < sets.size(); ++b)
          if (sets[b].is_subset_of(sets[a])) e.emplace_back(a, b);
      write_text_file(dot_path, frame_dot(KripkeFrame(sets.size(), e), "submodels", labels));
    }
  });

  auto* quots = app.add_subcommand("quotients", "List the congruences of a structure");
  quots->add_option("file", file, "Structure document")->required();
  quots->add_flag("--up-to-iso", up_to_iso, "Group into iso-classes ordered by 'is a quotient of'");
  quots->add_option("--dot", dot_path, "Write a DOT drawing to this file");
  quots->callback([&] {
    const Structure s = load_structure(file);
    const auto thetas = congruences(s);
    if (up_to_iso) {
      std::vector<Structure> cs;
      for (const auto& t : thetas) cs.push_back(quotient(s, t));
      const ClassFrame cf = class_frame(cs, RelationKind::quot);
      out << detail::class_frame_text(cf);
      if (!dot_path.empty()) write_text_file(dot_path, class_frame_dot(cf));
      return;
    }
    out << thetas.size() << " congruences\n";
    std::vector<std::string> labels;
    for (const auto& t : thetas) {
      out << "  " << detail::blocks_text(t) << "\n";
      labels.push_back(detail::blocks_text(t));
    }
    if (!dot_path.empty()) {
      // a R b iff theta_a is contained in theta_b.
      auto finer = [&](const BlockLabels& a, const BlockLabels& b) {
        for (std::size_t x = 0; x < a.size(); ++x)
          for (std::size_t y = x + 1; y < a.size(); ++y)
            if (a[x] == a[y] && b[x] != b[y]) return false;
        return true;
      };
      std::vector<Edge> e;
      for (std::size_t a = 0; a < thetas.size(); ++a)
        for (std::size_t b = 0; b < thetas.size(); ++b)
          if (finer(thetas[a], thetas[b])) e.emplace_back(a, b);
      write_text_file(dot_path, frame_dot(KripkeFrame(thetas.size(), e), "quotients", labels));
    }
  });

  // classframe
  auto* cfc = app.add_subcommand("classframe", "Frame of iso-classes of the given structures");
  std::string kind_text;
  std::vector<std::string> files;
  cfc->add_option("--kind", kind_text, "sub, ext or quot")
      ->required()
      ->check(CLI::IsMember({"sub", "ext", "quot"}));
  cfc->add_option("files", files, "Structure documents")->required();
  cfc->add_option("--dot", dot_path, "Write a DOT drawing to this file");
  cfc->add_option("--json", json_path, "Write the class frame as JSON to this file");
  cfc->callback([&] {
    std::vector<Structure> cs;
    for (const auto& f : files) cs.push_back(load_structure(f));
    const ClassFrame cf = class_frame(cs, relation_kind_from_string(kind_text));
    out << detail::class_frame_text(cf);
    if (!dot_path.empty()) write_text_file(dot_path, class_frame_dot(cf));
    if (!json_path.empty()) write_text_file(json_path, detail::dump(class_frame_to_json(cf)));
  });

  // frame check / axioms / op
  auto* frame = app.add_subcommand("frame", "Validity checks and frame operations");
  frame->require_subcommand(1);
  std::uint64_t budget = kDefaultValuationBudget;
  bool as_json = false;

  auto* check = frame->add_subcommand("check", "Check validity of a formula");
  check->add_option("frame", file, "Frame document")->required();
  check->add_option("--formula", formula_text, "Formula")->required();
  check->add_option("--budget", budget, "Valuation budget");
  check->add_flag("--json", as_json, "Print the result as JSON");
  check->callback([&] {
    const FrameDocument d = load_frame(file);
    const Formula phi = parse_formula(formula_text);
    std::string method = "enumeration";
    const ValidityResult r = d.full() ? detail::check_full(d.frame, phi, budget, method)
                                      : valid_in(d.general(), phi, budget);
    if (as_json) {
      json j = validity_to_json(r);
      j["formula"] = to_string(phi);
      j["method"] = method;
      out << detail::dump(j);
    } else {
      out << to_string(phi) << ": " << detail::validity_text(r);
    }
    status = r.valid ? kPass : kViolation;
  });

  auto* axioms = frame->add_subcommand("axioms", "Run the named axiom battery");
  axioms->add_option("frame", file, "Frame document")->required();
  axioms->add_option("--budget", budget, "Valuation budget");
  axioms->add_flag("--json", as_json, "Print the report as JSON");
  axioms->callback([&] {
    const FrameDocument d = load_frame(file);
    AxiomReport rep;
    for (const auto& spec : named_axioms()) {
      const Formula phi = parse_formula(spec.text);
      std::string method = "enumeration";
      rep.entries.push_back({spec.name, spec.text,
                             d.full() ? detail::check_full(d.frame, phi, budget, method)
                                      : valid_in(d.general(), phi, budget)});
    }
    if (as_json) {
      out << detail::dump(axiom_report_to_json(rep));
      return;
    }
    std::size_t width = 0;
    for (const auto& e : rep.entries) width = std::max(width, e.formula.size());
    for (const auto& e : rep.entries) {
      std::string name = e.name + std::string(6 - std::min<std::size_t>(6, e.name.size()), ' ');
      std::string f = e.formula + std::string(width - e.formula.size(), ' ');
      out << name << f << "  " << detail::validity_text(e.result);
    }
  });

  auto* op = frame->add_subcommand("op", "Build a frame from other frames");
  op->require_subcommand(1);
  std::string out_path, second, partition_path, generators_path;
  std::size_t world = 0;

  auto* op_sum = op->add_subcommand("sum", "Ordered sum: every world of A sees every world of B");
  op_sum->add_option("a", file, "Lower frame")->required();
  op_sum->add_option("b", second, "Upper frame")->required();
  auto* op_lex = op->add_subcommand("lex", "Lexicographic product of A (outer) and B (inner)");
  op_lex->add_option("a", file, "Outer frame")->required();
  op_lex->add_option("b", second, "Inner frame")->required();
  auto* op_gensub = op->add_subcommand("gensub", "Subframe generated by a world");
  op_gensub->add_option("frame", file, "Frame document")->required();
  op_gensub->add_option("--world", world, "Generating world")->required();
  auto* op_refine = op->add_subcommand("refine", "Refinement of a general frame");
  op_refine->add_option("frame", file, "Frame document")->required();
  auto* op_quot = op->add_subcommand("quotient", "Quotient by a bisimulation partition");
  op_quot->add_option("frame", file, "Frame document")->required();
  op_quot->add_option("--partition", partition_path, "Partition document")->required();
  auto* op_subalg = op->add_subcommand("subalg", "Subalgebra generated by sets");
  op_subalg->add_option("frame", file, "Frame document")->required();
  op_subalg->add_option("--generators", generators_path,
                        "JSON list of world sets")->required();
  for (auto* sub : {op_sum, op_lex, op_gensub, op_refine, op_quot, op_subalg})
    sub->add_option("--out", out_path, "Write the frame document here instead of stdout");

  op_sum->callback([&] {
    detail::emit(detail::dump(frame_to_json(
                     ordered_sum(load_frame(file).frame, load_frame(second).frame))),
                 out_path, out);
  });
  op_lex->callback([&] {
    detail::emit(detail::dump(frame_to_json(
                     lex_product(load_frame(file).frame, load_frame(second).frame))),
                 out_path, out);
  });
  op_gensub->callback([&] {
    detail::emit(detail::dump(frame_to_json(generated_subframe(load_frame(file).general(), world))),
                 out_path, out);
  });
  op_refine->callback([&] {
    detail::emit(detail::dump(frame_to_json(refine(load_frame(file).general()))), out_path, out);
  });
  op_quot->callback([&] {
    const GeneralFrame g = load_frame(file).general();
    const BlockLabels p = partition_from_json(read_json_file(partition_path), g.size());
    detail::emit(detail::dump(frame_to_json(quotient_frame(g, p))), out_path, out);
  });
  op_subalg->callback([&] {
    const GeneralFrame g = load_frame(file).general();
    const json doc = read_json_file(generators_path);
    if (!doc.is_array()) throw FormatError("generators: expected a list of world sets");
    std::vector<WorldSet> gens;
    for (const auto& s : doc) gens.push_back(world_set_from_json(s, g.size()));
    detail::emit(detail::dump(frame_to_json(subalgebra_generated(g, gens))), out_path, out);
  });

  // pmorphism check
  auto* pm = app.add_subcommand("pmorphism", "p-morphism checks");
  pm->require_subcommand(1);
  auto* pm_check = pm->add_subcommand("check", "Check that a map is a surjective p-morphism");
  std::string map_path;
  pm_check->add_option("src", file, "Source frame")->required();
  pm_check->add_option("tgt", second, "Target frame")->required();
  pm_check->add_option("--map", map_path, "Map document")->required();
  pm_check->callback([&] {
    const auto r = check_pmorphism(load_frame(file).frame, load_frame(second).frame,
                                   frame_map_from_json(read_json_file(map_path)));
    out << (r.ok() ? "ok" : "violation: " + r.describe()) << "\n";
    status = r.ok() ? kPass : kViolation;
  });

  // witnesses
  auto* witness = app.add_subcommand("witness", "Build the named witness objects");
  witness->require_subcommand(1);
  std::size_t n = 0;
  bool top = false, fixedpoint = false, drop_empty = false, reversed = false;
  std::string lengths, constant;
  std::uint64_t bound = 12;

  auto* w_qn = witness->add_subcommand("qn", "Pre-tree frame Q_n (tree times n-cluster)");
  w_qn->add_option("n", n, "n")->required();
  w_qn->add_flag("--top", top, "Add a reflexive top world (Q'_n)");
  auto* w_cycles = witness->add_subcommand("cycles", "Disjoint sum of cycles (unar)");
  w_cycles->add_option("lengths", lengths, "Comma-separated cycle lengths")->required();
  w_cycles->add_flag("--fixedpoint", fixedpoint, "Add a fixed point");
  w_cycles->add_option("--constant", constant, "Name the fixed point by this constant");
  auto* w_med = witness->add_subcommand("medvedev", "Powerset frame of a k-element set");
  w_med->add_option("k", n, "k")->required();
  w_med->add_flag("--drop-empty", drop_empty, "Omit the empty set");
  w_med->add_flag("--reversed", reversed, "Order by superset instead of subset");
  auto* w_sh = witness->add_subcommand("shehtman", "Powerset frame mapped onto a tree with top");
  w_sh->add_option("height", n, "Tree height")->required();
  auto* w_an = witness->add_subcommand("an", "Pointwise lemma checks for A_n");
  w_an->add_option("n", n, "n")->required();
  w_an->add_option("--bound", bound, "Largest index checked")->required();
  for (auto* sub : {w_qn, w_cycles, w_med, w_sh})
    sub->add_option("--out", out_path, "Write the document here instead of stdout");

  w_qn->callback([&] {
    detail::emit(detail::dump(frame_to_json(pretree_q(n, top))), out_path, out);
  });
  w_cycles->callback([&] {
    if (!constant.empty() && !fixedpoint)
      throw PreconditionError("--constant requires --fixedpoint");
    std::vector<Structure> parts;
    for (auto l : detail::parse_lengths(lengths)) parts.push_back(make_cycle(l));
    Structure s = disjoint_sum(parts);
    if (fixedpoint)
      s = constant.empty() ? add_fixed_point(s) : add_fixed_point(s, {constant});
    detail::emit(detail::dump(structure_to_json(s)), out_path, out);
  });
  w_med->callback([&] {
    detail::emit(detail::dump(frame_to_json(powerset_frame(n, drop_empty, reversed))),
                 out_path, out);
  });
  w_sh->callback([&] {
    const auto w = shehtman_map(n);
    json nodes = json::array();
    for (const auto& t : w.nodes) nodes.push_back(std::vector<int>(t.begin(), t.end()));
    detail::emit(detail::dump({{"source", frame_to_json(w.source)},
                               {"target", frame_to_json(w.target)},
                               {"map", w.map.mapping},
                               {"nodes", nodes},
                               {"top", w.top()}}),
                 out_path, out);
  });
  w_an->callback([&] {
    const auto rep = an_lemma_suite(n, bound);
    out << rep.to_table();
    status = rep.passed() ? kPass : kViolation;
  });

  // verify paper
  auto* verify = app.add_subcommand("verify", "Acceptance suite");
  verify->require_subcommand(1);
  auto* paper = verify->add_subcommand("paper", "Run every acceptance check");
  std::string config_path;
  paper->add_option("--config", config_path, "Config document");
  paper->add_flag("--json", as_json, "Print the report as JSON");
  paper->callback([&] {
    const VerifyConfig cfg =
        config_path.empty() ? VerifyConfig{} : config_from_json(read_json_file(config_path));
    const auto rep = verify_paper(cfg);
    out << (as_json ? detail::dump(report_to_json(rep)) : rep.to_table());
    status = rep.passed() ? kPass : kViolation;
  });

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "formula: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}

}  // namespace finmod::cli

#endif  // FINMOD_TOOLS_CLI_HPP
