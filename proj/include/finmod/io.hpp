#ifndef FINMOD_IO_HPP
#define FINMOD_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "class_frame.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "general_frame.hpp"
#include "kripke.hpp"
#include "morphism.hpp"
#include "report.hpp"
#include "structure.hpp"
#include "verify.hpp"

namespace finmod {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path + "': malformed JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

namespace detail {

/// Runs `fn`, turning library type errors into FormatError.
template <class Fn>
auto json_guard(const std::string& what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
}

inline std::size_t to_index(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw FormatError(what + ": expected a nonnegative integer, got " + j.dump());
  return j.get<std::size_t>();
}

inline void flatten_table(const json& j, std::size_t depth, std::size_t universe,
                          const std::string& name, std::vector<Element>& out) {
  if (!j.is_array() || j.size() != universe)
    throw FormatError("function '" + name + "': expected an array of " +
                      std::to_string(universe) + " entries at nesting level " +
                      std::to_string(depth));
  for (const auto& x : j) {
    if (depth == 1)
      out.push_back(static_cast<Element>(to_index(x, "function '" + name + "'")));
    else
      flatten_table(x, depth - 1, universe, name, out);
  }
}

inline json nest_table(const std::vector<Element>& table, std::size_t universe,
                       std::size_t arity, std::size_t& at) {
  json out = json::array();
  for (std::size_t i = 0; i < universe; ++i) {
    if (arity == 1)
      out.push_back(table[at++]);
    else
      out.push_back(nest_table(table, universe, arity - 1, at));
  }
  return out;
}

}  // namespace detail

/// Reads the structure document format.
inline Structure structure_from_json(const json& doc) {
  return detail::json_guard("structure document", [&] {
    if (!doc.is_object()) throw FormatError("structure document must be an object");
    for (const char* key : {"signature", "universe"})
      if (!doc.contains(key))
        throw FormatError(std::string("structure document: missing '") + key + "'");
    const json& sig = doc.at("signature");
    std::vector<Symbol> fs, ps;
    std::vector<std::string> cs;
    for (const auto& f : sig.value("functions", json::array()))
      fs.push_back({f.at("name").get<std::string>(),
                    detail::to_index(f.at("arity"), "arity")});
    for (const auto& p : sig.value("predicates", json::array()))
      ps.push_back({p.at("name").get<std::string>(),
                    detail::to_index(p.at("arity"), "arity")});
    for (const auto& c : sig.value("constants", json::array()))
      cs.push_back(c.get<std::string>());
    Signature signature(fs, ps, cs);
    const std::size_t n = detail::to_index(doc.at("universe"), "universe");
    if (n == 0) throw FormatError("structure: universe must be nonempty");

    const json functions = doc.value("functions", json::object());
    std::vector<std::vector<Element>> tables;
    for (const auto& f : fs) {
      if (!functions.contains(f.name))
        throw FormatError("structure: missing table for function '" + f.name + "'");
      table_entries(n, f.arity);
      std::vector<Element> t;
      detail::flatten_table(functions.at(f.name), f.arity, n, f.name, t);
      tables.push_back(std::move(t));
    }
    const json predicates = doc.value("predicates", json::object());
    std::vector<std::vector<Tuple>> exts;
    for (const auto& p : ps) {
      std::vector<Tuple> ext;
      if (predicates.contains(p.name))
        for (const auto& t : predicates.at(p.name)) {
          Tuple tuple;
          for (const auto& x : t)
            tuple.push_back(static_cast<Element>(detail::to_index(x, "predicate")));
          ext.push_back(std::move(tuple));
        }
      exts.push_back(std::move(ext));
    }
    const json constants = doc.value("constants", json::object());
    std::vector<Element> values;
    for (const auto& c : cs) {
      if (!constants.contains(c))
        throw FormatError("structure: missing value for constant '" + c + "'");
      values.push_back(static_cast<Element>(detail::to_index(constants.at(c), "constant")));
    }
    return Structure(signature, n, std::move(tables), std::move(exts),
                     std::move(values));
  });
}

inline json structure_to_json(const Structure& s) {
  json sig{{"functions", json::array()},
           {"predicates", json::array()},
           {"constants", s.signature().constants()}};
  json functions = json::object(), predicates = json::object(),
       constants = json::object();
  for (std::size_t f = 0; f < s.signature().functions().size(); ++f) {
    const auto& sym = s.signature().functions()[f];
    sig["functions"].push_back({{"name", sym.name}, {"arity", sym.arity}});
    std::size_t at = 0;
    functions[sym.name] = detail::nest_table(s.table(f), s.size(), sym.arity, at);
  }
  for (std::size_t p = 0; p < s.signature().predicates().size(); ++p) {
    const auto& sym = s.signature().predicates()[p];
    sig["predicates"].push_back({{"name", sym.name}, {"arity", sym.arity}});
    predicates[sym.name] = s.extension(p);
  }
  for (std::size_t c = 0; c < s.signature().constants().size(); ++c)
    constants[s.signature().constants()[c]] = s.constant(c);
  return {{"signature", sig},
          {"universe", s.size()},
          {"functions", functions},
          {"predicates", predicates},
          {"constants", constants}};
}

inline Structure load_structure(const std::string& path) {
  try {
    return structure_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

/// A frame document: the Kripke frame plus an explicit algebra, or none
/// for the full powerset.
struct FrameDocument {
  KripkeFrame frame;
  std::optional<std::vector<WorldSet>> algebra;

  bool full() const { return !algebra.has_value(); }
  GeneralFrame general(std::size_t cap = kDefaultAlgebraCap) const {
    return full() ? full_general(frame, cap) : GeneralFrame(frame, *algebra, cap);
  }
};

inline WorldSet world_set_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) throw FormatError("world set must be an array, got " + j.dump());
  WorldSet s(n);
  for (const auto& x : j) {
    const std::size_t w = detail::to_index(x, "world set");
    if (w >= n)
      throw FormatError("world " + std::to_string(w) + " out of range for " +
                        std::to_string(n) + " worlds");
    s.set(w);
  }
  return s;
}

inline json world_set_to_json(const WorldSet& s) { return s.points(); }

inline FrameDocument frame_from_json(const json& doc) {
  return detail::json_guard("frame document", [&] {
    if (!doc.is_object() || !doc.contains("worlds"))
      throw FormatError("frame document: missing 'worlds'");
    const std::size_t n = detail::to_index(doc.at("worlds"), "worlds");
    if (n == 0) throw FormatError("frame: worlds must be nonempty");
    std::vector<Edge> edges;
    for (const auto& e : doc.value("relation", json::array())) {
      if (!e.is_array() || e.size() != 2)
        throw FormatError("frame: relation pairs must be [i, j], got " + e.dump());
      const auto x = detail::to_index(e[0], "relation"), y = detail::to_index(e[1], "relation");
      if (x >= n || y >= n)
        throw FormatError("frame: relation pair " + e.dump() + " out of range");
      edges.emplace_back(x, y);
    }
    FrameDocument d{KripkeFrame(n, std::move(edges)), std::nullopt};
    const json alg = doc.value("algebra", json("full"));
    if (alg.is_string()) {
      if (alg.get<std::string>() != "full")
        throw FormatError("frame: algebra must be \"full\" or a list of sets");
    } else if (alg.is_array()) {
      std::vector<WorldSet> members;
      for (const auto& m : alg) members.push_back(world_set_from_json(m, n));
      d.algebra = std::move(members);
    } else {
      throw FormatError("frame: algebra must be \"full\" or a list of sets");
    }
    return d;
  });
}

inline json frame_to_json(const KripkeFrame& f) {
  json rel = json::array();
  for (auto [x, y] : f.edges()) rel.push_back({x, y});
  return {{"worlds", f.size()}, {"relation", rel}, {"algebra", "full"}};
}

inline json frame_to_json(const GeneralFrame& g) {
  json j = frame_to_json(g.base());
  if (!g.is_full()) {
    json members = json::array();
    for (const auto& m : g.members()) members.push_back(world_set_to_json(m));
    j["algebra"] = members;
  }
  return j;
}

inline FrameDocument load_frame(const std::string& path) {
  try {
    return frame_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

inline FrameMap frame_map_from_json(const json& doc) {
  return detail::json_guard("map document", [&] {
    if (!doc.is_object() || !doc.contains("map") || !doc.at("map").is_array())
      throw FormatError("map document: expected {\"map\": [...]}");
    FrameMap m;
    for (const auto& x : doc.at("map")) m.mapping.push_back(detail::to_index(x, "map"));
    return m;
  });
}

inline json frame_map_to_json(const FrameMap& m) { return {{"map", m.mapping}}; }

/// A partition given as {"blocks": [[...], ...]} or as a bare list of blocks.
inline BlockLabels partition_from_json(const json& doc, std::size_t n) {
  return detail::json_guard("partition document", [&] {
    const json& blocks = doc.is_object() ? doc.at("blocks") : doc;
    if (!blocks.is_array()) throw FormatError("partition: expected a list of blocks");
    std::vector<std::vector<std::size_t>> bs;
    for (const auto& b : blocks) {
      std::vector<std::size_t> block;
      for (const auto& x : b) block.push_back(detail::to_index(x, "partition"));
      bs.push_back(std::move(block));
    }
    try {
      return labels_from_blocks(n, bs);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("partition: ") + e.what());
    }
  });
}

inline json partition_to_json(const BlockLabels& labels) {
  return {{"blocks", blocks_of(labels)}};
}

inline json valuation_to_json(const Valuation& v) {
  json j = json::object();
  for (const auto& [name, set] : v) j[name] = world_set_to_json(set);
  return j;
}

inline json validity_to_json(const ValidityResult& r) {
  json j{{"valid", r.valid}, {"examined", r.examined}};
  if (!r.valid) {
    j["world"] = r.world;
    j["countervaluation"] = valuation_to_json(r.countervaluation);
  }
  return j;
}

inline json axiom_report_to_json(const AxiomReport& rep) {
  json out = json::array();
  for (const auto& e : rep.entries) {
    json j = validity_to_json(e.result);
    j["axiom"] = e.name;
    j["formula"] = e.formula;
    out.push_back(j);
  }
  return out;
}

inline std::string orientation_note(RelationKind k) {
  switch (k) {
    case RelationKind::sub:
      return "[A] R [B] iff B is isomorphic to a submodel of A";
    case RelationKind::ext:
      return "[A] R [B] iff A is isomorphic to a submodel of B";
    case RelationKind::quot:
      return "[A] R [B] iff B is isomorphic to a quotient of A";
  }
  return "";
}

inline json class_frame_to_json(const ClassFrame& cf) {
  json classes = json::array();
  for (std::size_t i = 0; i < cf.representatives.size(); ++i)
    classes.push_back({{"index", i},
                       {"size", cf.representatives[i].size()},
                       {"origin", cf.origins[i]}});
  json rel = json::array();
  for (auto [a, b] : cf.relation) rel.push_back({a, b});
  return {{"kind", to_string(cf.kind)},
          {"orientation", orientation_note(cf.kind)},
          {"classes", classes},
          {"class_of", cf.class_of},
          {"relation", rel}};
}

inline json report_to_json(const VerificationReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"name", e.name},
                       {"anchor", e.anchor},
                       {"status", e.passed() ? "pass"
                                  : e.status == CheckStatus::fail ? "fail"
                                                                  : "refused"},
                       {"evidence", to_string(e.evidence)},
                       {"details", e.details}});
  return {{"passed", rep.passed()}, {"entries", entries}};
}

/// Reads a config document; absent keys keep their defaults, unknown keys
/// are rejected.
inline VerifyConfig config_from_json(const json& doc) {
  return detail::json_guard("config document", [&] {
    if (!doc.is_object()) throw FormatError("config document must be an object");
    VerifyConfig c;
    for (const auto& [key, value] : doc.items()) {
      auto size = [&] { return detail::to_index(value, key); };
      if (key == "pretree_max") c.pretree_max = size();
      else if (key == "pretree_top_max") c.pretree_top_max = size();
      else if (key == "cycle_max") c.cycle_max = size();
      else if (key == "cycle_oracle_max") c.cycle_oracle_max = size();
      else if (key == "medvedev_max") c.medvedev_max = size();
      else if (key == "shehtman_height") c.shehtman_height = size();
      else if (key == "random_frames") c.random_frames = size();
      else if (key == "random_max_worlds") c.random_max_worlds = size();
      else if (key == "random_generators") c.random_generators = size();
      else if (key == "subalgebra_cases") c.subalgebra_cases = size();
      else if (key == "an_bound") c.an_bound = size();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "valuation_budget") c.valuation_budget = value.get<std::uint64_t>();
      else if (key == "search_budget") c.search_budget = value.get<std::uint64_t>();
      else if (key == "enumeration_max_worlds") c.enumeration_max_worlds = size();
      else if (key == "submodel_cap") c.caps.submodel_cap = size();
      else if (key == "congruence_cap") c.caps.congruence_cap = size();
      else if (key == "an_sizes") {
        c.an_sizes.clear();
        for (const auto& x : value) c.an_sizes.push_back(detail::to_index(x, key));
      } else {
        throw FormatError("config: unknown key '" + key + "'");
      }
    }
    if (c.random_max_worlds == 0 || c.random_generators == 0)
      throw FormatError("config: random_max_worlds and random_generators must be positive");
    return c;
  });
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Hasse-style drawing: transitive reduction without loops; reflexive
/// worlds are drawn as double circles.
inline std::string frame_dot(const KripkeFrame& f, const std::string& name = "frame",
                             const std::vector<std::string>& labels = {}) {
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(name) << " {\n  rankdir=BT;\n";
  for (World x = 0; x < f.size(); ++x) {
    out << "  n" << x << " [label="
        << detail::dot_quote(x < labels.size() ? labels[x] : std::to_string(x));
    if (f.has(x, x)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (auto [x, y] : drawing_edges(f))
    out << "  n" << x << " -> n" << y << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string class_frame_dot(const ClassFrame& cf) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cf.representatives.size(); ++i)
    labels.push_back("#" + std::to_string(i) + " size " +
                     std::to_string(cf.representatives[i].size()));
  return frame_dot(cf.as_kripke(), "classframe_" + to_string(cf.kind), labels);
}

}  // namespace finmod

#endif  // FINMOD_IO_HPP
