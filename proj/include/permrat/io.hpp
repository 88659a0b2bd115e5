#pragma once

// JSON input/output: group specifications (explicit generators or builtin
// families), Schur tables, and the reports written by the CLI.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "analytic.hpp"
#include "constructors.hpp"
#include "glue.hpp"

namespace permrat {

using Json = nlohmann::json;

// ---- group input ---------------------------------------------------------

inline std::int64_t json_int(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("group spec: missing '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    const auto& t = v.get_ref<const std::string&>();
    std::int64_t x = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec == std::errc() && end == t.data() + t.size()) return x;
  }
  throw InputError(std::string("group spec: '") + key + "' must be an integer");
}

/// Largest point mentioned in 1-based cycle notation.
inline std::size_t max_point(const std::string& s) {
  std::size_t best = 0, cur = 0;
  bool in = false;
  for (char ch : s) {
    if (ch >= '0' && ch <= '9') {
      cur = cur * 10 + static_cast<std::size_t>(ch - '0');
      in = true;
    } else {
      if (in) best = std::max(best, cur);
      cur = 0;
      in = false;
    }
  }
  return in ? std::max(best, cur) : best;
}

/// Generators in cycle notation separated by ';' or newlines, e.g. "(1,2,3);(1,2)".
inline Group group_from_cycles(const std::string& text, std::size_t degree = 0) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';' || ch == '\n') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  std::erase_if(parts, [](const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; });
  if (parts.empty()) throw InputError("no generators given");
  if (degree == 0)
    for (const auto& p : parts) degree = std::max(degree, max_point(p));
  degree = std::max<std::size_t>(degree, 1);
  std::vector<Permutation> gens;
  for (const auto& p : parts) gens.push_back(Permutation::from_cycles(p, degree));
  return Group(std::move(gens));
}

inline Group group_from_json(const Json& j);

inline Group builtin_group(const Json& j) {
  const std::string name = j.at("builtin").get<std::string>();
  auto factors = [&] {
    if (!j.contains("factors") || !j.at("factors").is_array()) throw InputError("builtin '" + name + "' needs 'factors'");
    return j.at("factors");
  };
  if (name == "gl2") return gl2(json_int(j, "q"));
  if (name == "sl2") return sl2(json_int(j, "q"));
  if (name == "pgl2") return pgl2(json_int(j, "q"));
  if (name == "psl2") return psl2(json_int(j, "q"));
  if (name == "cyclic") return cyclic(json_int(j, "n"));
  if (name == "dihedral") return dihedral(json_int(j, "order"));
  if (name == "dicyclic") return dicyclic(json_int(j, "order"));
  if (name == "quaternion") return generalized_quaternion(json_int(j, "order"));
  if (name == "semidihedral") return semidihedral(json_int(j, "order"));
  if (name == "modular") return modular_group(json_int(j, "order"));
  if (name == "semidirect") return semidirect_cp(json_int(j, "n"), json_int(j, "m"), json_int(j, "r"));
  if (name == "symmetric") return symmetric(json_int(j, "n"));
  if (name == "alternating") return alternating(json_int(j, "n"));
  if (name == "heisenberg") return heisenberg(json_int(j, "p"));
  if (name == "abelian") return abelian(factors().get<std::vector<std::int64_t>>());
  if (name == "product") {
    std::vector<Group> gs;
    for (const auto& f : factors()) gs.push_back(group_from_json(f));
    if (gs.empty()) throw InputError("product: no factors");
    Group g = gs[0];
    for (std::size_t i = 1; i < gs.size(); ++i) g = direct_product(g, gs[i]);
    return g;
  }
  throw InputError("unknown builtin group '" + name + "'");
}

/// {"degree": n, "generators": [[images...] | "cycles", ...]} or {"builtin": name, ...}.
inline Group group_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("group spec must be a JSON object");
  if (j.contains("builtin")) return builtin_group(j);
  if (!j.contains("generators") || !j.at("generators").is_array()) throw InputError("group spec: missing 'generators'");
  std::size_t degree = j.contains("degree") ? static_cast<std::size_t>(json_int(j, "degree")) : 0;
  std::vector<Permutation> gens;
  for (const auto& g : j.at("generators")) {
    if (g.is_string()) {
      std::size_t d = degree ? degree : max_point(g.get<std::string>());
      gens.push_back(Permutation::from_cycles(g.get<std::string>(), std::max<std::size_t>(d, 1)));
    } else if (g.is_array()) {
      gens.emplace_back(g.get<std::vector<Point>>());
      if (degree && gens.back().degree() != degree) throw InputError("generator length differs from 'degree'");
    } else {
      throw InputError("generator must be an image list or a cycle string");
    }
  }
  if (gens.empty()) throw InputError("group spec: empty generator list");
  std::size_t d = 0;
  for (const auto& g : gens) d = std::max(d, g.degree());
  for (auto& g : gens)
    if (g.degree() < d) {
      std::vector<Point> img(g.images().begin(), g.images().end());
      for (std::size_t i = img.size(); i < d; ++i) img.push_back(static_cast<Point>(i));
      g = Permutation(std::move(img));
    }
  return Group(std::move(gens));
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ---- Schur tables ----------------------------------------------------------

/// {"provenance": "...", "rules": [{"match": {"fs": -1}, "schur": 2}, ...]}
inline SchurOracle schur_table_from_json(const Json& j) {
  SchurOracle o;
  o.mode = SchurMode::user_table;
  if (!j.contains("rules") || !j.at("rules").is_array()) throw InputError("Schur table: missing 'rules'");
  for (const auto& r : j.at("rules")) {
    SchurRule rule;
    if (r.contains("match"))
      for (const auto& [k, v] : r.at("match").items()) {
        if (!v.is_number_integer()) throw InputError("Schur table: match values must be integers");
        rule.match[k] = v.get<std::int64_t>();
      }
    if (!r.contains("schur") || !r.at("schur").is_number_integer()) throw InputError("Schur table: rule without an integer 'schur'");
    rule.schur = r.at("schur").get<std::int64_t>();
    if (rule.schur < 1) throw InputError("Schur table: index must be positive");
    o.rules.push_back(std::move(rule));
  }
  return o;
}

inline SchurMode schur_mode_from_string(const std::string& s) {
  if (s == "constant1" || s == "constant-1") return SchurMode::constant1;
  if (s == "fs-heuristic" || s == "fs") return SchurMode::fs_heuristic;
  if (s == "user-table" || s == "table") return SchurMode::user_table;
  throw InputError("unknown Schur mode '" + s + "'");
}

// ---- output ----------------------------------------------------------------

/// FNV-1a over the degree and generator images; stable across runs and platforms.
inline std::string group_hash(const Group& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(g.degree());
  mix(g.generators().size());
  for (const auto& p : g.generators())
    for (auto x : p.images()) mix(x);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline Json cycles_json(const std::vector<Permutation>& gens) {
  Json a = Json::array();
  for (const auto& p : gens) a.push_back(p.to_cycles());
  return a;
}

inline Json group_json(const Group& g) {
  return {{"degree", g.degree()}, {"order", g.order().str()}, {"generators", cycles_json(g.generators())}};
}

inline Json finab_json(const FinAb& a) {
  return {{"invariants", a.invariants}, {"order", std::to_string(a.order())}, {"structure", a.to_string()}};
}

inline Json certificate_json(const PrimePart& part, const Certificate& c) {
  const auto& loc = part.locals[c.local];
  const LocalGenerator* gen = nullptr;
  for (const auto& gg : loc.generators)
    if (gg.row == c.row) gen = &gg;
  Json j = {{"p", c.p},
            {"order", c.order},
            {"Q", {{"order", loc.qe.q.order().str()}, {"generators", cycles_json(loc.qe.q.generators())}}},
            {"row", c.row},
            {"degree", loc.table.rows[c.row].degree},
            {"field_degree", loc.table.rows[c.row].field_degree}};
  if (gen)
    j["monomial_pair"] = {{"H_order", gen->pair.h.order().str()},
                          {"H_generators", cycles_json(gen->pair.h.generators())},
                          {"kernel_order", gen->pair.kernel.order().str()},
                          {"image_order", gen->pair.image_order}};
  return j;
}

inline Json local_json(const LocalCH& l) {
  const auto& d = l.qe;
  Json gens = Json::array();
  for (const auto& g : l.generators) {
    const auto& row = l.table.rows[g.row];
    Json methods = {{"berz", g.ch_order}, {"dimension", g.dimension_order}};
    if (g.basic_order) methods["basic"] = *g.basic_order;
    gens.push_back({{"row", g.row},
                    {"values", row.values},
                    {"degree", row.degree},
                    {"field_degree", row.field_degree},
                    {"fs", row.fs},
                    {"ch_order", g.ch_order},
                    {"schur", g.schur},
                    {"c_order", g.c_order},
                    {"methods", methods},
                    {"monomial_pair",
                     {{"H_order", g.pair.h.order().str()},
                      {"H_generators", cycles_json(g.pair.h.generators())},
                      {"kernel_order", g.pair.kernel.order().str()},
                      {"image_order", g.pair.image_order}}}});
  }
  Json j = {{"p", d.p},
            {"order", d.q.order().str()},
            {"generators", cycles_json(d.q.generators())},
            {"c_order", d.c_order},
            {"sylow_order", d.sylow.order().str()},
            {"kernel_order", d.kernel.order().str()},
            {"basic", d.basic},
            {"CH", finab_json(l.ch)},
            {"C", finab_json(l.c)},
            {"rows", l.table.size()},
            {"generator_rows", gens},
            {"warnings", l.warnings}};
  if (l.basic_order) j["basic_order"] = *l.basic_order;
  return j;
}

inline Json ch_result_json(const CHResult& r, const GlueOptions& opt, bool with_c) {
  Json chp = Json::object(), cp = Json::object();
  Json chc = Json::array(), cc = Json::array();
  for (const auto& part : r.parts) {
    chp[std::to_string(part.p)] = part.ch.invariants;
    cp[std::to_string(part.p)] = part.c.invariants;
    for (const auto& c : part.ch_certificates) chc.push_back(certificate_json(part, c));
    for (const auto& c : part.c_certificates) cc.push_back(certificate_json(part, c));
  }
  Json j = {{"engine", r.engine},
            {"warnings", r.warnings},
            {"CH",
             {{"p_parts", chp},
              {"invariants", r.ch.invariants},
              {"order", std::to_string(r.ch.order())},
              {"structure", r.ch.to_string()},
              {"certificates", chc}}},
            {"checked_glue_entries", r.checked_entries}};
  if (with_c) {
    j["C"] = {{"p_parts", cp},
              {"invariants", r.c.invariants},
              {"order", std::to_string(r.c.order())},
              {"structure", r.c.to_string()},
              {"certificates", cc},
              {"schur_mode", to_string(opt.local.oracle.mode)}};
  }
  return j;
}

inline Json psl_certificate_json(const PSLCertificate& c) {
  Json ids = Json::array();
  for (const auto& i : c.identities) ids.push_back({{"name", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds}});
  Json norms = Json::object(), svals = Json::object(), vals = Json::object();
  for (const auto& [k, v] : c.normalizers) norms[k] = v.str();
  for (const auto& [k, v] : c.s_values) svals[k] = v.str();
  for (const auto& [k, v] : c.valuations) vals[k] = v;
  Json j = {{"k", c.k},
            {"p", c.p},
            {"case", c.case_tag},
            {"n", c.n},
            {"N", c.N},
            {"m", c.m},
            {"q_tau", c.q_tau.str()},
            {"ca_order", c.ca_order.str()},
            {"normalizer_orders", norms},
            {"S", svals},
            {"valuations", vals},
            {"local_order_valuation", c.local_order_val},
            {"final_valuation", c.final_val},
            {"claimed_divisor", c.claimed_divisor},
            {"certified_divisor", c.certified_divisor},
            {"schur_trivial", c.schur_trivial},
            {"externally_sourced", c.externally_sourced},
            {"identities", ids},
            {"valid", c.valid}};
  j["l"] = c.l ? Json(*c.l) : Json(nullptr);
  return j;
}

}  // namespace permrat
