// permrat: Char_Q(G)/Perm(G) and R_Q(G)/Perm(G) for finite permutation groups.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <permrat/permrat.hpp>

#ifndef PERMRAT_FIXTURE_DIR
#define PERMRAT_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;
using namespace permrat;

namespace {

struct GroupSource {
  std::string builtin;
  std::int64_t q = 0, n = 0, order = 0, p = 0, m = 0, r = 0;
  std::string group_file;
  std::string gens;

  Group load(Json& spec_out) const {
    int given = !builtin.empty() + !group_file.empty() + !gens.empty();
    if (given != 1) throw InputError("give exactly one of --builtin, --group, --gens");
    if (!group_file.empty()) {
      spec_out = read_json_file(group_file);
      return group_from_json(spec_out);
    }
    if (!gens.empty()) {
      spec_out = {{"cycles", gens}};
      return group_from_cycles(gens);
    }
    Json j = {{"builtin", builtin}};
    if (q) j["q"] = q;
    if (n) j["n"] = n;
    if (order) j["order"] = order;
    if (p) j["p"] = p;
    if (m) j["m"] = m;
    if (r) j["r"] = r;
    spec_out = j;
    return group_from_json(j);
  }
};

void add_group_options(CLI::App* app, GroupSource& src) {
  app->add_option("--builtin", src.builtin, "builtin family: gl2 sl2 pgl2 psl2 cyclic dihedral dicyclic quaternion "
                                            "semidihedral modular semidirect symmetric alternating heisenberg");
  app->add_option("--q", src.q, "field order for the linear families");
  app->add_option("--n", src.n, "parameter n (cyclic, symmetric, alternating, semidirect)");
  app->add_option("--order", src.order, "group order (dihedral, dicyclic, quaternion, ...)");
  app->add_option("--p", src.p, "prime (heisenberg)");
  app->add_option("--m", src.m, "semidirect: order of the acting cyclic group");
  app->add_option("--r", src.r, "semidirect: the action x -> x^r");
  app->add_option("--group", src.group_file, "group JSON file");
  app->add_option("--gens", src.gens, "generators in cycle notation separated by ';'");
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw InputError("--theta: '" + tok + "' is not an integer");
    }
  }
  return out;
}

struct ComputeOptions {
  GroupSource src;
  std::vector<std::string> targets{"chat"};
  std::string engine = "auto";
  std::string schur_mode = "fs-heuristic";
  std::string schur_table;
  std::string cache_dir;
  std::string theta;
  std::uint64_t seed = 0;
  bool no_assert = false;
  bool json = false;
};

Json run_compute(const ComputeOptions& o) {
  Json spec;
  Group g = o.src.load(spec);
  GlueOptions opt;
  opt.local.assert_identities = !o.no_assert;
  opt.local.oracle.mode = schur_mode_from_string(o.schur_mode);
  Json table_json;
  if (!o.schur_table.empty()) {
    table_json = read_json_file(o.schur_table);
    opt.local.oracle = schur_table_from_json(table_json);
  } else if (opt.local.oracle.mode == SchurMode::user_table) {
    throw InputError("--schur-mode user-table needs --schur-table");
  }
  if (o.engine != "auto" && o.engine != "qe" && o.engine != "lattice") throw InputError("unknown engine " + o.engine);

  // cache key: everything that influences the report
  std::string cache_dir = o.cache_dir;
  if (const char* env = std::getenv("PERMRAT_CACHE")) cache_dir = env;
  Json key = {{"group", group_hash(g)}, {"targets", o.targets}, {"engine", o.engine}, {"schur", to_string(opt.local.oracle.mode)},
              {"table", table_json}, {"assert", !o.no_assert}, {"theta", o.theta}, {"seed", o.seed}};
  const std::string key_hash = [&] {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : key.dump()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
  }();
  fs::path cache_file;
  if (!cache_dir.empty()) {
    cache_file = fs::path(cache_dir) / (key_hash + ".json");
    if (fs::exists(cache_file)) return read_json_file(cache_file);
  }

  Json report = {{"group", group_json(g)}, {"input", spec}, {"hash", group_hash(g)}, {"seed", o.seed}};
  report["group"]["solvable"] = g.is_solvable();
  std::optional<CHResult> qe;
  auto get_qe = [&]() -> const CHResult& {
    if (!qe) qe = compute_ch(g, opt);
    return *qe;
  };
  std::optional<RationalTable> table;
  auto get_table = [&]() -> const RationalTable& {
    if (!table) table = rational_table(g);
    return *table;
  };
  Json results = Json::object();
  for (const auto& t : o.targets) {
    if (t == "chat" || t == "c") {
      if (o.engine == "lattice") {
        if (t == "c") throw UnsupportedError("the lattice engine computes CH only");
        if (!baseline_supported(g)) throw UnsupportedError("lattice engine: group outside the supported range");
        auto b = baseline_lattice_engine(g, get_table());
        results["chat"] = {{"engine", "lattice"},
                           {"CH", finab_json(b.ch)},
                           {"diagonal", b.diagonal},
                           {"row_gcds", b.row_gcds},
                           {"subgroup_classes", b.subgroup_classes},
                           {"modular_prime", get_table().prime}};
        continue;
      }
      auto j = ch_result_json(get_qe(), opt, true);
      if (t == "chat") {
        j.erase("C");
        results["chat"] = j;
      } else {
        Json c = j["C"];
        c["warnings"] = j["warnings"];
        if (opt.local.oracle.mode == SchurMode::fs_heuristic)
          c["provenance"] = "Schur indices from the Frobenius-Schur heuristic (exact for p-groups)";
        else if (opt.local.oracle.mode == SchurMode::user_table)
          c["provenance"] = table_json.value("provenance", std::string("user table"));
        else
          c["provenance"] = "all Schur indices taken to be 1";
        results["c"] = c;
      }
    } else if (t == "perm-test") {
      if (o.theta.empty()) throw InputError("perm-test needs --theta (coordinates in the rational character table)");
      IntVector theta;
      for (auto x : parse_int_list(o.theta)) theta.push_back(x);
      auto pt = is_virtual_permutation(get_table(), get_qe(), theta);
      Json j = {{"is_virtual_permutation", pt.is_perm},
                {"obstructions", pt.obstructions},
                {"order_in_CH", order_in_ch(get_table(), get_qe(), theta)}};
      if (pt.subgroup_combination) {
        std::vector<std::string> comb;
        for (const auto& x : *pt.subgroup_combination) comb.push_back(x.str());
        j["subgroup_combination"] = comb;
      }
      results["perm-test"] = j;
    } else if (t == "perm-basis") {
      auto basis = perm_basis(get_table(), get_qe());
      Json rows = Json::array();
      for (const auto& v : basis) {
        std::vector<std::string> r;
        for (const auto& x : v) r.push_back(x.str());
        rows.push_back(r);
      }
      Json tab = Json::array();
      for (const auto& row : get_table().rows)
        tab.push_back({{"values", row.values}, {"degree", row.degree}, {"field_degree", row.field_degree}, {"fs", row.fs}});
      results["perm-basis"] = {{"basis", rows},
                               {"index", lattice_index(basis, get_table().size()).str()},
                               {"rational_table", tab},
                               {"modular_prime", get_table().prime}};
    } else if (t == "local-report") {
      Json parts = Json::array();
      for (const auto& part : get_qe().parts) {
        Json locs = Json::array();
        for (const auto& l : part.locals) locs.push_back(local_json(l));
        parts.push_back({{"p", part.p}, {"locals", locs}, {"glue_matrix_size", part.glue.labels.size()}});
      }
      results["local-report"] = parts;
    } else {
      throw InputError("unknown target '" + t + "'");
    }
  }
  report["results"] = results;
  if (!cache_file.empty()) {
    fs::create_directories(cache_file.parent_path());
    std::ofstream(cache_file) << report.dump(1) << "\n";
  }
  return report;
}

void print_compute(const Json& r) {
  const auto& g = r["group"];
  std::cout << "group: order " << g["order"].get<std::string>() << ", degree " << g["degree"] << "\n";
  const auto& res = r["results"];
  if (res.contains("chat")) {
    std::cout << "CH(G) = " << res["chat"]["CH"]["structure"].get<std::string>() << "  [engine "
              << res["chat"]["engine"].get<std::string>() << "]\n";
    if (res["chat"].contains("diagonal")) std::cout << "Perm diagonal in the Berz basis: " << res["chat"]["diagonal"] << "\n";
  }
  if (res.contains("c"))
    std::cout << "C(G)  = " << res["c"]["structure"].get<std::string>() << "  [schur " << res["c"]["schur_mode"].get<std::string>()
              << "]\n";
  if (res.contains("perm-test"))
    std::cout << "virtual permutation character: " << (res["perm-test"]["is_virtual_permutation"].get<bool>() ? "yes" : "no")
              << " (order " << res["perm-test"]["order_in_CH"] << " in CH)\n";
  if (res.contains("perm-basis"))
    std::cout << "Perm(G) basis of " << res["perm-basis"]["basis"].size() << " vectors, index "
              << res["perm-basis"]["index"].get<std::string>() << "\n";
  if (res.contains("local-report"))
    for (const auto& part : res["local-report"])
      for (const auto& l : part["locals"])
        std::cout << "p=" << part["p"] << " |Q|=" << l["order"].get<std::string>() << " |C|=" << l["c_order"]
                  << " CH(Q)=" << l["CH"]["structure"].get<std::string>() << " C(Q)=" << l["C"]["structure"].get<std::string>()
                  << "\n";
  for (const auto& key : {"chat", "c"})
    if (res.contains(key) && res[key].contains("warnings"))
      for (const auto& w : res[key]["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
}

int run_corpus(const std::string& suite, const std::string& fixture_dir, bool json, bool no_assert) {
  GlueOptions opt;
  opt.local.assert_identities = !no_assert;
  bool ok = true;
  Json out;
  if (suite == "engines") {
    auto rows = run_engines(load_corpus(fs::path(fixture_dir) / "corpus.json"), opt);
    Json a = Json::array();
    for (const auto& r : rows) {
      ok = ok && r.pass;
      Json j = {{"name", r.name}, {"order", r.order}, {"qe", r.qe.invariants}, {"pass", r.pass}};
      if (r.baseline) {
        j["baseline"] = r.baseline->invariants;
        j["diagonal"] = r.diagonal;
      }
      if (!r.error.empty()) j["error"] = r.error;
      a.push_back(j);
      if (!json)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " |G|=" << r.order << " qe=" << r.qe.to_string()
                  << " baseline=" << (r.baseline ? r.baseline->to_string() : std::string("-"))
                  << (r.baseline && !r.diagonal ? " (non-diagonal)" : "") << (r.error.empty() ? "" : " error: " + r.error)
                  << "\n";
    }
    out = {{"suite", suite}, {"rows", a}};
  } else if (suite == "paper-section5") {
    auto rows = run_linear_suite(fixture_dir, opt);
    Json a = Json::array();
    for (const auto& r : rows) {
      ok = ok && r.pass;
      Json j = {{"family", r.family}, {"q", r.q}, {"order", r.order}, {"CH", r.ch.invariants}, {"C", r.c.invariants}, {"pass", r.pass}};
      if (!r.error.empty()) j["error"] = r.error;
      a.push_back(j);
      if (!json)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.family << "(" << r.q << ") |G|=" << r.order << " CH=" << r.ch.to_string()
                  << " C=" << r.c.to_string() << (r.error.empty() ? "" : " error: " + r.error) << "\n";
    }
    out = {{"suite", suite}, {"rows", a}};
  } else if (suite == "paper-section6") {
    auto s = run_certificate_suite();
    ok = s.all_valid;
    Json certs = Json::array();
    for (const auto& c : s.certificates) {
      certs.push_back({{"k", c.k}, {"p", c.p}, {"case", c.case_tag}, {"claimed_divisor", c.claimed_divisor},
                       {"certified_divisor", c.certified_divisor}, {"valid", c.valid}});
      if (!json)
        std::cout << (c.valid ? "PASS " : "FAIL ") << "PSL_" << c.k << "(F_" << c.p << ") case " << c.case_tag << " divisor "
                  << c.claimed_divisor << "\n";
    }
    out = {{"suite", suite}, {"certificates", certs}, {"scan_divisors", s.divisors_seen}, {"all_valid", s.all_valid}};
    if (!json) {
      std::cout << "scan k <= 16, p <= 97: divisors";
      for (auto d : s.divisors_seen) std::cout << " " << d;
      std::cout << "\n";
    }
  } else {
    throw InputError("unknown suite '" + suite + "' (engines, paper-section5, paper-section6)");
  }
  if (json) std::cout << out.dump(1) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permrat: rational characters modulo permutation characters"};
  app.require_subcommand(1);

  ComputeOptions co;
  auto* compute = app.add_subcommand("compute", "compute CH(G), C(G), Perm(G) membership and local data");
  add_group_options(compute, co.src);
  compute->add_option("--target", co.targets, "chat, c, perm-test, perm-basis, local-report, psl-cert (repeatable)");
  compute->add_option("--engine", co.engine, "auto, qe or lattice");
  compute->add_option("--schur-mode", co.schur_mode, "constant1, fs-heuristic or user-table");
  compute->add_option("--schur-table", co.schur_table, "Schur table JSON (implies user-table)");
  compute->add_option("--cache-dir", co.cache_dir, "result cache directory (PERMRAT_CACHE overrides)");
  compute->add_option("--theta", co.theta, "perm-test input: comma separated coordinates in the rational table");
  compute->add_option("--seed", co.seed, "recorded in the report; results do not depend on it");
  compute->add_flag("--no-assert", co.no_assert, "skip the dual-route identity checks");
  compute->add_flag("--json", co.json, "JSON output");
  int psl_k = 0;
  std::int64_t psl_p = 0;
  compute->add_option("--k", psl_k, "psl-cert: k");

  bool cert_json = false;
  auto* cert = app.add_subcommand("psl-cert", "2-adic certificate for the exponent of CH(PSL_k(F_p))");
  cert->add_option("--k", psl_k, "k")->required();
  cert->add_option("--p", psl_p, "p")->required();
  cert->add_flag("--json", cert_json, "JSON output");

  std::string suite, fixture_dir = PERMRAT_FIXTURE_DIR;
  bool corpus_json = false, corpus_no_assert = false;
  auto* corpus = app.add_subcommand("corpus", "run a fixture suite");
  corpus->add_option("suite", suite, "engines, paper-section5 or paper-section6")->required();
  corpus->add_option("--fixtures", fixture_dir, "fixture directory");
  corpus->add_flag("--json", corpus_json, "JSON output");
  corpus->add_flag("--no-assert", corpus_no_assert, "skip the dual-route identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) {
      auto& targets = co.targets;
      std::optional<Json> cert_result;
      bool want_cert = std::find(targets.begin(), targets.end(), "psl-cert") != targets.end();
      if (want_cert) {
        targets.erase(std::remove(targets.begin(), targets.end(), "psl-cert"), targets.end());
        if (!psl_k || !co.src.p) throw InputError("psl-cert target needs --k and --p");
        auto c = psl_certificate(psl_k, co.src.p);
        if (targets.empty()) {
          std::cout << psl_certificate_json(c).dump(1) << "\n";
          return c.valid ? 0 : 4;
        }
        cert_result = psl_certificate_json(c);
      }
      Json r = run_compute(co);
      if (cert_result) r["results"]["psl-cert"] = *cert_result;
      if (co.json)
        std::cout << r.dump(1) << "\n";
      else
        print_compute(r);
      return 0;
    }
    if (*cert) {
      auto c = psl_certificate(psl_k, psl_p);
      if (cert_json) {
        std::cout << psl_certificate_json(c).dump(1) << "\n";
      } else {
        std::cout << "PSL_" << c.k << "(F_" << c.p << "): case " << c.case_tag << ", claimed divisor " << c.claimed_divisor
                  << ", certified divisor " << c.certified_divisor << ", " << (c.valid ? "valid" : "INVALID") << "\n";
        for (const auto& i : c.identities)
          std::cout << "  " << (i.holds ? "ok   " : "FAIL ") << i.name << ": " << i.lhs << " = " << i.rhs << "\n";
      }
      return c.valid ? 0 : 4;
    }
    if (*corpus) return run_corpus(suite, fixture_dir, corpus_json, corpus_no_assert);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
