#pragma once

// Fixture corpus and the suites run by `permrat corpus`: engine equivalence,
// the 2x2 linear groups, and the PSL_k certificates.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "glue.hpp"
#include "io.hpp"

namespace permrat {

struct CorpusEntry {
  std::string name;
  Json spec;
  std::string provenance;
  std::optional<std::vector<std::int64_t>> expected_ch, expected_c;
};

inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  auto j = read_json_file(path);
  std::vector<CorpusEntry> out;
  for (const auto& e : j.at("groups")) {
    CorpusEntry c{e.at("name").get<std::string>(), e.at("spec"), e.value("provenance", ""), {}, {}};
    if (e.contains("expected_ch")) c.expected_ch = e.at("expected_ch").get<std::vector<std::int64_t>>();
    if (e.contains("expected_c")) c.expected_c = e.at("expected_c").get<std::vector<std::int64_t>>();
    out.push_back(std::move(c));
  }
  return out;
}

struct EngineRow {
  std::string name;
  std::string order;
  FinAb qe;
  std::optional<FinAb> baseline;
  bool diagonal = true;
  bool pass = false;
  double seconds = 0;
  std::string error;
};

/// compute_ch against the full-lattice baseline wherever the baseline runs.
inline std::vector<EngineRow> run_engines(const std::vector<CorpusEntry>& entries, const GlueOptions& opt) {
  return parallel_map<EngineRow>(entries.size(), [&](std::size_t i) {
    EngineRow row;
    row.name = entries[i].name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Group g = group_from_json(entries[i].spec);
      row.order = g.order().str();
      auto r = compute_ch(g, opt);
      row.qe = r.ch;
      row.pass = r.warnings.empty();
      if (baseline_supported(g)) {
        auto b = baseline_lattice_engine(g, rational_table(g));
        row.baseline = b.ch;
        row.diagonal = b.diagonal;
        row.pass = row.pass && b.ch == r.ch;
      }
      if (entries[i].expected_ch) row.pass = row.pass && r.ch.invariants == *entries[i].expected_ch;
    } catch (const std::exception& e) {
      row.error = e.what();
      row.pass = false;
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
  });
}

struct LinearRow {
  std::string family;
  std::int64_t q = 0;
  std::string order;
  FinAb ch, c;
  std::optional<FinAb> expected_ch, expected_c;
  bool pass = false;
  std::string error;
};

inline Group linear_group(const std::string& family, std::int64_t q) {
  if (family == "GL2") return gl2(q);
  if (family == "PGL2") return pgl2(q);
  if (family == "SL2") return sl2(q);
  if (family == "PSL2") return psl2(q);
  throw InputError("unknown linear family " + family);
}

/// The 2x2 linear groups with the values stated for them; SL2(17) uses the shipped Schur table for C.
inline std::vector<LinearRow> run_linear_suite(const std::filesystem::path& fixture_dir, const GlueOptions& base) {
  struct Job {
    std::string family;
    std::int64_t q;
    std::optional<FinAb> ch, c;
    bool table = false;
  };
  std::vector<Job> jobs;
  const FinAb trivial{};
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11}) jobs.push_back({"GL2", q, trivial, trivial});
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11}) jobs.push_back({"PGL2", q, trivial, trivial});
  for (std::int64_t q : {4, 5, 7, 8, 9, 11, 13}) jobs.push_back({"PSL2", q, trivial, trivial});
  jobs.push_back({"SL2", 3, FinAb{{2}}, trivial});
  for (std::int64_t q : {5, 7, 9, 11, 13}) jobs.push_back({"SL2", q, std::nullopt, std::nullopt});
  jobs.push_back({"SL2", 17, std::nullopt, FinAb{{4}}, true});
  return parallel_map<LinearRow>(jobs.size(), [&](std::size_t i) {
    const auto& job = jobs[i];
    LinearRow row{job.family, job.q, "", {}, {}, job.ch, job.c, false, ""};
    try {
      GlueOptions opt = base;
      if (job.table) opt.local.oracle = schur_table_from_json(read_json_file(fixture_dir / "schur" / "sl2_17.json"));
      Group g = linear_group(job.family, job.q);
      row.order = g.order().str();
      auto r = compute_ch(g, opt);
      row.ch = r.ch;
      row.c = r.c;
      row.pass = r.warnings.empty() && (!job.ch || r.ch == *job.ch) && (!job.c || r.c == *job.c);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
}

struct CertificateSuite {
  std::vector<PSLCertificate> certificates;  // even k in [4,12], odd p <= 37
  std::vector<PSLScanRow> scan;              // k <= 16, p <= 97
  std::vector<std::int64_t> divisors_seen;
  bool all_valid = true;
};

inline CertificateSuite run_certificate_suite() {
  CertificateSuite s;
  for (int k = 4; k <= 12; k += 2)
    for (std::int64_t p = 3; p <= 37; p += 2)
      if (nt::is_prime(p)) {
        s.certificates.push_back(psl_certificate(k, p));
        s.all_valid = s.all_valid && s.certificates.back().valid;
      }
  s.scan = psl_family_scan(16, 97);
  for (const auto& r : s.scan) {
    s.all_valid = s.all_valid && r.valid;
    if (std::find(s.divisors_seen.begin(), s.divisors_seen.end(), r.claimed_divisor) == s.divisors_seen.end())
      s.divisors_seen.push_back(r.claimed_divisor);
  }
  std::sort(s.divisors_seen.begin(), s.divisors_seen.end());
  return s;
}

}  // namespace permrat
