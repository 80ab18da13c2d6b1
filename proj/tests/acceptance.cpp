// End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero exit
// when any of them fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "locmult/group.hpp"
#include "locmult/suite.hpp"

using namespace locmult;

namespace {

struct Part {
  std::string suite;
  std::string check;
  int count;
};

struct Outcome {
  bool ok = true;
  std::string note;
};

// Runs each part, requiring at least `count` rows (or any rows for
// whole-suite checks, marked with count 0) and no failures.
Outcome run_parts(const std::vector<Part>& parts, std::uint64_t seed) {
  Outcome out;
  for (const Part& p : parts) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.count = p.count > 0 ? p.count : 1;
    cfg.depth = 3;
    const Report r = run_check(p.suite, p.check, cfg);
    const std::size_t want = p.count > 0 ? static_cast<std::size_t>(p.count) : 1;
    const bool ok = r.passed() && r.rows.size() >= want;
    out.note += " " + p.check + "=" + std::to_string(r.rows.size() - r.failures()) + "/" +
                std::to_string(r.rows.size());
    if (!ok) {
      out.ok = false;
      for (const ReportRow& row : r.rows) {
        if (!row.passed) {
          out.note += " [" + row.check + "#" + std::to_string(row.instance_id) + ": " + row.witness + "]";
          break;
        }
      }
    }
  }
  return out;
}

struct Criterion {
  int id;
  double limit_seconds;  // 0 for no limit
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  constexpr std::uint64_t kSeed = 20240601;
  const std::vector<Criterion> criteria{
      {1, 30,
       [] {
         return run_parts({{"lattice", "group_laws", 10000},
                           {"lattice", "module_laws", 10000},
                           {"lattice", "lattice_laws", 10000}},
                          kSeed);
       }},
      {2, 0,
       [] {
         Outcome o;
         const std::vector<GElem> sample = generate_G(3, 24, kSeed);
         const std::vector<UrysohnTriple> grid = urysohn_grid(50);
         const GroupReport rep = verify_group_properties(sample, grid);
         // Triples with K outside V must be turned away; the rest must verify.
         std::size_t valid = 0, rejected = 0;
         for (const UrysohnTriple& t : grid) {
           if (!t.k.subset_of(t.v)) {
             ++rejected;
           } else if (check_urysohn(t.k, t.v, t.rho).empty()) {
             ++valid;
           }
         }
         o.ok = sample.size() >= 200 && grid.size() == 50 && valid + rejected == 50 && rep.failures() == 0;
         o.note = " sample=" + std::to_string(sample.size()) + " rows=" + std::to_string(rep.rows.size()) +
                  " failures=" + std::to_string(rep.failures()) + " urysohn_verified=" + std::to_string(valid) +
                  " urysohn_rejected=" + std::to_string(rejected);
         return o;
       }},
      {3, 120,
       [] {
         return run_parts({{"riesz", "decompose", 10000},
                           {"monoid", "cancellation", 10000},
                           {"monoid", "antisymmetry", 10000},
                           {"riesz", "prime_witness", 1000}},
                          kSeed);
       }},
      {4, 0,
       [] {
         return run_parts({{"intervals", "ifh_agreement", 1000},
                           {"intervals", "upward_direct", 500},
                           {"intervals", "approx_on_compact", 200},
                           {"intervals", "realize_sup", 500}},
                          kSeed);
       }},
      {5, 0, [] { return run_parts({{"intervals", "complement_split", 500}}, kSeed); }},
      {6, 0, [] { return run_parts({{"localization", "min_ideal", 200}}, kSeed); }},
      {7, 60,
       [] {
         return run_parts({{"monster", "certificates", 0},
                           {"monster", "property_c", 100},
                           {"monster", "interval_sum", 200},
                           {"monster", "truncation", 100},
                           {"monster", "tower", 0}},
                          kSeed);
       }},
      {8, 0,
       [] {
         SuiteConfig cfg;
         cfg.seed = kSeed;
         cfg.count = 20;
         const std::string a = run_suite("all", cfg).to_json();
         const std::string b = run_suite("all", cfg).to_json();
         Outcome o;
         o.ok = a == b && !a.empty();
         o.note = " bytes=" + std::to_string(a.size());
         return o;
       }},
  };

  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
    const bool ok = o.ok && in_time;
    all = all && ok;
    std::printf("criterion %d: %s (%.1fs%s)%s\n", c.id, ok ? "PASS" : "FAIL", secs,
                in_time ? "" : ", over time limit", o.note.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
