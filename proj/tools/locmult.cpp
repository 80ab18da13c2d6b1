// Command-line front end: runs the verification suites, builds monster
// stages and prints localization class reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "locmult/error.hpp"
#include "locmult/localization.hpp"
#include "locmult/monster.hpp"
#include "locmult/suite.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t seed_from(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("LOCMULT_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("LOCMULT_SEED is not an unsigned integer: ") + env);
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text << "\n";
  if (!out) throw UsageError("failed writing " + path);
}

void print_summary(const locmult::Report& rep) {
  std::map<std::pair<std::string, std::string>, std::pair<std::size_t, std::size_t>> tally;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : rep.rows) {
    const auto key = std::make_pair(r.suite, r.check);
    if (!tally.count(key)) order.push_back(key);
    auto& t = tally[key];
    ++t.second;
    if (r.passed) ++t.first;
  }
  for (const auto& key : order) {
    const auto& t = tally[key];
    std::cout << (t.first == t.second ? "ok   " : "FAIL ") << key.first << "." << key.second << "  "
              << t.first << "/" << t.second << "\n";
  }
  std::size_t shown = 0;
  for (const auto& r : rep.rows) {
    if (r.passed || shown >= 20) continue;
    ++shown;
    std::cout << "  " << r.suite << "." << r.check << "#" << r.instance_id << ": " << r.witness << "\n";
  }
  std::cout << (rep.passed() ? "PASS" : "FAIL") << ": " << rep.rows.size() - rep.failures() << "/"
            << rep.rows.size() << " checks passed\n";
}

int run_monster_build(const std::string& rho_text, const std::string& mu_text, int depth,
                      const std::string& out) {
  using namespace locmult;
  if (depth < 1) throw UsageError("--depth must be at least 1");
  const Rat rho = parse_rat(rho_text);
  const Rat mu = parse_rat(mu_text);
  const MElem f0 = MElem::checked(PwlFn::identity());
  const MonsterBuild mb = build_monster(f0, f0, rho, mu);
  const std::vector<TowerStage> stages = monster_tower(depth, fundamental_sequence(depth + 1), rho, mu);
  nlohmann::ordered_json j;
  j["build"] = nlohmann::ordered_json::parse(mb.to_json());
  j["stages"] = nlohmann::ordered_json::array();
  bool ok = true;
  for (const TowerStage& st : stages) {
    nlohmann::ordered_json s = nlohmann::ordered_json::parse(st.to_json());
    s["verified"] = st.verified();
    ok = ok && st.verified();
    j["stages"].push_back(s);
  }
  emit(j.dump(1), out);
  return ok ? kPass : kCheckFailure;
}

int run_localize(const std::string& base_text, const std::string& sup_text, const std::string& out) {
  using namespace locmult;
  const MElem base = MElem::checked(PwlFn::parse(base_text));
  const LocalClass c = make_class(IdealCtx(base), SupFn(PwlFn::parse(sup_text)));
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(c.to_json());
  if (c.is_zero()) {
    j["min_ideal_n"] = nullptr;
    emit(j.dump(), out);
    return kPass;
  }
  const MinIdealReport r = minimal_ideal_dominates(c);
  j["min_ideal_n"] = r.n.get_si();
  j["mu"] = to_string(r.mu);
  j["f_prime"] = r.f_prime.fn().to_string();
  j["verified"] = r.verified();
  emit(j.dump(), out);
  return r.verified() ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for piecewise-linear function monoids"};
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::optional<std::uint64_t> seed;
  int count = 100;
  int depth = 3;
  unsigned threads = 0;
  std::string suite = "all";
  std::string json_path;
  bool quiet = false;
  app.add_option("--seed", seed, "Random seed (falls back to LOCMULT_SEED, then 1)");
  app.add_option("--count", count, "Instances per randomized check");
  app.add_option("--depth", depth, "Generator depth and monster tower depth");
  app.add_option("--suite", suite, "lattice, group, monoid, riesz, intervals, localization, monster or all");
  app.add_option("--json", json_path, "Write the JSON report to this path");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_flag("--quiet", quiet, "Print nothing unless something fails to run");

  auto* monster = app.add_subcommand("monster", "Monster constructions");
  auto* build = monster->add_subcommand("build", "Build a monster and its tower");
  monster->require_subcommand(1);
  std::string rho = "1/2", mu = "1/4", out;
  int build_depth = 3;
  build->add_option("--rho", rho, "Accumulation point, a fraction in (0,1)");
  build->add_option("--mu", mu, "Initial slope, below 1/2");
  build->add_option("--depth", build_depth, "Tower depth");
  build->add_option("--out", out, "Output path (stdout if omitted)");

  auto* localize = app.add_subcommand("localize", "Report on one localization class");
  std::string base = "pwl[(0,0);(1,1)]", sup = "pwl[(0,0);(1,1)]", loc_out;
  localize->add_option("--base", base, "Base element f of M, f(0) = 0");
  localize->add_option("--sup", sup, "Sup function h");
  localize->add_option("--out", loc_out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (build->parsed()) return run_monster_build(rho, mu, build_depth, out);
    if (localize->parsed()) return run_localize(base, sup, loc_out);

    locmult::SuiteConfig cfg;
    cfg.seed = seed_from(seed);
    cfg.count = count;
    cfg.depth = depth;
    cfg.threads = threads;
    const locmult::Report rep = locmult::run_suite(suite, cfg);
    if (!json_path.empty()) {
      try {
        locmult::write_report(rep, json_path);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
    }
    if (!quiet) print_summary(rep);
    return rep.passed() ? kPass : kCheckFailure;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const locmult::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const locmult::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const locmult::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCheckFailure;
  }
}
