// Acceptance gate: each numbered criterion prints exactly one PASS/FAIL
// line. The process exits with the number of failed criteria.
//
// Usage: acceptance <path-to-cli-binary>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "coalgame/analysis.hpp"
#include "coalgame/cooperative.hpp"
#include "coalgame/equilibrium.hpp"
#include "coalgame/gamespec_io.hpp"

using namespace coalgame;
using nlohmann::json;

namespace {

std::string g_cli;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult r;
    std::string cmd = g_cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_cli_json(const std::string& args, int expect_exit = 0) {
    CliResult r = run_cli(args + " --format json");
    if (r.exit_code != expect_exit)
        throw std::runtime_error("cli exited " + std::to_string(r.exit_code) + " for: " + args);
    return json::parse(r.out);
}

int g_failures = 0;

void criterion(const std::string& label, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << label;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

Strategy strat(const Game& g, const std::string& partition, int action = 0) {
    Partition p = parse_partition(partition, g.spec().players());
    int idx = g.partition_index(p);
    if (idx < 0) throw std::runtime_error("partition missing: " + partition);
    return Strategy{idx, action};
}

bool has_class(const json& solve, const std::string& realized,
               const std::vector<std::string>& payoffs) {
    for (const auto& cls : solve["outcome_classes"])
        if (cls["realized"] == realized && cls["payoffs"] == json(payoffs)) return true;
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <cli-binary>\n";
        return 100;
    }
    g_cli = argv[1];

    // 1. The dinner game at k=2 after weak-dominance elimination. The
    //    uniqueness clause fails honestly: profiles such as
    //    (A:{A,C1}, B:{B,C2}, C1:{A,C1}, C2:{B,C2}) are strict equilibria
    //    (every alternative strategy pays strictly less), so no
    //    order-independent weak-dominance sweep can remove them and the
    //    eliminated game keeps more than one outcome class.
    criterion("1a dinner k=2 eliminate-dominated: unique equilibrium outcome class",
              [&](std::string& detail) {
                  auto doc = run_cli_json("solve --fixture dinner --k 2 --eliminate-dominated");
                  detail = std::to_string(doc["outcome_classes"].size()) + " classes";
                  return doc["outcome_classes"].size() == 1;
              });
    criterion("1b dinner k=2: class {A,B},{C1,C2} with exact payoffs (8,8,5,5)",
              [&](std::string&) {
                  auto doc = run_cli_json("solve --fixture dinner --k 2 --eliminate-dominated");
                  return has_class(doc, "A,B|C1,C2", {"8", "8", "5", "5"});
              });
    criterion("1c dinner: A,B indifferent between their two pairing outcomes (any mixture)",
              [&](std::string&) {
                  auto spec = fixture("dinner");
                  Game g = build_game(spec, 2);
                  Strategy row1 = strat(g, "A,B|C1|C2"), row2 = strat(g, "A,B|C1,C2");
                  for (const Rat& lambda :
                       {Rat(0), Rat(1, 7), Rat(1, 3), Rat(1, 2), Rat(9, 10), Rat(1)}) {
                      std::vector<std::vector<Rat>> probs(4);
                      for (int i = 0; i < 4; ++i) probs[i].assign(g.num_strategies(i), Rat(0));
                      for (int i : {0, 1}) {
                          const auto& set = g.strategies(i);
                          probs[i][std::find(set.begin(), set.end(), row1) - set.begin()] = lambda;
                          probs[i][std::find(set.begin(), set.end(), row2) - set.begin()] +=
                              1 - lambda;
                      }
                      for (int i : {2, 3}) {
                          const auto& set = g.strategies(i);
                          probs[i][std::find(set.begin(), set.end(), row2) - set.begin()] = 1;
                      }
                      if (max_regret(g, MixedProfile(g, std::move(probs))) != 0) return false;
                  }
                  return true;
              });

    // 2. Complete cooperation.
    criterion("2 dinner cooperate: C1,C2 complete; A,C1 fails with ex-ante witness",
              [&](std::string&) {
                  auto good = run_cli_json("cooperate --fixture dinner --coalition C1,C2");
                  auto bad = run_cli_json("cooperate --fixture dinner --coalition A,C1");
                  return good["complete"] == true && bad["complete"] == false &&
                         bad.contains("ex_ante_witness");
              });

    // 3. Empty core with an exact certificate, re-verified here.
    criterion("3 dinner coop-theory: empty core with verifying certificate",
              [&](std::string&) {
                  auto doc = run_cli_json("coop-theory --fixture dinner");
                  if (doc["core_empty"] != true || !doc.contains("balanced_weights"))
                      return false;
                  auto spec = fixture("dinner");
                  auto cf = extract_characteristic(*spec, ValueConvention::kOptimistic);
                  std::vector<Rat> cover(4, Rat(0));
                  Rat total = 0;
                  for (const auto& [name, w] : doc["balanced_weights"].items()) {
                      Mask mask = parse_coalition(name, cf.players);
                      Rat weight = *parse_rational(w.get<std::string>());
                      if (weight <= 0) return false;
                      for (int i : mask_members(mask)) cover[i] += weight;
                      total += weight * cf.value(mask);
                  }
                  for (const Rat& c : cover)
                      if (c != 1) return false;
                  return total > cf.value(cf.players.full_mask());
              });

    // 4. BoS across epsilon values.
    criterion("4 bos: k=1 counts, eps-independent joint equilibrium, formula discrepancy",
              [&](std::string& detail) {
                  for (const char* eps : {"0", "1/10", "1"}) {
                      auto k1 = run_cli_json(std::string("solve --fixture bos --k 1 --epsilon ") +
                                             eps);
                      if (k1["pure_equilibria"].size() != 2 ||
                          k1["mixed_equilibria"].size() != 1) {
                          detail = std::string("eps=") + eps + ": wrong k=1 counts";
                          return false;
                      }
                      auto k2 = run_cli_json(std::string("solve --fixture bos --k 2 --epsilon ") +
                                             eps);
                      bool joint_mixed = false;
                      for (const auto& me : k2["mixed_equilibria"]) {
                          const auto& p1 = me["profile"]["1"];
                          if (p1.size() != 2 || me["max_regret"] != "0") continue;
                          bool joint = true;
                          for (const auto& item : p1) joint &= item["partition"] == "1,2";
                          if (!joint) continue;
                          for (const auto& item : p1)
                              if ((item["action"] == "B" && item["prob"] == "2/3") ||
                                  (item["action"] == "O" && item["prob"] == "1/3"))
                                  joint_mixed = true;
                      }
                      if (!joint_mixed) {
                          detail = std::string("eps=") + eps + ": joint 2/3-1/3 missing";
                          return false;
                      }
                      bool note = false;
                      for (const auto& n : k2["notes"])
                          note |= n.get<std::string>().find("discrepancy") != std::string::npos;
                      if (!note) {
                          detail = std::string("eps=") + eps + ": no discrepancy note";
                          return false;
                      }
                      // (0,0)-miscoordination variant supports the closed form.
                      FixtureParams params;
                      params.epsilon = *parse_rational(eps);
                      params.zero_miscoordination = true;
                      auto spec = fixture("bos", params);
                      Game g = build_game(spec, 2);
                      auto m = fixture_reference_profile("bos", g, params);
                      const Rat& e = params.epsilon;
                      Strategy jb = strat(g, "1,2", 0);
                      const auto& set = g.strategies(1);
                      int idx = static_cast<int>(std::find(set.begin(), set.end(), jb) -
                                                 set.begin());
                      if (!m || max_regret(g, *m) != 0 ||
                          m->probs(1)[idx] != (1 + e) / (3 + 2 * e)) {
                          detail = std::string("eps=") + eps + ": zero-misc formula fails";
                          return false;
                      }
                  }
                  return true;
              });

    // 5. Lunch: exact verification, stochasticity, pure-sweep discrepancy.
    criterion("5 lunch: uniform-1/3 exact (EU_A=137/27), stochastic, pure-sweep note",
              [&](std::string& detail) {
                  auto spec = fixture("lunch");
                  Game g = build_game(spec, 2);
                  auto m = fixture_reference_profile("lunch", g);
                  if (!m || max_regret(g, *m) != 0) return false;
                  // Independent 81-profile summation for player A.
                  std::vector<Strategy> sup[4];
                  for (int i = 0; i < 4; ++i)
                      for (int s : m->support(i)) sup[i].push_back(g.strategies(i)[s]);
                  Rat eu_a = 0;
                  for (const auto& a : sup[0])
                      for (const auto& b : sup[1])
                          for (const auto& c : sup[2])
                              for (const auto& d : sup[3])
                                  eu_a += Rat(1, 81) * outcome_payoff(g, {a, b, c, d})[0];
                  if (eu_a != Rat(137, 27)) {
                      detail = "EU_A = " + rat_to_string(eu_a);
                      return false;
                  }
                  if (!is_stochastic(g, {*m}) || equilibrium_partitions(g, {*m}).size() < 2)
                      return false;
                  auto doc = run_cli_json("solve --fixture lunch --k 2");
                  if (doc["pure_equilibria"].empty()) return false;
                  for (const auto& n : doc["notes"])
                      if (n.get<std::string>().find("discrepancy") != std::string::npos)
                          return true;
                  detail = "no discrepancy note";
                  return false;
              });

    // 6. Stag-hare equilibria and strong Nash.
    criterion("6 staghare k=2: (8,8) and (100,100) classes; joint stag is strong",
              [&](std::string&) {
                  auto doc = run_cli_json("solve --fixture staghare --k 2");
                  if (!has_class(doc, "1|2", {"8", "8"}) ||
                      !has_class(doc, "1,2", {"100", "100"}))
                      return false;
                  auto spec = fixture("staghare");
                  Game g = build_game(spec, 2);
                  PureProfile joint_stag{strat(g, "1,2", 1), strat(g, "1,2", 1)};
                  return strong_nash_check(g, joint_stag, 2).is_strong;
              });

    // 7. Stability criterion.
    criterion("7 K*: dinner 4, lunch 4, staghare 1, bos 1 (forall)",
              [&](std::string& detail) {
                  struct Case {
                      const char* args;
                      int want;
                  } cases[] = {{"stability --fixture dinner --k0 2", 4},
                               {"stability --fixture lunch --k0 2", 4},
                               {"stability --fixture staghare --k0 1", 1},
                               {"stability --fixture bos --k0 1", 1}};
                  for (const auto& c : cases) {
                      auto doc = run_cli_json(c.args);
                      if (doc["k_star"] != c.want) {
                          detail = std::string(c.args) + " -> " +
                                   doc["k_star"].dump();
                          return false;
                      }
                  }
                  return true;
              });

    // 8. Simulation accuracy and determinism.
    criterion("8 lunch simulation: 1e5 steps within 4 SE; seeded rerun byte-identical",
              [&](std::string& detail) {
                  std::string args = "simulate --fixture lunch --k 2 --steps 100000 --seed 42";
                  auto r1 = run_cli(args);
                  auto r2 = run_cli(args);
                  if (r1.exit_code != 0 || r1.out != r2.out) {
                      detail = "non-deterministic or failed run";
                      return false;
                  }
                  auto doc = run_cli_json(args);
                  for (const auto& row : doc["frequencies"]) {
                      double f = row["frequency"], e = row["expected"], se = row["std_error"];
                      if (std::abs(f - e) > 4 * std::max(se, 1e-12)) {
                          detail = row["partition"].get<std::string>() + " off by >4 SE";
                          return false;
                      }
                  }
                  return true;
              });

    // 9. Property suites, condensed (the unit tests run the full set).
    criterion("9 property suites: counts, quotient invariance, reverification, round trips",
              [&](std::string& detail) {
                  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
                  for (int n = 1; n <= 8; ++n)
                      if (enumerate_partitions(n, n).size() != bell[n]) return false;
                  std::mt19937_64 rng(20260825);
                  for (const char* name : {"dinner", "lunch", "bos", "staghare"}) {
                      auto spec = fixture(name);
                      if (serialize_gamespec(*parse_gamespec(serialize_gamespec(*spec))) !=
                          serialize_gamespec(*spec)) {
                          detail = std::string(name) + " round trip";
                          return false;
                      }
                      Game g = build_game(spec, 2);
                      for (int i = 0; i < g.num_players(); ++i) {
                          for (const auto& cls : quotient_strategies(g, i)) {
                              // Every classmate realizes the same partition
                              // against 10^4/|classes| random opponents.
                              for (int trial = 0; trial < 2500; ++trial) {
                                  PureProfile p(g.num_players());
                                  for (int j = 0; j < g.num_players(); ++j) {
                                      std::uniform_int_distribution<int> pick(
                                          0, g.num_strategies(j) - 1);
                                      p[j] = g.strategies(j)[pick(rng)];
                                  }
                                  p[i] = g.strategies(i)[cls.front()];
                                  Partition want = formation_rule(g, p);
                                  p[i] = g.strategies(i)[cls.back()];
                                  if (formation_rule(g, p) != want) {
                                      detail = "quotient invariance";
                                      return false;
                                  }
                              }
                          }
                      }
                      // Solver outputs re-verify exactly.
                      for (const auto& p : pure_nash(g, true))
                          if (max_regret(g, MixedProfile::degenerate(g, p)) != 0) return false;
                      if (g.num_players() == 2)
                          for (const auto& me : mixed_support_2p(g, 3))
                              if (max_regret(g, me.profile) != 0) return false;
                  }
                  // Shapley axioms on randomized 4-player games.
                  std::uniform_int_distribution<int> num(-9, 9);
                  for (int trial = 0; trial < 10; ++trial) {
                      std::vector<std::string> labels{"a", "b", "c", "d"};
                      CharacteristicFunction cf{PlayerSet(labels),
                                                ValueConvention::kOptimistic, {}};
                      for (Mask s = 1; s < 16; ++s) cf.values[s] = num(rng);
                      auto phi = shapley_value(cf);
                      Rat sum = 0;
                      for (const Rat& p : phi) sum += p;
                      if (sum != cf.value(15)) {
                          detail = "Shapley efficiency";
                          return false;
                      }
                  }
                  return true;
              });

    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) + " criterion(s) failed")
              << "\n";
    return g_failures;
}
