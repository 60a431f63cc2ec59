// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ucactus/ucactus.hpp"

using namespace ucactus;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  int trials = 0;
  int failures = 0;
  std::string first;

  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
};

bool report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string summary(const Tally& t) {
  std::ostringstream os;
  os << t.trials << " trials, " << t.failures << " failures";
  if (t.failures) os << "; first: " << t.first;
  return os.str();
}

GenParams random_params(std::mt19937_64& rng, int max_cycles, int fixed_m = 0, double edge_rate = 0.0) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  GenParams p;
  p.seed = rng();
  p.vertex_count = uniform(1, 12);
  p.cycle_count = uniform(0, std::min(max_cycles, (p.vertex_count - 1) / 2));
  p.n = uniform(1, 5);
  p.m = fixed_m > 0 ? fixed_m : uniform(1, std::min(3, p.vertex_count));
  p.min_length = 1;
  p.max_length = 10;
  p.min_weight = 1;
  p.max_weight = 5;
  p.edge_location_rate = edge_rate;
  return p;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

// Solver against oracle for value, decisions and witnesses.
void check_instance(const Instance& inst, const std::string& tag, Tally& value, Tally& decisions, Tally& witnesses) {
  ++value.trials;
  ++decisions.trials;
  ++witnesses.trials;
  const Solution ref = oracle_solve(inst);
  const Solution sol = solve(inst);
  if (!close(sol.lambda, ref.lambda, 1e-6)) {
    value.fail(tag + " solve " + std::to_string(sol.lambda) + " oracle " + std::to_string(ref.lambda));
  }
  if (objective(inst, sol.q1, sol.q2) > sol.lambda + 1e-6) witnesses.fail(tag + " solve witness");
  const ReducedInstance red = reduce_instance(inst);
  const double L = ref.lambda, d = std::max(1e-3, 1e-3 * L);
  for (double lam : {0.5 * L, L - d, L, L + d, 2.0 * L}) {
    if (lam < 0.0) continue;
    const Verdict v = decide(red.instance, lam);
    if (v.feasible != oracle_decide(inst, lam).feasible) decisions.fail(tag + " lambda " + std::to_string(lam));
    if (v.feasible) {
      const GraphPoint a = lift_point(red, v.centers->first), b = lift_point(red, v.centers->second);
      if (objective(inst, a, b) > lam + 1e-6) witnesses.fail(tag + " decide witness at " + std::to_string(lam));
    }
  }
}

}  // namespace

namespace {

bool criteria_1_to_3() {
  std::mt19937_64 rng(20240601);
  Tally value, decisions, witnesses;
  const auto t0 = Clock::now();
  for (int i = 0; i < 500; ++i) {
    const GenParams p = random_params(rng, 3);
    check_instance(generate_instance(p), "seed " + std::to_string(p.seed), value, decisions, witnesses);
  }
  const double secs = seconds_since(t0);
  bool ok = report(1, "solve matches oracle on random instances", value.failures == 0 && secs < 300.0,
                   summary(value) + ", " + std::to_string(secs) + " s");
  ok &= report(2, "decide matches oracle at five thresholds", decisions.failures == 0, summary(decisions));
  ok &= report(3, "witness centers attain the reported value", witnesses.failures == 0, summary(witnesses));
  return ok;
}

bool criterion_4() {
  std::mt19937_64 rng(777);
  Tally value, decisions, witnesses;
  for (int i = 0; i < 100; ++i) {
    const GenParams p = random_params(rng, 3, 1);
    check_instance(generate_instance(p), "m=1 seed " + std::to_string(p.seed), value, decisions, witnesses);
  }
  for (int i = 0; i < 100; ++i) {
    const GenParams p = random_params(rng, 0);
    check_instance(generate_instance(p), "tree seed " + std::to_string(p.seed), value, decisions, witnesses);
  }
  const bool ok = value.failures == 0 && decisions.failures == 0 && witnesses.failures == 0;
  return report(4, "deterministic points and trees match oracle", ok,
                summary(value) + " / decisions " + std::to_string(decisions.failures) + " / witnesses " +
                    std::to_string(witnesses.failures));
}

bool criterion_5() {
  std::mt19937_64 rng(4242);
  Tally t;
  int shrunk = 0;
  for (int i = 0; i < 100; ++i) {
    GenParams p = random_params(rng, 3, 0, 0.35);
    p.vertex_count = std::max(p.vertex_count, 6);
    p.cycle_count = std::min(p.cycle_count, (p.vertex_count - 1) / 2);
    const Instance inst = generate_instance(p);
    const ReducedInstance red = reduce_instance(inst);
    ++t.trials;
    if (red.instance.graph().vertex_count() != inst.graph().vertex_count()) ++shrunk;
    const std::string tag = "seed " + std::to_string(p.seed);
    const double a = oracle_solve(inst, {40, 8, 4}).lambda, b = oracle_solve(red.instance, {40, 8, 4}).lambda;
    if (std::abs(a - b) > 1e-9) t.fail(tag + " oracle values differ");
    const Solution s = solve(inst);
    if (std::abs(objective(inst, s.q1, s.q2) - a) > 1e-6 * std::max(1.0, a)) t.fail(tag + " lifted witness objective");
  }
  return report(5, "reduction preserves the optimum", t.failures == 0,
                summary(t) + ", " + std::to_string(shrunk) + " instances changed size");
}

Instance tri_fixture() {
  std::ifstream in(std::string(UCACTUS_SAMPLES) + "/tri.json");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

bool criterion_6() {
  const Instance inst = tri_fixture();
  const double lambda = solve(inst).lambda;
  const ReducedInstance red = reduce_instance(inst);
  const double oc = one_center(red.instance, unit_multipliers(red.instance)).value;
  const double med = median(red.instance, 0).value;
  const bool ok = std::abs(lambda - 0.5) <= 1e-9 && std::abs(oc - 1.5) <= 1e-9 && std::abs(med - 0.5) <= 1e-9;
  std::ostringstream os;
  os.precision(12);
  os << "lambda* " << lambda << ", one-center " << oc << ", median(P1) " << med;
  return report(6, "fixture values", ok, os.str());
}

bool criterion_7() {
  std::mt19937_64 rng(99);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Tally t;
  int stabbable = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = uniform(1, 8);
    std::vector<SegmentSet> sets(n);
    std::vector<double> ends;
    for (int k = 0; k < n; ++k) {
      sets[k].owner = k;
      sets[k].length = 20.0;
      std::vector<int> cuts;
      const int count = uniform(1, 4);
      for (int i = 0; i < 2 * count; ++i) cuts.push_back(uniform(0, 40));
      std::sort(cuts.begin(), cuts.end());
      for (int i = 0; i + 1 < 2 * count; i += 2) {
        if (!sets[k].intervals.empty() && cuts[i] <= sets[k].intervals.back().hi * 2) continue;
        sets[k].intervals.push_back({cuts[i] / 2.0, cuts[i + 1] / 2.0});
        ends.push_back(cuts[i] / 2.0);
        ends.push_back(cuts[i + 1] / 2.0);
      }
    }
    auto covers = [&](double p, double q) {
      for (const auto& s : sets) {
        if (!s.contains(p) && !s.contains(q)) return false;
      }
      return true;
    };
    bool brute = false;
    for (std::size_t i = 0; i < ends.size() && !brute; ++i)
      for (std::size_t j = i; j < ends.size() && !brute; ++j) brute = covers(ends[i], ends[j]);
    ++t.trials;
    const auto got = stab_two(sets);
    stabbable += brute;
    if (got.has_value() != brute) t.fail("family " + std::to_string(trial) + " existence");
    if (got && !covers(got->first, got->second)) t.fail("family " + std::to_string(trial) + " witness");
  }
  return report(7, "two-point stabbing matches endpoint-pair search", t.failures == 0,
                summary(t) + ", " + std::to_string(stabbable) + " stabbable");
}

// Mean solve time, repeating until enough wall time has accumulated.
double timed_solve(const Instance& inst, double& lambda) {
  int reps = 0;
  const auto t0 = Clock::now();
  do {
    lambda = solve(inst).lambda;
    ++reps;
  } while (seconds_since(t0) < 1.0 && reps < 1000);
  return seconds_since(t0) / reps;
}

bool criterion_8() {
  GenParams p;
  p.seed = 8;
  p.vertex_count = 200;
  p.cycle_count = 25;
  p.n = 40;
  p.m = 8;
  const Instance base = generate_instance(p);
  p.n = 80;
  const Instance doubled = generate_instance(p);
  double l1 = 0.0, l2 = 0.0;
  const auto t0 = Clock::now();
  solve(base);
  const double first = seconds_since(t0);
  const double t1 = timed_solve(base, l1);
  const double t2 = timed_solve(doubled, l2);
  const double ratio = t2 / t1;
  std::ostringstream os;
  os.precision(4);
  os << "n=40: " << first << " s (mean " << t1 << " s), n=80 mean " << t2 << " s, ratio " << ratio;
  return report(8, "scaling", first < 60.0 && ratio <= 6.0, os.str());
}

}  // namespace

int main() {
  int failed = 0;
  const std::vector<std::function<bool()>> checks{criteria_1_to_3, criterion_4, criterion_5,
                                                  criterion_6,     criterion_7, criterion_8};
  for (const auto& check : checks) {
    try {
      if (!check()) ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL criterion group: exception %s\n", e.what());
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
