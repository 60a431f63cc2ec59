#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ucactus/ucactus.hpp"

using namespace ucactus;

namespace {

struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ValidationError, "cannot write '" + path + "'");
  out << text << "\n";
}

Instance load(const std::string& path, std::optional<double> eps = std::nullopt) {
  return parse_instance(read_file(path), eps);
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); }

json value_at(const Instance& inst, double value, const GraphPoint& q) {
  return {{"value", round12(value)}, {"point", point_to_json(inst.graph(), q)}};
}

int cmd_solve(const std::string& file, std::optional<double> eps, bool verify) {
  const Instance inst = load(file, eps);
  const Solution sol = solve(inst);
  json out = solution_json(inst, sol);
  if (verify) {
    try {
      const Solution ref = oracle_solve(inst);
      out["oracle_lambda_star"] = round12(ref.lambda);
      if (!close(sol.lambda, ref.lambda)) {
        std::cout << out.dump(2) << "\n";
        throw VerifyFailure("solver and oracle disagree");
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TooLargeForOracle) throw;
      out["oracle_lambda_star"] = nullptr;
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_decide(const std::string& file, double lambda) {
  const Instance inst = load(file);
  const ReducedInstance red = reduce_instance(inst);
  Verdict v = decide(red.instance, lambda);
  if (v.centers) v.centers = std::make_pair(lift_point(red, v.centers->first), lift_point(red, v.centers->second));
  std::cout << emit_verdict(inst, lambda, v) << "\n";
  return 0;
}

int cmd_one_center(const std::string& file) {
  const Instance inst = load(file);
  const ReducedInstance red = reduce_instance(inst);
  const OneCenter oc = one_center(red.instance, unit_multipliers(red.instance));
  std::cout << value_at(inst, oc.value, lift_point(red, oc.point)).dump(2) << "\n";
  return 0;
}

int cmd_median(const std::string& file, const std::string& id) {
  const Instance inst = load(file);
  int k = -1;
  for (int i = 0; i < inst.n(); ++i) {
    if (inst.points[i].id == id) k = i;
  }
  if (k < 0) throw Error(ErrorKind::ValidationError, "unknown point '" + id + "'");
  const ReducedInstance red = reduce_instance(inst);
  const MedianResult m = median(red.instance, k);
  std::cout << value_at(inst, m.value, lift_point(red, m.point)).dump(2) << "\n";
  return 0;
}

int cmd_reduce(const std::string& file, const std::string& out) {
  const Instance inst = load(file);
  write_file(out, emit_instance(reduce_instance(inst).instance));
  return 0;
}

int cmd_gen(const GenParams& prm, const std::string& out) {
  write_file(out, emit_instance(generate_instance(prm)));
  return 0;
}

int cmd_verify(int trials, int max_vertices, std::uint64_t seed) {
  if (trials < 0 || max_vertices < 1) throw Error(ErrorKind::ValidationError, "trials and vertex bound must be positive");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int mismatches = 0;
  for (int t = 0; t < trials; ++t) {
    GenParams p;
    p.seed = rng();
    p.vertex_count = uniform(1, max_vertices);
    p.cycle_count = uniform(0, std::min(3, (p.vertex_count - 1) / 2));
    p.n = uniform(1, 5);
    p.m = uniform(1, std::min(3, p.vertex_count));
    p.max_length = 10;
    p.max_weight = 5;
    p.edge_location_rate = uniform(0, 2) == 0 ? 0.25 : 0.0;
    const Instance inst = generate_instance(p);
    const Solution sol = solve(inst);
    const OracleLimits lim{std::max(20, max_vertices), 8, 4};
    const Solution ref = oracle_solve(inst, lim);
    bool ok = close(sol.lambda, ref.lambda) && objective(inst, sol.q1, sol.q2) <= sol.lambda + 1e-6;
    const ReducedInstance red = reduce_instance(inst);
    const double L = ref.lambda, d = std::max(1e-3, 1e-3 * L);
    for (double lam : {0.5 * L, L - d, L, L + d, 2.0 * L}) {
      if (lam < 0.0) continue;
      const Verdict v = decide(red.instance, lam);
      ok = ok && v.feasible == oracle_decide(inst, lam, lim).feasible;
      if (v.feasible) ok = ok && objective(red.instance, v.centers->first, v.centers->second) <= lam + 1e-6;
    }
    if (!ok) {
      ++mismatches;
      std::cerr << "mismatch: generator seed " << p.seed << " solve " << sol.lambda << " oracle " << ref.lambda << "\n";
    }
  }
  std::cout << json{{"trials", trials}, {"mismatches", mismatches}}.dump(2) << "\n";
  if (mismatches > 0) throw VerifyFailure(std::to_string(mismatches) + " mismatching trials");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted two-center of uncertain points on cactus graphs"};
  app.require_subcommand(1);
  std::string file, out, id;
  std::optional<double> eps;
  double lambda = 0.0;
  bool verify = false;
  GenParams gp;
  int trials = 100, max_vertices = 12;
  std::uint64_t verify_seed = 1;

  auto* solve_cmd = app.add_subcommand("solve", "optimal value and two centers");
  solve_cmd->add_option("file", file, "instance file")->required();
  solve_cmd->add_option("--eps", eps, "tolerance override");
  solve_cmd->add_flag("--verify", verify, "check against the brute-force oracle");

  auto* decide_cmd = app.add_subcommand("decide", "can two centers cover every point within lambda");
  decide_cmd->add_option("file", file, "instance file")->required();
  decide_cmd->add_option("--lambda", lambda, "threshold")->required();

  auto* oc_cmd = app.add_subcommand("one-center", "optimal single center");
  oc_cmd->add_option("file", file, "instance file")->required();

  auto* med_cmd = app.add_subcommand("median", "expected-distance median of one point");
  med_cmd->add_option("file", file, "instance file")->required();
  med_cmd->add_option("--point", id, "point id")->required();

  auto* red_cmd = app.add_subcommand("reduce", "vertex-constrained equivalent instance");
  red_cmd->add_option("file", file, "instance file")->required();
  red_cmd->add_option("-o,--output", out, "output file")->required();

  auto* gen_cmd = app.add_subcommand("gen", "random instance");
  gen_cmd->add_option("--seed", gp.seed);
  gen_cmd->add_option("--vertices", gp.vertex_count);
  gen_cmd->add_option("--cycles", gp.cycle_count);
  gen_cmd->add_option("-n", gp.n, "uncertain points");
  gen_cmd->add_option("-m", gp.m, "locations per point");
  gen_cmd->add_option("-o,--output", out, "output file (stdout when omitted)");

  auto* ver_cmd = app.add_subcommand("verify", "random instances checked against the oracles");
  ver_cmd->add_option("--trials", trials);
  ver_cmd->add_option("--max-vertices", max_vertices);
  ver_cmd->add_option("--seed", verify_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, eps, verify);
    if (*decide_cmd) return cmd_decide(file, lambda);
    if (*oc_cmd) return cmd_one_center(file);
    if (*med_cmd) return cmd_median(file, id);
    if (*red_cmd) return cmd_reduce(file, out);
    if (*gen_cmd) return cmd_gen(gp, out);
    if (*ver_cmd) return cmd_verify(trials, max_vertices, verify_seed);
  } catch (const VerifyFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::InternalInvariant ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
