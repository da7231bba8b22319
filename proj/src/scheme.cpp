#include "smax/scheme.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include "smax/errors.hpp"
#include "smax/oracle.hpp"
#include "smax/rounding.hpp"

namespace smax {

std::pair<double, double> eps_split(double eps, int d, double beta, double kappa,
                                    ProgramVariant variant) {
  if (!(eps > 0 && eps < 1)) throw InputError("eps must lie in (0, 1)");
  switch (variant) {
    case ProgramVariant::maxcut:
      return {eps / 16.0, eps / 16.0};
    case ProgramVariant::kdense:
      return {eps / 8.0, eps / 8.0};
    case ProgramVariant::generic:
      if (d < 2) throw InputError("generic eps split needs degree >= 2");
      if (!(beta >= 1.0) || !(kappa >= 1.0)) throw InputError("beta and kappa must be >= 1");
      return {eps / (4.0 * d * (d - 1) * beta * kappa), eps / (8.0 * (d - 1))};
  }
  throw InputError("unknown variant");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Candidate {
  bool ok = false;
  Rational value;
  std::vector<uint8_t> z;
  double frac_obj = 0.0;
  uint64_t ordinal = 0;
  int repair_moves = -1;
  double radius_multiplier = 1.0;
  bool deviation_pass = true;
};

// At desk scale the sample is capped at n, so estimations can be noisier than
// the theoretical radii assume and a program may come out infeasible. Rather
// than discarding the assignment, widen the radii to the smallest multiplier
// (within 5%) that admits a point: double until feasible, then bisect
// geometrically. The rows then bind at the actual noise level instead of an
// overshot one. Returns infeasible only when even the widest program is empty.
template <typename BuildFn>
std::pair<FractionalSolution, double> solve_with_escalation(const BuildFn& build, double lp_tol,
                                                            RelaxProgram& out_prog) {
  double mult = 1.0;
  FractionalSolution sol;
  int attempt = 0;
  for (; attempt < 12; ++attempt, mult *= 2.0) {
    out_prog = build(mult);
    sol = solve(out_prog, lp_tol);
    if (sol.status == SolveStatus::optimal) break;
  }
  if (sol.status != SolveStatus::optimal) return {FractionalSolution{}, mult};
  if (attempt == 0) return {std::move(sol), mult};

  double lo = mult / 2.0;  // infeasible
  double hi = mult;        // feasible, solved
  RelaxProgram prog_hi = out_prog;
  FractionalSolution sol_hi = std::move(sol);
  while (hi / lo > 1.05) {
    double mid = std::sqrt(lo * hi);
    RelaxProgram prog_mid = build(mid);
    FractionalSolution sol_mid = solve(prog_mid, lp_tol);
    if (sol_mid.status == SolveStatus::optimal) {
      hi = mid;
      prog_hi = std::move(prog_mid);
      sol_hi = std::move(sol_mid);
    } else {
      lo = mid;
    }
  }
  out_prog = std::move(prog_hi);
  return {std::move(sol_hi), hi};
}

/// Total order independent of evaluation order: larger value first, then
/// lexicographically smaller assignment, then smaller ordinal.
bool better(const Candidate& a, const Candidate& b) {
  if (!b.ok) return a.ok;
  if (!a.ok) return false;
  if (a.value > b.value) return true;
  if (b.value > a.value) return false;
  if (a.z < b.z) return true;
  if (b.z < a.z) return false;
  return a.ordinal < b.ordinal;
}

struct LoopCounters {
  std::atomic<uint64_t> infeasible{0};
  std::atomic<uint64_t> solver_errors{0};
  std::atomic<uint64_t> deviation_failures{0};
  std::atomic<uint64_t> radius_escalations{0};
};

/// One sample assignment end to end: escalate to the minimal feasible width,
/// then also examine twice and four times that width (the noise level is not
/// observable, so a few widths are tried and the best exact value kept).
/// `finish` rounds and evaluates one solved program into a Candidate.
template <typename BuildFn, typename FinishFn>
Candidate eval_assignment(const BuildFn& build, const FinishFn& finish, double lp_tol,
                          LoopCounters& counters) {
  RelaxProgram prog;
  FractionalSolution sol;
  double mult = 1.0;
  try {
    std::tie(sol, mult) = solve_with_escalation(build, lp_tol, prog);
  } catch (const SolverError&) {
    counters.solver_errors.fetch_add(1);
    return Candidate{};
  }
  if (sol.status != SolveStatus::optimal) {
    counters.infeasible.fetch_add(1);
    return Candidate{};
  }
  if (mult > 1.0) counters.radius_escalations.fetch_add(1);
  Candidate best = finish(prog, sol, mult);
  for (double extra : {2.0, 4.0, 8.0}) {
    RelaxProgram wider = build(mult * extra);
    FractionalSolution wsol;
    try {
      wsol = solve(wider, lp_tol);
    } catch (const SolverError&) {
      counters.solver_errors.fetch_add(1);
      continue;
    }
    if (wsol.status != SolveStatus::optimal) continue;
    Candidate c = finish(wider, wsol, mult * extra);
    if (better(c, best)) best = std::move(c);
  }
  if (!best.deviation_pass) counters.deviation_failures.fetch_add(1);
  return best;
}

Candidate run_over_assignments(uint64_t count, int threads,
                               const std::function<Candidate(uint64_t)>& eval) {
  Candidate best;
  std::mutex best_mu;
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    Candidate local;
    for (;;) {
      uint64_t o = next.fetch_add(1);
      if (o >= count) break;
      Candidate c = eval(o);
      if (better(c, local)) local = std::move(c);
    }
    std::lock_guard<std::mutex> lock(best_mu);
    if (better(local, best)) best = std::move(local);
  };
  int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<uint64_t>(
                                                        count, 64))));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return best;
}

std::vector<uint8_t> plant_for(const SchemeConfig& cfg, const std::function<MaxResult()>& oracle) {
  if (!cfg.planted.empty()) return cfg.planted;
  if (cfg.oracle_compare) return oracle().argmax;
  throw InputError(
      "planted mode needs a planted assignment (sidecar answer or --oracle)");
}

void finish_common(RunReport& report, const Candidate& best, Clock::time_point start) {
  report.has_solution = best.ok;
  if (best.ok) {
    report.best = best.z;
    report.value = best.value;
    report.fractional_objective = best.frac_obj;
    report.winning_ordinal = static_cast<int64_t>(best.ordinal);
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

uint64_t assignment_stream(uint64_t seed, uint64_t ordinal) {
  // One stream id per (seed, ordinal); rounding derives trial streams from it.
  Rng r = Rng::child(seed, {0xa51, ordinal});
  return r.next_u64();
}

}  // namespace

RunReport approximate_maxcut(const Graph& g, const SchemeConfig& cfg) {
  const auto start = Clock::now();
  if (g.m() < 1) throw InputError("Max-Cut needs at least one edge");
  RunReport report;
  report.config = cfg;
  report.method = "pipeline";

  SmoothPolynomial p = from_graph_maxcut(g);
  SmoothnessCertificate cert = certify(p, cfg.delta);
  const auto split = eps_split(cfg.eps, 2, cert.beta, cert.kappa, ProgramVariant::maxcut);
  const double eps1 = split.first, eps2 = split.second;
  report.eps1 = eps1;
  report.eps2 = eps2;

  std::optional<MaxResult> oracle;
  auto oracle_once = [&]() -> MaxResult {
    if (!oracle) oracle = brute_force_max(p, cfg.threads);
    return *oracle;
  };

  SchemeConfig cfg_run = cfg;
  if (cfg.mode == AssignmentMode::planted) cfg_run.planted = plant_for(cfg, oracle_once);

  int64_t r = cfg.sample_override > 0
                  ? std::min<int64_t>(cfg.sample_override, g.n)
                  : sample_size_maxcut(g.n, g.average_degree(), eps1, eps2, cfg.gamma_scale);
  Rng sample_rng = Rng::child(cfg.seed, {0x5a17});
  Sample sample = draw_sample(g.n, static_cast<int>(r), sample_rng);
  report.sample_r = sample.r();
  report.sample_distinct = static_cast<int>(sample.distinct().size());

  AssignmentPlan plan = make_assignment_plan(sample, cfg.mode, cfg_run.planted,
                                             cfg.random_assignments, cfg.seed,
                                             cfg.exhaustion_cap);
  report.assignments_tried = plan.count;

  DecompositionTree tree = decompose(p, DecompStrategy::maxcut_symmetric);
  LoopCounters counters;
  auto eval = [&](uint64_t ordinal) -> Candidate {
    PartialAssignment s = plan.at(ordinal);
    EstimationTree est = estimate(tree, sample, s, cert, EstimateVariant::maxcut);
    auto finish = [&](const RelaxProgram& prog, const FractionalSolution& sol,
                      double mult) -> Candidate {
      Candidate c;
      c.ordinal = ordinal;
      c.radius_multiplier = mult;
      std::vector<uint8_t> z =
          round_solution(sol, prog, cfg.trials, assignment_stream(cfg.seed, ordinal));
      c.deviation_pass = check_deviation(z, prog).pass;
      c.ok = true;
      c.z = std::move(z);
      c.value = p.evaluate(c.z);
      c.frac_obj = sol.objective_value;
      return c;
    };
    return eval_assignment(
        [&](double m) { return build_maxcut_program(tree, est, eps1 * m, eps2 * m, &s); },
        finish, cfg.lp_tol, counters);
  };
  Candidate best = run_over_assignments(plan.count, cfg.threads, eval);
  report.lp_infeasible = counters.infeasible.load();
  report.solver_errors = counters.solver_errors.load();
  report.deviation_failures = counters.deviation_failures.load();
  report.radius_escalations = counters.radius_escalations.load();
  if (best.ok) report.winner_radius_multiplier = best.radius_multiplier;

  if (cfg.oracle_compare) {
    MaxResult o = oracle_once();
    report.has_oracle = true;
    report.oracle_value = o.value;
    if (best.ok)
      report.ratio = o.value.is_zero() ? 1.0 : (best.value / o.value).to_double();
  }
  finish_common(report, best, start);
  return report;
}

RunReport maximize_smooth(const SmoothPolynomial& p, const SchemeConfig& cfg) {
  const auto start = Clock::now();
  RunReport report;
  report.config = cfg;

  if (p.is_constant()) {
    report.method = "constant";
    Candidate c;
    c.ok = true;
    c.z.assign(p.n(), 0);
    c.value = p.constant();
    c.frac_obj = p.constant().to_double();
    finish_common(report, c, start);
    return report;
  }
  if (p.degree() < 2) {
    // Linear: exact optimum by sign inspection, no sampling needed.
    report.method = "linear-exact";
    Candidate c;
    c.ok = true;
    c.z.assign(p.n(), 0);
    for (const auto& m : p.monomials())
      if (m.coeff > Rational(0)) c.z[m.vars[0]] = 1;
    c.value = p.evaluate(c.z);
    c.frac_obj = c.value.to_double();
    if (cfg.oracle_compare) {
      MaxResult o = brute_force_max(p, cfg.threads);
      report.has_oracle = true;
      report.oracle_value = o.value;
      report.ratio = o.value.is_zero() ? 1.0 : (c.value / o.value).to_double();
      report.additive_gap = (o.value - c.value).to_double();
    }
    finish_common(report, c, start);
    return report;
  }

  report.method = "pipeline";
  SmoothnessCertificate cert = certify(p, cfg.delta);
  const int d = p.degree();
  const auto split = eps_split(cfg.eps, d, cert.beta, cert.kappa, ProgramVariant::generic);
  const double eps1 = split.first, eps2 = split.second;
  report.eps1 = eps1;
  report.eps2 = eps2;
  report.additive_budget =
      cfg.eps * cert.kappa * std::pow(static_cast<double>(p.n()), d - 1 + cfg.delta);

  std::optional<MaxResult> oracle;
  auto oracle_once = [&]() -> MaxResult {
    if (!oracle) oracle = brute_force_max(p, cfg.threads);
    return *oracle;
  };
  SchemeConfig cfg_run = cfg;
  if (cfg.mode == AssignmentMode::planted) cfg_run.planted = plant_for(cfg, oracle_once);

  int64_t r = cfg.sample_override > 0
                  ? std::min<int64_t>(cfg.sample_override, p.n())
                  : sample_size(p.n(), cfg.delta, eps1, eps2, cfg.gamma_scale, d, cert.beta);
  Rng sample_rng = Rng::child(cfg.seed, {0x5a17});
  Sample sample = draw_sample(p.n(), static_cast<int>(r), sample_rng);
  report.sample_r = sample.r();
  report.sample_distinct = static_cast<int>(sample.distinct().size());

  AssignmentPlan plan = make_assignment_plan(sample, cfg.mode, cfg_run.planted,
                                             cfg.random_assignments, cfg.seed,
                                             cfg.exhaustion_cap);
  report.assignments_tried = plan.count;

  DecompositionTree tree = decompose(p, DecompStrategy::canonical_lex);
  LoopCounters counters;
  auto eval = [&](uint64_t ordinal) -> Candidate {
    PartialAssignment s = plan.at(ordinal);
    EstimationTree est = estimate(tree, sample, s, cert, EstimateVariant::generic);
    auto finish = [&](const RelaxProgram& prog, const FractionalSolution& sol,
                      double mult) -> Candidate {
      Candidate c;
      c.ordinal = ordinal;
      c.radius_multiplier = mult;
      std::vector<uint8_t> z =
          round_solution(sol, prog, cfg.trials, assignment_stream(cfg.seed, ordinal));
      c.deviation_pass = check_deviation(z, prog).pass;
      c.ok = true;
      c.z = std::move(z);
      c.value = p.evaluate(c.z);
      c.frac_obj = sol.objective_value;
      return c;
    };
    return eval_assignment(
        [&](double m) {
          return build_generic_program(tree, est, eps1 * m, eps2 * m, cfg.delta, &s);
        },
        finish, cfg.lp_tol, counters);
  };
  Candidate best = run_over_assignments(plan.count, cfg.threads, eval);
  report.lp_infeasible = counters.infeasible.load();
  report.solver_errors = counters.solver_errors.load();
  report.deviation_failures = counters.deviation_failures.load();
  report.radius_escalations = counters.radius_escalations.load();
  if (best.ok) report.winner_radius_multiplier = best.radius_multiplier;

  if (cfg.oracle_compare) {
    MaxResult o = oracle_once();
    report.has_oracle = true;
    report.oracle_value = o.value;
    if (best.ok) {
      report.ratio = o.value.is_zero() ? 1.0 : (best.value / o.value).to_double();
      report.additive_gap = (o.value - best.value).to_double();
    }
  }
  finish_common(report, best, start);
  return report;
}

RunReport approximate_kcsp(const CspInstance& inst, const SchemeConfig& cfg) {
  validate(inst);
  SmoothPolynomial p = arithmetize(inst);
  RunReport report = maximize_smooth(p, cfg);
  report.trivial_opt_bound =
      std::pow(2.0, -inst.k) * static_cast<double>(inst.m());
  if (report.has_solution) report.satisfied = count_satisfied(inst, report.best);
  if (report.has_oracle) {
    // Arithmetization is exact, so the oracle optimum is the best count.
    report.oracle_satisfied = report.oracle_value.num() / report.oracle_value.den();
  }
  return report;
}

namespace {

int64_t induced_edges(const Graph& g, std::span<const uint8_t> z) {
  int64_t edges = 0;
  for (auto [u, v] : g.edges) edges += z[u] && z[v] ? 1 : 0;
  return edges;
}

/// Greedy cardinality repair: add the outside vertex with the most neighbors
/// inside, or drop the inside vertex with the fewest, until exactly k ones.
int repair_to_k(const Graph& g, std::vector<uint8_t>& z, int k) {
  int ones = 0;
  for (uint8_t b : z) ones += b;
  int moves = 0;
  while (ones != k) {
    int best_v = -1;
    int64_t best_gain = 0;
    if (ones < k) {
      for (int v = 0; v < g.n; ++v) {
        if (z[v]) continue;
        int64_t gain = 0;
        for (int i : g.adj[v]) gain += z[i];
        if (best_v < 0 || gain > best_gain) {
          best_v = v;
          best_gain = gain;
        }
      }
      z[best_v] = 1;
      ++ones;
    } else {
      for (int v = 0; v < g.n; ++v) {
        if (!z[v]) continue;
        int64_t gain = 0;
        for (int i : g.adj[v]) gain += z[i];
        if (best_v < 0 || gain < best_gain) {
          best_v = v;
          best_gain = gain;
        }
      }
      z[best_v] = 0;
      --ones;
    }
    ++moves;
  }
  return moves;
}

}  // namespace

RunReport approximate_kdense(const Graph& g, int k, const SchemeConfig& cfg) {
  const auto start = Clock::now();
  if (k < 1 || k > g.n) throw InputError("k must lie in [1, n]");
  RunReport report;
  report.config = cfg;
  report.kdense_threshold = std::pow(static_cast<double>(g.n), 1.0 - cfg.delta / 3.0);

  SmoothPolynomial p_edges = from_graph_edge_count(g);
  std::optional<KdenseResult> oracle;
  auto oracle_once = [&]() -> const KdenseResult& {
    if (!oracle) oracle = brute_force_kdense(g, k);
    return *oracle;
  };

  if (static_cast<double>(binomial(g.n, k)) <= cfg.kdense_budget) {
    // Enumeration branch, written independently of oracle::brute_force_kdense:
    // lexicographic combination stepping with a full recount per subset.
    report.method = "enumeration";
    report.branch = "enumeration";
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    Candidate best;
    std::vector<uint8_t> z(g.n, 0);
    for (;;) {
      std::fill(z.begin(), z.end(), 0);
      for (int v : comb) z[v] = 1;
      Rational value = Rational(induced_edges(g, z));
      Candidate c;
      c.ok = true;
      c.z = z;
      c.value = value;
      if (better(c, best)) best = std::move(c);
      int i = k - 1;
      while (i >= 0 && comb[i] == g.n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    best.frac_obj = best.value.to_double();
    report.repair_moves = 0;
    report.assignments_tried = static_cast<uint64_t>(binomial(g.n, k));
    if (cfg.oracle_compare) {
      const KdenseResult& o = oracle_once();
      report.has_oracle = true;
      report.oracle_value = Rational(o.edges);
      report.ratio = o.edges == 0 ? 1.0 : best.value.to_double() / static_cast<double>(o.edges);
    }
    finish_common(report, best, start);
    return report;
  }

  report.method = "pipeline";
  report.branch = "sampled";
  if (g.m() < 1) throw InputError("sampled k-densest needs at least one edge");
  const auto split = eps_split(cfg.eps, 2, 1.0, 1.0, ProgramVariant::kdense);
  const double eps1 = split.first, eps2 = split.second;
  report.eps1 = eps1;
  report.eps2 = eps2;

  SchemeConfig cfg_run = cfg;
  if (cfg.mode == AssignmentMode::planted && cfg_run.planted.empty()) {
    if (!cfg.oracle_compare)
      throw InputError("planted mode needs a planted assignment (sidecar answer or --oracle)");
    const KdenseResult& o = oracle_once();
    cfg_run.planted = o.members;
  }

  int64_t r = cfg.sample_override > 0
                  ? std::min<int64_t>(cfg.sample_override, g.n)
                  : sample_size_kdense(g.n, cfg.delta, eps1, eps2, cfg.gamma_scale);
  Rng sample_rng = Rng::child(cfg.seed, {0x5a17});
  Sample sample = draw_sample(g.n, static_cast<int>(r), sample_rng);
  report.sample_r = sample.r();
  report.sample_distinct = static_cast<int>(sample.distinct().size());

  AssignmentPlan plan = make_assignment_plan(sample, cfg.mode, cfg_run.planted,
                                             cfg.random_assignments, cfg.seed,
                                             cfg.exhaustion_cap);
  report.assignments_tried = plan.count;

  LoopCounters counters;
  auto eval = [&](uint64_t ordinal) -> Candidate {
    PartialAssignment s = plan.at(ordinal);
    std::vector<double> rho = neighbor_estimates(g, sample, s);
    auto finish = [&](const RelaxProgram& prog, const FractionalSolution& sol,
                      double mult) -> Candidate {
      Candidate c;
      c.ordinal = ordinal;
      c.radius_multiplier = mult;
      std::vector<uint8_t> z =
          round_solution(sol, prog, cfg.trials, assignment_stream(cfg.seed, ordinal));
      c.deviation_pass = check_deviation(z, prog).pass;
      c.repair_moves = repair_to_k(g, z, k);
      c.ok = true;
      c.z = std::move(z);
      c.value = Rational(induced_edges(g, c.z));
      c.frac_obj = sol.objective_value;
      return c;
    };
    return eval_assignment(
        [&](double m) {
          return build_kdense_program(g, rho, eps1 * m, eps2 * m, cfg.delta, k, &s);
        },
        finish, cfg.lp_tol, counters);
  };
  Candidate best = run_over_assignments(plan.count, cfg.threads, eval);
  report.lp_infeasible = counters.infeasible.load();
  report.solver_errors = counters.solver_errors.load();
  report.deviation_failures = counters.deviation_failures.load();
  report.radius_escalations = counters.radius_escalations.load();
  if (best.ok) {
    report.repair_moves = best.repair_moves;
    report.winner_radius_multiplier = best.radius_multiplier;
  }

  if (cfg.oracle_compare) {
    const KdenseResult& o = oracle_once();
    report.has_oracle = true;
    report.oracle_value = Rational(o.edges);
    if (best.ok)
      report.ratio = o.edges == 0 ? 1.0 : best.value.to_double() / static_cast<double>(o.edges);
  }
  // Integrity: the reported value is the exact polynomial evaluation.
  if (best.ok && !(p_edges.evaluate(best.z) == best.value))
    throw SolverError("internal: reported k-densest value disagrees with evaluation");
  finish_common(report, best, start);
  return report;
}

}  // namespace smax
