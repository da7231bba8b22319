// smoothmax: approximation scheme driver for Max-Cut, smooth polynomial
// maximization, Max-k-CSP and k-densest subgraph, plus instance generation,
// brute-force oracles and Monte-Carlo lemma checks.
//
// Exit codes: 0 success, 2 input error, 3 configuration error,
// 4 internal solver error, 64 usage error.

#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "smax/errors.hpp"
#include "smax/gen.hpp"
#include "smax/oracle.hpp"
#include "smax/report.hpp"
#include "smax/scheme.hpp"

namespace {

using namespace smax;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

struct CommonOpts {
  double eps = 0.2;
  double delta = -1.0;  // < 0: infer from the instance
  double gamma_scale = 1.0;
  int64_t sample_size = 0;
  std::string mode;  // empty = default rule
  int trials = 32;
  uint64_t seed = 0;
  double lp_tol = 1e-7;
  int cap = 22;
  bool oracle = false;
  std::string in;
  std::string out;
  std::string format = "json";
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_in = true) {
  if (needs_in) cmd->add_option("--in", o.in, "instance file")->required();
  cmd->add_option("--eps", o.eps, "target relative error in (0,1)");
  cmd->add_option("--delta", o.delta, "density exponent in (0,1]; default inferred");
  cmd->add_option("--gamma-scale", o.gamma_scale, "multiplier on the sample-size formula");
  cmd->add_option("--sample-size", o.sample_size, "absolute sample size override");
  cmd->add_option("--mode", o.mode, "exhaustive | planted | random[:K]");
  cmd->add_option("--trials", o.trials, "rounding trials per assignment");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--lp-tol", o.lp_tol, "LP solver tolerance");
  cmd->add_option("--cap", o.cap, "exhaustion cap (max distinct sampled indices)");
  cmd->add_flag("--oracle", o.oracle, "compare against the brute-force oracle (n <= 26)");
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", o.threads, "worker pool size");
}

std::vector<uint8_t> read_answer_sidecar(const std::string& instance_path, int n) {
  std::string path = instance_path + ".answer";
  if (!std::filesystem::exists(path)) return {};
  std::string text = read_file(path);
  std::vector<uint8_t> bits;
  for (char c : text) {
    if (c == '0') bits.push_back(0);
    else if (c == '1') bits.push_back(1);
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw InputError("answer sidecar " + path + " must contain only 0/1 bits");
  }
  if (static_cast<int>(bits.size()) != n)
    throw InputError("answer sidecar " + path + " has " + std::to_string(bits.size()) +
                     " bits, expected " + std::to_string(n));
  return bits;
}

SchemeConfig build_config(const CommonOpts& o, double inferred_delta,
                          const std::vector<uint8_t>& sidecar) {
  SchemeConfig cfg;
  cfg.eps = o.eps;
  cfg.delta = o.delta > 0 ? o.delta : inferred_delta;
  cfg.gamma_scale = o.gamma_scale;
  cfg.sample_override = o.sample_size;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.lp_tol = o.lp_tol;
  cfg.exhaustion_cap = o.cap;
  cfg.oracle_compare = o.oracle;
  cfg.threads = o.threads;
  cfg.planted = sidecar;

  std::string mode = o.mode;
  if (mode.empty()) mode = (!sidecar.empty() || o.oracle) ? "planted" : "exhaustive";
  if (mode == "exhaustive") {
    cfg.mode = AssignmentMode::exhaustive;
  } else if (mode == "planted") {
    cfg.mode = AssignmentMode::planted;
  } else if (mode.rfind("random", 0) == 0) {
    cfg.mode = AssignmentMode::random_draws;
    if (mode.size() > 6) {
      if (mode[6] != ':') throw InputError("bad --mode value '" + mode + "'");
      cfg.random_assignments = std::stoull(mode.substr(7));
    }
  } else {
    throw InputError("bad --mode value '" + mode + "'");
  }
  return cfg;
}

double infer_delta_graph(const Graph& g) {
  if (g.n < 2 || g.m() < 1) return 1.0;
  double delta = std::log(std::max(g.average_degree(), 1.0 + 1e-9)) /
                 std::log(static_cast<double>(g.n));
  return std::min(std::max(delta, 0.05), 1.0);
}

double infer_delta_csp(int n, int m, int k) {
  if (n < 2 || m < 1) return 1.0;
  double delta = std::log(static_cast<double>(m)) / std::log(static_cast<double>(n)) - (k - 1);
  return std::min(std::max(delta, 0.05), 1.0);
}

void emit(const nlohmann::json& doc, const CommonOpts& o) {
  std::string text = o.format == "csv" ? to_csv_text(doc) : to_json_text(doc);
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
}

int finish(const RunReport& report, nlohmann::json& doc, const CommonOpts& o,
           std::chrono::steady_clock::time_point t0) {
  attach_run_report(doc, report);
  doc["timings"]["total_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(doc, o);
  if (!report.has_solution && report.method == "pipeline") {
    std::cerr << "error: no sample assignment produced a solution ("
              << report.lp_infeasible << " infeasible, " << report.solver_errors
              << " solver errors)\n";
    return 4;
  }
  return 0;
}

// Instance kind by header sniffing: "p edge" graph, "p cnf" formula,
// "p poly"/"c"/coefficient line polynomial dump, "k n m" csp.
enum class FileKind { graph, cnf, poly, csp };

FileKind sniff(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a == "c" && !(ls >> b)) continue;  // bare comment (cnf/graph style)
    if (a == "p") {
      ls >> b;
      if (b == "edge") return FileKind::graph;
      if (b == "cnf") return FileKind::cnf;
      if (b == "poly") return FileKind::poly;
      throw InputError("unknown 'p " + b + "' header");
    }
    if (a == "c") return FileKind::poly;  // 'c <value>' constant line
    if (line.find(':') != std::string::npos) return FileKind::csp;
    // Three bare integers = csp header; anything else is a poly monomial line.
    std::istringstream probe(line);
    long x = 0, y = 0, z = 0;
    if (probe >> x >> y >> z && probe.eof() && x >= 1) return FileKind::csp;
    return FileKind::poly;
  }
  throw InputError("empty instance file");
}

int cmd_maxcut(const CommonOpts& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(o.in);
  Graph g = parse_dimacs_graph(text);
  SchemeConfig cfg = build_config(o, infer_delta_graph(g), read_answer_sidecar(o.in, g.n));
  RunReport report = approximate_maxcut(g, cfg);
  nlohmann::json doc = report_shell("maxcut");
  doc["instance"] = {{"path", o.in}, {"digest", digest_bytes(text)}, {"n", g.n}, {"m", g.m()}};
  return finish(report, doc, o, t0);
}

int cmd_smooth(const CommonOpts& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(o.in);
  SmoothPolynomial p = parse_poly(text);
  SchemeConfig cfg = build_config(o, 0.5, read_answer_sidecar(o.in, p.n()));
  RunReport report = maximize_smooth(p, cfg);
  nlohmann::json doc = report_shell("smooth");
  doc["instance"] = {{"path", o.in},
                     {"digest", digest_bytes(text)},
                     {"n", p.n()},
                     {"degree", p.degree()},
                     {"monomials", p.monomials().size()}};
  return finish(report, doc, o, t0);
}

int cmd_csp(const CommonOpts& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(o.in);
  FileKind kind = sniff(text);
  CspInstance inst;
  if (kind == FileKind::cnf)
    inst = to_csp(parse_dimacs_cnf(text));
  else if (kind == FileKind::csp)
    inst = parse_csp(text);
  else
    throw InputError(o.in + " is neither DIMACS CNF nor the csp format");
  SchemeConfig cfg =
      build_config(o, infer_delta_csp(inst.n, inst.m(), inst.k), read_answer_sidecar(o.in, inst.n));
  RunReport report = approximate_kcsp(inst, cfg);
  nlohmann::json doc = report_shell("csp");
  doc["instance"] = {{"path", o.in},
                     {"digest", digest_bytes(text)},
                     {"n", inst.n},
                     {"m", inst.m()},
                     {"k", inst.k}};
  return finish(report, doc, o, t0);
}

int cmd_kdense(const CommonOpts& o, int k, double budget) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(o.in);
  Graph g = parse_dimacs_graph(text);
  SchemeConfig cfg = build_config(o, infer_delta_graph(g), read_answer_sidecar(o.in, g.n));
  cfg.kdense_budget = budget;
  RunReport report = approximate_kdense(g, k, cfg);
  nlohmann::json doc = report_shell("kdense");
  doc["instance"] = {{"path", o.in},
                     {"digest", digest_bytes(text)},
                     {"n", g.n},
                     {"m", g.m()},
                     {"k", k}};
  return finish(report, doc, o, t0);
}

int cmd_gen(const GenSpec& spec, const std::string& family_name, const std::string& out_path,
            const CommonOpts& o) {
  GeneratedInstance inst = generate(spec);
  std::string text;
  int n = 0, m = 0;
  if (inst.graph) {
    text = format_dimacs_graph(*inst.graph);
    n = inst.graph->n;
    m = inst.graph->m();
  } else {
    text = format_dimacs_cnf(*inst.formula);
    n = inst.formula->n;
    m = inst.formula->m();
  }
  write_file(out_path, text);
  nlohmann::json doc = report_shell("gen");
  doc["instance"] = {{"path", out_path},
                     {"digest", digest_bytes(text)},
                     {"family", family_name},
                     {"n", n},
                     {"m", m},
                     {"k", spec.k},
                     {"delta", spec.delta},
                     {"seed", spec.seed}};
  if (!inst.answer.empty()) {
    std::string bits;
    for (uint8_t b : inst.answer) bits += b ? '1' : '0';
    write_file(out_path + ".answer", bits + "\n");
    doc["instance"]["answer_path"] = out_path + ".answer";
  }
  emit(doc, o);
  return 0;
}

int cmd_oracle(const CommonOpts& o, int k) {
  std::string text = read_file(o.in);
  FileKind kind = sniff(text);
  nlohmann::json doc = report_shell("oracle");
  doc["instance"] = {{"path", o.in}, {"digest", digest_bytes(text)}};
  auto put_max = [&](const MaxResult& r, const char* kind_name) {
    std::string bits;
    for (uint8_t b : r.argmax) bits += b ? '1' : '0';
    doc["result"] = {{"kind", kind_name},
                     {"optimum", r.value.to_double()},
                     {"optimum_exact", r.value.str()},
                     {"argmax", bits}};
  };
  switch (kind) {
    case FileKind::graph: {
      Graph g = parse_dimacs_graph(text);
      doc["instance"]["n"] = g.n;
      doc["instance"]["m"] = g.m();
      if (k > 0) {
        KdenseResult r = brute_force_kdense(g, k);
        std::string bits;
        for (uint8_t b : r.members) bits += b ? '1' : '0';
        doc["result"] = {{"kind", "kdense"}, {"k", k}, {"optimum", r.edges}, {"argmax", bits}};
      } else {
        put_max(brute_force_max(from_graph_maxcut(g), o.threads), "maxcut");
      }
      break;
    }
    case FileKind::cnf:
    case FileKind::csp: {
      CspInstance inst =
          kind == FileKind::cnf ? to_csp(parse_dimacs_cnf(text)) : parse_csp(text);
      MaxResult r = brute_force_max(arithmetize(inst), o.threads);
      put_max(r, "csp");
      doc["result"]["satisfied"] = count_satisfied(inst, r.argmax);
      break;
    }
    case FileKind::poly: {
      put_max(brute_force_max(parse_poly(text), o.threads), "smooth");
      break;
    }
  }
  emit(doc, o);
  return 0;
}

int cmd_lemmas(const std::string& which, const LemmaCheckParams& params, const CommonOpts& o) {
  LemmaCheckResult r;
  if (which == "sampling")
    r = check_sampling_lemma(params);
  else if (which == "rounding")
    r = check_rounding_lemma(params);
  else
    throw InputError("--which must be sampling or rounding");
  nlohmann::json doc = report_shell("lemmas");
  doc["params"] = {{"which", which},      {"n", params.n},
                   {"q", params.q},       {"beta", params.beta},
                   {"delta", params.delta}, {"alpha1", params.alpha1},
                   {"alpha2", params.alpha2}, {"trials", params.trials},
                   {"seed", params.seed}, {"d", params.d}};
  doc["result"] = {{"violation_count", r.violation_count},
                   {"trials", r.trials},
                   {"empirical_rate", r.empirical_rate},
                   {"theoretical_budget", r.theoretical_budget},
                   {"sample_r", r.r}};
  emit(doc, o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smoothmax: exhaustive-sampling / LP / rounding approximation scheme"};
  app.require_subcommand(1);

  CommonOpts o_maxcut, o_smooth, o_csp, o_kdense, o_oracle, o_gen, o_lemmas;
  int kdense_k = 0;
  double kdense_budget = 5e6;
  int oracle_k = 0;

  auto* c_maxcut = app.add_subcommand("maxcut", "approximate Max-Cut on a DIMACS graph");
  add_common(c_maxcut, o_maxcut);

  auto* c_smooth = app.add_subcommand("smooth", "maximize a smooth polynomial dump");
  add_common(c_smooth, o_smooth);

  auto* c_csp = app.add_subcommand("csp", "approximate Max-k-CSP (DIMACS CNF or csp format)");
  add_common(c_csp, o_csp);

  auto* c_kdense = app.add_subcommand("kdense", "approximate the k-densest subgraph");
  add_common(c_kdense, o_kdense);
  c_kdense->add_option("--k", kdense_k, "subgraph size")->required();
  c_kdense->add_option("--kdense-budget", kdense_budget,
                       "C(n,k) threshold for the exact enumeration branch");

  GenSpec gen_spec;
  std::string gen_family = "graph-density";
  std::string gen_out;
  auto* c_gen = app.add_subcommand("gen", "generate a random instance");
  c_gen->add_option("--family", gen_family, "graph-density | planted-cut | random-ksat | planted-ksat")
      ->check(CLI::IsMember({"graph-density", "planted-cut", "random-ksat", "planted-ksat"}));
  c_gen->add_option("--n", gen_spec.n, "variable/vertex count")->required();
  c_gen->add_option("--k", gen_spec.k, "clause arity (ksat families)");
  c_gen->add_option("--delta", gen_spec.delta, "density exponent in (0,1]");
  c_gen->add_option("--seed", gen_spec.seed, "generator seed");
  c_gen->add_option("--out", gen_out, "instance file to write")->required();
  c_gen->add_option("--format", o_gen.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* c_oracle = app.add_subcommand("oracle", "exact brute-force optimum of an instance");
  c_oracle->add_option("--in", o_oracle.in, "instance file")->required();
  c_oracle->add_option("--k", oracle_k, "subgraph size (k-densest on graphs)");
  c_oracle->add_option("--out", o_oracle.out, "write the report here");
  c_oracle->add_option("--format", o_oracle.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  c_oracle->add_option("--threads", o_oracle.threads, "worker pool size");

  LemmaCheckParams lemma_params;
  std::string lemma_which = "sampling";
  auto* c_lemmas = app.add_subcommand("lemmas", "Monte-Carlo checks of the concentration lemmas");
  c_lemmas->add_option("--which", lemma_which, "sampling | rounding")->required();
  c_lemmas->add_option("--n", lemma_params.n, "dimension");
  c_lemmas->add_option("--q", lemma_params.q, "coefficient scale exponent");
  c_lemmas->add_option("--beta", lemma_params.beta, "smoothness constant");
  c_lemmas->add_option("--delta", lemma_params.delta, "density exponent");
  c_lemmas->add_option("--alpha1", lemma_params.alpha1, "multiplicative slack");
  c_lemmas->add_option("--alpha2", lemma_params.alpha2, "additive slack");
  c_lemmas->add_option("--trials", lemma_params.trials, "Monte-Carlo trials");
  c_lemmas->add_option("--seed", lemma_params.seed, "seed");
  c_lemmas->add_option("--d", lemma_params.d, "budget exponent (4/n^{d+1})");
  c_lemmas->add_option("--out", o_lemmas.out, "write the report here");
  c_lemmas->add_option("--format", o_lemmas.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 64;
  }

  try {
    if (c_maxcut->parsed()) return cmd_maxcut(o_maxcut);
    if (c_smooth->parsed()) return cmd_smooth(o_smooth);
    if (c_csp->parsed()) return cmd_csp(o_csp);
    if (c_kdense->parsed()) return cmd_kdense(o_kdense, kdense_k, kdense_budget);
    if (c_gen->parsed()) {
      if (gen_family == "graph-density") gen_spec.family = GenFamily::graph_density;
      else if (gen_family == "planted-cut") gen_spec.family = GenFamily::planted_cut;
      else if (gen_family == "random-ksat") gen_spec.family = GenFamily::random_ksat;
      else gen_spec.family = GenFamily::planted_ksat;
      return cmd_gen(gen_spec, gen_family, gen_out, o_gen);
    }
    if (c_oracle->parsed()) return cmd_oracle(o_oracle, oracle_k);
    if (c_lemmas->parsed()) return cmd_lemmas(lemma_which, lemma_params, o_lemmas);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 4;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
