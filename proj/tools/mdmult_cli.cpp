// Copyright 2026 The mdmult Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mdmult: certified multiplier norms, tree constructions and coupling checks.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 a solver could
// not certify its bracket.

#include <chrono>
#include <cmath>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdmult/acceptance.hpp"
#include "mdmult/constructions.hpp"
#include "mdmult/coupling.hpp"
#include "mdmult/error.hpp"
#include "mdmult/io.hpp"
#include "mdmult/norms.hpp"
#include "mdmult/random.hpp"
#include "oracles.hpp"

namespace {

using namespace mdmult;

constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoCertificate = 3;

struct Common {
  double tol = 1e-7;
  int max_iterations = 50000;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
};

SolveOptions solve_options(const Common& c) {
  SolveOptions o;
  o.tolerance = c.tol;
  o.max_iterations = c.max_iterations;
  o.seed = c.seed;
  o.validate();
  return o;
}

// Records a named check; the report is ok iff every check passes.
void check(RunReport& rep, Json& checks, const std::string& name, bool pass, double measured) {
  checks.push_back({{"name", name}, {"pass", pass}, {"measured", std::isfinite(measured) ? Json(measured) : Json(nullptr)}});
  rep.ok = rep.ok && pass;
}

Json trace_min_json(const TraceMinResult& r) {
  return {{"value", r.value}, {"lower", r.lower}, {"upper", r.upper}, {"residual", r.residual},
          {"iterations", r.iterations}, {"certified", r.certified}};
}

// norm ------------------------------------------------------------------------

struct NormArgs {
  std::string kind;
  std::string group;
  std::string fn;
};

void cmd_norm(const NormArgs& a, const Common& c, RunReport& rep) {
  const SolveOptions so = solve_options(c);
  CarrierPtr carrier = a.group.empty() ? nullptr : resolve_carrier(a.group);
  const std::string text = read_text_file(a.fn);
  rep.inputs += text;
  const GroupFunction f = function_from_json(parse_json(text, a.fn), carrier);
  rep.results["group"] = f.carrier().label();
  rep.results["kind"] = a.kind;
  rep.tolerances["solver"] = so.tolerance;
  if (a.kind == "m2") {
    const NormReport r = m2_norm(f, so);
    rep.results["report"] = to_json(r);
  } else if (a.kind == "b") {
    rep.results["report"] = trace_min_json(b_norm_solve(f, so));
  } else {
    const ANormReport r = a_norm_report(f, so);
    rep.results["report"] = {{"value", r.value},
                             {"nonconvex", std::isfinite(r.nonconvex) ? Json(r.nonconvex) : Json(nullptr)},
                             {"nonconvex_residual", r.nonconvex_residual},
                             {"gap", std::isfinite(r.gap) ? Json(r.gap) : Json(nullptr)},
                             {"realization_residual", r.realization.residual},
                             {"realization_norm", r.realization.norm_product()}};
  }
}

// tree ------------------------------------------------------------------------

struct TreeArgs {
  int gens = 2;
  int radius = 4;
  int n = 2;
  int d = 2;
  int r = 1;
  std::vector<double> ts = {0.1, 0.5, 1.0, 2.0};
};

void cmd_tree(const TreeArgs& a, RunReport& rep) {
  require(a.gens >= 1 && a.radius >= 0, "invalid free ball parameters");
  auto ball = std::make_shared<const FreeBall>(a.gens, a.radius);
  const TreeFamily f = tree_witness(ball, a.n, a.d, a.r);
  const VerifyResult v = verify_factorization(f.phi, f.witness, TupleSource::all(), 1e-12);
  Json checks = Json::array();
  double middle_dev = 0;
  for (double s : f.middle_sups) middle_dev = std::max(middle_dev, std::abs(s - 1.0));
  check(rep, checks, "residual <= 1e-12", v.residual <= 1e-12, v.residual);
  check(rep, checks, "|xi_d| <= sqrt(n+1)", f.xi_d_sup <= std::sqrt(a.n + 1.0) + 1e-12, f.xi_d_sup);
  check(rep, checks, "middle factors = 1", middle_dev <= 1e-12, middle_dev);
  check(rep, checks, "bound <= n+1", v.bound <= a.n + 1 + 1e-12, v.bound);
  Json tree = {{"carrier", ball->label()}, {"n", a.n}, {"d", a.d}, {"acting_radius", a.r},
               {"verify", to_json(v)}, {"xi_1_sup", f.xi_1_sup}, {"xi_d_sup", f.xi_d_sup},
               {"middle_sups", f.middle_sups}, {"consistency_residual", f.consistency_residual}};
  if (a.n >= 1) {
    const ChiCertificate chi = chi_certificate(ball, a.n, a.d, a.r);
    tree["chi_bound"] = chi.bound;
    check(rep, checks, "chi_n certificate <= 2n", chi.bound <= 2.0 * a.n + 1e-12 && chi.residual <= 1e-12,
          chi.bound);
  }
  // Kernels rho_t(y^{-1}x) need products inside the ball.
  const std::vector<Index> s = ball->ball(a.radius / 2);
  Json kernels = Json::array();
  for (double t : a.ts) {
    const HaagerupFamily h = haagerup_family(ball, std::min(a.n, a.radius), t);
    const bool pd = is_pd_function(h.rho, s, 1e-10);
    const double low = min_eigenvalue(pd_kernel(h.rho, s));
    check(rep, checks, "rho_t pd, t=" + std::to_string(t), pd, low);
    kernels.push_back({{"t", t}, {"pd_on_radius", a.radius / 2}, {"pd", pd}, {"min_eigenvalue", low},
                       {"tail", h.tail},
                       {"tail_closed", h.tail_closed}});
  }
  rep.results = {{"tree", tree}, {"haagerup", kernels}, {"checks", checks}};
  rep.tolerances = {{"residual", 1e-12}, {"pd_relative", 1e-10}};
}

// couple ----------------------------------------------------------------------

struct CoupleArgs {
  std::string file;
  std::string preset;
  std::string action = "induce";
  std::string fn;
  int d = 2;
  int samples = 10;
};

void cmd_couple(const CoupleArgs& a, const Common& c, RunReport& rep) {
  require(a.file.empty() != a.preset.empty(), "give exactly one of --file and --preset");
  require(a.samples >= 0, "--samples must be non-negative");
  const SolveOptions so = solve_options(c);
  std::optional<Embedding> emb;
  std::optional<CouplingSpace> maybe;
  if (!a.file.empty()) {
    const std::string text = read_text_file(a.file);
    rep.inputs += text;
    maybe = coupling_from_json(parse_json(text, a.file));
  } else {
    emb = subgroup_preset(a.preset);
    maybe = subgroup_coupling(*emb);
  }
  const CouplingSpace& cs = *maybe;
  Rng rng(c.seed);
  Json checks = Json::array();
  rep.results["coupling"] = {{"label", cs.label()}, {"points", cs.size()},
                             {"gamma", cs.gamma()->label()}, {"lambda", cs.lambda()->label()},
                             {"p", cs.p()}, {"q", cs.q()}};
  auto load_on = [&](GroupPtr g) {
    const std::string text = read_text_file(a.fn);
    rep.inputs += text;
    return function_from_json(parse_json(text, a.fn), std::move(g));
  };

  if (a.action == "induce") {
    rep.tolerances = {{"monotonicity", 1e-6}};
    if (!a.fn.empty()) {
      const GroupFunction phi = load_on(cs.lambda());
      rep.results["induced"] = function_to_json(induce(cs, phi), cs.gamma()->label());
    }
    const GroupFunction one = induce(cs, GroupFunction::constant(cs.lambda(), 1.0));
    check(rep, checks, "induce(1) = 1", (one.values().array() == Complex(1.0)).all(), 0);
    double worst = -std::numeric_limits<double>::infinity();
    bool pd_kept = true;
    const std::vector<Index> all_gamma = m2_index_set(*cs.gamma());
    for (int k = 0; k < a.samples; ++k) {
      const GroupFunction phi = random_function(cs.lambda(), rng);
      const NormReport before = m2_norm(phi, so), after = m2_norm(induce(cs, phi), so);
      worst = std::max(worst, after.upper->value - before.lower->value);
      pd_kept = pd_kept && is_pd_function(induce(cs, random_pd_function(cs.lambda(), rng)), all_gamma, 1e-10);
    }
    if (a.samples > 0) {
      check(rep, checks, "m2(induced) <= m2 + 1e-6", worst <= 1e-6, worst);
      check(rep, checks, "positive definiteness preserved", pd_kept, 0);
    }
  } else if (a.action == "dual") {
    rep.tolerances = {{"adjointness", 1e-12}, {"l1", 1e-12}};
    if (!a.fn.empty()) {
      const GroupFunction f = load_on(cs.gamma());
      rep.results["dual"] = function_to_json(induce_dual(cs, f), cs.lambda()->label());
    }
    double adj = 0, l1 = 0;
    for (int k = 0; k < a.samples; ++k) {
      const GroupFunction phi = random_function(cs.lambda(), rng), f = random_function(cs.gamma(), rng);
      adj = std::max(adj, std::abs(pairing(induce(cs, phi), f) - pairing(phi, induce_dual(cs, f))));
      const GroupFunction pos = GroupFunction::generate(cs.gamma(), [&](Index g) { return std::abs(f(g)); });
      l1 = std::max(l1, std::abs(induce_dual(cs, pos).l1_norm() - pos.l1_norm()));
    }
    check(rep, checks, "adjointness", adj <= 1e-12, adj);
    check(rep, checks, "l1 preserved on f >= 0", l1 <= 1e-12, l1);
  } else if (a.action == "witness") {
    require(a.d >= 2, "-d must be at least 2");
    rep.tolerances = {{"residual", 1e-9}, {"bound", 1e-6}};
    std::vector<GroupFunction> inputs;
    if (!a.fn.empty()) inputs.push_back(load_on(cs.lambda()));
    for (int k = 0; k < a.samples; ++k) inputs.push_back(random_pd_function(cs.lambda(), rng));
    Json rows = Json::array();
    for (const GroupFunction& phi : inputs) {
      const CoefficientWitness cw = coefficient_witness(phi, a.d, so);
      const FactorizationWitness hat = induce_witness(cs, phi, cw.witness);
      const VerifyResult v = verify_factorization(induce(cs, phi), hat, TupleSource::all(), 1e-9);
      rows.push_back({{"input_bound", cw.witness.bound()}, {"input_residual", cw.verify.residual},
                      {"transported", to_json(v)}});
      check(rep, checks, "transported residual <= 1e-9", v.residual <= 1e-9, v.residual);
      check(rep, checks, "bound not increased", v.bound <= cw.witness.bound() + 1e-6,
            v.bound - cw.witness.bound());
    }
    rep.results["witnesses"] = rows;
  } else if (a.action == "koopman") {
    rep.tolerances = {{"defect", 1e-10}};
    const KoopmanReport k = koopman_check(cs);
    rep.results["koopman"] = to_json(k);
    check(rep, checks, "F_q unitary", std::max(k.unitarity_defect, k.coisometry_defect) <= 1e-10,
          std::max(k.unitarity_defect, k.coisometry_defect));
    check(rep, checks, "F_q intertwines", k.intertwining_defect <= 1e-10, k.intertwining_defect);
    double coeff = 0;
    for (int s = 0; s < a.samples; ++s) {
      const GroupFunction phi = random_function(cs.lambda(), rng);
      const KoopmanReport kr = koopman_check(cs, phi, a_norm_report(phi, so).realization);
      coeff = std::max({coeff, kr.coefficient_residual, kr.norm_defect});
    }
    if (a.samples > 0) check(rep, checks, "coefficient transport", coeff <= 1e-10, coeff);
  } else if (a.action == "lattice") {
    require(emb.has_value(), "the lattice action needs a subgroup preset");
    rep.tolerances = {{"coincidence", 1e-12}};
    const std::vector<Index> omega = left_transversal(*emb);
    const CouplingSpace lat = lattice_coupling(*emb, omega);
    rep.results["omega"] = omega;
    if (!a.fn.empty()) {
      const GroupFunction phi = load_on(emb->sub);
      rep.results["lattice_induced"] =
          function_to_json(lattice_induce(*emb, omega, phi), emb->ambient->label());
    }
    double worst = 0;
    for (int k = 0; k < a.samples; ++k) {
      const GroupFunction phi = random_function(emb->sub, rng);
      worst = std::max(worst, (lattice_induce(*emb, omega, phi).values() - induce(lat, phi).values())
                                  .cwiseAbs().maxCoeff());
    }
    check(rep, checks, "lattice induction = coupling induction", worst <= 1e-12, worst);
  } else {
    fail("unknown action: " + a.action);
  }
  rep.results["checks"] = checks;
}

// verify-all ------------------------------------------------------------------

AcceptanceOracles oracle_hooks() {
  AcceptanceOracles o;
  o.schur = [](const Matrix& m, std::uint64_t seed) { return oracle::schur_factorization(m, seed); };
  o.cyclic_b_norm = [](const std::vector<Complex>& f) { return oracle::dft_l1(f); };
  o.tail_partial = [](long long n, double t, long long kmax) { return oracle::tail_partial(n, t, kmax); };
  o.sphere_count = [](int k, int j) { return oracle::sphere_count(k, j); };
  return o;
}

void cmd_verify_all(bool quick, bool fault, const Common& c, RunReport& rep) {
  AcceptanceOptions opts;
  opts.quick = quick;
  opts.seed = c.seed;
  opts.inject_schur_fault = fault;
  const std::vector<CriterionResult> results = run_acceptance(opts, oracle_hooks());
  for (const CriterionResult& r : results)
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.title << ": " << r.summary << "\n";
  Json j = acceptance_json(results, c.timing);
  rep.ok = j["all_pass"].get<bool>();
  j["mode"] = quick ? "quick" : "full";
  j["fault_injected"] = fault;
  rep.results = j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified M_d multiplier norms, tree factorizations and coupling checks"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", common.tol, "Solver tolerance")->capture_default_str();
    sub->add_option("--max-iter", common.max_iterations, "Solver iteration cap")->capture_default_str();
    sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", common.out, "Output file (default stdout)");
    sub->add_flag("--timing", common.timing, "Include wall time in the report");
  };

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "M2, B or A norm of a function");
  norm_cmd->add_option("kind", norm.kind, "m2 | b | a")->required()->check(CLI::IsMember({"m2", "b", "a"}));
  norm_cmd->add_option("--group", norm.group, "Group preset, carrier spec or table file");
  norm_cmd->add_option("--fn", norm.fn, "Function JSON file")->required();
  add_common(norm_cmd);

  TreeArgs tree;
  auto* tree_cmd = app.add_subcommand("tree", "Tree multiplier factorization on a free ball");
  tree_cmd->add_option("-g,--gens", tree.gens, "Free generators")->capture_default_str();
  tree_cmd->add_option("-R,--radius", tree.radius, "Ball radius")->capture_default_str();
  tree_cmd->add_option("-n", tree.n, "Sphere index")->capture_default_str();
  tree_cmd->add_option("-d", tree.d, "Number of factors")->capture_default_str();
  tree_cmd->add_option("-r,--acting-radius", tree.r, "Radius of the acting set")->capture_default_str();
  tree_cmd->add_option("--t", tree.ts, "Kernel parameters t");
  add_common(tree_cmd);

  CoupleArgs couple;
  auto* couple_cmd = app.add_subcommand("couple", "Induction through a finite coupling");
  couple_cmd->add_option("--file", couple.file, "Coupling JSON file");
  couple_cmd->add_option("--preset", couple.preset, "subgroup:L,G with G a preset or [generators]");
  couple_cmd->add_option("--action", couple.action, "induce | dual | witness | koopman | lattice")
      ->check(CLI::IsMember({"induce", "dual", "witness", "koopman", "lattice"}))
      ->capture_default_str();
  couple_cmd->add_option("--fn", couple.fn, "Function JSON file");
  couple_cmd->add_option("-d", couple.d, "Number of factors for witness transport")->capture_default_str();
  couple_cmd->add_option("--samples", couple.samples, "Random functions per invariant")->capture_default_str();
  add_common(couple_cmd);

  bool quick = false, full = false, fault = false;
  auto* verify_cmd = app.add_subcommand("verify-all", "Run every acceptance criterion");
  auto* quick_flag = verify_cmd->add_flag("--quick", quick, "Reduced sample counts");
  verify_cmd->add_flag("--full", full, "Full sample counts (default)")->excludes(quick_flag);
  verify_cmd->add_flag("--inject-schur-fault", fault, "Replace the Schur engine by max|M_ij|");
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  RunReport rep;
  rep.args.assign(argv + 1, argv + argc);
  rep.seed = common.seed;
  for (const std::string& s : rep.args) rep.inputs += s + '\0';
  const auto start = std::chrono::steady_clock::now();
  try {
    if (norm_cmd->parsed()) {
      rep.command = "norm";
      cmd_norm(norm, common, rep);
    } else if (tree_cmd->parsed()) {
      rep.command = "tree";
      cmd_tree(tree, rep);
    } else if (couple_cmd->parsed()) {
      rep.command = "couple";
      cmd_couple(couple, common, rep);
    } else {
      rep.command = "verify-all";
      cmd_verify_all(quick, fault, common, rep);
    }
  } catch (const NoCertificate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoCertificate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kValidation ? kExitInvalid : kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (common.timing)
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_output(common.out, rep.dump());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return rep.ok ? 0 : kExitFailed;
}
