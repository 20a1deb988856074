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

#include "mdmult/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>

#include "mdmult/constructions.hpp"
#include "mdmult/error.hpp"
#include "mdmult/random.hpp"

namespace mdmult {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Collects the failing cases of one criterion.
struct Tally {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

void close(CriterionResult& r, const Tally& t, std::string summary) {
  r.pass = t.failed == 0;
  r.summary = std::move(summary);
  if (t.failed > 0) {
    r.summary += "; " + std::to_string(t.failed) + " failed check(s), first: " + t.failures.front();
    r.details["failures"] = t.failures;
  }
}

GroupPtr group(const std::string& spec) { return std::make_shared<FiniteGroup>(build_group(spec)); }

Embedding embed(const std::string& sub, const std::string& ambient) {
  auto e = find_embedding(group(sub), group(ambient));
  require(e.has_value(), sub + " does not embed in " + ambient);
  return *e;
}

std::uint64_t criterion_seed(std::uint64_t seed, int id) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id) * 7919ULL + 1;
}

// 1 -------------------------------------------------------------------------

void fejer_criterion(CriterionResult& r) {
  Tally t;
  auto window = std::make_shared<IntegerWindow>(160);
  double worst_realization = 0;
  for (Index n = 1; n <= 160; ++n) {
    const FejerTerm f = fejer(n, window);
    bool exact = true;
    for (Index x = 0; x < window->size(); ++x) {
      const Index m = std::abs(window->value(x));
      const double want = m < n ? static_cast<double>(n - m) / static_cast<double>(n) : 0.0;
      exact = exact && f.phi(x) == Complex(want);
    }
    t.expect(exact, "phi_" + std::to_string(n) + " differs from (n-|m|)/n");
    t.expect(f.u_norm_sq == 1.0, "|u|^2 != 1 at n = " + std::to_string(n));
    worst_realization = std::max(worst_realization, f.realization_residual);
  }
  t.expect(worst_realization <= 1e-12, "coefficient realization residual " + sci(worst_realization));
  Json nets = Json::array();
  for (int d = 2; d <= 4; ++d) {
    const NetReport net = fejer_net(160, 8, 0.05, d);
    Index reached = 0;
    for (const NetTerm& term : net.terms)
      if (reached == 0 && term.deviation <= net.threshold) reached = static_cast<Index>(term.parameter);
    t.expect(net.constant_evidence == 1.0, "evidence " + sci(net.constant_evidence) + " at d = " + std::to_string(d));
    t.expect(net.converged, "threshold not reached at d = " + std::to_string(d));
    nets.push_back({{"d", d}, {"evidence", net.constant_evidence}, {"first_n_within_threshold", reached},
                    {"last_deviation", net.terms.back().deviation}});
  }
  r.details = {{"nets", nets}, {"realization_residual", worst_realization}};
  close(r, t, "n=1..160 exact, |u|^2=1, evidence " + sci(nets[0]["evidence"].get<double>()) +
                  " for d=2,3,4, window [-8,8] within 0.05 from n=" +
                  std::to_string(nets[0]["first_n_within_threshold"].get<Index>()));
}

// 2 -------------------------------------------------------------------------

void tree_criterion(CriterionResult& r, const AcceptanceOracles& o) {
  Tally t;
  Json cells = Json::array();
  double worst_residual = 0;
  for (int n = 0; n <= 3; ++n) {
    for (int d = 2; d <= 4; ++d) {
      const int radius = n + d;
      auto ball = std::make_shared<const FreeBall>(2, radius);
      long long words = 0;
      for (int j = 0; j <= radius; ++j) words += o.sphere_count(2, j);
      const std::string cell = "(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";
      t.expect(words == ball->size(), "ball enumeration " + cell);

      const TreeFamily f = tree_witness(ball, n, d, 1);
      const VerifyResult v = verify_factorization(f.phi, f.witness, TupleSource::all(), 1e-12);
      worst_residual = std::max(worst_residual, v.residual);
      const double root = std::sqrt(n + 1.0);
      double middle_dev = 0;
      for (double s : f.middle_sups) middle_dev = std::max(middle_dev, std::abs(s - 1.0));
      t.expect(v.residual <= 1e-12, "residual " + sci(v.residual) + " " + cell);
      t.expect(f.xi_d_sup <= root + 1e-12, "|xi_d| " + sci(f.xi_d_sup) + " " + cell);
      t.expect(middle_dev <= 1e-12, "middle |xi_i| off 1 by " + sci(middle_dev) + " " + cell);
      t.expect(v.bound <= n + 1 + 1e-12, "bound " + sci(v.bound) + " > n+1 " + cell);
      Json j = {{"n", n}, {"d", d}, {"R", radius}, {"tuples", v.tuples}, {"residual", v.residual},
                {"xi_d_sup", f.xi_d_sup}, {"xi_1_sup", f.xi_1_sup}, {"middle_sups", f.middle_sups},
                {"bound", v.bound}};
      if (n >= 1) {
        const ChiCertificate c = chi_certificate(ball, n, d, 1);
        t.expect(c.residual <= 1e-12 && c.bound <= 2.0 * n + 1e-12,
                 "chi_n certificate " + sci(c.bound) + " > 2n " + cell);
        j["chi_bound"] = c.bound;
      }
      cells.push_back(j);
    }
  }
  r.details = {{"cells", cells}};
  close(r, t, "12 cells, worst residual " + sci(worst_residual));
}

// 3 -------------------------------------------------------------------------

void kernel_criterion(CriterionResult& r, const AcceptanceOracles& o) {
  Tally t;
  auto f2 = std::make_shared<const FreeBall>(2, 6);
  auto line = std::make_shared<const FreeBall>(1, 12);
  const std::vector<Index> s_f2 = f2->ball(3), s_line = line->ball(6);
  double worst_tail = 0;
  for (double time : {0.1, 0.5, 1.0, 2.0}) {
    const std::string ts = "t=" + sci(time);
    t.expect(is_pd_function(haagerup_family(f2, 3, time).rho, s_f2, 1e-10), "rho not pd on F2 ball, " + ts);
    t.expect(is_pd_function(haagerup_family(line, 6, time).rho, s_line, 1e-10), "rho not pd on the line, " + ts);
    double previous = std::numeric_limits<double>::infinity();
    for (Index n = 0; n <= 60; ++n) {
      const double closed = haagerup_tail(n, time);
      const long long kmax = n + static_cast<long long>(std::ceil(80.0 / time)) + 100;
      const double partial = static_cast<double>(o.tail_partial(n, time, kmax));
      const double err = std::max(std::abs(closed - partial),
                                  std::abs(closed - haagerup_tail_summed(n, time, kmax)));
      worst_tail = std::max(worst_tail, err);
      t.expect(err <= 1e-10, "tail mismatch " + sci(err) + " at n=" + std::to_string(n) + ", " + ts);
      t.expect(closed < previous, "tail not decreasing at n=" + std::to_string(n) + ", " + ts);
      previous = closed;
    }
  }
  r.details = {{"worst_tail_error", worst_tail}};
  close(r, t, "rho_t pd for t in {0.1,0.5,1,2}; tail error " + sci(worst_tail));
}

// 4 -------------------------------------------------------------------------

void schur_criterion(CriterionResult& r, const AcceptanceOptions& opts, const AcceptanceOracles& o,
                     const SolveOptions& so) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 4));
  auto run = [&](const Matrix& m, const std::string& what) -> std::optional<double> {
    try {
      return schur_norm(m, so).value;
    } catch (const NoCertificate& e) {
      t.expect(false, what + ": " + e.what());
      return std::nullopt;
    }
  };
  std::vector<Index> sizes;
  if (opts.quick)
    sizes = {1, 2, 5, 12, 24};
  else
    for (Index n = 1; n <= 24; ++n) sizes.push_back(n);
  double perm_dev = 0;
  for (Index n : sizes)
    if (auto v = run(random_permutation_matrix(n, rng), "permutation " + std::to_string(n))) {
      perm_dev = std::max(perm_dev, std::abs(*v - 1.0));
      t.expect(std::abs(*v - 1.0) <= 1e-6, "permutation " + std::to_string(n) + " gave " + sci(*v));
    }

  double rank_dev = 0;
  const int rank_cases = opts.quick ? 10 : 50;
  for (int k = 0; k < rank_cases; ++k) {
    const Vector u = rng.complex_vector(1 + rng.below(8));
    const Vector v = rng.complex_vector(1 + rng.below(8));
    const double want = u.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff();
    if (auto got = run(u * v.adjoint(), "rank one " + std::to_string(k))) {
      rank_dev = std::max(rank_dev, std::abs(*got - want));
      t.expect(std::abs(*got - want) <= 1e-6, "rank one " + std::to_string(k) + " off by " + sci(*got - want));
    }
  }

  double oracle_dev = 0;
  const int herm_cases = opts.quick ? 2 : 20;
  Json pairs = Json::array();
  for (int k = 0; k < herm_cases; ++k) {
    const Matrix h = random_hermitian(5, rng);
    if (auto got = run(h, "hermitian " + std::to_string(k))) {
      const double ref = o.schur(h, static_cast<std::uint64_t>(k));
      const double rel = std::abs(*got - ref) / ref;
      oracle_dev = std::max(oracle_dev, rel);
      pairs.push_back({*got, ref});
      t.expect(rel <= 1e-3, "hermitian " + std::to_string(k) + " relative gap " + sci(rel));
    }
  }
  r.details = {{"permutation_deviation", perm_dev}, {"rank_one_deviation", rank_dev},
               {"oracle_relative_gap", oracle_dev}, {"hermitian_pairs", pairs}};
  close(r, t, std::to_string(sizes.size()) + " permutations dev " + sci(perm_dev) + ", " +
                  std::to_string(rank_cases) + " rank-one dev " + sci(rank_dev) + ", " +
                  std::to_string(herm_cases) + " hermitian vs oracle rel " + sci(oracle_dev));
}

// 5 -------------------------------------------------------------------------

void b_norm_criterion(CriterionResult& r, const AcceptanceOptions& opts, const AcceptanceOracles& o,
                      const SolveOptions& so) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 5));
  const int samples = opts.quick ? 5 : 50;
  double dft_dev = 0, pd_dev = 0, gap = 0;
  for (const char* spec : {"cyclic:5", "cyclic:6"}) {
    GroupPtr g = group(spec);
    for (int k = 0; k < samples; ++k) {
      const GroupFunction f = random_function(g, rng);
      std::vector<Complex> vals(f.values().data(), f.values().data() + f.size());
      const double dev = std::abs(b_norm(f, so) - o.cyclic_b_norm(vals));
      dft_dev = std::max(dft_dev, dev);
      t.expect(dev <= 1e-6, std::string(spec) + " DFT mismatch " + sci(dev));
    }
  }
  const int pd_samples = opts.quick ? 3 : 25;
  for (const char* spec : {"cyclic:5", "cyclic:6", "sym:3", "dihedral:4"}) {
    GroupPtr g = group(spec);
    for (int k = 0; k < pd_samples; ++k) {
      const double dev = std::abs(b_norm(random_pd_function(g, rng), so) - 1.0);
      pd_dev = std::max(pd_dev, dev);
      t.expect(dev <= 1e-6, std::string(spec) + " pd B norm off 1 by " + sci(dev));
    }
  }
  const int a_samples = opts.quick ? 2 : 20;
  for (const char* spec : {"cyclic:5", "cyclic:6", "sym:3"}) {
    GroupPtr g = group(spec);
    for (int k = 0; k < a_samples; ++k) {
      const ANormReport a = a_norm_report(random_function(g, rng), so);
      gap = std::max(gap, std::abs(a.gap));
      t.expect(std::abs(a.gap) <= 1e-4, std::string(spec) + " A norm cross-check gap " + sci(a.gap));
    }
  }
  r.details = {{"dft_deviation", dft_dev}, {"pd_deviation", pd_dev}, {"a_norm_gap", gap}};
  close(r, t, "DFT dev " + sci(dft_dev) + ", pd dev " + sci(pd_dev) + ", A-norm gap " + sci(gap));
}

// 6 -------------------------------------------------------------------------

void sandwich_criterion(CriterionResult& r, const AcceptanceOptions& opts, const SolveOptions& so) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 6));
  const int samples = opts.quick ? 5 : 100;
  double worst_chain = -std::numeric_limits<double>::infinity();
  double worst_witness = -std::numeric_limits<double>::infinity();
  double worst_dual = -std::numeric_limits<double>::infinity();
  for (const char* spec : {"cyclic:6", "dihedral:4", "sym:3"}) {
    GroupPtr g = group(spec);
    const std::vector<Index> all = m2_index_set(*g);
    const double n = static_cast<double>(g->order());
    for (int k = 0; k < samples; ++k) {
      const GroupFunction f = random_function(g, rng);
      const std::string tag = std::string(spec) + " #" + std::to_string(k);
      NormReport m2;
      try {
        m2 = m2_norm(f, so);
      } catch (const Error& e) {
        t.expect(false, tag + ": " + e.what());
        continue;
      }
      const double lower = m2.lower->value, upper = m2.upper->value;
      const double b_upper = b_norm_solve(f, so).upper;
      worst_chain = std::max(worst_chain, lower - b_upper);
      t.expect(lower <= b_upper + 1e-6, tag + " m2 lower above B upper");
      // Uniform dual weights give an engine-independent lower bound.
      const double dual = trace_norm(herz_schur_matrix(f, all)) / n;
      worst_dual = std::max(worst_dual, dual - upper);
      t.expect(dual <= upper + 1e-6, tag + " m2 upper " + sci(upper) + " below dual bound " + sci(dual));
      for (int d : {2, 3}) {
        const CoefficientWitness cw = coefficient_witness(f, d, so);
        t.expect(cw.verify.certified, tag + " witness not certified at d=" + std::to_string(d));
        worst_witness = std::max(worst_witness, lower - cw.verify.bound);
        t.expect(cw.verify.bound >= lower - 1e-6, tag + " witness bound below m2 lower");
      }
    }
  }
  r.details = {{"max_m2_lower_minus_b_upper", worst_chain},
               {"max_m2_lower_minus_witness", worst_witness},
               {"max_dual_minus_m2_upper", worst_dual}};
  close(r, t, std::to_string(3 * samples) + " functions; max(m2 lo - B up) " + sci(worst_chain) +
                  ", max(m2 lo - witness) " + sci(worst_witness) + ", max(dual - m2 up) " +
                  sci(worst_dual));
}

// 7 - 10 ----------------------------------------------------------------------

void induction_criterion(CriterionResult& r, const AcceptanceOptions& opts, const SolveOptions& so) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 7));
  const int samples = opts.quick ? 5 : 50;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [name, cs] : shipped_couplings()) {
    const GroupFunction one = induce(cs, GroupFunction::constant(cs.lambda(), 1.0));
    bool unit = true;
    for (Index g = 0; g < one.size(); ++g) unit = unit && one(g) == Complex(1.0);
    t.expect(unit, name + ": induce(1) != 1");
    for (int k = 0; k < samples; ++k) {
      const GroupFunction phi = random_function(cs.lambda(), rng);
      try {
        const NormReport before = m2_norm(phi, so);
        const NormReport after = m2_norm(induce(cs, phi), so);
        const double excess = after.upper->value - before.lower->value;
        worst = std::max(worst, excess);
        t.expect(excess <= 1e-6, name + " #" + std::to_string(k) + " m2 grew by " + sci(excess));
      } catch (const Error& e) {
        t.expect(false, name + ": " + e.what());
      }
    }
  }
  r.details = {{"max_m2_increase", worst}};
  close(r, t, std::to_string(samples) + " functions per coupling; max m2(induced) - m2 " + sci(worst));
}

void transport_criterion(CriterionResult& r, const AcceptanceOptions& opts, const SolveOptions& so) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 8));
  const int samples = opts.quick ? 2 : 10;
  double worst_res = 0, worst_excess = -std::numeric_limits<double>::infinity();
  for (const auto& [name, cs] : shipped_couplings()) {
    for (int d = 2; d <= 4; ++d) {
      for (int k = 0; k < samples; ++k) {
        const GroupFunction phi = random_pd_function(cs.lambda(), rng);
        const std::string tag = name + " d=" + std::to_string(d) + " #" + std::to_string(k);
        const CoefficientWitness cw = coefficient_witness(phi, d, so);
        const FactorizationWitness hat = induce_witness(cs, phi, cw.witness);
        const VerifyResult v = verify_factorization(induce(cs, phi), hat, TupleSource::all(), 1e-9);
        const double excess = v.bound - cw.witness.bound();
        worst_res = std::max(worst_res, v.residual);
        worst_excess = std::max(worst_excess, excess);
        t.expect(v.residual <= 1e-9, tag + " residual " + sci(v.residual));
        t.expect(excess <= 1e-6, tag + " bound grew by " + sci(excess));
      }
    }
  }
  r.details = {{"worst_residual", worst_res}, {"max_bound_increase", worst_excess}};
  close(r, t, "d=2,3,4; worst residual " + sci(worst_res) + ", max bound increase " + sci(worst_excess));
}

void a_transport_criterion(CriterionResult& r, const AcceptanceOptions& opts, const SolveOptions& so) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 9));
  const int samples = opts.quick ? 5 : 50;
  double worst = -std::numeric_limits<double>::infinity(), defect = 0, coeff = 0;
  std::vector<NamedCoupling> all = shipped_couplings();
  for (const LatticeCase& l : lattice_cases())
    all.push_back({"lattice " + l.name, lattice_coupling(l.embedding, l.omega)});
  for (const auto& [name, cs] : all) {
    const KoopmanReport k = koopman_check(cs);
    const double dk = std::max({k.unitarity_defect, k.coisometry_defect, k.intertwining_defect});
    defect = std::max(defect, dk);
    t.expect(dk <= 1e-10, name + " Koopman defect " + sci(dk));
  }
  for (const auto& [name, cs] : shipped_couplings()) {
    for (int k = 0; k < samples; ++k) {
      const GroupFunction phi = random_function(cs.lambda(), rng);
      const ANormReport a = a_norm_report(phi, so);
      const double excess = a_norm(induce(cs, phi), so) - a.value;
      worst = std::max(worst, excess);
      t.expect(excess <= 1e-6, name + " #" + std::to_string(k) + " A norm grew by " + sci(excess));
      const KoopmanReport kr = koopman_check(cs, phi, a.realization);
      const double c = std::max(kr.coefficient_residual, kr.norm_defect);
      coeff = std::max(coeff, c);
      t.expect(c <= 1e-10, name + " #" + std::to_string(k) + " coefficient transport defect " + sci(c));
    }
  }
  r.details = {{"max_a_norm_increase", worst}, {"koopman_defect", defect}, {"coefficient_defect", coeff}};
  close(r, t, "max A(induced) - A " + sci(worst) + ", Koopman defect " + sci(defect) +
                  ", coefficient defect " + sci(coeff));
}

void duality_criterion(CriterionResult& r, const AcceptanceOptions& opts) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 10));
  const int samples = opts.quick ? 5 : 50;
  double adj = 0, l1 = 0;
  for (const auto& [name, cs] : shipped_couplings()) {
    for (int k = 0; k < samples; ++k) {
      const GroupFunction phi = random_function(cs.lambda(), rng);
      const GroupFunction f = random_function(cs.gamma(), rng);
      const double e = std::abs(pairing(induce(cs, phi), f) - pairing(phi, induce_dual(cs, f)));
      adj = std::max(adj, e);
      t.expect(e <= 1e-12, name + " adjointness defect " + sci(e));
      const GroupFunction pos = GroupFunction::generate(cs.gamma(), [&](Index g) { return std::abs(f(g)); });
      const double e1 = std::abs(induce_dual(cs, pos).l1_norm() - pos.l1_norm());
      l1 = std::max(l1, e1);
      t.expect(e1 <= 1e-12, name + " l1 defect " + sci(e1));
    }
  }
  r.details = {{"adjointness_defect", adj}, {"l1_defect", l1}};
  close(r, t, "adjointness " + sci(adj) + ", l1 " + sci(l1));
}

void lattice_criterion(CriterionResult& r, const AcceptanceOptions& opts) {
  Tally t;
  Rng rng(criterion_seed(opts.seed, 11));
  const int samples = opts.quick ? 5 : 50;
  double worst = 0;
  for (const LatticeCase& l : lattice_cases()) {
    const CouplingSpace cs = lattice_coupling(l.embedding, l.omega);
    for (int k = 0; k < samples; ++k) {
      const GroupFunction phi = random_function(l.embedding.sub, rng);
      const double e =
          (lattice_induce(l.embedding, l.omega, phi).values() - induce(cs, phi).values()).cwiseAbs().maxCoeff();
      worst = std::max(worst, e);
      t.expect(e <= 1e-12, l.name + " mismatch " + sci(e));
    }
  }
  r.details = {{"max_difference", worst}};
  close(r, t, "lattice vs coupling induction " + sci(worst));
}

// 12 ------------------------------------------------------------------------

void self_criterion(CriterionResult& r, const AcceptanceOptions& opts, const AcceptanceOracles& o) {
  Tally t;
  AcceptanceOptions q;
  q.quick = true;
  q.seed = opts.seed;
  q.self_checks = false;
  const std::string first = acceptance_json(run_acceptance(q, o), false).dump();
  const std::string second = acceptance_json(run_acceptance(q, o), false).dump();
  t.expect(first == second, "two quick runs with the same seed differ");

  q.inject_schur_fault = true;
  q.only = {4, 6};
  std::vector<int> caught;
  for (const CriterionResult& c : run_acceptance(q, o))
    if (!c.pass) caught.push_back(c.id);
  t.expect(!caught.empty(), "injected Schur fault went unnoticed");
  r.details = {{"digest", fnv1a_hex(first)}, {"fault_caught_by", caught}};
  std::string by;
  for (int id : caught) by += (by.empty() ? "" : ",") + std::to_string(id);
  close(r, t, "quick suite digest " + fnv1a_hex(first) + " reproduced; fault caught by criteria {" + by + "}");
}

}  // namespace

std::vector<NamedCoupling> shipped_couplings() {
  std::vector<NamedCoupling> out;
  out.push_back({"cyclic:2 <= cyclic:4", subgroup_coupling(embed("cyclic:2", "cyclic:4"))});
  out.push_back({"cyclic:3 <= sym:3", subgroup_coupling(embed("cyclic:3", "sym:3"))});
  out.push_back({"alt:3 <= sym:3", subgroup_coupling(embed("alt:3", "sym:3"))});
  out.push_back({"cyclic:2 <= sym:3", subgroup_coupling(embed("cyclic:2", "sym:3"))});
  out.push_back({"cyclic:2 / cyclic:3 on 6 points", z2_z3_coupling()});
  return out;
}

std::vector<LatticeCase> lattice_cases() {
  std::vector<LatticeCase> out;
  for (auto [sub, ambient] : {std::pair{"alt:3", "sym:3"}, std::pair{"cyclic:2", "cyclic:4"}}) {
    Embedding e = embed(sub, ambient);
    std::vector<Index> omega = left_transversal(e);
    out.push_back({std::string(ambient) + " / " + sub, std::move(e), std::move(omega)});
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const AcceptanceOracles& oracles) {
  require(oracles.schur && oracles.cyclic_b_norm && oracles.tail_partial && oracles.sphere_count,
          "acceptance needs every oracle hook");
  SolveOptions so;
  so.seed = opts.seed;
  so.inject_schur_fault = opts.inject_schur_fault;

  struct Entry {
    int id;
    const char* title;
    double limit;
    std::function<void(CriterionResult&)> run;
  };
  const std::vector<Entry> entries = {
      {1, "Fejer net on Z", 5, [&](CriterionResult& r) { fejer_criterion(r); }},
      {2, "tree construction on F2", 60, [&](CriterionResult& r) { tree_criterion(r, oracles); }},
      {3, "pd kernels and tail bound", 10, [&](CriterionResult& r) { kernel_criterion(r, oracles); }},
      {4, "Schur engine", 120, [&](CriterionResult& r) { schur_criterion(r, opts, oracles, so); }},
      {5, "B and A norms", 120, [&](CriterionResult& r) { b_norm_criterion(r, opts, oracles, so); }},
      {6, "inclusion sandwich", 180, [&](CriterionResult& r) { sandwich_criterion(r, opts, so); }},
      {7, "induction at d = 2", 300, [&](CriterionResult& r) { induction_criterion(r, opts, so); }},
      {8, "witness transport", 300, [&](CriterionResult& r) { transport_criterion(r, opts, so); }},
      {9, "A-norm transport and Koopman", 0, [&](CriterionResult& r) { a_transport_criterion(r, opts, so); }},
      {10, "duality", 0, [&](CriterionResult& r) { duality_criterion(r, opts); }},
      {11, "lattice coincidence", 0, [&](CriterionResult& r) { lattice_criterion(r, opts); }},
      {12, "determinism and fault detection", 0,
       [&](CriterionResult& r) { self_criterion(r, opts, oracles); }},
  };

  std::vector<CriterionResult> out;
  for (const Entry& e : entries) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.id) == opts.only.end())
      continue;
    if (e.id == 12 && !opts.self_checks) continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    r.limit_seconds = e.limit;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(r);
    } catch (const std::exception& ex) {
      r.pass = false;
      r.summary = std::string("aborted: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
      r.pass = false;
      r.summary += "; exceeded the " + std::to_string(static_cast<int>(r.limit_seconds)) + " s budget";
    }
    out.push_back(std::move(r));
  }
  return out;
}

Json acceptance_json(const std::vector<CriterionResult>& results, bool timing) {
  Json list = Json::array();
  bool all = true;
  for (const CriterionResult& r : results) {
    Json j = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary},
              {"details", r.details}};
    if (timing) j["seconds"] = r.seconds;
    if (r.limit_seconds > 0) j["limit_seconds"] = r.limit_seconds;
    list.push_back(j);
    all = all && r.pass;
  }
  return {{"criteria", list}, {"all_pass", all}};
}

}  // namespace mdmult
