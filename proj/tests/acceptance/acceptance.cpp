// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rieszlab/verify.hpp"

using namespace rieszlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Appends failing or inconclusive records to the detail text.
Outcome all_pass(const std::vector<VerificationReport>& reports) {
  Outcome o;
  int bad = 0;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::pass) continue;
    o.ok = false;
    if (++bad > 5) continue;
    std::string who = r.check_name;
    for (const auto& [k, v] : r.params)
      if (k == "subject" || k == "K" || k == "p") who += " " + k + "=" + v;
    std::string rows;
    for (const auto& row : r.rows)
      if (row.verdict != Verdict::pass)
        rows += " [" + row.label + ": lhs=" + num(row.lhs) + " rhs=" + num(row.rhs) + " " + verdict_name(row.verdict) + "]";
    o.detail += "\n      " + who + " -> " + verdict_name(r.verdict) + rows;
  }
  o.detail = std::to_string(reports.size() - static_cast<std::size_t>(bad)) + "/" + std::to_string(reports.size()) +
             " records pass" + o.detail;
  return o;
}

Outcome merge(Outcome a, const Outcome& b) {
  a.ok = a.ok && b.ok;
  a.detail += "; " + b.detail;
  return a;
}

bool run(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < budget_s;
  const bool ok = o.ok && in_time;
  std::printf("[%s] %s %s (%.1f s, budget %.0f s%s): %s\n", ok ? "PASS" : "FAIL", id, title, s, budget_s,
              in_time ? "" : ", over budget", o.detail.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  bool all = true;

  all &= run("AC1", "quadrature sanity", 5, [] {
    Outcome o;
    double worst_sphere = 0.0, worst_ball = 0.0;
    for (int n : {2, 3, 4}) {
      const auto one = [](const Eigen::VectorXd&) { return 1.0; };
      worst_sphere = std::max(worst_sphere, std::abs(integrate_sphere(sphere_rule(n, 2), one).value - 1.0));
      worst_ball = std::max(worst_ball, std::abs(integrate_ball(ball_rule(n, 1.0, 2, 2), one).value - 1.0));
    }
    o.ok = worst_sphere <= 1e-12 && worst_ball <= 1e-8;
    o.detail = "max |sphere - 1| = " + num(worst_sphere) + ", max |ball - 1| = " + num(worst_ball);
    return o;
  });

  all &= run("AC2", "Euclidean Green identity, residual <= 1e-5", 30, [] {
    std::vector<VerificationReport> reps;
    reps.push_back(check_green_euclidean(real_polynomial_map(RealPolynomial::identity(2)), 0.7, 2.0));
    std::mt19937_64 rng(default_seed);
    for (int i = 0; i < 5; ++i) {
      const MapSpec f = disk_analytic(random_disk_polynomial(rng));
      for (double p : {1.5, 2.0, 3.0})
        for (double r : {0.3, 0.7}) reps.push_back(check_green_euclidean(f, r, p));
    }
    return all_pass(reps);
  });

  all &= run("AC3", "invariant Green identity for (P_h[phi])^2, n=3, r=0.5", 60, [] {
    RealPolynomial phi(3, {{{1.0, {1, 0, 0}}, {0.5, {0, 1, 1}}}, {{1.0, {0, 0, 1}}, {0.3, {2, 0, 0}}}});
    return all_pass({check_green_invariant(hyperbolic_poisson_extend(boundary_from_polynomial(phi)), 0.5, 1e-4)});
  });

  all &= run("AC4", "conjugate-function constant cot(pi/(2p*)) with near-equality at Re z", 60, [] {
    const auto reps = run_suite("riesz_planar", {});
    Outcome o = all_pass(reps);
    double min_ratio = 1.0;
    for (const auto& row : reps.front().rows) min_ratio = std::min(min_ratio, row.rhs);
    o.ok = o.ok && reps.front().check_name == "riesz_near_extremal" && min_ratio >= 0.999;
    o.detail += "; min ratio at Re z, p=2: " + num(min_ratio);
    return o;
  });

  all &= run("AC5", "harmonic QR coordinate bound (empirical K)", 120, [] { return all_pass(run_suite("cor_1_2", {})); });

  all &= run("AC6", "invariant harmonic QR norm bound, n=3, with n=2 cross-check", 180,
             [] { return all_pass(run_suite("thm_1_3", {})); });

  all &= run("AC7", "pluriharmonic conjugate bounds, kappa in {0, 0.5}", 120,
             [] { return all_pass(run_suite("thm_1_5", {})); });

  all &= run("AC8", "sharpness example: constant f1 mean and divergence signature, K in {1, 3}", 60, [] {
    SuiteParams sp;
    sp.K = {1.0, 3.0};
    return all_pass(run_suite("sharpness", sp));
  });

  all &= run("AC9", "planar bridge, shear counterexample and Wu inequality", 60,
             [] { return all_pass(run_suite("prop_1_1", {})); });

  all &= run("AC10", "property suites", 30, [] {
    std::vector<VerificationReport> reps;
    reps.push_back(check_frobenius_sandwich(default_seed, 1000));
    reps.push_back(check_power_mean(default_seed, 1000, {0.5, 1.0, 2.0, 3.7}));
    reps.push_back(check_conjugation_involution(default_seed, 100));
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(2);
    e1(0) = 1.0;
    reps.push_back(check_nontangential_monotone(sharpness_example(2.0), e1));
    const Eigen::VectorXd diag = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));
    reps.push_back(check_nontangential_monotone(poisson_extend(boundary_from_polynomial(RealPolynomial::identity(3))), diag));
    return all_pass(reps);
  });

  return all ? 0 : 1;
}
