// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "symq/adversary.hpp"
#include "symq/measures.hpp"
#include "symq/qcount.hpp"
#include "symq/spectral.hpp"
#include "symq/verify.hpp"

using namespace symq;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

BooleanFunction table(const SymmetricProfile& p) { return BooleanFunction::from_profile(p); }

// 1. lambda(T_k) = sqrt(k (n+1-k)) within relative 1e-6, n in [2,12].
void threshold_closed_form(Outcome& o) {
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n)
    for (int k = 1; k <= n; ++k) {
      const double lambda = lambda_of(table(make_threshold(n, k)));
      const double closed = lambda_threshold_closed(n, k);
      const double rel = std::abs(lambda - closed) / closed;
      worst = std::max(worst, rel);
      o.require(rel <= 1e-6, "n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  o.detail << "max relative error " << worst;
}

// 2. T_k edge sets for k in S_f partition the edges of f, n in [2,10].
void decomposition(Outcome& o) {
  std::size_t profiles = 0;
  for (int n = 2; n <= 10; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)); ++code) {
      const SymmetricProfile f = profile_from_code(n, code);
      const DecompositionCheck d = check_threshold_decomposition(f);
      o.require(d.equal && d.disjoint && d.threshold_edges == d.function_edges, f.to_string());
      ++profiles;
    }
  o.detail << profiles << " profiles";
}

// 3. sqrt(t (n+1-t)) - 1e-6 <= lambda <= sqrt(s0 s1) + 1e-6 for non-constant f, n in [2,10].
void sandwich(Outcome& o) {
  std::size_t checked = 0, tight_lower = 0;
  for (int n = 2; n <= 10; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)); ++code) {
      const SymmetricProfile p = profile_from_code(n, code);
      if (p.is_constant()) continue;
      const BooleanFunction f = table(p);
      const double lambda = lambda_of(f), lower = lambda_lower_bound(p), upper = lambda_upper_s0s1(f);
      o.require(lower - 1e-6 <= lambda && lambda <= upper + 1e-6, p.to_string());
      ++checked;
      tight_lower += std::abs(lambda - lower) <= 1e-6;
    }
  o.detail << checked << " functions, " << tight_lower << " tight at the lower bound";
}

// 4. Closed-form bs equals the brute-force oracle at every weight, n in [2,8].
void bs_formula(Outcome& o) {
  std::size_t cells = 0, mismatches = 0;
  for (int n = 2; n <= 8; ++n) {
    const ScanReport r = scan_symmetric(n, {ScanCheck::BsFormula});
    cells += r.tallies.front().evaluated;
    mismatches += r.violations();
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.detail << cells << " (profile, weight) cells, " << mismatches << " mismatches";
}

// 5. No violations of C <= 2s and bs <= 1.5 s for n in [2,10]; extremal witnesses.
void separations(Outcome& o) {
  std::size_t violations = 0;
  for (int n = 2; n <= 10; ++n) violations += scan_symmetric(n, {ScanCheck::C2s, ScanCheck::Bs32}).violations();
  o.require(violations == 0, std::to_string(violations) + " violations");
  const ExtremalCReport c = extremal_C_report(5);
  o.require(c.measures.s == 4 && c.measures.C == 4 && c.c_is_2s_minus_4 && c.c1_is_twice_s1, "extremal C at n=5");
  const ExtremalGReport g16 = extremal_G_report(16), g8 = extremal_G_report(8);
  o.require(g16.measures.bs == 12 && g16.measures.s == 10 && g16.bs_bruteforce == 12, "G at n=16");
  o.require(g8.measures.bs == 6 && g8.measures.s == 6 && g8.bs_bruteforce == 6, "G at n=8");
  o.detail << violations << " violations; n=5: s=" << c.measures.s << " C=" << c.measures.C << " s1=" << c.measures.s1
           << " C1=" << c.measures.C1 << "; G16: bs=" << g16.measures.bs << " s=" << g16.measures.s
           << "; G8: bs=" << g8.measures.bs << " s=" << g8.measures.s;
}

// 6. Exact relational bound (n/2+sqrt n)/(2 sqrt n) for GapMaj, n in {16,64,256}.
void gapmaj_adversary(Outcome& o) {
  for (int n : {16, 64, 256}) {
    const int r = exact_sqrt(n);
    const RelationalBound b = relational_bound(gapmaj_relation(n));
    const BigRational expected(n / 2 + r, 2 * r);
    o.require(b.bound_squared() == expected * expected, "n=" + std::to_string(n));
    o.detail << "n=" << n << ": " << b.bound << "  ";
  }
}

// 7. Uniform scheme 1/sqrt n is MM-feasible with objective sqrt n; bs <= FC <= sqrt n, n in {16,64}.
void gapmaj_mm_fc(Outcome& o) {
  for (int n : {16, 64}) {
    const SymmetricProfile g = make_gapmaj(n);
    const int r = exact_sqrt(n);
    const LevelWeightScheme w = uniform_level_scheme(n, 1.0 / r);
    const SchemeCheck c = check_level_scheme(g, w, SchemeMode::MM);
    o.require(c.feasible && std::abs(c.objective - r) <= 1e-12, "uniform scheme n=" + std::to_string(n));
    if (n == 16) {
      const SchemeCheck full = check_scheme(table(g), expand(w), SchemeMode::MM);
      o.require(full.feasible && std::abs(full.objective - r) <= 1e-12, "table check n=16");
    }
    const MeasureReport m = aggregate_symmetric(g);
    for (int z : {n / 2 - r, n / 2 + r}) {
      const double fc = fractional_certificate_symmetric(g, z);
      o.require(fc <= r + 1e-9 && fc >= m.bs - 1e-9, "FC at n=" + std::to_string(n) + " z=" + std::to_string(z));
    }
    if (n == 16) {
      const BooleanFunction t = table(g);
      for (int z : {4, 12}) {
        const Input x = representative(n, z);
        const double full = fractional_certificate(t, x);
        o.require(full <= r + 1e-9 && full >= local_block_sensitivity_bruteforce(t, x) - 1e-9, "full FC n=16");
      }
    }
    o.detail << "n=" << n << ": objective " << c.objective << " FC " << m.FC << " bs " << m.bs << "  ";
  }
}

// 8. Explicit scheme feasible in MM and MM' with objective <= 3 sqrt(t n), n in [2,12].
void explicit_scheme_check(Outcome& o) {
  std::size_t checked = 0;
  double worst_ratio = 0.0;
  for (int n = 2; n <= 12; ++n) {
    ExplicitSchemeCertifier certifier(n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)); ++code) {
      const SymmetricProfile p = profile_from_code(n, code);
      if (p.is_constant()) continue;
      const SchemeCheck mm = certifier.check(p, SchemeMode::MM), mmp = certifier.check(p, SchemeMode::MMPrime);
      const double cap = 3 * std::sqrt(double(t_of(p)) * n);
      o.require(mm.feasible && mmp.feasible && mm.objective <= cap + 1e-9, p.to_string());
      worst_ratio = std::max(worst_ratio, mm.objective / std::sqrt(double(t_of(p)) * n));
      ++checked;
    }
  }
  o.detail << checked << " functions, max objective/sqrt(t n) = " << worst_ratio;
}

// 9. decide_gapmaj: exact success >= 2/3, bounded queries/sqrt n, Monte Carlo within 3 sigma.
void quantum_counting(Outcome& o) {
  const double eps = 1.0 / 3.0;
  double max_constant = 0.0, min_success = 1.0, worst_sigma = 0.0;
  constexpr int kTrials = 10000;
  for (std::int64_t n : {16, 64, 256, 1024}) {
    const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(double(n))));
    const double delta = 1.0 / double(r);
    o.require((1 + delta) * double(n / 2 - r) < (1 - delta) * double(n / 2 + r), "no overlap n=" + std::to_string(n));
    for (std::int64_t t : {n / 2 - r, n / 2 + r}) {
      const GapMajDecision d = decide_gapmaj(n, t, eps, 0, true);
      o.require(d.M == next_power_of_two(4 * r) && d.M >= 4 * r && d.M < 8 * r, "M choice");
      o.require(d.single_run_success >= 2.0 / 3.0, "single-run success n=" + std::to_string(n));
      o.require(d.bit == (t > n / 2 ? 1 : 0), "exact bit");
      min_success = std::min(min_success, d.single_run_success);
      max_constant = std::max(max_constant, d.query_constant);
      int hits = 0;
      for (int i = 0; i < kTrials; ++i)
        hits += decide_gapmaj(n, t, eps, derive_seed(1234, std::uint64_t(i))).bit == (t > n / 2 ? 1 : 0);
      const double p = d.success_prob_exact, sigma = std::sqrt(p * (1 - p) / kTrials);
      const double z = std::abs(hits / double(kTrials) - p) / sigma;
      worst_sigma = std::max(worst_sigma, z);
      o.require(z <= 3.0, "Monte Carlo n=" + std::to_string(n) + " t=" + std::to_string(t));
    }
  }
  o.require(max_constant <= 4.0, "queries/sqrt(n) above 4");
  o.detail << "min success " << min_success << ", max queries/sqrt(n) " << max_constant << ", worst deviation "
           << worst_sigma << " sigma";
}

// 10. Spectral norm of a sum; full vs reduced FC; approximate degree.
void numerics(Outcome& o) {
  std::mt19937_64 rng(20251014);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 4 + trial % 29;
    SparseSymmetricMatrix a(dim), b(dim), sum(dim);
    for (std::uint32_t i = 0; i < dim; ++i)
      for (std::uint32_t j = i; j < dim; ++j) {
        if (val(rng) < 0.3) {
          const double v = val(rng);
          a.add(i, j, v);
          sum.add(i, j, v);
        }
        if (val(rng) < 0.3) {
          const double v = val(rng);
          b.add(i, j, v);
          sum.add(i, j, v);
        }
      }
    const PowerIterationOptions opts{1e-13, 1000000};
    const double na = spectral_norm(a, opts), nb = spectral_norm(b, opts), ns = spectral_norm(sum, opts);
    o.require(ns >= std::max(na, nb) - 1e-9, "sum bound trial " + std::to_string(trial));
  }
  std::size_t fc_cells = 0;
  double fc_worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const ScanReport r = scan_symmetric(n, {ScanCheck::FcReduced});
    fc_cells += r.tallies.front().evaluated;
    o.require(r.ok(), "fc-reduced n=" + std::to_string(n));
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)) && n <= 6; ++code) {
      const SymmetricProfile p = profile_from_code(n, code);
      for (int z = 0; z <= n; ++z)
        fc_worst = std::max(fc_worst, std::abs(fractional_certificate(table(p), representative(n, z)) -
                                               fractional_certificate_symmetric(p, z)));
    }
  }
  std::size_t adeg = 0;
  for (int n = 2; n <= 8; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)); ++code) {
      const SymmetricProfile p = profile_from_code(n, code);
      const int d0 = approx_degree_symmetric(p, 0.0), d1 = approx_degree_symmetric(p, 0.1),
                d3 = approx_degree_symmetric(p, 1.0 / 3.0);
      o.require(d0 == oracle::interpolation_degree(p), "interpolation degree " + p.to_string());
      o.require(d0 >= d1 && d1 >= d3, "monotone in eps " + p.to_string());
      ++adeg;
    }
  o.detail << "200 matrix pairs; " << fc_cells << " FC cells (max gap " << fc_worst << " for n<=6); " << adeg
           << " approx-degree profiles";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "threshold closed form", threshold_closed_form},
      {2, "threshold decomposition", decomposition},
      {3, "sandwich bounds", sandwich},
      {4, "block-sensitivity formula", bs_formula},
      {5, "separations and extremal functions", separations},
      {6, "GapMaj relational bound", gapmaj_adversary},
      {7, "GapMaj MM and FC", gapmaj_mm_fc},
      {8, "explicit adversary scheme", explicit_scheme_check},
      {9, "quantum counting", quantum_counting},
      {10, "numerics substrate", numerics},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %2d  %-36s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", int(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
