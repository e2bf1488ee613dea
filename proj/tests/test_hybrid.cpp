#include <cmath>

#include "doctest.h"
#include "qclone/analysis.hpp"
#include "qclone/errors.hpp"
#include "qclone/hybrid.hpp"
#include "test_support.hpp"

using namespace qclone;
using qtest::max_diff;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

Marginals run(const HybridSpec& spec, const PureQubit& psi) {
  return marginals(apply(combine(spec), psi));
}

BhPairParams random_feasible_pair() {
  for (;;) {
    const double xi = qtest::uniform(0.0, 0.5);
    const double xi_prime = qtest::uniform(0.0, 0.5);
    const double lambda = qtest::uniform(0.0, 1.0);
    try {
      return BhPairParams::constrained(xi, xi_prime, lambda);
    } catch (const Infeasible&) {
    }
  }
}

}  // namespace

TEST_CASE("combine") {
  const MachineSpec wz = MachineSpec::wz();
  const MachineSpec bh = MachineSpec::bh_optimal();
  const CloningIsometry v1 = build_machine(wz);

  SUBCASE("lambda = 1 keeps the first machine in its own block") {
    const CloningIsometry h = combine({1.0, wz, bh});
    CHECK(h.machine_dim() == 4);
    for (std::size_t ab = 0; ab < 4; ++ab)
      for (std::size_t col = 0; col < 2; ++col) {
        CHECK(h.matrix()(ab * 4 + 0, col) == v1.matrix()(ab * 2 + 0, col));
        CHECK(h.matrix()(ab * 4 + 1, col) == v1.matrix()(ab * 2 + 1, col));
        CHECK(h.matrix()(ab * 4 + 2, col) == cplx{0.0});
        CHECK(h.matrix()(ab * 4 + 3, col) == cplx{0.0});
      }
  }
  SUBCASE("lambda = 0 reproduces the second machine's marginals") {
    for (int t = 0; t < 10; ++t) {
      const PureQubit psi = qtest::random_state();
      const Marginals h = run({0.0, wz, bh}, psi);
      const Marginals b = marginals(apply(build_machine(bh), psi));
      CHECK(max_diff(h.a.matrix(), b.a.matrix()) < 1e-14);
      CHECK(max_diff(h.ab.matrix(), b.ab.matrix()) < 1e-14);
    }
  }
  SUBCASE("marginals are the lambda-weighted mixture") {
    for (int t = 0; t < 50; ++t) {
      const double lambda = qtest::uniform(0.0, 1.0);
      const MachineSpec first = MachineSpec::pauli(qtest::uniform(0.0, 1.0), 0.4);
      const MachineSpec second = MachineSpec::anti_clone();
      const PureQubit psi = qtest::random_state();
      const Marginals h = run({lambda, first, second}, psi);
      const Marginals m1 = marginals(apply(build_machine(first), psi));
      const Marginals m2 = marginals(apply(build_machine(second), psi));
      CHECK(is_isometry(combine({lambda, first, second}).matrix(), 1e-12));
      CHECK(max_diff(h.a.matrix(),
                     cplx{lambda} * m1.a.matrix() + cplx{1 - lambda} * m2.a.matrix()) <
            1e-13);
      CHECK(max_diff(h.b.matrix(),
                     cplx{lambda} * m1.b.matrix() + cplx{1 - lambda} * m2.b.matrix()) <
            1e-13);
    }
  }
  CHECK_THROWS_AS(combine({1.5, wz, bh}), DomainError);
  CHECK_THROWS_AS(combine({-0.1, wz, bh}), DomainError);
}

TEST_CASE("BH + anti-cloner at lambda = 1/2") {
  const HybridSpec spec = hybrid_spec(HybridKind::bh_anti, 0.5, {});
  for (int t = 0; t < 20; ++t) {
    const PureQubit psi = qtest::random_state();
    const Marginals m = run(spec, psi);
    CHECK(std::abs(fidelity(psi, m.a) - 0.75) < 1e-12);
    CHECK(std::abs(fidelity(psi, m.b) - 7.0 / 12.0) < 1e-12);
  }
  const FidelityPair f = pair_fidelities(HybridKind::bh_anti, 0.5);
  CHECK(round2(f.a) == doctest::Approx(0.75));
  CHECK(round2(f.b) == doctest::Approx(0.58));
}

TEST_CASE("hcm_fidelity") {
  CHECK(hcm_fidelity({1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0, 0.3}) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(hcm_fidelity({0.25, 1.0 / 6.0, 0.5, 2.0 / 3.0, 1.0}) ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK_THROWS_AS(hcm_fidelity({0.1, 0.2, 0.5, 0.5, 0.5}), ConstraintError);

  SUBCASE("agrees with the constructive fidelity over real inputs") {
    for (int t = 0; t < 50; ++t) {
      const BhPairParams pp = random_feasible_pair();
      CAPTURE(pp.xi);
      CAPTURE(pp.xi_prime);
      CAPTURE(pp.lambda);
      const double want = hcm_fidelity(pp);
      const CloningIsometry v = combine(pp.hybrid());
      for (int s = 0; s < 5; ++s) {
        const PureQubit psi = qtest::random_real_state();
        const Marginals m = marginals(apply(v, psi));
        CHECK(std::abs(fidelity(psi, m.a) - want) < 1e-12);
        CHECK(std::abs(fidelity(psi, m.b) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("hcm_distortion") {
  const BhPairParams opt{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 2.0 / 3.0, 0.5};
  for (double a : unit_grid(11)) {
    CHECK(hcm_distortion(a, opt) == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  }
  CHECK(round2(hcm_distortion_fixed_prime(0.5, 0.1875, 1.0)) == doctest::Approx(0.22));
  CHECK_THROWS_AS(hcm_distortion(1.5, opt), DomainError);

  SUBCASE("agrees with the constructive two-copy distance") {
    for (int t = 0; t < 50; ++t) {
      const BhPairParams pp = random_feasible_pair();
      const CloningIsometry v = combine(pp.hybrid());
      const double a = qtest::uniform(0.0, 1.0);
      const PureQubit psi = real_state(a);
      const Marginals m = marginals(apply(v, psi));
      CHECK(std::abs(hcm_distortion(a, pp) - hs_distance(m.ab, product_density(psi))) <
            1e-12);
    }
  }
  SUBCASE("fixed-prime form matches the general one") {
    for (int t = 0; t < 100; ++t) {
      const double a = qtest::uniform(0.0, 1.0);
      const double xi = qtest::uniform(0.0, 0.5);
      const double lambda = qtest::uniform(0.0, 1.0);
      // Any eta pair on the constraint line gives the same value.
      const double target = 1.0 - 2.0 * (lambda * xi + (1.0 - lambda) / 6.0);
      const double eta = qtest::uniform(0.0, 1.0);
      const double eta_prime = lambda < 1.0 ? (target - lambda * eta) / (1.0 - lambda) : 0.0;
      const BhPairParams pp{xi, 1.0 / 6.0, eta, eta_prime, lambda};
      CHECK(std::abs(hcm_distortion_fixed_prime(a, xi, lambda) - hcm_distortion(a, pp)) <
            1e-12);
    }
  }
  SUBCASE("quadratic in xi with curvature 16 lambda^2 s-independent") {
    for (int t = 0; t < 20; ++t) {
      const double a = qtest::uniform(0.0, 1.0);
      const double lambda = qtest::uniform(0.1, 1.0);
      const double xi = qtest::uniform(0.05, 0.45);
      const double h = 1e-2;
      const double d2 = (hcm_distortion_fixed_prime(a, xi + h, lambda) -
                         2.0 * hcm_distortion_fixed_prime(a, xi, lambda) +
                         hcm_distortion_fixed_prime(a, xi - h, lambda)) /
                        (h * h);
      CHECK(d2 == doctest::Approx(16.0 * lambda * lambda).epsilon(1e-8));
    }
  }
}

TEST_CASE("eta_pair") {
  EtaPair e = eta_pair(1.0 / 6.0, 1.0 / 6.0, 0.4);
  CHECK(e.eta == doctest::Approx(2.0 / 3.0));
  CHECK(e.eta_prime == doctest::Approx(2.0 / 3.0));
  e = eta_pair(0.25, 0.25, 0.5);
  CHECK(e.eta == doctest::Approx(0.5));
  CHECK(e.eta_prime == doctest::Approx(0.5));
  CHECK_THROWS_AS(eta_pair(0.05, 0.05, 0.5), Infeasible);
  CHECK_THROWS_AS(eta_pair(0.6, 0.1, 0.5), DomainError);
  CHECK_THROWS_AS(eta_pair(0.1, 0.1, 1.2), DomainError);

  SUBCASE("feasible pairs satisfy the constraint inside the Schwarz bounds") {
    int found = 0;
    for (int t = 0; t < 2000; ++t) {
      const double xi = qtest::uniform(0.0, 0.5);
      const double xi_prime = qtest::uniform(0.0, 0.5);
      const double lambda = qtest::uniform(0.0, 1.0);
      const double need = 1.0 - 2.0 * (lambda * xi + (1.0 - lambda) * xi_prime);
      const double reach = lambda * schwarz_bound(xi) + (1.0 - lambda) * schwarz_bound(xi_prime);
      if (std::abs(reach - need) < 1e-9) continue;
      if (reach < need) {
        CHECK_THROWS_AS(eta_pair(xi, xi_prime, lambda), Infeasible);
        continue;
      }
      ++found;
      const EtaPair p = eta_pair(xi, xi_prime, lambda);
      CHECK(std::abs(lambda * p.eta + (1.0 - lambda) * p.eta_prime - need) < 1e-12);
      CHECK(p.eta >= -1e-12);
      CHECK(p.eta_prime >= -1e-12);
      CHECK(p.eta <= schwarz_bound(xi) + 1e-12);
      CHECK(p.eta_prime <= schwarz_bound(xi_prime) + 1e-12);
    }
    CHECK(found > 100);
  }
}

TEST_CASE("pair_fidelities") {
  HybridParams pauli0;
  pauli0.p = 0.0;
  FidelityPair f = pair_fidelities(HybridKind::bh_pauli, 0.1, pauli0);
  CHECK(round2(f.a) == doctest::Approx(0.80));
  CHECK(round2(f.b) == doctest::Approx(0.85));
  f = pair_fidelities(HybridKind::bh_pauli, 0.9, pauli0);
  CHECK(round2(f.a) == doctest::Approx(0.53));
  CHECK(round2(f.b) == doctest::Approx(0.98));

  HybridParams pc;
  pc.xi = 0.2;
  f = pair_fidelities(HybridKind::bh_phasecov, 1.0, pc);
  CHECK(f.a == doctest::Approx(0.8));
  f = pair_fidelities(HybridKind::bh_phasecov, 0.0, pc);
  CHECK(f.a == doctest::Approx(0.5 + 1.0 / std::sqrt(8.0)));

  CHECK_THROWS_AS(pair_fidelities(HybridKind::bh_bh, 0.5, {}), DomainError);
  CHECK_THROWS_AS(pair_fidelities(HybridKind::bh_pauli, 0.5, {}), MissingParameter);
  CHECK_THROWS_AS(hybrid_spec(HybridKind::bh_bh, 0.5, {}), MissingParameter);

  SUBCASE("closed forms agree with the constructive pipeline") {
    for (int t = 0; t < 50; ++t) {
      const double lambda = qtest::uniform(0.0, 1.0);
      HybridParams hp;
      hp.p = qtest::uniform(0.0, 1.0);
      hp.xi = qtest::uniform(1.0 / 6.0, 0.5);
      const PureQubit psi = qtest::random_state();
      const PureQubit eq = qtest::random_equator_state();
      for (HybridKind kind : {HybridKind::bh_pauli, HybridKind::bh_anti}) {
        const FidelityPair c = pair_fidelities(kind, lambda, hp);
        const Marginals m = run(hybrid_spec(kind, lambda, hp), psi);
        CHECK(std::abs(c.a - fidelity(psi, m.a)) < 1e-12);
        CHECK(std::abs(c.b - fidelity(psi, m.b)) < 1e-12);
      }
      const FidelityPair c = pair_fidelities(HybridKind::bh_phasecov, lambda, hp);
      const Marginals m = run(hybrid_spec(HybridKind::bh_phasecov, lambda, hp), eq);
      CHECK(std::abs(c.a - fidelity(eq, m.a)) < 1e-12);
      CHECK(std::abs(c.b - fidelity(eq, m.b)) < 1e-12);
    }
  }
}

TEST_CASE("hybrid_closed_form_marginal") {
  for (int t = 0; t < 50; ++t) {
    const double lambda = qtest::uniform(0.0, 1.0);
    HybridParams hp;
    hp.p = qtest::uniform(0.0, 1.0);
    hp.xi = qtest::uniform(1.0 / 6.0, 0.5);
    const PureQubit psi = qtest::random_state();
    for (HybridKind kind : {HybridKind::bh_pauli, HybridKind::bh_anti}) {
      const MarginalPair c = hybrid_closed_form_marginal(kind, lambda, psi, hp);
      const Marginals m = run(hybrid_spec(kind, lambda, hp), psi);
      CHECK(max_diff(c.a.matrix(), m.a.matrix()) < 1e-12);
      CHECK(max_diff(c.b.matrix(), m.b.matrix()) < 1e-12);
    }
    const PureQubit eq = qtest::random_equator_state();
    const MarginalPair c = hybrid_closed_form_marginal(HybridKind::bh_phasecov, lambda, eq, hp);
    const Marginals m = run(hybrid_spec(HybridKind::bh_phasecov, lambda, hp), eq);
    CHECK(max_diff(c.a.matrix(), m.a.matrix()) < 1e-12);

    const BhPairParams pp = random_feasible_pair();
    HybridParams bb;
    bb.xi = pp.xi;
    bb.xi_prime = pp.xi_prime;
    bb.eta = pp.eta;
    bb.eta_prime = pp.eta_prime;
    const PureQubit real = qtest::random_real_state();
    const MarginalPair cb = hybrid_closed_form_marginal(HybridKind::bh_bh, pp.lambda, real, bb);
    const Marginals mb = run(pp.hybrid(), real);
    CHECK(max_diff(cb.a.matrix(), mb.a.matrix()) < 1e-12);
  }
  HybridParams bb;
  bb.xi = bb.xi_prime = 1.0 / 6.0;
  bb.eta = bb.eta_prime = 2.0 / 3.0;
  CHECK_THROWS_AS(hybrid_closed_form_marginal(HybridKind::bh_bh, 0.5,
                                              pure_state(1.0, cplx{0.0, 1.0}), bb),
                  DomainError);
  HybridParams pc;
  pc.xi = 0.2;
  CHECK_THROWS_AS(hybrid_closed_form_marginal(HybridKind::bh_phasecov, 0.5, real_state(0.3), pc),
                  DomainError);
}

TEST_CASE("trade-offs along the hybrid families") {
  SUBCASE("BH + Pauli: raising p moves fidelity from the second copy to the first") {
    for (double lambda : {0.2, 0.5, 0.9}) {
      double prev_a = -1.0, prev_b = 2.0;
      for (double p : unit_grid(11)) {
        if (p > 0.5) break;
        HybridParams hp;
        hp.p = p;
        const FidelityPair f = pair_fidelities(HybridKind::bh_pauli, lambda, hp);
        CHECK(f.a > prev_a);
        CHECK(f.b < prev_b);
        CHECK(f.a <= f.b + 1e-15);
        prev_a = f.a;
        prev_b = f.b;
      }
    }
  }
  SUBCASE("BH + anti-cloner: both copies improve with lambda") {
    double prev_a = 0.0, prev_b = 0.0;
    for (double lambda : unit_grid(11)) {
      const FidelityPair f = pair_fidelities(HybridKind::bh_anti, lambda);
      CHECK(f.a > prev_a);
      CHECK(f.b > prev_b);
      CHECK(f.a >= f.b);
      prev_a = f.a;
      prev_b = f.b;
    }
  }
  SUBCASE("hybrids of universal machines stay universal") {
    for (double lambda : {0.0, 0.3, 0.7, 1.0}) {
      HybridParams hp;
      hp.p = 0.3;
      for (HybridKind kind : {HybridKind::bh_pauli, HybridKind::bh_anti}) {
        const UniversalityReport r =
            universality_scan_haar(combine(hybrid_spec(kind, lambda, hp)), 100, 7);
        CHECK(r.fidelity_spread < 1e-12);
      }
    }
  }
}
