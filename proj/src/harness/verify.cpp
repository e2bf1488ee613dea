#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qclone/analysis.hpp"
#include "qclone/harness.hpp"
#include "qclone/hybrid.hpp"

namespace qclone::harness {

namespace {

const double kPcMajor = 0.5 + 1.0 / std::sqrt(8.0);

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string describe(const PureQubit& psi) {
  return "alpha=(" + num(psi.alpha().real()) + "," + num(psi.alpha().imag()) +
         ") beta=(" + num(psi.beta().real()) + "," + num(psi.beta().imag()) + ")";
}

std::string describe(const HybridSpec& h) {
  return "hybrid(lambda=" + num(h.lambda) + ", " + h.first.describe() + ", " +
         h.second.describe() + ")";
}

/// Empty when |got - want| <= tol, otherwise a description.
std::string near(const char* what, double got, double want, double tol) {
  const double diff = std::abs(got - want);
  if (diff <= tol) return {};
  return std::string(what) + "=" + num(got) + " expected " + num(want) +
         " (|diff|=" + num(diff) + ", tol=" + num(tol) + ")";
}

std::string near(const char* what, const ComplexMatrix& got, const ComplexMatrix& want,
                 double tol) {
  const double diff = max_abs_diff(got, want);
  if (diff <= tol) return {};
  return std::string(what) + " max_abs_diff=" + num(diff) + " (tol=" + num(tol) + ")";
}

std::string join(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "; " + b;
}

class Group {
 public:
  explicit Group(std::string name) { result_.name = std::move(name); }

  /// `body` returns an empty string on success, or why it failed.
  void expect(const std::string& context, const std::function<std::string()>& body) {
    ++result_.checks;
    std::string why;
    try {
      why = body();
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    if (why.empty()) return;
    ++result_.failures;
    if (result_.first_failure.empty()) result_.first_failure = context + ": " + why;
  }

  GroupResult done() { return std::move(result_); }

 private:
  GroupResult result_;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  PureQubit state() {
    std::normal_distribution<double> g;
    return pure_state(cplx{g(rng_), g(rng_)}, cplx{g(rng_), g(rng_)});
  }

  PureQubit real_state_any_sign() {
    return real_state(uniform(0.0, 1.0), uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  }

  PureQubit on_plane(PhasePlane plane) {
    if (plane == PhasePlane::real_circle) return real_state_any_sign();
    const double phi = uniform(0.0, 2.0 * std::acos(-1.0));
    return pure_state(1.0, std::polar(1.0, phi));
  }

  MachineSpec bh() {
    const double xi = uniform(0.0, 0.5);
    return MachineSpec::bh_type(xi, uniform(0.0, 1.0) * schwarz_bound(xi));
  }

  MachineSpec pauli() {
    const double p = uniform(0.0, 1.0);
    return MachineSpec::pauli(p, uniform(1e-3, 1.0));
  }

  /// Every machine family, `per_family` random draws for the parametrized ones.
  std::vector<MachineSpec> specs(int per_family) {
    std::vector<MachineSpec> out{MachineSpec::wz(), MachineSpec::anti_clone(),
                                 MachineSpec::phase_covariant(PhasePlane::equator),
                                 MachineSpec::phase_covariant(PhasePlane::real_circle),
                                 MachineSpec::bh_optimal()};
    for (int i = 0; i < per_family; ++i) {
      out.push_back(bh());
      out.push_back(pauli());
      const double p = uniform(0.0, 1.0);
      out.push_back(MachineSpec::pauli(p, 1.0 - p));
    }
    return out;
  }

  MachineSpec any_spec() {
    switch (static_cast<int>(uniform(0.0, 5.0))) {
      case 0:
        return MachineSpec::wz();
      case 1:
        return bh();
      case 2:
        return MachineSpec::phase_covariant(uniform(0.0, 1.0) < 0.5
                                                ? PhasePlane::equator
                                                : PhasePlane::real_circle);
      case 3:
        return pauli();
      default:
        return MachineSpec::anti_clone();
    }
  }

  HybridSpec hybrid() { return HybridSpec{uniform(0.0, 1.0), any_spec(), any_spec()}; }

 private:
  std::mt19937_64 rng_;
};

std::string marginals_match(const MarginalPair& closed, const Marginals& built,
                            double tol) {
  return join(near("rho_a", closed.a.matrix(), built.a.matrix(), tol),
              near("rho_b", closed.b.matrix(), built.b.matrix(), tol));
}

GroupResult isometry_group(const VerifyOptions& opt) {
  Group g("isometry");
  Sampler s(opt.seed);
  for (const MachineSpec& spec : s.specs(20)) {
    g.expect("machine=" + spec.describe(), [&] {
      const CloningIsometry v = opt.builder(spec);
      return is_isometry(v.matrix(), opt.tol) ? std::string{}
                                              : std::string("V^dagger V != I");
    });
  }
  for (int i = 0; i < 20; ++i) {
    const HybridSpec h = s.hybrid();
    g.expect("machine=" + describe(h), [&] {
      return is_isometry(combine(h).matrix(), opt.tol) ? std::string{}
                                                       : std::string("V^dagger V != I");
    });
  }
  return g.done();
}

GroupResult density_group(const VerifyOptions& opt) {
  Group g("density");
  Sampler s(opt.seed + 1);
  auto check_outputs = [&](const std::string& label, const CloningIsometry& v) {
    for (int k = 0; k < 5; ++k) {
      const PureQubit psi = s.state();
      g.expect("machine=" + label + " " + describe(psi), [&] {
        // Each DensityOperator validates itself on construction.
        const Marginals m = marginals(apply(v, psi));
        return near("Tr rho_ab", trace(m.ab.matrix()).real(), 1.0, 1e-12);
      });
    }
  };
  for (const MachineSpec& spec : s.specs(5)) {
    check_outputs(spec.describe(), opt.builder(spec));
  }
  for (int i = 0; i < 10; ++i) {
    const HybridSpec h = s.hybrid();
    check_outputs(describe(h), combine(h));
  }
  return g.done();
}

GroupResult oracle_group(const VerifyOptions& opt) {
  Group g("oracle-equivalence");
  Sampler s(opt.seed + 2);
  constexpr int kCases = 100;
  const double tol = opt.tol;

  std::vector<std::function<MachineSpec()>> families{
      [] { return MachineSpec::wz(); },
      [&] { return s.bh(); },
      [] { return MachineSpec::phase_covariant(PhasePlane::equator); },
      [] { return MachineSpec::phase_covariant(PhasePlane::real_circle); },
      [&] { return s.pauli(); },
      [] { return MachineSpec::anti_clone(); },
  };
  for (const auto& draw : families) {
    for (int i = 0; i < kCases; ++i) {
      const MachineSpec spec = draw();
      const PureQubit psi = spec.kind == MachineKind::phase_covariant
                                ? s.on_plane(spec.plane)
                                : s.state();
      g.expect("machine=" + spec.describe() + " " + describe(psi), [&] {
        return marginals_match(closed_form_marginals(spec, psi),
                               marginals(apply(opt.builder(spec), psi)), tol);
      });
    }
  }

  // Hybrid families.
  for (int i = 0; i < kCases; ++i) {
    const double lambda = s.uniform(0.0, 1.0);
    HybridParams hp;
    const double xi = s.uniform(0.0, 0.5);
    const double xi_prime = s.uniform(0.0, 0.5);
    hp.xi = xi;
    hp.xi_prime = xi_prime;
    hp.eta = s.uniform(0.0, 1.0) * schwarz_bound(xi);
    hp.eta_prime = s.uniform(0.0, 1.0) * schwarz_bound(xi_prime);
    const PureQubit psi = s.real_state_any_sign();
    const HybridSpec h = hybrid_spec(HybridKind::bh_bh, lambda, hp);
    g.expect("family=bh-bh " + describe(h) + " " + describe(psi), [&] {
      const Marginals m = marginals(apply(combine(h), psi));
      const BhPairParams pair{xi, xi_prime, *hp.eta, *hp.eta_prime, lambda};
      return join(marginals_match(
                      hybrid_closed_form_marginal(HybridKind::bh_bh, lambda, psi, hp),
                      m, tol),
                  near("D_ab", hcm_distortion(psi.alpha_sq(), pair),
                       hs_distance(m.ab, product_density(psi)), tol));
    });
  }
  for (int i = 0; i < kCases; ++i) {
    const double lambda = s.uniform(0.0, 1.0);
    HybridParams hp;
    hp.xi = s.uniform(1.0 / 6.0, 0.5);  // eta = 1 - 2 xi realizable
    const PureQubit psi = s.on_plane(PhasePlane::equator);
    const HybridSpec h = hybrid_spec(HybridKind::bh_phasecov, lambda, hp);
    g.expect("family=bh-pc " + describe(h) + " " + describe(psi), [&] {
      const Marginals m = marginals(apply(combine(h), psi));
      const FidelityPair f = pair_fidelities(HybridKind::bh_phasecov, lambda, hp);
      return join(marginals_match(hybrid_closed_form_marginal(HybridKind::bh_phasecov,
                                                              lambda, psi, hp),
                                  m, tol),
                  join(near("F1", f.a, fidelity(psi, m.a), tol),
                       near("F2", f.b, fidelity(psi, m.b), tol)));
    });
  }
  for (HybridKind kind : {HybridKind::bh_pauli, HybridKind::bh_anti}) {
    for (int i = 0; i < kCases; ++i) {
      const double lambda = s.uniform(0.0, 1.0);
      HybridParams hp;
      hp.p = s.uniform(0.0, 1.0);
      const PureQubit psi = s.state();
      const HybridSpec h = hybrid_spec(kind, lambda, hp);
      g.expect("family=" + describe(h) + " " + describe(psi), [&] {
        const Marginals m = marginals(apply(combine(h), psi));
        const FidelityPair f = pair_fidelities(kind, lambda, hp);
        return join(
            marginals_match(hybrid_closed_form_marginal(kind, lambda, psi, hp), m, tol),
            join(near("F1", f.a, fidelity(psi, m.a), tol),
                 near("F2", f.b, fidelity(psi, m.b), tol)));
      });
    }
  }

  // Constrained BH pairs: closed-form fidelity against the pipeline.
  int constrained = 0;
  for (int attempt = 0; attempt < 10000 && constrained < kCases; ++attempt) {
    const double xi = s.uniform(0.0, 0.5);
    const double xi_prime = s.uniform(0.0, 0.5);
    const double lambda = s.uniform(0.0, 1.0);
    BhPairParams pair;
    try {
      pair = BhPairParams::constrained(xi, xi_prime, lambda);
    } catch (const Infeasible&) {
      continue;
    }
    ++constrained;
    const PureQubit psi = s.real_state_any_sign();
    g.expect("family=bh-bh constrained " + describe(pair.hybrid()) + " " + describe(psi),
             [&] {
               const Marginals m = marginals(apply(combine(pair.hybrid()), psi));
               return near("F_HCM", hcm_fidelity(pair), fidelity(psi, m.a), tol);
             });
  }
  return g.done();
}

GroupResult universality_group(const VerifyOptions& opt) {
  Group g("universality");
  Sampler s(opt.seed + 3);
  std::vector<PureQubit> states;
  for (int i = 0; i < 100; ++i) states.push_back(s.state());
  for (double a : unit_grid(101)) states.push_back(real_state(a));

  struct Spread {
    double fa_min = 2, fa_max = -1, fb_min = 2, fb_max = -1;
    void add(double fa, double fb) {
      fa_min = std::min(fa_min, fa);
      fa_max = std::max(fa_max, fa);
      fb_min = std::min(fb_min, fb);
      fb_max = std::max(fb_max, fb);
    }
  };
  auto spread_of = [](const CloningIsometry& v, const std::vector<PureQubit>& inputs) {
    Spread sp;
    for (const PureQubit& psi : inputs) {
      const Marginals m = marginals(apply(v, psi));
      sp.add(fidelity(psi, m.a), fidelity(psi, m.b));
    }
    return sp;
  };
  auto expect_flat = [&](const std::string& label, const CloningIsometry& v,
                         const std::vector<PureQubit>& inputs) {
    g.expect("machine=" + label, [&] {
      const Spread sp = spread_of(v, inputs);
      return join(near("F_a spread", sp.fa_max - sp.fa_min, 0.0, opt.tol),
                  near("F_b spread", sp.fb_max - sp.fb_min, 0.0, opt.tol));
    });
  };

  std::vector<MachineSpec> universal{MachineSpec::bh_optimal(), MachineSpec::anti_clone()};
  for (int i = 0; i < 5; ++i) {
    const double p = s.uniform(0.0, 1.0);
    universal.push_back(MachineSpec::pauli(p, 1.0 - p));
  }
  for (const MachineSpec& spec : universal) {
    expect_flat(spec.describe(), opt.builder(spec), states);
  }
  g.expect("machine=" + MachineSpec::bh_optimal().describe() + " D_ab", [&] {
    const UniversalityReport r =
        universality_scan_haar(opt.builder(MachineSpec::bh_optimal()), 100, opt.seed);
    return near("D_ab spread", r.distortion_spread, 0.0, opt.tol);
  });
  for (int i = 0; i < 5; ++i) {
    HybridParams hp;
    hp.p = s.uniform(0.0, 1.0);
    const double lambda = s.uniform(0.0, 1.0);
    for (HybridKind kind : {HybridKind::bh_pauli, HybridKind::bh_anti}) {
      const HybridSpec h = hybrid_spec(kind, lambda, hp);
      expect_flat(describe(h), combine(h), states);
    }
  }

  for (PhasePlane plane : {PhasePlane::equator, PhasePlane::real_circle}) {
    const MachineSpec pc = MachineSpec::phase_covariant(plane);
    std::vector<PureQubit> circle;
    for (int i = 0; i < 101; ++i) circle.push_back(s.on_plane(plane));
    expect_flat(pc.describe() + " on its circle", opt.builder(pc), circle);
  }
  g.expect("machine=pc(equator) at the poles", [&] {
    const CloningIsometry v = opt.builder(MachineSpec::phase_covariant());
    const PureQubit up = pure_state(1.0, 0.0);
    const double f = fidelity(up, marginals(apply(v, up)).a);
    return std::abs(f - kPcMajor) > 1e-3 ? std::string{}
                                         : "pole fidelity " + num(f) + " equals the equator value";
  });
  g.expect("machine=wz", [&] {
    const UniversalityReport r =
        universality_scan(opt.builder(MachineSpec::wz()), unit_grid(101));
    return r.fidelity_spread > 0.2 ? std::string{}
                                   : "fidelity spread " + num(r.fidelity_spread) +
                                         " is not above 0.2";
  });
  return g.done();
}

GroupResult constants_group(const VerifyOptions& opt) {
  Group g("constants");
  Sampler s(opt.seed + 4);
  const double tol = opt.tol;
  const CloningIsometry bh = opt.builder(MachineSpec::bh_optimal());
  const CloningIsometry anti = opt.builder(MachineSpec::anti_clone());
  const CloningIsometry pc = opt.builder(MachineSpec::phase_covariant());

  for (int i = 0; i < 20; ++i) {
    const PureQubit psi = s.state();
    g.expect("machine=bh(1/6, 2/3) " + describe(psi), [&] {
      const Marginals m = marginals(apply(bh, psi));
      return join(join(near("F", fidelity(psi, m.a), 5.0 / 6.0, tol),
                       near("D_a", hs_distance(m.a, density_of(psi)), 1.0 / 18.0, tol)),
                  near("D_ab", hs_distance(m.ab, product_density(psi)), 2.0 / 9.0, tol));
    });
    g.expect("machine=anti " + describe(psi), [&] {
      const Marginals m = marginals(apply(anti, psi));
      return join(near("F_a", fidelity(psi, m.a), 2.0 / 3.0, tol),
                  near("F_b vs orthogonal", fidelity(orthogonal_state(psi), m.b),
                       2.0 / 3.0, tol));
    });
    const PureQubit eq = s.on_plane(PhasePlane::equator);
    g.expect("machine=pc(equator) " + describe(eq), [&] {
      const Marginals m = marginals(apply(pc, eq));
      return join(near("F_a", fidelity(eq, m.a), kPcMajor, tol),
                  near("F_b", fidelity(eq, m.b), kPcMajor, tol));
    });
    const double xi = s.uniform(1.0 / 6.0, 0.5);
    const PureQubit real = s.real_state_any_sign();
    g.expect("machine=bh(xi, 1 - 2 xi) xi=" + num(xi) + " " + describe(real), [&] {
      const CloningIsometry v = opt.builder(MachineSpec::bh_type(xi, 1.0 - 2.0 * xi));
      const Marginals m = marginals(apply(v, real));
      return join(near("F", fidelity(real, m.a), 1.0 - xi, tol),
                  near("D_a", hs_distance(m.a, density_of(real)), 2.0 * xi * xi, tol));
    });
  }
  for (double a : unit_grid(11)) {
    g.expect("machine=wz alpha2=" + num(a), [&] {
      const PureQubit psi = real_state(a);
      const Marginals m = marginals(apply(opt.builder(MachineSpec::wz()), psi));
      return near("D_a", hs_distance(m.a, density_of(psi)), 2.0 * a * (1.0 - a), tol);
    });
  }
  g.expect("machine=wz average distortion n=10001", [&] {
    return near("avg D_a", average_distortion(MachineSpec::wz(), 10001), 1.0 / 3.0,
                std::max(tol, 1e-6));
  });
  g.expect("machine=bh(1/6, 2/3) average distortion n=2", [&] {
    return near("avg D_a", average_distortion(MachineSpec::bh_optimal(), 2), 1.0 / 18.0,
                tol);
  });
  return g.done();
}

GroupResult tradeoff_group(const VerifyOptions& opt) {
  Group g("bh-pauli-tradeoff");
  const double third = 5.0 / 6.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    for (int j = 1; j <= 100; ++j) {
      const double lambda = j / 100.0;
      g.expect("p=" + num(p) + " lambda=" + num(lambda), [&] {
        HybridParams hp;
        hp.p = p;
        const FidelityPair f = pair_fidelities(HybridKind::bh_pauli, lambda, hp);
        if (i == 50) {
          return join(near("F1", f.a, third, opt.tol), near("F2", f.b, third, opt.tol));
        }
        if ((f.a > third) != (p > 0.5)) {
          return "F1=" + num(f.a) + " above 5/6 does not match p > 1/2";
        }
        if (f.a > third && !(f.b < third)) {
          return "F1=" + num(f.a) + " and F2=" + num(f.b) + " both exceed 5/6";
        }
        if (f.b > third && !(f.a < third)) {
          return "F2=" + num(f.b) + " and F1=" + num(f.a) + " both exceed 5/6";
        }
        return std::string{};
      });
    }
  }
  return g.done();
}

GroupResult monotonicity_group(const VerifyOptions& /*opt*/) {
  Group g("bh-anti-monotonicity");
  FidelityPair prev = pair_fidelities(HybridKind::bh_anti, 0.0);
  for (int j = 1; j <= 100; ++j) {
    const double lambda = j / 100.0;
    g.expect("lambda=" + num(lambda), [&] {
      const FidelityPair f = pair_fidelities(HybridKind::bh_anti, lambda);
      std::string why;
      if (!(f.a > prev.a)) why = "F_a not increasing: " + num(prev.a) + " -> " + num(f.a);
      if (!(f.b > prev.b)) {
        why = join(why, "F_b not increasing: " + num(prev.b) + " -> " + num(f.b));
      }
      prev = f;
      return why;
    });
  }
  return g.done();
}

GroupResult optimum_group(const VerifyOptions& opt) {
  Group g("state-dependent-optimum");
  Sampler s(opt.seed + 5);
  const double tol = opt.tol;

  for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (double lambda : {0.2, 0.5, 0.8, 1.0}) {
      g.expect("curvature alpha2=" + num(a) + " lambda=" + num(lambda), [&] {
        const double h = 1e-3;
        const double xi = 0.1;
        const double fd = (hcm_distortion_fixed_prime(a, xi + h, lambda) -
                           2.0 * hcm_distortion_fixed_prime(a, xi, lambda) +
                           hcm_distortion_fixed_prime(a, xi - h, lambda)) /
                          (h * h);
        return near("d2D/dxi2", fd, 16.0 * lambda * lambda, 1e-6);
      });
      g.expect("minimum alpha2=" + num(a) + " lambda=" + num(lambda), [&] {
        const OptimumReport r = optimal_xi(a, lambda);
        std::string why = near("D at xi*", hcm_distortion_fixed_prime(a, r.xi_star, lambda),
                               r.d_min, tol);
        if (!r.feasible) return why;
        for (int k = 0; k <= 500; ++k) {
          const double d = hcm_distortion_fixed_prime(a, k * 1e-3, lambda);
          if (d < r.d_min - 1e-9) {
            return join(why, "grid xi=" + num(k * 1e-3) + " gives " + num(d) +
                                 " below d_min " + num(r.d_min));
          }
        }
        return why;
      });
    }
  }

  // At feasible optima the four-state family shares the closed-form fidelity.
  for (double a : {0.4, 0.5, 0.6}) {
    for (double lambda : {0.5, 1.0}) {
      const OptimumReport r = optimal_xi(a, lambda);
      if (!r.feasible) continue;
      g.expect("four states alpha2=" + num(a) + " lambda=" + num(lambda), [&] {
        const BhPairParams pair = BhPairParams::constrained(r.xi_star, 1.0 / 6.0, lambda);
        const CloningIsometry v = combine(pair.hybrid());
        std::string why = near("F_HCM", hcm_fidelity(pair), r.fidelity, tol);
        for (const PureQubit& psi : four_state_family(a)) {
          why = join(why, near("F", fidelity(psi, marginals(apply(v, psi)).a), r.fidelity,
                               tol));
        }
        return why;
      });
    }
  }

  for (int i = 0; i < 50; ++i) {
    const double xi = s.uniform(0.0, 0.5);
    const double xi_prime = s.uniform(0.0, 0.5);
    g.expect("universality lambda xi=" + num(xi) + " xi'=" + num(xi_prime), [&] {
      const UniversalityLambda u = universality_lambda(xi, xi_prime);
      BhPairParams pair{xi, xi_prime, 0.0, 0.0, u.lambda};
      // Equal shrinking factors satisfy the constraint whatever their bounds.
      pair.eta = pair.eta_prime = 1.0 - 2.0 * pair.mixed_xi();
      return near("F_HCM", hcm_fidelity(pair), 5.0 / 6.0, std::max(tol, 1e-14));
    });
  }
  return g.done();
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& gr : groups) {
    if (!gr.passed()) return false;
  }
  return true;
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  const GroupResult* first = nullptr;
  std::size_t ok = 0;
  for (const auto& gr : groups) {
    os << (gr.passed() ? "PASS " : "FAIL ") << gr.name << " (" << gr.checks
       << " checks";
    if (!gr.passed()) os << ", " << gr.failures << " failed";
    os << ")\n";
    if (gr.passed()) {
      ++ok;
    } else if (first == nullptr) {
      first = &gr;
    }
  }
  os << ok << "/" << groups.size() << " groups passed\n";
  if (first != nullptr) {
    os << "first failure [" << first->name << "] " << first->first_failure << '\n';
  }
  return os.str();
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (!(options.tol > 0.0)) throw UsageError("tolerance must be positive");
  if (!options.builder) throw UsageError("verify needs a machine builder");
  VerifyReport report;
  report.groups.push_back(isometry_group(options));
  report.groups.push_back(density_group(options));
  report.groups.push_back(oracle_group(options));
  report.groups.push_back(universality_group(options));
  report.groups.push_back(constants_group(options));
  report.groups.push_back(tradeoff_group(options));
  report.groups.push_back(monotonicity_group(options));
  report.groups.push_back(optimum_group(options));
  return report;
}

}  // namespace qclone::harness
