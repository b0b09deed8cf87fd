// Exact 2x2 spectral analysis of one-period solution operators and the
// stability verdicts built on it.
#pragma once

#include <asynlin/evolution.hpp>
#include <asynlin/simulate.hpp>

namespace asynlin {

// Eigenvalues ordered by modulus, |lambda1| >= |lambda2|, next to the exact
// rational invariants they came from. Only the final square roots are floats.
struct EigenPair {
  Cpx lambda1, lambda2;
  Rat trace, det, discriminant;
  bool complex_pair() const { return discriminant < Rat(0); }
};

inline EigenPair eigen_2x2(const Mat2R& m) {
  const Rat tr = m(0, 0) + m(1, 1);
  const Rat det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Rat disc = tr * tr - Rat(4) * det;
  Cpx l1, l2;
  if (disc < 0) {
    const double re = (tr / 2).to_double();
    const double im = std::sqrt(((Rat(0) - disc) / 4).to_double());
    l1 = Cpx(re, im);
    l2 = Cpx(re, -im);
  } else {
    // stable quadratic: no cancellation in the larger root, mate via det
    const double s = std::sqrt(disc.to_double());
    const double b = tr.to_double();
    const double r1 = (b >= 0) ? (b + s) / 2 : (b - s) / 2;
    const double r2 = (r1 != 0.0) ? det.to_double() / r1 : 0.0;
    l1 = Cpx(r1, 0.0);
    l2 = Cpx(r2, 0.0);
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
  }
  return {l1, l2, tr, det, disc};
}

inline double spectral_radius(const EigenPair& e) {
  if (e.complex_pair()) return std::sqrt(e.det.to_double());
  return std::abs(e.lambda1.real());
}

// Largest singular value via the exact Gram invariants; only the outermost
// square roots are floating point.
inline double spectral_norm_2x2(const Mat2R& m) {
  const Mat2R g = (m.transpose() * m).eval();
  const Rat tr = g(0, 0) + g(1, 1);
  const Rat det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const Rat disc = tr * tr - Rat(4) * det;  // >= 0 for a Gram matrix
  const double root = std::sqrt(std::max(0.0, disc.to_double()));
  return std::sqrt(std::max(0.0, (tr.to_double() + root) / 2));
}

enum class Verdict { kAsymptoticallyStable, kNotAsymptoticallyStable, kMarginal };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAsymptoticallyStable:
      return "asymptotically-stable";
    case Verdict::kNotAsymptoticallyStable:
      return "not-asymptotically-stable";
    case Verdict::kMarginal:
      return "marginal";
  }
  return "?";
}

// Which structural case produced the one-period operator.
enum class Route { kSync, kMu1, kGeneral };

inline const char* route_name(Route r) {
  switch (r) {
    case Route::kSync:
      return "sync-5.1";
    case Route::kMu1:
      return "mu1-6.1";
    case Route::kGeneral:
      return "general-7.1";
  }
  return "?";
}

struct StabilityReport {
  Mat2R op;  // Psi(T, 0)
  Rat period_T;
  EigenPair eigen;
  double spectral_radius = 0.0;
  Verdict verdict = Verdict::kMarginal;
  Route route = Route::kGeneral;
  double margin = 0.0;
};

inline Verdict verdict_from_radius(double rho, double margin) {
  if (rho < 1.0 - margin) return Verdict::kAsymptoticallyStable;
  if (std::abs(rho - 1.0) <= margin) return Verdict::kMarginal;
  return Verdict::kNotAsymptoticallyStable;
}

namespace detail {

template <class Scalar>
std::pair<Mat2<Scalar>, std::pair<Rat, Route>> route_psi(
    const System<Scalar>& spec) {
  if (spec.mu == spec.nu)
    return {psi_sync_closed(spec), {spec.mu, Route::kSync}};
  if (spec.nu == Rat(1) && spec.mu.fits_long() && spec.mu > 0)
    return {psi_mu1_closed(spec), {spec.mu, Route::kMu1}};
  const Rat T = lcm_periods(spec.mu, spec.nu).T;
  return {solution_operator(spec, Rat(0), T).psi, {T, Route::kGeneral}};
}

}  // namespace detail

inline StabilityReport classify_stability(const SystemSpec& spec,
                                          double margin = 1e-9) {
  if (!(margin >= 0))
    throw std::domain_error("classify_stability: margin must be >= 0");
  auto [psi, tr] = detail::route_psi(spec);
  const EigenPair e = eigen_2x2(psi);
  const double rho = spectral_radius(e);
  return {psi, tr.first, e, rho, verdict_from_radius(rho, margin), tr.second,
          margin};
}

// Float-parameter systems reuse the exact kernel: every double is an exact
// dyadic rational, so the operator converts losslessly and there is a single
// eigen/verdict code path.
inline StabilityReport classify_stability(const SystemSpecF& spec,
                                          double margin = 1e-9) {
  if (!(margin >= 0))
    throw std::domain_error("classify_stability: margin must be >= 0");
  auto [psi_f, tr] = detail::route_psi(spec);
  Mat2R psi;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) psi(r, c) = rat_from_double(psi_f(r, c));
  const EigenPair e = eigen_2x2(psi);
  const double rho = spectral_radius(e);
  return {psi, tr.first, e, rho, verdict_from_radius(rho, margin), tr.second,
          margin};
}

// Synchronous case: asymptotic stability of I + mu*P is the same thing as
// the eigenvalues of P lying in the open disk of radius 1/mu centred at
// -1/mu. Both sides evaluated independently.
struct SyncShiftCheck {
  bool psi_inside = false;
  bool shift_inside = false;
  bool consistent() const { return psi_inside == shift_inside; }
};

inline SyncShiftCheck sync_eigen_shift_check(const Mat2R& P, const Rat& mu) {
  if (!(mu > 0))
    throw std::domain_error("sync_eigen_shift_check: mu must be positive");
  const SystemSpec spec{mu, mu, P};
  const EigenPair epsi = eigen_2x2(psi_sync_closed(spec));
  const bool psi_inside = spectral_radius(epsi) < 1.0;

  const EigenPair ep = eigen_2x2(P);
  const double inv = (Rat(1) / mu).to_double();
  const bool shift_inside = std::abs(ep.lambda1 + inv) < inv &&
                            std::abs(ep.lambda2 + inv) < inv;
  return {psi_inside, shift_inside};
}

// Geometric decay certificate: with rho(Psi(T,0)) < kappa < 1,
//   K = max_{n : nT <= horizon} ||Psi(T,0)^n|| / kappa^n   and
//   L = max over union-grid points strictly inside (0, T) of ||Psi(t,0)||
// (L = 1 when that set is empty) give
//   ||(x,y)(t)|| <= (t on the intersection scale ? K : L*K) * kappa^floor(t/T)
// for unit initial data. `verified` reports a direct-simulation audit of that
// envelope at every grid point for both basis initial conditions.
struct DecayBound {
  double L = 1.0;
  double K = 1.0;
  double kappa = 0.0;
  bool verified = false;
};

inline DecayBound geometric_decay_bound(const SystemSpec& spec, double kappa,
                                        const Rat& horizon) {
  const StabilityReport rep = classify_stability(spec);
  if (!(rep.spectral_radius < kappa && kappa < 1.0))
    throw std::domain_error(
        "geometric_decay_bound: need spectral radius < kappa < 1");
  const Rat T = rep.period_T;
  if (!(horizon >= T))
    throw std::domain_error("geometric_decay_bound: horizon shorter than one period");

  double L = 1.0;
  {
    const UnionGrid grid = build_union_grid(spec.mu, spec.nu, T);
    for (const Rat& t : grid.points) {
      if (t == 0 || t == T) continue;
      L = std::max(L, spectral_norm_2x2(solution_operator(spec, Rat(0), t).psi));
    }
  }

  const mpz_class nmax_z = rat_floor_div(horizon, T);
  const long nmax = nmax_z.fits_slong_p() ? nmax_z.get_si() : 0;
  double K = 0.0;
  {
    Mat2R power = Mat2R::Identity();
    double kn = 1.0;
    for (long n = 0; n <= nmax; ++n) {
      K = std::max(K, spectral_norm_2x2(power) / kn);
      power = (rep.op * power).eval();
      kn *= kappa;
    }
  }

  bool verified = true;
  for (int basis = 0; basis < 2 && verified; ++basis) {
    const Trajectory tr = simulate(spec, Rat(basis == 0 ? 1 : 0),
                                   Rat(basis == 0 ? 0 : 1), horizon);
    double hx = basis == 0 ? 1.0 : 0.0;
    double hy = 1.0 - hx;
    for (const TrajectorySample& smp : tr.samples) {
      if (smp.x) hx = smp.x->to_double();
      if (smp.y) hy = smp.y->to_double();
      const long n = rat_floor_div(smp.t, T).get_si();
      const double envelope = (on_scale(smp.t, T) ? K : L * K) *
                              std::pow(kappa, static_cast<double>(n));
      if (std::hypot(hx, hy) > envelope * (1.0 + 1e-12)) {
        verified = false;
        break;
      }
    }
  }
  return {L, K, kappa, verified};
}

}  // namespace asynlin
