// Dynamical equivalence of two systems over their common period, and the
// reconstruction of a (mu,1) system from a prescribed one-period operator.
#pragma once

#include <asynlin/evolution.hpp>

#include <optional>

namespace asynlin {

// Two systems are equivalent when their one-period solution operators agree
// at T = lcm of all four periods.
struct EquivalenceReport {
  Rat common_T;
  Mat2R psi_a, psi_b, residual;
  bool equivalent = false;
};

namespace detail {

inline Rat common_period4(const Rat& m1, const Rat& n1, const Rat& m2,
                          const Rat& n2) {
  return lcm_periods(lcm_periods(m1, n1).T, lcm_periods(m2, n2).T).T;
}

}  // namespace detail

inline EquivalenceReport check_equivalence(const SystemSpec& a,
                                           const SystemSpec& b) {
  const Rat T = detail::common_period4(a.mu, a.nu, b.mu, b.nu);
  const Mat2R pa = solution_operator(a, Rat(0), T).psi;
  const Mat2R pb = solution_operator(b, Rat(0), T).psi;
  const Mat2R residual = (pa - pb).eval();
  return {T, pa, pb, residual, is_zero(residual)};
}

// Float companion for systems with back-solved (irrational-in-spirit) rates:
// entrywise tolerance |pa - pb| <= atol + rtol*|pb|.
struct EquivalenceReportF {
  Rat common_T;
  Mat2<double> psi_a, psi_b, residual;
  bool equivalent = false;
  double atol = 0.0, rtol = 0.0;
};

inline EquivalenceReportF check_equivalence(const SystemSpecF& a,
                                            const SystemSpecF& b,
                                            double atol = 1e-9,
                                            double rtol = 1e-9) {
  const Rat T = detail::common_period4(a.mu, a.nu, b.mu, b.nu);
  const Mat2<double> pa = solution_operator(a, Rat(0), T).psi;
  const Mat2<double> pb = solution_operator(b, Rat(0), T).psi;
  const Mat2<double> residual = pa - pb;
  bool eq = true;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      eq = eq && approx_eq(pa(r, c), pb(r, c), atol, rtol);
  return {T, pa, pb, residual, eq, atol, rtol};
}

inline EquivalenceReportF check_equivalence(const SystemSpec& a,
                                            const SystemSpecF& b,
                                            double atol = 1e-9,
                                            double rtol = 1e-9) {
  return check_equivalence(to_float(a), b, atol, rtol);
}

inline EquivalenceReportF check_equivalence(const SystemSpecF& a,
                                            const SystemSpec& b,
                                            double atol = 1e-9,
                                            double rtol = 1e-9) {
  return check_equivalence(a, to_float(b), atol, rtol);
}

// Rates of the (mu_hat, 1) system whose one-period operator equals a target:
//   alpha = (psi11 - 1)/mu,  beta = psi12/mu          (always exact),
//   1 + delta = psi22^(1/mu),
//   gamma = psi21 / sum_{i<mu} (1+delta)^i.
// The top row is exact; the bottom row is exact exactly when psi22 has a
// rational mu-th root, and a float approximation otherwise. Requires
// psi22 > 0 (a real mu-th root on the positive branch must exist).
struct BacksolveResult {
  Rat mu_hat;  // the second period is 1 by construction
  Rat alpha, beta;
  double gamma = 0.0, delta = 0.0;
  std::optional<Rat> gamma_exact, delta_exact;
  bool exact() const { return delta_exact.has_value(); }

  SystemSpecF to_spec() const {
    Mat2<double> p;
    p << alpha.to_double(), beta.to_double(), gamma, delta;
    return {mu_hat, Rat(1), p};
  }
  SystemSpec to_exact_spec() const {
    if (!exact())
      throw std::domain_error("BacksolveResult: rates are not exact");
    Mat2R p;
    p << alpha, beta, *gamma_exact, *delta_exact;
    return {mu_hat, Rat(1), p};
  }
};

inline BacksolveResult backsolve_mu1(const Mat2R& target_psi, long mu_hat) {
  if (mu_hat < 1)
    throw std::domain_error("backsolve_mu1: mu_hat must be a positive integer");
  const Rat mu(mu_hat);
  const Rat p22 = target_psi(1, 1);
  if (!(p22 > 0))
    throw std::domain_error(
        "backsolve_mu1: target (2,2) entry must be positive to admit a real "
        "mu_hat-th root");

  BacksolveResult out;
  out.mu_hat = mu;
  out.alpha = (target_psi(0, 0) - Rat(1)) / mu;
  out.beta = target_psi(0, 1) / mu;

  // exact rational root when numerator and denominator are perfect powers
  std::optional<Rat> od_exact;
  {
    mpz_class rn, rd;
    const int num_ok = mpz_root(rn.get_mpz_t(), p22.num().get_mpz_t(),
                                static_cast<unsigned long>(mu_hat));
    const int den_ok = mpz_root(rd.get_mpz_t(), p22.den().get_mpz_t(),
                                static_cast<unsigned long>(mu_hat));
    if (num_ok != 0 && den_ok != 0) od_exact = Rat(rn, rd);
  }

  if (od_exact) {
    const Rat od = *od_exact;  // 1 + delta > 0
    Rat gsum(0), acc(1);
    for (long i = 0; i < mu_hat; ++i) {
      gsum += acc;
      acc *= od;
    }
    // od > 0 makes the geometric sum strictly positive
    out.delta_exact = od - Rat(1);
    out.gamma_exact = target_psi(1, 0) / gsum;
    out.delta = out.delta_exact->to_double();
    out.gamma = out.gamma_exact->to_double();
  } else {
    const double od = std::pow(p22.to_double(), 1.0 / static_cast<double>(mu_hat));
    double gsum = 0.0, acc = 1.0;
    for (long i = 0; i < mu_hat; ++i) {
      gsum += acc;
      acc *= od;
    }
    out.delta = od - 1.0;
    out.gamma = target_psi(1, 0).to_double() / gsum;
  }
  return out;
}

}  // namespace asynlin
