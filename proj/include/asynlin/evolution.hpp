// Evolution operator Phi(from, to) as an ordered product of one-step matrices
// over the half-open window [from, to), the 2x2 solution operator Psi obtained
// from its (u, v) rows and columns, and the synchronous / (mu, 1) closed forms.
#pragma once

#include <asynlin/stepmat.hpp>

#include <vector>

namespace asynlin {

template <class Scalar>
struct EvolutionOp {
  Rat from, to;
  Mat4<Scalar> phi;
};

template <class Scalar>
struct SolutionOp {
  Rat from, to;
  Mat2<Scalar> psi;
};

namespace detail {

inline void check_endpoint(const Rat& t, const Rat& mu, const Rat& nu,
                           const char* what) {
  if (t < 0)
    throw std::domain_error(std::string(what) + ": endpoint is negative");
  if (!on_scale(t, mu) && !on_scale(t, nu))
    throw std::domain_error(std::string(what) +
                            ": endpoint is not a union-grid point");
}

}  // namespace detail

// Membership patterns of the one-step factors on [from, to), in chronological
// order; the matrix product applies them right to left.
inline std::vector<Quadruple> factor_quadruples(const Rat& mu, const Rat& nu,
                                                const Rat& from,
                                                const Rat& to) {
  detail::check_endpoint(from, mu, nu, "factor_quadruples");
  detail::check_endpoint(to, mu, nu, "factor_quadruples");
  if (to < from)
    throw std::domain_error("factor_quadruples: window is reversed");
  std::vector<Quadruple> out;
  if (from == to) return out;
  const UnionGrid grid = build_union_grid(mu, nu, to);
  for (std::size_t idx = grid_index(grid, from); grid.points[idx] < to; ++idx)
    out.push_back(classify_quadruple(grid.points[idx], grid));
  return out;
}

template <class Scalar>
EvolutionOp<Scalar> evolution(const System<Scalar>& spec, const Rat& from,
                              const Rat& to) {
  detail::check_endpoint(from, spec.mu, spec.nu, "evolution");
  detail::check_endpoint(to, spec.mu, spec.nu, "evolution");
  if (to < from) throw std::domain_error("evolution: window is reversed");
  Mat4<Scalar> phi = Mat4<Scalar>::Identity();
  if (from < to) {
    const UnionGrid grid = build_union_grid(spec.mu, spec.nu, to);
    for (std::size_t idx = grid_index(grid, from); grid.points[idx] < to;
         ++idx)
      phi = (coefficient_at(grid.points[idx], grid, spec) * phi).eval();
  }
  return {from, to, phi};
}

template <class Scalar>
SolutionOp<Scalar> solution_operator(const System<Scalar>& spec,
                                     const Rat& from, const Rat& to) {
  const EvolutionOp<Scalar> ev = evolution(spec, from, to);
  Mat2<Scalar> psi;
  psi << ev.phi(kIdxU, kIdxU), ev.phi(kIdxU, kIdxV),
         ev.phi(kIdxV, kIdxU), ev.phi(kIdxV, kIdxV);
  return {from, to, psi};
}

// Synchronous one-period operator Psi(mu, 0) = I + mu*P.
template <class Scalar>
Mat2<Scalar> psi_sync_closed(const System<Scalar>& spec) {
  if (!(spec.mu == spec.nu))
    throw std::domain_error("psi_sync_closed: periods differ");
  return Mat2<Scalar>::Identity() +
         (scalar_cast<Scalar>(spec.mu) * spec.P).eval();
}

// One-period operator for integer mu against a unit-period second scale:
//   [ 1 + mu*alpha                          mu*beta        ]
//   [ gamma * sum_{i<mu} (1+delta)^i        (1+delta)^mu   ]
template <class Scalar>
Mat2<Scalar> psi_mu1_closed(const System<Scalar>& spec) {
  if (!(spec.nu == Rat(1)))
    throw std::domain_error("psi_mu1_closed: second period must be 1");
  if (!spec.mu.fits_long() || !(spec.mu > 0))
    throw std::domain_error("psi_mu1_closed: mu must be a positive integer");
  const long m = spec.mu.to_long();
  const Scalar mu_s = scalar_cast<Scalar>(spec.mu);
  const Scalar one(1);
  const Scalar od = one + spec.P(1, 1);
  Scalar gsum(0), acc(1);
  for (long i = 0; i < m; ++i) {
    gsum += acc;
    acc *= od;  // after the loop: acc = (1+delta)^mu
  }
  Mat2<Scalar> psi;
  psi << one + mu_s * spec.P(0, 0), mu_s * spec.P(0, 1),
         spec.P(1, 0) * gsum, acc;
  return psi;
}

// Exact check of Psi(t, s) = Psi(t, tau) * Psi(tau, s); fails off the
// intersection scale because held components are invisible to Psi.
struct SemigroupCheck {
  bool holds = false;
  Mat2R residual;
};

inline SemigroupCheck semigroup_check(const SystemSpec& spec, const Rat& s,
                                      const Rat& tau, const Rat& t) {
  const Mat2R a = solution_operator(spec, s, tau).psi;
  const Mat2R b = solution_operator(spec, tau, t).psi;
  const Mat2R whole = solution_operator(spec, s, t).psi;
  const Mat2R residual = (b * a - whole).eval();
  return {is_zero(residual), residual};
}

}  // namespace asynlin
