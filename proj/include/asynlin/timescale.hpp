// Periodic time scales T_rho = {0, rho, 2rho, ...}, their union grid, and the
// membership pattern (i, j, k, l) that selects a one-step matrix.
#pragma once

#include <asynlin/numeric.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace asynlin {

inline bool on_scale(const Rat& t, const Rat& rho) {
  if (!(rho > 0)) throw std::domain_error("on_scale: period must be positive");
  if (t < 0) return false;
  return (t / rho).is_integer();
}

// Lag t^{*rho}: the largest point of T_rho not exceeding t.
inline Rat lag(const Rat& t, const Rat& rho) {
  if (!(rho > 0)) throw std::domain_error("lag: period must be positive");
  if (t < 0) throw std::domain_error("lag: time must be nonnegative");
  return rho * Rat(rat_floor_div(t, rho));
}

// Least common period T of two scales, with the multiplicities T = k*mu = l*nu.
struct PeriodLcm {
  Rat T;
  long k = 0;
  long ell = 0;
};

inline PeriodLcm lcm_periods(const Rat& mu, const Rat& nu) {
  if (!(mu > 0) || !(nu > 0))
    throw std::domain_error("lcm_periods: periods must be positive");
  mpz_class n, d;
  mpz_lcm(n.get_mpz_t(), mu.num().get_mpz_t(), nu.num().get_mpz_t());
  mpz_gcd(d.get_mpz_t(), mu.den().get_mpz_t(), nu.den().get_mpz_t());
  const Rat T{Rat(std::move(n), std::move(d))};
  const Rat k = T / mu, ell = T / nu;
  if (!k.fits_long() || !ell.fits_long())
    throw std::domain_error("lcm_periods: multiplicity overflows a long");
  return {T, k.to_long(), ell.to_long()};
}

// (T_mu ∪ T_nu) ∩ [0, horizon], sorted ascending. The stored horizon is the
// last grid point, i.e. the requested horizon rounded down onto the grid.
struct UnionGrid {
  Rat mu, nu;
  Rat horizon;
  std::vector<Rat> points;
};

inline UnionGrid build_union_grid(const Rat& mu, const Rat& nu,
                                  const Rat& horizon) {
  if (!(mu > 0) || !(nu > 0))
    throw std::domain_error("build_union_grid: periods must be positive");
  if (!(horizon > 0))
    throw std::domain_error("build_union_grid: horizon must be positive");
  const mpz_class nmu_z = rat_floor_div(horizon, mu);
  const mpz_class nnu_z = rat_floor_div(horizon, nu);
  if (!nmu_z.fits_slong_p() || !nnu_z.fits_slong_p())
    throw std::domain_error("build_union_grid: grid too large");
  const long nmu = nmu_z.get_si(), nnu = nnu_z.get_si();

  std::vector<Rat> pts;
  pts.reserve(static_cast<std::size_t>(nmu + nnu) + 2);
  long i = 0, j = 0;
  while (i <= nmu || j <= nnu) {
    const Rat a = Rat(i) * mu, b = Rat(j) * nu;
    if (i <= nmu && (j > nnu || a < b)) {
      pts.push_back(a);
      ++i;
    } else if (j <= nnu && (i > nmu || b < a)) {
      pts.push_back(b);
      ++j;
    } else {  // shared point
      pts.push_back(a);
      ++i;
      ++j;
    }
  }
  UnionGrid g{mu, nu, pts.back(), std::move(pts)};
  return g;
}

inline std::size_t grid_index(const UnionGrid& grid, const Rat& t) {
  const auto it =
      std::lower_bound(grid.points.begin(), grid.points.end(), t);
  if (it == grid.points.end() || !(*it == t))
    throw std::domain_error("grid_index: t is not a grid point");
  return static_cast<std::size_t>(it - grid.points.begin());
}

// Forward jump sigma(t): the next grid point after t.
inline Rat successor(const Rat& t, const UnionGrid& grid) {
  const std::size_t idx = grid_index(grid, t);
  if (idx + 1 == grid.points.size())
    throw std::domain_error("successor: t is the last grid point");
  return grid.points[idx + 1];
}

// Membership pattern at a grid point: i = [t in T_mu], j = [sigma(t) in T_mu],
// k = [t in T_nu], l = [sigma(t) in T_nu].
struct Quadruple {
  int i = 0, j = 0, k = 0, ell = 0;
  int code() const { return i * 8 + j * 4 + k * 2 + ell; }
  bool admissible() const { return (i || k) && (j || ell); }
  friend bool operator==(const Quadruple& a, const Quadruple& b) {
    return a.code() == b.code();
  }
};

inline std::string quadruple_name(const Quadruple& q) {
  std::string s = "A_";
  s += static_cast<char>('0' + q.i);
  s += static_cast<char>('0' + q.j);
  s += static_cast<char>('0' + q.k);
  s += static_cast<char>('0' + q.ell);
  return s;
}

// Every union-grid point and its successor lie on at least one scale each, so
// only nine of the sixteen patterns can occur; hitting another one means the
// grid itself is broken.
inline Quadruple classify_quadruple(const Rat& t, const UnionGrid& grid) {
  const Rat s = successor(t, grid);  // also validates t
  const Quadruple q{on_scale(t, grid.mu), on_scale(s, grid.mu),
                    on_scale(t, grid.nu), on_scale(s, grid.nu)};
  if (!q.admissible())
    throw std::logic_error("classify_quadruple: inadmissible pattern " +
                           quadruple_name(q));
  return q;
}

}  // namespace asynlin
