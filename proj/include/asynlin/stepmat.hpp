// The system description and the nine one-step matrices of the 4-D linear
// representation with state ordering (u, u_held, v, v_held).
#pragma once

#include <asynlin/timescale.hpp>

namespace asynlin {

// Periods stay exact rationals in both parameter modes; only the rate matrix
// P = [[alpha, beta], [gamma, delta]] switches scalar type. The double mode
// exists for back-solved systems whose delta is a real root.
template <class Scalar>
struct System {
  Rat mu, nu;
  Mat2<Scalar> P;
};

using SystemSpec = System<Rat>;
using SystemSpecF = System<double>;

inline SystemSpecF to_float(const SystemSpec& s) {
  return {s.mu, s.nu, s.P.template cast<double>()};
}

template <class Scalar>
Scalar scalar_cast(const Rat& r);
template <>
inline Rat scalar_cast<Rat>(const Rat& r) {
  return r;
}
template <>
inline double scalar_cast<double>(const Rat& r) {
  return r.to_double();
}

// State component indices; everything that extracts or injects the (x, y)
// coordinates routes through these.
inline constexpr Eigen::Index kIdxU = 0;
inline constexpr Eigen::Index kIdxUHeld = 1;
inline constexpr Eigen::Index kIdxV = 2;
inline constexpr Eigen::Index kIdxVHeld = 3;

// One-step matrix A_ijkl advancing (u, u_held, v, v_held) from a grid point to
// its successor. Written out literally, one case per admissible pattern.
template <class Scalar>
Mat4<Scalar> table_matrix(const Quadruple& q, const System<Scalar>& spec) {
  const Scalar o(1), z(0);
  const Scalar m = scalar_cast<Scalar>(spec.mu) * spec.P(0, 0);  // mu*alpha
  const Scalar b = scalar_cast<Scalar>(spec.mu) * spec.P(0, 1);  // mu*beta
  const Scalar g = scalar_cast<Scalar>(spec.nu) * spec.P(1, 0);  // nu*gamma
  const Scalar d = scalar_cast<Scalar>(spec.nu) * spec.P(1, 1);  // nu*delta
  Mat4<Scalar> A;
  switch (q.code()) {
    case 0b1111:
      A << o + m, z, b, z,
           o, z, z, z,
           g, z, o + d, z,
           z, z, o, z;
      break;
    case 0b1110:
      A << o + m, z, b, z,
           o, z, z, z,
           z, z, o, z,
           z, z, o, z;
      break;
    case 0b1101:
      A << o + m, z, z, b,
           o, z, z, z,
           z, g, o + d, z,
           z, z, z, o;
      break;
    case 0b1100:
      A << o + m, z, z, b,
           z, o, z, z,
           z, z, o, z,
           z, z, z, o;
      break;
    case 0b1011:
      A << o, z, z, z,
           o, z, z, z,
           g, z, o + d, z,
           z, z, o, z;
      break;
    case 0b1001:
      A << o, z, z, z,
           o, z, z, z,
           z, g, o + d, z,
           z, z, z, o;
      break;
    case 0b0111:
      A << o + m, z, z, b,
           z, o, z, z,
           z, g, o + d, z,
           z, z, o, z;
      break;
    case 0b0110:
      A << o + m, z, z, b,
           z, o, z, z,
           z, z, o, z,
           z, z, o, z;
      break;
    case 0b0011:
      A << o, z, z, z,
           z, o, z, z,
           z, g, o + d, z,
           z, z, z, o;
      break;
    default:
      throw std::domain_error("table_matrix: inadmissible pattern " +
                              quadruple_name(q));
  }
  return A;
}

template <class Scalar>
Mat4<Scalar> coefficient_at(const Rat& t, const UnionGrid& grid,
                            const System<Scalar>& spec) {
  if (!(grid.mu == spec.mu) || !(grid.nu == spec.nu))
    throw std::invalid_argument("coefficient_at: grid/spec period mismatch");
  return table_matrix(classify_quadruple(t, grid), spec);
}

}  // namespace asynlin
