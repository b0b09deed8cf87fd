// Exact rational scalar (GMP-backed) plus the small set of complex
// floating-point helpers shared by every other header.
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace asynlin {

// Arbitrary-precision rational, always held in canonical form (reduced,
// positive denominator). Arithmetic is exact; division by zero throws.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}  // NOLINT: implicit, so integer literals mix freely
  Rat(long n) { q_ = mpz_class(n); }
  Rat(long n, long d) : Rat(mpz_class(n), mpz_class(d)) {}
  explicit Rat(mpz_class n) : q_(std::move(n)) {}
  Rat(mpz_class n, mpz_class d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    q_ = mpq_class(std::move(n), std::move(d));
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }
  bool fits_long() const {
    return is_integer() && q_.get_num().fits_slong_p();
  }
  long to_long() const {
    if (!fits_long()) throw std::domain_error("Rat: not a machine integer");
    return q_.get_num().get_si();
  }
  double to_double() const { return q_.get_d(); }
  explicit operator double() const { return q_.get_d(); }

  // "p" when integral, "p/q" otherwise; '-' only on the numerator.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.q_ == 0) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }
  Rat operator-() const { Rat r; r.q_ = -q_; return r; }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

inline Rat abs(const Rat& a) { return a < Rat(0) ? -a : a; }

}  // namespace asynlin

// Registered before any Matrix<Rat, ...> is instantiated below.
namespace Eigen {

template <>
struct NumTraits<asynlin::Rat> : GenericNumTraits<asynlin::Rat> {
  typedef asynlin::Rat Real;
  typedef asynlin::Rat NonInteger;
  typedef asynlin::Rat Nested;
  typedef asynlin::Rat Literal;
  static inline Real epsilon() { return asynlin::Rat(0); }
  static inline Real dummy_precision() { return asynlin::Rat(0); }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 40,
  };
};

}  // namespace Eigen

namespace asynlin {

// Strict grammar: [-]digits or [-]digits/digits. No whitespace, no '+',
// no sign on the denominator, no decimals. Zero denominator is rejected.
inline Rat rat_from_string(std::string_view s) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("rat_from_string: malformed rational '" +
                                std::string(s) + "'");
  };
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const std::size_t num_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == num_begin) fail();
  const mpz_class num(std::string(s.substr(0, i)));
  if (i == s.size()) return Rat(num);
  if (s[i] != '/') fail();
  ++i;
  const std::size_t den_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == den_begin || i != s.size()) fail();
  const mpz_class den(std::string(s.substr(den_begin)));
  if (den == 0)
    throw std::domain_error("rat_from_string: zero denominator in '" +
                            std::string(s) + "'");
  return Rat(num, den);
}

// floor(t / rho) as an exact integer; rho must be positive.
inline mpz_class rat_floor_div(const Rat& t, const Rat& rho) {
  if (!(rho > 0))
    throw std::domain_error("rat_floor_div: divisor must be positive");
  const mpq_class q = t.raw() / rho.raw();
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

// Exact integer power; negative exponents invert (zero base then throws).
inline Rat rat_pow(const Rat& base, long e) {
  if (e < 0) {
    if (base == Rat(0)) throw std::domain_error("rat_pow: 0 to negative power");
    return rat_pow(Rat(1) / base, -e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(e));
  return Rat(std::move(n), std::move(d));
}

// Every finite double is an exact dyadic rational; this conversion is exact.
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("rat_from_double: non-finite value");
  return Rat(mpq_class(x));
}

inline std::size_t rat_den_digits(const Rat& r) {
  return mpz_sizeinbase(r.den().get_mpz_t(), 10);
}

using Cpx = std::complex<double>;

inline Cpx make_cpx(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im))
    throw std::domain_error("make_cpx: non-finite component");
  return Cpx(re, im);
}

// Principal p-th root: modulus |z|^(1/p), argument arg(z)/p with
// arg taken in (-pi, pi]. A signed-zero imaginary part is collapsed first so
// negative reals land on the +pi branch.
inline Cpx cpx_nth_root_principal(Cpx z, long p) {
  if (p < 1)
    throw std::domain_error("cpx_nth_root_principal: order must be >= 1");
  if (z.imag() == 0.0) z = Cpx(z.real(), 0.0);
  if (z == Cpx(0.0, 0.0)) return Cpx(0.0, 0.0);
  if (p == 1) return z;
  const double r = std::pow(std::abs(z), 1.0 / static_cast<double>(p));
  const double theta = std::arg(z) / static_cast<double>(p);
  return std::polar(r, theta);
}

inline bool approx_eq(double a, double b, double atol = 1e-9,
                      double rtol = 1e-9) {
  return std::abs(a - b) <= atol + rtol * std::abs(b);
}

inline bool approx_eq(const Cpx& a, const Cpx& b, double atol = 1e-9,
                      double rtol = 1e-9) {
  return std::abs(a - b) <= atol + rtol * std::abs(b);
}

template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <class Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <class Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

using Mat2R = Mat2<Rat>;
using Mat4R = Mat4<Rat>;
using Vec2R = Vec2<Rat>;
using Vec4R = Vec4<Rat>;
using Mat2C = Eigen::Matrix2cd;
using Vec2C = Eigen::Vector2cd;

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (!(m(r, c) == typename Derived::Scalar(0))) return false;
  return true;
}

inline Mat2C to_complex(const Mat2R& m) {
  Mat2C out;
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < 2; ++c) out(r, c) = Cpx(m(r, c).to_double(), 0.0);
  return out;
}

}  // namespace asynlin
