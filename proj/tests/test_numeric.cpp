#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <asynlin/numeric.hpp>

#include <cmath>
#include <random>
#include <string>

using namespace asynlin;

namespace {

Cpx cpx_pow_n(Cpx w, long p) {
  Cpx r(1.0, 0.0);
  for (long i = 0; i < p; ++i) r *= w;
  return r;
}

}  // namespace

TEST_CASE("construction canonicalizes") {
  CHECK(Rat(4, 2) == Rat(2));
  CHECK(Rat(4, 2).str() == "2");
  CHECK(Rat(6, -4) == Rat(-3, 2));
  CHECK(Rat(6, -4).str() == "-3/2");
  CHECK(Rat(0, 7).str() == "0");
  CHECK(Rat(-0, 5) == Rat(0));
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("rat_from_string accepts the pinned grammar") {
  CHECK(rat_from_string("4/2") == Rat(2));
  CHECK(rat_from_string("-3/6") == Rat(-1, 2));
  CHECK(rat_from_string("0") == Rat(0));
  CHECK(rat_from_string("-0") == Rat(0));
  CHECK(rat_from_string("1089/40") == Rat(1089, 40));
  CHECK(rat_from_string("170859375/268435456") == Rat(170859375L, 268435456L));
  // 40-digit numerator exceeds any fixed-width integer
  const Rat big = rat_from_string("1234567890123456789012345678901234567890/7");
  CHECK(big.den() == 7);
  CHECK(big.num().get_str() == "1234567890123456789012345678901234567890");
}

TEST_CASE("rat_from_string rejects everything else") {
  for (const char* bad :
       {"", "-", "/", "1/", "/2", "1//2", "1/2/3", "+1", "1.5", " 1", "1 ",
        "1/ 2", "3/-4", "-3/-4", "a", "0x10", "1e3"}) {
    CHECK_THROWS_AS(rat_from_string(bad), std::invalid_argument);
  }
  CHECK_THROWS_AS(rat_from_string("1/0"), std::domain_error);
  CHECK_THROWS_AS(rat_from_string("-7/0"), std::domain_error);
}

TEST_CASE("exact arithmetic basics") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(2, 3) / Rat(4, 3) == Rat(1, 2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
  CHECK(abs(Rat(-5, 3)) == Rat(5, 3));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(7).to_long() == 7);
  CHECK_THROWS_AS(Rat(1, 2).to_long(), std::domain_error);
}

TEST_CASE("rat_floor_div") {
  CHECK(rat_floor_div(Rat(4), Rat(5, 2)) == 1);
  CHECK(rat_floor_div(Rat(7), Rat(5)) == 1);
  CHECK(rat_floor_div(Rat(6), Rat(3)) == 2);
  CHECK(rat_floor_div(Rat(0), Rat(3)) == 0);
  CHECK(rat_floor_div(Rat(-1), Rat(2)) == -1);  // floor, not truncation
  CHECK(rat_floor_div(Rat(15, 2), Rat(3, 2)) == 5);
  CHECK_THROWS_AS(rat_floor_div(Rat(1), Rat(0)), std::domain_error);
  CHECK_THROWS_AS(rat_floor_div(Rat(1), Rat(-2)), std::domain_error);
}

TEST_CASE("rat_pow and rat_from_double") {
  CHECK(rat_pow(Rat(15, 16), 7) == Rat(170859375L, 268435456L));
  CHECK(rat_pow(Rat(-3, 4), 2) == Rat(9, 16));
  CHECK(rat_pow(Rat(5), 0) == Rat(1));
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), std::domain_error);

  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(-0.0625) == Rat(-1, 16));
  // 0.1 is not representable; the conversion is exact on the stored double
  const Rat tenth = rat_from_double(0.1);
  CHECK(tenth != Rat(1, 10));
  CHECK(tenth.to_double() == 0.1);
  CHECK_THROWS_AS(rat_from_double(std::nan("")), std::domain_error);
}

TEST_CASE("denominator digit counter") {
  CHECK(rat_den_digits(Rat(1, 1000)) == 4);
  CHECK(rat_den_digits(Rat(3)) == 1);
}

TEST_CASE("principal complex roots: pinned values") {
  const Cpx a = cpx_nth_root_principal(Cpx(7.0, 0.0), 2);
  CHECK(approx_eq(a, Cpx(2.6457513110645906, 0.0), 1e-9, 1e-9));

  CHECK(cpx_nth_root_principal(Cpx(1.0, 0.0), 6) == Cpx(1.0, 0.0));

  // real negative input lands on the upper principal branch
  const Cpx b = cpx_nth_root_principal(Cpx(-8.0, 0.0), 3);
  CHECK(approx_eq(b, Cpx(1.0, std::sqrt(3.0)), 1e-12, 1e-12));

  // signed-zero imaginary part must not flip the branch
  const Cpx c = cpx_nth_root_principal(Cpx(-4.0, -0.0), 2);
  CHECK(approx_eq(c, Cpx(0.0, 2.0), 1e-12, 1e-12));

  // sixth root of the dominant eigenvalue (-27 - sqrt(5785))/160
  const double z = (-27.0 - std::sqrt(5785.0)) / 160.0;
  const Cpx d = cpx_nth_root_principal(Cpx(z, 0.0), 6);
  const double mod = std::pow(-z, 1.0 / 6.0);
  CHECK(approx_eq(d, std::polar(mod, M_PI / 6.0), 1e-13, 1e-13));
  CHECK(approx_eq(d.real(), 0.8048070, 1e-7, 0.0));
  CHECK(approx_eq(d.imag(), 0.4646555, 1e-7, 0.0));

  CHECK(cpx_nth_root_principal(Cpx(0.0, 0.0), 5) == Cpx(0.0, 0.0));
  CHECK(cpx_nth_root_principal(Cpx(3.5, -2.0), 1) == Cpx(3.5, -2.0));
  CHECK_THROWS_AS(cpx_nth_root_principal(Cpx(1.0, 0.0), 0), std::domain_error);
  CHECK_THROWS_AS(make_cpx(std::nan(""), 0.0), std::domain_error);
}

TEST_CASE("property: field arithmetic against cross-multiplication oracle") {
  std::mt19937_64 rng(0x5eed0001ULL);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 1000);
  for (int it = 0; it < 10000; ++it) {
    const long p = num(rng), q = den(rng), r = num(rng), s = den(rng);
    const Rat a(p, q), b(r, s);
    // oracle fractions, unreduced, straight from integer cross-multiplication
    auto matches = [](const Rat& got, long on, long od) {
      return got.num() * od == mpz_class(on) * got.den();
    };
    CHECK(matches(a + b, p * s + r * q, q * s));
    CHECK(matches(a - b, p * s - r * q, q * s));
    CHECK(matches(a * b, p * r, q * s));
    if (r != 0) CHECK(matches(a / b, p * s, q * r));
  }
}

TEST_CASE("property: string round-trip is the identity on canonical forms") {
  std::mt19937_64 rng(0x5eed0002ULL);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int it = 0; it < 1000; ++it) {
    const Rat a(num(rng), den(rng));
    const std::string s = a.str();
    const Rat back = rat_from_string(s);
    CHECK(back == a);
    CHECK(back.str() == s);
  }
}

TEST_CASE("property: principal roots invert exponentiation") {
  std::mt19937_64 rng(0x5eed0003ULL);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_int_distribution<long> order(1, 12);
  for (int it = 0; it < 1000; ++it) {
    Cpx z(coord(rng), coord(rng));
    if (it % 4 == 0) z = Cpx(z.real(), 0.0);  // exercise the real axis too
    if (std::abs(z) < 1e-6) continue;
    const long p = order(rng);
    const Cpx w = cpx_nth_root_principal(z, p);
    CHECK(std::abs(cpx_pow_n(w, p) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
    // principal branch: the argument shrinks into (-pi/p, pi/p]
    CHECK(std::arg(w) <= M_PI / static_cast<double>(p) + 1e-15);
    CHECK(std::arg(w) > -M_PI / static_cast<double>(p) - 1e-15);
  }
}

TEST_CASE("Eigen over exact rationals") {
  Mat4R a = Mat4R::Identity();
  a(0, 2) = Rat(1, 3);
  Mat4R b = Mat4R::Zero();
  b(2, 0) = Rat(3, 5);
  b(1, 1) = Rat(7);
  const Mat4R c = a * b;
  CHECK(c(0, 0) == Rat(1, 5));
  CHECK(c(1, 1) == Rat(7));
  CHECK(is_zero(Mat4R::Zero().eval()));
  CHECK(!is_zero(a));

  Mat2R m;
  m << Rat(1, 2), Rat(0), Rat(-3, 4), Rat(2);
  const Eigen::Matrix2d md = m.cast<double>();
  CHECK(md(0, 0) == 0.5);
  CHECK(md(1, 0) == -0.75);
  const Mat2C mc = to_complex(m);
  CHECK(mc(1, 1) == Cpx(2.0, 0.0));
}
