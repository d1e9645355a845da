#include "hquat/quaternion.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

using namespace hquat;

namespace {

// Independent oracle: expand the Hamilton product over all 16 basis products
// using the literal multiplication table.
Quaternion brute_force_mul(const Quaternion& a, const Quaternion& b) {
  // table[r][c] = (basis index, sign) of e_r * e_c with e = {1, i, j, k}
  struct Cell { int idx; double sign; };
  static const Cell table[4][4] = {
      {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
      {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
      {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
      {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
  };
  const double av[4] = {a.x, a.y, a.z, a.u};
  const double bv[4] = {b.x, b.y, b.z, b.u};
  double out[4] = {0, 0, 0, 0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const Cell cell = table[r][c];
      out[cell.idx] += cell.sign * av[r] * bv[c];
    }
  return {out[0], out[1], out[2], out[3]};
}

double dist(const Quaternion& a, const Quaternion& b) { return norm(a - b); }

std::mt19937_64 rng(20240611);

Quaternion random_quat(double scale = 2.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng), d(rng)};
}

const Quaternion qi{0, 1, 0, 0};
const Quaternion qj{0, 0, 1, 0};
const Quaternion qk{0, 0, 0, 1};

}  // namespace

TEST_CASE("basis multiplication table", "[quaternion]") {
  CHECK(qi * qj == qk);
  CHECK(qj * qi == -qk);
  CHECK(qj * qk == qi);
  CHECK(qk * qi == qj);
  CHECK(qi * qk == -qj);
  CHECK(qi * qi == Quaternion(-1));
  CHECK(qj * qj == Quaternion(-1));
  CHECK(qk * qk == Quaternion(-1));
  CHECK((Quaternion(1) + qi) * qj == qj + qk);
}

TEST_CASE("mul agrees with brute-force basis expansion", "[quaternion]") {
  // The worked doubling-form case: (i + j) * (i*j) = (i + j) * k.
  const Quaternion p1 = qi + qj;
  const Quaternion p2 = qi * qj;
  CHECK(p1 * p2 == brute_force_mul(p1, p2));
  CHECK(p1 * p2 == qi - qj);

  for (int t = 0; t < 200; ++t) {
    const Quaternion a = random_quat();
    const Quaternion b = random_quat();
    CHECK(dist(a * b, brute_force_mul(a, b)) < 1e-13 * (1.0 + norm(a) * norm(b)));
  }
}

TEST_CASE("doubling form round trip and product rule", "[quaternion]") {
  for (int t = 0; t < 100; ++t) {
    const Quaternion p = random_quat();
    CHECK(from_doubling(doubling(p)) == p);  // exact
    const Quaternion q = random_quat();
    const Quaternion via_doubling = from_doubling(mul(doubling(p), doubling(q)));
    CHECK(dist(via_doubling, p * q) < 1e-12 * (1.0 + norm(p) * norm(q)));
  }
  // (a1=i, b1=1)(a2=0, b2=i): a = -b1*conj(b2) = i, b = a1*b2 + b1*conj(a2) = -1.
  const DoublingForm d1{{0.0, 1.0}, {1.0, 0.0}};
  const DoublingForm d2{{0.0, 0.0}, {0.0, 1.0}};
  const DoublingForm prod = mul(d1, d2);
  CHECK(prod.a == std::complex<double>(0.0, 1.0));
  CHECK(prod.b == std::complex<double>(-1.0, 0.0));
  CHECK(from_doubling(prod) == brute_force_mul(from_doubling(d1), from_doubling(d2)));
}

TEST_CASE("conj, norm, inverse", "[quaternion]") {
  const Quaternion q{1, 1, 1, 1};
  CHECK(conj(q) == Quaternion(1, -1, -1, -1));
  CHECK(norm(q) == 2.0);
  CHECK(inverse(qj) == -qj);
  CHECK_THROWS_MATCHES(inverse(Quaternion{}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::divide_by_zero;
                       }));
}

TEST_CASE("norm is multiplicative", "[quaternion]") {
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = random_quat();
    const Quaternion b = random_quat();
    const double lhs = norm(a * b);
    const double rhs = norm(a) * norm(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("conjugation reverses products", "[quaternion]") {
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = random_quat();
    const Quaternion b = random_quat();
    CHECK(dist(conj(a * b), conj(b) * conj(a)) <= 1e-14 * (1.0 + norm(a) * norm(b)));
  }
}

TEST_CASE("multiplication is associative", "[quaternion]") {
  for (int t = 0; t < 200; ++t) {
    const Quaternion a = random_quat();
    const Quaternion b = random_quat();
    const Quaternion c = random_quat();
    const double scale = std::max(1.0, norm(a) * norm(b) * norm(c));
    CHECK(dist((a * b) * c, a * (b * c)) <= 1e-12 * scale);
  }
}

TEST_CASE("commutator vanishes iff imaginary parts are parallel", "[quaternion]") {
  const Quaternion v{0, 2, -1, 0.5};
  const Quaternion q1 = Quaternion(1) + v;
  const Quaternion q2 = Quaternion(3) + 2.5 * v;
  CHECK(dist(q1 * q2, q2 * q1) < 1e-12);

  const Quaternion q3 = Quaternion(3) + qi;  // imaginary part not parallel to v
  CHECK(dist(q1 * q3, q3 * q1) > 1e-3);
}

TEST_CASE("imaginary_unit", "[quaternion]") {
  CHECK(imaginary_unit(5.0 * qi) == qi);
  const Quaternion p{1, 3, 0, 4};
  CHECK(dist(imaginary_unit(p), Quaternion{0, 0.6, 0, 0.8}) < 1e-15);
  CHECK_THROWS_MATCHES(imaginary_unit(Quaternion(7)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::on_real_axis;
                       }));

  for (int t = 0; t < 100; ++t) {
    Quaternion q = random_quat();
    if (q.unreal_norm() < 1e-3) continue;
    const Quaternion I = imaginary_unit(q);
    CHECK(dist(I * I, Quaternion(-1)) < 1e-12);
    CHECK(std::abs(norm(I) - 1.0) < 1e-12);
  }
}

TEST_CASE("polar and embed", "[quaternion]") {
  const PolarForm f = polar(Quaternion(1) + qi);
  CHECK(f.m == Catch::Approx(std::sqrt(2.0)));
  CHECK(f.theta == Catch::Approx(std::atan2(1.0, 1.0)));
  CHECK(dist(f.axis, qi) < 1e-15);
  CHECK_FALSE(f.axis_arbitrary);

  CHECK(embed(0.0, 1.0, qj) == qj);

  const PolarForm g = polar(Quaternion(-2));
  CHECK(g.m == 2.0);
  CHECK(g.theta == Catch::Approx(std::acos(-1.0)));
  CHECK(g.axis_arbitrary);

  CHECK_THROWS_MATCHES(polar(Quaternion{}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::zero_quaternion;
                       }));

  // polar/embed round trip away from the real axis
  for (int t = 0; t < 200; ++t) {
    Quaternion q = random_quat();
    if (q.unreal_norm() < 1e-6 || norm(q) == 0.0) continue;
    CHECK(dist(embed(polar(q)), q) <= 1e-12 * norm(q));
  }
}

TEST_CASE("polar reconstruction within ulp-scale of the modulus", "[quaternion]") {
  for (int t = 0; t < 100; ++t) {
    Quaternion q = random_quat();
    if (norm(q) == 0.0) continue;
    const PolarForm f = polar(q);
    const Quaternion rebuilt =
        f.m * (Quaternion(std::cos(f.theta)) + std::sin(f.theta) * f.axis);
    if (!f.axis_arbitrary) CHECK(dist(rebuilt, q) <= 4e-15 * f.m);
  }
}

TEST_CASE("slice_exp basics", "[quaternion]") {
  CHECK(dist(slice_exp(qk, std::acos(-1.0)), Quaternion(-1)) < 1e-15);
  CHECK(dist(slice_exp(qi, 0.0), Quaternion(1)) < 1e-15);
}

TEST_CASE("quaternion literal parse", "[quaternion]") {
  CHECK(parse_quaternion("1+2i-0.5j") == Quaternion(1, 2, -0.5, 0));
  CHECK(parse_quaternion("j") == qj);
  CHECK(parse_quaternion("-3") == Quaternion(-3));
  CHECK(parse_quaternion("1+1j") == Quaternion(1, 0, 1, 0));
  CHECK(parse_quaternion("2.5e-3k") == Quaternion(0, 0, 0, 2.5e-3));
  CHECK(parse_quaternion(" 1 + i ") == Quaternion(1, 1, 0, 0));
  CHECK_THROWS_AS(parse_quaternion(""), Error);
  CHECK_THROWS_AS(parse_quaternion("1+"), Error);
  CHECK_THROWS_AS(parse_quaternion("abc"), Error);
}

TEST_CASE("quaternion literal print/parse round trip", "[quaternion]") {
  CHECK(to_string(Quaternion{}) == "0");
  CHECK(to_string(qj) == "1j");
  CHECK(to_string(Quaternion(1, 0, -2, 0)) == "1-2j");
  for (int t = 0; t < 200; ++t) {
    const Quaternion q = random_quat(10.0);
    const Quaternion back = parse_quaternion(to_string(q, 17));
    CHECK(dist(back, q) <= 1e-15 * (1.0 + norm(q)));
  }
}
