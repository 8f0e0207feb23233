#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gwwel/errors.hpp"
#include "gwwel/rng.hpp"
#include "gwwel/scalars.hpp"
#include "oracles.hpp"

using namespace gww;

namespace {
const FieldDescriptor Q = FieldDescriptor::rationals();

FieldScalar qi(long n) { return FieldScalar::integer(Q, n); }

FieldScalar qr(long num, long den) {
  mpq_class v(num, den);
  v.canonicalize();
  return FieldScalar::rational(v);
}

// 2^89 - 1 and 2^107 - 1, both prime; their product defeats the rho budget.
const char* const M89 = "618970019642690137449562111";
const char* const M107 = "162259276829213363391578010288127";
}  // namespace

TEST_CASE("field descriptors parse and validate") {
  CHECK(FieldDescriptor::parse("Q").is_rationals());
  const FieldDescriptor f = FieldDescriptor::parse("Fp:101");
  CHECK(f.is_finite());
  CHECK(f.p == 101);
  CHECK_THROWS_AS((void)FieldDescriptor::parse("Fp:4"), gw_error);
  CHECK_THROWS_AS((void)FieldDescriptor::parse("Fp:1"), gw_error);
  CHECK_THROWS_AS((void)FieldDescriptor::parse("R"), gw_error);
}

TEST_CASE("rational arithmetic is exact and guarded") {
  const FieldScalar a = qr(3, 7);
  const FieldScalar b = qr(-2, 5);
  CHECK((a + b) == qr(1, 35));
  CHECK((a * b) == qr(-6, 35));
  CHECK((a / b) == qr(-15, 14));
  CHECK(a - a == FieldScalar::zero(Q));
  CHECK_THROWS_AS((void)(a / FieldScalar::zero(Q)), gw_error);
  CHECK(FieldScalar::parse(Q, "3/7") == a);
  CHECK(FieldScalar::parse(Q, "-15") == qi(-15));
  CHECK(a.str() == "3/7");
}

TEST_CASE("mixed-field operations are rejected") {
  const FieldDescriptor f = FieldDescriptor::prime(101);
  CHECK_THROWS_AS((void)(qi(1) + FieldScalar::one(f)), gw_error);
}

TEST_CASE("prime field satisfies Fermat and has exact inverses") {
  const FieldDescriptor f = FieldDescriptor::prime(101);
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const FieldScalar a = FieldScalar::integer(f, rng.range(1, 100));
    FieldScalar pw = FieldScalar::one(f);
    for (int k = 0; k < 100; ++k) pw = pw * a;
    CHECK(pw == FieldScalar::one(f));
    CHECK(a * a.inverse() == FieldScalar::one(f));
  }
  CHECK_THROWS_AS((void)FieldScalar::zero(f).inverse(), gw_error);
}

TEST_CASE("quadratic extension: Frobenius is additive and norms land downstairs") {
  const FieldDescriptor f = FieldDescriptor::prime_square(7);
  Rng rng(5);
  const auto rand2 = [&] {
    return FieldScalar::fp2(f, rng.range(0, 6), rng.range(0, 6));
  };
  const auto pow = [&](FieldScalar x, int e) {
    FieldScalar r = FieldScalar::one(f);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
  };
  for (int i = 0; i < 25; ++i) {
    const FieldScalar x = rand2(), y = rand2();
    CHECK(pow(x + y, 7) == pow(x, 7) + pow(y, 7));
    if (!x.is_zero()) {
      const FieldScalar n = pow(x, 8);  // x^(p+1) = Nm(x)
      const auto [n0, n1] = n.fp2_value();
      CHECK(n1 == 0);
    }
  }
}

TEST_CASE("legendre symbol matches brute-force squares") {
  for (long p : {13L, 101L}) {
    std::set<long> squares;
    for (long x = 1; x < p; ++x) squares.insert((x * x) % p);
    for (long a = 1; a < p; ++a) {
      const int expect = squares.count(a) ? 1 : -1;
      CHECK(legendre_symbol(a, p) == expect);
    }
  }
}

TEST_CASE("square detection agrees with legendre over F_p and signs over Q") {
  const FieldDescriptor f = FieldDescriptor::prime(101);
  for (long a = 1; a < 101; ++a)
    CHECK(is_square(FieldScalar::integer(f, a)) == (legendre_symbol(a, 101) == 1));
  CHECK(is_square(qr(4, 9)));
  CHECK_FALSE(is_square(qi(2)));
  CHECK_FALSE(is_square(qi(-4)));
  CHECK(same_square_class(qi(18), qi(2)));
  CHECK(same_square_class(qi(-50), qi(-2)));
  CHECK_FALSE(same_square_class(qi(2), qi(3)));
}

TEST_CASE("square-class reduction on smooth numbers, refusal on hard ones") {
  CHECK(square_class_reduce(qi(18)).representative() == qi(2));
  CHECK(square_class_reduce(qi(-50)).representative() == qi(-2));
  CHECK(square_class_reduce(qi(49)).representative() == qi(1));
  CHECK(square_class_reduce(qr(8, 27)).representative() == qi(6));
  CHECK(square_class_reduce(qi(18)) == square_class_reduce(qi(2)));
  CHECK(square_class_reduce(qi(18)) != square_class_reduce(qi(3)));
  const FieldScalar hard =
      FieldScalar::parse(Q, M89) * FieldScalar::parse(Q, M107);
  CHECK_THROWS_AS((void)square_class_reduce(hard), gw_error);
}

TEST_CASE("square-class strip never changes the class and trims what it can") {
  CHECK(square_class_strip(qi(-4)) == qi(-1));
  CHECK(square_class_strip(qi(18)) == qi(2));
  CHECK(square_class_strip(qr(4, 9)) == qi(1));
  const FieldScalar m89 = FieldScalar::parse(Q, M89);
  CHECK(square_class_strip(m89 * m89 * qi(3)) == qi(3));
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    const FieldScalar a = qr(rng.range(-5000, 5000), rng.range(1, 5000));
    if (a.is_zero()) continue;
    CHECK(same_square_class(square_class_strip(a), a));
  }
}

TEST_CASE("hilbert symbols: frozen values, symmetry, product formula") {
  const QPlace inf = QPlace::infinity();
  CHECK(hilbert_symbol(-1, -1, inf) == -1);
  CHECK(hilbert_symbol(-1, -1, QPlace::finite(2)) == -1);
  CHECK(hilbert_symbol(2, 3, QPlace::finite(2)) == -1);
  CHECK(hilbert_symbol(2, 3, QPlace::finite(3)) == -1);
  CHECK(hilbert_symbol(2, 3, QPlace::finite(5)) == 1);
  CHECK(hilbert_symbol(2, 3, inf) == 1);
  CHECK(hilbert_symbol(5, -1, QPlace::finite(5)) == 1);
  CHECK(hilbert_symbol(3, -1, QPlace::finite(3)) == -1);

  Rng rng(3);
  const long pool[] = {-1, 2, 3, 5, -6, 7, 10, -15, 30};
  for (int i = 0; i < 30; ++i) {
    const mpq_class a(pool[rng.range(0, 8)]);
    const mpq_class b(pool[rng.range(0, 8)]);
    const mpq_class c(pool[rng.range(0, 8)]);
    int prod = hilbert_symbol(a, b, inf);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
      prod *= hilbert_symbol(a, b, QPlace::finite(p));
    CHECK(prod == 1);  // all other places are +1 for entries this smooth
    for (long p : {2L, 3L, 5L, 7L})
      CHECK(hilbert_symbol(a, b, QPlace::finite(p)) ==
            hilbert_symbol(b, a, QPlace::finite(p)));
    for (long p : {2L, 3L, 5L})
      CHECK(hilbert_symbol(a * b, c, QPlace::finite(p)) ==
            hilbert_symbol(a, c, QPlace::finite(p)) *
                hilbert_symbol(b, c, QPlace::finite(p)));
  }
}

TEST_CASE("factorization respects its budget and reports completeness") {
  const Factorization fa = factor_with_budget(mpz_class(-2 * 2 * 3 * 3 * 3 * 35));
  CHECK(fa.complete());
  mpz_class back = fa.sign;
  for (const auto& [p, e] : fa.primes)
    for (unsigned i = 0; i < e; ++i) back *= p;
  CHECK(back == -2 * 2 * 3 * 3 * 3 * 35);
  const Factorization fb =
      factor_with_budget(mpz_class(M89) * mpz_class(M107), 2000);
  CHECK_FALSE(fb.complete());
  CHECK(mpz_class(fb.cofactor) == mpz_class(M89) * mpz_class(M107));
}

TEST_CASE("probable-prime classifier on knowns") {
  CHECK(is_probable_prime(mpz_class(M89)));
  CHECK(is_probable_prime(mpz_class(1009)));
  CHECK_FALSE(is_probable_prime(mpz_class(M89) * 3));
  CHECK_FALSE(is_probable_prime(mpz_class(1)));
}

TEST_CASE("places format distinctly") {
  CHECK(QPlace::infinity().str() != QPlace::finite(2).str());
  CHECK(QPlace::finite(2).str() != QPlace::finite(3).str());
}
