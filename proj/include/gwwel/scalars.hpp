#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gwwel/errors.hpp"

namespace gww {

// Base fields: Q and F_p (p > 3, p < 2^31).  F_{p^2} = F_p[w]/(w^2 - n0)
// exists only as an internal target of base change; the command-line surface
// never offers it.  FieldKind::Null tags the universal zero produced by
// default construction, which acts as an additive identity for any field.
enum class FieldKind : std::uint8_t { Null, Rationals, Prime, PrimeSquare };

struct FieldDescriptor {
  FieldKind kind = FieldKind::Null;
  std::uint64_t p = 0;
  std::uint64_t nonres = 0;  // PrimeSquare: w^2 = nonres, the least nonresidue

  static FieldDescriptor rationals() { return {FieldKind::Rationals, 0, 0}; }
  static FieldDescriptor prime(std::uint64_t p);
  static FieldDescriptor prime_square(std::uint64_t p);
  static FieldDescriptor parse(const std::string& s);  // "Q" | "Fp:<p>"

  bool is_rationals() const { return kind == FieldKind::Rationals; }
  bool is_finite() const {
    return kind == FieldKind::Prime || kind == FieldKind::PrimeSquare;
  }
  std::string str() const;
  bool operator==(const FieldDescriptor&) const = default;
};

// Compatible = equal, or one side Null.
bool fields_compatible(const FieldDescriptor& a, const FieldDescriptor& b);
const FieldDescriptor& merge_fields(const FieldDescriptor& a,
                                    const FieldDescriptor& b);

namespace fpa {  // word-sized modular arithmetic, p < 2^31
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
}  // namespace fpa

class FieldScalar {
 public:
  FieldScalar() = default;  // universal zero (Null field)

  static FieldScalar rational(mpq_class v);
  static FieldScalar integer(const FieldDescriptor& f, long v);
  // Rational literal mapped into f (for F_p the denominator must be a unit).
  static FieldScalar from_rational(const FieldDescriptor& f, const mpq_class& v);
  static FieldScalar fp(const FieldDescriptor& f, std::uint64_t a);
  static FieldScalar fp2(const FieldDescriptor& f, std::uint64_t a, std::uint64_t b);
  static FieldScalar zero(const FieldDescriptor& f) { return integer(f, 0); }
  static FieldScalar one(const FieldDescriptor& f) { return integer(f, 1); }

  const FieldDescriptor& field() const { return desc_; }
  bool is_zero() const;
  bool is_one() const;
  FieldScalar zero_like() const { return *this - *this; }
  FieldScalar one_like() const;

  FieldScalar operator-() const;
  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  FieldScalar operator/(const FieldScalar& o) const;
  FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
  FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
  FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }
  FieldScalar inverse() const;
  bool operator==(const FieldScalar& o) const;
  bool operator!=(const FieldScalar& o) const { return !(*this == o); }

  // Exact value accessors; each checks the field kind.
  const mpq_class& rat() const;
  std::uint64_t fp_value() const;
  std::pair<std::uint64_t, std::uint64_t> fp2_value() const;

  int sign() const;  // rationals only
  std::string str() const;

  // Parse a scalar literal: "a/b", "-3", or "n mod p" (field must agree).
  static FieldScalar parse(const FieldDescriptor& f, const std::string& s);

 private:
  FieldDescriptor desc_;
  mpq_class q_;
  std::uint64_t a_ = 0, b_ = 0;  // F_p: a_; F_{p^2}: a_ + b_ * w
};

// ----- square classes ------------------------------------------------------

// Canonical representative of a in K^x / (K^x)^2.
//   Q:       squarefree integer with sign (computed via factorization).
//   F_p:     1 or the least nonresidue n0.
//   F_{p^2}: 1 or the first nonresidue in the enumeration 2, 3, ..., w, w+1, ...
class SquareClass {
 public:
  SquareClass() = default;
  SquareClass(FieldDescriptor f, mpz_class zrep) : desc_(f), z_(std::move(zrep)) {}
  SquareClass(FieldDescriptor f, std::uint64_t a, std::uint64_t b)
      : desc_(f), a_(a), b_(b) {}

  const FieldDescriptor& field() const { return desc_; }
  const mpz_class& zrep() const { return z_; }
  FieldScalar representative() const;
  bool is_trivial() const;
  bool operator==(const SquareClass& o) const;
  bool operator!=(const SquareClass& o) const { return !(*this == o); }
  std::string str() const;

 private:
  FieldDescriptor desc_;
  mpz_class z_ = 1;
  std::uint64_t a_ = 1, b_ = 0;
};

// Canonical representative; over Q this factors num*den and may exhaust the
// factoring budget (errc::factorization_limit).  Zero input is an error.
SquareClass square_class_reduce(const FieldScalar& a);

// Same square class, cheaper: strips squares of small primes and any perfect
// square cofactor, never factors hard composites. Identity off Q.
FieldScalar square_class_strip(const FieldScalar& a);

// Exact, factorization-free predicates usable at any magnitude.
bool is_square(const FieldScalar& a);  // true for zero input? no: zero -> error
bool same_square_class(const FieldScalar& a, const FieldScalar& b);

// Multiply classes (canonical reps; Q side re-reduces via gcd, no factoring).
SquareClass square_class_mul(const SquareClass& a, const SquareClass& b);

// ----- Legendre and Hilbert symbols ---------------------------------------

// (a|p) in {-1,0,1} for odd prime p.
int legendre_symbol(const mpz_class& a, const mpz_class& p);
int legendre_symbol(const FieldScalar& a);  // field must be F_p

struct QPlace {
  bool infinite = false;
  mpz_class p = 0;
  static QPlace infinity() { return {true, 0}; }
  static QPlace finite(mpz_class prime) { return {false, std::move(prime)}; }
  bool operator==(const QPlace&) const = default;
  std::string str() const;
};

// Hilbert symbol (a,b)_v over Q, a,b nonzero, v = prime or infinity.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const QPlace& v);

// ----- integer factorization with a budget ---------------------------------

struct Factorization {
  int sign = 1;
  std::map<mpz_class, unsigned> primes;
  mpz_class cofactor = 1;  // unfactored part (squarefree status unknown), 1 if complete
  bool complete() const { return cofactor == 1; }
};

// Trial division (p <= 10^4), perfect-power splitting, then Pollard rho under
// an iteration budget.  Never wrong, possibly incomplete.
Factorization factor_with_budget(mpz_class n, std::uint64_t rho_budget = 200000);

// v_p(n) and the quotient n / p^v.
std::pair<unsigned, mpz_class> remove_power(const mpz_class& n, const mpz_class& p);

bool is_probable_prime(const mpz_class& n);

// Odd part and parity bookkeeping for Hilbert symbols at 2.
int eps4(const mpz_class& u);   // (u-1)/2 mod 2 for odd u
int omega8(const mpz_class& u); // (u^2-1)/8 mod 2 for odd u

// All primes <= 10^4 (shared sieve).
const std::vector<std::uint32_t>& small_primes();

}  // namespace gww
