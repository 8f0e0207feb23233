#include "gwwel/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gww {

const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_input: return "ZeroInput";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::non_prime_modulus: return "NonPrimeModulus";
    case errc::unsupported_field: return "UnsupportedField";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::invalid_place: return "InvalidPlace";
    case errc::parse_error: return "ParseError";
    case errc::degree_cap_exceeded: return "DegreeCapExceeded";
    case errc::bad_argument: return "BadArgument";
    case errc::not_squarefree: return "NotSquarefree";
    case errc::zero_element: return "ZeroElement";
    case errc::zero_divisor: return "ZeroDivisor";
    case errc::unit_condition_violated: return "UnitConditionViolated";
    case errc::not_reduced: return "NotReduced";
    case errc::not_a_node: return "NotANode";
    case errc::wrong_node_count: return "WrongNodeCount";
    case errc::not_integral: return "NotIntegral";
    case errc::degenerate_parameters: return "DegenerateParameters";
    case errc::factorization_limit: return "FactorizationLimit";
    case errc::not_generic: return "NotGeneric";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

// ----- field descriptors ----------------------------------------------------

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

FieldDescriptor FieldDescriptor::prime(std::uint64_t p) {
  require(p > 3, errc::non_prime_modulus, "modulus must exceed 3");
  require(p < (1ull << 31), errc::non_prime_modulus, "modulus must be < 2^31");
  require(is_probable_prime(mpz_class(static_cast<unsigned long>(p))),
          errc::non_prime_modulus, "modulus is not prime");
  return {FieldKind::Prime, p, 0};
}

namespace {
std::uint64_t least_nonresidue(std::uint64_t p) {
  for (std::uint64_t n = 2; n < p; ++n)
    if (fpa::pow(n, (p - 1) / 2, p) == p - 1) return n;
  fail(errc::internal, "no nonresidue found");
}
}  // namespace

FieldDescriptor FieldDescriptor::prime_square(std::uint64_t p) {
  FieldDescriptor base = prime(p);
  return {FieldKind::PrimeSquare, p, least_nonresidue(base.p)};
}

FieldDescriptor FieldDescriptor::parse(const std::string& s) {
  if (s == "Q" || s == "q") return rationals();
  if (s.rfind("Fp:", 0) == 0 || s.rfind("fp:", 0) == 0) {
    const std::string num = s.substr(3);
    require(!num.empty() && num.find_first_not_of("0123456789") == std::string::npos,
            errc::parse_error, "bad field literal '" + s + "'");
    require(num.size() <= 10, errc::non_prime_modulus, "modulus too large");
    return prime(std::stoull(num));
  }
  fail(errc::unsupported_field, "unknown field '" + s + "' (use Q or Fp:<p>)");
}

std::string FieldDescriptor::str() const {
  switch (kind) {
    case FieldKind::Null: return "null";
    case FieldKind::Rationals: return "Q";
    case FieldKind::Prime: return "Fp:" + std::to_string(p);
    case FieldKind::PrimeSquare: return "Fp2:" + std::to_string(p);
  }
  return "?";
}

bool fields_compatible(const FieldDescriptor& a, const FieldDescriptor& b) {
  return a.kind == FieldKind::Null || b.kind == FieldKind::Null || a == b;
}

const FieldDescriptor& merge_fields(const FieldDescriptor& a,
                                    const FieldDescriptor& b) {
  require(fields_compatible(a, b), errc::field_mismatch,
          a.str() + " vs " + b.str());
  return a.kind == FieldKind::Null ? b : a;
}

// ----- word modular arithmetic ----------------------------------------------

namespace fpa {
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  require(a % p != 0, errc::zero_element, "inverse of zero");
  return pow(a % p, p - 2, p);
}
}  // namespace fpa

// ----- FieldScalar ----------------------------------------------------------

FieldScalar FieldScalar::rational(mpq_class v) {
  FieldScalar s;
  s.desc_ = FieldDescriptor::rationals();
  v.canonicalize();
  s.q_ = std::move(v);
  return s;
}

FieldScalar FieldScalar::integer(const FieldDescriptor& f, long v) {
  switch (f.kind) {
    case FieldKind::Rationals: return rational(mpq_class(v));
    case FieldKind::Prime: {
      long r = v % static_cast<long>(f.p);
      if (r < 0) r += static_cast<long>(f.p);
      return fp(f, static_cast<std::uint64_t>(r));
    }
    case FieldKind::PrimeSquare: {
      long r = v % static_cast<long>(f.p);
      if (r < 0) r += static_cast<long>(f.p);
      return fp2(f, static_cast<std::uint64_t>(r), 0);
    }
    case FieldKind::Null:
      fail(errc::unsupported_field, "cannot build a scalar in the null field");
  }
  fail(errc::internal, "bad field kind");
}

FieldScalar FieldScalar::from_rational(const FieldDescriptor& f, const mpq_class& v) {
  if (f.kind == FieldKind::Rationals) return rational(v);
  require(f.is_finite(), errc::unsupported_field, "bad target field");
  const mpz_class p(static_cast<unsigned long>(f.p));
  mpz_class num = v.get_num() % p, den = v.get_den() % p;
  if (num < 0) num += p;
  require(den != 0, errc::zero_denominator,
          "denominator of " + v.get_str() + " vanishes mod " + p.get_str());
  std::uint64_t n = num.get_ui(), d = den.get_ui();
  std::uint64_t val = fpa::mul(n, fpa::inv(d, f.p), f.p);
  return f.kind == FieldKind::Prime ? fp(f, val) : fp2(f, val, 0);
}

FieldScalar FieldScalar::fp(const FieldDescriptor& f, std::uint64_t a) {
  require(f.kind == FieldKind::Prime, errc::field_mismatch, "fp() needs F_p");
  FieldScalar s;
  s.desc_ = f;
  s.a_ = a % f.p;
  return s;
}

FieldScalar FieldScalar::fp2(const FieldDescriptor& f, std::uint64_t a, std::uint64_t b) {
  require(f.kind == FieldKind::PrimeSquare, errc::field_mismatch, "fp2() needs F_{p^2}");
  FieldScalar s;
  s.desc_ = f;
  s.a_ = a % f.p;
  s.b_ = b % f.p;
  return s;
}

bool FieldScalar::is_zero() const {
  switch (desc_.kind) {
    case FieldKind::Null: return true;
    case FieldKind::Rationals: return q_ == 0;
    case FieldKind::Prime: return a_ == 0;
    case FieldKind::PrimeSquare: return a_ == 0 && b_ == 0;
  }
  return true;
}

bool FieldScalar::is_one() const {
  switch (desc_.kind) {
    case FieldKind::Null: return false;
    case FieldKind::Rationals: return q_ == 1;
    case FieldKind::Prime: return a_ == 1;
    case FieldKind::PrimeSquare: return a_ == 1 && b_ == 0;
  }
  return false;
}

FieldScalar FieldScalar::one_like() const {
  require(desc_.kind != FieldKind::Null, errc::internal,
          "one_like on a field-less zero");
  return one(desc_);
}

FieldScalar FieldScalar::operator-() const {
  FieldScalar r = *this;
  switch (desc_.kind) {
    case FieldKind::Null: break;
    case FieldKind::Rationals: r.q_ = -q_; break;
    case FieldKind::Prime: r.a_ = a_ ? desc_.p - a_ : 0; break;
    case FieldKind::PrimeSquare:
      r.a_ = a_ ? desc_.p - a_ : 0;
      r.b_ = b_ ? desc_.p - b_ : 0;
      break;
  }
  return r;
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
  if (desc_.kind == FieldKind::Null) return o;
  if (o.desc_.kind == FieldKind::Null) return *this;
  require(desc_ == o.desc_, errc::field_mismatch, desc_.str() + " + " + o.desc_.str());
  FieldScalar r = *this;
  switch (desc_.kind) {
    case FieldKind::Rationals: r.q_ = q_ + o.q_; break;
    case FieldKind::Prime: r.a_ = fpa::add(a_, o.a_, desc_.p); break;
    case FieldKind::PrimeSquare:
      r.a_ = fpa::add(a_, o.a_, desc_.p);
      r.b_ = fpa::add(b_, o.b_, desc_.p);
      break;
    default: break;
  }
  return r;
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const { return *this + (-o); }

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
  if (desc_.kind == FieldKind::Null) return *this;
  if (o.desc_.kind == FieldKind::Null) return o;
  require(desc_ == o.desc_, errc::field_mismatch, desc_.str() + " * " + o.desc_.str());
  FieldScalar r = *this;
  switch (desc_.kind) {
    case FieldKind::Rationals: r.q_ = q_ * o.q_; break;
    case FieldKind::Prime: r.a_ = fpa::mul(a_, o.a_, desc_.p); break;
    case FieldKind::PrimeSquare: {
      // (a1 + b1 w)(a2 + b2 w), w^2 = n0
      const std::uint64_t p = desc_.p, n0 = desc_.nonres;
      r.a_ = fpa::add(fpa::mul(a_, o.a_, p), fpa::mul(n0, fpa::mul(b_, o.b_, p), p), p);
      r.b_ = fpa::add(fpa::mul(a_, o.b_, p), fpa::mul(b_, o.a_, p), p);
      break;
    }
    default: break;
  }
  return r;
}

FieldScalar FieldScalar::inverse() const {
  require(!is_zero(), errc::zero_element, "inverse of zero");
  FieldScalar r = *this;
  switch (desc_.kind) {
    case FieldKind::Rationals: r.q_ = 1 / q_; break;
    case FieldKind::Prime: r.a_ = fpa::inv(a_, desc_.p); break;
    case FieldKind::PrimeSquare: {
      // (a + bw)^-1 = (a - bw) / (a^2 - n0 b^2)
      const std::uint64_t p = desc_.p, n0 = desc_.nonres;
      std::uint64_t nrm = fpa::sub(fpa::mul(a_, a_, p), fpa::mul(n0, fpa::mul(b_, b_, p), p), p);
      std::uint64_t ni = fpa::inv(nrm, p);
      r.a_ = fpa::mul(a_, ni, p);
      r.b_ = fpa::mul(b_ ? p - b_ : 0, ni, p);
      break;
    }
    default: break;
  }
  return r;
}

FieldScalar FieldScalar::operator/(const FieldScalar& o) const { return *this * o.inverse(); }

bool FieldScalar::operator==(const FieldScalar& o) const {
  if (desc_.kind == FieldKind::Null || o.desc_.kind == FieldKind::Null)
    return is_zero() && o.is_zero();
  if (desc_ != o.desc_) return false;
  switch (desc_.kind) {
    case FieldKind::Rationals: return q_ == o.q_;
    case FieldKind::Prime: return a_ == o.a_;
    case FieldKind::PrimeSquare: return a_ == o.a_ && b_ == o.b_;
    default: return true;
  }
}

const mpq_class& FieldScalar::rat() const {
  // the Null universal zero reads as 0 in any representation
  require(desc_.is_rationals() || desc_.kind == FieldKind::Null,
          errc::field_mismatch, "not a rational scalar");
  return q_;
}

std::uint64_t FieldScalar::fp_value() const {
  require(desc_.kind == FieldKind::Prime || desc_.kind == FieldKind::Null,
          errc::field_mismatch, "not an F_p scalar");
  return a_;
}

std::pair<std::uint64_t, std::uint64_t> FieldScalar::fp2_value() const {
  require(desc_.kind == FieldKind::PrimeSquare || desc_.kind == FieldKind::Null,
          errc::field_mismatch, "not an F_{p^2} scalar");
  return {a_, b_};
}

int FieldScalar::sign() const {
  require(desc_.is_rationals(), errc::field_mismatch, "sign needs Q");
  return sgn(q_);
}

std::string FieldScalar::str() const {
  switch (desc_.kind) {
    case FieldKind::Null: return "0";
    case FieldKind::Rationals: return q_.get_str();
    case FieldKind::Prime: return std::to_string(a_);
    case FieldKind::PrimeSquare: {
      if (b_ == 0) return std::to_string(a_);
      std::ostringstream os;
      os << a_ << "+" << b_ << "*w";
      return os.str();
    }
  }
  return "?";
}

FieldScalar FieldScalar::parse(const FieldDescriptor& f, const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), errc::parse_error, "empty scalar literal");
  // "n mod p" form (spaces already stripped -> "nmodp")
  auto mpos = s.find("mod");
  if (mpos != std::string::npos) {
    const std::string lhs = s.substr(0, mpos), rhs = s.substr(mpos + 3);
    require(f.is_finite(), errc::field_mismatch,
            "'mod' literal in field " + f.str());
    require(rhs == std::to_string(f.p), errc::field_mismatch,
            "literal modulus " + rhs + " does not match field " + f.str());
    try {
      return from_rational(f, mpq_class(lhs));
    } catch (const std::invalid_argument&) {
      fail(errc::parse_error, "bad scalar literal '" + raw + "'");
    }
  }
  try {
    mpq_class v(s);
    v.canonicalize();
    return from_rational(f, v);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad scalar literal '" + raw + "'");
  }
}

// ----- small primes / factorization ------------------------------------------

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = [] {
    constexpr std::uint32_t N = 10000;
    std::vector<bool> comp(N + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= N; ++i) {
      if (!comp[i]) {
        out.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= N; j += i)
          comp[j] = true;
      }
    }
    return out;
  }();
  return table;
}

std::pair<unsigned, mpz_class> remove_power(const mpz_class& n, const mpz_class& p) {
  mpz_class q = n, r, t;
  unsigned v = 0;
  while (q != 0) {
    mpz_fdiv_qr(t.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    q = t;
    ++v;
  }
  return {v, q};
}

namespace {

mpz_class pollard_rho(const mpz_class& n, std::uint64_t budget, std::uint64_t c0) {
  // Brent's variant; returns a nontrivial factor or 1.
  mpz_class c(static_cast<unsigned long>(c0 % 1000 + 1));
  mpz_class x(2), y(2), d(1), diff, prod(1);
  std::uint64_t iter = 0;
  const std::uint64_t batch = 64;
  while (iter < budget) {
    for (std::uint64_t i = 0; i < batch && iter < budget; ++i, ++iter) {
      x = (x * x + c) % n;
      diff = x - y;
      if (diff == 0) {  // cycle; restart with a new constant
        c += 1;
        x = 2 + mpz_class(static_cast<unsigned long>(iter % 97));
        y = x;
        prod = 1;
        continue;
      }
      prod = prod * diff % n;
    }
    mpz_gcd(d.get_mpz_t(), prod.get_mpz_t(), n.get_mpz_t());
    if (d != 1 && d != n) return d;
    if (d == n) {  // overshoot, restart
      c += 1;
      x = 2;
      y = 2;
      prod = 1;
      continue;
    }
    if (iter % (batch * 16) == 0) y = x;
  }
  return 1;
}

void factor_rec(mpz_class n, std::uint64_t budget, Factorization& out) {
  if (n == 1) return;
  // huge leftovers go straight to the cofactor: primality testing and rho
  // are both too costly there, and callers only need a best effort
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 2048 &&
      !mpz_perfect_power_p(n.get_mpz_t())) {
    out.cofactor *= n;
    return;
  }
  if (is_probable_prime(n)) {
    out.primes[n] += 1;
    return;
  }
  // perfect power?
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      mpz_class root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        Factorization sub;
        factor_rec(root, budget, sub);
        for (auto& [p, e] : sub.primes) out.primes[p] += e * k;
        if (sub.cofactor != 1) {
          // root itself resisted; fold back the power
          mpz_class pw;
          mpz_pow_ui(pw.get_mpz_t(), sub.cofactor.get_mpz_t(), k);
          out.cofactor *= pw;
        }
        return;
      }
    }
  }
  // give up early on huge composites; rho would be hopeless anyway
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 512) {
    out.cofactor *= n;
    return;
  }
  mpz_class d = pollard_rho(n, budget, mpz_sizeinbase(n.get_mpz_t(), 2));
  if (d == 1) {
    out.cofactor *= n;
    return;
  }
  factor_rec(d, budget, out);
  factor_rec(n / d, budget, out);
}

}  // namespace

Factorization factor_with_budget(mpz_class n, std::uint64_t rho_budget) {
  require(n != 0, errc::zero_input, "factor(0)");
  Factorization out;
  if (n < 0) {
    out.sign = -1;
    n = -n;
  }
  for (std::uint32_t q : small_primes()) {
    if (n == 1) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      auto [v, rest] = remove_power(n, mpz_class(q));
      out.primes[mpz_class(q)] += v;
      n = rest;
    }
  }
  if (n != 1) factor_rec(n, rho_budget, out);
  return out;
}

// ----- legendre / square classes ---------------------------------------------

int legendre_symbol(const mpz_class& a, const mpz_class& p) {
  require(p > 2 && is_probable_prime(p), errc::invalid_place,
          "legendre modulus must be an odd prime");
  mpz_class r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  // Euler criterion
  mpz_class e = (p - 1) / 2, out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out == 1 ? 1 : -1;
}

int legendre_symbol(const FieldScalar& a) {
  const FieldDescriptor& f = a.field();
  require(f.kind == FieldKind::Prime, errc::field_mismatch,
          "legendre_symbol needs an F_p scalar");
  if (a.is_zero()) return 0;
  return fpa::pow(a.fp_value(), (f.p - 1) / 2, f.p) == 1 ? 1 : -1;
}

namespace {

// Is x a square in F_{p^2}?  x = a + bw nonzero; Euler criterion via norm:
// x^{(p^2-1)/2} = Nm(x)^{(p-1)/2} since x^{p+1} = Nm(x).
bool fp2_is_square(const FieldDescriptor& f, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t p = f.p;
  std::uint64_t nrm = fpa::sub(fpa::mul(a, a, p), fpa::mul(f.nonres, fpa::mul(b, b, p), p), p);
  return fpa::pow(nrm, (p - 1) / 2, p) == 1;
}

FieldScalar fp2_canonical_nonresidue(const FieldDescriptor& f) {
  for (std::uint64_t a = 2; a < f.p; ++a)
    if (!fp2_is_square(f, a, 0)) return FieldScalar::fp2(f, a, 0);
  for (std::uint64_t b = 1; b < f.p; ++b)
    for (std::uint64_t a = 0; a < f.p; ++a)
      if (!fp2_is_square(f, a, b)) return FieldScalar::fp2(f, a, b);
  fail(errc::internal, "no F_{p^2} nonresidue found");
}

}  // namespace

bool is_square(const FieldScalar& a) {
  require(!a.is_zero(), errc::zero_input, "square class of zero");
  switch (a.field().kind) {
    case FieldKind::Rationals: {
      const mpq_class& q = a.rat();
      if (sgn(q) < 0) return false;
      return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
             mpz_perfect_square_p(q.get_den().get_mpz_t());
    }
    case FieldKind::Prime:
      return legendre_symbol(a) == 1;
    case FieldKind::PrimeSquare: {
      auto [x, y] = a.fp2_value();
      return fp2_is_square(a.field(), x, y);
    }
    default:
      fail(errc::unsupported_field, "is_square on null field");
  }
}

bool same_square_class(const FieldScalar& a, const FieldScalar& b) {
  return is_square(a * b);
}

SquareClass square_class_reduce(const FieldScalar& a) {
  require(!a.is_zero(), errc::zero_input, "square class of zero");
  const FieldDescriptor& f = a.field();
  switch (f.kind) {
    case FieldKind::Rationals: {
      // num*den is in the same class and integral.
      mpz_class n = a.rat().get_num() * a.rat().get_den();
      Factorization fac = factor_with_budget(n);
      require(fac.complete() || mpz_perfect_square_p(fac.cofactor.get_mpz_t()),
              errc::factorization_limit,
              "cannot canonicalize square class: unfactored cofactor of " +
                  std::to_string(mpz_sizeinbase(fac.cofactor.get_mpz_t(), 10)) +
                  " digits");
      mpz_class rep = fac.sign;
      for (auto& [p, e] : fac.primes)
        if (e % 2) rep *= p;
      return SquareClass(f, rep);
    }
    case FieldKind::Prime: {
      std::uint64_t rep = legendre_symbol(a) == 1 ? 1 : least_nonresidue(f.p);
      return SquareClass(f, rep, 0);
    }
    case FieldKind::PrimeSquare: {
      auto [x, y] = a.fp2_value();
      if (fp2_is_square(f, x, y)) return SquareClass(f, 1, 0);
      auto nr = fp2_canonical_nonresidue(f).fp2_value();
      return SquareClass(f, nr.first, nr.second);
    }
    default:
      fail(errc::unsupported_field, "square class on null field");
  }
}

FieldScalar square_class_strip(const FieldScalar& a) {
  if (a.field().kind != FieldKind::Rationals || a.is_zero()) return a;
  mpz_class n = a.rat().get_num() * a.rat().get_den();
  const int sign = sgn(n) < 0 ? -1 : 1;
  n = abs(n);
  mpz_class rep = 1;
  for (std::uint32_t q : small_primes()) {
    if (n == 1) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      auto [v, rest] = remove_power(n, mpz_class(q));
      if (v % 2) rep *= q;
      n = rest;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) rep *= n;
  return FieldScalar::rational(mpq_class(sign * rep));
}

FieldScalar SquareClass::representative() const {
  switch (desc_.kind) {
    case FieldKind::Rationals: return FieldScalar::rational(mpq_class(z_));
    case FieldKind::Prime: return FieldScalar::fp(desc_, a_);
    case FieldKind::PrimeSquare: return FieldScalar::fp2(desc_, a_, b_);
    default: fail(errc::internal, "null square class");
  }
}

bool SquareClass::is_trivial() const {
  if (desc_.is_rationals()) return z_ == 1;
  return a_ == 1 && b_ == 0;
}

bool SquareClass::operator==(const SquareClass& o) const {
  if (desc_ != o.desc_) return false;
  if (desc_.is_rationals()) return z_ == o.z_;
  return a_ == o.a_ && b_ == o.b_;
}

std::string SquareClass::str() const { return representative().str(); }

SquareClass square_class_mul(const SquareClass& x, const SquareClass& y) {
  require(x.field() == y.field(), errc::field_mismatch, "square class product");
  if (x.field().is_rationals()) {
    // reps are squarefree; strip the shared part, no factoring needed
    mpz_class a = x.zrep(), b = y.zrep(), g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return SquareClass(x.field(), (a / g) * (b / g));
  }
  return square_class_reduce(x.representative() * y.representative());
}

// ----- Hilbert symbol --------------------------------------------------------

int eps4(const mpz_class& u) {
  mpz_class r = u % 4;
  if (r < 0) r += 4;
  return r == 1 ? 0 : 1;
}

int omega8(const mpz_class& u) {
  mpz_class r = u % 8;
  if (r < 0) r += 8;
  return (r == 1 || r == 7) ? 0 : 1;
}

std::string QPlace::str() const { return infinite ? "inf" : p.get_str(); }

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const QPlace& v) {
  require(a != 0 && b != 0, errc::zero_input, "hilbert symbol needs nonzero entries");
  if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
  require(v.p > 1 && is_probable_prime(v.p), errc::invalid_place,
          "place must be a prime or infinity");
  // replace by integer representatives of the same square classes
  mpz_class za = a.get_num() * a.get_den();
  mpz_class zb = b.get_num() * b.get_den();
  auto [alpha, u] = remove_power(za, v.p);
  auto [beta, w] = remove_power(zb, v.p);
  if (v.p == 2) {
    int e = eps4(u) * eps4(w) + static_cast<int>(alpha) * omega8(w) +
            static_cast<int>(beta) * omega8(u);
    return e % 2 ? -1 : 1;
  }
  int res = 1;
  if ((alpha * beta) % 2 == 1 && eps4(v.p) == 1) res = -res;
  if (beta % 2 == 1 && legendre_symbol(u, v.p) == -1) res = -res;
  if (alpha % 2 == 1 && legendre_symbol(w, v.p) == -1) res = -res;
  return res;
}

}  // namespace gww
