#include "gwwel/zmod.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "gwwel/errors.hpp"
#include "gwwel/rng.hpp"

namespace gww {

namespace zp {

std::uint64_t add(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

std::uint64_t sub(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t mul(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t p, std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(p, r, a);
    a = mul(p, a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t p, std::uint64_t a) {
  require(a % p != 0, errc::zero_element, "inverse of zero mod p");
  return pow(p, a, p - 2);
}

int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec rem(std::uint64_t p, Vec a, const Vec& b) {
  require(!b.empty(), errc::zero_element, "poly division by zero mod p");
  const std::uint64_t linv = inv(p, b.back());
  while (deg(a) >= deg(b)) {
    const int k = deg(a) - deg(b);
    const std::uint64_t t = mul(p, a.back(), linv);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[k + i] = sub(p, a[k + i], mul(p, t, b[i]));
    trim(a);
  }
  return a;
}

Vec quot_exact(std::uint64_t p, const Vec& a, const Vec& b) {
  require(!b.empty(), errc::zero_element, "poly division by zero mod p");
  if (a.empty()) return {};
  Vec r = a, q(deg(a) - deg(b) + 1, 0);
  const std::uint64_t linv = inv(p, b.back());
  while (deg(r) >= deg(b)) {
    const int k = deg(r) - deg(b);
    const std::uint64_t t = mul(p, r.back(), linv);
    q[k] = t;
    for (std::size_t i = 0; i < b.size(); ++i)
      r[k + i] = sub(p, r[k + i], mul(p, t, b[i]));
    trim(r);
  }
  require(r.empty(), errc::internal, "inexact poly division mod p");
  return q;
}

Vec monic(std::uint64_t p, Vec a) {
  if (a.empty() || a.back() == 1) return a;
  const std::uint64_t s = inv(p, a.back());
  for (auto& v : a) v = mul(p, v, s);
  return a;
}

Vec gcd_monic(std::uint64_t p, Vec a, Vec b) {
  while (!b.empty()) {
    Vec r = rem(p, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(p, std::move(a));
}

Vec derivative(std::uint64_t p, const Vec& a) {
  Vec r;
  for (std::size_t i = 1; i < a.size(); ++i)
    r.push_back(mul(p, a[i], i % p));
  trim(r);
  return r;
}

Vec squarefree_monic(std::uint64_t p, const Vec& a) {
  if (a.empty()) return {};
  if (deg(a) == 0) return {1};
  // p is a 62-bit prime, far above any degree here, so a' never vanishes
  Vec g = gcd_monic(p, a, derivative(p, a));
  if (deg(g) == 0) return monic(p, a);
  return monic(p, quot_exact(p, a, g));
}

std::uint64_t eval(std::uint64_t p, const Vec& a, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    acc = add(p, mul(p, acc, x), *it);
  return acc;
}

std::uint64_t resultant(std::uint64_t p, Vec a, Vec b) {
  require(!a.empty() && !b.empty(), errc::zero_input, "resultant of zero mod p");
  std::uint64_t m = 1;
  if (deg(a) < deg(b)) {
    if ((deg(a) % 2) && (deg(b) % 2)) m = p - 1;
    std::swap(a, b);
  }
  while (deg(b) >= 1) {
    const int da = deg(a), db = deg(b);
    Vec r = rem(p, std::move(a), b);
    if (r.empty()) return 0;
    if ((da % 2) && (db % 2)) m = p - m;
    m = mul(p, m, pow(p, b.back(), da - deg(r)));
    a = std::move(b);
    b = std::move(r);
  }
  return mul(p, m, pow(p, b[0], deg(a)));
}

Vec interpolate(std::uint64_t p, const std::vector<std::uint64_t>& xs,
                const std::vector<std::uint64_t>& ys) {
  require(!xs.empty() && xs.size() == ys.size(), errc::bad_argument,
          "interpolation point mismatch");
  const std::size_t n = xs.size();
  std::vector<std::uint64_t> coef = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      const std::uint64_t dx = sub(p, xs[i], xs[i - level]);
      require(dx != 0, errc::bad_argument, "repeated interpolation node");
      coef[i] = mul(p, sub(p, coef[i], coef[i - 1]), inv(p, dx));
    }
  Vec acc = {coef[n - 1]};
  trim(acc);
  for (std::size_t i = n - 1; i-- > 0;) {
    // acc = acc*(x - xs[i]) + coef[i]
    Vec next(acc.size() + 1, 0);
    const std::uint64_t neg = xs[i] ? p - xs[i] : 0;
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] = add(p, next[k + 1], acc[k]);
      next[k] = add(p, next[k], mul(p, acc[k], neg));
    }
    next[0] = add(p, next[0], coef[i]);
    trim(next);
    acc = std::move(next);
  }
  return acc;
}

}  // namespace zp

int ZXL::tdeg() const {
  int d = -1;
  for (const auto& row : c)
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) d = std::max<int>(d, static_cast<int>(j));
  return d;
}

bool ZXL::is_zero() const {
  for (const auto& row : c)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

bool rational_reconstruct(const mpz_class& r, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (t1 == 0) return false;
  mpz_class n = r1, d = t1;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (d > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1 && !(n == 0 && d == 1)) return false;
  out = mpq_class(n, d);
  out.canonicalize();
  return true;
}

namespace {

struct ReducedXL {
  // per x-degree row: the t-polynomial mod q
  std::vector<zp::Vec> rows;
  int xdeg = -1;  // after reduction
  int tdeg_bound = -1;
};

ReducedXL reduce_mod(const ZXL& a, std::uint64_t q) {
  ReducedXL out;
  out.rows.resize(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    zp::Vec row(a.c[i].size());
    for (std::size_t j = 0; j < a.c[i].size(); ++j) {
      mpz_class v = a.c[i][j] % q;
      if (v < 0) v += q;
      row[j] = v.get_ui();
    }
    zp::trim(row);
    out.rows[i] = std::move(row);
  }
  while (!out.rows.empty() && out.rows.back().empty()) out.rows.pop_back();
  out.xdeg = static_cast<int>(out.rows.size()) - 1;
  return out;
}

// x-polynomial at t = t0; empty if identically zero there
zp::Vec specialize(std::uint64_t q, const ReducedXL& a, std::uint64_t t0) {
  zp::Vec out(a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    out[i] = zp::eval(q, a.rows[i], t0);
  zp::trim(out);
  return out;
}

struct PerPrime {
  std::uint64_t q = 0;
  int dc1 = -2, dc2 = -2;  // -2 marks failure; -1 is a genuinely zero eliminant
  int dg = -2, ds = -2;
  zp::Vec s;  // monic squarefree gcd mod q
};

// one prime's worth of work; returns nullopt-equivalent via dc1 = -2
PerPrime process_prime(const ZXL& A, const ZXL& B1, const ZXL& B2,
                       std::uint64_t q, Rng& rng) {
  PerPrime out;
  out.q = q;
  ReducedXL a = reduce_mod(A, q), b1 = reduce_mod(B1, q), b2 = reduce_mod(B2, q);
  if (a.xdeg < 0) return out;  // A vanished mod q: useless prime
  const int bound1 = a.xdeg * std::max(B1.tdeg(), 0) +
                     (b1.xdeg < 0 ? 0 : b1.xdeg) * std::max(A.tdeg(), 0);
  const int bound2 = a.xdeg * std::max(B2.tdeg(), 0) +
                     (b2.xdeg < 0 ? 0 : b2.xdeg) * std::max(A.tdeg(), 0);
  auto eliminate = [&](const ReducedXL& b, int bound) -> std::pair<bool, zp::Vec> {
    if (b.xdeg < 0) return {true, {}};  // zero eliminant
    std::vector<std::uint64_t> xs, ys;
    std::uint64_t tries = 0;
    std::uint64_t t0 = rng.bits() % q;
    while (static_cast<int>(xs.size()) < bound + 1) {
      if (++tries > 64ull * (bound + 2)) return {false, {}};
      t0 = (t0 + 1) % q;
      zp::Vec av = specialize(q, a, t0), bv = specialize(q, b, t0);
      if (zp::deg(av) != a.xdeg || zp::deg(bv) != b.xdeg) continue;
      xs.push_back(t0);
      ys.push_back(zp::resultant(q, std::move(av), std::move(bv)));
    }
    return {true, zp::interpolate(q, xs, ys)};
  };
  auto [ok1, c1] = eliminate(b1, bound1);
  auto [ok2, c2] = eliminate(b2, bound2);
  if (!ok1 || !ok2) return out;
  out.dc1 = zp::deg(c1);
  out.dc2 = zp::deg(c2);
  if (c1.empty() && c2.empty()) {
    out.dg = -1;
    out.ds = -1;
    return out;
  }
  zp::Vec g = zp::gcd_monic(q, c1, c2);
  out.dg = zp::deg(g);
  out.s = zp::squarefree_monic(q, g);
  out.ds = zp::deg(out.s);
  return out;
}

}  // namespace

PolyFS eliminant_gcd_squarefree(const ZXL& A, const ZXL& B1, const ZXL& B2,
                                std::uint64_t seed) {
  require(!A.is_zero(), errc::zero_input, "zero eliminant pivot");
  Rng prime_rng(child_seed(seed, "eliminant-primes", 0));
  Rng point_rng(child_seed(seed, "eliminant-points", 0));

  // vote key: larger eliminant degrees, then smaller gcd, then larger radical
  using Key = std::tuple<int, int, int, int>;
  auto better = [](const Key& x, const Key& y) {
    auto [a1, a2, a3, a4] = x;
    auto [b1, b2, b3, b4] = y;
    return std::make_tuple(a1, a2, -a3, a4) > std::make_tuple(b1, b2, -b3, b4);
  };
  std::map<Key, std::vector<PerPrime>> buckets;

  std::vector<std::uint64_t> used;
  PolyFS last_candidate;
  bool have_candidate = false;
  int zero_zero_streak = 0;

  const int kMaxPrimes = 320;
  for (int iter = 0; iter < kMaxPrimes; ++iter) {
    // fresh 62-bit prime
    std::uint64_t q = 0;
    while (true) {
      q = (prime_rng.bits() | (1ull << 61) | 1ull) & ((1ull << 62) - 1);
      mpz_class z(static_cast<unsigned long>(q));
      if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) continue;
      if (std::find(used.begin(), used.end(), q) != used.end()) continue;
      break;
    }
    used.push_back(q);

    PerPrime pp = process_prime(A, B1, B2, q, point_rng);
    if (pp.dc1 == -2) continue;
    if (pp.dg == -1) {
      if (++zero_zero_streak >= 4)
        fail(errc::not_generic, "both eliminants vanish identically");
      continue;
    }
    zero_zero_streak = 0;
    Key key{pp.dc1, pp.dc2, pp.dg, pp.ds};
    auto& bucket = buckets[key];
    bucket.push_back(std::move(pp));

    // find the winning bucket under the vote order
    const std::vector<PerPrime>* win = nullptr;
    Key win_key{-3, -3, 0, -3};
    for (const auto& [k, v] : buckets)
      if (!win || better(k, win_key)) {
        win = &v;
        win_key = k;
      }
    if (std::get<3>(win_key) == 0) {
      // radical is the constant 1: the gcd has no roots
      return PolyFS::constant(FieldScalar::rational(1));
    }
    if (static_cast<int>(win->size()) < 2) continue;

    // CRT-combine the winning bucket and attempt rational reconstruction
    const int dsdeg = std::get<3>(win_key);
    std::vector<mpz_class> crt(dsdeg + 1, 0);
    mpz_class modulus = 1;
    for (const PerPrime& pp2 : *win) {
      mpz_class qz(static_cast<unsigned long>(pp2.q));
      if (modulus == 1) {
        for (int i = 0; i <= dsdeg; ++i)
          crt[i] = static_cast<unsigned long>(i < static_cast<int>(pp2.s.size())
                                                  ? pp2.s[i]
                                                  : 0);
        modulus = qz;
        continue;
      }
      mpz_class minv;
      mpz_class mm = modulus % qz;
      require(mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), qz.get_mpz_t()) != 0,
              errc::internal, "CRT modulus collision");
      for (int i = 0; i <= dsdeg; ++i) {
        mpz_class vi = static_cast<unsigned long>(
            i < static_cast<int>(pp2.s.size()) ? pp2.s[i] : 0);
        mpz_class delta = ((vi - crt[i]) % qz) * minv % qz;
        if (delta < 0) delta += qz;
        crt[i] += modulus * delta;
      }
      modulus *= qz;
    }
    bool ok = true;
    PolyFS cand;
    cand.c.resize(dsdeg + 1);
    for (int i = 0; i <= dsdeg && ok; ++i) {
      mpq_class v;
      if (!rational_reconstruct(crt[i], modulus, v)) ok = false;
      else cand.c[i] = FieldScalar::rational(v);
    }
    if (!ok) continue;
    cand.normalize();
    if (have_candidate && cand == last_candidate && cand.degree() == dsdeg)
      return cand;  // stable across one extra prime
    last_candidate = cand;
    have_candidate = cand.degree() == dsdeg;
  }
  fail(errc::internal, "modular eliminant reconstruction did not stabilize");
}

}  // namespace gww
