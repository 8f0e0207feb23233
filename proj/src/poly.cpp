#include "gwwel/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gww {

// ----- field division / gcd --------------------------------------------------

DivRem divrem(const PolyFS& a, const PolyFS& b) {
  require(!b.is_zero(), errc::zero_element, "polynomial division by zero");
  DivRem out;
  out.rem = a;
  if (a.is_zero() || a.degree() < b.degree()) return out;
  out.quot.c.assign(a.degree() - b.degree() + 1, FieldScalar{});
  const FieldScalar linv = b.lc().inverse();
  while (!out.rem.is_zero() && out.rem.degree() >= b.degree()) {
    const int k = out.rem.degree() - b.degree();
    FieldScalar t = out.rem.lc() * linv;
    out.quot.c[k] = t;
    out.rem = out.rem - shift_up(scale(b, t), k);
  }
  out.quot.normalize();
  return out;
}

PolyFS poly_mod(const PolyFS& a, const PolyFS& b) { return divrem(a, b).rem; }

PolyFS make_monic(const PolyFS& a) {
  if (a.is_zero() || a.lc().is_one()) return a;
  return scale(a, a.lc().inverse());
}

namespace {

// --- integer polynomial helpers (cleared-denominator images of Q[x]) ---

using ZP = std::vector<mpz_class>;  // trimmed; empty = 0

void ztrim(ZP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int zdeg(const ZP& a) { return static_cast<int>(a.size()) - 1; }

mpz_class zcontent(const ZP& a) {
  mpz_class g = 0;
  for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

void zdiv_scalar(ZP& a, const mpz_class& d) {
  for (auto& v : a) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    v = q;
  }
}

// R = lc(b)^(deg a - deg b + 1) * a  mod b   (textbook pseudo-remainder)
ZP zprem(ZP r, const ZP& b) {
  const mpz_class& ell = b.back();
  int e = zdeg(r) - zdeg(b) + 1;
  while (!r.empty() && zdeg(r) >= zdeg(b)) {
    const int k = zdeg(r) - zdeg(b);
    const mpz_class head = r.back();
    for (auto& v : r) v *= ell;
    for (std::size_t i = 0; i < b.size(); ++i) r[k + i] -= head * b[i];
    ztrim(r);
    --e;
  }
  if (e > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), ell.get_mpz_t(), e);
    for (auto& v : r) v *= f;
  }
  return r;
}

// Q[x] -> primitive Z[x] with the scalar multiplier it was divided by.
struct PrimImage {
  ZP z;
  mpq_class unit;  // original = unit * z
};

PrimImage q_primitive(const PolyFS& a) {
  PrimImage out;
  mpz_class den = 1;
  for (const auto& c : a.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rat().get_den().get_mpz_t());
  out.z.reserve(a.c.size());
  for (const auto& c : a.c) out.z.push_back(mpz_class(c.rat() * den));
  mpz_class cont = zcontent(out.z);
  if (cont == 0) cont = 1;
  if (cont != 1) zdiv_scalar(out.z, cont);
  out.unit = mpq_class(cont, den);
  out.unit.canonicalize();
  return out;
}

PolyFS q_from_z(const ZP& z) {
  PolyFS p;
  p.c.reserve(z.size());
  for (const auto& v : z) p.c.push_back(FieldScalar::rational(mpq_class(v)));
  p.normalize();
  return p;
}

mpq_class qpow(const mpq_class& a, long e) {
  mpq_class r = 1, b = a;
  bool invert = e < 0;
  unsigned long n = invert ? -e : e;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), n);
  r = mpq_class(num, den);
  r.canonicalize();
  if (invert) {
    require(r != 0, errc::internal, "inverting zero in qpow");
    r = 1 / r;
  }
  return r;
}

// Resultant over Q through a sub-resultant PRS on primitive integer images,
// with the scaling relations accumulated in an exact rational multiplier.
mpq_class resultant_q(const PolyFS& A0, const PolyFS& B0) {
  PrimImage pa = q_primitive(A0), pb = q_primitive(B0);
  ZP A = pa.z, B = pb.z;
  // Res(ua*Â, ub*B̂) = ua^{deg B} ub^{deg A} Res(Â, B̂)
  mpq_class M = qpow(pa.unit, zdeg(B)) * qpow(pb.unit, zdeg(A));
  if ((zdeg(A) % 2) && (zdeg(B) % 2) && zdeg(A) < zdeg(B)) M = -M;
  if (zdeg(A) < zdeg(B)) std::swap(A, B);
  mpz_class g = 1, h = 1;
  while (zdeg(B) >= 1) {
    const int m = zdeg(A), n = zdeg(B), d = m - n;
    const mpz_class ell = B.back();
    ZP R = zprem(A, B);
    if (R.empty()) return 0;
    const int r = zdeg(R);
    // Res(A,B) = (-1)^{mn} ell^{m - r - (d+1) n} Res(B,R)
    if ((m % 2) && (n % 2)) M = -M;
    M *= qpow(mpq_class(ell), m - r - (d + 1) * n);
    // sub-resultant shrink: R~ = R / (g h^d); Res(B, R) = (g h^d)^n Res(B, R~)
    mpz_class hp;
    mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), d);
    mpz_class divisor = g * hp;
    zdiv_scalar(R, divisor);
    M *= qpow(mpq_class(divisor), n);
    A = std::move(B);
    B = std::move(R);
    g = A.back();
    if (d > 0) {
      // h <- g^d / h^{d-1}, exact
      mpz_class gp, hq;
      mpz_pow_ui(gp.get_mpz_t(), g.get_mpz_t(), d);
      mpz_pow_ui(hq.get_mpz_t(), h.get_mpz_t(), d - 1);
      mpz_class nh;
      mpz_divexact(nh.get_mpz_t(), gp.get_mpz_t(), hq.get_mpz_t());
      h = nh;
    }
  }
  if (B.empty()) return 0;  // deg A >= 1 here, shared factor
  M *= qpow(mpq_class(B[0]), zdeg(A));
  return M;
}

// Resultant over a finite field by monic Euclid with multiplier tracking.
FieldScalar resultant_fin(PolyFS A, PolyFS B) {
  FieldScalar M = A.lc().one_like();
  if (A.degree() < B.degree()) {
    if ((A.degree() % 2) && (B.degree() % 2)) M = -M;
    std::swap(A, B);
  }
  while (B.degree() >= 1) {
    const int m = A.degree(), n = B.degree();
    PolyFS R = poly_mod(A, B);
    if (R.is_zero()) return M.zero_like();
    if ((m % 2) && (n % 2)) M = -M;
    FieldScalar lp = B.lc();
    for (int i = 0; i < m - R.degree(); ++i) M = M * lp;
    A = std::move(B);
    B = std::move(R);
  }
  if (B.is_zero()) return M.zero_like();
  for (int i = 0; i < A.degree(); ++i) M = M * B.c[0];
  return M;
}

// Primitive PRS gcd over Z for the Q path.
ZP zgcd_prs(ZP A, ZP B) {
  if (zdeg(A) < zdeg(B)) std::swap(A, B);
  if (B.empty()) return A;
  mpz_class g = 1, h = 1;
  while (true) {
    if (zdeg(B) == 0) return {mpz_class(1)};  // coprime
    const int d = zdeg(A) - zdeg(B);
    ZP R = zprem(A, B);
    if (R.empty()) return B;
    mpz_class hp;
    mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), d);
    mpz_class divisor = g * hp;
    zdiv_scalar(R, divisor);
    A = std::move(B);
    B = std::move(R);
    g = A.back();
    if (d > 0) {
      mpz_class gp, hq, nh;
      mpz_pow_ui(gp.get_mpz_t(), g.get_mpz_t(), d);
      mpz_pow_ui(hq.get_mpz_t(), h.get_mpz_t(), d - 1);
      mpz_divexact(nh.get_mpz_t(), gp.get_mpz_t(), hq.get_mpz_t());
      h = nh;
    }
  }
}

}  // namespace

PolyFS gcd_poly(const PolyFS& a, const PolyFS& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  const FieldDescriptor& f = merge_fields(a.lc().field(), b.lc().field());
  if (f.is_rationals()) {
    ZP g = zgcd_prs(q_primitive(a).z, q_primitive(b).z);
    mpz_class cont = zcontent(g);
    if (cont != 0 && cont != 1) zdiv_scalar(g, cont);
    return make_monic(q_from_z(g));
  }
  PolyFS A = a, B = b;
  while (!B.is_zero()) {
    PolyFS R = poly_mod(A, B);
    A = std::move(B);
    B = std::move(R);
  }
  return make_monic(A);
}

XGcd xgcd_poly(const PolyFS& a, const PolyFS& b) {
  if (a.is_zero() && b.is_zero()) return XGcd{};
  // classic extended Euclid over the field; small degrees only
  PolyFS r0 = a, r1 = b;
  PolyFS one, zero;
  const FieldScalar sample = a.is_zero() ? b.sample() : a.sample();
  one = PolyFS::constant(sample.one_like());
  PolyFS s0 = one, s1 = zero, t0 = zero, t1 = one;
  while (!r1.is_zero()) {
    DivRem dr = divrem(r0, r1);
    PolyFS r2 = dr.rem;
    PolyFS s2 = s0 - dr.quot * s1;
    PolyFS t2 = t0 - dr.quot * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  XGcd out;
  if (r0.is_zero()) {
    out.g = r0;
    out.u = s0;
    out.v = t0;
    return out;
  }
  FieldScalar linv = r0.lc().inverse();
  out.g = scale(r0, linv);
  out.u = scale(s0, linv);
  out.v = scale(t0, linv);
  return out;
}

FieldScalar resultant_nocap(const PolyFS& a, const PolyFS& b) {
  require(!a.is_zero() && !b.is_zero(), errc::zero_input,
          "resultant needs nonzero polynomials");
  const FieldDescriptor& f = merge_fields(a.lc().field(), b.lc().field());
  if (a.is_constant() && b.is_constant()) return FieldScalar::one(f);
  if (a.is_constant()) {
    FieldScalar r = FieldScalar::one(f);
    for (int i = 0; i < b.degree(); ++i) r = r * a.c[0];
    return r;
  }
  if (b.is_constant()) {
    FieldScalar r = FieldScalar::one(f);
    for (int i = 0; i < a.degree(); ++i) r = r * b.c[0];
    return r;
  }
  if (f.is_rationals()) return FieldScalar::rational(resultant_q(a, b));
  return resultant_fin(a, b);
}

FieldScalar resultant(const PolyFS& a, const PolyFS& b) {
  require(!a.is_zero() && !b.is_zero(), errc::zero_input,
          "resultant needs nonzero polynomials");
  require(a.degree() <= kDegreeCap && b.degree() <= kDegreeCap,
          errc::degree_cap_exceeded, "resultant input exceeds degree cap");
  return resultant_nocap(a, b);
}

FieldScalar discriminant(const PolyFS& f) {
  require(!f.is_zero(), errc::zero_input, "discriminant of zero");
  require(f.degree() <= kDegreeCap, errc::degree_cap_exceeded,
          "discriminant input exceeds degree cap");
  const int n = f.degree();
  require(n >= 1, errc::bad_argument, "discriminant needs degree >= 1");
  if (n == 1) return f.lc().one_like();
  PolyFS fp = derivative(f);
  FieldScalar res = fp.is_zero() ? f.lc().zero_like() : resultant_nocap(f, fp);
  FieldScalar d = res / f.lc();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2) d = -d;
  return d;
}

bool is_squarefree(const PolyFS& f) {
  require(!f.is_zero(), errc::zero_input, "squarefree test on zero");
  if (f.degree() <= 1) return true;
  return gcd_poly(f, derivative(f)).degree() == 0;
}

namespace {
FieldScalar pth_root_scalar(const FieldScalar& c) {
  const FieldDescriptor& f = c.field();
  if (f.kind == FieldKind::PrimeSquare) {
    // Frobenius is an involution on F_{p^2}, so the p-th root is x^p
    FieldScalar r = c.one_like();
    std::uint64_t e = f.p;
    FieldScalar b = c;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  return c;  // Null or F_p: a^p = a
}
}  // namespace

PolyFS squarefree_part(const PolyFS& f) {
  require(!f.is_zero(), errc::zero_input, "squarefree part of zero");
  if (f.degree() == 0) return make_monic(f);
  PolyFS fp = derivative(f);
  if (fp.is_zero()) {
    // char p with f = h(x^p); extract the p-th root and recurse
    const FieldDescriptor& fd = f.lc().field();
    require(fd.is_finite(), errc::internal, "zero derivative in char 0");
    const std::uint64_t p = fd.p;
    PolyFS h;
    h.c.resize(f.degree() / p + 1);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      if (f.c[i].is_zero()) continue;
      require(i % p == 0, errc::internal, "zero derivative shape");
      h.c[i / p] = pth_root_scalar(f.c[i]);
    }
    h.normalize();
    return squarefree_part(h);
  }
  PolyFS g = gcd_poly(f, fp);
  if (g.degree() == 0) return make_monic(f);
  PolyFS w = divrem(f, g).quot;  // radical = lcm(rad(w), rad(g))
  PolyFS rw = squarefree_part(w);
  PolyFS rg = squarefree_part(g);
  PolyFS d = gcd_poly(rw, rg);
  if (d.degree() > 0) rw = divrem(rw, d).quot;
  return make_monic(rw * rg);
}

PolyFS interpolate(const std::vector<std::pair<FieldScalar, FieldScalar>>& pts) {
  require(!pts.empty(), errc::bad_argument, "no interpolation points");
  // Newton form
  std::vector<FieldScalar> xs, coef;
  for (const auto& [x, y] : pts) {
    xs.push_back(x);
    coef.push_back(y);
  }
  const std::size_t n = pts.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      FieldScalar dx = xs[i] - xs[i - level];
      require(!dx.is_zero(), errc::bad_argument, "repeated interpolation node");
      coef[i] = (coef[i] - coef[i - 1]) / dx;
    }
  PolyFS acc = PolyFS::constant(coef[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    // acc = acc * (x - xs[i]) + coef[i]
    PolyFS lin;
    lin.c = {-xs[i], xs[i].one_like()};
    acc = acc * lin + PolyFS::constant(coef[i]);
  }
  return acc;
}

// ----- parsing / printing -----------------------------------------------------

namespace {

struct TermTok {
  mpq_class coeff_hint;      // unused; kept via FieldScalar below
  FieldScalar coeff;
  std::map<std::string, int> vars;
};

std::vector<std::string> split_signed_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && i > 0 && s[i - 1] != '^' &&
        s[i - 1] != '*' && s[i - 1] != '+' && s[i - 1] != '-' && s[i - 1] != '(') {
      out.push_back(cur);
      cur.clear();
      cur.push_back(ch == '-' ? '-' : '+');
      continue;
    }
    cur.push_back(ch);
  }
  require(depth == 0, errc::parse_error, "unbalanced parentheses");
  if (!cur.empty()) out.push_back(cur);
  return out;
}

TermTok parse_term(const FieldDescriptor& f, std::string term,
                   const std::vector<std::string>& varnames) {
  TermTok tok;
  tok.coeff = FieldScalar::one(f);
  int sign = 1;
  std::size_t pos = 0;
  while (pos < term.size() && (term[pos] == '+' || term[pos] == '-')) {
    if (term[pos] == '-') sign = -sign;
    ++pos;
  }
  term = term.substr(pos);
  require(!term.empty(), errc::parse_error, "empty term");
  // split on '*' at depth 0
  std::vector<std::string> factors;
  std::string cur;
  int depth = 0;
  for (char ch : term) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      factors.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(ch);
  }
  factors.push_back(cur);
  for (std::string& fac : factors) {
    require(!fac.empty(), errc::parse_error, "empty factor");
    if (fac.front() == '(') {
      require(fac.back() == ')', errc::parse_error, "bad parenthesized factor");
      tok.coeff = tok.coeff * FieldScalar::parse(f, fac.substr(1, fac.size() - 2));
      continue;
    }
    // variable factor?
    bool isvar = false;
    for (const std::string& v : varnames) {
      if (fac.rfind(v, 0) == 0 &&
          (fac.size() == v.size() || fac[v.size()] == '^')) {
        int e = 1;
        if (fac.size() > v.size()) {
          std::string es = fac.substr(v.size() + 1);
          require(!es.empty() &&
                      es.find_first_not_of("0123456789") == std::string::npos,
                  errc::parse_error, "bad exponent in '" + fac + "'");
          require(es.size() <= 3, errc::degree_cap_exceeded,
                  "exponent too large in '" + fac + "'");
          e = std::stoi(es);
        }
        tok.vars[v] += e;
        isvar = true;
        break;
      }
    }
    if (isvar) continue;
    tok.coeff = tok.coeff * FieldScalar::parse(f, fac);
  }
  if (sign < 0) tok.coeff = -tok.coeff;
  return tok;
}

std::string scalar_term_str(const FieldScalar& c, const std::string& mono,
                            bool first) {
  // renders "c*mono" with sign handling; mono may be empty
  std::string cs = c.str();
  bool neg = false;
  if (!cs.empty() && cs[0] == '-') {
    neg = true;
    cs = cs.substr(1);
  }
  bool composite = cs.find_first_of("+*") != std::string::npos &&
                   cs.find("*w") != std::string::npos;
  if (composite) cs = "(" + cs + ")";
  std::string body;
  if (mono.empty()) body = cs;
  else if (cs == "1") body = mono;
  else body = cs + "*" + mono;
  if (first) return neg ? "-" + body : body;
  return neg ? " - " + body : " + " + body;
}

}  // namespace

PolyFS parse_poly(const FieldDescriptor& f, const std::string& text,
                  const std::string& var) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  require(!s.empty(), errc::parse_error, "empty polynomial");
  PolyFS out;
  for (const std::string& t : split_signed_terms(s)) {
    TermTok tok = parse_term(f, t, {var});
    int e = 0;
    for (auto& [v, k] : tok.vars) e += k;
    require(e <= kDegreeCap, errc::degree_cap_exceeded,
            "degree cap exceeded in polynomial literal");
    PolyFS mono = shift_up(PolyFS::constant(tok.coeff), e);
    out = out + mono;
  }
  return out;
}

std::string poly_str(const PolyFS& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    FieldScalar c = p.coeff(i);
    if (c.is_zero()) continue;
    std::string mono;
    if (i == 1) mono = var;
    else if (i > 1) mono = var + "^" + std::to_string(i);
    out += scalar_term_str(c, mono, first);
    first = false;
  }
  return out;
}

// ----- bivariate helpers --------------------------------------------------------

Bivar bivar_dx(const Bivar& f) {
  return map_coeffs(f, [](const PolyFS& p) { return derivative(p); });
}

Bivar bivar_dy(const Bivar& f) { return derivative(f); }

FieldScalar bivar_eval(const Bivar& f, const FieldScalar& x, const FieldScalar& y) {
  FieldScalar acc;
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it)
    acc = acc * y + eval_poly(*it, x);
  return acc;
}

namespace {
PolyFS poly_shift_arg(const PolyFS& p, const FieldScalar& s) {
  // p(x + s) by Horner
  PolyFS acc, lin;
  if (p.is_zero()) return p;
  lin.c = {s, s.is_zero() ? p.sample().one_like() : s.one_like()};
  lin.normalize();
  if (lin.c.size() < 2) {  // s was zero: lin = x
    lin.c = {p.sample().zero_like(), p.sample().one_like()};
  }
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
    acc = acc * lin + PolyFS::constant(*it);
  return acc;
}
}  // namespace

Bivar bivar_shift(const Bivar& f, const FieldScalar& x0, const FieldScalar& y0) {
  // x -> x + x0 on every coefficient, then y -> y + y0 by outer Horner
  Bivar shifted = map_coeffs(f, [&](const PolyFS& p) { return poly_shift_arg(p, x0); });
  if (y0.is_zero()) return shifted;
  Bivar acc, lin;
  PolyFS y0p = PolyFS::constant(y0);
  lin.c = {y0p, PolyFS::constant(y0.one_like())};
  for (auto it = shifted.c.rbegin(); it != shifted.c.rend(); ++it)
    acc = acc * lin + Bivar::constant(*it);
  return acc;
}

Bivar bivar_swap_xy(const Bivar& f) {
  Bivar out;
  for (std::size_t j = 0; j < f.c.size(); ++j)
    for (std::size_t i = 0; i < f.c[j].c.size(); ++i) {
      const FieldScalar& v = f.c[j].c[i];
      if (v.is_zero()) continue;
      if (out.c.size() <= i) out.c.resize(i + 1);
      if (out.c[i].c.size() <= j) out.c[i].c.resize(j + 1);
      out.c[i].c[j] = v;
    }
  for (auto& row : out.c) row.normalize();
  out.normalize();
  return out;
}

int bivar_total_degree(const Bivar& f) {
  int d = -1;
  for (int j = 0; j < static_cast<int>(f.c.size()); ++j)
    for (int i = 0; i < static_cast<int>(f.c[j].c.size()); ++i)
      if (!f.c[j].c[i].is_zero()) d = std::max(d, i + j);
  return d;
}

Bivar bivar_sub_x_minus_cy(const Bivar& f, const FieldScalar& cc) {
  // substitute x -> x - cc*y; result in the same (y-outer, x-inner) layout
  if (f.is_zero() || cc.is_zero()) return f;
  // represent the substitution target S = x - cc*y as a Bivar
  Bivar S;
  {
    PolyFS xrow;  // y^0 coefficient: x
    xrow.c = {cc.zero_like(), cc.one_like()};
    PolyFS yrow = PolyFS::constant(-cc);  // y^1 coefficient: -cc
    S.c = {xrow, yrow};
  }
  Bivar out;
  for (std::size_t j = 0; j < f.c.size(); ++j) {
    const PolyFS& pj = f.c[j];
    if (pj.is_zero()) continue;
    // pj(S) by Horner over Bivar
    Bivar acc;
    for (auto it = pj.c.rbegin(); it != pj.c.rend(); ++it)
      acc = acc * S + Bivar::constant(PolyFS::constant(*it));
    // multiply by y^j
    acc = shift_up(acc, static_cast<int>(j));
    out = out + acc;
  }
  return out;
}

// ----- ternary forms -------------------------------------------------------------

int TernaryForm::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

bool TernaryForm::is_homogeneous() const {
  if (t_.empty()) return true;
  const int d = total_degree();
  for (const auto& [e, c] : t_)
    if (e[0] + e[1] + e[2] != d) return false;
  return true;
}

void TernaryForm::set(int i, int j, int k, FieldScalar v) {
  require(i >= 0 && j >= 0 && k >= 0, errc::bad_argument, "negative exponent");
  desc_ = merge_fields(desc_, v.field());
  std::array<int, 3> key{i, j, k};
  if (v.is_zero()) t_.erase(key);
  else t_[key] = std::move(v);
}

FieldScalar TernaryForm::get(int i, int j, int k) const {
  auto it = t_.find({i, j, k});
  return it == t_.end() ? FieldScalar{} : it->second;
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
  TernaryForm r = *this;
  r.desc_ = merge_fields(desc_, o.desc_);
  for (const auto& [e, c] : o.t_) {
    FieldScalar v = r.get(e[0], e[1], e[2]) + c;
    r.set(e[0], e[1], e[2], v);
  }
  return r;
}

TernaryForm TernaryForm::operator-(const TernaryForm& o) const {
  return *this + o.scaled(-FieldScalar::one(merge_fields(desc_, o.desc_)));
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
  TernaryForm r(merge_fields(desc_, o.desc_));
  for (const auto& [e1, c1] : t_)
    for (const auto& [e2, c2] : o.t_) {
      FieldScalar v = r.get(e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]) + c1 * c2;
      r.set(e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], v);
    }
  return r;
}

TernaryForm TernaryForm::scaled(const FieldScalar& s) const {
  TernaryForm r(merge_fields(desc_, s.field()));
  if (s.is_zero()) return r;
  for (const auto& [e, c] : t_) r.set(e[0], e[1], e[2], c * s);
  return r;
}

TernaryForm TernaryForm::partial(int var) const {
  require(var >= 0 && var <= 2, errc::bad_argument, "partial index");
  TernaryForm r(desc_);
  for (const auto& [e, c] : t_) {
    if (e[var] == 0) continue;
    FieldScalar mult = FieldScalar::integer(c.field(), e[var]);
    std::array<int, 3> ne = e;
    ne[var] -= 1;
    FieldScalar v = r.get(ne[0], ne[1], ne[2]) + c * mult;
    r.set(ne[0], ne[1], ne[2], v);
  }
  return r;
}

FieldScalar TernaryForm::eval(const FieldScalar& x0, const FieldScalar& x1,
                              const FieldScalar& x2) const {
  FieldScalar acc;
  auto powv = [](const FieldScalar& b, int e) {
    FieldScalar r = b.one_like();
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  };
  for (const auto& [e, c] : t_) {
    FieldScalar term = c;
    if (e[0]) term = term * powv(x0, e[0]);
    if (e[1]) term = term * powv(x1, e[1]);
    if (e[2]) term = term * powv(x2, e[2]);
    acc = acc + term;
  }
  return acc;
}

Bivar TernaryForm::dehomogenize(int chart) const {
  require(chart >= 0 && chart <= 2, errc::bad_argument, "chart index");
  const int xi = chart == 0 ? 1 : 0;
  const int yi = chart == 2 ? 1 : 2;
  Bivar out;
  for (const auto& [e, c] : t_) {
    const int i = e[xi], j = e[yi];
    if (static_cast<int>(out.c.size()) <= j) out.c.resize(j + 1);
    if (static_cast<int>(out.c[j].c.size()) <= i) out.c[j].c.resize(i + 1);
    out.c[j].c[i] = out.c[j].c[i] + c;
  }
  for (auto& row : out.c) row.normalize();
  out.normalize();
  return out;
}

TernaryForm TernaryForm::homogenize(const FieldDescriptor& f, const Bivar& b,
                                    int chart, int degree) {
  require(chart >= 0 && chart <= 2, errc::bad_argument, "chart index");
  const int xi = chart == 0 ? 1 : 0;
  const int yi = chart == 2 ? 1 : 2;
  TernaryForm out(f);
  for (int j = 0; j < static_cast<int>(b.c.size()); ++j)
    for (int i = 0; i < static_cast<int>(b.c[j].c.size()); ++i) {
      const FieldScalar& v = b.c[j].c[i];
      if (v.is_zero()) continue;
      require(i + j <= degree, errc::bad_argument,
              "bivariate degree exceeds homogenization degree");
      std::array<int, 3> e{0, 0, 0};
      e[xi] = i;
      e[yi] = j;
      e[chart] = degree - i - j;
      FieldScalar cur = out.get(e[0], e[1], e[2]) + v;
      out.set(e[0], e[1], e[2], cur);
    }
  return out;
}

FieldScalar det3(const std::array<std::array<FieldScalar, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

TernaryForm TernaryForm::coordinate_change(
    const std::array<std::array<FieldScalar, 3>, 3>& m) const {
  require(!det3(m).is_zero(), errc::bad_argument,
          "coordinate change matrix is singular");
  // rows of m give the substituted linear forms: X_i -> sum_j m[i][j] X_j
  TernaryForm lin[3];
  for (int i = 0; i < 3; ++i) {
    TernaryForm l(desc_);
    l.set(1, 0, 0, m[i][0]);
    l.set(0, 1, 0, m[i][1]);
    l.set(0, 0, 1, m[i][2]);
    lin[i] = l;
  }
  TernaryForm out(desc_);
  auto tpow = [&](const TernaryForm& b, int e) {
    TernaryForm r(desc_);
    r.set(0, 0, 0, FieldScalar::one(desc_));
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  };
  for (const auto& [e, c] : t_) {
    TernaryForm term = tpow(lin[0], e[0]) * tpow(lin[1], e[1]) * tpow(lin[2], e[2]);
    out = out + term.scaled(c);
  }
  return out;
}

std::string TernaryForm::str() const {
  if (t_.empty()) return "0";
  // highest degree first, then lexicographic on exponents, descending
  std::vector<std::pair<std::array<int, 3>, FieldScalar>> terms(t_.begin(), t_.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::string mono;
    const char* names[3] = {"X0", "X1", "X2"};
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    out += scalar_term_str(c, mono, first);
    first = false;
  }
  return out;
}

TernaryForm TernaryForm::parse(const FieldDescriptor& f, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  require(!s.empty(), errc::parse_error, "empty ternary form");
  TernaryForm out(f);
  for (const std::string& t : split_signed_terms(s)) {
    TermTok tok = parse_term(f, t, {"X0", "X1", "X2"});
    int e[3] = {0, 0, 0};
    for (auto& [v, k] : tok.vars) e[v[1] - '0'] += k;
    require(e[0] + e[1] + e[2] <= kDegreeCap, errc::degree_cap_exceeded,
            "degree cap exceeded in ternary literal");
    FieldScalar cur = out.get(e[0], e[1], e[2]) + tok.coeff;
    out.set(e[0], e[1], e[2], cur);
  }
  return out;
}

// ----- rational functions ---------------------------------------------------------

RationalFunction RationalFunction::of(PolyFS num, PolyFS den) {
  RationalFunction r;
  if (den.is_zero()) {
    // convenience: empty denominator means 1 (see poly()); reject explicit 0
    require(!num.is_zero(), errc::zero_denominator,
            "rational function with zero denominator");
    den = PolyFS::constant(num.sample().one_like());
  }
  if (num.is_zero()) return r;  // canonical zero
  PolyFS g = gcd_poly(num, den);
  if (g.degree() > 0) {
    num = divrem(num, g).quot;
    den = divrem(den, g).quot;
  }
  FieldScalar linv = den.lc().inverse();
  r.num_ = scale(num, linv);
  r.den_ = make_monic(den);
  return r;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  return of(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return *this + (-o);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction{};
  return of(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  require(!o.is_zero(), errc::zero_element, "division by zero rational function");
  if (is_zero()) return *this;
  return of(num_ * o.den_, den_ * o.num_);
}

std::string RationalFunction::str(const std::string& var) const {
  if (is_zero()) return "0";
  if (den_.degree() == 0 && den_.c[0].is_one()) return poly_str(num_, var);
  return "(" + poly_str(num_, var) + ")/(" + poly_str(den_, var) + ")";
}

std::string FunctionPlace::str() const {
  return infinite ? "s=inf" : "s=" + a.str();
}

namespace {
// multiplicity of the root `a` and the deflated polynomial
std::pair<long, PolyFS> root_multiplicity(PolyFS p, const FieldScalar& a) {
  long m = 0;
  while (!p.is_zero() && eval_poly(p, a).is_zero()) {
    PolyFS lin;
    lin.c = {-a, a.one_like()};
    DivRem dr = divrem(p, lin);
    require(dr.rem.is_zero(), errc::internal, "deflation remainder");
    p = dr.quot;
    ++m;
  }
  return {m, p};
}
}  // namespace

PlaceValue place_value(const RationalFunction& f, const FunctionPlace& pl) {
  require(!f.is_zero(), errc::zero_input, "place valuation of zero");
  PlaceValue out;
  if (pl.infinite) {
    out.val = f.den().degree() - f.num().degree();
    out.unit = f.num().lc() / f.den().lc();
    return out;
  }
  PolyFS num = f.num(), den = f.den();
  long vn = 0, vd = 0;
  if (eval_poly(num, pl.a).is_zero()) {
    auto [m, rest] = root_multiplicity(num, pl.a);
    vn = m;
    num = rest;
  }
  if (eval_poly(den, pl.a).is_zero()) {
    auto [m, rest] = root_multiplicity(den, pl.a);
    vd = m;
    den = rest;
  }
  out.val = vn - vd;
  out.unit = eval_poly(num, pl.a) / eval_poly(den, pl.a);
  return out;
}

}  // namespace gww
