#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gwwel/scalars.hpp"

namespace gww {

// Inputs crossing the public boundary (parsers, resultant, discriminant,
// make_algebra on user data) refuse degrees above this; internal eliminants
// are allowed to exceed it.
inline constexpr int kDegreeCap = 64;

// Dense univariate polynomial over a commutative ring R.  c[i] is the x^i
// coefficient; the zero polynomial is the empty vector.  R must provide a
// default-constructed universal zero plus is_zero/zero_like/one_like and
// ring operators (FieldScalar does; Poly<R> itself does, so nesting works).
template <class R>
class Poly {
 public:
  std::vector<R> c;

  Poly() = default;
  explicit Poly(std::vector<R> cs) : c(std::move(cs)) { normalize(); }
  static Poly constant(R v) {
    Poly p;
    if (!v.is_zero()) p.c.push_back(std::move(v));
    return p;
  }
  // x, with coefficients shaped like `one`
  static Poly variable(const R& one) {
    Poly p;
    p.c = {one.zero_like(), one};
    return p;
  }

  void normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const R& lc() const {
    require(!c.empty(), errc::internal, "lc of zero polynomial");
    return c.back();
  }
  R coeff(std::size_t i) const { return i < c.size() ? c[i] : R{}; }

  bool is_constant() const { return c.size() <= 1; }

  Poly zero_like() const { return Poly{}; }
  R sample() const {  // some nonzero coefficient, for field/shape discovery
    require(!c.empty(), errc::internal, "sample of zero polynomial");
    return c.back();
  }
  Poly one_like() const { return Poly::constant(sample().one_like()); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  Poly operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      if (i < c.size() && i < o.c.size()) r.c[i] = c[i] + o.c[i];
      else if (i < c.size()) r.c[i] = c[i];
      else r.c[i] = o.c[i];
    }
    r.normalize();
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly{};
    Poly r;
    r.c.resize(c.size() + o.c.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) {
        if (o.c[j].is_zero()) continue;
        R t = c[i] * o.c[j];
        r.c[i + j] = r.c[i + j] + t;
      }
    }
    r.normalize();
    return r;
  }
  bool operator==(const Poly& o) const {
    if (c.size() != o.c.size()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!(c[i] == o.c[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

template <class R>
Poly<R> scale(const Poly<R>& p, const R& s) {
  if (s.is_zero()) return Poly<R>{};
  Poly<R> r = p;
  for (auto& v : r.c) v = v * s;
  r.normalize();
  return r;
}

template <class R>
Poly<R> shift_up(const Poly<R>& p, int k) {  // multiply by x^k
  if (p.is_zero()) return p;
  Poly<R> r;
  r.c.resize(p.c.size() + k);
  for (std::size_t i = 0; i < p.c.size(); ++i) r.c[i + k] = p.c[i];
  return r;
}

template <class R>
Poly<R> derivative(const Poly<R>& p) {
  Poly<R> r;
  for (std::size_t i = 1; i < p.c.size(); ++i) {
    R t = p.c[i];
    for (std::size_t k = 1; k < i; ++k) t = t + p.c[i];  // i * c[i]
    r.c.push_back(t);
  }
  r.normalize();
  return r;
}

template <class R, class S>
S eval_poly(const Poly<R>& p, const S& x, const S& zero) {
  S acc = zero;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + S(*it);
  return acc;
}

// Horner evaluation for same-type coefficient/point.
template <class R>
R eval_poly(const Poly<R>& p, const R& x) {
  R acc{};
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <class R, class F>
auto map_coeffs(const Poly<R>& p, F&& f) -> Poly<decltype(f(p.c[0]))> {
  Poly<decltype(f(p.c[0]))> r;
  r.c.reserve(p.c.size());
  for (const auto& v : p.c) r.c.push_back(f(v));
  r.normalize();
  return r;
}

// ----- exact division (ring) -------------------------------------------------

inline FieldScalar divexact(const FieldScalar& a, const FieldScalar& b) {
  return a / b;
}

template <class R>
Poly<R> divexact(const Poly<R>& a, const Poly<R>& b) {
  require(!b.is_zero(), errc::zero_element, "division by zero polynomial");
  if (a.is_zero()) return a;
  require(a.degree() >= b.degree(), errc::internal, "inexact poly division");
  Poly<R> rem = a, q;
  q.c.resize(a.degree() - b.degree() + 1);
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int k = rem.degree() - b.degree();
    R t = divexact(rem.lc(), b.lc());
    q.c[k] = t;
    rem = rem - shift_up(scale(b, t), k);
  }
  require(rem.is_zero(), errc::internal, "inexact poly division");
  q.normalize();
  return q;
}

// ----- field polynomial utilities (R = FieldScalar) --------------------------

using PolyFS = Poly<FieldScalar>;

struct DivRem {
  PolyFS quot, rem;
};
DivRem divrem(const PolyFS& a, const PolyFS& b);
PolyFS poly_mod(const PolyFS& a, const PolyFS& b);
PolyFS make_monic(const PolyFS& a);
// Monic gcd; Q path runs a fraction-free PRS on cleared-denominator images.
PolyFS gcd_poly(const PolyFS& a, const PolyFS& b);
// g = gcd(a, b) together with u, v such that u*a + v*b = g (g monic).
struct XGcd {
  PolyFS g, u, v;
};
XGcd xgcd_poly(const PolyFS& a, const PolyFS& b);

FieldScalar resultant(const PolyFS& a, const PolyFS& b);  // degree cap enforced
FieldScalar discriminant(const PolyFS& f);                // degree cap enforced
PolyFS squarefree_part(const PolyFS& f);                  // monic radical
bool is_squarefree(const PolyFS& f);

PolyFS interpolate(const std::vector<std::pair<FieldScalar, FieldScalar>>& pts);

// Uncapped internals (pipeline use).
FieldScalar resultant_nocap(const PolyFS& a, const PolyFS& b);

std::string poly_str(const PolyFS& p, const std::string& var = "x");
PolyFS parse_poly(const FieldDescriptor& f, const std::string& text,
                  const std::string& var = "x");

// Fraction-free Sylvester determinant; the ring-generic resultant used for
// nested coefficient rings and as the elimination engine on small systems.
template <class R>
R bareiss_det(std::vector<std::vector<R>> m);

template <class R>
R sylvester_resultant_ring(const Poly<R>& a, const Poly<R>& b) {
  require(!a.is_zero() && !b.is_zero(), errc::zero_input,
          "resultant of zero polynomial");
  const int m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return a.c[0].one_like();
  if (m == 0) {  // Res(c, B) = c^deg B
    R r = a.c[0].one_like();
    for (int i = 0; i < n; ++i) r = r * a.c[0];
    return r;
  }
  if (n == 0) {
    R r = b.c[0].one_like();
    for (int i = 0; i < m; ++i) r = r * b.c[0];
    return r;
  }
  const int k = m + n;
  std::vector<std::vector<R>> mat(k, std::vector<R>(k));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) mat[row][row + (m - i)] = a.coeff(i);
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) mat[n + row][row + (n - i)] = b.coeff(i);
  return bareiss_det(std::move(mat));
}

template <class R>
R bareiss_det(std::vector<std::vector<R>> m) {
  const std::size_t k = m.size();
  require(k > 0, errc::bad_argument, "empty determinant");
  bool neg = false;
  R prev;  // universal one after step 0; divexact skipped on first step
  bool have_prev = false;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    std::size_t pr = p;
    while (pr < k && m[pr][p].is_zero()) ++pr;
    if (pr == k) return R{};  // singular
    if (pr != p) {
      std::swap(m[pr], m[p]);
      neg = !neg;
    }
    for (std::size_t r = p + 1; r < k; ++r) {
      for (std::size_t j = p + 1; j < k; ++j) {
        R t = m[r][j] * m[p][p] - m[r][p] * m[p][j];
        m[r][j] = have_prev ? divexact(t, prev) : t;
      }
      m[r][p] = R{};
    }
    prev = m[p][p];
    have_prev = true;
  }
  R det = m[k - 1][k - 1];
  return neg ? -det : det;
}

// ----- ternary forms ----------------------------------------------------------

// y-outer, x-inner bivariate polynomial.
using Bivar = Poly<Poly<FieldScalar>>;

Bivar bivar_dx(const Bivar& f);
Bivar bivar_dy(const Bivar& f);
FieldScalar bivar_eval(const Bivar& f, const FieldScalar& x, const FieldScalar& y);
Bivar bivar_shift(const Bivar& f, const FieldScalar& x0, const FieldScalar& y0);
Bivar bivar_swap_xy(const Bivar& f);
int bivar_total_degree(const Bivar& f);
// substitute x -> x - c*y (projection-adapting change of variables)
Bivar bivar_sub_x_minus_cy(const Bivar& f, const FieldScalar& cc);

class TernaryForm {
 public:
  TernaryForm() = default;
  explicit TernaryForm(FieldDescriptor f) : desc_(f) {}

  const FieldDescriptor& field() const { return desc_; }
  bool is_zero() const { return t_.empty(); }
  int total_degree() const;
  bool is_homogeneous() const;

  void set(int i, int j, int k, FieldScalar v);
  FieldScalar get(int i, int j, int k) const;
  const std::map<std::array<int, 3>, FieldScalar>& terms() const { return t_; }

  TernaryForm operator+(const TernaryForm& o) const;
  TernaryForm operator-(const TernaryForm& o) const;
  TernaryForm operator*(const TernaryForm& o) const;
  TernaryForm scaled(const FieldScalar& s) const;

  TernaryForm partial(int var) const;
  FieldScalar eval(const FieldScalar& x0, const FieldScalar& x1,
                   const FieldScalar& x2) const;

  // chart k in {0,1,2}: set X_k = 1; (x, y) = remaining vars, index order.
  Bivar dehomogenize(int chart) const;
  static TernaryForm homogenize(const FieldDescriptor& f, const Bivar& b,
                                int chart, int degree);

  // F(M * X); M must be invertible.
  TernaryForm coordinate_change(
      const std::array<std::array<FieldScalar, 3>, 3>& m) const;

  std::string str() const;
  static TernaryForm parse(const FieldDescriptor& f, const std::string& text);

 private:
  FieldDescriptor desc_;
  std::map<std::array<int, 3>, FieldScalar> t_;
};

FieldScalar det3(const std::array<std::array<FieldScalar, 3>, 3>& m);

// ----- rational functions ------------------------------------------------------

// num/den with den monic and gcd(num, den) = 1.
class RationalFunction {
 public:
  RationalFunction() = default;
  static RationalFunction of(PolyFS num, PolyFS den);
  static RationalFunction poly(PolyFS p) {
    if (p.is_zero()) return RationalFunction{};
    return of(std::move(p), PolyFS{});  // empty den means 1 (filled by of)
  }

  const PolyFS& num() const { return num_; }
  const PolyFS& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  std::string str(const std::string& var = "s") const;

 private:
  PolyFS num_, den_;
};

// valuation of f at the place s = a (finite) or s = infinity, plus the unit
// part evaluated at the place; f nonzero.
struct PlaceValue {
  long val = 0;
  FieldScalar unit;
};
struct FunctionPlace {
  bool infinite = false;
  FieldScalar a;
  static FunctionPlace at(FieldScalar v) { return {false, std::move(v)}; }
  static FunctionPlace infinity() { return {true, {}}; }
  std::string str() const;
};
PlaceValue place_value(const RationalFunction& f, const FunctionPlace& pl);

}  // namespace gww
