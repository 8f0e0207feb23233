// Independent reference implementations the test suites compare against.
// Everything here favors obviousness over speed: minor-expansion determinants,
// explicit Sylvester matrices, multiplication matrices for trace and norm.
#pragma once

#include <vector>

#include "gwwel/poly.hpp"
#include "gwwel/rng.hpp"
#include "gwwel/scalars.hpp"

namespace oracle {

using gww::FieldDescriptor;
using gww::FieldScalar;
using gww::PolyFS;

using Matrix = std::vector<std::vector<FieldScalar>>;

// Determinant by expansion along the first row. Exponential; n <= 8 in tests.
inline FieldScalar det_minor(const Matrix& m, const FieldDescriptor& f) {
  const std::size_t n = m.size();
  if (n == 0) throw std::logic_error("empty matrix");
  if (n == 1) return m[0][0];
  FieldScalar acc = FieldScalar::zero(f);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    Matrix sub(n - 1, std::vector<FieldScalar>());
    for (std::size_t r = 1; r < n; ++r) {
      sub[r - 1].reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) sub[r - 1].push_back(m[r][c]);
    }
    const FieldScalar term = m[0][j] * det_minor(sub, f);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline FieldScalar det_minor(const Matrix& m) {
  return det_minor(m, m.at(0).at(0).field());
}

// Resultant as the determinant of the explicit Sylvester matrix.
inline FieldScalar sylvester_resultant(const PolyFS& p, const PolyFS& q) {
  const int dp = p.degree(), dq = q.degree();
  if (dp < 0 || dq < 0) throw std::logic_error("resultant of zero polynomial");
  const FieldDescriptor f = p.sample().field();
  if (dp == 0 && dq == 0) return FieldScalar::one(f);
  const std::size_t n = static_cast<std::size_t>(dp + dq);
  Matrix m(n, std::vector<FieldScalar>(n, FieldScalar::zero(f)));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k)
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
          p.coeff(dp - k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      m[static_cast<std::size_t>(dq + r)][static_cast<std::size_t>(r + k)] =
          q.coeff(dq - k);
  return det_minor(m);
}

// Matrix of multiplication by h on K[t]/(g) in the basis 1, t, ..., t^{n-1}.
inline Matrix mult_matrix(const PolyFS& g, const PolyFS& h) {
  const int n = g.degree();
  if (n <= 0) throw std::logic_error("modulus must have positive degree");
  const FieldDescriptor f = g.coeff(0).field();
  Matrix m(static_cast<std::size_t>(n),
           std::vector<FieldScalar>(static_cast<std::size_t>(n),
                                    FieldScalar::zero(f)));
  PolyFS col = gww::poly_mod(h, g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coeff(i);
    col = gww::poly_mod(gww::shift_up(col, 1), g);
  }
  return m;
}

inline FieldScalar trace_mult(const PolyFS& g, const PolyFS& h) {
  const Matrix m = mult_matrix(g, h);
  FieldScalar acc = FieldScalar::zero(g.coeff(0).field());
  for (std::size_t i = 0; i < m.size(); ++i) acc += m[i][i];
  return acc;
}

inline FieldScalar norm_mult(const PolyFS& g, const PolyFS& h) {
  return det_minor(mult_matrix(g, h));
}

// Squarefree part of p, up to a constant: p / gcd(p, p').
inline PolyFS squarefree_part(const PolyFS& p) {
  const PolyFS g = gww::gcd_poly(p, gww::derivative(p));
  return gww::divrem(p, gww::make_monic(g)).quot;
}

// Is the rational function a square in Q(s)? num*den = lead * monic, and the
// monic part is a square exactly when Yun's squarefree decomposition
// prod a_i^i has every odd-index a_i trivial (characteristic 0 only).
inline bool is_square_rf(const gww::RationalFunction& r) {
  if (r.is_zero()) return false;
  const PolyFS w = r.num() * r.den();
  const FieldScalar lead = w.coeff(w.degree());
  if (!gww::is_square(lead)) return false;
  const PolyFS m = gww::make_monic(w);
  if (m.degree() == 0) return true;
  const PolyFS g = gww::make_monic(gww::gcd_poly(m, gww::derivative(m)));
  if (g.degree() == 0) return false;  // squarefree and nonconstant
  PolyFS c = gww::divrem(m, g).quot;
  PolyFS d = gww::divrem(gww::derivative(m), g).quot - gww::derivative(c);
  for (int i = 1; c.degree() > 0; ++i) {
    const PolyFS a = gww::make_monic(gww::gcd_poly(c, d));
    if (i % 2 == 1 && a.degree() > 0) return false;
    c = gww::divrem(c, a).quot;
    d = gww::divrem(d, a).quot - gww::derivative(c);
  }
  return true;
}

// Count sign changes of a diagonal rational form: the obvious signature.
inline int diag_signature(const std::vector<FieldScalar>& diag) {
  int s = 0;
  for (const auto& d : diag) s += d.sign() > 0 ? 1 : -1;
  return s;
}

inline FieldScalar rand_scalar(gww::Rng& rng, const FieldDescriptor& f,
                               long bound) {
  if (f.is_rationals())
    return FieldScalar::integer(f, rng.range(-bound, bound));
  return FieldScalar::integer(f, rng.range(0, static_cast<long>(f.p) - 1));
}

inline PolyFS rand_poly(gww::Rng& rng, const FieldDescriptor& f, int deg,
                        long bound, bool exact_degree = false) {
  std::vector<FieldScalar> c;
  for (int i = 0; i <= deg; ++i) c.push_back(rand_scalar(rng, f, bound));
  if (exact_degree) {
    while (c[static_cast<std::size_t>(deg)].is_zero())
      c[static_cast<std::size_t>(deg)] = rand_scalar(rng, f, bound);
  }
  return PolyFS{std::move(c)};
}

}  // namespace oracle
