#include "gwwel/gwforms.hpp"

#include <algorithm>
#include <set>

namespace gww {

QuadForm QuadForm::from_gram(const FieldDescriptor& f,
                             std::vector<std::vector<FieldScalar>> g) {
  const std::size_t n = g.size();
  for (const auto& row : g)
    require(row.size() == n, errc::bad_argument, "gram matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(g[i][j] == g[j][i], errc::bad_argument, "gram matrix not symmetric");
  QuadForm q;
  q.field = f;
  for (auto& row : g)
    for (auto& v : row) q.field = merge_fields(q.field, v.field());
  q.gram = std::move(g);
  return q;
}

QuadForm QuadForm::diagonal(const FieldDescriptor& f,
                            std::vector<FieldScalar> entries) {
  const std::size_t n = entries.size();
  std::vector<std::vector<FieldScalar>> g(
      n, std::vector<FieldScalar>(n, FieldScalar::zero(f)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = std::move(entries[i]);
  return from_gram(f, std::move(g));
}

std::vector<FieldScalar> diagonalize(const QuadForm& q) {
  require(q.field.kind == FieldKind::Rationals || q.field.is_finite() ||
              q.gram.empty(),
          errc::unsupported_field, "diagonalization needs a known field");
  auto m = q.gram;
  const std::size_t n = m.size();
  const FieldScalar zero = FieldScalar::zero(q.field);
  auto at = [&](std::size_t i, std::size_t j) -> FieldScalar& { return m[i][j]; };
  std::vector<FieldScalar> diag;
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i).is_zero()) {
      // prefer a later nonzero diagonal entry
      std::size_t sw = n;
      for (std::size_t j = i + 1; j < n; ++j)
        if (!at(j, j).is_zero()) {
          sw = j;
          break;
        }
      if (sw < n) {
        std::swap(m[i], m[sw]);
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][i], m[r][sw]);
      } else {
        // all remaining diagonal zero; pull in an off-diagonal entry
        std::size_t off = n;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!at(i, j).is_zero()) {
            off = j;
            break;
          }
        if (off == n) {
          diag.push_back(zero);  // row i orthogonal to everything left
          continue;
        }
        // e_i <- e_i + e_off doubles the off-diagonal into the diagonal
        for (std::size_t r = 0; r < n; ++r) m[i][r] = m[i][r] + m[off][r];
        for (std::size_t r = 0; r < n; ++r) m[r][i] = m[r][i] + m[r][off];
      }
    }
    const FieldScalar piv = at(i, i);
    if (piv.is_zero()) {
      diag.push_back(zero);
      continue;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (at(r, i).is_zero()) continue;
      const FieldScalar t = at(r, i) / piv;
      for (std::size_t cidx = 0; cidx < n; ++cidx)
        m[r][cidx] = m[r][cidx] - t * m[i][cidx];
      for (std::size_t ridx = 0; ridx < n; ++ridx)
        m[ridx][r] = m[ridx][r] - t * m[ridx][i];
    }
    diag.push_back(piv);
  }
  return diag;
}

QuadForm orth_sum(const QuadForm& a, const QuadForm& b) {
  const FieldDescriptor f = merge_fields(a.field, b.field);
  const int n = a.dim(), m = b.dim();
  std::vector<std::vector<FieldScalar>> g(
      n + m, std::vector<FieldScalar>(n + m, FieldScalar::zero(f)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = a.gram[i][j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g[n + i][n + j] = b.gram[i][j];
  return QuadForm::from_gram(f, std::move(g));
}

QuadForm tensor(const QuadForm& a, const QuadForm& b) {
  const FieldDescriptor f = merge_fields(a.field, b.field);
  const int n = a.dim(), m = b.dim();
  std::vector<std::vector<FieldScalar>> g(
      n * m, std::vector<FieldScalar>(n * m, FieldScalar::zero(f)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          g[i * m + k][j * m + l] = a.gram[i][j] * b.gram[k][l];
  return QuadForm::from_gram(f, std::move(g));
}

QuadForm transfer_trace(const AlgebraElement& e) {
  return QuadForm::from_gram(e.algebra().field(), trace_form_gram(e));
}

namespace {

// cached local data of one diagonal entry at one finite place
struct LocalUnit {
  long alpha = 0;  // valuation
  int leg = 1;     // odd p: Legendre of the unit part
  int eps = 0;     // p = 2
  int omega = 0;   // p = 2
};

LocalUnit local_at(const mpq_class& a, const mpz_class& p) {
  LocalUnit out;
  mpz_class un, ud;
  out.alpha = static_cast<long>(
      mpz_remove(un.get_mpz_t(), a.get_num().get_mpz_t(), p.get_mpz_t()));
  out.alpha -= static_cast<long>(
      mpz_remove(ud.get_mpz_t(), a.get_den().get_mpz_t(), p.get_mpz_t()));
  if (p == 2) {
    out.eps = (eps4(un) + eps4(ud)) % 2;
    out.omega = (omega8(un) + omega8(ud)) % 2;
  } else {
    mpz_class di;
    require(mpz_invert(di.get_mpz_t(), ud.get_mpz_t(), p.get_mpz_t()) != 0,
            errc::internal, "unit part not invertible");
    mpz_class u = un * di % p;
    if (u < 0) u += p;
    out.leg = legendre_symbol(u, p);
  }
  return out;
}

}  // namespace

int hasse_at(const std::vector<FieldScalar>& diag, const QPlace& v) {
  const std::size_t n = diag.size();
  for (const auto& d : diag) {
    require(d.field().is_rationals(), errc::unsupported_field,
            "hasse symbols are for rational forms");
    require(!d.is_zero(), errc::zero_element, "degenerate diagonal entry");
  }
  if (v.infinite) {
    long neg = 0;
    for (const auto& d : diag)
      if (d.sign() < 0) ++neg;
    return (neg * (neg - 1) / 2) % 2 ? -1 : 1;
  }
  std::vector<LocalUnit> loc;
  loc.reserve(n);
  for (const auto& d : diag) loc.push_back(local_at(d.rat(), v.p));
  int expo = 0;
  const bool two = v.p == 2;
  int sign_flips = 0;  // multiplicative accumulation of Legendre powers
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& x = loc[i];
      const auto& y = loc[j];
      if (two) {
        expo += x.eps * y.eps + (x.alpha % 2) * y.omega + (y.alpha % 2) * x.omega;
      } else {
        // (-1)^{alpha beta (p-1)/2} * leg_i^{beta} * leg_j^{alpha}
        if ((x.alpha % 2) && (y.alpha % 2) &&
            mpz_fdiv_ui(v.p.get_mpz_t(), 4) == 3)
          ++expo;
        if ((y.alpha % 2) && x.leg < 0) ++sign_flips;
        if ((x.alpha % 2) && y.leg < 0) ++sign_flips;
      }
    }
  return ((expo + sign_flips) % 2) ? -1 : 1;
}

namespace {

// places worth checking plus whether the entry list is fully factored
struct PlaceScan {
  std::set<mpz_class> primes;
  bool complete = true;
};

PlaceScan scan_places(const std::vector<FieldScalar>& diag) {
  PlaceScan out;
  out.primes.insert(2);
  for (const auto& d : diag) {
    for (const mpz_class& part :
         {mpz_class(d.rat().get_num()), mpz_class(d.rat().get_den())}) {
      Factorization f = factor_with_budget(part);
      if (!f.complete()) out.complete = false;
      for (const auto& [p, e] : f.primes)
        if (e % 2) out.primes.insert(p);
    }
  }
  return out;
}

}  // namespace

GWInvariants gw_invariants(const QuadForm& q) {
  GWInvariants out;
  out.diag = diagonalize(q);
  out.rank = static_cast<long>(out.diag.size());
  for (const auto& d : out.diag)
    require(!d.is_zero(), errc::zero_element, "degenerate quadratic form");
  if (out.rank == 0) {
    out.complete = true;
    if (q.field.kind != FieldKind::Null) out.disc = FieldScalar::one(q.field);
    return out;
  }
  out.disc = FieldScalar::one(q.field);
  for (const auto& d : out.diag) out.disc = out.disc * d;
  out.disc = square_class_strip(out.disc);
  if (q.field.is_finite()) {
    out.complete = true;
    return out;
  }
  for (const auto& d : out.diag) out.signature += d.sign();
  PlaceScan scan = scan_places(out.diag);
  out.complete = scan.complete;
  if (hasse_at(out.diag, QPlace::infinity()) < 0)
    out.hasse.emplace_back(QPlace::infinity(), -1);
  for (const mpz_class& p : scan.primes) {
    QPlace v = QPlace::finite(p);
    if (hasse_at(out.diag, v) < 0) out.hasse.emplace_back(v, -1);
  }
  return out;
}

EquivalenceResult equivalent(const GWInvariants& a, const GWInvariants& b) {
  EquivalenceResult out;
  if (a.rank != b.rank) {
    out.equal = false;
    out.certified = true;
    out.witness = "rank";
    return out;
  }
  if (a.rank == 0) {
    out.equal = true;
    out.certified = true;
    return out;
  }
  const FieldDescriptor fa = a.disc.field(), fb = b.disc.field();
  require(fa.kind == fb.kind && fa.p == fb.p, errc::field_mismatch,
          "comparing forms over different fields");
  if (fa.is_finite()) {
    out.certified = true;
    out.equal = same_square_class(a.disc, b.disc);
    if (!out.equal) out.witness = "discriminant";
    return out;
  }
  if (a.signature != b.signature) {
    out.equal = false;
    out.certified = true;
    out.witness = "signature";
    return out;
  }
  if (!same_square_class(a.disc, b.disc)) {
    out.equal = false;
    out.certified = true;
    out.witness = "discriminant";
    return out;
  }
  // union of both candidate place sets; symbols exact at each place
  PlaceScan sa = scan_places(a.diag), sb = scan_places(b.diag);
  std::set<mpz_class> ps = sa.primes;
  ps.insert(sb.primes.begin(), sb.primes.end());
  for (const auto& p : ps) {
    QPlace v = QPlace::finite(p);
    if (hasse_at(a.diag, v) != hasse_at(b.diag, v)) {
      out.equal = false;
      out.certified = true;
      out.witness = "hasse at " + v.str();
      return out;
    }
  }
  out.equal = true;
  out.certified = sa.complete && sb.complete;
  return out;
}

bool witt_trivial(const QuadForm& q) {
  GWInvariants inv = gw_invariants(q);
  if (inv.rank % 2) return false;
  if (inv.rank == 0) return true;
  // compare against the split form of the same rank
  std::vector<FieldScalar> hyp;
  const FieldScalar one = FieldScalar::one(q.field);
  for (long i = 0; i < inv.rank / 2; ++i) {
    hyp.push_back(one);
    hyp.push_back(-one);
  }
  GWInvariants hinv = gw_invariants(QuadForm::diagonal(q.field, hyp));
  EquivalenceResult eq = equivalent(inv, hinv);
  if (!eq.equal) return false;
  require(eq.certified, errc::factorization_limit,
          "cannot certify Witt triviality within the factoring budget");
  return true;
}

// ----- function field forms -----------------------------------------------------

FunctionFieldForm diagonalize_ff(
    const FieldDescriptor& f,
    const std::vector<std::vector<RationalFunction>>& gram) {
  const std::size_t n = gram.size();
  for (const auto& row : gram)
    require(row.size() == n, errc::bad_argument, "gram matrix not square");
  auto m = gram;
  FunctionFieldForm out;
  out.field = f;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i].is_zero()) {
      std::size_t sw = n;
      for (std::size_t j = i + 1; j < n; ++j)
        if (!m[j][j].is_zero()) {
          sw = j;
          break;
        }
      if (sw < n) {
        std::swap(m[i], m[sw]);
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][i], m[r][sw]);
      } else {
        std::size_t off = n;
        for (std::size_t j = i + 1; j < n; ++j)
          if (!m[i][j].is_zero()) {
            off = j;
            break;
          }
        if (off == n) {
          out.diag.push_back(RationalFunction{});
          continue;
        }
        for (std::size_t r = 0; r < n; ++r) m[i][r] = m[i][r] + m[off][r];
        for (std::size_t r = 0; r < n; ++r) m[r][i] = m[r][i] + m[r][off];
      }
    }
    const RationalFunction piv = m[i][i];
    if (piv.is_zero()) {
      out.diag.push_back(piv);
      continue;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (m[r][i].is_zero()) continue;
      const RationalFunction t = m[r][i] / piv;
      for (std::size_t c = 0; c < n; ++c) m[r][c] = m[r][c] - t * m[i][c];
      for (std::size_t c = 0; c < n; ++c) m[c][r] = m[c][r] - t * m[c][i];
    }
    out.diag.push_back(piv);
  }
  return out;
}

std::vector<FieldScalar> second_residue(const FunctionFieldForm& form,
                                        const FunctionPlace& place) {
  std::vector<FieldScalar> out;
  for (const auto& e : form.diag) {
    require(!e.is_zero(), errc::zero_element,
            "degenerate entry in function-field form");
    PlaceValue pv = place_value(e, place);
    if (pv.val % 2) out.push_back(pv.unit);
  }
  return out;
}

bool is_unramified(const FunctionFieldForm& form, const FunctionPlace& place) {
  std::vector<FieldScalar> res = second_residue(form, place);
  if (res.empty()) return true;
  return witt_trivial(QuadForm::diagonal(form.field, res));
}

CuspFamilyForms cusp_family_forms(const PolyFS& U1, const PolyFS& V1,
                                  const PolyFS& P, const PolyFS& v) {
  require(!U1.is_zero() && !v.is_zero(), errc::unit_condition_violated,
          "family parameters must be units");
  const FieldScalar u0 = U1.coeff(0), v0 = v.coeff(0);
  require(!u0.is_zero() && !v0.is_zero(), errc::unit_condition_violated,
          "family parameters must be units at the center");
  const FieldDescriptor f = merge_fields(U1.lc().field(), v.lc().field());
  const FieldScalar one = FieldScalar::one(f);
  const FieldScalar two = FieldScalar::integer(f, 2);
  PolyFS s = PolyFS::variable(one);

  auto rf = [](const PolyFS& p) { return RationalFunction::poly(p); };
  PolyFS a_poly = scale(V1 * v, two) - U1 * P;          // 2 V1 v - U1 P
  PolyFS b_poly = v * (scale(U1, two) - s * V1 * P);    // v (2 U1 - s V1 P)
  CuspFamilyForms out;
  out.raw[0][0] = rf(s * a_poly);
  out.raw[0][1] = rf(s * b_poly);
  out.raw[1][0] = out.raw[0][1];
  out.raw[1][1] = rf(s * s * v * a_poly);
  out.reduced[0][0] = out.raw[0][0];
  out.reduced[0][1] = rf(b_poly);
  out.reduced[1][0] = out.reduced[0][1];
  out.reduced[1][1] = rf(v * a_poly);
  return out;
}

}  // namespace gww
