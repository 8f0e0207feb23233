#include "gwwel/enumerate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gwwel/errors.hpp"
#include "gwwel/etale.hpp"
#include "gwwel/rng.hpp"
#include "gwwel/zmod.hpp"

namespace gww {

// ----- configurations -------------------------------------------------------

int PointConfiguration::total_degree() const {
  int n = 0;
  for (const auto& p : points) n += p.degree();
  return n;
}

std::vector<int> PointConfiguration::extension_type() const {
  std::vector<int> t;
  t.reserve(points.size());
  for (const auto& p : points) t.push_back(p.degree());
  std::sort(t.begin(), t.end(), std::greater<int>());
  return t;
}

std::string PointConfiguration::type_str() const {
  auto t = extension_type();
  std::sort(t.begin(), t.end());
  std::string out;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(j - i) + "x" + std::to_string(t[i]);
    i = j;
  }
  return out;
}

ConfigPoint projective_point(const FieldScalar& x, const FieldScalar& y,
                             const FieldScalar& z) {
  FieldDescriptor f = merge_fields(merge_fields(x.field(), y.field()), z.field());
  require(f.kind != FieldKind::Null, errc::bad_argument,
          "a rational point needs at least one nonzero coordinate");
  ConfigPoint p;
  p.modulus = PolyFS{{FieldScalar::zero(f), FieldScalar::one(f)}};
  p.x = PolyFS::constant(x);
  p.y = PolyFS::constant(y);
  p.z = PolyFS::constant(z);
  return p;
}

ConfigPoint affine_point(const FieldScalar& x, const FieldScalar& y) {
  FieldDescriptor f = merge_fields(x.field(), y.field());
  require(f.kind != FieldKind::Null, errc::bad_argument,
          "an affine point needs coordinates with a field");
  return projective_point(x, y, FieldScalar::one(f));
}

ConfigPoint orbit_point(const PolyFS& g, const PolyFS& x, const PolyFS& y,
                        const PolyFS& z) {
  require(!g.is_zero() && g.degree() >= 1, errc::bad_argument,
          "an orbit modulus must be nonconstant");
  ConfigPoint p;
  p.modulus = make_monic(g);
  p.x = poly_mod(x, p.modulus);
  p.y = poly_mod(y, p.modulus);
  p.z = poly_mod(z, p.modulus);
  return p;
}

ConfigPoint orbit_point(const PolyFS& g, const PolyFS& x, const PolyFS& y) {
  require(!g.is_zero(), errc::bad_argument, "an orbit modulus must be nonzero");
  const FieldDescriptor f = g.lc().field();
  return orbit_point(g, x, y, PolyFS::constant(FieldScalar::one(f)));
}

void validate_config(const PointConfiguration& cfg) {
  require(cfg.field.kind != FieldKind::Null, errc::bad_argument,
          "a configuration needs a base field");
  require(!cfg.points.empty(), errc::bad_argument, "empty configuration");
  for (const auto& p : cfg.points) {
    require(!p.modulus.is_zero() && p.modulus.degree() >= 1 &&
                p.modulus.degree() <= 3,
            errc::bad_argument, "orbit degree must be 1, 2, or 3");
    require(p.modulus.lc().is_one(), errc::bad_argument,
            "orbit moduli must be monic");
    require(is_squarefree(p.modulus), errc::bad_argument,
            "orbit moduli must be squarefree");
    require(!(p.x.is_zero() && p.y.is_zero() && p.z.is_zero()),
            errc::bad_argument, "a point needs a nonzero coordinate triple");
    for (const PolyFS* q : {&p.modulus, &p.x, &p.y, &p.z})
      for (const auto& v : q->c)
        require(v.is_zero() || fields_compatible(v.field(), cfg.field),
                errc::field_mismatch,
                "point coordinates disagree with the configuration field");
  }
}

PointConfiguration transform_config(
    const PointConfiguration& cfg,
    const std::array<std::array<FieldScalar, 3>, 3>& m) {
  require(!det3(m).is_zero(), errc::bad_argument,
          "a coordinate change must be invertible");
  PointConfiguration out;
  out.field = cfg.field;
  out.points.reserve(cfg.points.size());
  for (const auto& p : cfg.points) {
    ConfigPoint q;
    q.modulus = p.modulus;
    const PolyFS* in[3] = {&p.x, &p.y, &p.z};
    PolyFS col[3];
    for (int r = 0; r < 3; ++r) {
      PolyFS acc;
      for (int c = 0; c < 3; ++c) acc = acc + scale(*in[c], m[r][c]);
      col[r] = poly_mod(acc, p.modulus);
    }
    q.x = std::move(col[0]);
    q.y = std::move(col[1]);
    q.z = std::move(col[2]);
    out.points.push_back(std::move(q));
  }
  return out;
}

// ----- random configurations -------------------------------------------------

namespace {

struct TypeSpec {
  int count = 0, deg = 0;
};

std::vector<TypeSpec> parse_type(const std::string& s) {
  std::vector<TypeSpec> out;
  const auto bad = [] {
    fail(errc::parse_error, "extension type must look like \"6x1,1x2\"");
  };
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    const std::string tok = s.substr(i, j - i);
    const std::size_t x = tok.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= tok.size()) bad();
    int count = 0, deg = 0;
    try {
      std::size_t used = 0;
      count = std::stoi(tok.substr(0, x), &used);
      if (used != x) bad();
      deg = std::stoi(tok.substr(x + 1), &used);
      if (used != tok.size() - x - 1) bad();
    } catch (const gw_error&) {
      throw;
    } catch (const std::exception&) {
      bad();
    }
    require(count >= 1, errc::parse_error, "orbit counts must be positive");
    require(deg >= 1 && deg <= 3, errc::bad_argument,
            "orbit degree must be 1, 2, or 3");
    out.push_back({count, deg});
    if (j == s.size()) break;
    i = j + 1;
  }
  require(!out.empty(), errc::parse_error, "empty extension type");
  return out;
}

FieldScalar rand_scalar(const FieldDescriptor& f, Rng& rng, long bound) {
  if (f.is_rationals()) return FieldScalar::integer(f, rng.range(-bound, bound));
  return FieldScalar::fp(
      f, static_cast<std::uint64_t>(rng.range(0, static_cast<long long>(f.p) - 1)));
}

PolyFS rand_rep(const FieldDescriptor& f, Rng& rng, long bound, int deg) {
  std::vector<FieldScalar> c(static_cast<std::size_t>(deg));
  for (auto& v : c) v = rand_scalar(f, rng, bound);
  return PolyFS{std::move(c)};
}

// degree-2 orbit modulus: over Q always t^2 + 1, so every generated pair lives
// in the same quadratic field (the invariance theorem compares configurations
// with identical residue fields, and disc of the count tracks the field);
// over F_p, t^2 - a with a a nonresidue
PolyFS quadratic_modulus(const FieldDescriptor& f, Rng& rng, long bound) {
  const FieldScalar one = FieldScalar::one(f);
  if (f.is_rationals())
    return PolyFS{{one, FieldScalar::zero(f), one}};
  for (int i = 0; i < 256; ++i) {
    const FieldScalar a = rand_scalar(f, rng, bound);
    if (a.is_zero() || legendre_symbol(a) != -1) continue;
    return PolyFS{{-a, FieldScalar::zero(f), one}};
  }
  fail(errc::internal, "no quadratic nonresidue found");
}

// degree-3 orbit modulus: over Q always t^3 - t - 1 (discriminant -23, one
// real root), for the same fixed-residue-field reason as above; over F_p a
// random squarefree cubic
PolyFS cubic_modulus(const FieldDescriptor& f, Rng& rng, long bound) {
  if (f.is_rationals()) {
    const FieldScalar one = FieldScalar::one(f);
    return PolyFS{{-one, -one, FieldScalar::zero(f), one}};
  }
  for (int i = 0; i < 512; ++i) {
    std::vector<FieldScalar> c(4, FieldScalar::one(f));
    for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)] = rand_scalar(f, rng, bound);
    PolyFS g{std::move(c)};
    if (!is_squarefree(g)) continue;
    return g;
  }
  fail(errc::internal, "no usable cubic modulus found");
}

std::vector<std::array<int, 3>> monomials_of_degree(int degree) {
  std::vector<std::array<int, 3>> mons;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b) mons.push_back({a, b, degree - a - b});
  return mons;
}

// value of each monomial at the point, as an element of F[t]/(modulus)
std::vector<PolyFS> monomial_values(const ConfigPoint& p,
                                    const std::vector<std::array<int, 3>>& mons,
                                    int degree) {
  std::vector<PolyFS> px(static_cast<std::size_t>(degree) + 1), py(px.size()),
      pz(px.size());
  px[0] = py[0] = pz[0] = PolyFS::constant(p.modulus.lc().one_like());
  for (int i = 1; i <= degree; ++i) {
    px[static_cast<std::size_t>(i)] =
        poly_mod(px[static_cast<std::size_t>(i - 1)] * p.x, p.modulus);
    py[static_cast<std::size_t>(i)] =
        poly_mod(py[static_cast<std::size_t>(i - 1)] * p.y, p.modulus);
    pz[static_cast<std::size_t>(i)] =
        poly_mod(pz[static_cast<std::size_t>(i - 1)] * p.z, p.modulus);
  }
  std::vector<PolyFS> vals(mons.size());
  for (std::size_t col = 0; col < mons.size(); ++col)
    vals[col] = poly_mod(
        poly_mod(px[static_cast<std::size_t>(mons[col][0])] *
                     py[static_cast<std::size_t>(mons[col][1])],
                 p.modulus) *
            pz[static_cast<std::size_t>(mons[col][2])],
        p.modulus);
  return vals;
}

// the deg(modulus) linear conditions a form must satisfy to vanish on every
// conjugate of the point
std::vector<std::vector<FieldScalar>> condition_block(
    const ConfigPoint& p, const std::vector<std::array<int, 3>>& mons,
    int degree, const FieldDescriptor& f) {
  const auto vals = monomial_values(p, mons, degree);
  const int k = p.degree();
  std::vector<std::vector<FieldScalar>> block(
      static_cast<std::size_t>(k),
      std::vector<FieldScalar>(mons.size(), FieldScalar::zero(f)));
  for (std::size_t col = 0; col < mons.size(); ++col)
    for (int r = 0; r < k; ++r)
      block[static_cast<std::size_t>(r)][col] = vals[col].coeff(static_cast<std::size_t>(r));
  return block;
}

// Does a form of the given degree pass through the chosen conjugates? Full
// orbits contribute rational condition rows; a partial choice contributes one
// symbolic conjugate (or a pair of distinct conjugates of the same orbit).
// Entries live in F[t1][t2]; t2 is eliminated by a resultant, t1 by a gcd with
// its modulus, so the test is exact conjugate by conjugate.
bool picks_degenerate(const FieldDescriptor& f, int formdeg,
                      const std::vector<std::array<int, 3>>& mons,
                      const std::vector<const ConfigPoint*>& fulls,
                      const std::vector<std::pair<const ConfigPoint*, int>>& partials) {
  using Outer = Poly<PolyFS>;
  const std::size_t m = mons.size();
  auto outer_const = [](const PolyFS& v) {
    Outer o;
    if (!v.is_zero()) o.c = {v};
    return o;
  };
  std::vector<std::vector<Outer>> mat;
  for (const ConfigPoint* p : fulls)
    for (auto& row : condition_block(*p, mons, formdeg, f)) {
      std::vector<Outer> r(m);
      for (std::size_t j = 0; j < m; ++j) r[j] = outer_const(PolyFS::constant(row[j]));
      mat.push_back(std::move(r));
    }
  int vars = 0;
  PolyFS g1;
  Outer mod2;
  for (const auto& [p, copies] : partials) {
    const auto vals = monomial_values(*p, mons, formdeg);
    if (vars == 0) {
      g1 = make_monic(p->modulus);
      std::vector<Outer> r(m);
      for (std::size_t j = 0; j < m; ++j) r[j] = outer_const(vals[j]);
      mat.push_back(std::move(r));
      vars = 1;
      if (copies == 2) {
        // second distinct conjugate of the same orbit: its modulus over
        // F[t1]/(g1) is (g1(t2) - g1(t1)) / (t2 - t1)
        Outer gt2;
        gt2.c.resize(g1.c.size());
        for (std::size_t i = 0; i < g1.c.size(); ++i)
          gt2.c[i] = PolyFS::constant(g1.c[i]);
        gt2.normalize();
        Outer num = gt2 - outer_const(g1);
        Outer lin;
        lin.c = {-PolyFS{{FieldScalar::zero(f), FieldScalar::one(f)}},
                 PolyFS::constant(FieldScalar::one(f))};
        mod2 = divexact(num, lin);
        std::vector<Outer> row2(m);
        for (std::size_t j = 0; j < m; ++j) {
          Outer o;
          o.c.resize(vals[j].c.size());
          for (std::size_t i = 0; i < vals[j].c.size(); ++i)
            o.c[i] = PolyFS::constant(vals[j].c[i]);
          o.normalize();
          row2[j] = std::move(o);
        }
        mat.push_back(std::move(row2));
        vars = 2;
      }
    } else {
      mod2.c.clear();
      const PolyFS gb = make_monic(p->modulus);
      mod2.c.resize(gb.c.size());
      for (std::size_t i = 0; i < gb.c.size(); ++i) mod2.c[i] = PolyFS::constant(gb.c[i]);
      mod2.normalize();
      std::vector<Outer> row2(m);
      for (std::size_t j = 0; j < m; ++j) {
        Outer o;
        o.c.resize(vals[j].c.size());
        for (std::size_t i = 0; i < vals[j].c.size(); ++i)
          o.c[i] = PolyFS::constant(vals[j].c[i]);
        o.normalize();
        row2[j] = std::move(o);
      }
      mat.push_back(std::move(row2));
      vars = 2;
    }
  }
  require(mat.size() == m, errc::internal, "degeneracy test matrix is not square");
  Outer D = bareiss_det(std::move(mat));
  if (D.is_zero()) return true;
  if (vars == 0) return false;
  if (vars == 2) {
    D = map_coeffs(D, [&](const PolyFS& v) { return poly_mod(v, g1); });
    if (D.is_zero()) return true;
    const PolyFS E = sylvester_resultant_ring(mod2, D);
    D = outer_const(E);
  }
  const PolyFS r = poly_mod(D.c.empty() ? PolyFS{} : D.c[0], g1);
  if (r.is_zero()) return true;
  return gcd_poly(g1, r).degree() > 0;
}

// true when some 3 geometric points of the configuration are collinear, or
// (when conics are checked too) some 6 lie on a common conic; these are
// exactly the walls where the cubic pencil picks up a reducible member
bool config_degenerate(const PointConfiguration& cfg, int max_form_degree) {
  const FieldDescriptor& f = cfg.field;
  const std::size_t n = cfg.points.size();
  for (int formdeg = 1; formdeg <= max_form_degree; ++formdeg) {
    const auto mons = monomials_of_degree(formdeg);
    const int want = static_cast<int>(mons.size());
    std::vector<int> pick(n, 0);
    std::function<bool(std::size_t, int)> walk = [&](std::size_t i, int left) -> bool {
      if (left == 0) {
        std::vector<const ConfigPoint*> fulls;
        std::vector<std::pair<const ConfigPoint*, int>> partials;
        int symbolic = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (pick[k] == 0) continue;
          const int d = cfg.points[k].degree();
          if (pick[k] == d) {
            fulls.push_back(&cfg.points[k]);
          } else {
            partials.push_back({&cfg.points[k], pick[k]});
            symbolic += pick[k];
          }
        }
        if (symbolic > 2) return false;  // beyond the supported tower; the
                                         // node-degree gate still backstops
        return picks_degenerate(f, formdeg, mons, fulls, partials);
      }
      if (i == n) return false;
      const int d = cfg.points[i].degree();
      for (int take = std::min(d, left); take >= 0; --take) {
        pick[i] = take;
        if (walk(i + 1, left - take)) return true;
      }
      pick[i] = 0;
      return false;
    };
    if (walk(0, want)) return true;
  }
  return false;
}

// A member of the pencil singular at a base point doubles the corresponding
// discriminant root, so the twelve singular members are no longer distinct.
// Gradients of the two generators parallel at a base point is the exact test.
enum class WallState { clean, wall, unclear };

// reduce a projective orbit point to affine representatives mod its modulus
std::optional<std::pair<PolyFS, PolyFS>> affine_reps(const ConfigPoint& p) {
  const PolyFS g = make_monic(p.modulus);
  const PolyFS z = poly_mod(p.z, g);
  if (z.is_zero()) return std::nullopt;
  const auto xg = xgcd_poly(z, g);
  if (xg.g.degree() != 0) return std::nullopt;  // a conjugate lies at infinity
  const PolyFS zinv = poly_mod(
      xg.u * PolyFS::constant(FieldScalar::one(z.lc().field()) / xg.g.coeff(0)), g);
  return std::make_pair(poly_mod(p.x * zinv, g), poly_mod(p.y * zinv, g));
}

WallState pencil_wall(const PointConfiguration& cfg,
                      const std::vector<TernaryForm>& basis) {
  if (basis.size() != 2) return WallState::unclear;
  const FieldDescriptor& f = cfg.field;
  std::array<Bivar, 3> d0, d1;
  for (int i = 0; i < 3; ++i) {
    d0[static_cast<std::size_t>(i)] = basis[0].partial(i).dehomogenize(2);
    d1[static_cast<std::size_t>(i)] = basis[1].partial(i).dehomogenize(2);
  }
  const auto parallel_at = [&](const PolyFS& xv, const PolyFS& yv,
                               const PolyFS& g) {
    std::array<PolyFS, 3> a, b;
    for (std::size_t i = 0; i < 3; ++i) {
      a[i] = bivar_eval_mod(d0[i], xv, yv, g);
      b[i] = bivar_eval_mod(d1[i], xv, yv, g);
    }
    PolyFS h = g;
    for (int i = 0; i < 3 && h.degree() > 0; ++i)
      for (int j = i + 1; j < 3 && h.degree() > 0; ++j) {
        const PolyFS m = poly_mod(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
                                      a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)],
                                  g);
        h = m.is_zero() ? h : gcd_poly(h, m);
      }
    return h.degree() > 0;
  };

  PolyFS norms = PolyFS::constant(FieldScalar::one(f));
  for (const auto& p : cfg.points) {
    const auto reps = affine_reps(p);
    if (!reps) return WallState::unclear;
    const PolyFS g = make_monic(p.modulus);
    if (parallel_at(reps->first, reps->second, g)) return WallState::wall;
    // norm of the x coordinate: the factor of the base-locus eliminant this
    // orbit accounts for
    Poly<PolyFS> gt, xt;
    gt.c.resize(g.c.size());
    for (std::size_t i = 0; i < g.c.size(); ++i) gt.c[i] = PolyFS::constant(g.c[i]);
    gt.normalize();
    xt.c.resize(std::max<std::size_t>(reps->first.c.size(), 1));
    for (std::size_t i = 0; i < xt.c.size(); ++i) {
      FieldScalar ci = i < reps->first.c.size() ? -reps->first.c[i] : FieldScalar::zero(f);
      xt.c[i] = PolyFS{{ci, i == 0 ? FieldScalar::one(f) : FieldScalar::zero(f)}};
    }
    xt.normalize();
    if (xt.is_zero()) return WallState::unclear;
    norms = norms * make_monic(sylvester_resultant_ring(gt, xt));
  }

  // the ninth base point of the pencil, by eliminating y and dividing out the
  // known points
  const Bivar b0 = basis[0].dehomogenize(2), b1 = basis[1].dehomogenize(2);
  if (b0.is_zero() || b1.is_zero()) return WallState::unclear;
  const PolyFS rx = sylvester_resultant_ring(b0, b1);
  if (rx.degree() != cfg.total_degree() + 1) return WallState::unclear;
  const auto dr = divrem(make_monic(rx), norms);
  if (!dr.rem.is_zero() || dr.quot.degree() != 1) return WallState::unclear;
  const FieldScalar x9 = -dr.quot.coeff(0);
  auto at_x = [&](const Bivar& b) {
    PolyFS r;
    r.c.reserve(b.c.size());
    for (const auto& cx : b.c) r.c.push_back(eval_poly(cx, x9));
    r.normalize();
    return r;
  };
  const PolyFS s0 = at_x(b0), s1 = at_x(b1);
  if (s0.is_zero() || s1.is_zero()) return WallState::unclear;
  const PolyFS k = gcd_poly(s0, s1);
  if (k.degree() != 1) return WallState::unclear;
  const FieldScalar y9 = -k.coeff(0);
  const PolyFS tmod{{FieldScalar::zero(f), FieldScalar::one(f)}};
  if (parallel_at(PolyFS::constant(x9), PolyFS::constant(y9), tmod))
    return WallState::wall;
  return WallState::clean;
}

}  // namespace

PointConfiguration generate_config(const FieldDescriptor& f,
                                   const std::string& type, std::uint64_t seed,
                                   long bound) {
  require(f.is_rationals() || f.kind == FieldKind::Prime, errc::unsupported_field,
          "configurations are generated over Q or a prime field");
  require(bound >= 1, errc::bad_argument, "coordinate bound must be positive");
  const auto spec = parse_type(type);
  int total = 0;
  for (const auto& t : spec) total += t.count * t.deg;
  require(total == 2 || total == 5 || total == 8, errc::bad_argument,
          "the extension type must impose 2, 5, or 8 conditions");
  const int degree = (total + 1) / 3;
  Rng rng(child_seed(seed, "config"));
  for (int attempt = 0; attempt < 256; ++attempt) {
    PointConfiguration cfg;
    cfg.field = f;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& t : spec) {
      for (int i = 0; i < t.count; ++i) {
        if (t.deg == 1) {
          for (int tries = 0; tries < 256; ++tries) {
            const FieldScalar x = rand_scalar(f, rng, bound);
            const FieldScalar y = rand_scalar(f, rng, bound);
            if (!seen.insert({x.str(), y.str()}).second) continue;
            cfg.points.push_back(affine_point(x, y));
            break;
          }
        } else {
          const PolyFS g = t.deg == 2 ? quadratic_modulus(f, rng, bound)
                                      : cubic_modulus(f, rng, bound);
          cfg.points.push_back(orbit_point(g, rand_rep(f, rng, bound, t.deg),
                                           rand_rep(f, rng, bound, t.deg)));
        }
      }
    }
    if (cfg.total_degree() != total) continue;  // exhausted a dedup loop
    if (config_degenerate(cfg, degree - 1)) continue;
    try {
      const auto basis = interpolate_curves(cfg, degree);
      if (degree == 3 && pencil_wall(cfg, basis) != WallState::clean) continue;
      return cfg;
    } catch (const gw_error& e) {
      if (e.code() != errc::not_generic) throw;
    }
  }
  fail(errc::not_generic, "random generation exhausted without a generic draw");
}

// ----- linear conditions ------------------------------------------------------

namespace {

// clear denominators and content over Q; keeps downstream eliminations small
TernaryForm integer_normalized(const TernaryForm& F) {
  if (!F.field().is_rationals() || F.is_zero()) return F;
  mpz_class g = 0, l = 1;
  for (const auto& [e, v] : F.terms()) {
    const mpq_class q = v.rat();
    g = gcd(g, q.get_num());
    l = lcm(l, q.get_den());
  }
  if (g == 0) return F;
  mpq_class s(l, g);
  s.canonicalize();
  if (F.terms().begin()->second.rat() * s < 0) s = -s;
  return F.scaled(FieldScalar::rational(s));
}

}  // namespace

std::vector<TernaryForm> interpolate_curves(const PointConfiguration& cfg,
                                            int degree) {
  validate_config(cfg);
  require(degree >= 1 && degree <= 6, errc::degree_cap_exceeded,
          "interpolation degree out of range");
  const FieldDescriptor& f = cfg.field;
  const auto mons = monomials_of_degree(degree);
  const std::size_t m = mons.size();

  std::vector<std::vector<FieldScalar>> rows;
  rows.reserve(static_cast<std::size_t>(cfg.total_degree()));
  for (const auto& p : cfg.points)
    for (auto& row : condition_block(p, mons, degree, f)) rows.push_back(std::move(row));

  // exact reduced row echelon form
  const std::size_t n = rows.size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < n; ++col) {
    std::size_t pr = r;
    while (pr < n && rows[pr][col].is_zero()) ++pr;
    if (pr == n) continue;
    std::swap(rows[pr], rows[r]);
    const FieldScalar inv = FieldScalar::one(f) / rows[r][col];
    for (std::size_t j = col; j < m; ++j) rows[r][j] = rows[r][j] * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const FieldScalar t = rows[i][col];
      for (std::size_t j = col; j < m; ++j)
        rows[i][j] = rows[i][j] - t * rows[r][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++r;
  }
  require(r == n, errc::not_generic, "the point conditions are linearly dependent");

  std::vector<char> is_pivot(m, 0);
  for (int pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = 1;
  std::vector<TernaryForm> out;
  for (std::size_t freec = 0; freec < m; ++freec) {
    if (is_pivot[freec]) continue;
    TernaryForm F(f);
    F.set(mons[freec][0], mons[freec][1], mons[freec][2], FieldScalar::one(f));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      const FieldScalar v = rows[i][freec];
      if (v.is_zero()) continue;
      const auto& e = mons[static_cast<std::size_t>(pivot_col[i])];
      F.set(e[0], e[1], e[2], -v);
    }
    out.push_back(integer_normalized(F));
  }
  return out;
}

// ----- the pencil ---------------------------------------------------------------

namespace {

using Tri = Poly<Poly<PolyFS>>;  // outer y, middle x, inner pencil parameter

// retryable elimination artifact; a different basis mix or a coordinate
// change usually repairs it
struct GateFailure {
  std::string why;
};

Tri pencil_poly(const Bivar& g0, const Bivar& g1, const FieldDescriptor& f) {
  Tri T;
  T.c.resize(std::max(g0.c.size(), g1.c.size()));
  for (std::size_t j = 0; j < T.c.size(); ++j) {
    const PolyFS a = j < g0.c.size() ? g0.c[j] : PolyFS{};
    const PolyFS b = j < g1.c.size() ? g1.c[j] : PolyFS{};
    Poly<PolyFS> row;
    row.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < row.c.size(); ++i) {
      std::vector<FieldScalar> inner{
          i < a.c.size() ? a.c[i] : FieldScalar::zero(f),
          i < b.c.size() ? b.c[i] : FieldScalar::zero(f)};
      row.c[i] = PolyFS{std::move(inner)};
    }
    row.normalize();
    T.c[j] = std::move(row);
  }
  T.normalize();
  return T;
}

Tri tri_dx(const Tri& t) {
  return map_coeffs(t, [](const Poly<PolyFS>& p) { return derivative(p); });
}

// Divide out the parameter content (gcd of the coefficients).  Content
// factors are elimination junk: they put whole components into the eliminant
// on which one equation vanishes identically, hiding the root structure.
Poly<PolyFS> content_stripped(const Poly<PolyFS>& a) {
  if (a.is_zero()) return a;
  PolyFS cont;
  for (const auto& v : a.c)
    if (!v.is_zero()) cont = cont.is_zero() ? make_monic(v) : gcd_poly(cont, v);
  if (cont.degree() < 1) return a;
  return map_coeffs(a, [&](const PolyFS& v) {
    return v.is_zero() ? v : divexact(v, cont);
  });
}

// integer bivariate image with one common denominator cleared per polynomial
ZXL to_zxl(const Poly<PolyFS>& a) {
  mpz_class den = 1;
  for (const auto& xc : a.c)
    for (const auto& v : xc.c)
      if (!v.is_zero()) den = lcm(den, v.rat().get_den());
  ZXL z;
  z.c.resize(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    z.c[i].resize(std::max<std::size_t>(a.c[i].c.size(), 1));
    for (std::size_t j = 0; j < a.c[i].c.size(); ++j) {
      if (a.c[i].c[j].is_zero()) continue;
      mpq_class q = a.c[i].c[j].rat() * mpq_class(den);
      q.canonicalize();
      require(q.get_den() == 1, errc::internal, "denominator clearing failed");
      z.c[i][j] = q.get_num();
    }
  }
  return z;
}

PolyFS tri_eval(const Tri& T, const PolyFS& xv, const PolyFS& yv,
                const ComponentContext& ctx) {
  PolyFS acc;
  for (auto it = T.c.rbegin(); it != T.c.rend(); ++it)
    acc = ctx.reduce(acc * yv + component_eval(*it, xv, ctx));
  return acc;
}

struct NodeLeaf {
  PolyFS x, y, e;
};

struct PencilOutcome {
  PolyFS disc;
  std::vector<NodeSummary> nodes;
};

// Elimination for one pencil presentation.  Soundness comes from the residual
// checks and the total-degree gate, not from the eliminant construction: a
// surviving component certifies a genuinely singular member with an invertible
// Hessian, and 12 surviving degrees account for every singular member.
PencilOutcome run_pencil(const TernaryForm& G0, const TernaryForm& G1,
                         std::uint64_t seed) {
  const FieldDescriptor f = G0.field();
  const Bivar g0 = G0.dehomogenize(2), g1 = G1.dehomogenize(2);
  Tri T = pencil_poly(g0, g1, f);
  if (T.degree() < 1) throw GateFailure{"the pencil degenerates in this chart"};
  const Tri Ty = derivative(T);
  const Tri Tx = tri_dx(T);
  if (Tx.is_zero() || Ty.is_zero())
    throw GateFailure{"the pencil has a vanishing gradient in this chart"};
  const Poly<PolyFS> A = content_stripped(sylvester_resultant_ring(Tx, Ty));
  const Poly<PolyFS> B1 = content_stripped(sylvester_resultant_ring(T, Tx));
  const Poly<PolyFS> B2 = content_stripped(sylvester_resultant_ring(T, Ty));
  if (A.is_zero() || (B1.is_zero() && B2.is_zero()))
    throw GateFailure{"degenerate elimination"};

  PolyFS W;
  if (f.is_rationals()) {
    try {
      W = eliminant_gcd_squarefree(to_zxl(A), to_zxl(B1), to_zxl(B2),
                                   child_seed(seed, "eliminant"));
    } catch (const gw_error& e) {
      if (e.code() == errc::not_generic) throw GateFailure{e.what()};
      throw;
    }
  } else {
    const PolyFS C1 = B1.is_zero() ? PolyFS{} : sylvester_resultant_ring(A, B1);
    const PolyFS C2 = B2.is_zero() ? PolyFS{} : sylvester_resultant_ring(A, B2);
    PolyFS g;
    if (C1.is_zero() && C2.is_zero())
      throw GateFailure{"both eliminants vanish"};
    else if (C1.is_zero())
      g = C2;
    else if (C2.is_zero())
      g = C1;
    else
      g = gcd_poly(C1, C2);
    if (g.degree() < 1) throw GateFailure{"empty discriminant"};
    W = squarefree_part(g);
  }
  // junk factors above 12 are eliminated by the residual checks below; a
  // shortfall cannot recover, so it fails the presentation immediately
  if (W.degree() < 12)
    throw GateFailure{"discriminant degree " + std::to_string(W.degree()) +
                      " (wanted 12): a singular member escapes this chart"};

  const Tri Txx = tri_dx(Tx), Txy = derivative(Tx), Tyy = derivative(Ty);
  // A component is spurious when an equation dies on it or the common root is
  // not unique; dropping one that was genuinely needed only costs degrees in
  // the final gate, never a wrong answer.
  const auto unique_root =
      [&f](const std::vector<Poly<PolyFS>>& eqs,
           const ComponentContext& ctx) -> std::optional<PolyFS> {
    for (const auto& e : eqs)
      if (e.is_zero()) return std::nullopt;
    try {
      return component_common_root(eqs, f, ctx);
    } catch (const SeparationFailure&) {
      return std::nullopt;
    }
  };
  auto leaves = for_each_component(
      W, [&](const ComponentContext& ctx) -> std::optional<NodeLeaf> {
        const auto xi = unique_root({component_reduce(A, ctx),
                                     component_reduce(B1, ctx),
                                     component_reduce(B2, ctx)},
                                    ctx);
        if (!xi) return std::nullopt;
        const auto at_x = [&](const Tri& F) {
          Poly<PolyFS> r;
          r.c.reserve(F.c.size());
          for (const auto& cy : F.c) r.c.push_back(component_eval(cy, *xi, ctx));
          r.normalize();
          return r;
        };
        const auto ups = unique_root({at_x(T), at_x(Tx), at_x(Ty)}, ctx);
        if (!ups) return std::nullopt;
        const PolyFS fxx = tri_eval(Txx, *xi, *ups, ctx);
        const PolyFS fxy = tri_eval(Txy, *xi, *ups, ctx);
        const PolyFS fyy = tri_eval(Tyy, *xi, *ups, ctx);
        const PolyFS e = ctx.reduce(fxx * fyy - fxy * fxy);
        require(ctx.invert(e).has_value(), errc::not_generic,
                "a member of the pencil has a worse-than-nodal singularity");
        return NodeLeaf{*xi, *ups, e};
      });

  PencilOutcome out;
  out.disc = W;
  int total = 0;
  for (auto& lf : leaves) {
    if (!lf.value) continue;
    total += lf.modulus.degree();
    out.nodes.push_back(
        NodeSummary{lf.modulus, lf.value->x, lf.value->y, lf.value->e});
  }
  if (total != 12)
    throw GateFailure{"node degrees sum to " + std::to_string(total) +
                      " (wanted 12)"};
  return out;
}

std::vector<std::string> matrix_rows(
    const std::array<std::array<FieldScalar, 3>, 3>& m) {
  std::vector<std::string> rows;
  for (const auto& row : m) {
    std::string s = "[";
    for (int c = 0; c < 3; ++c) s += (c ? ", " : "") + row[c].str();
    rows.push_back(s + "]");
  }
  return rows;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

// ----- the count ------------------------------------------------------------------

CountReport welschinger_number(const PointConfiguration& cfg, int degree,
                               std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  require(degree >= 1 && degree <= 3, errc::degree_cap_exceeded,
          "counts are implemented for degrees 1, 2, 3");
  validate_config(cfg);
  require(cfg.total_degree() == 3 * degree - 1, errc::bad_argument,
          "a degree-d count needs closed points of total degree 3d-1");
  const FieldDescriptor f = cfg.field;
  require(!config_degenerate(cfg, degree - 1), errc::not_generic,
          "the point configuration is degenerate: a curve of lower degree "
          "passes through too many of the points");
  if (degree == 3)
    require(pencil_wall(cfg, interpolate_curves(cfg, degree)) != WallState::wall,
            errc::not_generic,
            "a pencil member is singular at a base point of the pencil");
  CountReport rep;
  rep.degree = degree;
  rep.type = cfg.type_str();

  if (degree <= 2) {
    const auto basis = interpolate_curves(cfg, degree);
    require(basis.size() == 1, errc::internal, "unexpected kernel dimension");
    if (degree == 2) {
      const TernaryForm& F = basis[0];
      const FieldScalar two = FieldScalar::integer(f, 2);
      std::array<std::array<FieldScalar, 3>, 3> mq;
      mq[0][0] = two * F.get(2, 0, 0);
      mq[1][1] = two * F.get(0, 2, 0);
      mq[2][2] = two * F.get(0, 0, 2);
      mq[0][1] = mq[1][0] = F.get(1, 1, 0);
      mq[0][2] = mq[2][0] = F.get(1, 0, 1);
      mq[1][2] = mq[2][1] = F.get(0, 1, 1);
      require(!det3(mq).is_zero(), errc::not_generic,
              "the five points lie on a singular conic");
    }
    rep.wel = QuadForm::diagonal(f, {FieldScalar::one(f)});
    rep.invariants = gw_invariants(rep.wel);
    rep.diag.discriminant_degree = 0;
    rep.diag.seconds = seconds_since(t0);
    return rep;
  }

  std::string last_gate = "no presentation attempted";
  for (int change = 0; change < 3; ++change) {
    PointConfiguration work;
    std::array<std::array<FieldScalar, 3>, 3> M;
    if (change == 0) {
      work = cfg;
    } else {
      Rng rng(child_seed(seed, "coordchange", static_cast<std::uint64_t>(change)));
      bool ok = false;
      for (int tries = 0; tries < 64 && !ok; ++tries) {
        for (auto& row : M)
          for (auto& v : row) v = FieldScalar::integer(f, rng.range(-4, 4));
        ok = !det3(M).is_zero();
      }
      require(ok, errc::internal, "no invertible coordinate change drawn");
      work = transform_config(cfg, M);
    }
    std::vector<TernaryForm> basis;
    try {
      basis = interpolate_curves(work, 3);
    } catch (const gw_error& e) {
      if (change == 0) throw;
      last_gate = e.what();
      continue;
    }
    require(basis.size() == 2, errc::internal, "pencil basis has wrong dimension");
    for (int twist = 0; twist < 4; ++twist) {
      TernaryForm G0 = basis[0], G1 = basis[1];
      switch (twist) {
        case 1:
          std::swap(G0, G1);
          break;
        case 2:
          G0 = basis[0] + basis[1];
          G1 = basis[0] - basis[1];
          break;
        case 3:
          G0 = basis[0] + basis[1] + basis[1];
          G1 = basis[0] + basis[1];
          break;
        default:
          break;
      }
      try {
        PencilOutcome out = run_pencil(
            G0, G1,
            child_seed(seed, "pencil", static_cast<std::uint64_t>(change * 8 + twist)));
        rep.nodes = std::move(out.nodes);
        rep.diag.basis_twist = twist;
        rep.diag.coordinate_change = change;
        if (change) rep.diag.change_matrix = matrix_rows(M);
        rep.diag.discriminant_degree = out.disc.degree();
        QuadForm acc;
        bool first = true;
        for (const auto& ns : rep.nodes) {
          const EtaleAlgebra alg = EtaleAlgebra::make(ns.modulus);
          QuadForm q = transfer_trace(alg.element(ns.weight));
          acc = first ? std::move(q) : orth_sum(acc, q);
          first = false;
        }
        require(acc.dim() == 12, errc::internal, "transfer rank mismatch");
        rep.wel = std::move(acc);
        rep.invariants = gw_invariants(rep.wel);
        rep.diag.seconds = seconds_since(t0);
        return rep;
      } catch (const GateFailure& g) {
        last_gate = g.why;
      } catch (const SeparationFailure&) {
        last_gate = "coincident solutions inside one component";
      }
    }
  }
  fail(errc::not_generic, "no usable pencil presentation: " + last_gate);
}

// ----- numeric signature oracle ----------------------------------------------------

namespace {

using CLD = std::complex<long double>;

long double ld_of_mpz(const mpz_class& z) {
  if (z == 0) return 0.0L;
  mpz_class a = abs(z);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  int ex = 0;
  if (bits > 63) {
    ex = static_cast<int>(bits - 63);
    mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(ex));
  }
  const long double v =
      std::ldexp(static_cast<long double>(mpz_get_ui(a.get_mpz_t())), ex);
  return z < 0 ? -v : v;
}

long double ld_of_scalar(const FieldScalar& v) {
  const mpq_class q = v.rat();
  return ld_of_mpz(q.get_num()) / ld_of_mpz(q.get_den());
}

std::vector<long double> ld_coeffs(const PolyFS& p) {
  std::vector<long double> c;
  c.reserve(p.c.size());
  for (const auto& v : p.c) c.push_back(ld_of_scalar(v));
  return c;
}

long double horner_ld(const std::vector<long double>& c, long double x) {
  long double acc = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Aberth-Ehrlich iteration; returns nullopt unless every root passes a
// relative residual check afterwards
std::optional<std::vector<CLD>> aberth_roots(std::vector<long double> c) {
  const int k = static_cast<int>(c.size()) - 1;
  if (k <= 0) return std::vector<CLD>{};
  for (auto& v : c) v /= c.back();
  for (const auto& v : c)
    if (!std::isfinite(v)) return std::nullopt;
  long double radius = 0.0L;
  for (int i = 0; i < k; ++i)
    if (c[static_cast<std::size_t>(i)] != 0.0L)
      radius = std::max(radius, powl(fabsl(c[static_cast<std::size_t>(i)]),
                                     1.0L / static_cast<long double>(k - i)));
  radius = 1.0L + 2.0L * radius;
  const long double pi = 3.141592653589793238462643383279502884L;
  std::vector<CLD> z(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const long double th =
        2.0L * pi * static_cast<long double>(j) / static_cast<long double>(k) + 0.45L;
    const long double r =
        radius * (0.35L + 0.65L * static_cast<long double>(j + 1) /
                              static_cast<long double>(k));
    z[static_cast<std::size_t>(j)] = CLD(r * cosl(th), r * sinl(th));
  }
  for (int iter = 0; iter < 600; ++iter) {
    long double worst = 0.0L;
    for (int j = 0; j < k; ++j) {
      CLD p = 0.0L, dp = 0.0L;
      for (int i = k; i >= 0; --i) {
        dp = dp * z[static_cast<std::size_t>(j)] + p;
        p = p * z[static_cast<std::size_t>(j)] + c[static_cast<std::size_t>(i)];
      }
      if (std::abs(p) == 0.0L) continue;
      if (std::abs(dp) == 0.0L) {
        z[static_cast<std::size_t>(j)] += CLD(1e-3L, 1e-3L);
        worst = 1.0L;
        continue;
      }
      const CLD w = p / dp;
      CLD s = 0.0L;
      for (int l = 0; l < k; ++l) {
        if (l == j) continue;
        CLD d = z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(l)];
        if (std::abs(d) == 0.0L) d = CLD(1e-12L, 1e-12L);
        s += CLD(1.0L) / d;
      }
      CLD corr = w / (CLD(1.0L) - w * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = w;
      z[static_cast<std::size_t>(j)] -= corr;
      worst = std::max(worst,
                       std::abs(corr) / (1.0L + std::abs(z[static_cast<std::size_t>(j)])));
    }
    if (worst < 1e-19L) break;
  }
  for (int j = 0; j < k; ++j) {
    CLD p = 0.0L;
    long double scalebound = 0.0L;
    CLD xp = 1.0L;
    for (int i = 0; i <= k; ++i) {
      p = p + c[static_cast<std::size_t>(i)] * xp;
      scalebound += fabsl(c[static_cast<std::size_t>(i)]) * std::abs(xp);
      xp *= z[static_cast<std::size_t>(j)];
    }
    if (!(std::abs(p) <= 1e-12L * (scalebound + 1.0L))) return std::nullopt;
  }
  return z;
}

}  // namespace

OracleResult real_signature_oracle(const CountReport& rep) {
  OracleResult out;
  if (!rep.wel.field.is_rationals()) {
    out.reason = "the oracle needs the rational field";
    return out;
  }
  if (rep.degree <= 2) {
    out.conclusive = true;
    out.signature = 1;
    return out;
  }
  constexpr long double kSepTol = 1e-10L;     // min distance between parameters
  constexpr long double kWeightTol = 1e-10L;  // min |weight| to call a sign
  constexpr long double kImClear = 1e-6L;     // min |Im| of a complex parameter
  std::vector<CLD> all;
  long sum = 0;
  int realn = 0;
  for (const auto& ns : rep.nodes) {
    const auto roots = aberth_roots(ld_coeffs(ns.modulus));
    if (!roots) {
      out.reason = "root finding did not converge";
      return out;
    }
    const auto wc = ld_coeffs(ns.weight);
    for (const CLD& z : *roots) {
      all.push_back(z);
      const long double im = fabsl(z.imag());
      if (im < kSepTol) {
        const long double ev = horner_ld(wc, z.real());
        if (!std::isfinite(ev) || fabsl(ev) <= kWeightTol) {
          out.reason = "a node weight is too small to sign";
          return out;
        }
        sum += ev > 0.0L ? 1 : -1;
        ++realn;
      } else if (im < kImClear) {
        out.reason = "a parameter is neither clearly real nor clearly complex";
        return out;
      }
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(all[i] - all[j]) < kSepTol) {
        out.reason = "parameters too close to separate";
        return out;
      }
  out.conclusive = true;
  out.signature = static_cast<int>(sum);
  out.real_nodes = realn;
  return out;
}

// ----- moves and recursion -----------------------------------------------------------

MoveReport move_test(const PointConfiguration& a, const PointConfiguration& b,
                     int degree, std::uint64_t seed) {
  MoveReport r;
  r.a = welschinger_number(a, degree, child_seed(seed, "move", 0));
  r.b = welschinger_number(b, degree, child_seed(seed, "move", 1));
  r.same_type =
      a.extension_type() == b.extension_type() && a.field.str() == b.field.str();
  if (r.same_type) r.eq = equivalent(r.a.invariants, r.b.invariants);
  return r;
}

mpz_class kontsevich_N(int d) {
  require(d >= 1 && d <= 12, errc::bad_argument,
          "the recursion is supported for 1 <= d <= 12");
  static const std::vector<mpz_class> table = [] {
    std::vector<mpz_class> n(13);
    n[1] = 1;
    for (int dd = 2; dd <= 12; ++dd) {
      mpz_class acc = 0;
      for (int d1 = 1; d1 < dd; ++d1) {
        const int d2 = dd - d1;
        mpz_class b1, b2;
        mpz_bin_uiui(b1.get_mpz_t(), static_cast<unsigned long>(3 * dd - 4),
                     static_cast<unsigned long>(3 * d1 - 2));
        mpz_bin_uiui(b2.get_mpz_t(), static_cast<unsigned long>(3 * dd - 4),
                     static_cast<unsigned long>(3 * d1 - 1));
        const mpz_class t = mpz_class(d1) * d1 * d2 * d2 * b1 -
                            mpz_class(d1) * d1 * d1 * d2 * b2;
        acc += n[static_cast<std::size_t>(d1)] * n[static_cast<std::size_t>(d2)] * t;
      }
      n[static_cast<std::size_t>(dd)] = acc;
    }
    return n;
  }();
  return table[static_cast<std::size_t>(d)];
}

}  // namespace gww
