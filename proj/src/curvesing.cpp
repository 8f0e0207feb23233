#include "gwwel/curvesing.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace gww {

// ----- component polynomial arithmetic -----------------------------------------

Poly<PolyFS> component_reduce(const Poly<PolyFS>& a, const ComponentContext& ctx) {
  Poly<PolyFS> r;
  r.c.reserve(a.c.size());
  for (const auto& v : a.c) r.c.push_back(ctx.reduce(v));
  r.normalize();
  return r;
}

Poly<PolyFS> component_monic(const Poly<PolyFS>& a, const ComponentContext& ctx) {
  if (a.is_zero()) return a;
  auto inv = ctx.invert(a.lc());
  require(inv.has_value(), errc::internal, "nonzero representative had no inverse");
  Poly<PolyFS> r;
  r.c.reserve(a.c.size());
  for (const auto& v : a.c) r.c.push_back(ctx.reduce(v * *inv));
  r.normalize();
  return r;
}

Poly<PolyFS> component_rem(const Poly<PolyFS>& a, const Poly<PolyFS>& b,
                           const ComponentContext& ctx) {
  require(!b.is_zero() && b.lc() == b.lc().one_like(), errc::internal,
          "component_rem wants a monic divisor");
  Poly<PolyFS> r = component_reduce(a, ctx);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int k = r.degree() - b.degree();
    const PolyFS t = r.lc();
    Poly<PolyFS> sub = shift_up(scale(b, t), k);
    r = r - sub;
    r = component_reduce(r, ctx);
    require(r.degree() < k + b.degree(), errc::internal, "division stalled");
  }
  return r;
}

Poly<PolyFS> component_gcd(std::vector<Poly<PolyFS>> ps,
                           const ComponentContext& ctx) {
  Poly<PolyFS> g;
  for (auto& p : ps) {
    Poly<PolyFS> r = component_reduce(p, ctx);
    if (r.is_zero()) continue;
    if (g.is_zero()) {
      g = std::move(r);
      continue;
    }
    Poly<PolyFS> a = g, b = std::move(r);
    while (!b.is_zero()) {
      Poly<PolyFS> bm = component_monic(b, ctx);
      Poly<PolyFS> rem = component_rem(a, bm, ctx);
      a = std::move(bm);
      b = std::move(rem);
    }
    g = std::move(a);
    if (g.degree() == 0) break;
  }
  if (g.is_zero()) return g;
  return component_monic(g, ctx);
}

PolyFS component_eval(const Poly<PolyFS>& a, const PolyFS& y0,
                      const ComponentContext& ctx) {
  PolyFS acc;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it)
    acc = ctx.reduce(acc * y0 + *it);
  return acc;
}

Poly<PolyFS> component_derivative(const Poly<PolyFS>& a,
                                  const FieldDescriptor& f) {
  Poly<PolyFS> r;
  for (std::size_t j = 1; j < a.c.size(); ++j)
    r.c.push_back(scale(a.c[j], FieldScalar::integer(f, static_cast<long>(j))));
  r.normalize();
  return r;
}

PolyFS bivar_eval_mod(const Bivar& f, const PolyFS& xv, const PolyFS& yv,
                      const PolyFS& m) {
  PolyFS acc;
  for (auto jt = f.c.rbegin(); jt != f.c.rend(); ++jt) {
    PolyFS inner;
    for (auto it = jt->c.rbegin(); it != jt->c.rend(); ++it)
      inner = poly_mod(inner * xv + PolyFS::constant(*it), m);
    acc = poly_mod(acc * yv + inner, m);
  }
  return acc;
}

FieldScalar promote_scalar(const FieldScalar& v, const FieldDescriptor& target) {
  require(target.kind != FieldKind::Null, errc::bad_argument,
          "promotion needs an explicit target field");
  if (v.field().kind == FieldKind::Null) return FieldScalar::zero(target);
  if (v.field() == target) return v;
  if (v.field().kind == FieldKind::Prime &&
      target.kind == FieldKind::PrimeSquare && v.field().p == target.p)
    return FieldScalar::fp2(target, v.fp_value(), 0);
  fail(errc::field_mismatch, "no embedding of " + v.field().str() + " into " +
                                 target.str());
}

// ----- plane curves ------------------------------------------------------------

PlaneCurve PlaneCurve::make(const TernaryForm& form) {
  require(!form.is_zero(), errc::zero_input, "zero form defines no curve");
  require(form.field().kind != FieldKind::Null, errc::unsupported_field,
          "curve needs an explicit base field");
  require(form.is_homogeneous(), errc::bad_argument,
          "curve equation must be homogeneous");
  const int d = form.total_degree();
  require(d >= 1, errc::bad_argument, "curve degree must be positive");
  require(d <= kDegreeCap, errc::degree_cap_exceeded, "curve degree above cap");
  PlaneCurve c;
  c.form_ = form;
  c.degree_ = d;
  return c;
}

PlaneCurve base_change_curve(const PlaneCurve& c, const FieldDescriptor& target) {
  TernaryForm nf(target);
  for (const auto& [e, v] : c.form().terms())
    nf.set(e[0], e[1], e[2], promote_scalar(v, target));
  return PlaneCurve::make(nf);
}

// ----- singular locus ----------------------------------------------------------

std::optional<PolyFS> component_common_root(const std::vector<Poly<PolyFS>>& eqs,
                                            const FieldDescriptor& fd,
                                            const ComponentContext& ctx) {
  Poly<PolyFS> g = component_gcd({eqs.begin(), eqs.end()}, ctx);
  require(!g.is_zero(), errc::internal, "all fiber equations vanished");
  if (g.degree() == 0) return std::nullopt;
  while (g.degree() > 1) {
    Poly<PolyFS> dg = component_reduce(component_derivative(g, fd), ctx);
    require(!dg.is_zero(), errc::not_generic,
            "fiber multiplicity divisible by the characteristic");
    Poly<PolyFS> g2 = component_gcd({g, dg}, ctx);
    if (g2.degree() == 0) throw SeparationFailure{};  // two roots share a fiber
    g = std::move(g2);
  }
  const PolyFS yv = ctx.reduce(-g.coeff(0));
  for (const auto& e : eqs)
    if (!ctx.is_zero(component_eval(component_reduce(e, ctx), yv, ctx)))
      return std::nullopt;
  return yv;
}

namespace {

PolyFS var_poly(const FieldDescriptor& f) {
  return PolyFS::variable(FieldScalar::one(f));
}

// candidate projection slopes; finite fields enumerate exhaustively
FieldScalar slope_candidate(const FieldDescriptor& f, int idx) {
  if (f.kind == FieldKind::Prime)
    return FieldScalar::fp(f, static_cast<std::uint64_t>(idx) % f.p);
  if (f.kind == FieldKind::PrimeSquare) {
    const auto u = static_cast<std::uint64_t>(idx);
    return FieldScalar::fp2(f, u % f.p, (u / f.p) % f.p);
  }
  return FieldScalar::integer(f, idx);
}

std::uint64_t slope_supply(const FieldDescriptor& f) {
  if (f.kind == FieldKind::Prime) return f.p;
  if (f.kind == FieldKind::PrimeSquare) return f.p * f.p;
  return ~std::uint64_t{0};
}

// coefficient of y^(total degree) in f(x - c*y, y); nonzero keeps the
// substituted polynomial y-proper with a constant leading coefficient
FieldScalar top_form_at(const Bivar& f, const FieldScalar& c) {
  const int d = bivar_total_degree(f);
  FieldScalar acc, mc = -c;
  for (int j = 0; j <= f.degree(); ++j) {
    const int i = d - j;
    if (i < 0) continue;
    FieldScalar v = f.c[j].coeff(static_cast<std::size_t>(i));
    if (v.is_zero()) continue;
    for (int k = 0; k < i; ++k) v = v * mc;
    acc = acc + v;
  }
  return acc;
}

// restriction of a form to the line X2 = 0, parametrized as (1 : t : 0)
PolyFS restrict_infinity(const TernaryForm& g) {
  std::vector<FieldScalar> cs;
  for (const auto& [e, v] : g.terms()) {
    if (e[2] != 0) continue;
    if (static_cast<std::size_t>(e[1]) >= cs.size())
      cs.resize(static_cast<std::size_t>(e[1]) + 1);
    cs[static_cast<std::size_t>(e[1])] = cs[static_cast<std::size_t>(e[1])] + v;
  }
  return PolyFS{std::move(cs)};
}

std::vector<SingularPoint> affine_singular_points(const PlaneCurve& c,
                                                  const LocusOptions& opt) {
  const FieldDescriptor& fd = c.field();
  const Bivar f = c.affine(2);
  if (f.is_zero() || bivar_total_degree(f) < 1) return {};
  const Bivar fx = bivar_dx(f), fy = bivar_dy(f);
  require(!(fx.is_zero() && fy.is_zero()), errc::not_reduced,
          "vanishing gradient: the curve is a p-th power");

  const int dtot = bivar_total_degree(f);
  std::uint64_t tries =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(opt.max_projection_tries),
                              slope_supply(fd));
  for (std::uint64_t idx = 0; idx < tries; ++idx) {
    const FieldScalar cc = slope_candidate(fd, static_cast<int>(idx));
    bool proper = !top_form_at(f, cc).is_zero() &&
                  (fx.is_zero() || !top_form_at(fx, cc).is_zero()) &&
                  (fy.is_zero() || !top_form_at(fy, cc).is_zero());
    if (!proper) continue;

    std::vector<Bivar> eqs = {bivar_sub_x_minus_cy(f, cc)};
    if (!fx.is_zero()) eqs.push_back(bivar_sub_x_minus_cy(fx, cc));
    if (!fy.is_zero()) eqs.push_back(bivar_sub_x_minus_cy(fy, cc));

    std::vector<PolyFS> res;
    for (std::size_t i = 0; i < eqs.size(); ++i)
      for (std::size_t j = i + 1; j < eqs.size(); ++j) {
        PolyFS r = sylvester_resultant_ring(eqs[i], eqs[j]);
        if (!r.is_zero()) res.push_back(std::move(r));
      }
    if (res.empty() && eqs.size() == 3) {
      // every pair shares a factor; fold the partials together
      for (int t = 1; t <= 2 * dtot + 3 && res.empty(); ++t) {
        Bivar comb = eqs[1] + scale(eqs[2], PolyFS::constant(
                                                FieldScalar::integer(fd, t)));
        if (comb.is_zero()) continue;
        PolyFS r = sylvester_resultant_ring(eqs[0], comb);
        if (!r.is_zero()) res.push_back(std::move(r));
      }
    }
    require(!res.empty(), errc::not_reduced,
            "singular locus has positive dimension; the curve is not reduced");

    PolyFS w = res[0];
    for (std::size_t i = 1; i < res.size() && w.degree() > 0; ++i)
      w = gcd_poly(w, res[i]);
    if (w.degree() <= 0) return {};
    w = squarefree_part(w);
    if (w.degree() <= 0) return {};

    try {
      auto leaves = for_each_component(
          w, [&](const ComponentContext& ctx) { return component_common_root(eqs, fd, ctx); });
      std::vector<SingularPoint> out;
      const PolyFS s = var_poly(fd);
      for (auto& lf : leaves) {
        if (!lf.value) continue;
        SingularPoint p;
        p.chart = 2;
        p.modulus = lf.modulus;
        p.y = *lf.value;
        p.x = poly_mod(s - scale(p.y, cc), lf.modulus);
        out.push_back(std::move(p));
      }
      return out;
    } catch (const SeparationFailure&) {
      continue;
    }
  }
  fail(errc::not_generic,
       "no separating projection over the base field; extend the field");
}

std::vector<SingularPoint> infinity_singular_points(const PlaneCurve& c) {
  const FieldDescriptor& fd = c.field();
  const TernaryForm& F = c.form();
  std::vector<PolyFS> pool;
  PolyFS rf = restrict_infinity(F);
  if (!rf.is_zero()) pool.push_back(std::move(rf));
  std::array<TernaryForm, 3> parts = {F.partial(0), F.partial(1), F.partial(2)};
  for (const auto& p : parts) {
    PolyFS r = restrict_infinity(p);
    if (!r.is_zero()) pool.push_back(std::move(r));
  }
  require(!pool.empty(), errc::not_reduced,
          "the line at infinity lies in the singular locus");

  std::vector<SingularPoint> out;
  PolyFS w = pool[0];
  for (std::size_t i = 1; i < pool.size() && w.degree() > 0; ++i)
    w = gcd_poly(w, pool[i]);
  if (w.degree() > 0) {
    w = squarefree_part(w);
    if (w.degree() > 0) {
      SingularPoint p;
      p.chart = 0;  // (1 : t : 0) -> chart-0 coordinates (t, 0)
      p.modulus = w;
      p.x = poly_mod(var_poly(fd), w);
      p.y = PolyFS{};
      out.push_back(std::move(p));
    }
  }

  const FieldScalar z = FieldScalar::zero(fd), o = FieldScalar::one(fd);
  bool far_sing = F.eval(z, o, z).is_zero();
  for (const auto& p : parts) far_sing = far_sing && p.eval(z, o, z).is_zero();
  if (far_sing) {
    SingularPoint p;
    p.chart = 1;  // (0 : 1 : 0) -> chart-1 coordinates (0, 0)
    p.modulus = var_poly(fd);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<SingularPoint> singular_locus(const PlaneCurve& c,
                                          const LocusOptions& opt) {
  std::vector<SingularPoint> out = affine_singular_points(c, opt);
  std::vector<SingularPoint> inf = infinity_singular_points(c);
  out.insert(out.end(), std::make_move_iterator(inf.begin()),
             std::make_move_iterator(inf.end()));
  return out;
}

// ----- classification ----------------------------------------------------------

const char* sing_class_name(SingClass c) {
  switch (c) {
    case SingClass::NotSingular: return "not-singular";
    case SingClass::Node: return "node";
    case SingClass::Cusp: return "cusp";
    case SingClass::Tacnode: return "tacnode";
    case SingClass::OrdinaryTriple: return "ordinary-triple-point";
    case SingClass::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

struct LeafClass {
  SingClass cls = SingClass::NotSingular;
  PolyFS hess;
};

// 4-jet of f at (x0, y0): jet[i][j] is the coefficient of X^i Y^j, i+j <= 4
using Jet = std::array<std::array<PolyFS, 5>, 5>;

Jet jet_at(const std::array<std::array<Bivar, 5>, 5>& der, const PolyFS& x0,
           const PolyFS& y0, const PolyFS& m) {
  Jet out;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) out[i][j] = bivar_eval_mod(der[i][j], x0, y0, m);
  return out;
}

std::array<std::array<Bivar, 5>, 5> jet_derivatives(const Bivar& f,
                                                    const FieldDescriptor& fd) {
  auto bscale = [](const Bivar& b, const FieldScalar& s) {
    return scale(b, PolyFS::constant(s));
  };
  std::array<std::array<Bivar, 5>, 5> der;
  der[0][0] = f;
  for (int j = 1; j <= 4; ++j)
    der[0][j] = bscale(bivar_dy(der[0][j - 1]),
                       FieldScalar::integer(fd, j).inverse());
  for (int i = 1; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j)
      der[i][j] = bscale(bivar_dx(der[i - 1][j]),
                         FieldScalar::integer(fd, i).inverse());
  return der;
}

LeafClass classify_leaf(const Jet& c, const FieldDescriptor& fd,
                        const ComponentContext& ctx) {
  auto red = [&](const PolyFS& v) { return ctx.reduce(v); };
  auto mul = [&](const PolyFS& a, const PolyFS& b) { return ctx.reduce(a * b); };
  auto is_unit = [&](const PolyFS& v) {
    if (ctx.is_zero(v)) return false;
    auto inv = ctx.invert(v);
    require(inv.has_value(), errc::internal, "nonzero representative had no inverse");
    return true;
  };
  auto by_int = [&](long n) {
    return PolyFS::constant(FieldScalar::integer(fd, n));
  };

  if (is_unit(c[0][0])) fail(errc::bad_argument, "point is not on the curve");
  if (is_unit(c[1][0]) || is_unit(c[0][1])) return {SingClass::NotSingular, {}};

  const PolyFS d20 = red(c[2][0]), d11 = red(c[1][1]), d02 = red(c[0][2]);
  PolyFS hess = red(mul(by_int(4), mul(d20, d02)) - mul(d11, d11));
  if (is_unit(hess)) return {SingClass::Node, hess};

  const bool n20 = is_unit(d20), n11 = is_unit(d11), n02 = is_unit(d02);
  if (!n20 && !n11 && !n02) {
    // ordinary triple point iff the tangent cone is separable
    const PolyFS a = red(c[3][0]), b = red(c[2][1]), cc = red(c[1][2]),
                 d = red(c[0][3]);
    PolyFS disc = mul(by_int(18), mul(a, mul(b, mul(cc, d))));
    disc = red(disc - mul(by_int(4), mul(b, mul(b, mul(b, d)))));
    disc = red(disc + mul(b, mul(b, mul(cc, cc))));
    disc = red(disc - mul(by_int(4), mul(a, mul(cc, mul(cc, cc)))));
    disc = red(disc - mul(by_int(27), mul(a, mul(a, mul(d, d)))));
    return {is_unit(disc) ? SingClass::OrdinaryTriple : SingClass::Degenerate, {}};
  }

  // rank-1 quadratic part a*(kernel complement)^2
  PolyFS v1, v2, w1, w2, A;
  const PolyFS one = PolyFS::constant(FieldScalar::one(fd));
  if (n20) {
    v1 = red(-d11);
    v2 = red(mul(by_int(2), d20));
    w1 = one;
    A = d20;
  } else {
    require(!n11 && n02, errc::internal, "impossible rank-1 shape");
    v1 = one;
    w2 = one;
    A = d02;
  }
  PolyFS t3 = mul(c[3][0], mul(v1, mul(v1, v1)));
  t3 = red(t3 + mul(c[2][1], mul(v1, mul(v1, v2))));
  t3 = red(t3 + mul(c[1][2], mul(v1, mul(v2, v2))));
  t3 = red(t3 + mul(c[0][3], mul(v2, mul(v2, v2))));
  if (is_unit(t3)) return {SingClass::Cusp, {}};

  // substitute (x, y) = X*(w1, w2) + Y*(v1, v2) and read off the 4-jet
  static const int bin[5][5] = {{1, 0, 0, 0, 0},
                                {1, 1, 0, 0, 0},
                                {1, 2, 1, 0, 0},
                                {1, 3, 3, 1, 0},
                                {1, 4, 6, 4, 1}};
  auto pw = [&](const PolyFS& base, int e) {
    PolyFS r = one;
    for (int k = 0; k < e; ++k) r = mul(r, base);
    return r;
  };
  std::array<std::array<PolyFS, 5>, 5> ct;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) {
      if (ctx.is_zero(c[i][j])) continue;
      for (int a2 = 0; a2 <= i; ++a2)
        for (int b2 = 0; b2 <= j; ++b2) {
          const int k = (i - a2) + (j - b2), l = a2 + b2;
          PolyFS term = mul(by_int(static_cast<long>(bin[i][a2]) * bin[j][b2]),
                            c[i][j]);
          term = mul(term, mul(pw(w1, i - a2), pw(v1, a2)));
          term = mul(term, mul(pw(w2, j - b2), pw(v2, b2)));
          ct[k][l] = red(ct[k][l] + term);
        }
    }
  require(ctx.is_zero(ct[1][1]) && ctx.is_zero(ct[0][2]) && ctx.is_zero(ct[0][3]),
          errc::internal, "kernel normalization failed");
  auto inv4A = ctx.invert(red(mul(by_int(4), A)));
  require(inv4A.has_value(), errc::internal, "quadratic coefficient not a unit");
  const PolyFS tac = red(ct[0][4] - mul(mul(ct[1][2], ct[1][2]), *inv4A));
  return {is_unit(tac) ? SingClass::Tacnode : SingClass::Degenerate, {}};
}

}  // namespace

std::vector<ClassifiedPoint> classify_point(const PlaneCurve& c,
                                            const SingularPoint& p) {
  require(!p.modulus.is_zero() && p.modulus.degree() >= 1, errc::bad_argument,
          "singular point needs a nonconstant modulus");
  const FieldDescriptor& fd = c.field();
  const auto der = jet_derivatives(c.affine(p.chart), fd);
  auto leaves = for_each_component(p.modulus, [&](const ComponentContext& ctx) {
    const PolyFS xv = ctx.reduce(p.x), yv = ctx.reduce(p.y);
    return classify_leaf(jet_at(der, xv, yv, ctx.modulus()), fd, ctx);
  });
  std::vector<ClassifiedPoint> out;
  out.reserve(leaves.size());
  for (auto& lf : leaves) {
    ClassifiedPoint q;
    q.chart = p.chart;
    q.modulus = lf.modulus;
    q.x = poly_mod(p.x, lf.modulus);
    q.y = poly_mod(p.y, lf.modulus);
    q.cls = lf.value.cls;
    if (q.cls == SingClass::Node) {
      q.hess = lf.value.hess;
      q.hess_norm = resultant_nocap(lf.modulus, q.hess);
      require(!q.hess_norm.is_zero(), errc::internal,
              "unit Hessian with vanishing norm");
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<ClassifiedPoint> classified_singular_locus(const PlaneCurve& c,
                                                       const LocusOptions& opt) {
  std::vector<ClassifiedPoint> out;
  for (const auto& p : singular_locus(c, opt)) {
    auto cls = classify_point(c, p);
    out.insert(out.end(), std::make_move_iterator(cls.begin()),
               std::make_move_iterator(cls.end()));
  }
  return out;
}

// ----- nodal weight -------------------------------------------------------------

WelschingerClass welschinger_class(const PlaneCurve& c,
                                   const WelschingerOptions& opt) {
  WelschingerClass out;
  out.unit = FieldScalar::one(c.field());
  for (auto& q : classified_singular_locus(c)) {
    require(q.cls != SingClass::NotSingular, errc::internal,
            "singular locus produced a smooth point");
    if (q.cls != SingClass::Node)
      fail(errc::not_a_node,
           std::string("singular point of type ") + sing_class_name(q.cls) +
               "; the weight needs ordinary double points");
    out.node_degree_total += q.degree();
    out.unit = out.unit * q.hess_norm;
    out.nodes.push_back(std::move(q));
  }
  if (!opt.allow_any_node_count) {
    const int d = c.degree();
    if (d <= 3) {
      const int expected = (d - 1) * (d - 2) / 2;
      require(out.node_degree_total == expected, errc::wrong_node_count,
              "degree " + std::to_string(d) + " curve carries " +
                  std::to_string(out.node_degree_total) + " nodes, expected " +
                  std::to_string(expected));
    } else {
      require(opt.assume_integral, errc::bad_argument,
              "no integrality certificate above degree 3; set assume_integral");
    }
  }
  return out;
}

// ----- tacnode deformation --------------------------------------------------------

TacnodeCheck tacnode_deformation_check(const FieldScalar& a,
                                       const FieldScalar& u) {
  const FieldDescriptor f = merge_fields(a.field(), u.field());
  require(f.kind != FieldKind::Null, errc::bad_argument,
          "tacnode check needs scalars with a field");
  require(!a.is_zero() && !u.is_zero() && a * a != u,
          errc::degenerate_parameters,
          "tacnode deformation needs a != 0, u != 0, a^2 != u");
  const FieldScalar one = FieldScalar::one(f), zero = FieldScalar::zero(f);

  // y^2 - (x+a)(x^2-u)^2, homogenized in the chart X2 = 1
  const PolyFS xa{{a, one}};
  const PolyFS x2u{{-u, zero, one}};
  const PolyFS g = xa * x2u * x2u;
  Bivar fb;
  fb.c = {-g, PolyFS{}, PolyFS::constant(one)};
  fb.normalize();
  const PlaneCurve curve =
      PlaneCurve::make(TernaryForm::homogenize(f, fb, 2, 6));

  SingularPoint sp;
  sp.chart = 2;
  sp.modulus = x2u;
  sp.x = PolyFS{{zero, one}};
  sp.y = PolyFS{};

  TacnodeCheck out;
  out.norm = one;
  out.nodes_ok = out.weight_ok = true;
  const FieldScalar c16u = FieldScalar::integer(f, 16) * u;
  for (const auto& q : classify_point(curve, sp)) {
    ++out.components;
    if (q.cls != SingClass::Node) out.nodes_ok = false;
    const PolyFS expect{{-(c16u * a), -c16u}};
    if (!poly_mod(q.hess - expect, q.modulus).is_zero()) out.weight_ok = false;
    out.norm = out.norm * q.hess_norm;
  }
  out.norm_ok = out.nodes_ok && same_square_class(out.norm, a * a - u);
  return out;
}

}  // namespace gww
