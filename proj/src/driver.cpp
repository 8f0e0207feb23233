#include "gwwel/driver.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>

#include "gwwel/etale.hpp"
#include "gwwel/gwforms.hpp"
#include "gwwel/rng.hpp"

namespace gww {

std::string version_string() { return "0.1.0"; }

// ----- univariate polynomial literals -------------------------------------------

PolyFS parse_unipoly(const FieldDescriptor& f, const std::string& text, char var) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), errc::parse_error, "empty polynomial literal");

  std::vector<FieldScalar> coeffs;
  const auto add_term = [&](const FieldScalar& c, int e) {
    require(e >= 0 && e <= 64, errc::parse_error, "exponent out of range");
    if (coeffs.size() <= static_cast<std::size_t>(e))
      coeffs.resize(static_cast<std::size_t>(e) + 1, FieldScalar::zero(f));
    coeffs[static_cast<std::size_t>(e)] += c;
  };

  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    require(i < s.size(), errc::parse_error, "dangling sign in '" + text + "'");
    const std::size_t start = i;
    while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
    std::string term = s.substr(start, i - start);

    FieldScalar coef = FieldScalar::one(f);
    int expo = 0;
    const std::size_t vpos = term.find(var);
    if (vpos == std::string::npos) {
      coef = FieldScalar::parse(f, term);
    } else {
      std::string cpart = term.substr(0, vpos);
      if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
      if (!cpart.empty()) coef = FieldScalar::parse(f, cpart);
      std::string epart = term.substr(vpos + 1);
      if (epart.empty()) {
        expo = 1;
      } else {
        require(epart[0] == '^', errc::parse_error,
                "bad monomial in '" + text + "'");
        try {
          std::size_t used = 0;
          expo = std::stoi(epart.substr(1), &used);
          require(used == epart.size() - 1, errc::parse_error,
                  "bad exponent in '" + text + "'");
        } catch (const std::exception&) {
          fail(errc::parse_error, "bad exponent in '" + text + "'");
        }
      }
    }
    if (sign < 0) coef = -coef;
    add_term(coef, expo);
  }
  PolyFS p{std::move(coeffs)};
  return p;
}

// ----- configurations in JSON ----------------------------------------------------

PointConfiguration config_from_json(const FieldDescriptor& f, const Json& points) {
  require(points.is_array() && !points.empty(), errc::parse_error,
          "'points' must be a nonempty array");
  PointConfiguration cfg;
  cfg.field = f;
  for (const auto& jp : points) {
    require(jp.is_object() && jp.contains("x") && jp.contains("y"),
            errc::parse_error, "each point needs string fields 'x' and 'y'");
    const auto text = [&](const char* key, const char* dflt) {
      if (!jp.contains(key)) return std::string(dflt);
      require(jp[key].is_string(), errc::parse_error,
              std::string("point field '") + key + "' must be a string");
      return jp[key].get<std::string>();
    };
    if (jp.contains("modulus")) {
      const PolyFS g = parse_unipoly(f, text("modulus", ""));
      cfg.points.push_back(orbit_point(g, parse_unipoly(f, text("x", "0")),
                                       parse_unipoly(f, text("y", "0")),
                                       parse_unipoly(f, text("z", "1"))));
    } else {
      cfg.points.push_back(projective_point(
          FieldScalar::parse(f, text("x", "0")),
          FieldScalar::parse(f, text("y", "0")),
          FieldScalar::parse(f, text("z", "1"))));
    }
  }
  validate_config(cfg);
  return cfg;
}

Json config_to_json(const PointConfiguration& cfg) {
  Json out = Json::array();
  for (const auto& p : cfg.points) {
    Json jp;
    jp["modulus"] = poly_str(p.modulus, "t");
    jp["x"] = poly_str(p.x, "t");
    jp["y"] = poly_str(p.y, "t");
    jp["z"] = poly_str(p.z, "t");
    out.push_back(std::move(jp));
  }
  return out;
}

// ----- report pieces --------------------------------------------------------------

namespace {

Json invariants_json(const GWInvariants& inv, const FieldDescriptor& f) {
  Json out;
  out["rank"] = inv.rank;
  if (f.is_rationals()) out["signature"] = inv.signature;
  out["disc"] = inv.disc.str();
  if (f.is_rationals()) {
    Json hm = Json::array();
    for (const auto& [place, sym] : inv.hasse)
      if (sym < 0) hm.push_back(place.str());
    out["hasse_minus"] = std::move(hm);
    out["hasse_complete"] = inv.complete;
  }
  return out;
}

Json count_json(const PointConfiguration& cfg, const CountReport& r,
                int verbosity) {
  Json out;
  out["degree"] = r.degree;
  out["field"] = cfg.field.str();
  out["type"] = r.type;
  out["invariants"] = invariants_json(r.invariants, cfg.field);
  Json degs = Json::array();
  for (const auto& n : r.nodes) degs.push_back(n.modulus.degree());
  out["node_orbit_degrees"] = std::move(degs);
  if (verbosity >= 1) {
    // Exact node data; over Q the coefficients commonly run to thousands of
    // digits, so this is opt-in.
    Json nodes = Json::array();
    for (const auto& n : r.nodes) {
      Json jn;
      jn["modulus"] = poly_str(n.modulus, "t");
      jn["x"] = poly_str(n.x, "t");
      jn["y"] = poly_str(n.y, "t");
      jn["weight"] = poly_str(n.weight, "t");
      const EtaleAlgebra A = EtaleAlgebra::make(n.modulus);
      jn["weight_norm_class"] =
          square_class_strip(A.element(n.weight).norm()).str();
      nodes.push_back(std::move(jn));
    }
    out["nodes"] = std::move(nodes);
  }
  out["config"] = config_to_json(cfg);
  Json diag;
  diag["basis_twist"] = r.diag.basis_twist;
  diag["coordinate_change"] = r.diag.coordinate_change;
  diag["change_matrix"] = r.diag.change_matrix;
  diag["discriminant_degree"] = r.diag.discriminant_degree;
  out["diagnostics"] = std::move(diag);
  return out;
}

Json oracle_json(const OracleResult& o) {
  Json out;
  out["conclusive"] = o.conclusive;
  if (o.conclusive) {
    out["signature"] = o.signature;
    out["real_nodes"] = o.real_nodes;
  } else {
    out["reason"] = o.reason;
  }
  return out;
}

// ----- deterministic fan-out -------------------------------------------------------

int thread_budget(const Json& spec) {
  long cap = 1;
  if (const char* env = std::getenv("GW_WEL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = v;
  }
  long want = cap;
  if (spec.contains("threads") && spec["threads"].is_number_integer())
    want = spec["threads"].get<long>();
  const long hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::clamp(std::min(want, cap), 1L, std::min(hw, 64L)));
}

// Runs fn(i) for i in [0, n); failures come back as strings, slot-ordered, so
// reports do not depend on scheduling.
std::vector<std::string> parallel_trials(int n, int threads,
                                         const std::function<std::string(int)>& fn) {
  std::vector<std::string> out(static_cast<std::size_t>(n));
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (const std::exception& e) {
        out[static_cast<std::size_t>(i)] = std::string("exception: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int k = std::min(threads, n);
  pool.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

Json suite_json(const std::string& name, const std::vector<std::string>& fails,
                int trials, bool pinned_ok) {
  int n_fail = 0;
  std::string first;
  for (std::size_t i = 0; i < fails.size(); ++i)
    if (!fails[i].empty()) {
      if (n_fail == 0)
        first = "trial " + std::to_string(i) + ": " + fails[i];
      ++n_fail;
    }
  Json out;
  out["suite"] = name;
  out["trials"] = trials;
  out["failures"] = n_fail;
  if (n_fail > 0) out["first_failure"] = first;
  out["pinned_ok"] = pinned_ok;
  out["passed"] = n_fail == 0 && pinned_ok;
  return out;
}

// ----- verify: draws ---------------------------------------------------------------

FieldScalar rand_q(Rng& rng, long bound) {
  return FieldScalar::integer(FieldDescriptor::rationals(),
                              rng.range(-bound, bound));
}

PolyFS rand_unit_poly(Rng& rng, int maxdeg, long bound) {
  for (;;) {
    std::vector<FieldScalar> c;
    const int d = static_cast<int>(rng.range(0, maxdeg));
    for (int i = 0; i <= d; ++i) c.push_back(rand_q(rng, bound));
    PolyFS p{std::move(c)};
    if (!p.is_zero() && !p.coeff(0).is_zero()) return p;
  }
}

// ----- verify: cusp families --------------------------------------------------------

std::string cusp_trial(std::uint64_t seed) {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  Rng rng(seed);
  const PolyFS U1 = rand_unit_poly(rng, 3, 9);
  PolyFS V1, P;
  {
    std::vector<FieldScalar> c;
    for (int i = 0; i <= rng.range(0, 3); ++i) c.push_back(rand_q(rng, 9));
    V1 = PolyFS{std::move(c)};
    std::vector<FieldScalar> c2;
    for (int i = 0; i <= rng.range(0, 3); ++i) c2.push_back(rand_q(rng, 9));
    P = PolyFS{std::move(c2)};
  }
  const PolyFS v = rand_unit_poly(rng, 3, 9);

  const CuspFamilyForms forms = cusp_family_forms(U1, V1, P, v);
  std::vector<std::vector<RationalFunction>> raw(2, std::vector<RationalFunction>(2));
  std::vector<std::vector<RationalFunction>> red(2, std::vector<RationalFunction>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          forms.raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      red[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          forms.reduced[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

  const FunctionPlace origin = FunctionPlace::at(FieldScalar::zero(Q));
  const FunctionFieldForm ff = diagonalize_ff(Q, raw);
  if (!is_unramified(ff, origin)) return "second residue at s=0 not Witt-trivial";

  const RationalFunction det =
      red[0][0] * red[1][1] - red[0][1] * red[1][0];
  if (det.is_zero()) return "reduced determinant vanishes identically";
  if (place_value(det, origin).val != 0)
    return "reduced determinant not a unit at s=0";
  return "";
}

bool cusp_pinned() {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  const FieldScalar one = FieldScalar::one(Q), zero = FieldScalar::zero(Q);
  const auto forms =
      cusp_family_forms(PolyFS::constant(one), PolyFS{}, PolyFS{},
                        PolyFS::constant(one));
  // raw = [[0, 2s], [2s, 0]]
  const RationalFunction two_s =
      RationalFunction::poly(PolyFS{{zero, FieldScalar::integer(Q, 2)}});
  if (!(forms.raw[0][0].is_zero() && forms.raw[1][1].is_zero() &&
        forms.raw[0][1] == two_s && forms.raw[1][0] == two_s))
    return false;
  // reduced determinant at s = 0 equals -4
  const RationalFunction det = forms.reduced[0][0] * forms.reduced[1][1] -
                               forms.reduced[0][1] * forms.reduced[1][0];
  const PlaceValue pv = place_value(det, FunctionPlace::at(zero));
  if (pv.val != 0 || pv.unit != FieldScalar::integer(Q, -4)) return false;
  // unit-condition guard: U1(0) = 0 must be rejected
  try {
    (void)cusp_family_forms(PolyFS{{zero, one}}, PolyFS{}, PolyFS{},
                            PolyFS::constant(one));
    return false;
  } catch (const gw_error& e) {
    if (e.code() != errc::unit_condition_violated) return false;
  }
  return true;
}

// ----- verify: tacnode families ------------------------------------------------------

std::string tacnode_trial(std::uint64_t seed) {
  Rng rng(seed);
  FieldScalar a, u;
  for (;;) {
    a = rand_q(rng, 20);
    u = rand_q(rng, 20);
    if (!a.is_zero() && !u.is_zero() && a * a != u) break;
  }
  const TacnodeCheck r = tacnode_deformation_check(a, u);
  if (!r.nodes_ok) return "deformation nodes not ordinary at a=" + a.str() + " u=" + u.str();
  if (!r.weight_ok) return "local weight differs from 16u*(-t-a) at a=" + a.str() + " u=" + u.str();
  if (!r.norm_ok)
    return "norm " + r.norm.str() + " not in the class of a^2-u at a=" + a.str() +
           " u=" + u.str();
  return "";
}

bool tacnode_pinned() {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  const FieldScalar one = FieldScalar::one(Q), zero = FieldScalar::zero(Q);
  // Nm(t + a) over Q(s)[t]/(t^2 - s) equals a^2 - s as a polynomial identity
  for (long av : {1L, -2L, 3L, 7L, 11L}) {
    const FieldScalar a = FieldScalar::integer(Q, av);
    Poly<PolyFS> G, H;
    G.c = {PolyFS{{zero, -one}}, PolyFS{}, PolyFS::constant(one)};
    G.normalize();
    H.c = {PolyFS::constant(a), PolyFS::constant(one)};
    H.normalize();
    const PolyFS R = sylvester_resultant_ring(G, H);
    if (!(R == PolyFS{{a * a, -one}})) return false;
  }
  // degenerate-parameter guard
  try {
    (void)tacnode_deformation_check(FieldScalar::integer(Q, 3),
                                    FieldScalar::integer(Q, 9));
    return false;
  } catch (const gw_error& e) {
    if (e.code() != errc::degenerate_parameters) return false;
  }
  return true;
}

// ----- verify: triple points ---------------------------------------------------------

std::string triple_trial(std::uint64_t seed) {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  Rng rng(seed);
  FieldScalar a, u;
  for (;;) {
    a = rand_q(rng, 15);
    u = rand_q(rng, 15);
    if (!a.is_zero() && !u.is_zero()) break;
  }
  const FieldScalar zero = FieldScalar::zero(Q), one = FieldScalar::one(Q);
  Bivar q;
  q.c = {PolyFS{{u * u, zero, -a}}, PolyFS::constant(u + u), PolyFS::constant(one)};
  q.normalize();
  const Bivar fb = shift_up(q, 1);  // y * ((y+u)^2 - a x^2)
  const PlaneCurve curve = PlaneCurve::make(TernaryForm::homogenize(Q, fb, 2, 3));
  WelschingerOptions opt;
  opt.allow_any_node_count = true;
  opt.assume_integral = true;
  const WelschingerClass w = welschinger_class(curve, opt);
  if (!same_square_class(w.unit, -a))
    return "class " + w.unit.str() + " differs from <-a> at a=" + a.str() +
           " u=" + u.str();
  return "";
}

bool triple_pinned() {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  // spec example: y((y+1)^2 - 2x^2) carries the class <-2>
  const FieldScalar zero = FieldScalar::zero(Q), one = FieldScalar::one(Q);
  Bivar q;
  q.c = {PolyFS{{one, zero, FieldScalar::integer(Q, -2)}},
         PolyFS::constant(FieldScalar::integer(Q, 2)), PolyFS::constant(one)};
  q.normalize();
  const PlaneCurve curve =
      PlaneCurve::make(TernaryForm::homogenize(Q, shift_up(q, 1), 2, 3));
  WelschingerOptions opt;
  opt.allow_any_node_count = true;
  opt.assume_integral = true;
  if (!same_square_class(welschinger_class(curve, opt).unit,
                         FieldScalar::integer(Q, -2)))
    return false;
  // a = 0 degenerates to a non-reduced curve and must be rejected
  Bivar q0;
  q0.c = {PolyFS{{one}}, PolyFS::constant(FieldScalar::integer(Q, 2)),
          PolyFS::constant(one)};
  q0.normalize();
  try {
    const PlaneCurve bad =
        PlaneCurve::make(TernaryForm::homogenize(Q, shift_up(q0, 1), 2, 3));
    (void)welschinger_class(bad, opt);
    return false;
  } catch (const gw_error&) {
    return true;
  }
}

// ----- verify: residue calculus -------------------------------------------------------

std::string residue_trial(std::uint64_t seed) {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  Rng rng(seed);
  const int n = static_cast<int>(rng.range(1, 4));
  FunctionFieldForm form;
  form.field = Q;
  std::vector<FieldScalar> expected;
  for (int i = 0; i < n; ++i) {
    const int e = static_cast<int>(rng.range(0, 3));
    const PolyFS u = rand_unit_poly(rng, 2, 9);
    const PolyFS w = rand_unit_poly(rng, 2, 9);
    PolyFS num = u;
    for (int k = 0; k < e; ++k) num = shift_up(num, 1);
    form.diag.push_back(RationalFunction::of(num, w));
    if (e % 2) expected.push_back(u.coeff(0) / w.coeff(0));
  }
  const FunctionPlace origin = FunctionPlace::at(FieldScalar::zero(Q));
  const std::vector<FieldScalar> res = second_residue(form, origin);
  if (res.size() != expected.size())
    return "residue rank " + std::to_string(res.size()) + ", expected " +
           std::to_string(expected.size());
  for (std::size_t i = 0; i < res.size(); ++i)
    if (res[i] != expected[i]) return "residue unit mismatch at slot " + std::to_string(i);
  const bool unram = is_unramified(form, origin);
  const bool expected_trivial =
      res.empty() || witt_trivial(QuadForm::diagonal(Q, res));
  if (unram != expected_trivial) return "is_unramified disagrees with the residue form";
  return "";
}

bool residue_pinned() {
  const FieldDescriptor Q = FieldDescriptor::rationals();
  const FieldScalar zero = FieldScalar::zero(Q), one = FieldScalar::one(Q);
  const FunctionPlace origin = FunctionPlace::at(zero);
  const RationalFunction s = RationalFunction::poly(PolyFS{{zero, one}});
  FunctionFieldForm hyp;
  hyp.field = Q;
  hyp.diag = {s, -s};
  if (!is_unramified(hyp, origin)) return false;
  FunctionFieldForm ram;
  ram.field = Q;
  ram.diag = {s};
  if (is_unramified(ram, origin)) return false;
  FunctionFieldForm unit;
  unit.field = Q;
  unit.diag = {RationalFunction::poly(PolyFS{{one, one}})};
  return is_unramified(unit, origin) && second_residue(unit, origin).empty();
}

// ----- commands ------------------------------------------------------------------------

std::uint64_t seed_of(const Json& spec) {
  if (spec.contains("seed")) {
    require(spec["seed"].is_number_unsigned() || spec["seed"].is_number_integer(),
            errc::parse_error, "'seed' must be an integer");
    return spec["seed"].get<std::uint64_t>();
  }
  return 0;
}

FieldDescriptor field_of(const Json& spec) {
  return FieldDescriptor::parse(spec.value("field", "Q"));
}

int degree_of(const Json& spec) {
  const int d = spec.value("degree", 3);
  require(d >= 1 && d <= 3, errc::bad_argument, "supported degrees: 1, 2, 3");
  return d;
}

std::string default_type(int degree) {
  switch (degree) {
    case 1: return "2x1";
    case 2: return "5x1";
    default: return "8x1";
  }
}

long bound_of(const Json& spec) {
  const long b = spec.value("bound", 20L);
  require(b >= 1 && b <= 1000, errc::bad_argument, "'bound' must be in [1, 1000]");
  return b;
}

PointConfiguration config_of(const Json& spec, int degree) {
  const FieldDescriptor f = field_of(spec);
  if (spec.contains("points")) return config_from_json(f, spec["points"]);
  const std::string type = spec.value("type", default_type(degree));
  return generate_config(f, type, seed_of(spec), bound_of(spec));
}

int verbosity_of(const Json& spec) {
  const int v = spec.value("verbosity", 0);
  require(v >= 0 && v <= 2, errc::bad_argument, "'verbosity' must be 0, 1 or 2");
  return v;
}

Json cmd_count(const Json& spec, bool with_oracle) {
  const int degree = degree_of(spec);
  const PointConfiguration cfg = config_of(spec, degree);
  const CountReport rep = welschinger_number(cfg, degree, seed_of(spec));
  Json out = count_json(cfg, rep, verbosity_of(spec));
  if (with_oracle || spec.value("oracle", false)) {
    require(cfg.field.is_rationals(), errc::bad_argument,
            "the signature oracle works over Q only");
    out["oracle"] = oracle_json(real_signature_oracle(rep));
  }
  return out;
}

Json cmd_curve(const Json& spec) {
  require(spec.contains("curve") && spec["curve"].is_string(), errc::parse_error,
          "'curve' must hold the form as a string in X0, X1, X2");
  const FieldDescriptor f = field_of(spec);
  const PlaneCurve curve =
      PlaneCurve::make(TernaryForm::parse(f, spec["curve"].get<std::string>()));
  Json out;
  out["field"] = f.str();
  out["degree"] = curve.degree();
  out["form"] = curve.form().str();

  Json pts = Json::array();
  for (const auto& q : classified_singular_locus(curve)) {
    Json jp;
    jp["chart"] = q.chart;
    jp["modulus"] = poly_str(q.modulus, "t");
    jp["x"] = poly_str(q.x, "t");
    jp["y"] = poly_str(q.y, "t");
    jp["class"] = sing_class_name(q.cls);
    if (q.cls == SingClass::Node) {
      jp["weight"] = poly_str(q.hess, "t");
      jp["weight_norm"] = q.hess_norm.str();
    }
    pts.push_back(std::move(jp));
  }
  out["singular_points"] = std::move(pts);

  WelschingerOptions opt;
  opt.allow_any_node_count = spec.value("allow_any_node_count", false);
  opt.assume_integral = spec.value("assume_integral", false);
  try {
    const WelschingerClass w = welschinger_class(curve, opt);
    Json jw;
    jw["unit"] = square_class_strip(w.unit).str();
    jw["node_degree_total"] = w.node_degree_total;
    out["wel"] = std::move(jw);
  } catch (const gw_error& e) {
    if (e.code() != errc::not_a_node && e.code() != errc::wrong_node_count &&
        e.code() != errc::bad_argument)
      throw;
    out["wel"] = nullptr;
    out["wel_error"] = e.what();
  }
  return out;
}

Json cmd_move(const Json& spec) {
  const int degree = degree_of(spec);
  const FieldDescriptor f = field_of(spec);
  const std::uint64_t seed = seed_of(spec);
  PointConfiguration a, b;
  if (spec.contains("points")) {
    a = config_from_json(f, spec["points"]);
  } else {
    a = generate_config(f, spec.value("type", default_type(degree)), seed,
                        bound_of(spec));
  }
  if (spec.contains("points_b")) {
    b = config_from_json(f, spec["points_b"]);
  } else {
    const std::uint64_t seed_b = spec.value("seed_b", seed + 1);
    b = generate_config(f, spec.value("type", default_type(degree)), seed_b,
                        bound_of(spec));
  }
  const MoveReport mr = move_test(a, b, degree, seed);
  Json out;
  out["degree"] = degree;
  out["a"] = count_json(a, mr.a, verbosity_of(spec));
  out["b"] = count_json(b, mr.b, verbosity_of(spec));
  out["same_type"] = mr.same_type;
  if (mr.same_type) {
    out["equal"] = mr.eq.equal;
    out["certified"] = mr.eq.certified;
    if (!mr.eq.equal) out["witness"] = mr.eq.witness;
  }
  return out;
}

Json cmd_recursion(const Json& spec) {
  const int maxd = spec.value("max", 5);
  require(maxd >= 1 && maxd <= 12, errc::bad_argument,
          "'max' must be in [1, 12]");
  Json table = Json::array();
  for (int d = 1; d <= maxd; ++d) {
    Json row;
    row["d"] = d;
    row["N"] = kontsevich_N(d).get_str();
    table.push_back(std::move(row));
  }
  Json out;
  out["max"] = maxd;
  out["table"] = std::move(table);
  return out;
}

struct SuitePlan {
  const char* name;
  int default_trials;
  bool (*pinned)();
  std::string (*trial)(std::uint64_t);
};

Json cmd_verify(const Json& spec) {
  static const SuitePlan plans[] = {
      {"cusp", 100, cusp_pinned, cusp_trial},
      {"tacnode", 50, tacnode_pinned, tacnode_trial},
      {"triple", 20, triple_pinned, triple_trial},
      {"residues", 100, residue_pinned, residue_trial},
  };
  const std::string which = spec.value("suite", "all");
  bool found = which == "all";
  for (const auto& p : plans) found = found || which == p.name;
  require(found, errc::bad_argument,
          "unknown suite '" + which + "' (cusp|tacnode|triple|residues|all)");

  const std::uint64_t seed = seed_of(spec);
  const int threads = thread_budget(spec);
  Json suites = Json::array();
  bool all_passed = true;
  for (const auto& p : plans) {
    if (which != "all" && which != p.name) continue;
    int trials = p.default_trials;
    if (spec.contains("trials") && spec["trials"].is_object() &&
        spec["trials"].contains(p.name))
      trials = spec["trials"][p.name].get<int>();
    require(trials >= 1 && trials <= 100000, errc::bad_argument,
            "trial count out of range");
    const std::uint64_t suite_seed = child_seed(seed, p.name);
    const auto fn = p.trial;
    const auto fails = parallel_trials(
        trials, threads, [suite_seed, fn](int i) {
          return fn(child_seed(suite_seed, "trial",
                               static_cast<std::uint64_t>(i)));
        });
    Json sj = suite_json(p.name, fails, trials, p.pinned());
    all_passed = all_passed && sj["passed"].get<bool>();
    suites.push_back(std::move(sj));
  }
  Json out;
  out["suites"] = std::move(suites);
  out["passed"] = all_passed;
  return out;
}

int exit_for(errc c) {
  switch (c) {
    case errc::not_generic:
      return 2;
    case errc::zero_divisor:
    case errc::zero_element:
    case errc::factorization_limit:
    case errc::internal:
      return 4;
    default:
      return 3;
  }
}

const char* status_for(int exit_code) {
  switch (exit_code) {
    case 0: return "ok";
    case 2: return "not-generic";
    case 3: return "input-error";
    default: return "internal-error";
  }
}

}  // namespace

RunResult run_command(const Json& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult rr;
  rr.report["schema"] = "gwwel-report/1";
  rr.report["version"] = version_string();
  std::string command = "?";
  try {
    require(spec.is_object(), errc::parse_error, "run spec must be a JSON object");
    require(spec.contains("command") && spec["command"].is_string(),
            errc::parse_error, "run spec needs a string 'command'");
    command = spec["command"].get<std::string>();
    rr.report["command"] = command;
    Json result;
    if (command == "count") {
      result = cmd_count(spec, false);
    } else if (command == "oracle") {
      result = cmd_count(spec, true);
    } else if (command == "curve") {
      result = cmd_curve(spec);
    } else if (command == "move-test") {
      result = cmd_move(spec);
    } else if (command == "recursion") {
      result = cmd_recursion(spec);
    } else if (command == "verify") {
      result = cmd_verify(spec);
    } else {
      fail(errc::parse_error, "unknown command '" + command + "'");
    }
    rr.report["status"] = "ok";
    rr.report["result"] = std::move(result);
    rr.exit_code = 0;
    if (command == "verify" && !rr.report["result"]["passed"].get<bool>())
      rr.exit_code = 1;  // ran to completion, but a verification suite is red
  } catch (const gw_error& e) {
    rr.report["command"] = command;
    rr.exit_code = exit_for(e.code());
    rr.report["status"] = status_for(rr.exit_code);
    rr.report["error"] = e.what();
  } catch (const std::exception& e) {
    rr.report["command"] = command;
    rr.exit_code = 4;
    rr.report["status"] = "internal-error";
    rr.report["error"] = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  rr.report["timing"] = {
      {"seconds",
       std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() /
           1000.0}};
  return rr;
}

RunResult run_command_text(const std::string& spec_text) {
  Json spec = Json::parse(spec_text, nullptr, false);
  if (spec.is_discarded()) {
    RunResult rr;
    rr.report["schema"] = "gwwel-report/1";
    rr.report["version"] = version_string();
    rr.report["command"] = "?";
    rr.report["status"] = "input-error";
    rr.report["error"] = "ParseError: run spec is not valid JSON";
    rr.exit_code = 3;
    return rr;
  }
  return run_command(spec);
}

}  // namespace gww
