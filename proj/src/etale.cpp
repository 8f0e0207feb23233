#include "gwwel/etale.hpp"

#include <algorithm>

namespace gww {

namespace detail {

struct Fam {
  FieldDescriptor field;
  std::vector<PolyFS> comps;  // monic, pairwise coprime, product squarefree
  std::vector<std::weak_ptr<std::vector<PolyFS>>> live;
  int version = 0;

  void attach(const std::shared_ptr<std::vector<PolyFS>>& r) {
    live.erase(std::remove_if(live.begin(), live.end(),
                              [](const auto& w) { return w.expired(); }),
               live.end());
    live.push_back(r);
  }

  // comps[idx] = g * h with g a proper monic factor; every live element's
  // representative splits in place
  void split(int idx, const PolyFS& g) {
    PolyFS h = divrem(comps[idx], g).quot;
    comps[idx] = g;
    comps.insert(comps.begin() + idx + 1, h);
    for (auto& w : live) {
      auto r = w.lock();
      if (!r) continue;
      PolyFS cur = (*r)[idx];
      (*r)[idx] = poly_mod(cur, comps[idx]);
      r->insert(r->begin() + idx + 1, poly_mod(cur, comps[idx + 1]));
    }
    ++version;
  }
};

}  // namespace detail

EtaleAlgebra EtaleAlgebra::make(const PolyFS& modulus) {
  require(!modulus.is_zero() && modulus.degree() >= 1, errc::bad_argument,
          "algebra modulus must be nonconstant");
  require(modulus.degree() <= kDegreeCap, errc::degree_cap_exceeded,
          "algebra modulus exceeds degree cap");
  require(is_squarefree(modulus), errc::not_squarefree,
          "algebra modulus is not squarefree");
  EtaleAlgebra a;
  a.fam_ = std::make_shared<detail::Fam>();
  a.fam_->field = modulus.lc().field();
  a.fam_->comps = {make_monic(modulus)};
  return a;
}

const FieldDescriptor& EtaleAlgebra::field() const { return fam_->field; }
int EtaleAlgebra::num_components() const {
  return static_cast<int>(fam_->comps.size());
}
const PolyFS& EtaleAlgebra::component(int i) const {
  require(i >= 0 && i < num_components(), errc::bad_argument, "component index");
  return fam_->comps[i];
}
int EtaleAlgebra::dimension() const {
  int d = 0;
  for (const auto& m : fam_->comps) d += m.degree();
  return d;
}
int EtaleAlgebra::version() const { return fam_->version; }

AlgebraElement EtaleAlgebra::element(const PolyFS& rep) const {
  std::vector<PolyFS> reps;
  reps.reserve(fam_->comps.size());
  for (const auto& m : fam_->comps) reps.push_back(poly_mod(rep, m));
  return AlgebraElement(*this, std::move(reps));
}

AlgebraElement EtaleAlgebra::generator() const {
  PolyFS t = PolyFS::variable(FieldScalar::one(fam_->field));
  return element(t);
}

AlgebraElement EtaleAlgebra::scalar(const FieldScalar& v) const {
  return element(PolyFS::constant(v));
}

AlgebraElement::AlgebraElement(EtaleAlgebra alg, std::vector<PolyFS> reps)
    : alg_(std::move(alg)),
      rep_(std::make_shared<std::vector<PolyFS>>(std::move(reps))) {
  alg_.fam_->attach(rep_);
}

AlgebraElement::AlgebraElement(const AlgebraElement& o) : alg_(o.alg_) {
  if (!o.rep_) return;
  rep_ = std::make_shared<std::vector<PolyFS>>(*o.rep_);
  alg_.fam_->attach(rep_);
}

AlgebraElement& AlgebraElement::operator=(const AlgebraElement& o) {
  if (this == &o) return *this;
  alg_ = o.alg_;
  rep_.reset();
  if (o.rep_) {
    rep_ = std::make_shared<std::vector<PolyFS>>(*o.rep_);
    alg_.fam_->attach(rep_);
  }
  return *this;
}

const std::vector<PolyFS>& AlgebraElement::reps() const {
  require(rep_ != nullptr, errc::bad_argument, "empty algebra element");
  return *rep_;
}

bool AlgebraElement::is_zero() const {
  for (const auto& r : reps())
    if (!r.is_zero()) return false;
  return true;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require(alg_.fam_ == o.alg_.fam_, errc::bad_argument,
          "elements of different algebras");
  const auto& a = reps();
  const auto& b = o.reps();
  std::vector<PolyFS> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return AlgebraElement(alg_, std::move(r));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  return *this + (-o);
}

AlgebraElement AlgebraElement::operator-() const {
  const auto& a = reps();
  std::vector<PolyFS> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return AlgebraElement(alg_, std::move(r));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  require(alg_.fam_ == o.alg_.fam_, errc::bad_argument,
          "elements of different algebras");
  const auto& a = reps();
  const auto& b = o.reps();
  std::vector<PolyFS> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = poly_mod(a[i] * b[i], alg_.fam_->comps[i]);
  return AlgebraElement(alg_, std::move(r));
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  require(alg_.fam_ == o.alg_.fam_, errc::bad_argument,
          "elements of different algebras");
  return reps() == o.reps();
}

bool AlgebraElement::is_unit() const {
  return invert_or_split(*this).inverse.has_value();
}

Splitting invert_or_split(const AlgebraElement& a) {
  auto fam = a.alg_.fam_;
  Splitting out;
  for (int i = 0; i < static_cast<int>(fam->comps.size()); ++i) {
    const PolyFS r = (*a.rep_)[i];
    if (r.is_zero()) {
      out.zero_components.push_back(i);
      continue;
    }
    PolyFS g = gcd_poly(r, fam->comps[i]);
    if (g.degree() == 0) continue;  // unit on this component
    // proper factor (r reduced and nonzero rules out g = comps[i])
    fam->split(i, g);
    --i;  // revisit: index i is now the zero part
  }
  if (!out.zero_components.empty()) return out;
  std::vector<PolyFS> inv(fam->comps.size());
  for (std::size_t i = 0; i < fam->comps.size(); ++i) {
    XGcd xg = xgcd_poly((*a.rep_)[i], fam->comps[i]);
    require(xg.g.degree() == 0 && !xg.g.is_zero(), errc::internal,
            "unit certification failed");
    inv[i] = poly_mod(xg.u, fam->comps[i]);
  }
  out.inverse = AlgebraElement(a.alg_, std::move(inv));
  return out;
}

std::vector<FieldScalar> power_traces(const PolyFS& monic_modulus, int count) {
  const PolyFS& m = monic_modulus;
  require(!m.is_zero() && m.lc().is_one(), errc::bad_argument,
          "power traces need a monic modulus");
  const int n = m.degree();
  const FieldDescriptor f = m.lc().field();
  std::vector<FieldScalar> p(std::max(count, 0));
  if (count <= 0) return p;
  p[0] = FieldScalar::integer(f, n);
  // Newton's identities for p_s = sum of s-th powers of the roots:
  //   s <= n:  p_s = -s*c_{n-s} - sum_{i=1}^{s-1} c_{n-i} p_{s-i}
  //   s >  n:  p_s = -sum_{i=1}^{n} c_{n-i} p_{s-i}
  for (int s = 1; s < count; ++s) {
    FieldScalar acc;
    const int top = std::min(s, n);
    for (int i = 1; i <= top; ++i) {
      if (i == s) {
        acc = acc + FieldScalar::integer(f, s) * m.coeff(n - s);
      } else {
        acc = acc + m.coeff(n - i) * p[s - i];
      }
    }
    p[s] = -acc;
  }
  return p;
}

FieldScalar AlgebraElement::trace() const {
  FieldScalar out = FieldScalar::zero(alg_.field());
  const auto& comps = alg_.fam_->comps;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const PolyFS& r = (*rep_)[i];
    if (r.is_zero()) continue;
    auto pt = power_traces(comps[i], r.degree() + 1);
    for (int j = 0; j <= r.degree(); ++j) out = out + r.coeff(j) * pt[j];
  }
  return out;
}

FieldScalar AlgebraElement::norm() const {
  FieldScalar out = FieldScalar::one(alg_.field());
  const auto& comps = alg_.fam_->comps;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const PolyFS& r = (*rep_)[i];
    if (r.is_zero()) return FieldScalar::zero(alg_.field());
    // modulus monic, so Res(m, r) = prod over roots of m of r
    out = out * resultant_nocap(comps[i], r);
  }
  return out;
}

std::vector<std::vector<FieldScalar>> trace_form_gram(const AlgebraElement& e) {
  const auto& comps = e.alg_.fam_->comps;
  const FieldDescriptor f = e.alg_.field();
  int dim = 0;
  for (const auto& m : comps) dim += m.degree();
  std::vector<std::vector<FieldScalar>> gram(
      dim, std::vector<FieldScalar>(dim, FieldScalar::zero(f)));
  int off = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int n = comps[i].degree();
    const PolyFS& r = (*e.rep_)[i];
    // Tr(e * t^s) for s = 0..2n-2
    std::vector<FieldScalar> w(2 * n - 1, FieldScalar::zero(f));
    if (!r.is_zero()) {
      auto pt = power_traces(comps[i], r.degree() + 2 * n - 1);
      for (int s = 0; s < 2 * n - 1; ++s) {
        // reduce e*t^s mod m implicitly: Tr is linear, t^s shift on coeffs
        FieldScalar acc;
        for (int j = 0; j <= r.degree(); ++j)
          acc = acc + r.coeff(j) * pt[j + s];
        w[s] = acc.is_zero() ? FieldScalar::zero(f) : acc;
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) gram[off + a][off + b] = w[a + b];
    off += n;
  }
  return gram;
}

std::optional<PolyFS> ComponentContext::invert(const PolyFS& a) const {
  PolyFS r = reduce(a);
  if (r.is_zero()) return std::nullopt;
  PolyFS g = gcd_poly(r, m_);
  if (g.degree() > 0) throw detail::SplitFound{g};
  XGcd xg = xgcd_poly(r, m_);
  require(xg.g.degree() == 0 && !xg.g.is_zero(), errc::internal,
          "unit certification failed");
  return poly_mod(xg.u, m_);
}

}  // namespace gww
