#pragma once

#include <string>
#include <vector>

#include "gwwel/etale.hpp"
#include "gwwel/poly.hpp"

namespace gww {

// ----- arithmetic on polynomials with coefficients in K[s]/(m) ----------------
//
// A Poly<PolyFS> here is a polynomial in a second variable whose coefficients
// are representatives mod ctx.modulus().  Inversions go through the context,
// so a zero divisor aborts the enclosing for_each_component callback and the
// computation restarts on the refined components.

Poly<PolyFS> component_reduce(const Poly<PolyFS>& a, const ComponentContext& ctx);
Poly<PolyFS> component_monic(const Poly<PolyFS>& a, const ComponentContext& ctx);
// remainder of a by monic b
Poly<PolyFS> component_rem(const Poly<PolyFS>& a, const Poly<PolyFS>& b,
                           const ComponentContext& ctx);
// monic gcd of all nonzero entries; zero poly when every entry reduces to 0
Poly<PolyFS> component_gcd(std::vector<Poly<PolyFS>> ps,
                           const ComponentContext& ctx);
PolyFS component_eval(const Poly<PolyFS>& a, const PolyFS& y0,
                      const ComponentContext& ctx);
Poly<PolyFS> component_derivative(const Poly<PolyFS>& a,
                                  const FieldDescriptor& f);

// f(xv, yv) reduced mod m, all operations in K[s]/(m)
PolyFS bivar_eval_mod(const Bivar& f, const PolyFS& xv, const PolyFS& yv,
                      const PolyFS& m);

// Thrown by component_common_root when two distinct solutions collapse into
// one component fiber; the caller should change its projection or basis and
// retry rather than treat the input as degenerate.
struct SeparationFailure {};

// Unique common root of a system of univariate polynomials with coefficients
// in K[s]/(m): takes the gcd, strips multiplicity, and validates the residual
// of every equation at the candidate.  Returns nullopt on a spurious
// component (no genuine common root), the root representative otherwise.
std::optional<PolyFS> component_common_root(const std::vector<Poly<PolyFS>>& eqs,
                                            const FieldDescriptor& fd,
                                            const ComponentContext& ctx);

// map a scalar into a compatible target field (identity, or F_p into F_{p^2})
FieldScalar promote_scalar(const FieldScalar& v, const FieldDescriptor& target);

// ----- plane curves ------------------------------------------------------------

// Reduced-degree projective plane curve F = 0.  Validates shape only;
// reducedness is detected by singular_locus when it matters.
class PlaneCurve {
 public:
  static PlaneCurve make(const TernaryForm& form);

  const FieldDescriptor& field() const { return form_.field(); }
  const TernaryForm& form() const { return form_; }
  int degree() const { return degree_; }
  Bivar affine(int chart) const { return form_.dehomogenize(chart); }

 private:
  TernaryForm form_;
  int degree_ = 0;
};

PlaneCurve base_change_curve(const PlaneCurve& c, const FieldDescriptor& target);

// ----- singular locus ----------------------------------------------------------

// One closed point (or finite disjoint union) of the singular locus: affine
// coordinates in the given chart are x(s), y(s) in K[s]/(modulus), with
// modulus monic squarefree.
struct SingularPoint {
  int chart = 2;
  PolyFS modulus, x, y;
  int degree() const { return modulus.degree(); }
};

struct LocusOptions {
  int max_projection_tries = 12;
};

// All singular points of C in P^2, grouped by chart: generic-projection
// elimination in the standard affine chart plus a sweep of the line at
// infinity.  Throws not_reduced when the singular locus has positive
// dimension and not_generic when no separating projection exists.
std::vector<SingularPoint> singular_locus(const PlaneCurve& c,
                                          const LocusOptions& opt = {});

// ----- analytic type of an isolated double/triple point ------------------------

enum class SingClass {
  NotSingular,
  Node,           // nondegenerate quadratic part
  Cusp,           // rank-1 quadratic part, cubic term off the kernel line
  Tacnode,        // rank-1, one step deeper, fourth-order data nonzero
  OrdinaryTriple, // zero quadratic part, separable tangent cone
  Degenerate,     // anything deeper
};
const char* sing_class_name(SingClass c);

struct ClassifiedPoint {
  int chart = 2;
  PolyFS modulus, x, y;
  SingClass cls = SingClass::NotSingular;
  PolyFS hess;            // Node only: Hessian determinant in K[s]/(modulus)
  FieldScalar hess_norm;  // Node only: its norm down to K
  int degree() const { return modulus.degree(); }
};

// May refine the point into several (the class or the Hessian behaviour can
// differ across components of a reducible modulus).
std::vector<ClassifiedPoint> classify_point(const PlaneCurve& c,
                                            const SingularPoint& p);

std::vector<ClassifiedPoint> classified_singular_locus(
    const PlaneCurve& c, const LocusOptions& opt = {});

// ----- the quadratic weight of a nodal curve -----------------------------------

struct WelschingerOptions {
  // skip the degree <= 3 integrality/node-count certificate
  bool allow_any_node_count = false;
  // caller vouches for integrality when degree > 3
  bool assume_integral = false;
};

struct WelschingerClass {
  FieldScalar unit;  // product over nodes of Nm(Hessian determinant)
  int node_degree_total = 0;
  std::vector<ClassifiedPoint> nodes;
};

// <prod_p Nm(e_p)> for a curve whose singularities are all ordinary double
// points; e_p is the Hessian determinant class at p.  For d <= 3 the node
// count certifies the curve is integral with geometric genus 0 (d=3: exactly
// one node; d<=2: none); other counts throw wrong_node_count unless
// allow_any_node_count is set.
WelschingerClass welschinger_class(const PlaneCurve& c,
                                   const WelschingerOptions& opt = {});

// ----- the tacnode deformation y^2 = (x+a)(x^2-u)^2 ------------------------------
//
// The deformed curve carries two nodes on the etale algebra K[t]/(t^2 - u),
// at (x, y) = (t, 0).  Each local weight is (-x-a) times the explicit square
// (4t)^2, and the norm down to K is a^2 - u up to squares.  This op builds
// the curve, classifies the two points, and checks all three statements
// exactly.  Needs a != 0, u != 0, a^2 != u (degenerate_parameters otherwise).
struct TacnodeCheck {
  int components = 0;         // split count (dynamic: 1 unless a zero divisor forced a split)
  bool nodes_ok = false;      // every component classified as an ordinary node
  bool weight_ok = false;     // hess = 16u * (-t-a) exactly on each component
  FieldScalar norm;           // product of the component norms
  bool norm_ok = false;       // norm ~ a^2 - u up to squares
};
TacnodeCheck tacnode_deformation_check(const FieldScalar& a,
                                       const FieldScalar& u);

}  // namespace gww
