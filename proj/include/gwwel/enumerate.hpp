#pragma once

// Point configurations in the projective plane, pencil elimination, and the
// Grothendieck-Witt valued count of nodal rational plane curves of degree
// d <= 3 through 3d - 1 given closed points.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gwwel/curvesing.hpp"
#include "gwwel/gwforms.hpp"
#include "gwwel/poly.hpp"
#include "gwwel/scalars.hpp"

namespace gww {

// ----- point configurations ------------------------------------------------

// One closed point of P^2: a Galois orbit cut out by a monic squarefree
// modulus g(t) of degree 1..3, with projective coordinates given as
// polynomials in the class of t.  Rational points have deg g = 1 and
// constant coordinates.
struct ConfigPoint {
  PolyFS modulus;  // monic, squarefree, degree 1..3
  PolyFS x, y, z;  // coordinate representatives mod modulus
  int degree() const { return modulus.degree(); }
};

struct PointConfiguration {
  FieldDescriptor field;
  std::vector<ConfigPoint> points;

  int total_degree() const;
  std::vector<int> extension_type() const;  // orbit degrees, descending
  std::string type_str() const;             // e.g. "6x1,1x2"
};

ConfigPoint affine_point(const FieldScalar& x, const FieldScalar& y);
ConfigPoint projective_point(const FieldScalar& x, const FieldScalar& y,
                             const FieldScalar& z);
// orbit of degree deg(g); coordinates are reduced mod g, z defaults to 1
ConfigPoint orbit_point(const PolyFS& g, const PolyFS& x, const PolyFS& y);
ConfigPoint orbit_point(const PolyFS& g, const PolyFS& x, const PolyFS& y,
                        const PolyFS& z);

// shape checks: compatible fields, monic squarefree moduli of degree 1..3,
// nonzero coordinate triples; throws bad_argument
void validate_config(const PointConfiguration& cfg);

// Seeded random configuration with the given extension type over f, written
// "<count>x<degree>,..." as in "8x1" or "6x1,1x2".  Rational coordinates are
// drawn from [-bound, bound].  Over the rationals a degree-2 orbit is a
// conjugate pair (modulus t^2 + m, m > 0) and a degree-3 orbit has exactly
// one real place, so the extension type determines the real point count;
// over a finite field the moduli are merely squarefree.  Draws that impose
// dependent linear conditions are redrawn a bounded number of times.
PointConfiguration generate_config(const FieldDescriptor& f,
                                   const std::string& type, std::uint64_t seed,
                                   long bound = 20);

// apply an invertible projective change of coordinates to every point
PointConfiguration transform_config(const PointConfiguration& cfg,
                                    const std::array<std::array<FieldScalar, 3>, 3>& m);

// ----- linear conditions ---------------------------------------------------

// Basis of the space of degree-d forms vanishing on the configuration.
// Orbit points contribute deg(g) rows by coefficient comparison mod g.
// Throws not_generic when the conditions are dependent.
std::vector<TernaryForm> interpolate_curves(const PointConfiguration& cfg,
                                            int degree);

// ----- the count -----------------------------------------------------------

// One node orbit of the pencil: the component of the parameter algebra it
// lives over, its affine coordinates in the chart X2 = 1, and the Hessian
// determinant class of the member curve at the node.
struct NodeSummary {
  PolyFS modulus;  // monic factor of the pencil discriminant
  PolyFS x, y;     // node coordinates mod modulus
  PolyFS weight;   // local weight e = det Hess mod modulus
};

struct CountDiagnostics {
  int basis_twist = 0;        // pencil basis mix that succeeded
  int coordinate_change = 0;  // 0 = input coordinates, else change index
  std::vector<std::string> change_matrix;  // rows of the applied change
  int discriminant_degree = 0;
  double seconds = 0.0;
};

struct CountReport {
  int degree = 0;
  std::string type;  // extension type of the configuration
  QuadForm wel;      // the Grothendieck-Witt valued count
  GWInvariants invariants;
  std::vector<NodeSummary> nodes;  // degree 3 only
  CountDiagnostics diag;
};

// The GW-valued count of rational degree-d curves through cfg (d <= 3, with
// 3d - 1 point conditions).  Degenerate configurations throw not_generic;
// elimination artifacts are retried internally over a few pencil bases and
// seeded projective coordinate changes before giving up.
CountReport welschinger_number(const PointConfiguration& cfg, int degree,
                               std::uint64_t seed = 0);

// ----- numeric signature oracle ---------------------------------------------

struct OracleResult {
  bool conclusive = false;
  int signature = 0;   // valid when conclusive
  int real_nodes = 0;  // node orbits counted with real parameter values
  std::string reason;  // why inconclusive
};

// Independent floating-point check of the signature over the rationals:
// finds the parameter values of the nodal members numerically (Aberth
// iteration in extended precision) and sums the signs of the node weights
// over the real ones.  Declines to answer when roots are too close, a root
// is neither clearly real nor clearly complex, or a weight is too small to
// sign; it never returns a wrong signature silently.
OracleResult real_signature_oracle(const CountReport& report);

// ----- moves and recursion ---------------------------------------------------

struct MoveReport {
  CountReport a, b;
  bool same_type = false;  // extension types agree, so the classes must match
  EquivalenceResult eq;    // meaningful when same_type
};

// the count on both configurations; when the extension types agree the two
// classes are compared and the result recorded
MoveReport move_test(const PointConfiguration& a, const PointConfiguration& b,
                     int degree, std::uint64_t seed = 0);

// number of rational degree-d curves through 3d - 1 general complex points:
// 1, 1, 12, 620, 87304, ... (1 <= d <= 12)
mpz_class kontsevich_N(int d);

}  // namespace gww
