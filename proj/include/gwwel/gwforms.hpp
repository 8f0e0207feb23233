#pragma once

#include <array>
#include <string>
#include <vector>

#include "gwwel/etale.hpp"
#include "gwwel/poly.hpp"

namespace gww {

// Symmetric bilinear form over K, given by its Gram matrix.
struct QuadForm {
  FieldDescriptor field;
  std::vector<std::vector<FieldScalar>> gram;

  static QuadForm from_gram(const FieldDescriptor& f,
                            std::vector<std::vector<FieldScalar>> g);
  static QuadForm diagonal(const FieldDescriptor& f,
                           std::vector<FieldScalar> entries);
  int dim() const { return static_cast<int>(gram.size()); }
};

// Congruence diagonalization (char != 2); zero entries are kept, so the
// number of nonzero outputs is the rank.
std::vector<FieldScalar> diagonalize(const QuadForm& q);

QuadForm orth_sum(const QuadForm& a, const QuadForm& b);
QuadForm tensor(const QuadForm& a, const QuadForm& b);

// Scharlau-style transfer: Gram of (u, v) -> Tr_{L/K}(e u v) on the monomial
// basis of the etale algebra of e.
QuadForm transfer_trace(const AlgebraElement& e);

// Classifying data of a nondegenerate form.
//   rank       dimension
//   signature  #positive - #negative diagonal entries (rationals; else 0)
//   disc       raw determinant square-class representative (unreduced)
//   diag       a diagonalization, kept as evidence for on-demand symbols
//   hasse      Hasse symbol at each enumerated place (rationals only)
//   complete   every entry factored in budget, so `hasse` provably covers
//              all ramified places and the invariants are a full certificate
struct GWInvariants {
  long rank = 0;
  long signature = 0;
  FieldScalar disc;
  std::vector<FieldScalar> diag;
  std::vector<std::pair<QPlace, int>> hasse;
  bool complete = false;
};

// Throws zero_element on a degenerate form.
GWInvariants gw_invariants(const QuadForm& q);

// Hasse symbol of <diag> at one place; exact, rationals only.
int hasse_at(const std::vector<FieldScalar>& diag, const QPlace& v);

// Everything that was checked agreed / disagreed; `certified` means the
// comparison amounts to a full Hasse-Minkowski certificate (finite fields:
// always; rationals: both sides complete, or a checked invariant differed).
struct EquivalenceResult {
  bool equal = false;
  bool certified = false;
  std::string witness;  // first disagreeing invariant, if any
};
EquivalenceResult equivalent(const GWInvariants& a, const GWInvariants& b);

// true: certified Witt-trivial; false: certified nontrivial; throws
// factorization_limit when the entries cannot be certified either way.
bool witt_trivial(const QuadForm& q);

// ----- forms over the rational function field K(s) ------------------------------

// Diagonal form over K(s), for the one-parameter family checks.
struct FunctionFieldForm {
  FieldDescriptor field;  // the constant field K
  std::vector<RationalFunction> diag;
};

// Diagonalization of a symmetric Gram matrix over K(s).
FunctionFieldForm diagonalize_ff(const FieldDescriptor& f,
                                 const std::vector<std::vector<RationalFunction>>& gram);

// Second-residue form at the place: keep entries of odd valuation, evaluated
// unit parts; this is a diagonal form over the residue field K.
std::vector<FieldScalar> second_residue(const FunctionFieldForm& form,
                                        const FunctionPlace& place);

// Residue form Witt-trivial at the place (certified; may throw
// factorization_limit like witt_trivial).
bool is_unramified(const FunctionFieldForm& form, const FunctionPlace& place);

// ----- local model family forms ---------------------------------------------------

// Two-parameter presentation y^2 = x^3 family data near a cusp degeneration:
// the Gram of the bilinear form carried by the vanishing cycle pair, as a
// function of the family parameter s.  `raw` keeps the natural basis; in
// `reduced` the second basis vector is divided by s, which removes the
// uniform s factor and exposes a form regular at s = 0.
// Requires U1(0) != 0 and v(0) != 0 (unit_condition_violated otherwise).
struct CuspFamilyForms {
  std::array<std::array<RationalFunction, 2>, 2> raw;
  std::array<std::array<RationalFunction, 2>, 2> reduced;
};
CuspFamilyForms cusp_family_forms(const PolyFS& U1, const PolyFS& V1,
                                  const PolyFS& P, const PolyFS& v);

}  // namespace gww
