#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gwwel/poly.hpp"

namespace gww {

class AlgebraElement;
struct Splitting;

namespace detail {
struct Fam;
}

// Finite etale algebra L = K[t]/(m) with m monic squarefree, held as a
// product of components K[t]/(m_i).  No factoring is done up front: the
// algebra starts as one component and splits lazily whenever an operation
// meets a zero divisor (dynamic evaluation).  Splits propagate eagerly to
// every live element of the same algebra.
class EtaleAlgebra {
 public:
  // modulus is made monic; rejects zero, non-squarefree input, and degrees
  // above the public cap
  static EtaleAlgebra make(const PolyFS& modulus);

  const FieldDescriptor& field() const;
  int num_components() const;
  const PolyFS& component(int i) const;
  int dimension() const;  // = deg m, invariant under splitting
  // monotonically increases with each split; lets callers notice refinement
  int version() const;

  AlgebraElement element(const PolyFS& rep) const;  // class of rep(t)
  AlgebraElement generator() const;                 // class of t
  AlgebraElement scalar(const FieldScalar& v) const;

 private:
  friend class AlgebraElement;
  friend Splitting invert_or_split(const AlgebraElement& a);
  friend std::vector<std::vector<FieldScalar>> trace_form_gram(
      const AlgebraElement& e);
  std::shared_ptr<detail::Fam> fam_;
};

struct Splitting;

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(const AlgebraElement& o);
  AlgebraElement(AlgebraElement&&) = default;
  AlgebraElement& operator=(const AlgebraElement& o);
  AlgebraElement& operator=(AlgebraElement&&) = default;
  ~AlgebraElement() = default;

  const EtaleAlgebra& algebra() const { return alg_; }
  bool is_zero() const;
  bool is_unit() const;  // may refine the algebra
  // current reduced representatives, one per component
  const std::vector<PolyFS>& reps() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  bool operator==(const AlgebraElement& o) const;

  FieldScalar trace() const;
  FieldScalar norm() const;

 private:
  friend class EtaleAlgebra;
  friend Splitting invert_or_split(const AlgebraElement& a);
  friend std::vector<std::vector<FieldScalar>> trace_form_gram(
      const AlgebraElement& e);
  AlgebraElement(EtaleAlgebra alg, std::vector<PolyFS> reps);
  EtaleAlgebra alg_;
  std::shared_ptr<std::vector<PolyFS>> rep_;
};

// outcome of invert_or_split after all induced refinements
struct Splitting {
  std::optional<AlgebraElement> inverse;     // set iff the element is a unit
  std::vector<int> zero_components;          // indices where the element is 0
};

// Inverts a, refining the component decomposition as needed.  After the call
// the element is, on each component, either zero or a unit; the inverse is
// returned when no zero components remain.
Splitting invert_or_split(const AlgebraElement& a);

// Gram matrix of (u, v) -> Tr_{L/K}(e * u * v) on the monomial basis of each
// component (block diagonal, blocks in component order).
std::vector<std::vector<FieldScalar>> trace_form_gram(const AlgebraElement& e);

// trace of multiplication by t^s on K[t]/(m), for s = 0..count-1 (Newton sums)
std::vector<FieldScalar> power_traces(const PolyFS& monic_modulus, int count);

// ----- component-at-a-time dynamic evaluation ---------------------------------

// View of one (current) component handed to for_each_component callbacks.
// invert() either returns the inverse mod modulus(), reports that the input
// is zero mod modulus() by returning nullopt, or aborts the callback with an
// internal split request when a proper factor shows up; the driver then
// restarts the callback on each factor.
class ComponentContext {
 public:
  explicit ComponentContext(PolyFS m) : m_(std::move(m)) {}
  const PolyFS& modulus() const { return m_; }
  PolyFS reduce(const PolyFS& a) const { return poly_mod(a, m_); }
  bool is_zero(const PolyFS& a) const { return reduce(a).is_zero(); }
  std::optional<PolyFS> invert(const PolyFS& a) const;

 private:
  PolyFS m_;
};

namespace detail {
struct SplitFound {
  PolyFS factor;  // proper monic factor of the active modulus
};
}  // namespace detail

template <class T>
struct ComponentResult {
  PolyFS modulus;
  T value;
};

// Runs fn over the components of the (monic, squarefree) modulus, splitting
// and restarting whenever fn trips over a zero divisor.  Components come out
// ordered by discovery; their modulus product equals the input.
template <class F>
auto for_each_component(const PolyFS& modulus, F&& fn)
    -> std::vector<ComponentResult<decltype(fn(std::declval<const ComponentContext&>()))>> {
  using T = decltype(fn(std::declval<const ComponentContext&>()));
  std::vector<ComponentResult<T>> out;
  std::vector<PolyFS> queue{make_monic(modulus)};
  require(!modulus.is_zero() && modulus.degree() >= 1, errc::bad_argument,
          "component iteration needs a nonconstant modulus");
  while (!queue.empty()) {
    PolyFS m = std::move(queue.back());
    queue.pop_back();
    ComponentContext ctx(m);
    try {
      out.push_back({m, fn(ctx)});
    } catch (const detail::SplitFound& s) {
      PolyFS g = s.factor;
      PolyFS h = divrem(m, g).quot;
      queue.push_back(std::move(h));
      queue.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace gww
