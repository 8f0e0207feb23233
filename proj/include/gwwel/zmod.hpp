#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "gwwel/poly.hpp"

namespace gww {

// Word-size prime-field kernels used by the multi-modular eliminant engine.
// These back the heavy degree-~60 resultant/gcd work; correctness of the
// combined result is certified by the callers' residual checks, not here.
namespace zp {

std::uint64_t add(std::uint64_t p, std::uint64_t a, std::uint64_t b);
std::uint64_t sub(std::uint64_t p, std::uint64_t a, std::uint64_t b);
std::uint64_t mul(std::uint64_t p, std::uint64_t a, std::uint64_t b);
std::uint64_t pow(std::uint64_t p, std::uint64_t a, std::uint64_t e);
std::uint64_t inv(std::uint64_t p, std::uint64_t a);

// dense polynomial, v[i] = x^i coefficient, trimmed, empty = zero
using Vec = std::vector<std::uint64_t>;

int deg(const Vec& a);
void trim(Vec& a);
Vec rem(std::uint64_t p, Vec a, const Vec& b);
Vec quot_exact(std::uint64_t p, const Vec& a, const Vec& b);
Vec gcd_monic(std::uint64_t p, Vec a, Vec b);
Vec monic(std::uint64_t p, Vec a);
Vec derivative(std::uint64_t p, const Vec& a);
Vec squarefree_monic(std::uint64_t p, const Vec& a);
std::uint64_t eval(std::uint64_t p, const Vec& a, std::uint64_t x);
std::uint64_t resultant(std::uint64_t p, Vec a, Vec b);
Vec interpolate(std::uint64_t p, const std::vector<std::uint64_t>& xs,
                const std::vector<std::uint64_t>& ys);

}  // namespace zp

// Integer polynomial in two variables: c[i][j] is the x^i t^j coefficient
// (x is the eliminated variable, t the retained one).
struct ZXL {
  std::vector<std::vector<mpz_class>> c;
  int xdeg() const { return static_cast<int>(c.size()) - 1; }
  int tdeg() const;
  bool is_zero() const;
};

// Monic squarefree part of gcd(Res_x(A, B1), Res_x(A, B2)) in Q[t], computed
// by evaluation/interpolation modulo a stream of 62-bit primes with degree
// voting, CRT, and rational reconstruction stabilized over two extra primes.
// Throws not_generic when both eliminants vanish identically and internal
// when reconstruction fails to stabilize.
PolyFS eliminant_gcd_squarefree(const ZXL& A, const ZXL& B1, const ZXL& B2,
                                std::uint64_t seed);

// Rational reconstruction of r mod m into n/d with |n|, d <= sqrt(m/2).
bool rational_reconstruct(const mpz_class& r, const mpz_class& m, mpq_class& out);

}  // namespace gww
