#pragma once

#include <cstdint>
#include <vector>

#include "fr/error.hpp"

namespace fr {

// GF(p^m) with elements encoded as integers 0..p^m-1: the element
// sum_i c_i x^i is encoded as sum_i c_i p^i. The modulus is the
// lexicographically smallest monic irreducible of degree m over GF(p)
// unless an explicit one is supplied, and the stored primitive element
// is the smallest generator of the multiplicative group.
class FiniteField {
 public:
  FiniteField(int p, int m);
  FiniteField(int p, int m, const std::vector<int>& modulus);

  int p() const { return p_; }
  int m() const { return m_; }
  int order() const { return q_; }
  int primitive() const { return eta_; }
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long long e) const;

  // i-th base-p digit of the encoding, i.e. the coefficient of x^i.
  int digit(int a, int i) const;

 private:
  void init();
  int mul_slow(int a, int b) const;

  int p_ = 0;
  int m_ = 0;
  int q_ = 0;
  int eta_ = 0;
  std::vector<int> modulus_;       // length m+1, monic
  std::vector<int> exp_;           // exp_[i] = eta^i, i in [0, q-1)
  std::vector<int> log_;           // inverse of exp_ on nonzero elements
  std::vector<uint16_t> addtab_;   // q*q addition table
};

FiniteField gf(int p, int m);

// The byte field used by the simulator, modulus x^8+x^4+x^3+x+1.
const FiniteField& gf256();

bool is_prime(int n);
// Writes n = p^m for prime p when possible.
bool prime_power(int n, int& p, int& m);

// Gaussian binomial coefficient [m choose delta]_q.
long long gaussian_coefficient(int m, int delta, long long q);

}  // namespace fr
