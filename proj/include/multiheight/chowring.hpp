// Classes in the truncated ring R[eta, theta_1..theta_m]/(eta^2, theta_i^{n_i+1}).
#pragma once

#include <vector>

#include "multiheight/measures.hpp"
#include "multiheight/polycore.hpp"

namespace mh {

enum class ScalarKind { Z, ff };

// Index vectors b, c are "complementary": deg(b) is the coefficient of
// theta^{n-b} and ht(c) the coefficient of eta*theta^{n-c}.
class ChowClass {
 public:
  ChowClass() = default;
  ChowClass(std::vector<int> dims, ScalarKind kind);

  static ChowClass one(std::vector<int> dims, ScalarKind kind);
  static ChowClass theta(std::vector<int> dims, ScalarKind kind, int group);
  static ChowClass eta(std::vector<int> dims, ScalarKind kind);

  const std::vector<int>& dims() const { return dims_; }
  ScalarKind kind() const { return kind_; }
  int box_size() const { return static_cast<int>(deg_.size()); }

  // Coefficients addressed by theta exponent e (0 <= e <= n).
  const mpz_class& deg_at_exp(const std::vector<int>& e) const { return deg_[flat(e)]; }
  const HeightScalar& ht_at_exp(const std::vector<int>& e) const { return ht_[flat(e)]; }
  void set_deg_exp(const std::vector<int>& e, const mpz_class& v) { deg_[flat(e)] = v; }
  void set_ht_exp(const std::vector<int>& e, const HeightScalar& v);

  // Mixed degree deg_b and height h_c.
  mpz_class deg(const std::vector<int>& b) const;
  HeightScalar ht(const std::vector<int>& c) const;
  void set_deg(const std::vector<int>& b, const mpz_class& v);
  void set_ht(const std::vector<int>& c, const HeightScalar& v);

  ChowClass operator+(const ChowClass& o) const;
  ChowClass scaled(const mpz_class& k) const;
  // Multiplies the eta part by a real (Z kind) or integer (ff kind).
  ChowClass with_eta_scaled(double k) const;

  bool degree_part_equal(const ChowClass& o) const;
  bool operator==(const ChowClass& o) const;

  // All theta exponent vectors in the box, in flat order.
  std::vector<std::vector<int>> exponents() const;
  std::vector<int> unflat(int idx) const;
  int flat(const std::vector<int>& e) const;

  std::string to_string() const;

 private:
  friend ChowClass cc_mul(const ChowClass&, const ChowClass&);
  friend ChowClass product_class(const ChowClass&, const ChowClass&);
  friend bool cc_leq(const ChowClass&, const ChowClass&);
  void check_same(const ChowClass& o) const;

  std::vector<int> dims_;
  ScalarKind kind_ = ScalarKind::Z;
  std::vector<mpz_class> deg_;
  std::vector<HeightScalar> ht_;
};

HeightScalar hs_add(const HeightScalar& a, const HeightScalar& b);
HeightScalar hs_scale(const HeightScalar& a, const mpz_class& k);
bool hs_leq(const HeightScalar& a, const HeightScalar& b);

ChowClass cc_mul(const ChowClass& a, const ChowClass& b);
ChowClass cc_pow(const ChowClass& a, int k);
bool cc_leq(const ChowClass& a, const ChowClass& b);

// sum_i deg_{x_i}(f) theta_i + h eta, h from divisor_height in the given mode.
ChowClass class_of_divisor(const MPoly& f, DivisorMode mode, double tol = 1e-9);
// Same with log of the l1 norm as the eta coefficient.
ChowClass class_sup(const MPoly& f);
ChowClass class_of_point(const std::vector<std::vector<mpz_class>>& coords);
ChowClass class_of_point(const std::vector<std::vector<MPoly>>& coords);
// h eta theta^{n-r-1} + deg theta^{n-r} in P^n.
ChowClass class_of_cycle_summary(int r, const mpz_class& deg, const HeightScalar& h, int n);
// Degree-only class from mixed degrees deg_b, |b| = r.
ChowClass class_from_mixed_degrees(const std::vector<int>& dims,
                                   const std::vector<std::pair<std::vector<int>, mpz_class>>& degs);

ChowClass bezout_upper(const ChowClass& x, const std::vector<ChowClass>& fs);
mpz_class intersection_count(const std::vector<ChowClass>& divisors);
ChowClass product_class(const ChowClass& a, const ChowClass& b);

struct CycleSummary {
  int n = 0;
  int r = 0;
  mpz_class deg;
  HeightScalar h;
};
// Reads (r, deg, h) from a single-group class with one nonzero degree entry.
CycleSummary summarize(const ChowClass& c);
ChowClass join_class(const ChowClass& a, const ChowClass& b);

// theta^{n-l} * pi_class <= x.
bool projection_compare(const ChowClass& pi_class, const ChowClass& x);

}  // namespace mh
