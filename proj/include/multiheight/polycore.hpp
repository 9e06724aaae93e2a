// Sparse exact multivariate polynomials over Z or Q with variables split into
// named groups.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecMismatch : Error {
  using Error::Error;
};

enum class GroupKind { projective, affine, parameter, auxiliary };

std::string to_string(GroupKind k);
GroupKind group_kind_from_string(std::string_view s);

struct VarGroup {
  std::string name;
  int size = 1;
  GroupKind kind = GroupKind::affine;
  // Variable names. When left empty: a group of size one uses the group name,
  // otherwise name_j with j starting at 0 for projective groups and at 1 for
  // the other kinds.
  std::vector<std::string> vars;
};

class VarSpec {
 public:
  explicit VarSpec(std::vector<VarGroup> groups);

  int nvars() const { return static_cast<int>(names_.size()); }
  int ngroups() const { return static_cast<int>(groups_.size()); }
  const std::vector<VarGroup>& groups() const { return groups_; }
  const VarGroup& group(int g) const { return groups_.at(g); }
  int offset(int g) const { return offsets_.at(g); }

  std::optional<int> find_group(std::string_view name) const;
  int group_index(std::string_view name) const;  // throws on unknown name
  std::optional<int> find_var(std::string_view name) const;
  int var_index(std::string_view name) const;  // throws on unknown name
  const std::string& var_name(int v) const { return names_.at(v); }
  int group_of_var(int v) const { return group_of_.at(v); }

  std::vector<int> groups_of_kind(GroupKind k) const;
  std::vector<int> vars_of_group(int g) const;

  bool operator==(const VarSpec& o) const;

 private:
  std::vector<VarGroup> groups_;
  std::vector<int> offsets_;
  std::vector<std::string> names_;
  std::vector<int> group_of_;
};

using Spec = std::shared_ptr<const VarSpec>;

Spec make_spec(std::vector<VarGroup> groups);
bool same_spec(const Spec& a, const Spec& b);
// The spec obtained by deleting the named groups.
Spec spec_without(const Spec& s, const std::vector<std::string>& groups);
// Concatenation of two specs; group names must not clash.
Spec spec_concat(const Spec& a, const Spec& b);

using Exponent = std::vector<int32_t>;
using Term = std::pair<Exponent, mpq_class>;

enum class CoeffDomain { Integer, Rational };

// Graded-lex comparison: total degree first, then the first differing
// exponent decides. Returns true when a > b.
bool glex_greater(const Exponent& a, const Exponent& b);

class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(Spec spec, CoeffDomain dom = CoeffDomain::Integer);

  static MPoly constant(Spec spec, const mpq_class& c);
  static MPoly variable(Spec spec, int v);
  static MPoly variable(Spec spec, std::string_view name);
  static MPoly monomial(Spec spec, Exponent e, const mpq_class& c);
  // Combines repeated exponents, drops zeros and sorts. The domain is
  // Integer only if requested and every coefficient is an integer.
  static MPoly from_terms(Spec spec, std::vector<Term> terms,
                          CoeffDomain dom = CoeffDomain::Rational);

  const Spec& spec() const { return spec_; }
  CoeffDomain domain() const { return dom_; }
  // Terms in graded-lex descending order.
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // coefficient of the empty monomial
  const Term& leading_term() const;  // graded-lex leading term
  mpq_class coeff(const Exponent& e) const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in_var(int v) const;
  bool has_integer_coeffs() const;

  MPoly as_rational() const;
  MPoly as_integer() const;  // throws when a coefficient is not integral

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const mpq_class& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const mpq_class& c) { return a *= c; }
  friend MPoly operator*(const mpq_class& c, MPoly a) { return a *= c; }

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // Canonical text: graded-lex descending, explicit '*' and '^'.
  std::string to_string() const;

 private:
  void check_compatible(const MPoly& o) const;

  Spec spec_;
  CoeffDomain dom_ = CoeffDomain::Integer;
  std::vector<Term> terms_;
};

struct Ideal {
  Spec spec;
  std::vector<MPoly> gens;

  Ideal() = default;
  Ideal(Spec s, std::vector<MPoly> g);
};

MPoly mp_add(const MPoly& a, const MPoly& b);
MPoly mp_mul(const MPoly& a, const MPoly& b);
MPoly mp_pow(const MPoly& a, int e);

// Degree in the variables of one group; nullopt stands for the zero
// polynomial (degree minus infinity).
std::optional<int> partial_degree(const MPoly& f, std::string_view group);
std::optional<int> partial_degree(const MPoly& f, int group);
// Degree in the union of several groups.
int degree_in_groups(const MPoly& f, const std::vector<int>& groups);

struct MultiDegree {
  std::vector<int> d;  // one entry per projective group, in spec order
  bool zero = false;   // set for the zero polynomial
};

std::optional<MultiDegree> is_multihomogeneous(const MPoly& f);

// Replaces variables of f by polynomials. Unbound variables are carried over
// by name into the common spec of the replacements (or of `target` when
// given).
MPoly substitute(const MPoly& f, const std::map<int, MPoly>& bindings,
                 Spec target = nullptr);
MPoly substitute(const MPoly& f, const std::map<std::string, MPoly>& bindings,
                 Spec target = nullptr);

struct ContentSplit {
  mpz_class content;
  MPoly primitive;
};
ContentSplit content_and_primitive(const MPoly& f);

// Clears denominators, removes the integer content and fixes the sign so the
// graded-lex leading coefficient is positive. Zero maps to zero.
MPoly primitive_part(const MPoly& f);

// Terms of f whose exponents on `group` equal `pattern`, with the group
// removed from the spec.
MPoly coefficient_extract(const MPoly& f, std::string_view group,
                          const std::vector<int32_t>& pattern);

// Rewrites f into another spec by matching variable names.
MPoly respec(const MPoly& f, const Spec& target);

MPoly derivative(const MPoly& f, int v);

// Exact quotient a / b; throws if b does not divide a.
MPoly divexact(const MPoly& a, const MPoly& b);
// Returns the quotient if b divides a.
std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);

// Greatest common divisor over Q, returned as a primitive integer polynomial
// with positive leading coefficient (recursive primitive PRS).
MPoly mp_gcd(const MPoly& a, const MPoly& b);

// Content of f regarded as a polynomial in the variables outside `coeff_vars`
// with coefficients in Q[coeff_vars], made primitive.
MPoly content_in(const MPoly& f, const std::vector<int>& coeff_vars);
// f divided by content_in(f, coeff_vars), then made primitive over Z.
MPoly primitive_in(const MPoly& f, const std::vector<int>& coeff_vars);

// Squarefree part: f divided by gcd(f, df/dx_1, ..., df/dx_n), made primitive.
MPoly squarefree_part(const MPoly& f);

// Evaluates all variables at rational values.
mpq_class evaluate(const MPoly& f, const std::vector<mpq_class>& at);

// Homogeneous components with respect to a weight vector.
std::map<long long, MPoly> split_by_weight(const MPoly& f,
                                           const std::vector<long long>& w);

}  // namespace mh
