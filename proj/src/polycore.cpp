#include "multiheight/polycore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace mh {

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::projective: return "projective";
    case GroupKind::affine: return "affine";
    case GroupKind::parameter: return "parameter";
    case GroupKind::auxiliary: return "auxiliary";
  }
  return "?";
}

GroupKind group_kind_from_string(std::string_view s) {
  if (s == "projective") return GroupKind::projective;
  if (s == "affine") return GroupKind::affine;
  if (s == "parameter") return GroupKind::parameter;
  if (s == "auxiliary") return GroupKind::auxiliary;
  throw Error("unknown group kind '" + std::string(s) + "'");
}

VarSpec::VarSpec(std::vector<VarGroup> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw Error("variable spec needs at least one group");
  std::unordered_set<std::string> gnames, vnames;
  for (auto& g : groups_) {
    if (g.size <= 0) throw Error("group '" + g.name + "' must have positive size");
    if (!gnames.insert(g.name).second) throw Error("duplicate group name '" + g.name + "'");
    if (g.vars.empty()) {
      if (g.size == 1) {
        g.vars.push_back(g.name);
      } else {
        int base = g.kind == GroupKind::projective ? 0 : 1;
        for (int j = 0; j < g.size; ++j) g.vars.push_back(g.name + "_" + std::to_string(base + j));
      }
    }
    if (static_cast<int>(g.vars.size()) != g.size)
      throw Error("group '" + g.name + "' lists the wrong number of variables");
  }
  for (size_t gi = 0; gi < groups_.size(); ++gi) {
    offsets_.push_back(static_cast<int>(names_.size()));
    for (const auto& v : groups_[gi].vars) {
      if (!vnames.insert(v).second) throw Error("duplicate variable name '" + v + "'");
      names_.push_back(v);
      group_of_.push_back(static_cast<int>(gi));
    }
  }
}

std::optional<int> VarSpec::find_group(std::string_view name) const {
  for (size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int VarSpec::group_index(std::string_view name) const {
  auto g = find_group(name);
  if (!g) throw Error("unknown group '" + std::string(name) + "'");
  return *g;
}

std::optional<int> VarSpec::find_var(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int VarSpec::var_index(std::string_view name) const {
  auto v = find_var(name);
  if (!v) throw Error("unknown variable '" + std::string(name) + "'");
  return *v;
}

std::vector<int> VarSpec::groups_of_kind(GroupKind k) const {
  std::vector<int> out;
  for (size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i].kind == k) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> VarSpec::vars_of_group(int g) const {
  std::vector<int> out(groups_.at(g).size);
  std::iota(out.begin(), out.end(), offsets_.at(g));
  return out;
}

bool VarSpec::operator==(const VarSpec& o) const {
  if (groups_.size() != o.groups_.size()) return false;
  for (size_t i = 0; i < groups_.size(); ++i) {
    const auto& a = groups_[i];
    const auto& b = o.groups_[i];
    if (a.name != b.name || a.size != b.size || a.kind != b.kind || a.vars != b.vars) return false;
  }
  return true;
}

Spec make_spec(std::vector<VarGroup> groups) {
  return std::make_shared<const VarSpec>(std::move(groups));
}

bool same_spec(const Spec& a, const Spec& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Spec spec_without(const Spec& s, const std::vector<std::string>& groups) {
  for (const auto& g : groups) s->group_index(g);
  std::vector<VarGroup> keep;
  for (const auto& g : s->groups())
    if (std::find(groups.begin(), groups.end(), g.name) == groups.end()) keep.push_back(g);
  if (keep.empty()) {
    // A spec always has a group; keep an inert placeholder.
    keep.push_back(VarGroup{"_const", 1, GroupKind::auxiliary, {"_const"}});
  }
  return make_spec(std::move(keep));
}

Spec spec_concat(const Spec& a, const Spec& b) {
  std::vector<VarGroup> gs = a->groups();
  for (const auto& g : b->groups()) gs.push_back(g);
  return make_spec(std::move(gs));
}

bool glex_greater(const Exponent& a, const Exponent& b) {
  long long da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da > db;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

void normalize_terms(std::vector<Term>& t) {
  std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return glex_greater(x.first, y.first); });
  std::vector<Term> out;
  out.reserve(t.size());
  for (auto& term : t) {
    if (!out.empty() && out.back().first == term.first) {
      out.back().second += term.second;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.push_back(std::move(term));
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  t = std::move(out);
}

std::string coeff_string(const mpq_class& c) { return c.get_str(); }

}  // namespace

MPoly::MPoly(Spec spec, CoeffDomain dom) : spec_(std::move(spec)), dom_(dom) {
  if (!spec_) throw Error("polynomial needs a variable spec");
}

MPoly MPoly::constant(Spec spec, const mpq_class& c) {
  MPoly p(spec, is_integer(c) ? CoeffDomain::Integer : CoeffDomain::Rational);
  if (c != 0) p.terms_.emplace_back(Exponent(p.spec_->nvars(), 0), c);
  return p;
}

MPoly MPoly::variable(Spec spec, int v) {
  MPoly p(spec, CoeffDomain::Integer);
  if (v < 0 || v >= p.spec_->nvars()) throw Error("variable index out of range");
  Exponent e(p.spec_->nvars(), 0);
  e[v] = 1;
  p.terms_.emplace_back(std::move(e), mpq_class(1));
  return p;
}

MPoly MPoly::variable(Spec spec, std::string_view name) {
  int v = spec->var_index(name);
  return variable(std::move(spec), v);
}

MPoly MPoly::monomial(Spec spec, Exponent e, const mpq_class& c) {
  MPoly p(spec, is_integer(c) ? CoeffDomain::Integer : CoeffDomain::Rational);
  if (static_cast<int>(e.size()) != p.spec_->nvars()) throw Error("exponent length mismatch");
  for (auto x : e)
    if (x < 0) throw Error("negative exponent");
  if (c != 0) p.terms_.emplace_back(std::move(e), c);
  return p;
}

MPoly MPoly::from_terms(Spec spec, std::vector<Term> terms, CoeffDomain dom) {
  MPoly p(spec, dom);
  int n = p.spec_->nvars();
  for (auto& t : terms) {
    if (static_cast<int>(t.first.size()) != n) throw Error("exponent length mismatch");
    t.second.canonicalize();
  }
  normalize_terms(terms);
  p.terms_ = std::move(terms);
  if (dom == CoeffDomain::Integer && !p.has_integer_coeffs())
    throw Error("non-integer coefficient in integer polynomial");
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto x : terms_[0].first)
    if (x != 0) return false;
  return true;
}

mpq_class MPoly::constant_value() const {
  if (terms_.empty()) return 0;
  const auto& last = terms_.back();
  for (auto x : last.first)
    if (x != 0) return 0;
  return last.second;
}

const Term& MPoly::leading_term() const {
  if (terms_.empty()) throw Error("zero polynomial has no leading term");
  return terms_.front();
}

mpq_class MPoly::coeff(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return glex_greater(t.first, x); });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (auto x : terms_.front().first) d += x;
  return d;
}

int MPoly::degree_in_var(int v) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.at(v)));
  return d;
}

bool MPoly::has_integer_coeffs() const {
  for (const auto& t : terms_)
    if (!is_integer(t.second)) return false;
  return true;
}

MPoly MPoly::as_rational() const {
  MPoly p = *this;
  p.dom_ = CoeffDomain::Rational;
  return p;
}

MPoly MPoly::as_integer() const {
  if (!has_integer_coeffs()) throw Error("polynomial has non-integer coefficients");
  MPoly p = *this;
  p.dom_ = CoeffDomain::Integer;
  return p;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (!same_spec(spec_, o.spec_)) throw SpecMismatch("polynomials have different variable specs");
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_compatible(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && glex_greater(terms_[i].first, o.terms_[j].first))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || glex_greater(o.terms_[j].first, terms_[i].first)) {
      out.push_back(o.terms_[j++]);
    } else {
      mpq_class c = terms_[i].second + o.terms_[j].second;
      if (c != 0) out.emplace_back(std::move(terms_[i].first), c);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  if (o.dom_ == CoeffDomain::Rational) dom_ = CoeffDomain::Rational;
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly p(a.spec_, (a.dom_ == CoeffDomain::Integer && b.dom_ == CoeffDomain::Integer)
                       ? CoeffDomain::Integer
                       : CoeffDomain::Rational);
  if (a.is_zero() || b.is_zero()) return p;
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  size_t n = a.spec_->nvars();
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Exponent e(n);
      for (size_t k = 0; k < n; ++k) e[k] = x.first[k] + y.first[k];
      prod.emplace_back(std::move(e), x.second * y.second);
    }
  }
  normalize_terms(prod);
  p.terms_ = std::move(prod);
  return p;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  if (!is_integer(c)) dom_ = CoeffDomain::Rational;
  return *this;
}

bool MPoly::operator==(const MPoly& o) const {
  return same_spec(spec_, o.spec_) && terms_ == o.terms_;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpq_class a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool is_const = std::all_of(e.begin(), e.end(), [](int32_t x) { return x == 0; });
    bool need_star = false;
    if (a != 1 || is_const) {
      os << coeff_string(a);
      need_star = true;
    }
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << "*";
      os << spec_->var_name(static_cast<int>(v));
      if (e[v] > 1) os << "^" << e[v];
      need_star = true;
    }
  }
  return os.str();
}

Ideal::Ideal(Spec s, std::vector<MPoly> g) : spec(std::move(s)), gens(std::move(g)) {
  for (const auto& p : gens)
    if (!same_spec(p.spec(), spec)) throw SpecMismatch("ideal generator has a different spec");
}

MPoly mp_add(const MPoly& a, const MPoly& b) { return a + b; }
MPoly mp_mul(const MPoly& a, const MPoly& b) { return a * b; }

MPoly mp_pow(const MPoly& a, int e) {
  if (e < 0) throw Error("negative power");
  MPoly result = MPoly::constant(a.spec(), 1);
  MPoly base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::optional<int> partial_degree(const MPoly& f, int group) {
  const auto& s = *f.spec();
  if (group < 0 || group >= s.ngroups()) throw Error("unknown group index");
  if (f.is_zero()) return std::nullopt;
  int off = s.offset(group), sz = s.group(group).size;
  int d = 0;
  for (const auto& t : f.terms()) {
    int x = 0;
    for (int k = 0; k < sz; ++k) x += t.first[off + k];
    d = std::max(d, x);
  }
  return d;
}

std::optional<int> partial_degree(const MPoly& f, std::string_view group) {
  return partial_degree(f, f.spec()->group_index(group));
}

int degree_in_groups(const MPoly& f, const std::vector<int>& groups) {
  const auto& s = *f.spec();
  if (f.is_zero()) return -1;
  int d = 0;
  for (const auto& t : f.terms()) {
    int x = 0;
    for (int g : groups)
      for (int k = 0; k < s.group(g).size; ++k) x += t.first[s.offset(g) + k];
    d = std::max(d, x);
  }
  return d;
}

std::optional<MultiDegree> is_multihomogeneous(const MPoly& f) {
  const auto& s = *f.spec();
  auto proj = s.groups_of_kind(GroupKind::projective);
  MultiDegree md;
  md.d.assign(proj.size(), 0);
  if (f.is_zero()) {
    md.zero = true;
    return md;
  }
  bool first = true;
  for (const auto& t : f.terms()) {
    for (size_t i = 0; i < proj.size(); ++i) {
      int g = proj[i];
      int x = 0;
      for (int k = 0; k < s.group(g).size; ++k) x += t.first[s.offset(g) + k];
      if (first) {
        md.d[i] = x;
      } else if (md.d[i] != x) {
        return std::nullopt;
      }
    }
    first = false;
  }
  return md;
}

MPoly substitute(const MPoly& f, const std::map<int, MPoly>& bindings, Spec target) {
  const auto& src = *f.spec();
  for (const auto& [v, p] : bindings) {
    if (v < 0 || v >= src.nvars()) throw Error("substitution binds an unknown variable");
    if (!target) target = p.spec();
    if (!same_spec(target, p.spec())) throw SpecMismatch("substitution targets have inconsistent specs");
  }
  if (!target) target = f.spec();
  int n = src.nvars();
  std::vector<MPoly> image(n);
  for (int v = 0; v < n; ++v) {
    auto it = bindings.find(v);
    if (it != bindings.end()) {
      image[v] = it->second;
    } else {
      auto tv = target->find_var(src.var_name(v));
      if (tv) {
        image[v] = MPoly::variable(target, *tv);
      }
    }
  }
  // Cache powers per variable.
  std::vector<std::vector<MPoly>> powers(n);
  auto power = [&](int v, int e) -> const MPoly& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(MPoly::constant(target, 1));
    while (static_cast<int>(pv.size()) <= e) pv.push_back(pv.back() * image[v]);
    return pv[e];
  };
  MPoly result(target, f.domain());
  for (const auto& [e, c] : f.terms()) {
    MPoly term = MPoly::constant(target, c);
    for (int v = 0; v < n; ++v) {
      if (e[v] == 0) continue;
      if (image[v].spec() == nullptr)
        throw Error("variable '" + src.var_name(v) + "' is unbound and absent from the target spec");
      term *= power(v, e[v]);
    }
    result += term;
  }
  return result;
}

MPoly substitute(const MPoly& f, const std::map<std::string, MPoly>& bindings, Spec target) {
  std::map<int, MPoly> b;
  for (const auto& [name, p] : bindings) b.emplace(f.spec()->var_index(name), p);
  return substitute(f, b, std::move(target));
}

ContentSplit content_and_primitive(const MPoly& f) {
  if (f.is_zero()) throw Error("content of the zero polynomial is undefined");
  if (!f.has_integer_coeffs()) throw Error("content requires integer coefficients");
  mpz_class g = 0;
  for (const auto& t : f.terms()) g = gcd(g, t.second.get_num());
  if (f.terms().front().second < 0) g = -g;
  std::vector<Term> terms = f.terms();
  for (auto& t : terms) t.second /= g;
  return {abs(g), MPoly::from_terms(f.spec(), std::move(terms), CoeffDomain::Integer)};
}

MPoly primitive_part(const MPoly& f) {
  if (f.is_zero()) return MPoly(f.spec(), CoeffDomain::Integer);
  mpz_class l = 1;
  for (const auto& t : f.terms()) l = lcm(l, t.second.get_den());
  MPoly g = f * mpq_class(l);
  return content_and_primitive(g.as_integer()).primitive;
}

MPoly coefficient_extract(const MPoly& f, std::string_view group, const std::vector<int32_t>& pattern) {
  const auto& s = *f.spec();
  int g = s.group_index(group);
  int off = s.offset(g), sz = s.group(g).size;
  if (static_cast<int>(pattern.size()) != sz) throw Error("pattern length does not match group size");
  Spec rest = spec_without(f.spec(), {std::string(group)});
  std::vector<Term> out;
  int n = s.nvars();
  for (const auto& [e, c] : f.terms()) {
    bool match = true;
    for (int k = 0; k < sz; ++k)
      if (e[off + k] != pattern[k]) {
        match = false;
        break;
      }
    if (!match) continue;
    Exponent r;
    r.reserve(n - sz);
    for (int v = 0; v < n; ++v)
      if (v < off || v >= off + sz) r.push_back(e[v]);
    if (static_cast<int>(r.size()) != rest->nvars()) r.assign(rest->nvars(), 0);
    out.emplace_back(std::move(r), c);
  }
  return MPoly::from_terms(rest, std::move(out), f.domain());
}

MPoly respec(const MPoly& f, const Spec& target) {
  if (same_spec(f.spec(), target)) return f;
  const auto& s = *f.spec();
  std::vector<int> map(s.nvars(), -1);
  for (int v = 0; v < s.nvars(); ++v) {
    auto tv = target->find_var(s.var_name(v));
    if (tv) map[v] = *tv;
  }
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    Exponent r(target->nvars(), 0);
    for (int v = 0; v < s.nvars(); ++v) {
      if (e[v] == 0) continue;
      if (map[v] < 0) throw SpecMismatch("variable '" + s.var_name(v) + "' is missing from the target spec");
      r[map[v]] = e[v];
    }
    out.emplace_back(std::move(r), c);
  }
  return MPoly::from_terms(target, std::move(out), f.domain());
}

MPoly derivative(const MPoly& f, int v) {
  std::vector<Term> out;
  for (const auto& [e, c] : f.terms()) {
    if (e.at(v) == 0) continue;
    Exponent r = e;
    r[v] -= 1;
    out.emplace_back(std::move(r), c * e[v]);
  }
  return MPoly::from_terms(f.spec(), std::move(out), f.domain());
}

mpq_class evaluate(const MPoly& f, const std::vector<mpq_class>& at) {
  if (static_cast<int>(at.size()) != f.spec()->nvars()) throw Error("evaluation point has the wrong length");
  mpq_class sum = 0;
  for (const auto& [e, c] : f.terms()) {
    mpq_class t = c;
    for (size_t v = 0; v < e.size(); ++v) {
      for (int k = 0; k < e[v]; ++k) t *= at[v];
    }
    sum += t;
  }
  return sum;
}

std::map<long long, MPoly> split_by_weight(const MPoly& f, const std::vector<long long>& w) {
  std::map<long long, std::vector<Term>> parts;
  for (const auto& t : f.terms()) {
    long long s = 0;
    for (size_t v = 0; v < t.first.size(); ++v) s += w.at(v) * t.first[v];
    parts[s].push_back(t);
  }
  std::map<long long, MPoly> out;
  for (auto& [k, ts] : parts) out.emplace(k, MPoly::from_terms(f.spec(), std::move(ts), f.domain()));
  return out;
}

}  // namespace mh
