#include "multiheight/chowring.hpp"

#include <sstream>

namespace mh {

namespace {

HeightScalar zero_of(ScalarKind k) {
  return k == ScalarKind::ff ? HeightScalar::integer(0) : HeightScalar::real_value(0.0);
}

std::vector<int> projective_dims(const Spec& s) {
  std::vector<int> dims;
  for (int g : s->groups_of_kind(GroupKind::projective)) dims.push_back(s->group(g).size - 1);
  return dims;
}

}  // namespace

HeightScalar hs_add(const HeightScalar& a, const HeightScalar& b) {
  if (a.kind != b.kind) throw Error("mixing exact and real heights");
  if (a.is_exact()) return HeightScalar::integer(a.exact + b.exact);
  return HeightScalar::real_value(a.real + b.real);
}

HeightScalar hs_scale(const HeightScalar& a, const mpz_class& k) {
  if (a.is_exact()) return HeightScalar::integer(a.exact * k);
  return HeightScalar::real_value(a.real * k.get_d());
}

bool hs_leq(const HeightScalar& a, const HeightScalar& b) {
  if (a.kind != b.kind) throw Error("mixing exact and real heights");
  if (a.is_exact()) return a.exact <= b.exact;
  return real_leq(a.real, b.real);
}

ChowClass::ChowClass(std::vector<int> dims, ScalarKind kind) : dims_(std::move(dims)), kind_(kind) {
  size_t n = 1;
  for (int d : dims_) {
    if (d < 0) throw Error("negative projective dimension");
    n *= static_cast<size_t>(d + 1);
  }
  deg_.assign(n, mpz_class(0));
  ht_.assign(n, zero_of(kind));
}

ChowClass ChowClass::one(std::vector<int> dims, ScalarKind kind) {
  ChowClass c(std::move(dims), kind);
  c.deg_[0] = 1;
  return c;
}

ChowClass ChowClass::theta(std::vector<int> dims, ScalarKind kind, int group) {
  ChowClass c(std::move(dims), kind);
  std::vector<int> e(c.dims_.size(), 0);
  e.at(group) = 1;
  if (c.dims_[group] >= 1) c.deg_[c.flat(e)] = 1;
  return c;
}

ChowClass ChowClass::eta(std::vector<int> dims, ScalarKind kind) {
  ChowClass c(std::move(dims), kind);
  c.ht_[0] = kind == ScalarKind::ff ? HeightScalar::integer(1) : HeightScalar::real_value(1.0);
  return c;
}

int ChowClass::flat(const std::vector<int>& e) const {
  if (e.size() != dims_.size()) throw Error("index vector has the wrong length");
  int idx = 0;
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (e[i] < 0 || e[i] > dims_[i]) throw Error("index outside the box");
    idx = idx * (dims_[i] + 1) + e[i];
  }
  return idx;
}

std::vector<int> ChowClass::unflat(int idx) const {
  std::vector<int> e(dims_.size());
  for (size_t i = dims_.size(); i-- > 0;) {
    e[i] = idx % (dims_[i] + 1);
    idx /= dims_[i] + 1;
  }
  return e;
}

std::vector<std::vector<int>> ChowClass::exponents() const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < box_size(); ++i) out.push_back(unflat(i));
  return out;
}

void ChowClass::set_ht_exp(const std::vector<int>& e, const HeightScalar& v) {
  if (v.is_exact() != (kind_ == ScalarKind::ff)) throw Error("height kind does not match the class");
  ht_[flat(e)] = v;
}

static std::vector<int> complement(const std::vector<int>& n, const std::vector<int>& b) {
  if (b.size() != n.size()) throw Error("index vector has the wrong length");
  std::vector<int> e(n.size());
  for (size_t i = 0; i < n.size(); ++i) e[i] = n[i] - b[i];
  return e;
}

static bool in_box(const std::vector<int>& n, const std::vector<int>& e) {
  for (size_t i = 0; i < n.size(); ++i)
    if (e[i] < 0 || e[i] > n[i]) return false;
  return true;
}

mpz_class ChowClass::deg(const std::vector<int>& b) const {
  auto e = complement(dims_, b);
  return in_box(dims_, e) ? deg_[flat(e)] : mpz_class(0);
}

HeightScalar ChowClass::ht(const std::vector<int>& c) const {
  auto e = complement(dims_, c);
  return in_box(dims_, e) ? ht_[flat(e)] : zero_of(kind_);
}

void ChowClass::set_deg(const std::vector<int>& b, const mpz_class& v) { set_deg_exp(complement(dims_, b), v); }
void ChowClass::set_ht(const std::vector<int>& c, const HeightScalar& v) { set_ht_exp(complement(dims_, c), v); }

void ChowClass::check_same(const ChowClass& o) const {
  if (dims_ != o.dims_) throw Error("Chow classes live on different spaces");
  if (kind_ != o.kind_) throw Error("Chow classes have different scalar kinds");
}

ChowClass ChowClass::operator+(const ChowClass& o) const {
  check_same(o);
  ChowClass r = *this;
  for (int i = 0; i < box_size(); ++i) {
    r.deg_[i] += o.deg_[i];
    r.ht_[i] = hs_add(r.ht_[i], o.ht_[i]);
  }
  return r;
}

ChowClass ChowClass::scaled(const mpz_class& k) const {
  ChowClass r = *this;
  for (int i = 0; i < box_size(); ++i) {
    r.deg_[i] *= k;
    r.ht_[i] = hs_scale(r.ht_[i], k);
  }
  return r;
}

ChowClass ChowClass::with_eta_scaled(double k) const {
  ChowClass r = *this;
  for (auto& h : r.ht_) {
    if (h.is_exact()) {
      if (k != static_cast<long>(k)) throw Error("exact heights need an integer factor");
      h.exact *= static_cast<long>(k);
    } else {
      h.real *= k;
    }
  }
  return r;
}

bool ChowClass::degree_part_equal(const ChowClass& o) const { return dims_ == o.dims_ && deg_ == o.deg_; }

bool ChowClass::operator==(const ChowClass& o) const {
  if (dims_ != o.dims_ || kind_ != o.kind_ || deg_ != o.deg_) return false;
  for (int i = 0; i < box_size(); ++i) {
    if (ht_[i].is_exact()) {
      if (ht_[i].exact != o.ht_[i].exact) return false;
    } else if (!real_eq(ht_[i].real, o.ht_[i].real)) {
      return false;
    }
  }
  return true;
}

std::string ChowClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto mono = [&](int i) {
    std::string s;
    auto e = unflat(i);
    for (size_t g = 0; g < e.size(); ++g) {
      if (e[g] == 0) continue;
      s += "*theta" + std::to_string(g + 1);
      if (e[g] > 1) s += "^" + std::to_string(e[g]);
    }
    return s;
  };
  for (int i = 0; i < box_size(); ++i) {
    bool zero = ht_[i].is_exact() ? ht_[i].exact == 0 : ht_[i].real == 0.0;
    if (zero) continue;
    os << (first ? "" : " + ") << ht_[i].to_string() << "*eta" << mono(i);
    first = false;
  }
  for (int i = 0; i < box_size(); ++i) {
    if (deg_[i] == 0) continue;
    std::string m = mono(i);
    os << (first ? "" : " + ") << deg_[i].get_str() << m;
    first = false;
  }
  return first ? "0" : os.str();
}

ChowClass cc_mul(const ChowClass& a, const ChowClass& b) {
  a.check_same(b);
  ChowClass r(a.dims_, a.kind_);
  const auto& n = a.dims_;
  for (int i = 0; i < a.box_size(); ++i) {
    bool ai = a.deg_[i] != 0;
    bool ah = a.ht_[i].is_exact() ? a.ht_[i].exact != 0 : a.ht_[i].real != 0.0;
    if (!ai && !ah) continue;
    auto ei = a.unflat(i);
    for (int j = 0; j < b.box_size(); ++j) {
      auto ej = b.unflat(j);
      std::vector<int> e(n.size());
      bool ok = true;
      for (size_t g = 0; g < n.size(); ++g) {
        e[g] = ei[g] + ej[g];
        if (e[g] > n[g]) ok = false;
      }
      if (!ok) continue;
      int k = r.flat(e);
      r.deg_[k] += a.deg_[i] * b.deg_[j];
      r.ht_[k] = hs_add(r.ht_[k], hs_add(hs_scale(b.ht_[j], a.deg_[i]), hs_scale(a.ht_[i], b.deg_[j])));
    }
  }
  return r;
}

ChowClass cc_pow(const ChowClass& a, int k) {
  ChowClass r = ChowClass::one(a.dims(), a.kind());
  for (int i = 0; i < k; ++i) r = cc_mul(r, a);
  return r;
}

bool cc_leq(const ChowClass& a, const ChowClass& b) {
  a.check_same(b);
  for (int i = 0; i < a.box_size(); ++i) {
    if (a.deg_[i] > b.deg_[i]) return false;
    if (!hs_leq(a.ht_[i], b.ht_[i])) return false;
  }
  return true;
}

ChowClass class_of_divisor(const MPoly& f, DivisorMode mode, double tol) {
  if (!is_multihomogeneous(f)) throw Error("divisor equation is not multihomogeneous");
  auto dims = projective_dims(f.spec());
  ScalarKind kind = mode == DivisorMode::ff_t ? ScalarKind::ff : ScalarKind::Z;
  ChowClass c(dims, kind);
  auto pg = f.spec()->groups_of_kind(GroupKind::projective);
  for (size_t i = 0; i < pg.size(); ++i) {
    std::vector<int> e(dims.size(), 0);
    e[i] = 1;
    int d = partial_degree(f, static_cast<int>(pg[i])).value_or(0);
    if (dims[i] >= 1) c.set_deg_exp(e, d);
  }
  c.set_ht_exp(std::vector<int>(dims.size(), 0), divisor_height(f, mode, tol).value);
  return c;
}

ChowClass class_sup(const MPoly& f) {
  if (!is_multihomogeneous(f)) throw Error("polynomial is not multihomogeneous");
  auto dims = projective_dims(f.spec());
  ChowClass c(dims, ScalarKind::Z);
  auto pg = f.spec()->groups_of_kind(GroupKind::projective);
  for (size_t i = 0; i < pg.size(); ++i) {
    std::vector<int> e(dims.size(), 0);
    e[i] = 1;
    if (dims[i] >= 1) c.set_deg_exp(e, partial_degree(f, static_cast<int>(pg[i])).value_or(0));
  }
  c.set_ht_exp(std::vector<int>(dims.size(), 0), HeightScalar::real_value(sup_norm_upper_log(f)));
  return c;
}

static ChowClass point_class(const std::vector<int>& dims, const std::vector<HeightScalar>& hs, ScalarKind kind) {
  ChowClass c(dims, kind);
  c.set_deg_exp(dims, 1);
  for (size_t i = 0; i < dims.size(); ++i) {
    std::vector<int> e = dims;
    e[i] -= 1;
    if (e[i] >= 0) c.set_ht_exp(e, hs[i]);
  }
  return c;
}

ChowClass class_of_point(const std::vector<std::vector<mpz_class>>& coords) {
  std::vector<int> dims;
  for (const auto& g : coords) dims.push_back(static_cast<int>(g.size()) - 1);
  return point_class(dims, canonical_point_height(coords), ScalarKind::Z);
}

ChowClass class_of_point(const std::vector<std::vector<MPoly>>& coords) {
  std::vector<int> dims;
  for (const auto& g : coords) dims.push_back(static_cast<int>(g.size()) - 1);
  return point_class(dims, canonical_point_height(coords), ScalarKind::ff);
}

ChowClass class_of_cycle_summary(int r, const mpz_class& deg, const HeightScalar& h, int n) {
  if (r < 0 || r > n) throw Error("cycle dimension outside [0, n]");
  ChowClass c({n}, h.is_exact() ? ScalarKind::ff : ScalarKind::Z);
  c.set_deg_exp({n - r}, deg);
  if (n - r - 1 >= 0) c.set_ht_exp({n - r - 1}, h);
  return c;
}

ChowClass class_from_mixed_degrees(const std::vector<int>& dims,
                                   const std::vector<std::pair<std::vector<int>, mpz_class>>& degs) {
  ChowClass c(dims, ScalarKind::Z);
  for (const auto& [b, v] : degs) {
    auto e = complement(dims, b);
    if (!in_box(dims, e)) {
      if (v != 0) throw Error("nonzero mixed degree outside the box");
      continue;
    }
    c.set_deg_exp(e, v);
  }
  return c;
}

ChowClass bezout_upper(const ChowClass& x, const std::vector<ChowClass>& fs) {
  ChowClass r = x;
  for (const auto& f : fs) r = cc_mul(r, f);
  return r;
}

mpz_class intersection_count(const std::vector<ChowClass>& divisors) {
  if (divisors.empty()) throw Error("intersection_count needs at least one class");
  const auto& dims = divisors[0].dims();
  int total = 0;
  for (int d : dims) total += d;
  if (static_cast<int>(divisors.size()) != total)
    throw Error("intersection_count needs exactly |n| = " + std::to_string(total) + " classes");
  ChowClass r = ChowClass::one(dims, divisors[0].kind());
  for (const auto& d : divisors) r = cc_mul(r, d);
  return r.deg_at_exp(dims);
}

ChowClass product_class(const ChowClass& a, const ChowClass& b) {
  if (a.kind_ != b.kind_) throw Error("product of classes with different scalar kinds");
  std::vector<int> dims = a.dims_;
  dims.insert(dims.end(), b.dims_.begin(), b.dims_.end());
  ChowClass r(dims, a.kind_);
  for (int i = 0; i < a.box_size(); ++i) {
    auto ei = a.unflat(i);
    for (int j = 0; j < b.box_size(); ++j) {
      auto ej = b.unflat(j);
      std::vector<int> e = ei;
      e.insert(e.end(), ej.begin(), ej.end());
      int k = r.flat(e);
      r.deg_[k] = a.deg_[i] * b.deg_[j];
      r.ht_[k] = hs_add(hs_scale(b.ht_[j], a.deg_[i]), hs_scale(a.ht_[i], b.deg_[j]));
    }
  }
  return r;
}

CycleSummary summarize(const ChowClass& c) {
  if (c.dims().size() != 1) throw Error("cycle summary needs a class on a single projective space");
  int n = c.dims()[0];
  int found = -1;
  for (int e = 0; e <= n; ++e) {
    if (c.deg_at_exp({e}) == 0) continue;
    if (found >= 0) throw Error("class is not equidimensional");
    found = e;
  }
  if (found < 0) throw Error("class has zero degree part");
  CycleSummary s;
  s.n = n;
  s.r = n - found;
  s.deg = c.deg_at_exp({found});
  s.h = found >= 1 ? c.ht_at_exp({found - 1}) : zero_of(c.kind());
  return s;
}

ChowClass join_class(const ChowClass& a, const ChowClass& b) {
  if (a.kind() != b.kind()) throw Error("join of classes with different scalar kinds");
  auto sa = summarize(a), sb = summarize(b);
  int n = sa.n + sb.n + 1;
  int r = sa.r + sb.r + 1;
  HeightScalar h = hs_add(hs_scale(sb.h, sa.deg), hs_scale(sa.h, sb.deg));
  return class_of_cycle_summary(r, sa.deg * sb.deg, h, n);
}

bool projection_compare(const ChowClass& pi_class, const ChowClass& x) {
  const auto& l = pi_class.dims();
  const auto& n = x.dims();
  if (l.size() != n.size()) throw Error("projection_compare: group counts differ");
  for (size_t i = 0; i < l.size(); ++i)
    if (l[i] > n[i]) throw Error("projection_compare: target box larger than source");
  if (pi_class.kind() != x.kind()) throw Error("projection_compare: scalar kinds differ");
  ChowClass emb(n, x.kind());
  for (int i = 0; i < pi_class.box_size(); ++i) {
    auto e = pi_class.unflat(i);
    for (size_t g = 0; g < e.size(); ++g) e[g] += n[g] - l[g];
    emb.set_deg_exp(e, pi_class.deg_at_exp(pi_class.unflat(i)));
    emb.set_ht_exp(e, pi_class.ht_at_exp(pi_class.unflat(i)));
  }
  return cc_leq(emb, x);
}

}  // namespace mh
