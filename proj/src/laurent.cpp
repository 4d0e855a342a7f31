#include "cube/laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <array>
#include <cstdint>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace cube {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(start), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not an exact rational literal: " + s);
  if (num[0] == '+') num.erase(0, 1);
  Rational q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, int exponent) {
  if (exponent == 0) return 1;
  unsigned long e = static_cast<unsigned long>(std::abs(exponent));
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(VarId v, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.push_back({v, exponent});
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& f : factors) {
    if (!m.factors_.empty() && m.factors_.back().first == f.first) {
      m.factors_.back().second += f.second;
      if (m.factors_.back().second == 0) m.factors_.pop_back();
    } else if (f.second != 0) {
      m.factors_.push_back(f);
    }
  }
  return m;
}

int Monomial::exponent(const VarId& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const VarId& key) { return f.first < key; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::l1_size() const {
  int d = 0;
  for (const auto& f : factors_) d += std::abs(f.second);
  return d;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.second = -f.second;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin(), ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      int e = ia->second + ib->second;
      if (e != 0) out.factors_.push_back({ia->first, e});
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  auto ia = a.factors_.begin(), ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    int ea = 0, eb = 0;
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      ea = (ia++)->second;
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      eb = (ib++)->second;
    } else {
      ea = (ia++)->second;
      eb = (ib++)->second;
    }
    if (ea != eb) return ea <=> eb;
  }
  return std::strong_ordering::equal;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += "*";
    s += cube::to_string(v);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

LaurentPoly LaurentPoly::monomial(Monomial m, Rational c) {
  LaurentPoly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

LaurentPoly LaurentPoly::from_canonical_terms(std::vector<Term> terms) {
  LaurentPoly p;
  p.terms_ = std::move(terms);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  LaurentPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

std::optional<Rational> LaurentPoly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono.is_one()) return terms_[0].coeff;
  return std::nullopt;
}

const LaurentPoly::Term& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw ZeroPolynomial("leading term of the zero polynomial");
  return terms_.front();
}

const LaurentPoly::Term& LaurentPoly::trailing_term() const {
  if (terms_.empty()) throw ZeroPolynomial("trailing term of the zero polynomial");
  return terms_.back();
}

std::vector<VarId> LaurentPoly::variables() const {
  std::vector<VarId> vars;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) vars.push_back(f.first);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

namespace {

// Merge of two descending term lists with sign applied to the second.
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& a,
                                           const std::vector<LaurentPoly::Term>& b, bool negate_b) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->mono > ib->mono)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->mono > ia->mono) {
      out.push_back(*ib++);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = negate_b ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff);
      if (c != 0) out.push_back({ia->mono, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& b) {
  terms_ = merge_terms(terms_, b.terms_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& b) {
  terms_ = merge_terms(terms_, b.terms_, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& b) {
  *this = *this * b;
  return *this;
}

namespace {

// Fast path for polynomials in at most 16 variables with small exponents:
// monomials become fixed-size exponent arrays, whose lexicographic order
// (total degree first) is exactly the graded-lex order of Monomial.
constexpr std::size_t kLanes = 16;
constexpr int kLaneMax = 127;

struct PackedMono {
  int tot = 0;
  std::array<std::int8_t, kLanes> e{};
  friend auto operator<=>(const PackedMono&, const PackedMono&) = default;
  friend bool operator==(const PackedMono&, const PackedMono&) = default;
};

PackedMono operator+(PackedMono a, const PackedMono& b) {
  a.tot += b.tot;
  for (std::size_t i = 0; i < kLanes; ++i) a.e[i] = static_cast<std::int8_t>(a.e[i] + b.e[i]);
  return a;
}

PackedMono operator-(PackedMono a, const PackedMono& b) {
  a.tot -= b.tot;
  for (std::size_t i = 0; i < kLanes; ++i) a.e[i] = static_cast<std::int8_t>(a.e[i] - b.e[i]);
  return a;
}

struct PackedHash {
  std::size_t operator()(const PackedMono& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(m.tot);
    for (auto x : m.e) h = (h ^ static_cast<std::uint8_t>(x)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

using Extent = std::array<int, kLanes>;

class Lanes {
 public:
  static std::optional<Lanes> of(std::initializer_list<const LaurentPoly*> polys) {
    Lanes l;
    for (const auto* p : polys)
      for (const auto& t : p->terms())
        for (const auto& f : t.mono.factors()) l.vars_.push_back(f.first);
    std::sort(l.vars_.begin(), l.vars_.end());
    l.vars_.erase(std::unique(l.vars_.begin(), l.vars_.end()), l.vars_.end());
    if (l.vars_.size() > kLanes) return std::nullopt;
    return l;
  }

  std::size_t lane(const VarId& v) const {
    return static_cast<std::size_t>(std::lower_bound(vars_.begin(), vars_.end(), v) - vars_.begin());
  }

  PackedMono pack(const Monomial& m) const {
    PackedMono out;
    for (const auto& [v, e] : m.factors()) {
      out.e[lane(v)] = static_cast<std::int8_t>(e);
      out.tot += e;
    }
    return out;
  }

  Monomial unpack(const PackedMono& m) const {
    std::vector<Monomial::Factor> f;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (m.e[i] != 0) f.push_back({vars_[i], m.e[i]});
    return Monomial::from_factors(std::move(f));
  }

  Extent extent(const LaurentPoly& p) const {
    Extent out{};
    for (const auto& t : p.terms())
      for (const auto& [v, e] : t.mono.factors()) {
        auto& slot = out[lane(v)];
        slot = std::max(slot, std::abs(e));
      }
    return out;
  }

 private:
  std::vector<VarId> vars_;
};

bool fits(const Extent& a, const Extent& b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] + b[i] > kLaneMax) return false;
  return true;
}

// Coefficient arithmetic for the packed kernels. Integer coefficients avoid
// the gcd normalization of every rational product; machine integers are
// tried first and abandoned on overflow.
struct SmallIntCoeffs {
  using T = std::int64_t;
  static bool accepts(const LaurentPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return t.coeff.get_den() == 1 && t.coeff.get_num().fits_slong_p(); });
  }
  static T from(const Rational& q) { return q.get_num().get_si(); }
  static Rational to(const T& c) { return Rational(static_cast<long>(c)); }
  static bool addmul(T& acc, const T& a, const T& b) {
    T p;
    return !__builtin_mul_overflow(a, b, &p) && !__builtin_add_overflow(acc, p, &acc);
  }
  static bool submul(T& acc, const T& a, const T& b) {
    T p;
    return !__builtin_mul_overflow(a, b, &p) && !__builtin_sub_overflow(acc, p, &acc);
  }
  static std::optional<T> divide(const T& a, const T& b) {
    if (a % b != 0) return std::nullopt;
    return a / b;
  }
};

struct IntCoeffs {
  using T = mpz_class;
  static bool accepts(const LaurentPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.coeff.get_den() == 1; });
  }
  static T from(const Rational& q) { return q.get_num(); }
  static Rational to(const T& c) { return Rational(c); }
  static bool addmul(T& acc, const T& a, const T& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
  }
  static bool submul(T& acc, const T& a, const T& b) {
    mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
  }
  static std::optional<T> divide(const T& a, const T& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
};

struct RatCoeffs {
  using T = Rational;
  static bool accepts(const LaurentPoly&) { return true; }
  static T from(const Rational& q) { return q; }
  static Rational to(const T& c) { return c; }
  static bool addmul(T& acc, const T& a, const T& b) {
    acc += a * b;
    return true;
  }
  static bool submul(T& acc, const T& a, const T& b) {
    acc -= a * b;
    return true;
  }
  static std::optional<T> divide(const T& a, const T& b) { return T(a / b); }
};

template <class C>
std::vector<std::pair<PackedMono, typename C::T>> packed_terms(const Lanes& lanes, const LaurentPoly& p) {
  std::vector<std::pair<PackedMono, typename C::T>> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.emplace_back(lanes.pack(t.mono), C::from(t.coeff));
  return out;
}

template <class C>
LaurentPoly unpack_sorted(const Lanes& lanes, std::vector<std::pair<PackedMono, typename C::T>>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<LaurentPoly::Term> out;
  out.reserve(terms.size());
  for (auto& [m, c] : terms) out.push_back({lanes.unpack(m), C::to(c)});
  return LaurentPoly::from_canonical_terms(std::move(out));
}

// Returns nullopt when machine-integer coefficients overflow.
template <class C>
std::optional<LaurentPoly> packed_mul_with(const Lanes& lanes, const LaurentPoly& a, const LaurentPoly& b) {
  auto pa = packed_terms<C>(lanes, a), pb = packed_terms<C>(lanes, b);
  std::unordered_map<PackedMono, typename C::T, PackedHash> acc;
  acc.reserve(std::min<std::size_t>(pa.size() * pb.size(), std::size_t{1} << 22));
  for (const auto& [ma, ca] : pa)
    for (const auto& [mb, cb] : pb)
      if (!C::addmul(acc[ma + mb], ca, cb)) return std::nullopt;
  std::vector<std::pair<PackedMono, typename C::T>> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.emplace_back(m, std::move(c));
  return unpack_sorted<C>(lanes, terms);
}

std::optional<LaurentPoly> packed_mul(const LaurentPoly& a, const LaurentPoly& b) {
  auto lanes = Lanes::of({&a, &b});
  if (!lanes || !fits(lanes->extent(a), lanes->extent(b))) return std::nullopt;
  if (SmallIntCoeffs::accepts(a) && SmallIntCoeffs::accepts(b))
    if (auto p = packed_mul_with<SmallIntCoeffs>(*lanes, a, b)) return p;
  if (IntCoeffs::accepts(a) && IntCoeffs::accepts(b)) return packed_mul_with<IntCoeffs>(*lanes, a, b);
  return packed_mul_with<RatCoeffs>(*lanes, a, b);
}

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coeff);
  if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coeff);
  if (auto fast = packed_mul(a, b)) return std::move(*fast);
  std::map<Monomial, Rational, std::greater<>> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, 0);
      it->second += ta.coeff * tb.coeff;
    }
  }
  LaurentPoly p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

LaurentPoly operator-(const LaurentPoly& a) { return a.scaled(-1); }

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.mono.is_one()) {
      os << c.get_str();
    } else {
      if (c == -1) os << "-";
      else if (c != 1) os << c.get_str() << "*";
      os << t.mono.to_string();
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Free operations

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

namespace {

struct QuotientBox {
  Extent lo{}, hi{};
  PackedMono lower;
};

// Returns nullopt when integer coefficients stop dividing evenly or overflow.
template <class C>
std::optional<LaurentPoly> packed_div_with(const Lanes& lanes, const LaurentPoly& num, const LaurentPoly& den,
                                           const QuotientBox& box) {
  auto pden = packed_terms<C>(lanes, den);
  const PackedMono lead = pden.front().first;
  const typename C::T lead_coeff = pden.front().second;

  std::unordered_map<PackedMono, typename C::T, PackedHash> rem;
  std::priority_queue<PackedMono> order;
  for (auto& [m, c] : packed_terms<C>(lanes, num)) {
    order.push(m);
    rem.emplace(m, std::move(c));
  }

  std::vector<std::pair<PackedMono, typename C::T>> quotient;
  while (!order.empty()) {
    PackedMono top = order.top();
    order.pop();
    auto hit = rem.find(top);
    if (hit == rem.end()) continue;
    PackedMono qm = top - lead;
    bool inside = !(qm < box.lower);
    for (std::size_t i = 0; inside && i < kLanes; ++i) inside = qm.e[i] >= box.lo[i] && qm.e[i] <= box.hi[i];
    if (!inside) throw NotDivisible("div_exact: remainder term " + lanes.unpack(top).to_string() + " cannot be eliminated");
    auto qc = C::divide(hit->second, lead_coeff);
    if (!qc) return std::nullopt;
    for (const auto& [dm, dc] : pden) {
      PackedMono key = qm + dm;
      auto [it, inserted] = rem.try_emplace(key);
      if (!C::submul(it->second, *qc, dc)) return std::nullopt;
      if (it->second == 0) rem.erase(it);
      else if (inserted) order.push(key);
    }
    quotient.emplace_back(qm, std::move(*qc));
  }
  return unpack_sorted<C>(lanes, quotient);
}

std::optional<LaurentPoly> packed_div(const LaurentPoly& num, const LaurentPoly& den,
                                      const std::map<VarId, std::pair<int, int>>& q_box, const Monomial& lower) {
  auto lanes = Lanes::of({&num, &den});
  if (!lanes) return std::nullopt;
  QuotientBox box;
  Extent q_ext{};
  for (const auto& [v, r] : q_box) {
    std::size_t i = lanes->lane(v);
    box.lo[i] = r.first;
    box.hi[i] = r.second;
    q_ext[i] = std::max(std::abs(r.first), std::abs(r.second));
  }
  Extent zero{};
  if (!fits(q_ext, lanes->extent(den)) || !fits(lanes->extent(num), zero)) return std::nullopt;
  box.lower = lanes->pack(lower);
  if (SmallIntCoeffs::accepts(num) && SmallIntCoeffs::accepts(den))
    if (auto q = packed_div_with<SmallIntCoeffs>(*lanes, num, den, box)) return q;
  if (IntCoeffs::accepts(num) && IntCoeffs::accepts(den))
    if (auto q = packed_div_with<IntCoeffs>(*lanes, num, den, box)) return q;
  return packed_div_with<RatCoeffs>(*lanes, num, den, box);
}

// Per-variable exponent range [lo, hi] over the support of p.
std::map<VarId, std::pair<int, int>> exponent_box(const LaurentPoly& p) {
  std::map<VarId, std::pair<int, int>> box;
  for (const auto& v : p.variables()) box[v] = {0, 0};
  bool first = true;
  for (const auto& t : p.terms()) {
    for (auto& [v, range] : box) {
      int e = t.mono.exponent(v);
      if (first) range = {e, e};
      range.first = std::min(range.first, e);
      range.second = std::max(range.second, e);
    }
    first = false;
  }
  return box;
}

}  // namespace

LaurentPoly div_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw ZeroPolynomial("div_exact: division by the zero polynomial");
  if (num.is_zero()) return {};
  if (den.is_monomial()) {
    const auto& d = den.leading_term();
    Monomial inv = d.mono.inverse();
    std::vector<LaurentPoly::Term> q;
    q.reserve(num.size());
    for (const auto& t : num.terms()) q.push_back({t.mono * inv, t.coeff / d.coeff});
    return LaurentPoly::from_terms(std::move(q));
  }

  // If num = q*den then for every variable the extreme exponents add up, which
  // confines the support of q to a finite box. Any candidate quotient term
  // outside that box proves non-divisibility and guarantees termination.
  auto num_box = exponent_box(num);
  auto den_box = exponent_box(den);
  std::map<VarId, std::pair<int, int>> q_box;
  for (const auto& [v, r] : den_box) {
    auto it = num_box.find(v);
    std::pair<int, int> nr = it == num_box.end() ? std::pair{0, 0} : it->second;
    q_box[v] = {nr.first - r.first, nr.second - r.second};
  }
  for (const auto& [v, r] : num_box)
    if (!q_box.count(v)) q_box[v] = r;
  for (const auto& [v, r] : q_box)
    if (r.first > r.second) throw NotDivisible("div_exact: exponent ranges are incompatible");

  auto inside_box = [&](const Monomial& m) {
    for (const auto& [v, r] : q_box) {
      int e = m.exponent(v);
      if (e < r.first || e > r.second) return false;
    }
    for (const auto& [v, e] : m.factors())
      if (!q_box.count(v)) return false;
    return true;
  };

  const Monomial lower_bound = num.trailing_term().mono / den.trailing_term().mono;
  if (auto fast = packed_div(num, den, q_box, lower_bound)) return std::move(*fast);

  const auto& lead = den.leading_term();

  std::map<Monomial, Rational, std::greater<>> rem;
  for (const auto& t : num.terms()) rem.emplace(t.mono, t.coeff);

  std::vector<LaurentPoly::Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    Monomial qm = top->first / lead.mono;
    if (qm < lower_bound || !inside_box(qm))
      throw NotDivisible("div_exact: remainder term " + top->first.to_string() + " cannot be eliminated");
    Rational qc = top->second / lead.coeff;
    for (const auto& t : den.terms()) {
      auto [it, inserted] = rem.try_emplace(qm * t.mono, 0);
      it->second -= qc * t.coeff;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({std::move(qm), std::move(qc)});
  }
  return LaurentPoly::from_terms(std::move(quotient));
}

Rational substitute(const LaurentPoly& p, const Assignment& assign) {
  Rational total = 0;
  for (const auto& t : p.terms()) {
    Rational term = t.coeff;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = assign.find(v);
      if (it == assign.end()) throw MissingAssignment("substitute: no value for " + to_string(v));
      if (it->second == 0 && e < 0) throw ZeroSubstitution("substitute: " + to_string(v) + " = 0 under a negative exponent");
      term *= pow(it->second, e);
    }
    total += term;
  }
  return total;
}

LaurentPoly partial_substitute(const LaurentPoly& p, const Assignment& assign) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    std::vector<Monomial::Factor> kept;
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = assign.find(v);
      if (it == assign.end()) {
        kept.push_back({v, e});
        continue;
      }
      if (it->second == 0 && e < 0) throw ZeroSubstitution("substitute: " + to_string(v) + " = 0 under a negative exponent");
      c *= pow(it->second, e);
    }
    out.push_back({Monomial::from_factors(std::move(kept)), std::move(c)});
  }
  return LaurentPoly::from_terms(std::move(out));
}

int degree_spread(const LaurentPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("degree_spread of the zero polynomial");
  int best = 0;
  for (const auto& t : p.terms()) best = std::max(best, t.mono.l1_size());
  return best;
}

}  // namespace cube
