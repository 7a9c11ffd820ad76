#include "conslaw/diffpoly.hpp"

#include <algorithm>

#include "conslaw/error.hpp"

namespace conslaw {

int order(const MultiIndex& m) { return m[0] + m[1] + m[2]; }

MultiIndex unit_index(int i) {
  MultiIndex m{};
  m[i] = 1;
  return m;
}

MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
  for (int i = 0; i < kMaxIndependents; ++i) a[i] += b[i];
  return a;
}

bool dominates(const MultiIndex& a, const MultiIndex& b) {
  for (int i = 0; i < kMaxIndependents; ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

JetVar JetVar::shifted(int i) const {
  JetVar v = *this;
  ++v.multi[i];
  return v;
}

std::strong_ordering operator<=>(const JetVar& a, const JetVar& b) {
  if (auto c = a.dep <=> b.dep; c != 0) return c;
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  // Same order: more t-derivatives ranks first, then more x-derivatives.
  return b.multi <=> a.multi;
}

std::strong_ordering operator<=>(const FuncSym& a, const FuncSym& b) {
  if (auto c = a.func <=> b.func; c != 0) return c;
  if (auto c = a.order <=> b.order; c != 0) return c;
  return a.arg <=> b.arg;
}

namespace {

// Multiset comparison of sorted power lists, from the largest factor down.
template <typename Powers>
std::strong_ordering compare_powers(const Powers& a, const Powers& b) {
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (auto c = ia->second <=> ib->second; c != 0) return c;
  }
  if (ia == a.rend() && ib == b.rend()) return std::strong_ordering::equal;
  return ia == a.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

template <typename Powers, typename Key>
void multiply_into(Powers& dst, const Key& key, int exponent) {
  auto it = std::lower_bound(dst.begin(), dst.end(), key,
                             [](const auto& p, const Key& k) { return p.first < k; });
  if (it != dst.end() && it->first == key) {
    it->second += exponent;
    if (it->second == 0) dst.erase(it);
  } else if (exponent != 0) {
    dst.insert(it, {key, exponent});
  }
}

template <typename Powers, typename Key>
int exponent_in(const Powers& powers, const Key& key) {
  auto it = std::lower_bound(powers.begin(), powers.end(), key,
                             [](const auto& p, const Key& k) { return p.first < k; });
  return (it != powers.end() && it->first == key) ? it->second : 0;
}

}  // namespace

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = compare_powers(a.jets(), b.jets()); c != 0) return c;
  if (auto c = compare_powers(a.functions(), b.functions()); c != 0) return c;
  int da = a.coordinate_degree();
  int db = b.coordinate_degree();
  if (auto c = da <=> db; c != 0) return c;
  return b.coords() <=> a.coords();
}

Monomial Monomial::coordinate(int i, int exponent) {
  Monomial m;
  m.coords_[i] = exponent;
  return m;
}

Monomial Monomial::function(const FuncSym& f, int exponent) {
  Monomial m;
  if (exponent != 0) m.funcs_.push_back({f, exponent});
  return m;
}

Monomial Monomial::jet(const JetVar& v, int exponent) {
  Monomial m;
  if (exponent != 0) m.jets_.push_back({v, exponent});
  return m;
}

bool Monomial::is_one() const {
  return jets_.empty() && funcs_.empty() && coordinate_degree() == 0;
}

int Monomial::jet_order() const {
  int best = -1;
  for (const auto& [v, e] : jets_) best = std::max(best, v.order());
  return best;
}

int Monomial::jet_degree() const {
  int d = 0;
  for (const auto& [v, e] : jets_) d += e;
  return d;
}

int Monomial::coordinate_degree() const { return coords_[0] + coords_[1] + coords_[2]; }

int Monomial::exponent(const JetVar& v) const { return exponent_in(jets_, v); }

int Monomial::exponent(const FuncSym& f) const { return exponent_in(funcs_, f); }

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m = *this;
  for (int i = 0; i < kMaxIndependents; ++i) m.coords_[i] += other.coords_[i];
  for (const auto& [f, e] : other.funcs_) multiply_into(m.funcs_, f, e);
  for (const auto& [v, e] : other.jets_) multiply_into(m.jets_, v, e);
  return m;
}

Monomial Monomial::divided_by(const JetVar& v, int count) const {
  Monomial m = *this;
  multiply_into(m.jets_, v, -count);
  return m;
}

Monomial Monomial::divided_by(const FuncSym& f, int count) const {
  Monomial m = *this;
  multiply_into(m.funcs_, f, -count);
  return m;
}

Monomial Monomial::with_coordinate_power(int i, int exponent) const {
  Monomial m = *this;
  m.coords_[i] = exponent;
  return m;
}

Monomial Monomial::coefficient_part() const {
  Monomial m = *this;
  m.jets_.clear();
  return m;
}

Monomial Monomial::jet_part() const {
  Monomial m;
  m.jets_ = jets_;
  return m;
}

DiffPoly::DiffPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

DiffPoly DiffPoly::term(const Monomial& m, const Rational& c) {
  DiffPoly p;
  p.add_term(m, c);
  return p;
}

DiffPoly DiffPoly::jet(const JetVar& v) { return term(Monomial::jet(v)); }

DiffPoly DiffPoly::jet(int dep, const MultiIndex& multi) { return jet(JetVar{dep, multi}); }

DiffPoly DiffPoly::coordinate(int i) { return term(Monomial::coordinate(i)); }

DiffPoly DiffPoly::function(int func, int arg, int order) {
  return term(Monomial::function(FuncSym{func, arg, order}));
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational DiffPoly::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int DiffPoly::jet_order() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, m.jet_order());
  return best;
}

std::set<JetVar> DiffPoly::jet_vars() const {
  std::set<JetVar> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.jets()) out.insert(v);
  }
  return out;
}

std::set<int> DiffPoly::dependents() const {
  std::set<int> out;
  for (const auto& v : jet_vars()) out.insert(v.dep);
  return out;
}

std::set<FuncSym> DiffPoly::function_symbols() const {
  std::set<FuncSym> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [f, e] : m.functions()) out.insert(f);
  }
  return out;
}

bool DiffPoly::has_coordinate(int i) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [i](const auto& t) { return t.first.coords()[i] > 0; });
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& other) {
  *this = *this * other;
  return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, coef] : terms_) coef *= c;
  }
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

DiffPoly DiffPoly::pow(int n) const {
  if (n < 0) throw Error("negative exponent");
  DiffPoly result(1);
  DiffPoly base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

void check_order(const DiffPoly& p, int max_order) {
  for (const auto& [m, c] : p.terms()) {
    if (m.jet_order() > max_order) {
      throw OrderOverflow("derivative order " + std::to_string(m.jet_order()) +
                          " exceeds the engine maximum " + std::to_string(max_order));
    }
  }
}

DiffPoly canonicalize(const RawTerms& raw, int max_order) {
  DiffPoly p;
  for (const auto& [m, c] : raw) p.add_term(m, c);
  check_order(p, max_order);
  return p;
}

std::string symbol_name(const JetVar& v, const Convention& conv) {
  std::string name = v.dep < conv.num_dependents() ? conv.dependents()[v.dep]
                                                   : "#" + std::to_string(v.dep);
  if (v.order() == 0) return name;
  name += '_';
  for (int i = 0; i < kMaxIndependents; ++i) {
    std::string letter = i < conv.num_independents() ? conv.independents()[i] : "?";
    for (int k = 0; k < v.multi[i]; ++k) name += letter;
  }
  return name;
}

std::string symbol_name(const FuncSym& f, const Convention& conv) {
  std::string name = f.func < static_cast<int>(conv.functions().size())
                         ? conv.functions()[f.func].name
                         : "#f" + std::to_string(f.func);
  if (f.order <= 4) return name + std::string(f.order, '\'');
  std::string arg = f.arg < conv.num_independents() ? conv.independents()[f.arg] : "?";
  return "D(" + name + "," + arg + "," + std::to_string(f.order) + ")";
}

}  // namespace conslaw
