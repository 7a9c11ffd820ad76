#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/convention.hpp"

namespace conslaw {

/// Exact scalar type of the symbolic core.
using Rational = mpq_class;

/// Largest total derivative order a jet variable may carry unless a caller
/// asks for a different bound.
inline constexpr int kDefaultMaxOrder = 8;

/// Derivative counts per independent variable; u_{xy} and u_{yx} share (0,1,1).
using MultiIndex = std::array<int, kMaxIndependents>;

int order(const MultiIndex& m);
MultiIndex unit_index(int i);
MultiIndex operator+(MultiIndex a, const MultiIndex& b);
/// True when every count of `a` is at least the matching count of `b`.
bool dominates(const MultiIndex& a, const MultiIndex& b);

/// The derivative u^dep_multi.
struct JetVar {
  int dep = 0;
  MultiIndex multi{};

  int order() const { return conslaw::order(multi); }
  JetVar shifted(int i) const;

  bool operator==(const JetVar&) const = default;
};

/// Ranking of jet variables: dependent index, then order, then t-heavy
/// multi-indices first. Compatible with derivation: a < b implies
/// D_i a < D_i b.
std::strong_ordering operator<=>(const JetVar& a, const JetVar& b);

/// The k-th derivative F^(k) of an arbitrary function F of one variable.
struct FuncSym {
  int func = 0;
  int arg = 0;  // independent variable F depends on
  int order = 0;

  bool operator==(const FuncSym&) const = default;
};

std::strong_ordering operator<=>(const FuncSym& a, const FuncSym& b);

/// Power product of coordinates, function symbols and jet variables, without
/// its scalar. Factors are kept sorted and never carry a zero exponent.
class Monomial {
 public:
  using Coords = std::array<int, kMaxIndependents>;
  using FuncPowers = std::vector<std::pair<FuncSym, int>>;
  using JetPowers = std::vector<std::pair<JetVar, int>>;

  Monomial() = default;

  static Monomial coordinate(int i, int exponent = 1);
  static Monomial function(const FuncSym& f, int exponent = 1);
  static Monomial jet(const JetVar& v, int exponent = 1);

  const Coords& coords() const { return coords_; }
  const FuncPowers& functions() const { return funcs_; }
  const JetPowers& jets() const { return jets_; }

  bool is_one() const;
  bool has_jets() const { return !jets_.empty(); }
  /// Highest derivative order among the jet factors, -1 without jets.
  int jet_order() const;
  /// Sum of jet exponents.
  int jet_degree() const;
  int coordinate_degree() const;

  int exponent(const JetVar& v) const;
  int exponent(const FuncSym& f) const;

  Monomial operator*(const Monomial& other) const;
  /// Removes `count` powers of `v`; `v` must occur at least that often.
  Monomial divided_by(const JetVar& v, int count = 1) const;
  Monomial divided_by(const FuncSym& f, int count = 1) const;
  Monomial with_coordinate_power(int i, int exponent) const;
  /// The monomial restricted to its coordinate and function factors.
  Monomial coefficient_part() const;
  /// The monomial restricted to its jet factors.
  Monomial jet_part() const;

  bool operator==(const Monomial&) const = default;

 private:
  Coords coords_{};
  FuncPowers funcs_;
  JetPowers jets_;
};

/// Term order: jet content first (multiset order on the ranking, compared from
/// the highest factor down), then function symbols, then coordinates.
std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

/// A differential polynomial in canonical form: each monomial appears once,
/// with a nonzero rational coefficient, in term order.
class DiffPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  DiffPoly() = default;
  DiffPoly(const Rational& c);
  DiffPoly(long c) : DiffPoly(Rational(c)) {}
  DiffPoly(int c) : DiffPoly(Rational(c)) {}

  static DiffPoly term(const Monomial& m, const Rational& c = 1);
  static DiffPoly jet(const JetVar& v);
  static DiffPoly jet(int dep, const MultiIndex& multi = {});
  static DiffPoly coordinate(int i);
  static DiffPoly function(int func, int arg, int order = 0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Constant term value when the polynomial has no other terms.
  bool is_constant() const;
  Rational constant_value() const;

  /// Highest jet order appearing, -1 when the polynomial has no jet factors.
  int jet_order() const;
  std::set<JetVar> jet_vars() const;
  std::set<int> dependents() const;
  std::set<FuncSym> function_symbols() const;
  /// True if any term carries a positive power of coordinate i.
  bool has_coordinate(int i) const;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  DiffPoly& operator*=(const DiffPoly& other);
  DiffPoly& operator*=(const Rational& c);

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
  friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
  DiffPoly operator-() const;

  DiffPoly pow(int n) const;

  bool operator==(const DiffPoly& other) const { return terms_ == other.terms_; }

 private:
  Terms terms_;
};

/// Raw (monomial, coefficient) list in any order and with duplicates.
using RawTerms = std::vector<std::pair<Monomial, Rational>>;

/// Collects like terms and drops zeros. Throws OrderOverflow when a jet
/// variable exceeds `max_order`.
DiffPoly canonicalize(const RawTerms& raw, int max_order = kDefaultMaxOrder);

/// Throws OrderOverflow if any jet variable of `p` exceeds `max_order`.
void check_order(const DiffPoly& p, int max_order);

/// Plain spelling of single symbols, e.g. `u_txx`, `f''`, `D(f,t,5)`.
std::string symbol_name(const JetVar& v, const Convention& conv);
std::string symbol_name(const FuncSym& f, const Convention& conv);

}  // namespace conslaw
