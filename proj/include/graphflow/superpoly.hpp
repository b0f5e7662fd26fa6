#pragma once

#include "graphflow/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphflow {

inline constexpr int kMaxDimension = 8;
inline constexpr int kMaxOddVariables = 32;
inline constexpr int kMaxCopies = 16;

// ---------------------------------------------------------------------------
// Symbols

enum class SymbolKind { Function, Parameter };

/// Registers a named symbol (idempotent). Throws InputError if the name is
/// already registered with a different kind or is reserved (x<k>, xi<k>).
int register_symbol(std::string_view name, SymbolKind kind);
std::optional<int> find_symbol(std::string_view name);
std::string symbol_name(int id);
SymbolKind symbol_kind(int id);

// ---------------------------------------------------------------------------
// Derivative multi-index: 6 bits per coordinate, up to kMaxDimension.

class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(std::uint64_t bits) : bits_(bits) {}

  int operator[](int i) const { return static_cast<int>(bits_ >> (6 * i) & 63u); }
  MultiIndex incremented(int i) const;
  MultiIndex operator+(MultiIndex other) const;
  int order() const;
  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Even atoms: coordinates x^i, constant parameters, jets of function symbols.
// Each coordinate and jet lives on a copy (0 outside graph evaluation).

class Atom {
 public:
  enum class Kind : std::uint64_t { Coordinate = 0, Parameter = 1, Jet = 2 };

  static Atom coordinate(int i, int copy = 0);
  static Atom parameter(int symbol);
  static Atom jet(int symbol, MultiIndex mi = {}, int copy = 0);

  Kind kind() const { return static_cast<Kind>(key_ >> 62); }
  int copy() const { return static_cast<int>(key_ >> 58 & 15u); }
  /// Coordinate index or symbol id.
  int index() const { return static_cast<int>(key_ >> 48 & 1023u); }
  MultiIndex derivatives() const { return MultiIndex(key_ & ((std::uint64_t{1} << 48) - 1)); }

  Atom with_copy(int copy) const;
  std::uint64_t key() const { return key_; }

  auto operator<=>(const Atom&) const = default;

 private:
  explicit Atom(std::uint64_t key) : key_(key) {}
  std::uint64_t key_ = 0;
};

struct Factor {
  Atom atom;
  std::uint32_t exponent = 1;
  auto operator<=>(const Factor&) const = default;
};

using FactorList = boost::container::small_vector<Factor, 6>;

/// Product of atom powers, factors sorted by atom.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(Atom a, std::uint32_t e = 1) : factors_{{a, e}} {}

  const FactorList& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  int degree() const;

  Monomial operator*(const Monomial& other) const;
  /// Removes one power of factor k.
  Monomial lowered(std::size_t k) const;
  /// Inserts atom^e (sorted merge).
  Monomial times(Atom a, std::uint32_t e = 1) const;
  /// lowered(k).times(a) in one pass.
  Monomial lowered_times(std::size_t k, Atom a) const;

  std::size_t hash() const;
  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
  std::strong_ordering operator<=>(const Monomial& o) const {
    return std::lexicographical_compare_three_way(factors_.begin(), factors_.end(), o.factors_.begin(),
                                                  o.factors_.end());
  }

 private:
  friend class MonomialBuilder;
  FactorList factors_;
};

// ---------------------------------------------------------------------------
// Graded polynomial: coefficients are polynomials in atoms; odd generators
// xi_k (k < 32) anticommute. Terms stay sorted by (odd set, monomial).

struct TermKey {
  std::uint32_t odd = 0;
  Monomial mono;
  bool operator==(const TermKey&) const = default;
};

struct TermKeyHash {
  std::size_t operator()(const TermKey& k) const { return k.mono.hash() * 1000003u ^ k.odd; }
};

/// Total order on odd sets: by size, then lexicographic on sorted indices.
bool odd_less(std::uint32_t a, std::uint32_t b);
/// Sign of multiplying xi_A * xi_B into sorted order; 0 if they overlap.
int odd_product_sign(std::uint32_t a, std::uint32_t b);

class SuperPoly {
 public:
  struct Term {
    std::uint32_t odd = 0;
    Monomial mono;
    Rational coeff;
  };

  SuperPoly() = default;
  explicit SuperPoly(int dim) : dim_(dim) {}

  static SuperPoly constant(int dim, const Rational& c);
  /// x^(i+1); 0-based index.
  static SuperPoly coordinate(int dim, int i);
  /// xi_(k+1); 0-based index.
  static SuperPoly odd(int dim, int k);
  /// Abstract function of all coordinates; registers the symbol.
  static SuperPoly function(int dim, std::string_view name);
  static SuperPoly parameter(int dim, std::string_view name);
  static SuperPoly atom(int dim, Atom a);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Degree in the odd variables if homogeneous; nullopt for zero or mixed.
  std::optional<int> odd_degree() const;
  /// Scalar coefficient of the odd monomial `odd`.
  SuperPoly coefficient(std::uint32_t odd) const;
  /// Distinct odd sets in order.
  std::vector<std::uint32_t> odd_sets() const;

  SuperPoly operator-() const;
  SuperPoly& operator+=(const SuperPoly& o);
  SuperPoly& operator-=(const SuperPoly& o);
  SuperPoly& operator*=(const Rational& c);
  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator*(const Rational& c, SuperPoly a) { return a *= c; }
  friend SuperPoly operator*(SuperPoly a, const Rational& c) { return a *= c; }
  /// Graded-commutative product.
  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);

  /// d/dx^(i+1) on the given copy.
  SuperPoly derivative_x(int i, int copy = 0) const;
  /// Left derivative d/dxi_(k+1).
  SuperPoly derivative_odd(int k) const;
  /// Right derivative.
  SuperPoly right_derivative_odd(int k) const;

  /// Moves copy-0 atoms to `copy` and xi_i to xi_(copy*dim + i).
  SuperPoly placed_on_copy(int copy) const;
  /// Identifies all copies: atoms to copy 0, xi_k to xi_(k mod dim).
  SuperPoly restricted_to_diagonal() const;

  /// Total degree in jets of function symbols (parameters and coordinates excluded).
  std::optional<int> function_degree() const;

  bool operator==(const SuperPoly& o) const;

  /// Builds from unsorted terms, merging duplicates.
  static SuperPoly from_terms(int dim, std::vector<Term> terms);

 private:
  int dim_ = 0;
  std::vector<Term> terms_;
};

/// Accumulates terms in a hash map; finish() sorts and drops zeros.
class SuperPolyBuilder {
 public:
  explicit SuperPolyBuilder(int dim) : dim_(dim) {}
  void add(std::uint32_t odd, const Monomial& mono, const Rational& c);
  void add(const SuperPoly& p, const Rational& scale = 1);
  SuperPoly finish();
  bool empty() const { return acc_.empty(); }

 private:
  int dim_;
  std::unordered_map<TermKey, Rational, TermKeyHash> acc_;
};

/// Canonical text: terms ordered by (odd set, factor names), `+`/`-` joined,
/// coefficients as p/q, jets as d[f]/dx1dx2, odd generators as xi<k>.
std::string to_string(const SuperPoly& p);
std::string to_string(const Monomial& m);

/// Substitutes function symbols and parameters by scalar expressions; jets
/// become derivatives of the bound expression. Names must be registered.
SuperPoly substitute(const SuperPoly& a, const std::map<std::string, SuperPoly>& bindings);

/// Generic bivector sum_{i<j} P<ij>(x) xi_i xi_j with abstract coefficients
/// named `<stem><i><j>` (1-based).
SuperPoly abstract_bivector(int dim, std::string_view stem = "P");

}  // namespace graphflow
