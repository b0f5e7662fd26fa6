#include "graphflow/superpoly.hpp"

#include "graphflow/errors.hpp"
#include "graphflow/graph.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace graphflow {

// ---------------------------------------------------------------------------
// MultiIndex / Atom

MultiIndex MultiIndex::incremented(int i) const {
  if ((*this)[i] == 63) throw ResourceError("derivative order exceeds 63");
  return MultiIndex(bits_ + (std::uint64_t{1} << (6 * i)));
}

MultiIndex MultiIndex::operator+(MultiIndex other) const {
  MultiIndex out = *this;
  for (int i = 0; i < kMaxDimension; ++i)
    for (int k = 0; k < other[i]; ++k) out = out.incremented(i);
  return out;
}

int MultiIndex::order() const {
  int total = 0;
  for (int i = 0; i < kMaxDimension; ++i) total += (*this)[i];
  return total;
}

namespace {

constexpr std::uint64_t kIndexShift = 48;
constexpr std::uint64_t kCopyShift = 58;
constexpr std::uint64_t kKindShift = 62;

std::uint64_t pack(Atom::Kind kind, int copy, int index, std::uint64_t mi) {
  if (copy < 0 || copy >= kMaxCopies) throw ResourceError("vertex copy index out of range");
  if (index < 0 || index >= 1024) throw ResourceError("atom index out of range");
  return static_cast<std::uint64_t>(kind) << kKindShift | static_cast<std::uint64_t>(copy) << kCopyShift |
         static_cast<std::uint64_t>(index) << kIndexShift | mi;
}

}  // namespace

Atom Atom::coordinate(int i, int copy) {
  if (i < 0 || i >= kMaxDimension) throw InputError("coordinate index out of range");
  return Atom(pack(Kind::Coordinate, copy, i, 0));
}

Atom Atom::parameter(int symbol) { return Atom(pack(Kind::Parameter, 0, symbol, 0)); }

Atom Atom::jet(int symbol, MultiIndex mi, int copy) { return Atom(pack(Kind::Jet, copy, symbol, mi.bits())); }

Atom Atom::with_copy(int copy) const {
  if (kind() == Kind::Parameter) return *this;
  return Atom(pack(kind(), copy, index(), derivatives().bits()));
}

// ---------------------------------------------------------------------------
// Monomial

class MonomialBuilder {
 public:
  static Monomial normalize(FactorList f) {
    std::sort(f.begin(), f.end(), [](const Factor& a, const Factor& b) { return a.atom < b.atom; });
    Monomial m;
    for (const Factor& x : f) {
      if (!m.factors_.empty() && m.factors_.back().atom == x.atom)
        m.factors_.back().exponent += x.exponent;
      else
        m.factors_.push_back(x);
    }
    return m;
  }
  static Monomial from_sorted(FactorList f) {
    Monomial m;
    m.factors_ = std::move(f);
    return m;
  }
};

int Monomial::degree() const {
  int d = 0;
  for (const Factor& f : factors_) d += static_cast<int>(f.exponent);
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  FactorList out;
  out.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->atom < b->atom) {
      out.push_back(*a++);
    } else if (b->atom < a->atom) {
      out.push_back(*b++);
    } else {
      out.push_back({a->atom, a->exponent + b->exponent});
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, factors_.end());
  out.insert(out.end(), b, other.factors_.end());
  return MonomialBuilder::from_sorted(std::move(out));
}

Monomial Monomial::lowered(std::size_t k) const {
  FactorList out = factors_;
  if (--out[k].exponent == 0) out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
  return MonomialBuilder::from_sorted(std::move(out));
}

Monomial Monomial::times(Atom a, std::uint32_t e) const { return *this * Monomial(a, e); }

Monomial Monomial::lowered_times(std::size_t k, Atom a) const {
  FactorList out;
  bool placed = false;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    Factor f = factors_[j];
    if (j == k && --f.exponent == 0) continue;
    if (!placed && !(f.atom < a)) {
      if (f.atom == a) {
        ++f.exponent;
        placed = true;
      } else {
        out.push_back({a, 1});
        placed = true;
      }
    }
    out.push_back(f);
  }
  if (!placed) out.push_back({a, 1});
  return MonomialBuilder::from_sorted(std::move(out));
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const Factor& f : factors_) {
    h = (h ^ f.atom.key()) * 1099511628211ull;
    h = (h ^ f.exponent) * 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Odd sets

bool odd_less(std::uint32_t a, std::uint32_t b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  int d = std::countr_zero(a ^ b);
  return (a >> d & 1u) != 0;
}

int odd_product_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(j == 31 ? 0u : a >> (j + 1));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

namespace {

bool term_less(const SuperPoly::Term& a, const SuperPoly::Term& b) {
  if (a.odd != b.odd) return odd_less(a.odd, b.odd);
  return a.mono < b.mono;
}

void check_dim(int a, int b) {
  if (a != b) throw InputError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

// ---------------------------------------------------------------------------
// Builder

void SuperPolyBuilder::add(std::uint32_t odd, const Monomial& mono, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(TermKey{odd, mono}, c);
  if (!inserted) it->second += c;
}

void SuperPolyBuilder::add(const SuperPoly& p, const Rational& scale) {
  if (p.is_zero()) return;
  check_dim(dim_, p.dim());
  for (const auto& t : p.terms()) add(t.odd, t.mono, t.coeff * scale);
}

SuperPoly SuperPolyBuilder::finish() {
  std::vector<SuperPoly::Term> terms;
  terms.reserve(acc_.size());
  for (auto& [k, c] : acc_)
    if (c != 0) terms.push_back({k.odd, k.mono, c});
  acc_.clear();
  std::sort(terms.begin(), terms.end(), term_less);
  SuperPoly p(dim_);
  return SuperPoly::from_terms(dim_, std::move(terms));
}

SuperPoly SuperPoly::from_terms(int dim, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  SuperPoly p(dim);
  for (Term& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().odd == t.odd && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Constructors

SuperPoly SuperPoly::constant(int dim, const Rational& c) {
  SuperPoly p(dim);
  if (c != 0) p.terms_.push_back({0, Monomial(), c});
  return p;
}

SuperPoly SuperPoly::coordinate(int dim, int i) {
  if (i < 0 || i >= dim) throw InputError("coordinate x" + std::to_string(i + 1) + " outside dimension");
  return atom(dim, Atom::coordinate(i));
}

SuperPoly SuperPoly::odd(int dim, int k) {
  if (k < 0 || k >= kMaxOddVariables) throw InputError("odd variable index out of range");
  SuperPoly p(dim);
  p.terms_.push_back({1u << k, Monomial(), Rational(1)});
  return p;
}

SuperPoly SuperPoly::function(int dim, std::string_view name) {
  return atom(dim, Atom::jet(register_symbol(name, SymbolKind::Function)));
}

SuperPoly SuperPoly::parameter(int dim, std::string_view name) {
  return atom(dim, Atom::parameter(register_symbol(name, SymbolKind::Parameter)));
}

SuperPoly SuperPoly::atom(int dim, Atom a) {
  SuperPoly p(dim);
  p.terms_.push_back({0, Monomial(a), Rational(1)});
  return p;
}

// ---------------------------------------------------------------------------
// Queries

std::optional<int> SuperPoly::odd_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = std::popcount(terms_.front().odd);
  for (const Term& t : terms_)
    if (std::popcount(t.odd) != d) return std::nullopt;
  return d;
}

SuperPoly SuperPoly::coefficient(std::uint32_t odd) const {
  SuperPoly p(dim_);
  for (const Term& t : terms_)
    if (t.odd == odd) p.terms_.push_back({0, t.mono, t.coeff});
  return p;
}

std::vector<std::uint32_t> SuperPoly::odd_sets() const {
  std::vector<std::uint32_t> out;
  for (const Term& t : terms_)
    if (out.empty() || out.back() != t.odd) out.push_back(t.odd);
  return out;
}

std::optional<int> SuperPoly::function_degree() const {
  std::optional<int> deg;
  for (const Term& t : terms_) {
    int d = 0;
    for (const Factor& f : t.mono.factors())
      if (f.atom.kind() == Atom::Kind::Jet) d += static_cast<int>(f.exponent);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

bool SuperPoly::operator==(const SuperPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (!terms_.empty() && dim_ != o.dim_) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& a = terms_[i];
    const Term& b = o.terms_[i];
    if (a.odd != b.odd || a.mono != b.mono || a.coeff != b.coeff) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic

SuperPoly SuperPoly::operator-() const {
  SuperPoly p = *this;
  for (Term& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

SuperPoly merge(const SuperPoly& a, const SuperPoly& b, int sign) {
  if (a.is_zero()) return sign > 0 ? b : -b;
  if (b.is_zero()) return a;
  check_dim(a.dim(), b.dim());
  std::vector<SuperPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.terms().begin();
  auto j = b.terms().begin();
  while (i != a.terms().end() || j != b.terms().end()) {
    if (j == b.terms().end() || (i != a.terms().end() && term_less(*i, *j))) {
      out.push_back(*i++);
    } else if (i == a.terms().end() || term_less(*j, *i)) {
      out.push_back(*j++);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = i->coeff;
      if (sign > 0) c += j->coeff; else c -= j->coeff;
      if (c != 0) out.push_back({i->odd, i->mono, c});
      ++i;
      ++j;
    }
  }
  SuperPoly p(a.dim());
  return SuperPoly::from_terms(a.dim(), std::move(out));
}

}  // namespace

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
  int d = is_zero() ? o.dim_ : dim_;
  *this = merge(*this, o, 1);
  dim_ = d;
  return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
  int d = is_zero() ? o.dim_ : dim_;
  *this = merge(*this, o, -1);
  dim_ = d;
  return *this;
}

SuperPoly& SuperPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
  if (!a.is_zero() && !b.is_zero()) check_dim(a.dim(), b.dim());
  int dim = a.is_zero() ? b.dim() : a.dim();
  SuperPolyBuilder out(dim);
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      int s = odd_product_sign(ta.odd, tb.odd);
      if (s == 0) continue;
      Rational c = ta.coeff * tb.coeff;
      if (s < 0) c = -c;
      out.add(ta.odd | tb.odd, ta.mono * tb.mono, c);
    }
  return out.finish();
}

// ---------------------------------------------------------------------------
// Derivatives

SuperPoly SuperPoly::derivative_x(int i, int copy) const {
  if (i < 0 || i >= dim_) throw InputError("derivative index outside dimension");
  SuperPolyBuilder out(dim_);
  for (const Term& t : terms_) {
    const auto& fs = t.mono.factors();
    for (std::size_t k = 0; k < fs.size(); ++k) {
      Atom a = fs[k].atom;
      if (a.copy() != copy) continue;
      Rational c = t.coeff * fs[k].exponent;
      if (a.kind() == Atom::Kind::Coordinate && a.index() == i) {
        out.add(t.odd, t.mono.lowered(k), c);
      } else if (a.kind() == Atom::Kind::Jet) {
        Atom d = Atom::jet(a.index(), a.derivatives().incremented(i), copy);
        out.add(t.odd, t.mono.lowered_times(k, d), c);
      }
    }
  }
  return out.finish();
}

SuperPoly SuperPoly::derivative_odd(int k) const {
  SuperPoly p(dim_);
  const std::uint32_t bit = 1u << k;
  for (const Term& t : terms_) {
    if (!(t.odd & bit)) continue;
    int before = std::popcount(t.odd & (bit - 1));
    p.terms_.push_back({t.odd & ~bit, t.mono, before % 2 == 0 ? t.coeff : -t.coeff});
  }
  return from_terms(dim_, std::move(p.terms_));
}

SuperPoly SuperPoly::right_derivative_odd(int k) const {
  SuperPoly p(dim_);
  const std::uint32_t bit = 1u << k;
  for (const Term& t : terms_) {
    if (!(t.odd & bit)) continue;
    int after = std::popcount(t.odd & ~((bit << 1) - 1));
    if (k == 31) after = 0;
    p.terms_.push_back({t.odd & ~bit, t.mono, after % 2 == 0 ? t.coeff : -t.coeff});
  }
  return from_terms(dim_, std::move(p.terms_));
}

// ---------------------------------------------------------------------------
// Copies

SuperPoly SuperPoly::placed_on_copy(int copy) const {
  if ((copy + 1) * dim_ > kMaxOddVariables) throw ResourceError("too many vertex copies for dimension");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.odd >> dim_) throw InputError("placing a polynomial that already uses copied odd variables");
    FactorList fs;
    for (const Factor& f : t.mono.factors()) {
      if (f.atom.kind() != Atom::Kind::Parameter && f.atom.copy() != 0)
        throw InputError("placing a polynomial that already lives on a copy");
      fs.push_back({f.atom.with_copy(copy), f.exponent});
    }
    out.push_back({t.odd << (copy * dim_), MonomialBuilder::normalize(std::move(fs)), t.coeff});
  }
  return from_terms(dim_, std::move(out));
}

SuperPoly SuperPoly::restricted_to_diagonal() const {
  SuperPolyBuilder out(dim_);
  for (const Term& t : terms_) {
    std::uint32_t image = 0;
    std::vector<int> seq;
    bool collide = false;
    for (std::uint32_t rest = t.odd; rest; rest &= rest - 1) {
      int k = std::countr_zero(rest) % dim_;
      if (image >> k & 1u) {
        collide = true;
        break;
      }
      image |= 1u << k;
      seq.push_back(k);
    }
    if (collide) continue;
    FactorList fs;
    for (const Factor& f : t.mono.factors()) fs.push_back({f.atom.with_copy(0), f.exponent});
    int s = permutation_sign(seq);
    out.add(image, MonomialBuilder::normalize(std::move(fs)), s > 0 ? t.coeff : -t.coeff);
  }
  return out.finish();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string atom_text(Atom a) {
  std::string s;
  switch (a.kind()) {
    case Atom::Kind::Coordinate:
      s = "x" + std::to_string(a.index() + 1);
      break;
    case Atom::Kind::Parameter:
      s = symbol_name(a.index());
      break;
    case Atom::Kind::Jet: {
      MultiIndex mi = a.derivatives();
      if (mi.empty()) {
        s = symbol_name(a.index());
      } else {
        s = "d[" + symbol_name(a.index()) + "]/";
        for (int i = 0; i < kMaxDimension; ++i)
          for (int k = 0; k < mi[i]; ++k) s += "dx" + std::to_string(i + 1);
      }
      break;
    }
  }
  if (a.copy() != 0) s += "@" + std::to_string(a.copy());
  return s;
}

// Coordinates first, then parameters, then jets; within a kind by text.
using FactorKey = std::tuple<int, std::string, std::uint32_t>;

std::vector<FactorKey> factor_keys(const Monomial& m) {
  std::vector<FactorKey> keys;
  for (const Factor& f : m.factors()) keys.emplace_back(static_cast<int>(f.atom.kind()), atom_text(f.atom), f.exponent);
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::string keys_text(const std::vector<FactorKey>& keys) {
  std::string s;
  for (const auto& [kind, text, e] : keys) {
    if (!s.empty()) s += "*";
    s += text;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string odd_text(std::uint32_t odd) {
  std::string s;
  for (std::uint32_t rest = odd; rest; rest &= rest - 1) {
    if (!s.empty()) s += "*";
    s += "xi" + std::to_string(std::countr_zero(rest) + 1);
  }
  return s;
}

}  // namespace

std::string to_string(const Monomial& m) {
  std::string s = keys_text(factor_keys(m));
  return s.empty() ? "1" : s;
}

std::string to_string(const SuperPoly& p) {
  if (p.is_zero()) return "0";
  struct Row {
    std::uint32_t odd;
    std::vector<FactorKey> keys;
    const Rational* coeff;
  };
  std::vector<Row> rows;
  rows.reserve(p.size());
  for (const auto& t : p.terms()) rows.push_back({t.odd, factor_keys(t.mono), &t.coeff});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.odd != b.odd) return odd_less(a.odd, b.odd);
    return a.keys < b.keys;
  });
  std::string out;
  for (const Row& r : rows) {
    Rational c = *r.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string body = keys_text(r.keys);
    std::string odd = odd_text(r.odd);
    if (!odd.empty()) body += (body.empty() ? "" : "*") + odd;
    if (body.empty())
      out += to_string(c);
    else if (c == 1)
      out += body;
    else
      out += to_string(c) + "*" + body;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

SuperPoly substitute(const SuperPoly& a, const std::map<std::string, SuperPoly>& bindings) {
  std::map<int, const SuperPoly*> by_id;
  for (const auto& [name, value] : bindings) {
    auto id = find_symbol(name);
    if (!id) continue;
    if (!value.is_zero()) {
      check_dim(a.dim(), value.dim());
      for (const auto& t : value.terms())
        if (t.odd != 0) throw InputError("binding for '" + name + "' must be scalar");
    }
    by_id.emplace(*id, &value);
  }
  std::map<std::pair<int, std::uint64_t>, SuperPoly> jets;
  auto jet_value = [&](Atom atom) -> const SuperPoly& {
    auto key = std::make_pair(atom.index(), atom.derivatives().bits());
    auto it = jets.find(key);
    if (it != jets.end()) return it->second;
    SuperPoly v = *by_id.at(atom.index());
    MultiIndex mi = atom.derivatives();
    for (int i = 0; i < kMaxDimension; ++i)
      for (int k = 0; k < mi[i]; ++k) v = v.derivative_x(i);
    return jets.emplace(key, std::move(v)).first->second;
  };

  SuperPolyBuilder out(a.dim());
  for (const auto& t : a.terms()) {
    SuperPoly value = SuperPoly::constant(a.dim(), t.coeff);
    FactorList kept;
    for (const Factor& f : t.mono.factors()) {
      Atom atom = f.atom;
      bool bound = atom.kind() != Atom::Kind::Coordinate && by_id.count(atom.index());
      if (!bound) {
        kept.push_back(f);
        continue;
      }
      if (atom.copy() != 0) throw InputError("cannot substitute into a vertex copy");
      const SuperPoly& v = jet_value(atom);
      for (std::uint32_t e = 0; e < f.exponent; ++e) value = value * v;
      if (value.is_zero()) break;
    }
    if (value.is_zero()) continue;
    Monomial rest = MonomialBuilder::from_sorted(std::move(kept));
    for (const auto& vt : value.terms()) out.add(t.odd, vt.mono * rest, vt.coeff);
  }
  return out.finish();
}

SuperPoly abstract_bivector(int dim, std::string_view stem) {
  SuperPoly p(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      std::string name = std::string(stem) + std::to_string(i + 1) + std::to_string(j + 1);
      p += SuperPoly::function(dim, name) * SuperPoly::odd(dim, i) * SuperPoly::odd(dim, j);
    }
  return p;
}

}  // namespace graphflow
