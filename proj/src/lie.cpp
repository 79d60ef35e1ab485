#include "mol/lie.hpp"

#include <algorithm>
#include <limits>

#include "mol/errors.hpp"

namespace mol {

namespace {

constexpr std::uint64_t kCodeLimit = std::uint64_t{1} << 62;

std::uint64_t checked_power(std::size_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > kCodeLimit / base) {
      throw ResourceLimit("alphabet rank " + std::to_string(base) + " and class " +
                          std::to_string(exponent) + " exceed the word-encoding range");
    }
    result *= base;
  }
  return result;
}

std::uint64_t power_of(std::size_t base, std::uint32_t exponent) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

void require_context(std::size_t rank, int cutoff) {
  if (rank < 1) throw DomainError("rank must be at least 1");
  if (cutoff < 1) throw DomainError("class must be at least 1");
  checked_power(rank, cutoff);
}

std::string letter_name(std::uint32_t letter, const Alphabet* names) {
  if (names != nullptr && letter < names->rank()) return names->name(letter);
  return "x" + std::to_string(letter + 1);
}

// Homogeneous associative polynomial keyed by word code.
using HomogeneousPoly = std::map<std::uint64_t, Rational>;

void add_to(HomogeneousPoly& p, std::uint64_t code, const Rational& c) {
  auto [it, inserted] = p.try_emplace(code, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) p.erase(it);
  }
}

// Peels Hall elements off a homogeneous polynomial. Terms whose smallest word
// is not a Lyndon word are moved to `residual`.
SparseVector express_homogeneous(HomogeneousPoly p, int degree, const HallBasis& basis,
                                 HomogeneousPoly* residual) {
  std::map<std::uint32_t, Rational> coords;
  const std::size_t begin = basis.degree_begin(degree);
  while (!p.empty()) {
    auto first = p.begin();
    const auto idx = basis.find(Monomial{static_cast<std::uint32_t>(degree), first->first});
    if (!idx) {
      if (residual != nullptr) add_to(*residual, first->first, first->second);
      p.erase(first);
      continue;
    }
    const Rational c = first->second;
    coords.emplace(static_cast<std::uint32_t>(*idx - begin), c);
    for (const auto& [code, k] : basis.expansion(*idx)) add_to(p, code, -c * Rational(static_cast<long>(k)));
  }
  return SparseVector(coords.begin(), coords.end());
}

}  // namespace

std::vector<std::uint32_t> monomial_letters(const Monomial& m, std::size_t rank) {
  std::vector<std::uint32_t> letters(m.degree);
  std::uint64_t code = m.code;
  for (std::size_t i = m.degree; i-- > 0;) {
    letters[i] = static_cast<std::uint32_t>(rank > 1 ? code % rank : 0);
    if (rank > 1) code /= rank;
  }
  return letters;
}

Monomial concat(const Monomial& u, const Monomial& v, std::size_t rank) {
  return Monomial{u.degree + v.degree, u.code * power_of(rank, v.degree) + v.code};
}

std::size_t witt_dimension(std::size_t rank, int degree) {
  if (degree < 1) return 0;
  auto mobius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
      }
    }
    if (n > 1) result = -result;
    return result;
  };
  constexpr __int128 kLimit = static_cast<__int128>(1) << 100;
  __int128 exact = 0;
  for (int d = 1; d <= degree; ++d) {
    if (degree % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    __int128 term = 1;
    for (int i = 0; i < degree / d; ++i) {
      term *= static_cast<__int128>(rank);
      if (term > kLimit) throw ResourceLimit("Witt dimension overflow");
    }
    exact += mu * term;
  }
  return static_cast<std::size_t>(exact / degree);
}

// ---------------------------------------------------------------- NCSeries

NCSeries::NCSeries(std::size_t rank, int cutoff) : rank_(rank), cutoff_(cutoff) {
  require_context(rank, cutoff);
}

NCSeries NCSeries::one(std::size_t rank, int cutoff) {
  NCSeries s(rank, cutoff);
  s.terms_.emplace(Monomial{0, 0}, Rational(1));
  return s;
}

NCSeries NCSeries::letter(std::size_t rank, int cutoff, std::uint32_t index) {
  if (index >= rank) throw DomainError("letter outside the alphabet");
  NCSeries s(rank, cutoff);
  s.terms_.emplace(Monomial{1, index}, Rational(1));
  return s;
}

Rational NCSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational NCSeries::constant_term() const { return coefficient(Monomial{0, 0}); }

void NCSeries::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.degree) > cutoff_ || mol::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (mol::is_zero(it->second)) terms_.erase(it);
  }
}

NCSeries NCSeries::homogeneous(int degree) const {
  NCSeries out(rank_, cutoff_);
  auto lo = terms_.lower_bound(Monomial{static_cast<std::uint32_t>(degree), 0});
  auto hi = terms_.lower_bound(Monomial{static_cast<std::uint32_t>(degree) + 1, 0});
  out.terms_.insert(lo, hi);
  return out;
}

int NCSeries::lowest_nonconstant_degree() const {
  auto it = terms_.lower_bound(Monomial{1, 0});
  return it == terms_.end() ? 0 : static_cast<int>(it->first.degree);
}

NCSeries& NCSeries::operator+=(const NCSeries& other) {
  if (rank_ != other.rank_) throw MismatchError("series over different alphabets");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& other) {
  if (rank_ != other.rank_) throw MismatchError("series over different alphabets");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

NCSeries& NCSeries::operator*=(const Rational& s) {
  if (mol::is_zero(s)) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= s;
  }
  return *this;
}

bool NCSeries::operator==(const NCSeries& other) const {
  return rank_ == other.rank_ && terms_ == other.terms_;
}

NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
NCSeries operator*(const Rational& s, NCSeries a) { return a *= s; }

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
  if (a.rank_ != b.rank_) throw MismatchError("series over different alphabets");
  const int cutoff = std::min(a.cutoff_, b.cutoff_);
  NCSeries out(a.rank_, cutoff);
  for (const auto& [ma, ca] : a.terms_) {
    if (static_cast<int>(ma.degree) > cutoff) break;
    const auto room = static_cast<std::uint32_t>(cutoff) - ma.degree;
    for (const auto& [mb, cb] : b.terms_) {
      if (mb.degree > room) break;
      out.add_term(concat(ma, mb, a.rank_), ca * cb);
    }
  }
  return out;
}

NCSeries exp_series(const NCSeries& x) {
  if (!is_zero(x.constant_term())) throw DomainError("exp needs a series without constant term");
  NCSeries result = NCSeries::one(x.rank(), x.cutoff());
  NCSeries term = result;
  for (int k = 1; k <= x.cutoff(); ++k) {
    term = term * x;
    term *= Rational(1, k);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

NCSeries log_series(const NCSeries& s) {
  if (s.constant_term() != 1) throw DomainError("log needs a series with constant term 1");
  NCSeries y = s - NCSeries::one(s.rank(), s.cutoff());
  NCSeries result(s.rank(), s.cutoff());
  NCSeries power = y;
  for (int k = 1; k <= s.cutoff() && !power.is_zero(); ++k) {
    NCSeries term = power;
    term *= Rational(k % 2 == 1 ? 1 : -1, k);
    result += term;
    power = power * y;
  }
  return result;
}

std::string to_string(const NCSeries& s, const Alphabet* names) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    std::string word;
    for (auto l : monomial_letters(m, s.rank())) {
      if (!word.empty()) word += '*';
      word += letter_name(l, names);
    }
    const bool negative = sgn(c) < 0;
    const Rational magnitude = abs(c);
    std::string term;
    if (word.empty()) {
      term = to_string(magnitude);
    } else {
      term = magnitude == 1 ? word : to_string(magnitude) + "*" + word;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

// --------------------------------------------------------------- HallBasis

HallBasis::HallBasis(std::size_t rank, int cutoff, std::size_t max_size)
    : rank_(rank), cutoff_(cutoff) {
  require_context(rank, cutoff);
  std::size_t total = 0;
  for (int d = 1; d <= cutoff; ++d) {
    total += witt_dimension(rank, d);
    if (total > max_size) {
      throw ResourceLimit("Hall basis for rank " + std::to_string(rank) + " through class " +
                          std::to_string(cutoff) + " exceeds the cap of " +
                          std::to_string(max_size) + " elements");
    }
  }

  // Duval's algorithm: Lyndon words of length <= cutoff in lexicographic order.
  std::vector<std::vector<std::uint32_t>> lyndon;
  std::vector<std::uint32_t> w{0};
  const auto n = static_cast<std::size_t>(cutoff);
  while (!w.empty()) {
    lyndon.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == rank - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  std::stable_sort(lyndon.begin(), lyndon.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  offsets_.assign(static_cast<std::size_t>(cutoff) + 2, 0);
  elements_.reserve(lyndon.size());
  expansions_.reserve(lyndon.size());
  auto encode = [rank](std::span<const std::uint32_t> letters) {
    std::uint64_t code = 0;
    for (auto l : letters) code = code * rank + l;
    return code;
  };
  for (const auto& word : lyndon) {
    HallElement e;
    e.letters = word;
    e.degree = static_cast<int>(word.size());
    e.code = encode(word);
    const std::size_t index = elements_.size();
    if (e.degree == 1) {
      expansions_.push_back({{e.code, 1}});
    } else {
      // Standard factorization: the right factor is the longest proper
      // suffix that is itself a Lyndon word.
      for (std::size_t i = 1; i < word.size(); ++i) {
        std::span<const std::uint32_t> suffix(word.data() + i, word.size() - i);
        auto it = index_.find(Monomial{static_cast<std::uint32_t>(suffix.size()), encode(suffix)});
        if (it != index_.end()) {
          e.right = it->second;
          e.left = index_.at(Monomial{static_cast<std::uint32_t>(i),
                                      encode(std::span<const std::uint32_t>(word.data(), i))});
          break;
        }
      }
      const auto& left = elements_[e.left];
      const auto& right = elements_[e.right];
      const std::uint64_t shift_right = power_of(rank, static_cast<std::uint32_t>(right.degree));
      const std::uint64_t shift_left = power_of(rank, static_cast<std::uint32_t>(left.degree));
      std::map<std::uint64_t, long long> acc;
      for (const auto& [cu, ku] : expansions_[e.left]) {
        for (const auto& [cv, kv] : expansions_[e.right]) {
          acc[cu * shift_right + cv] += ku * kv;
          acc[cv * shift_left + cu] -= ku * kv;
        }
      }
      Expansion ex;
      for (const auto& [code, k] : acc) {
        if (k != 0) ex.emplace_back(code, k);
      }
      expansions_.push_back(std::move(ex));
    }
    index_.emplace(Monomial{static_cast<std::uint32_t>(e.degree), e.code}, index);
    ++offsets_[static_cast<std::size_t>(e.degree) + 1];
    elements_.push_back(std::move(e));
  }
  for (std::size_t d = 1; d < offsets_.size(); ++d) offsets_[d] += offsets_[d - 1];
}

std::size_t HallBasis::degree_begin(int degree) const {
  if (degree < 1 || degree > cutoff_) throw DomainError("degree outside 1..class");
  return offsets_[static_cast<std::size_t>(degree)];
}

std::size_t HallBasis::degree_size(int degree) const {
  if (degree < 1 || degree > cutoff_) throw DomainError("degree outside 1..class");
  return offsets_[static_cast<std::size_t>(degree) + 1] - offsets_[static_cast<std::size_t>(degree)];
}

std::vector<std::size_t> HallBasis::dimensions() const {
  std::vector<std::size_t> dims;
  for (int d = 1; d <= cutoff_; ++d) dims.push_back(degree_size(d));
  return dims;
}

std::optional<std::size_t> HallBasis::find(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string HallBasis::to_string(std::size_t index, const Alphabet* names) const {
  const auto& e = elements_.at(index);
  if (e.degree == 1) return letter_name(e.letters[0], names);
  return "[" + to_string(e.left, names) + "," + to_string(e.right, names) + "]";
}

HallBasisPtr hall_basis(std::size_t rank, int cutoff, std::size_t max_size) {
  return std::make_shared<const HallBasis>(rank, cutoff, max_size);
}

// -------------------------------------------------------------- LieElement

LieElement::LieElement(HallBasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw DomainError("Lie element needs a basis");
}

LieElement LieElement::basis_element(HallBasisPtr basis, std::size_t index, const Rational& c) {
  LieElement x(std::move(basis));
  if (index >= x.basis().size()) throw DomainError("Hall index out of range");
  x.add(index, c);
  return x;
}

LieElement LieElement::generator(HallBasisPtr basis, std::uint32_t letter, const Rational& c) {
  if (letter >= basis->rank()) throw DomainError("generator outside the alphabet");
  // Degree-1 Hall elements are the letters in order.
  return basis_element(std::move(basis), letter, c);
}

Rational LieElement::coefficient(std::size_t index) const {
  auto it = coords_.find(index);
  return it == coords_.end() ? Rational(0) : it->second;
}

void LieElement::add(std::size_t index, const Rational& c) {
  if (index >= basis_->size()) throw DomainError("Hall index out of range");
  if (mol::is_zero(c)) return;
  auto [it, inserted] = coords_.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (mol::is_zero(it->second)) coords_.erase(it);
  }
}

LieElement LieElement::homogeneous(int degree) const {
  LieElement out(basis_);
  if (degree < 1 || degree > basis_->cutoff()) return out;
  const auto begin = basis_->degree_begin(degree);
  const auto end = begin + basis_->degree_size(degree);
  out.coords_.insert(coords_.lower_bound(begin), coords_.lower_bound(end));
  return out;
}

int LieElement::lowest_degree() const {
  return coords_.empty() ? 0 : basis_->element(coords_.begin()->first).degree;
}

bool LieElement::is_homogeneous() const {
  return coords_.empty() ||
         basis_->element(coords_.begin()->first).degree == basis_->element(coords_.rbegin()->first).degree;
}

SparseVector LieElement::component(int degree) const {
  SparseVector v;
  if (degree < 1 || degree > basis_->cutoff()) return v;
  const auto begin = basis_->degree_begin(degree);
  const auto end = begin + basis_->degree_size(degree);
  for (auto it = coords_.lower_bound(begin); it != coords_.end() && it->first < end; ++it) {
    v.emplace_back(static_cast<std::uint32_t>(it->first - begin), it->second);
  }
  return v;
}

LieElement LieElement::from_component(HallBasisPtr basis, int degree, const SparseVector& v) {
  LieElement x(std::move(basis));
  const auto begin = x.basis().degree_begin(degree);
  for (const auto& [col, c] : v) x.add(begin + col, c);
  return x;
}

LieElement& LieElement::operator+=(const LieElement& other) {
  if (basis_ != other.basis_) throw MismatchError("Lie elements over different bases");
  for (const auto& [i, c] : other.coords_) add(i, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& other) {
  if (basis_ != other.basis_) throw MismatchError("Lie elements over different bases");
  for (const auto& [i, c] : other.coords_) add(i, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& s) {
  if (mol::is_zero(s)) {
    coords_.clear();
  } else {
    for (auto& [i, c] : coords_) c *= s;
  }
  return *this;
}

bool LieElement::operator==(const LieElement& other) const {
  return basis_ == other.basis_ && coords_ == other.coords_;
}

LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
LieElement operator*(const Rational& s, LieElement a) { return a *= s; }

std::string to_string(const LieElement& x, const Alphabet* names) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : x.coords()) {
    const bool negative = sgn(c) < 0;
    const Rational magnitude = abs(c);
    const std::string tree = x.basis().to_string(i, names);
    const std::string term = magnitude == 1 ? tree : to_string(magnitude) + "*" + tree;
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

NCSeries to_series(const LieElement& x) {
  const auto& basis = x.basis();
  NCSeries s(basis.rank(), basis.cutoff());
  for (const auto& [i, c] : x.coords()) {
    const auto degree = static_cast<std::uint32_t>(basis.element(i).degree);
    for (const auto& [code, k] : basis.expansion(i)) s.add_term(Monomial{degree, code}, c * Rational(static_cast<long>(k)));
  }
  return s;
}

HallExpression express_in_hall(const NCSeries& s, const HallBasisPtr& basis) {
  if (s.rank() != basis->rank()) throw MismatchError("series and basis have different ranks");
  HallExpression out{LieElement(basis), NCSeries(s.rank(), s.cutoff())};
  for (int d = 1; d <= s.cutoff(); ++d) {
    HomogeneousPoly p;
    auto lo = s.terms().lower_bound(Monomial{static_cast<std::uint32_t>(d), 0});
    auto hi = s.terms().lower_bound(Monomial{static_cast<std::uint32_t>(d) + 1, 0});
    for (auto it = lo; it != hi; ++it) p.emplace(it->first.code, it->second);
    if (p.empty()) continue;
    HomogeneousPoly residual;
    if (d > basis->cutoff()) {
      residual = std::move(p);
    } else {
      const SparseVector v = express_homogeneous(std::move(p), d, *basis, &residual);
      out.element += LieElement::from_component(basis, d, v);
    }
    for (const auto& [code, c] : residual) {
      out.residual.add_term(Monomial{static_cast<std::uint32_t>(d), code}, c);
    }
  }
  return out;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  if (x.basis_ptr() != y.basis_ptr()) throw MismatchError("Lie elements over different bases");
  const NCSeries sx = to_series(x);
  const NCSeries sy = to_series(y);
  auto expr = express_in_hall(sx * sy - sy * sx, x.basis_ptr());
  if (!expr.residual.is_zero()) throw InvariantViolation("commutator of Lie elements is not Lie");
  return std::move(expr.element);
}

NCSeries magnus(const Word& w, int cutoff) {
  const std::size_t rank = w.alphabet()->rank();
  NCSeries result = NCSeries::one(rank, cutoff);
  for (const auto& l : w.letters()) {
    NCSeries factor = NCSeries::one(rank, cutoff);
    Monomial power{0, 0};
    const Monomial x{1, l.generator};
    const int terms = l.sign > 0 ? 1 : cutoff;
    for (int k = 1; k <= terms; ++k) {
      power = concat(power, x, rank);
      factor.add_term(power, Rational(l.sign > 0 || k % 2 == 0 ? 1 : -1));
    }
    result = result * factor;
  }
  return result;
}

std::string to_string(const LcsDegree& d) {
  switch (d.kind) {
    case LcsDegree::Kind::Identity:
      return "identity";
    case LcsDegree::Kind::ExceedsCutoff:
      return "exceeds class " + std::to_string(d.degree);
    case LcsDegree::Kind::Finite:
      break;
  }
  return std::to_string(d.degree);
}

LcsDegree lcs_degree(const Word& w, int cutoff) {
  if (w.is_identity()) return {LcsDegree::Kind::Identity, 0};
  const int low = magnus(w, cutoff).lowest_nonconstant_degree();
  if (low == 0) return {LcsDegree::Kind::ExceedsCutoff, cutoff};
  return {LcsDegree::Kind::Finite, low};
}

LieElement log_leading(const Word& w, const HallBasisPtr& basis) {
  if (w.is_identity()) throw DomainError("log_leading of the identity word");
  if (w.alphabet()->rank() != basis->rank()) throw MismatchError("word and basis have different ranks");
  const NCSeries s = magnus(w, basis->cutoff());
  const int low = s.lowest_nonconstant_degree();
  if (low == 0) return LieElement(basis);
  // The lowest component of magnus(w) - 1 equals that of its logarithm.
  auto expr = express_in_hall(s.homogeneous(low), basis);
  if (!expr.residual.is_zero()) throw InvariantViolation("leading Magnus term is not a Lie element");
  return std::move(expr.element);
}

LieElement malcev_log(const Word& w, const HallBasisPtr& basis) {
  if (w.alphabet()->rank() != basis->rank()) throw MismatchError("word and basis have different ranks");
  const std::size_t rank = basis->rank();
  const int cutoff = basis->cutoff();
  NCSeries image = NCSeries::one(rank, cutoff);
  for (const Letter& l : w.letters()) {
    image = image * exp_series(Rational(l.sign) * NCSeries::letter(rank, cutoff, l.generator));
  }
  auto expr = express_in_hall(log_series(image), basis);
  if (!expr.residual.is_zero()) throw InvariantViolation("log of a grouplike series is not primitive");
  return std::move(expr.element);
}

LieElement bch(const LieElement& x, const LieElement& y) {
  if (x.basis_ptr() != y.basis_ptr()) throw MismatchError("Lie elements over different bases");
  const NCSeries product = exp_series(to_series(x)) * exp_series(to_series(y));
  auto expr = express_in_hall(log_series(product), x.basis_ptr());
  if (!expr.residual.is_zero()) throw InvariantViolation("BCH series is not a Lie element");
  return std::move(expr.element);
}

// ------------------------------------------------------ LetterBracketTable

LetterBracketTable::LetterBracketTable(HallBasisPtr basis) : basis_(std::move(basis)) {
  const auto& b = *basis_;
  const std::size_t rank = b.rank();
  std::size_t limit = b.size();
  if (b.cutoff() >= 1) limit = b.degree_begin(b.cutoff());
  table_.resize(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    const int degree = b.element(i).degree;
    const std::uint64_t shift = power_of(rank, static_cast<std::uint32_t>(degree));
    table_[i].reserve(rank);
    for (std::uint32_t letter = 0; letter < rank; ++letter) {
      HomogeneousPoly p;
      for (const auto& [code, k] : b.expansion(i)) {
        add_to(p, code * rank + letter, Rational(static_cast<long>(k)));
        add_to(p, letter * shift + code, Rational(static_cast<long>(-k)));
      }
      HomogeneousPoly residual;
      table_[i].push_back(express_homogeneous(std::move(p), degree + 1, b, &residual));
      if (!residual.empty()) throw InvariantViolation("bracket with a generator is not Lie");
    }
  }
}

const SparseVector& LetterBracketTable::bracket(std::size_t index, std::uint32_t letter) const {
  if (index >= table_.size()) throw DomainError("bracket would exceed the class cutoff");
  return table_[index].at(letter);
}

SparseVector LetterBracketTable::bracket(int degree, const SparseVector& v, std::uint32_t letter) const {
  const std::size_t begin = basis_->degree_begin(degree);
  std::map<std::uint32_t, Rational> acc;
  for (const auto& [col, c] : v) {
    for (const auto& [out_col, k] : bracket(begin + col, letter)) {
      auto [it, inserted] = acc.try_emplace(out_col, c * k);
      if (!inserted) {
        it->second += c * k;
        if (is_zero(it->second)) acc.erase(it);
      }
    }
  }
  return SparseVector(acc.begin(), acc.end());
}

// ---------------------------------------------------------- GradedSubspace

GradedSubspace::GradedSubspace(HallBasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw DomainError("graded subspace needs a basis");
  for (int d = 1; d <= basis_->cutoff(); ++d) components_.emplace_back(basis_->degree_size(d));
}

const EchelonBasis& GradedSubspace::component(int degree) const {
  if (degree < 1 || degree > basis_->cutoff()) throw DomainError("degree outside 1..class");
  return components_[static_cast<std::size_t>(degree - 1)];
}

EchelonBasis& GradedSubspace::component(int degree) {
  if (degree < 1 || degree > basis_->cutoff()) throw DomainError("degree outside 1..class");
  return components_[static_cast<std::size_t>(degree - 1)];
}

std::vector<std::size_t> GradedSubspace::dimensions() const {
  std::vector<std::size_t> dims;
  for (const auto& c : components_) dims.push_back(c.rank());
  return dims;
}

bool GradedSubspace::insert(const LieElement& x) {
  if (x.basis_ptr() != basis_) throw MismatchError("element and subspace over different bases");
  bool grew = false;
  for (int d = 1; d <= basis_->cutoff(); ++d) {
    auto v = x.component(d);
    if (!v.empty()) grew = component(d).insert(std::move(v)) || grew;
  }
  return grew;
}

bool GradedSubspace::contains(const LieElement& x) const {
  if (x.basis_ptr() != basis_) throw MismatchError("element and subspace over different bases");
  for (int d = 1; d <= basis_->cutoff(); ++d) {
    auto v = x.component(d);
    if (!v.empty() && !component(d).contains(v)) return false;
  }
  return true;
}

bool GradedSubspace::is_subspace_of(const GradedSubspace& other) const {
  if (basis_ != other.basis_) throw MismatchError("subspaces over different bases");
  for (int d = 1; d <= basis_->cutoff(); ++d) {
    for (const auto& row : component(d).rows()) {
      if (!other.component(d).contains(row)) return false;
    }
  }
  return true;
}

std::vector<LieElement> GradedSubspace::basis_elements(int degree) const {
  std::vector<LieElement> out;
  for (const auto& row : component(degree).reduced_rows()) {
    out.push_back(LieElement::from_component(basis_, degree, row));
  }
  return out;
}

bool GradedSubspace::operator==(const GradedSubspace& other) const {
  return basis_ == other.basis_ && dimensions() == other.dimensions() && is_subspace_of(other);
}

GradedSubspace ideal_closure(std::span<const LieElement> gens, const LetterBracketTable& table) {
  const auto& basis = table.basis_ptr();
  GradedSubspace out(basis);
  for (const auto& g : gens) {
    if (g.basis_ptr() != basis) throw MismatchError("generator over a different basis");
  }
  for (int d = 1; d <= basis->cutoff(); ++d) {
    auto& comp = out.component(d);
    for (const auto& g : gens) {
      if (comp.is_full()) break;
      auto v = g.component(d);
      if (!v.empty()) comp.insert(std::move(v));
    }
    if (d == 1) continue;
    const auto& previous = out.component(d - 1).rows();
    for (const auto& row : previous) {
      for (std::uint32_t letter = 0; letter < basis->rank() && !comp.is_full(); ++letter) {
        comp.insert(table.bracket(d - 1, row, letter));
      }
    }
  }
  return out;
}

GradedSubspace bracket_with_algebra(const GradedSubspace& subspace, const LetterBracketTable& table) {
  const auto& basis = table.basis_ptr();
  if (subspace.basis_ptr() != basis) throw MismatchError("subspace over a different basis");
  GradedSubspace out(basis);
  for (int d = 2; d <= basis->cutoff(); ++d) {
    auto& comp = out.component(d);
    for (const auto& row : subspace.component(d - 1).rows()) {
      for (std::uint32_t letter = 0; letter < basis->rank() && !comp.is_full(); ++letter) {
        comp.insert(table.bracket(d - 1, row, letter));
      }
    }
  }
  return out;
}

bool graded_membership(const LieElement& x, const GradedSubspace& s) { return s.contains(x); }

}  // namespace mol
