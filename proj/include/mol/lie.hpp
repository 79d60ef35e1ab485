#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mol/freegroup.hpp"
#include "mol/linalg.hpp"
#include "mol/rational.hpp"

namespace mol {

/// Default cap on the total number of Hall basis elements.
inline constexpr std::size_t kDefaultMaxBasis = 1'000'000;
/// Default truncation class for orbit computations.
inline constexpr int kDefaultClass = 6;

/// A word in the free associative algebra on `rank` letters. Letters are
/// packed most-significant-first in base `rank`, so for a fixed degree the
/// numeric order of `code` is the lexicographic order of words.
struct Monomial {
  std::uint32_t degree = 0;
  std::uint64_t code = 0;

  auto operator<=>(const Monomial&) const = default;
};

std::vector<std::uint32_t> monomial_letters(const Monomial& m, std::size_t rank);
Monomial concat(const Monomial& u, const Monomial& v, std::size_t rank);

/// Number of degree-`degree` elements of a Hall basis in `rank` generators
/// (necklace polynomial).
std::size_t witt_dimension(std::size_t rank, int degree);

/// Truncated noncommutative power series with rational coefficients:
/// all terms of degree greater than `cutoff` are dropped.
class NCSeries {
 public:
  NCSeries(std::size_t rank, int cutoff);

  static NCSeries one(std::size_t rank, int cutoff);
  static NCSeries letter(std::size_t rank, int cutoff, std::uint32_t index);

  std::size_t rank() const noexcept { return rank_; }
  int cutoff() const noexcept { return cutoff_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  void add_term(const Monomial& m, const Rational& c);

  bool is_zero() const noexcept { return terms_.empty(); }
  NCSeries homogeneous(int degree) const;
  /// Smallest degree >= 1 carrying a nonzero coefficient, or 0 if none.
  int lowest_nonconstant_degree() const;

  NCSeries& operator+=(const NCSeries& other);
  NCSeries& operator-=(const NCSeries& other);
  NCSeries& operator*=(const Rational& s);

  bool operator==(const NCSeries& other) const;

 private:
  std::size_t rank_;
  int cutoff_;
  std::map<Monomial, Rational> terms_;

  friend NCSeries operator*(const NCSeries&, const NCSeries&);
};

NCSeries operator+(NCSeries a, const NCSeries& b);
NCSeries operator-(NCSeries a, const NCSeries& b);
NCSeries operator*(const NCSeries& a, const NCSeries& b);
NCSeries operator*(const Rational& s, NCSeries a);

/// exp(x) for a series without constant term.
NCSeries exp_series(const NCSeries& x);
/// log(s) for a series with constant term 1.
NCSeries log_series(const NCSeries& s);

/// Human-readable form, letters named by the alphabet when given.
std::string to_string(const NCSeries& s, const Alphabet* names = nullptr);

/// One element of the Lyndon (Hall) basis: the standard bracketing of a
/// Lyndon word. Degree-1 elements have no factors.
struct HallElement {
  std::vector<std::uint32_t> letters;
  int degree = 0;
  std::uint64_t code = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

/// Hall basis of the free Lie algebra through degree `cutoff`, ordered by
/// degree and then lexicographically by Lyndon word. Each element carries its
/// expansion in the free associative algebra; the lexicographically smallest
/// word of that expansion is the Lyndon word itself with coefficient 1.
class HallBasis {
 public:
  HallBasis(std::size_t rank, int cutoff, std::size_t max_size = kDefaultMaxBasis);

  std::size_t rank() const noexcept { return rank_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return elements_.size(); }

  const HallElement& element(std::size_t index) const { return elements_.at(index); }
  std::size_t degree_begin(int degree) const;
  std::size_t degree_size(int degree) const;
  /// Per-degree sizes for degrees 1..cutoff.
  std::vector<std::size_t> dimensions() const;

  /// Global index of the element whose Lyndon word is `m`, if any.
  std::optional<std::size_t> find(const Monomial& m) const;

  using Expansion = std::vector<std::pair<std::uint64_t, long long>>;
  /// Associative expansion (codes at the element's degree, sorted by code).
  const Expansion& expansion(std::size_t index) const { return expansions_.at(index); }

  /// Bracket notation, e.g. "[d1,[d1,d2]]"; letters named x1, x2, ... when
  /// no alphabet is supplied.
  std::string to_string(std::size_t index, const Alphabet* names = nullptr) const;

 private:
  std::size_t rank_;
  int cutoff_;
  std::vector<HallElement> elements_;
  std::vector<std::size_t> offsets_;
  std::map<Monomial, std::size_t> index_;
  std::vector<Expansion> expansions_;
};

using HallBasisPtr = std::shared_ptr<const HallBasis>;

HallBasisPtr hall_basis(std::size_t rank, int cutoff, std::size_t max_size = kDefaultMaxBasis);

/// Element of the truncated free Lie algebra in Hall coordinates.
class LieElement {
 public:
  explicit LieElement(HallBasisPtr basis);

  static LieElement basis_element(HallBasisPtr basis, std::size_t index, const Rational& c = 1);
  static LieElement generator(HallBasisPtr basis, std::uint32_t letter, const Rational& c = 1);

  const HallBasisPtr& basis_ptr() const noexcept { return basis_; }
  const HallBasis& basis() const noexcept { return *basis_; }
  const std::map<std::size_t, Rational>& coords() const noexcept { return coords_; }

  Rational coefficient(std::size_t index) const;
  void add(std::size_t index, const Rational& c);

  bool is_zero() const noexcept { return coords_.empty(); }
  LieElement homogeneous(int degree) const;
  /// Smallest degree with a nonzero coordinate, 0 for the zero element.
  int lowest_degree() const;
  bool is_homogeneous() const;

  /// Degree-`degree` component in local coordinates of that degree.
  SparseVector component(int degree) const;
  static LieElement from_component(HallBasisPtr basis, int degree, const SparseVector& v);

  LieElement& operator+=(const LieElement& other);
  LieElement& operator-=(const LieElement& other);
  LieElement& operator*=(const Rational& s);

  bool operator==(const LieElement& other) const;

 private:
  HallBasisPtr basis_;
  std::map<std::size_t, Rational> coords_;
};

LieElement operator+(LieElement a, const LieElement& b);
LieElement operator-(LieElement a, const LieElement& b);
LieElement operator*(const Rational& s, LieElement a);

std::string to_string(const LieElement& x, const Alphabet* names = nullptr);

/// Image in the free associative algebra (truncated at the basis cutoff).
NCSeries to_series(const LieElement& x);

struct HallExpression {
  LieElement element;
  /// input minus the series of `element`; zero exactly when the input is a
  /// Lie polynomial (constant term excluded).
  NCSeries residual;
};

/// Writes the nonconstant part of `s` in the Hall basis by peeling off the
/// lexicographically smallest word of each degree.
HallExpression express_in_hall(const NCSeries& s, const HallBasisPtr& basis);

/// [x, y] truncated at the cutoff.
LieElement bracket(const LieElement& x, const LieElement& y);

/// Magnus embedding g -> 1 + X_g, g^-1 -> 1 - X_g + X_g^2 - ..., truncated.
NCSeries magnus(const Word& w, int cutoff);

/// Position of a word in the lower central series of the free group.
struct LcsDegree {
  enum class Kind { Finite, ExceedsCutoff, Identity };
  Kind kind = Kind::Identity;
  int degree = 0;

  bool operator==(const LcsDegree&) const = default;
};

std::string to_string(const LcsDegree& d);

/// Largest j <= cutoff with w in L_j, read off the lowest nonconstant degree
/// of the Magnus image.
LcsDegree lcs_degree(const Word& w, int cutoff);

/// Lowest homogeneous component of log(magnus(w)) in Hall coordinates.
/// Returns the zero element when w lies in L_{cutoff+1}; throws DomainError
/// for the identity word.
LieElement log_leading(const Word& w, const HallBasisPtr& basis);

/// log of the image of w under g -> exp(X_g), in Hall coordinates. Its
/// lowest component agrees with log_leading.
LieElement malcev_log(const Word& w, const HallBasisPtr& basis);

/// Z with exp(Z) = exp(X) exp(Y) through the basis cutoff.
LieElement bch(const LieElement& x, const LieElement& y);

/// Precomputed brackets [h, x_i] of every Hall element of degree < cutoff
/// with every generator, in local coordinates of the next degree.
class LetterBracketTable {
 public:
  explicit LetterBracketTable(HallBasisPtr basis);

  const HallBasisPtr& basis_ptr() const noexcept { return basis_; }
  const HallBasis& basis() const noexcept { return *basis_; }
  const SparseVector& bracket(std::size_t index, std::uint32_t letter) const;

  /// [v, x_letter] for v given in local coordinates of `degree`.
  SparseVector bracket(int degree, const SparseVector& v, std::uint32_t letter) const;

 private:
  HallBasisPtr basis_;
  std::vector<std::vector<SparseVector>> table_;
};

/// Per-degree rational subspaces of the truncated free Lie algebra.
class GradedSubspace {
 public:
  explicit GradedSubspace(HallBasisPtr basis);

  const HallBasisPtr& basis_ptr() const noexcept { return basis_; }
  const HallBasis& basis() const noexcept { return *basis_; }

  const EchelonBasis& component(int degree) const;
  EchelonBasis& component(int degree);
  std::vector<std::size_t> dimensions() const;

  /// Adds every homogeneous component of x; true if the span grew.
  bool insert(const LieElement& x);
  bool contains(const LieElement& x) const;
  bool is_subspace_of(const GradedSubspace& other) const;
  /// Canonical (reduced echelon) basis of one degree as Lie elements.
  std::vector<LieElement> basis_elements(int degree) const;

  bool operator==(const GradedSubspace& other) const;

 private:
  HallBasisPtr basis_;
  std::vector<EchelonBasis> components_;
};

/// Smallest graded subspace containing every homogeneous component of
/// `gens` and closed under bracketing with the generators, i.e. the ideal
/// they generate, computed degree by degree.
GradedSubspace ideal_closure(std::span<const LieElement> gens, const LetterBracketTable& table);

/// Degreewise span of [s, x_i] for s in `subspace`; equals [S, g] when S is
/// an ideal.
GradedSubspace bracket_with_algebra(const GradedSubspace& subspace, const LetterBracketTable& table);

/// True iff every homogeneous component of x lies in S.
bool graded_membership(const LieElement& x, const GradedSubspace& s);

}  // namespace mol
