#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mol/freegroup.hpp"
#include "mol/lie.hpp"

namespace mol {

/// Bound of a family range: either an absolute integer or `c + offset`.
struct RangeBound {
  long value = 0;
  bool relative_to_class = false;

  long resolve(int cutoff) const { return relative_to_class ? cutoff + value : value; }
};

/// Parametric orbit generators `template` for parameter values in a range.
/// A template without parameter contributes a single word.
struct OrbitFamily {
  std::string template_text;
  std::optional<std::string> parameter;
  RangeBound from;
  RangeBound to;
};

struct Intersection {
  std::string first;
  std::string second;
  long value = 0;
};

/// A named line-arrangement case. The cycle is referred to as "gamma" in
/// intersection metadata.
struct Configuration {
  std::string name;
  AlphabetPtr alphabet;
  Word cycle;
  std::vector<std::pair<std::string, Word>> auxiliary_cycles;
  std::vector<OrbitFamily> orbit_families;
  std::vector<Intersection> intersections;
  std::string notes;

  /// Symbols visible in templates: auxiliary cycles by name.
  WordSymbols symbols() const;
  /// Every family word instantiated for truncation class `cutoff`, in
  /// declaration order.
  std::vector<Word> orbit_words(int cutoff) const;
  /// Intersection number of two named cycles; antisymmetric.
  std::optional<long> intersection(std::string_view a, std::string_view b) const;
};

Configuration config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Configuration& cfg);

std::vector<std::string> builtin_config_names();
/// Embedded JSON text of a built-in configuration.
std::string builtin_config_text(std::string_view name);

/// Built-in name, or a path to a JSON file. Throws ConfigError.
Configuration load_config(std::string_view path_or_name);

/// Hall basis and bracket table shared by all subspaces of one computation.
struct LieContext {
  HallBasisPtr basis;
  std::shared_ptr<const LetterBracketTable> table;
};

LieContext make_lie_context(std::size_t rank, int cutoff, std::size_t max_basis = kDefaultMaxBasis);

/// Leading graded terms of the cycle and every orbit word (identity words
/// and words beyond the cutoff contribute nothing).
std::vector<LieElement> orbit_generators(const Configuration& cfg, const LieContext& ctx);

/// Ideal generated by the orbit generators: the graded image of the normal
/// subgroup generated by the orbit.
GradedSubspace orbit_ideal(const Configuration& cfg, const LieContext& ctx);

/// [I, g] for the orbit ideal I.
GradedSubspace commutator_ideal(const GradedSubspace& orbit, const LieContext& ctx);

/// Integer invariant known exactly, only from below, or degenerate.
struct InvariantValue {
  enum class Kind { Exact, AtLeast, TrivialGroup };
  Kind kind = Kind::AtLeast;
  int value = 0;

  static InvariantValue exact(int v) { return {Kind::Exact, v}; }
  static InvariantValue at_least(int v) { return {Kind::AtLeast, v}; }
  static InvariantValue trivial() { return {Kind::TrivialGroup, 0}; }

  bool is_exact() const { return kind != Kind::AtLeast; }
  bool operator==(const InvariantValue&) const = default;
};

std::string to_string(const InvariantValue& v);

/// Graded witness: a Lie element of a given degree.
struct GradedWitness {
  int degree = 0;
  LieElement element;
};

enum class Verdict { CertifiedTrue, CertifiedFalse, Undetermined };

std::string to_string(Verdict v);

/// Outcome of the test "O ∩ L_{j+1} ⊆ [O, π1]" at one level j.
struct LevelVerdict {
  int level = 0;
  Verdict verdict = Verdict::Undetermined;
  /// Degrees in j+1..cutoff where the orbit ideal exceeds [O, π1].
  std::vector<int> failing_degrees;
  std::optional<GradedWitness> witness;
};

/// Graded quotient q = g / (I ∩ degrees >= 2) of the free Lie algebra.
class QuotientAlgebra {
 public:
  QuotientAlgebra(const GradedSubspace& orbit, LieContext ctx);

  const LieContext& context() const noexcept { return ctx_; }
  int cutoff() const noexcept { return ctx_.basis->cutoff(); }
  const GradedSubspace& kernel() const noexcept { return kernel_; }
  std::size_t dimension(int degree) const;
  std::vector<std::size_t> dimensions() const;

  /// Remainder of a degree-homogeneous element modulo the kernel.
  LieElement reduce(const LieElement& x) const;
  /// Complement basis of degree `degree`: Hall elements outside the pivots
  /// of the kernel.
  std::vector<LieElement> complement_basis(int degree) const;

 private:
  LieContext ctx_;
  GradedSubspace kernel_;
};

struct NilpotenceResult {
  InvariantValue value;
  /// Nonzero element of the top quotient degree when the class is not
  /// reached within the cutoff.
  std::optional<GradedWitness> witness;
};

struct DerivedResult {
  InvariantValue value;
  /// One nonzero element per nonvanishing derived term q^j, j >= 1.
  std::vector<std::pair<int, GradedWitness>> witnesses;
};

NilpotenceResult nilpotence_class(const QuotientAlgebra& q);
DerivedResult derived_length(const QuotientAlgebra& q, const NilpotenceResult& nilpotence);

struct DepthReport {
  std::string config;
  AlphabetPtr alphabet;
  int cutoff = 0;
  std::string qualifier = "rational";
  std::vector<std::size_t> algebra_dimensions;
  std::vector<std::size_t> orbit_dimensions;
  std::vector<std::size_t> commutator_dimensions;
  std::vector<std::size_t> quotient_dimensions;
  std::vector<LevelVerdict> levels;
  bool monotone = true;
  InvariantValue k;
  InvariantValue n;
  InvariantValue d;
  std::optional<GradedWitness> nilpotence_witness;
  std::vector<std::pair<int, GradedWitness>> derived_witnesses;
};

struct OrbitOptions {
  std::size_t max_basis = kDefaultMaxBasis;
  int max_class = 12;
};

/// Decides the level tests from the two ideals. Levels j <= cutoff-2 are
/// decided on degrees j+1..cutoff; level cutoff-1 sees a single degree and
/// is reported undetermined at the cutoff.
std::vector<LevelVerdict> level_verdicts(const GradedSubspace& orbit, const GradedSubspace& commutator);

/// Orbit depth from level verdicts: the least decided level from which all
/// decided levels pass, else a lower bound.
InvariantValue depth_from_levels(const std::vector<LevelVerdict>& levels, bool* monotone = nullptr);

DepthReport orbit_depth(const Configuration& cfg, int cutoff, const OrbitOptions& options = {});

struct InequalityCheck {
  bool k_le_n_plus_1_checked = false;
  bool d_le_n_checked = false;
  /// ℓ ≤ k, when k is exact.
  std::optional<int> melnikov_bound;
  std::string explanation;
};

/// Checks k ≤ n+1 and d ≤ n wherever both sides are known; throws
/// InvariantViolation when a report contradicts them.
InequalityCheck verify_inequalities(const DepthReport& r);

nlohmann::json to_json(const InvariantValue& v);
nlohmann::json to_json(const DepthReport& r);
nlohmann::json to_json(const InequalityCheck& c);
/// Per-degree reduced basis matrices over the Hall basis.
nlohmann::json to_json(const GradedSubspace& s, const Alphabet* names);

}  // namespace mol
