#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mol/ratfunc.hpp"

namespace mol {

/// A dx + B dF.
struct OneForm {
  RatF A;
  RatF B;

  bool is_zero() const { return A.is_zero() && B.is_zero(); }
  bool operator==(const OneForm&) const = default;
};

/// S dF∧dx.
struct TwoForm {
  RatF S;

  bool is_zero() const { return S.is_zero(); }
  bool operator==(const TwoForm&) const = default;
};

OneForm operator+(const OneForm& a, const OneForm& b);
OneForm operator-(const OneForm& a, const OneForm& b);
OneForm operator*(const RatF& f, const OneForm& w);
TwoForm operator+(const TwoForm& a, const TwoForm& b);
TwoForm operator-(const TwoForm& a, const TwoForm& b);
TwoForm operator*(const RatF& f, const TwoForm& w);

/// df = f_x dx + f_F dF.
OneForm differential(const RatF& f);
/// d(A dx + B dF) = (∂_F A - ∂_x B) dF∧dx.
TwoForm exterior_d(const OneForm& w);
/// α∧β = (B_α A_β - A_α B_β) dF∧dx.
TwoForm wedge(const OneForm& a, const OneForm& b);

/// E.g. "(eps/(x - 1)) dx + dF"; "0" for the zero form.
std::string to_string(const OneForm& w);
std::string to_string(const TwoForm& w);

/// η_0..η_max together with the residuals of
///   dη_n - η_0∧η_{n+1} - Σ_{k=1}^{n} C(n,k) η_k∧η_{n-k+1},  n = 0..max-1.
struct GVSequence {
  RatF phi;
  std::vector<OneForm> eta;
  std::vector<TwoForm> residuals;
  /// Least ℓ with η_j = 0 for every stored j >= ℓ.
  int length = 1;
};

/// η_0 = dF + ε φ dx and η_k = ε ∂_F^k φ dx. Requires deg_F φ + 2 <= max
/// (DomainError otherwise) so the terminating zeros are part of the record.
GVSequence gv_sequence(const RatF& phi, int max);

/// Residuals of an arbitrary sequence (index n for n = 0..size-2).
std::vector<TwoForm> gv_residuals(const std::vector<OneForm>& eta);

struct GVVerification {
  std::vector<TwoForm> residuals;
  bool all_zero = true;
  /// Whether every η_k (k >= 1) is a multiple of dx, and if so whether all
  /// the products η_k∧η_l vanish.
  bool eta_dx_proportional = true;
  bool eta_products_vanish = true;
};

GVVerification verify_gv(const GVSequence& seq);

/// deg_F φ + 1, and 1 for φ = 0 (η_0 closed).
int gv_length(const RatF& phi);

/// "closed", "Liouvillian", "Riccati" or "length-n".
std::string gv_classification(int length);

nlohmann::json to_json(const GVSequence& seq, const GVVerification& check);

// ------------------------------------------------------------------------
// Differential extension of Q(x)[F][eps] by formal symbols, used to check
// first integrals whose closed forms involve f^eps and primitives.

/// Product of symbols with integer exponents.
using SymbolMonomial = std::map<std::string, int>;

class ExtElement {
 public:
  ExtElement() = default;
  ExtElement(const RatF& c);  // NOLINT
  static ExtElement symbol(const std::string& name);

  const std::map<SymbolMonomial, RatF>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const SymbolMonomial& m, const RatF& c);

  /// Inverse of a single term c·m with c a nonzero rational constant.
  ExtElement monomial_inverse() const;

  ExtElement& operator+=(const ExtElement& o);
  ExtElement& operator-=(const ExtElement& o);
  bool operator==(const ExtElement&) const = default;

  friend ExtElement operator*(const ExtElement& a, const ExtElement& b);

 private:
  std::map<SymbolMonomial, RatF> terms_;
};

inline ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
inline ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
ExtElement operator*(const ExtElement& a, const ExtElement& b);
std::string to_string(const ExtElement& e);

struct ExtOneForm {
  ExtElement A;
  ExtElement B;

  bool is_zero() const { return A.is_zero() && B.is_zero(); }
};

ExtOneForm operator+(const ExtOneForm& a, const ExtOneForm& b);
ExtOneForm operator-(const ExtOneForm& a, const ExtOneForm& b);
ExtOneForm operator*(const ExtElement& f, const ExtOneForm& w);
ExtOneForm lift(const OneForm& w);
std::string to_string(const ExtOneForm& w);

/// Derivation rules: the differential of each formal symbol.
class DifferentialExtension {
 public:
  /// u with du = u·α, i.e. u = exp(∫α).
  void add_exponential(const std::string& name, const OneForm& alpha);
  /// P with dP = β.
  void add_primitive(const std::string& name, const ExtOneForm& beta);

  ExtOneForm d(const ExtElement& e) const;

 private:
  std::map<std::string, ExtOneForm> derivative_;
};

enum class CasaleCase { Liouville1, Liouville2 };

struct CasaleRecord {
  std::string name;
  std::string phi;
  std::string G;
  std::string H;
  std::vector<std::string> symbol_rules;
  /// dH - G η_0.
  ExtOneForm first_integral_residual;
  /// dG/G - η_1.
  ExtOneForm multiplier_residual;
  bool verified = false;
};

CasaleRecord casale_verify(CasaleCase which);
/// u·(du/u) - du in the extension with du = u·α.
ExtOneForm unit_identity_residual(const OneForm& alpha);

nlohmann::json to_json(const CasaleRecord& r);

/// Casale system for a Riccati-type first integral, with η_0, η_1, η_2
/// substituted. DomainError unless deg_F φ = 2.
struct RiccatiSystem {
  std::string eta0;
  std::string eta1;
  std::string eta2;
  std::vector<std::string> equations;
};

RiccatiSystem riccati_system(const RatF& phi);
nlohmann::json to_json(const RiccatiSystem& s);

}  // namespace mol
