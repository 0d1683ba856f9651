#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "malle/groupstruct.hpp"
#include "malle/rational.hpp"

namespace malle {

enum class TorsionMode { Unconditional, LTorsionConjecture };

/// Wildcard base-field tag: an entry with this base applies over every k.
inline constexpr const char* kAnyBase = "*";

/// Normalized registry key: underscores and spaces removed ("C_7" == "C7").
std::string normalize_label(std::string_view label);

struct RegistryEntry {
  std::string base;   ///< base-field tag, "*" for any
  std::string label;  ///< group label (normalized on insertion)
  long key = 0;       ///< torsion modulus for 𝒟, degree for a1
  Rational value;
  std::string note;   ///< citation
};

/// A candidate exponent and where it came from.
struct Sourced {
  Rational value;
  std::string source;
};

/// Torsion exponents 𝒟 with |Cl_M[ℓ]| ≪ d_M^𝒟, keyed by (base, Gal(M/k), ℓ).
class TorsionExponentRegistry {
 public:
  explicit TorsionExponentRegistry(TorsionMode mode = TorsionMode::Unconditional)
      : mode_(mode) {}
  /// Generic 1/2, the cubic 2-torsion bound over Q, and the prime-cyclic rule over Q.
  static TorsionExponentRegistry seeded(TorsionMode mode = TorsionMode::Unconditional);

  /// Rejects values above the generic 1/2.
  void add(RegistryEntry e);
  TorsionMode mode() const noexcept { return mode_; }
  void set_mode(TorsionMode m) { mode_ = m; }
  const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }

  /// Smallest applicable exponent; 0 in conjecture mode.
  Sourced lookup(const std::string& base, const std::string& label, long modulus) const;

 private:
  TorsionMode mode_;
  bool prime_cyclic_rule_ = false;
  std::vector<RegistryEntry> entries_;
};

/// Published counting exponents a1(G, d), keyed by (base, label, degree).
class CountExponentRegistry {
 public:
  /// Abelian groups at their Malle value, dihedral D_ℓ at degrees ℓ and 2ℓ,
  /// C_5:C_4 at degree 5, the Q-specific D_ℓ improvement, and 3/8 for
  /// regular degrees of groups of order > 4.
  static CountExponentRegistry seeded();
  static CountExponentRegistry empty() { return CountExponentRegistry(false); }

  void add(RegistryEntry e);
  const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }

  /// All applicable candidates (possibly empty). `order` is |G|.
  std::vector<Sourced> candidates(const std::string& base, const std::string& label, long degree,
                                  long order) const;

 private:
  explicit CountExponentRegistry(bool rules) : rules_(rules) {}
  bool rules_;
  std::vector<RegistryEntry> entries_;
};

/// Parses the line-oriented registry format, e.g.
///   D Q C_7 2 = 11/24 # PTBW
///   a1 D_5 5 = 3/4 # Kluners
///   a1 Q D_5 5 = 7/10 # Cohen-Thorne
/// Blank lines and lines starting with '#' are ignored.
void load_registry_text(std::string_view text, TorsionExponentRegistry& torsion,
                        CountExponentRegistry& counts);
void load_registry_file(const std::string& path, TorsionExponentRegistry& torsion,
                        CountExponentRegistry& counts);

struct TraceStep {
  std::string rule;
  std::vector<std::pair<std::string, Rational>> inputs;
  Rational output;
  std::string note;
  bool branch = false;  ///< participates in the final max

  Rational input(const std::string& name) const;
};

/// A bound exponent: value + ε (symbolic), the winning branch and a trace.
struct ExponentResult {
  Rational value;
  bool plus_epsilon = true;
  std::string branch;
  std::vector<TraceStep> trace;
  std::vector<std::string> flags;
};

/// Recomputes every branch step from its recorded inputs and returns their max.
Rational replay(const ExponentResult& r);
/// Recomputes one formula step; throws DomainError for unknown rules.
Rational evaluate_step(const TraceStep& step);

std::string format_exponent(const ExponentResult& r, int places = 5);
std::string format_trace(const ExponentResult& r);

struct ROverride {
  long value = 0;
  std::string citation;
};

/// Klüners' quadratic-step override: if Gal(N̂_1/k) ≠ C_2 ≀ H then no tame
/// prime can divide the relative discriminant norm exactly once, so R = 2.
ROverride kluners_quadratic_override();

/// Galois: |G|(1 - 1/p); non-Galois: p - 1. Overrides may only raise R and
/// must carry a citation.
long r_value(bool galois, long group_order, long p, const std::vector<ROverride>& overrides = {});

enum class DegreeChoice { Kernel, Regular };

struct BoundContext {
  TorsionExponentRegistry torsion = TorsionExponentRegistry::seeded();
  CountExponentRegistry counts = CountExponentRegistry::seeded();
  std::string base = "k";
  /// Adds the Malle value of H as an a1 candidate (conjecture-mode runs).
  bool assume_malle_for_quotient = false;
  int max_depth = 4;
};

/// Upper-bound exponent A(G, d) for d = m (Frobenius, abelian kernel) or
/// d = m·t (any G with the chosen abelian normal F).
ExponentResult theorem_bound(const GroupAnalysis& analysis, DegreeChoice degree,
                             const BoundContext& ctx = {});

/// Best a1(H, |H|) for the quotient: registry candidates and recursive
/// applications over every abelian normal subgroup of H; the minimum wins.
Sourced resolve_quotient_count(const PermGroup& H, const BoundContext& ctx, int depth,
                               std::vector<TraceStep>* trace = nullptr);

/// Checks theorem_bound against the Malle exponent under the ℓ-torsion
/// conjecture (regular degree always; kernel degree for C_m ⋊ C_t with m an
/// odd prime).
bool corollary_mode_check(const GroupAnalysis& analysis);

/// max(p/(m(p-1)), (t/(m-1))·(1/(p1-1) + 1/2 - 1/(2m(p1-1)))) over Q for
/// C_m ⋊ C_{p1}; requires t = p1 prime.
ExponentResult refined_ptbw_bound(long m, long t, long p, long p1);

enum class SpecialCase { A4Deg6, C3sqC4Deg6, C3sqC2Deg6, D6Deg6, C2cubeC7Deg14 };
SpecialCase parse_special_case(std::string_view label);
std::string to_string(SpecialCase c);

ExponentResult special_degree_bound(SpecialCase c, const BoundContext& ctx = {});

struct LimitationResult {
  bool holds = false;
  Rational exponent;
};

/// holds iff aH + 𝒟 - r/R ≤ 0; exponent 1/R when it holds, else (aH + 𝒟)/r.
LimitationResult limitation_analysis(const Rational& aH, const Rational& D, long rel_degree, long R);

}  // namespace malle
