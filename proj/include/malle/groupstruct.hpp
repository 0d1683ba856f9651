#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "malle/perm.hpp"

namespace malle {

/// Kernel and complement of a Frobenius action.
struct FrobeniusData {
  ElementSet kernel;      ///< fixed-point-free elements together with the identity
  ElementSet complement;  ///< stabilizer of point 1
  bool kernel_is_abelian = false;
};

/// Structural data for a group G with a chosen abelian normal subgroup F,
/// 1 -> F -> G -> H -> 1.
struct GroupAnalysis {
  std::shared_ptr<const PermGroup> group;
  std::vector<ElementSet> abelian_normal_subgroups;
  std::optional<FrobeniusData> frobenius;
  ElementSet kernel;  ///< the chosen F
  std::size_t m = 0;  ///< |F|
  std::size_t t = 0;  ///< |H| = |G|/|F|
  std::size_t p = 0;  ///< smallest prime dividing m
  std::size_t p1 = 0; ///< smallest prime dividing t (0 when t = 1)
  bool in_F1 = false;
  bool in_F = false;  ///< Frobenius with kernel exactly F
  /// Quotient H = G/F in its regular representation (degree t).
  std::shared_ptr<const PermGroup> quotient;
};

/// Every normal subgroup, sorted by order then lexicographically by elements.
std::vector<ElementSet> normal_subgroups(const PermGroup& G);
/// Non-trivial abelian members of normal_subgroups(G).
std::vector<ElementSet> abelian_normal_subgroups(const PermGroup& G);

/// Conjugacy classes as sorted element sets, ordered by smallest element.
std::vector<ElementSet> conjugacy_classes(const PermGroup& G);

/// Frobenius test using both the stabilizer-intersection definition and the
/// fixed-point characterization; throws InvariantError if they disagree and
/// DomainError for an intransitive group.
std::optional<FrobeniusData> frobenius_classify(const PermGroup& G);

/// Parameter block for an explicitly chosen abelian normal subgroup F.
GroupAnalysis notation_parameters(const PermGroup& G, const ElementSet& F);

/// notation_parameters with the default F: the Frobenius kernel when it is
/// abelian, otherwise the largest abelian normal subgroup. Throws DomainError
/// when G has no non-trivial abelian normal subgroup.
GroupAnalysis analyze_group(const PermGroup& G);

/// Subgroup generated by a set of elements of G.
ElementSet subgroup_generated(const PermGroup& G, const ElementSet& gens);

bool is_normal(const PermGroup& G, const ElementSet& U);
bool is_abelian(const ElementSet& U);

/// Smallest prime divisor of n (0 for n < 2).
std::size_t smallest_prime_divisor(std::size_t n);

/// Abstract structure label used as a registry key: C_n, C_2xC_4, D_n, A_4,
/// S_4, C_a:C_b (cyclic extension of a cyclic normal subgroup) or G_n.
std::string structure_label(const PermGroup& G);

/// A minimal generating list for a subgroup, in cycle notation.
std::vector<std::string> generator_cycles(const PermGroup& G, const ElementSet& U);

/// Stable-key-order JSON of an analysis (group, order, degree, m, t, p, p1,
/// frobenius, kernel generators).
std::string analysis_json(const GroupAnalysis& a);

}  // namespace malle
