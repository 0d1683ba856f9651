#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "malle/perm.hpp"

namespace malle {

/// One-line construction recipe for a permutation group.
///
/// Grammar (whitespace is insignificant outside numbers):
///
///   descriptor := term [ '@' action ]
///   action     := 'natural' | 'regular'
///   term       := 'cyclic(' n ')'
///              |  'dihedral(' m ')'
///              |  'semidirect(' m ',' t ';' 'v=' v ')'
///              |  'affine_gf(' q [ ',' 'gen' | ',' 'mult=' k ] [ ',' 'frob=' f ] ')'
///              |  'symmetric(' n ')' | 'alternating(' n ')'
///              |  'direct_product(' descriptor ',' descriptor ')'
///              |  'coset(' descriptor ',' '[' cycles { ',' cycles } ']' ')'
///              |  'gens(' d ';' cycles { ',' cycles } ')'
///              |  alias
///   alias      := 'C'n | 'D'n | 'S'n | 'A'n   (e.g. A4, D5, S3, C7)
///
/// `cycles` is cycle notation such as (1 2)(3 4). The canonical printer
/// expands aliases, omits '@natural' and always prints 'v=' for semidirect.
struct GroupDescriptor {
  enum class Kind {
    Cyclic,
    Dihedral,
    Semidirect,
    AffineGF,
    Symmetric,
    Alternating,
    DirectProduct,
    Coset,
    Generators,
  };
  enum class Action { Natural, Regular };

  Kind kind = Kind::Cyclic;
  Action action = Action::Natural;
  /// Integer parameters: cyclic/dihedral/symmetric/alternating {n};
  /// semidirect {m, t, v}; affine_gf {q, mult, frob}; gens {degree}.
  std::vector<long> params;
  /// Sub-descriptors for direct_product (2) and coset (1).
  std::vector<GroupDescriptor> children;
  /// Canonical cycle strings for coset subgroup generators and gens().
  std::vector<std::string> cycles;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

GroupDescriptor parse_descriptor(std::string_view text);
std::string to_string(const GroupDescriptor& d);

/// Builds the group in the requested faithful permutation representation.
/// Throws DomainError on invalid parameters (e.g. v not of order t mod m).
PermGroup build_group(const GroupDescriptor& d, std::size_t cap = kDefaultGroupCap);

/// Convenience: parse then build; the group is named by the canonical descriptor.
PermGroup named_group(std::string_view descriptor, std::size_t cap = kDefaultGroupCap);

/// Multiplicative order of v modulo m (0 when gcd(v, m) != 1).
long multiplicative_order(long v, long m);

}  // namespace malle
