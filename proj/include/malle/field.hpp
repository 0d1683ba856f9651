#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "malle/order.hpp"
#include "malle/poly.hpp"

namespace malle {

/// Exact irreducibility over Q for monic f of degree <= 8: factor-degree
/// patterns modulo good primes, then an exact trial division by every
/// candidate factor built from numerical root subsets.
bool is_irreducible(const IntPoly& f);

/// (field_disc, index) for monic irreducible f of degree <= 6.
std::pair<BigInt, BigInt> maximal_order_disc(const IntPoly& f);

enum class Confidence { Certified, Sampled };
std::string to_string(Confidence c);

struct GaloisLabel {
  int degree = 0;
  int t = 0;          ///< transitive group number nTt
  std::string name;   ///< short name, e.g. "S3", "D4", "F20"
  Confidence confidence = Confidence::Certified;

  std::string id() const { return std::to_string(degree) + "T" + std::to_string(t); }
};

/// Candidate transitive group with its cycle-type statistics.
struct TransitiveGroupInfo {
  int degree = 0;
  int t = 0;
  std::string name;
  std::size_t order = 0;
  bool even = false;  ///< contained in A_n
  std::map<std::vector<std::size_t>, std::size_t> cycle_types;
};

/// All transitive groups of degree 2..6, built from explicit generators.
const std::vector<TransitiveGroupInfo>& transitive_groups();
const TransitiveGroupInfo& transitive_group(int degree, int t);

/// Galois group of an irreducible f of degree <= 6. Degrees 2-4 are decided
/// by discriminant and resolvent tests; degrees 5-6 by Frobenius cycle types
/// at 200 good primes (the seed shifts the prime window).
GaloisLabel galois_label(const IntPoly& f, std::uint64_t seed = 0);

/// Cycle-type sampling for any degree 2..6, used to cross-check the
/// deterministic paths.
GaloisLabel sampled_galois_label(const IntPoly& f, std::uint64_t seed = 0, int samples = 200);

/// Frobenius cycle type at a prime not dividing disc(f).
std::vector<int> frobenius_cycle_type(const IntPoly& f, std::uint64_t p);

/// Canonical defining polynomial: among generators x of O_K, minimize T2(x),
/// then the coefficient list of the minimal polynomial (leading term first).
/// Throws CapacityError when the search exceeds `max_vectors` lattice points.
IntPoly canonical_generator(const IntPoly& f, std::size_t max_vectors = 2000000);
IntPoly canonical_generator(const MaximalOrder& order, std::size_t max_vectors = 2000000);

/// Degree-6 polynomial for the Galois closure of an S3 cubic.
IntPoly splitting_sextic(const IntPoly& cubic);

/// |K|^|H| == |M|^(|F|-1) · (|N| / |M|^|F|); throws DomainError when |M|^|F|
/// does not divide |N|.
bool brauer_check(const BigInt& absK, const BigInt& absM, const BigInt& absN, long F_order,
                  long H_order);
/// |N| == |M|^m · relnorm
bool tower_check(const BigInt& absM, const BigInt& absN, long m, const BigInt& relnorm);

struct Signature {
  int r1 = 0, r2 = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct NumberFieldRecord {
  IntPoly defining_poly;
  int degree = 0;
  BigInt field_disc;
  BigInt poly_disc;
  BigInt index;
  GaloisLabel galois;
  Signature signature;
};

/// Record for the field defined by f, using the canonical generator.
NumberFieldRecord make_record(const IntPoly& f, std::uint64_t seed = 0);
/// Record for an already canonical polynomial with a known maximal order.
NumberFieldRecord make_record_canonical(const IntPoly& canonical, const MaximalOrder& order,
                                        std::uint64_t seed = 0);

std::string record_csv_header();
std::string to_csv(const NumberFieldRecord& r);
std::string to_json(const NumberFieldRecord& r);

/// Minkowski lower bound for |d_K| of degree n with r2 complex places.
double minkowski_bound(int n, int r2);

}  // namespace malle
