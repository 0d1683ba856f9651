#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "malle/field.hpp"
#include "malle/groupstruct.hpp"
#include "malle/rational.hpp"

namespace malle {

struct CensusParams {
  int degree = 3;
  std::vector<std::string> labels;  ///< group names or nTk ids; empty means all
  long long max_disc = 0;           ///< X: keep |field_disc| <= X
  std::optional<int> complex_pairs; ///< signature filter on r2
};

struct CensusOptions {
  unsigned workers = 1;
  std::uint64_t budget = 0;     ///< max coefficient-box points per run; 0 = unlimited
  std::string checkpoint_path;  ///< where partial work is saved on budget/interrupt
  bool resume = false;          ///< continue from checkpoint_path
  std::uint64_t seed = 0;       ///< prime window offset for sampled Galois labels
  const std::atomic<bool>* stop = nullptr;  ///< set asynchronously to interrupt
};

struct CensusCatalog {
  CensusParams params;
  std::vector<NumberFieldRecord> records;  ///< sorted by |disc|, sign, polynomial
  std::string completeness_certificate;
  std::uint64_t box_points = 0;            ///< polynomials examined
};

/// All quadratic fields with |D| <= X; complete by construction.
CensusCatalog enumerate_quadratic(long long X);

/// Canonical polynomial of the quadratic field of fundamental discriminant D.
IntPoly quadratic_canonical(long long D);
NumberFieldRecord quadratic_record(long long D);

/// Hunter-box enumeration for degree 3..6. Throws BudgetError (after saving
/// a checkpoint when a path is configured) if the box exceeds the budget or
/// the stop flag is raised.
CensusCatalog enumerate_fields(const CensusParams& params, const CensusOptions& options = {});

/// Hunter bound on T2 for trace `a`, degree n and discriminant bound X.
double hunter_bound(int n, long long a, long long X);

/// Catalog serialization: record header line then one CSV row per field.
std::string catalog_csv(const CensusCatalog& c);
/// JSON sidecar with the parameters and completeness certificate.
std::string catalog_sidecar_json(const CensusCatalog& c);
/// Parses catalog CSV text ('#' lines skipped); parameters are not restored.
std::vector<NumberFieldRecord> parse_catalog_csv(const std::string& text);
NumberFieldRecord parse_record_csv(const std::string& line);

struct SlopeFit {
  std::vector<std::pair<long long, long long>> points;  ///< (X_i, count_i)
  double slope = 0;
  std::optional<Rational> reference_a;
  std::optional<Rational> reference_A;
};

/// 10^{i/2} for i >= 1, up to X.
std::vector<long long> default_checkpoints(long long X);

/// Counts at each checkpoint and the least-squares log-log slope over the
/// top decade. Throws DomainError with fewer than 3 checkpoints or a
/// checkpoint above `max_disc`.
SlopeFit count_series(const std::vector<NumberFieldRecord>& records, long long max_disc,
                      const std::vector<long long>& checkpoints);

struct TowerRecord {
  NumberFieldRecord K, M, N;
  BigInt relnorm;  ///< |d_N| / |d_M|^3
  bool brauer_ok = false;
  bool tower_ok = false;
};

/// Towers K ⊂ N ⊃ M for the first `limit` S3 cubics of the catalog. Throws
/// InvariantError if any tower breaks a discriminant relation.
std::vector<TowerRecord> build_s3_towers(const std::vector<NumberFieldRecord>& cubics,
                                         std::size_t limit, std::uint64_t seed = 0);
std::string tower_csv_header();
std::string to_csv(const TowerRecord& t);

struct HasseRow {
  long long D = 0;
  long long cubic_fields = 0;
  long long expected = 0;  ///< (|Cl_D[3]| - 1) / 2
};

struct HasseReport {
  long long X = 0;
  std::size_t discriminants = 0;
  std::vector<HasseRow> rows;
  std::vector<HasseRow> mismatches;
};

/// Cubic fields of discriminant D versus (|Cl_D[3]| - 1)/2 for every
/// imaginary fundamental D with |D| <= X. `cubics` must be a complete cubic
/// catalog to at least X.
HasseReport hasse_crosscheck(long long X, const std::vector<NumberFieldRecord>& cubics);

}  // namespace malle
