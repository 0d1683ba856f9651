#pragma once

#include <optional>
#include <string>
#include <vector>

#include "malle/rational.hpp"

namespace malle {

/// A printed table value: exact when it is a formula or fraction, otherwise a
/// decimal compared with the pinned tolerance.
struct PrintedValue {
  std::string text;
  std::optional<Rational> exact;
  double tolerance = 0.0;
};

struct TableRow {
  std::string group;
  std::string descriptor;
  std::string condition;
  long degree = 0;
  PrintedValue printed_A, printed_a;
  Rational engine_A, engine_a;
  bool match_A = false, match_a = false;
  bool supplementary = false;  ///< not a row of the printed table
  std::string note;
};

/// Recomputes every row of the example table with the built-in registries,
/// followed by supplementary rows for the dihedral claims in the text.
std::vector<TableRow> run_table_example();

bool matches(const PrintedValue& printed, const Rational& engine);

std::string render_table_text(const std::vector<TableRow>& rows);
std::string render_table_csv(const std::vector<TableRow>& rows);

/// Generators (cycle strings) of the first core-free subgroup of the given
/// order found among two-generated subgroups, in element order.
std::vector<std::string> core_free_subgroup_generators(const std::string& descriptor, std::size_t order);

}  // namespace malle
