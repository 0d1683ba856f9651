#include <gtest/gtest.h>

#include "malle/report.hpp"
#include "malle/table.hpp"

using namespace malle;

TEST(Table, RowsAndFlags) {
  auto rows = run_table_example();
  std::size_t flagged = 0;
  for (const auto& r : rows) {
    if (r.supplementary) continue;
    if (!r.match_A || !r.match_a) ++flagged;
    EXPECT_TRUE(r.match_a || r.group == "C_103:C_17") << r.group << " d=" << r.degree;
  }
  EXPECT_EQ(flagged, 2u);
  for (const auto& r : rows) {
    if (r.group == "C_2^3:C_7") {
      EXPECT_FALSE(r.match_A);
      EXPECT_EQ(r.engine_A, make_rational(5, 8));
    }
    if (r.group == "C_103:C_17") {
      EXPECT_FALSE(r.match_A);
      EXPECT_FALSE(r.match_a);
      EXPECT_EQ(r.engine_a, make_rational(1, 96));
      EXPECT_NE(r.note.find("transposed"), std::string::npos);
    }
  }
}

TEST(Table, Deterministic) {
  EXPECT_EQ(render_table_csv(run_table_example()), render_table_csv(run_table_example()));
  EXPECT_EQ(render_table_text(run_table_example()), render_table_text(run_table_example()));
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_row({"x", "y,z", ""}), "x,\"y,z\",");
}

TEST(Report, HeaderHasVersionHashSeed) {
  auto h = output_header("command=table", 42);
  EXPECT_EQ(h.rfind("# malle-lab ", 0), 0u);
  EXPECT_NE(h.find(" config="), std::string::npos);
  EXPECT_NE(h.find(" seed=42"), std::string::npos);
  EXPECT_EQ(config_hash("abc"), "ba7816bf8f01cfea");
}
