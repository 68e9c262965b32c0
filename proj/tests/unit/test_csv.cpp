#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tbdecay/csv.hpp"

using namespace tbdecay::io;

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-20) == "-2.5e-20");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("write then read round-trips to printed precision") {
  auto rng = tbdecay::testing::property_rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  CsvTable table;
  table.header = {"t[1/hop]", "Re_c1", "gamma_eff[hop]"};
  for (int i = 0; i < 100; ++i) table.rows.push_back({u(rng), u(rng) * 1e-9, u(rng) * 1e9});
  table.rows.push_back({1.0, std::numeric_limits<double>::infinity(), 0.0});

  std::stringstream ss;
  write_csv(ss, table);
  const std::string text = ss.str();
  CHECK(text.rfind("t[1/hop],Re_c1,gamma_eff[hop]\n", 0) == 0);

  std::stringstream in(text);
  const CsvTable back = read_csv(in);
  CHECK(back.header == table.header);
  REQUIRE(back.rows.size() == table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double a = table.rows[r][c];
      const double b = back.rows[r][c];
      if (std::isinf(a)) {
        CHECK(b == a);
      } else {
        CHECK(std::abs(a - b) <= 1e-11 * std::abs(a));
      }
    }
  }
  std::stringstream again;
  write_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("column lookup") {
  CsvTable t;
  t.header = {"a", "b"};
  CHECK(t.column("b") == 1);
  CHECK_THROWS(t.column("c"));
}

TEST_CASE("malformed input") {
  std::stringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS(read_csv(ragged));
  std::stringstream junk("a\nxyz\n");
  CHECK_THROWS(read_csv(junk));
  std::stringstream empty("");
  CHECK_THROWS(read_csv(empty));
}

TEST_CASE("matrix layout") {
  const std::vector<double> cols{0.0, 1.5};
  const std::vector<double> rows{10.0, 20.0, 30.0};
  const std::vector<double> values{1, 2, 3, 4, 5, 6};
  std::stringstream ss;
  write_matrix(ss, "z[mm]\\x[um]", cols, rows, values);
  CHECK(ss.str() == "z[mm]\\x[um],0,1.5\n10,1,2\n20,3,4\n30,5,6\n");
  CHECK_THROWS(write_matrix(ss, "c", cols, rows, std::vector<double>{1, 2}));
}
