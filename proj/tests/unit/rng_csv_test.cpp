#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "airtime/csv.hpp"
#include "airtime/rng.hpp"

namespace airtime {
namespace {

TEST(Rng, EngineMatchesStandardSequence) {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the standard.
  Rng rng(std::mt19937_64::default_seed);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ull);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformBelowStaysInRangeAndCoversIt) {
  Rng rng(1);
  std::array<int, 7> hits{};
  for (int i = 0; i < 70'000; ++i) {
    const auto v = rng.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_NEAR(h, 10'000, 400);
  EXPECT_EQ(rng.uniform_below(1), 0u);
}

TEST(Rng, Uniform01HalfOpen) {
  Rng rng(2);
  double sum = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100'000, 0.5, 0.005);
}

TEST(Csv, StrictNumbers) {
  EXPECT_DOUBLE_EQ(parse_double(" 5.5 "), 5.5);
  EXPECT_DOUBLE_EQ(parse_double("+2"), 2.0);
  EXPECT_THROW(parse_double("5.5x"), std::invalid_argument);
  EXPECT_THROW(parse_double(""), std::invalid_argument);
  EXPECT_THROW(parse_double("inf"), std::invalid_argument);
  EXPECT_EQ(parse_int64("-12"), -12);
  EXPECT_THROW(parse_int64("1.5"), std::invalid_argument);
  EXPECT_EQ(parse_uint64("18446744073709551615"), 18446744073709551615ull);
  EXPECT_THROW(parse_uint64("-1"), std::invalid_argument);
}

TEST(Csv, SplitTrimsCells) {
  const auto cells = split_csv_line(" a , b,,c ");
  ASSERT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0], "a");
  EXPECT_EQ(cells[1], "b");
  EXPECT_EQ(cells[2], "");
  EXPECT_EQ(cells[3], "c");
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_decimal(5.5), "5.5");
  EXPECT_EQ(format_decimal(11.0), "11");
  EXPECT_EQ(format_fixed(3.14159, 4), "3.1416");
  EXPECT_EQ(format_fixed(-0.00001, 4), "0.0000");
  EXPECT_EQ(format_fixed(2.0, 0), "2");
}

TEST(Csv, AtomicWriteReplacesContent) {
  const auto dir = std::filesystem::temp_directory_path() / "airtime_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.csv";
  write_file_atomically(path, "first\n");
  write_file_atomically(path, "second\n");
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(s, "second\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "x.csv.tmp"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace airtime
