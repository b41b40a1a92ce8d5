#include <gtest/gtest.h>

#include "golden_check.hpp"

namespace {

class Golden : public ::testing::TestWithParam<golden::Fixture> {};

TEST_P(Golden, MatchesClosedForm) {
  const auto& fx = GetParam();
  const auto r = golden::check_fixture(fx, 200, 1234);
  EXPECT_EQ(r.samples, 200);
  EXPECT_TRUE(r.label_ok);
  EXPECT_FALSE(r.atom_count_mismatch) << r.first_failure;
  EXPECT_LE(r.max_field_error, 1e-10) << r.first_failure;
  EXPECT_LE(r.max_atom_error, 1e-10);
}

TEST_P(Golden, EvolvedSolutionIsValid) {
  EXPECT_TRUE(pgd::validate(pgd::evolve(GetParam().data)).empty());
}

std::string fixture_name(const ::testing::TestParamInfo<golden::Fixture>& info) {
  std::string s = info.param.name;
  for (auto& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return s;
}

INSTANTIATE_TEST_SUITE_P(PrintedCases, Golden, ::testing::ValuesIn(golden::fixtures()), fixture_name);

}  // namespace

TEST(GoldenSet, OneFixturePerPrintedSolution) { EXPECT_EQ(golden::fixtures().size(), 28u); }
