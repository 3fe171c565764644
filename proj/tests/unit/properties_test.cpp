#include <gtest/gtest.h>

#include "property_suites.hpp"

namespace antidice {
namespace {

constexpr int kCases = 60;

class Properties : public ::testing::TestWithParam<testing::PropertySuite> {};

TEST_P(Properties, NoFailures) {
  const testing::Failures failures = GetParam().run(kCases);
  for (const std::string& f : failures) ADD_FAILURE() << f;
  EXPECT_TRUE(failures.empty());
}

INSTANTIATE_TEST_SUITE_P(Suites, Properties, ::testing::ValuesIn(testing::property_suites()),
                         [](const auto& info) { return info.param.name; });

}  // namespace
}  // namespace antidice
