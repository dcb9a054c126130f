#include <gtest/gtest.h>

#include <algorithm>

#include "dinls/error.hpp"
#include "truth_table.hpp"

using namespace dinls;

TEST(Classifier, TruthTable) {
  for (const auto& row : truth::rows()) EXPECT_EQ(truth::classify(row), row.expected) << row.label;
}

TEST(Classifier, RecordsEveryCondition) {
  const auto v = classify_global(truth::params_of(truth::rows()[2]));
  ASSERT_EQ(v.kind, Regime::GlobalCase2);
  const auto it = std::find_if(v.conditions.begin(), v.conditions.end(),
                               [](const Condition& c) { return c.name == "case2: (p1/p2)*b2 <= b1"; });
  ASSERT_NE(it, v.conditions.end());
  EXPECT_TRUE(it->holds);
  EXPECT_EQ(it->lhs.to_string(), "1/3");
  EXPECT_EQ(it->rhs.to_string(), "2/5");
  // Case 3 conditions are evaluated even though case 2 matched first.
  EXPECT_TRUE(std::any_of(v.conditions.begin(), v.conditions.end(),
                          [](const Condition& c) { return c.name.rfind("case3:", 0) == 0; }));
}

TEST(Classifier, BlowupVerdictCarriesTimeBound) {
  const auto p = truth::params_of(truth::rows()[13]);
  BlowupData d{-1.0, 1.0, 2.0, 1.0, 0.05, 6.0};
  const auto v = classify_blowup(p, d);
  ASSERT_EQ(v.kind, Regime::BlowupCaseI);
  ASSERT_TRUE(v.blowup_constant && v.t_bound);
  EXPECT_DOUBLE_EQ(*v.blowup_constant, 3.0);
  EXPECT_DOUBLE_EQ(*v.t_bound, 6.0 / (3.0 * 2.0));
}

TEST(Classifier, NonPositiveMassRejected) {
  const auto p = truth::params_of(truth::rows()[13]);
  try {
    classify_blowup(p, {-1.0, 0.0, 1.0, 1.0, 0.05, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveMass);
  }
}
