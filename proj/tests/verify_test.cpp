// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "cvcluster/verify.hpp"

namespace cvcluster {
namespace {

TEST(ReportNumber, RoundsToTwelveDecimals) {
    EXPECT_EQ(report_number(0.1234567890123456), 0.123456789012);
    EXPECT_EQ(report_number(-1e-14), 0.0);
    EXPECT_FALSE(std::signbit(report_number(-1e-14)));
    EXPECT_EQ(report_number(2e7), 2e7);
}

TEST(Verify, EverySubjectPasses) {
    VerifyOptions opt;
    opt.random_angle_sets = 5;
    opt.swap_grid = 13;
    for (const auto &s : verify_subjects()) {
        SubjectReport r = verify_subject(s, opt);
        EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
        EXPECT_EQ(r.subject, s);
    }
}

TEST(Verify, HeadlineSummaries) {
    EXPECT_EQ(verify_subject("census").summary,
              json({{"physical", 96}, {"matrices", 40}, {"mult2", 24}, {"mult3", 16}, {"realizations", 73728}}));
    EXPECT_EQ(verify_subject("theorem1").summary, json({{"class_size", 768}, {"even", 384}, {"odd", 384}}));
}

TEST(Verify, ReportsAreDeterministic) {
    VerifyOptions opt;
    opt.random_samples = 500;
    json a = verify_subject("appendixD", opt).to_json();
    json b = verify_subject("appendixD", opt).to_json();
    EXPECT_EQ(a, b);
    opt.seed += 1;
    EXPECT_NE(verify_subject("appendixD", opt).to_json()["summary"], a["summary"]);
}

TEST(Verify, FailingCheckFailsTheSubject) {
    SubjectReport r{"x"};
    r.expect_equal("a", 1, 1);
    EXPECT_TRUE(r.pass());
    r.expect_at_most("b", 2.0, 1.0);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(SubjectReport{"empty"}.pass());
}

TEST(Verify, UnknownSubjectThrows) { EXPECT_THROW(verify_subject("nope"), std::invalid_argument); }

TEST(Verify, GadgetRecordCarriesAllFields) {
    GadgetResult r = simulate_gadget(ArchitectureName::QRL, {1.5707963267948966, 0, 1.5707963267948966, 0},
                                     probe_input(), OutcomePolicy::sample(1), {20});
    json j = to_json(r);
    for (const char *key : {"architecture", "angles", "db", "raw_outcomes", "processed_outcomes", "correction",
                            "output"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["output"]["cov"].size(), 4u);
    EXPECT_EQ(j["output"]["cov"][0].size(), 4u);
}

}  // namespace
}  // namespace cvcluster
