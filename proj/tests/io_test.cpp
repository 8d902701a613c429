// Copyright 2025 The ssd Authors.
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

#include "ssd/design_io.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "ssd/embedded.hpp"
#include "ssd/sources.hpp"

namespace ssd {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ssd-io-" + std::string(::testing::UnitTest::GetInstance()
                                        ->current_test_info()
                                        ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(DesignFile, ParseFormatRoundTrip) {
  const std::string text =
      "# kind: design\n# lambda: 1\n4 3\n2 2 2\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n";
  const DesignFile f = parse_design_file(text);
  EXPECT_EQ(f.entries.rows(), 4);
  EXPECT_EQ(f.get("lambda"), "1");
  EXPECT_FALSE(f.get("seed").has_value());
  EXPECT_EQ(format_design_file(f), text);
}

TEST(DesignFile, ParseErrorsCarryPositions) {
  try {
    parse_design_file("2 2\n2 2\n0 1\n1 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parse_design_file("2 2\n2 2\n0 1\n1 2\n"), ParseError);
  EXPECT_THROW(parse_design_file("2 2\n2 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_design_file("2 1\n2\n0\n# late: comment\n1\n"), ParseError);
}

TEST(Embedded, Catalogue) {
  const auto names = embedded_names();
  EXPECT_EQ(names.size(), 7u);
  EXPECT_TRUE(is_embedded("Table4_F2"));
  EXPECT_FALSE(is_embedded("table9"));
  EXPECT_EQ(embedded_design("table1_f").shape(), "F(9, 3^4)");
  EXPECT_EQ(embedded_design("table4_f2").shape(), "F(6, 3^5)");
  EXPECT_EQ(embedded_design("table3").shape(), "F(18, 3^12)");
  const DesignMatrix t5 = embedded_design("table5");
  EXPECT_EQ(t5.shape(), "F(24, 2^24 3^5)");
  for (int c = 0; c < t5.factors(); ++c) {
    EXPECT_EQ(t5(0, c), 0);
  }
  EXPECT_EQ(embedded_difference_matrix("table4_d").rows(), 8);
  EXPECT_EQ(embedded_difference_matrix("table4_d").columns(), 6);
  EXPECT_THROW(embedded_design("table1_d"), InvalidArgument);
}

TEST(Ingest, ArraysAndMatrices) {
  const IngestedSource l12 = ingest(testing::source_file("L12.design"));
  ASSERT_TRUE(l12.design.has_value());
  EXPECT_TRUE(l12.orthogonal_array);
  EXPECT_EQ(l12.lambda, 5);
  const IngestedSource nd = ingest(testing::source_file("ND12-4-3.design"));
  ASSERT_TRUE(nd.difference_matrix.has_value());
  EXPECT_EQ(nd.difference_matrix->group(), Group::galois(3));
  EXPECT_TRUE(nd.difference_matrix->normalized());
}

TEST(Ingest, RejectsBadFiles) {
  DesignFile unbalanced = parse_design_file("4 2\n2 2\n0 0\n0 1\n0 0\n1 1\n");
  try {
    ingest(unbalanced);
    FAIL();
  } catch (const VerificationError& e) {
    EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos)
        << e.what();
  }
  DesignFile wrong = to_file(embedded_design("table4_f2"));
  wrong.set("lambda", "2");
  EXPECT_THROW(ingest(wrong), VerificationError);
  DesignFile weak = to_file(embedded_design("table4_f2"));
  weak.set("strength", "2");
  EXPECT_THROW(ingest(weak), VerificationError);
  DesignFile notdm = to_file(embedded_design("table4_f2"));
  notdm.set("kind", "difference-matrix");
  EXPECT_THROW(ingest(notdm), VerificationError);
}

TEST_F(TempDir, ExportIngestIdentity) {
  for (const DesignMatrix& d :
       {embedded_design("table4_f2"), rao_hamming_oa(4, 2),
        embedded_design("table5"), testing::searched(6, 10, 2, 4).design()}) {
    const fs::path p = dir_ / "d.design";
    write_design_file(p, to_file(d));
    const IngestedSource s = ingest(p);
    ASSERT_TRUE(s.design.has_value());
    EXPECT_EQ(*s.design, d);
    EXPECT_FALSE(fs::exists(dir_ / "d.design.tmp"));
  }
  const auto dm = dm_from_oa(rao_hamming_oa(3, 2));
  write_design_file(dir_ / "m.design", to_file(dm));
  EXPECT_EQ(*ingest(dir_ / "m.design").difference_matrix, dm);
}

TEST_F(TempDir, SourceLibraryResolution) {
  SourceOptions opt;
  opt.directory = SSD_TEST_DATA "/sources";
  opt.cache_directory = dir_ / "cache";
  opt.seed = 7;
  SourceLibrary lib(opt);
  EXPECT_EQ(lib.availability(DesignRequest{9, 4, 3}), Availability::kGenerated);
  EXPECT_EQ(lib.availability(DesignRequest{6, 5, 3}), Availability::kEmbedded);
  EXPECT_EQ(lib.availability(DesignRequest{12, 11, 2}), Availability::kIngested);
  EXPECT_EQ(lib.availability(DesignRequest{6, 10, 2}), Availability::kSearchable);
  EXPECT_EQ(lib.availability(DesignRequest{25, 30, 5}), Availability::kExternal);
  EXPECT_EQ(lib.availability(MatrixRequest{8, 6, 2}), Availability::kEmbedded);
  EXPECT_EQ(lib.availability(MatrixRequest{9, 4, 3}), Availability::kGenerated);
  EXPECT_EQ(lib.availability(MatrixRequest{24, 6, 2}), Availability::kIngested);
  EXPECT_EQ(lib.availability(MatrixRequest{36, 6, 2}), Availability::kExternal);

  EXPECT_EQ(lib.design(DesignRequest{6, 10, 2}).lambda(), 4);
  EXPECT_TRUE(fs::exists(dir_ / "cache" / "F6-2x10.design"));
  EXPECT_EQ(lib.difference_matrix(MatrixRequest{24, 6, 2}).rows(), 24);
  EXPECT_THROW(lib.design(DesignRequest{25, 30, 5}), MissingSource);
  EXPECT_TRUE(lib.rejected().empty());

  // A fresh library reads the cached search instead of searching again.
  SourceOptions cached = opt;
  cached.directory.clear();
  SourceLibrary again(cached);
  EXPECT_EQ(again.design(DesignRequest{6, 10, 2}).design(),
            lib.design(DesignRequest{6, 10, 2}).design());
}

TEST(SourceLibrary, SeedsAreStable) {
  EXPECT_EQ(request_seed(7, {6, 10, 2}), request_seed(7, {6, 10, 2}));
  EXPECT_NE(request_seed(7, {6, 10, 2}), request_seed(8, {6, 10, 2}));
  EXPECT_NE(request_seed(7, {6, 10, 2}), request_seed(7, {6, 10, 3}));
}

}  // namespace
}  // namespace ssd
