#include <gtest/gtest.h>

#include "detsing/io.hpp"

using namespace detsing;

namespace {

const char* kCone = R"({
  "variables": ["x", "y", "z", "w"],
  "entries": [["z", "y", "x"],
              ["w", "z", "y"]]
})";

}  // namespace

TEST(MatrixFile, ParsesAndLoads) {
  auto f = parse_matrix_file(kCone);
  EXPECT_EQ(f.variables.size(), 4u);
  auto L = load_matrix(f);
  EXPECT_EQ(L.matrix, instantiate("ex1"));
  EXPECT_FALSE(L.deformation);
}

TEST(MatrixFile, PolynomialErrorHasLineAndColumn) {
  const char* bad = "{\n  \"variables\": [\"x\", \"y\", \"z\", \"w\"],\n  \"entries\": [[\"z\", \"y\", \"x\"],\n    [\"w\", \"z + * y\", \"y\"]]\n}";
  try {
    parse_matrix_file(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    // `*` sits at column 16 of that line
    EXPECT_EQ(e.column(), 16u);
  }
}

TEST(MatrixFile, JsonSyntaxErrorHasLine) {
  try {
    parse_matrix_file("{\n  \"variables\": [\"x\"],\n  \"entries\": [[\"x\"]],,\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(MatrixFile, StructuralErrors) {
  EXPECT_THROW(parse_matrix_file("[]"), ParseError);
  EXPECT_THROW(parse_matrix_file(R"({"entries": [["x"]]})"), ParseError);
  EXPECT_THROW(parse_matrix_file(R"({"variables": ["x"], "entries": [["x", "x"], ["x"]]})"), ParseError);
  EXPECT_THROW(parse_matrix_file(R"({"variables": ["x", "x"], "entries": [["x"]]})"), ParseError);
  EXPECT_THROW(parse_matrix_file(R"({"variables": ["x"], "entries": [["y"]]})"), ParseError);
}

TEST(MatrixFile, BareDeformationGrid) {
  std::string text = R"({
  "variables": ["x", "y", "z", "w"],
  "entries": [["z", "w+x", "y^k"], ["w", "y", "x"]],
  "params": {"k": 2},
  "deformation": [["0", "0", "lambda"], ["0", "0", "0"]]
})";
  auto f = parse_matrix_file(text);
  EXPECT_EQ(f.deformation_parameters, std::vector<std::string>{"lambda"});
  EXPECT_EQ(f.deformation_assignment.at("lambda"), "1");
  auto L = load_matrix(f);
  ASSERT_TRUE(L.deformation);
  EXPECT_EQ(L.matrix, instantiate("ex2", 2));
  EXPECT_EQ(L.deformation->instantiate()(0, 2), parse_polynomial("y^2 + 1", L.matrix.ring()));
}

TEST(MatrixFile, AttachDeformation) {
  auto f = parse_matrix_file(kCone);
  attach_deformation(f, R"({"parameters": ["t"], "entries": [["0","0","0"],["t","0","0"]], "assignment": {"t": "1/2"}})");
  auto L = load_matrix(f);
  ASSERT_TRUE(L.deformation);
  EXPECT_EQ(L.deformation->instantiate()(1, 0), parse_polynomial("w + 1/2", L.matrix.ring()));
  EXPECT_THROW(attach_deformation(f, "[[\"0\"]]"), ParseError);
}

// export followed by parse gives back the catalog matrix.
TEST(MatrixFileProperty, ExportRoundTrip) {
  for (const auto& e : catalog())
    for (long k = e.k_min; k <= (e.parametric ? 3 : e.k_min); ++k) {
      std::optional<long> kk = e.parametric ? std::optional<long>(k) : std::nullopt;
      auto text = matrix_file_json(export_entry(e, kk)).dump(2);
      auto L = load_matrix(parse_matrix_file(text));
      EXPECT_EQ(L.matrix, instantiate(e, kk)) << e.id;
      EXPECT_EQ(L.deformation.has_value(), !e.deformation.empty()) << e.id;
      if (L.deformation) {
        auto M = instantiate(e, kk);
        EXPECT_EQ(L.deformation->instantiate(), entry_deformation(e, M, kk)->instantiate()) << e.id;
      }
    }
}

TEST(Generators, InfersVariables) {
  auto I = parse_generators("# test\nx^2 + y\n\ny^3 - x*y  # tail\n");
  EXPECT_EQ(I.ring()->names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(I.size(), 2u);
}

TEST(Generators, VarsLine) {
  auto I = parse_generators("vars: a, b, c\nb^2\nc\n");
  EXPECT_EQ(I.ring()->names(), (std::vector<std::string>{"a", "b", "c"}));
  auto J = parse_generators("y\n", {"x", "y"});
  EXPECT_EQ(J.ring()->size(), 2u);
}

TEST(Generators, ErrorsCarryLine) {
  try {
    parse_generators("x^2\n\ny + + \n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_generators("x\nvars: x\n"), ParseError);
  EXPECT_THROW(parse_generators("vars: x\ny\n"), ParseError);
}

TEST(Report, JsonFields) {
  auto r = milnor(instantiate("ex1"));
  auto j = report_json(r);
  for (const char* key : {"dimension", "mu", "mu_section", "m_d", "ind_ph", "projection", "projection_route", "seed",
                          "certificates", "section"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["mu"], 1);
  EXPECT_EQ(j["section"]["mu"], 2);
  EXPECT_EQ(j["certificates"]["consistency_identity"], true);
  auto t = report_text(r);
  EXPECT_NE(t.find("mu          1"), std::string::npos);
  EXPECT_EQ(report_json(milnor(instantiate("ex1"))).dump(), j.dump());
}
