#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "reflab/errors.hpp"
#include "reflab/io.hpp"

using namespace reflab;

TEST_CASE("matrix files in JSON") {
  const auto f = parse_matrix_json(R"({"rank": 3, "entries": [[1,"inf","inf"],["inf",1,"inf"],["inf","inf",1]]})");
  CHECK(f.matrix == CoxeterMatrix::universal(3));
  CHECK_FALSE(f.mode.has_value());

  const auto flat = parse_matrix_json(R"({"rank": 2, "entries": [1,3,3,1], "mode": "approx"})");
  CHECK(flat.matrix == CoxeterMatrix::type_a(2));
  CHECK(flat.mode == ScalarMode::Approx);

  const auto w = parse_matrix_json(
      R"({"rank": 2, "entries": [1,"oo","oo",1], "infinity_weights": [[null,"-5/4"],["-5/4",null]]})");
  CHECK(w.matrix.infinity_weight(0, 1) == Scalar::rational(-5, 4));

  CHECK_THROWS_AS(parse_matrix_json("{\"rank\": 2, \"entries\": [1,3,3]}"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("{\"rank\": 2, \"entries\": [1,0,0,1]}"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("{\"rank\": 2, \"entries\": [1,3,4,1]}"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("{\"rank\": 2, \"entries\": [1,3,3,1], \"mode\": \"fast\"}"), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("{\"rank\": 2, \"entries\": "), ParseError);
  CHECK_THROWS_AS(parse_matrix_json("[1, 2]"), ParseError);
}

TEST_CASE("matrix files in TOML") {
  const auto f = parse_matrix_toml(R"(# affine A2
rank = 3
mode = "exact"
entries = [
  [1, 3, 3],
  [3, 1, 3],
  [3, 3, 1],  # trailing comma
]
)");
  CHECK(f.matrix == CoxeterMatrix::affine_a(2));
  CHECK(f.mode == ScalarMode::Exact);

  const auto w = parse_matrix_toml("rank = 2\nentries = [1, inf, inf, 1]\ninfinity_weights = [0, -1.5, -1.5, 0]\n");
  CHECK(w.matrix.infinity_weight(1, 0) == Scalar::rational(-3, 2));

  CHECK_THROWS_AS(parse_matrix_toml("rank = 2\nentries = [1, 3, 3, 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_toml("rank = \nentries = [1]\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_toml("rank = 2 3\n"), ParseError);
  try {
    parse_matrix_toml("rank = 2\n\nentries = [1, 3, 3, x]\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("matrix file loading picks the format") {
  const auto dir = std::filesystem::temp_directory_path() / "reflab_io_test";
  std::filesystem::create_directories(dir);
  const auto json_path = (dir / "m.json").string(), toml_path = (dir / "m.toml").string();
  std::ofstream(json_path) << "  {\"rank\": 2, \"entries\": [1, \"inf\", \"inf\", 1]}";
  std::ofstream(toml_path) << "rank = 2\nentries = [1, 3, 3, 1]\n";
  CHECK(load_matrix_file(json_path).matrix == CoxeterMatrix::affine_a(1));
  CHECK(load_matrix_file(toml_path).matrix == CoxeterMatrix::type_a(2));
  try {
    load_matrix_file((dir / "missing.json").string());
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV writers") {
  const auto slice = std::make_shared<const RootSlice>(generate_slice(CoxeterMatrix::type_a(2), 5, ScalarMode::Exact));
  std::ostringstream roots;
  write_roots_csv(roots, *slice);
  CHECK(roots.str() ==
        "id,depth,coeff_1,coeff_2,parent_id,parent_letter\n"
        "0,0,1,0,,\n"
        "1,0,0,1,,\n"
        "2,1,1,1,0,2\n");

  std::ostringstream order;
  write_order_csv(order, sort_truncation(slice, LexicographicSpec::simple({0, 1})));
  CHECK(order.str().rfind("position,root_id,coeff_1,coeff_2\n0,", 0) == 0);

  std::ostringstream norm;
  write_normroots_csv(norm, *slice);
  CHECK(norm.str() ==
        "id,x1,x2,qvalue_sign\n"
        "0,1,0,1\n"
        "1,0,1,1\n"
        "2,1/2,1/2,1\n");

  const auto model = AffineModel::named("A1~");
  const auto aff = generate_slice(model.matrix(), 2, ScalarMode::Exact);
  std::ostringstream loop;
  write_loop_csv(loop, model, aff);
  std::istringstream lines(loop.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "beta_id,level,coeff_1,coeff_2");
  CHECK(first == "1,0,1,0");
}
