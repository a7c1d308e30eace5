#include <sstream>

#include "cohomlab/instance_io.hpp"
#include "doctest.h"

using namespace cohomlab::io;
using cohomlab::linalg::Vec;
using cohomlab::linalg::i64;

namespace {

cohomlab::massey::Instance sample_instance() {
  cohomlab::massey::Params par{3, 1, 1, 1};
  std::vector<i64> orders(3, 3);
  std::vector<Vec> sigma(3, Vec(3, 0));
  for (int j = 0; j < 3; ++j) {
    sigma[j][j] = 1;
    if (j > 0) sigma[j][j - 1] = 1;
  }
  Vec y{1, 0, 0};
  return cohomlab::massey::Instance::create(par, orders, sigma, y, 1);
}

}  // namespace

TEST_CASE("instance files round-trip bit-exactly") {
  auto inst = sample_instance();
  std::string text = write_instance(inst);
  std::istringstream in(text);
  auto back = read_instance(in, "mem");
  CHECK(write_instance(back) == text);
  CHECK(back.q()->order() == inst.q()->order());
  CHECK(back.t() == inst.t());
  CHECK(back.chi() == inst.chi());
  CHECK(back.lambda() == inst.lambda());
}

TEST_CASE("instance parse errors carry line numbers") {
  auto inst = sample_instance();
  std::string text = write_instance(inst);
  // Corrupt the CHI table.
  auto pos = text.find("CHI\n");
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad[pos + 4] = '9';
  std::istringstream in(bad);
  CHECK_THROWS_AS(read_instance(in, "mem"), ParseError);
  // Remove a block entirely.
  std::string missing = text.substr(0, text.find("LAMBDA"));
  missing += "END\n";
  std::istringstream in2(missing);
  CHECK_THROWS_AS(read_instance(in2, "mem"), ParseError);
  // Garbage token.
  std::string garbage = "PARAMS\np x\n";
  std::istringstream in3(garbage);
  CHECK_THROWS_AS(read_instance(in3, "mem"), ParseError);
}

TEST_CASE("tampered group tables are rejected") {
  auto inst = sample_instance();
  std::string text = write_instance(inst);
  auto pos = text.find("GROUP\n");
  REQUIRE(pos != std::string::npos);
  // Swap two entries in the first table row.
  std::string bad = text;
  size_t row = bad.find('\n', pos + 6) + 1;
  std::swap(bad[row], bad[row + 2]);
  std::istringstream in(bad);
  CHECK_THROWS_AS(read_instance(in, "mem"), ParseError);
}

TEST_CASE("module files round-trip with optional submodule data") {
  std::vector<i64> orders{3, 3, 3};
  std::vector<Vec> sigma(3, Vec(3, 0));
  for (int j = 0; j < 3; ++j) {
    sigma[j][j] = 1;
    if (j > 0) sigma[j][j - 1] = 1;
  }
  cohomlab::graded::FilteredModule m(3, orders, sigma);
  std::string text = write_module(m);
  std::istringstream in(text);
  auto back = read_module(in, "mem");
  CHECK(write_module(back.module) == text);
  CHECK_FALSE(back.dsub.has_value());

  Vec gen{0, 1, 0};
  auto d = m.span_of({gen});
  std::string text2 = write_module(m, d);
  std::istringstream in2(text2);
  auto back2 = read_module(in2, "mem");
  REQUIRE(back2.dsub.has_value());
  CHECK(*back2.dsub == d);
  CHECK(write_module(back2.module, back2.dsub) == text2);
}

TEST_CASE("element and matrix serialization round-trips") {
  auto ring = cohomlab::groupring::GroupRing::cyclic_p(
      cohomlab::residue::RingParams(3, 1, 2));
  auto d = cohomlab::groupring::d_operator(ring, 3);
  std::string line = write_element(d);
  CHECK(line.substr(0, 8) == "3 1 2 : ");
  auto back = read_element(line);
  CHECK(back.coeffs() == d.coeffs());
  CHECK(write_element(back) == line);

  auto gens = cohomlab::unipotent::standard_generators(2, 3, 2);
  auto u = gens.x * gens.y * gens.z.power(5);
  auto tri = upper_triangle(u);
  CHECK(tri.size() == 6);  // 4x4 strict upper triangle
  auto um = from_upper_triangle(4, 9, tri);
  CHECK(um == u);
  CHECK_THROWS(from_upper_triangle(4, 9, {1, 2, 3}));
}

TEST_CASE("comments and blank lines are tolerated") {
  auto inst = sample_instance();
  std::string text = "# header comment\n\n" + write_instance(inst);
  std::istringstream in(text);
  auto back = read_instance(in, "mem");
  CHECK(write_instance(back) == write_instance(inst));
}
