#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "recoup/json_io.hpp"

using namespace recoup;

namespace {

const std::filesystem::path kData = RECOUP_DATA_DIR;

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("recoup_test_" + name);
}

}  // namespace

TEST_CASE("partitions serialize as row arrays") {
  CHECK(to_json(Partition({3, 1})).dump() == "[3,1]");
  CHECK(partition_from_json(json::parse("[2,2,1]")) == Partition({2, 2, 1}));
  CHECK_THROWS_AS(partition_from_json(json::parse("\"3,1\"")), std::invalid_argument);
  CHECK_THROWS_AS(partition_from_json(json::parse("[1,2]")), std::invalid_argument);
}

TEST_CASE("complex values and matrices") {
  CHECK(to_json(cplx(1.5, -2.0)).dump() == "[1.5,-2.0]");
  CHECK(complex_from_json(json::parse("0.25")) == cplx(0.25, 0.0));
  CHECK_THROWS_AS(complex_from_json(json::parse("[1,2,3]")), std::invalid_argument);
  CHECK_THROWS_AS(complex_matrix_from_json(json::parse("[[1,2],[3]]")), std::invalid_argument);
  ComplexMatrix m(2, 3);
  m << cplx(1, 2), 3, cplx(0, -1), 4, 5, cplx(6, 7);
  CHECK(complex_matrix_from_json(to_json(m)) == m);
}

TEST_CASE("state round trips are exact") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rho = sample_hs_random({2, 2, 2}, seed);
    const auto back = state_from_json(json::parse(to_json(rho).dump()));
    CHECK(back.dims() == rho.dims());
    CHECK(back.matrix() == rho.matrix());
    const auto path = temp_file("state.json");
    write_state_file(path, rho);
    CHECK(read_state_file(path).matrix() == rho.matrix());
    std::filesystem::remove(path);
  }
}

TEST_CASE("shipped example states load") {
  CHECK(read_state_file(kData / "ghz.json").dims() == std::vector<int>{2, 2, 2});
  CHECK(read_state_file(kData / "maximally_mixed.json").matrix().isApprox(ComplexMatrix::Identity(8, 8) / 8.0));
  CHECK(read_state_file(kData / "qubit_diag.json").matrix()(0, 0).real() == doctest::Approx(0.9));
  CHECK_THROWS_AS(read_state_file(kData / "invalid_state.json"), std::invalid_argument);
}

TEST_CASE("malformed files are rejected") {
  const auto path = temp_file("bad.json");
  {
    std::ofstream out(path);
    out << "{\"dims\": [2], \"matrix\": [[1, 0], [0";
  }
  CHECK_THROWS_AS(read_json_file(path), std::invalid_argument);
  {
    std::ofstream out(path);
    out << "{\"dims\": [2]}";
  }
  CHECK_THROWS_AS(read_state_file(path), std::invalid_argument);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(temp_file("missing.json")), std::runtime_error);
}

TEST_CASE("spectra files") {
  const auto s = read_spectra_file(kData / "spectra_incompatible.json");
  CHECK(s.dims == std::array<int, 3>{2, 2, 2});
  CHECK(s.spectra.r_abc.size() == 8);
  CHECK(s.spectra.r_c == std::vector<double>{1.0, 0.0});

  // unsorted and short vectors are sorted and padded
  auto j = to_json(s);
  j["r_AB"] = {0.1, 0.9};
  const auto padded = spectra_from_json(j);
  CHECK(padded.spectra.r_ab == std::vector<double>{0.9, 0.1, 0.0, 0.0});
  const auto again = spectra_from_json(to_json(padded));
  CHECK(again.spectra.r_ab == padded.spectra.r_ab);

  j["r_AB"] = {0.5, 0.4};
  CHECK_THROWS_AS(spectra_from_json(j), std::invalid_argument);
  j["r_AB"] = {0.2, 0.2, 0.2, 0.2, 0.2};
  CHECK_THROWS_AS(spectra_from_json(j), std::invalid_argument);
  j["r_AB"] = {1.5, -0.5};
  CHECK_THROWS_AS(spectra_from_json(j), std::invalid_argument);
  j["r_AB"] = {1.0};
  j["dims"] = {2, 2};
  CHECK_THROWS_AS(spectra_from_json(j), std::invalid_argument);
  j.erase("dims");
  j.erase("r_B");
  CHECK_THROWS_AS(spectra_from_json(j), std::invalid_argument);
}

TEST_CASE("recoupling tensors serialize with nested entries") {
  const Partition p({2, 1});
  const auto t = recoupling_tensor(SixLabels{p, p, p, Partition({3}), p, p});
  const json j = to_json(t);
  CHECK(j.at("labels").at("mu").dump() == "[3]");
  CHECK(j.at("block_shape").get<std::vector<int>>() == std::vector<int>{1, 1, 1, 1});
  CHECK(j.at("entries")[0][0][0][0].get<double>() == t.at(0, 0, 0, 0));
  CHECK(j.at("hs").get<double>() == t.hs);
  const auto empty = recoupling_tensor(SixLabels{Partition({2}), Partition({2}), Partition({2}),
                                                 Partition({1, 1}), Partition({2}), Partition({2})});
  CHECK(to_json(empty).at("entries").empty());
}
