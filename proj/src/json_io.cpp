#include "recoup/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace recoup {

json to_json(const Partition& p) {
  return json(std::vector<int>(p.rows().begin(), p.rows().end()));
}

Partition partition_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("partition must be a JSON array of row lengths");
  return Partition(j.get<std::vector<int>>());
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(n, cols);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json to_json(const DensityMatrix& rho) {
  return json{{"dims", rho.dims()}, {"matrix", to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const json& j) {
  if (!j.contains("dims") || !j.contains("matrix")) {
    throw std::invalid_argument("state file needs \"dims\" and \"matrix\"");
  }
  return DensityMatrix(j.at("dims").get<std::vector<int>>(), complex_matrix_from_json(j.at("matrix")));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  return state_from_json(read_json_file(path));
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(rho).dump(1) << '\n';
}

namespace {

std::vector<double> probability_vector(const json& j, const char* key, std::size_t max_len) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("spectra file lacks ") + key);
  auto v = j.at(key).get<std::vector<double>>();
  if (v.empty() || v.size() > max_len) {
    throw std::invalid_argument(std::string(key) + " must have between 1 and " +
                                std::to_string(max_len) + " entries");
  }
  double sum = 0.0;
  for (double x : v) {
    if (x < -kStateTol) throw std::invalid_argument(std::string(key) + " has a negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStateTol) {
    throw std::invalid_argument(std::string(key) + " does not sum to 1");
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  v.resize(max_len, 0.0);
  return v;
}

}  // namespace

json to_json(const SpectraFile& s) {
  return json{{"dims", s.dims},          {"r_A", s.spectra.r_a},   {"r_B", s.spectra.r_b},
              {"r_C", s.spectra.r_c},    {"r_AB", s.spectra.r_ab}, {"r_BC", s.spectra.r_bc},
              {"r_ABC", s.spectra.r_abc}};
}

SpectraFile spectra_from_json(const json& j) {
  SpectraFile s;
  if (j.contains("dims")) {
    const auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() != 3 || std::any_of(dims.begin(), dims.end(), [](int d) { return d < 1; })) {
      throw std::invalid_argument("spectra file dims must be three positive integers");
    }
    s.dims = {dims[0], dims[1], dims[2]};
  }
  const auto a = static_cast<std::size_t>(s.dims[0]);
  const auto b = static_cast<std::size_t>(s.dims[1]);
  const auto c = static_cast<std::size_t>(s.dims[2]);
  s.spectra.r_a = probability_vector(j, "r_A", a);
  s.spectra.r_b = probability_vector(j, "r_B", b);
  s.spectra.r_c = probability_vector(j, "r_C", c);
  s.spectra.r_ab = probability_vector(j, "r_AB", a * b);
  s.spectra.r_bc = probability_vector(j, "r_BC", b * c);
  s.spectra.r_abc = probability_vector(j, "r_ABC", a * b * c);
  return s;
}

SpectraFile read_spectra_file(const std::filesystem::path& path) {
  return spectra_from_json(read_json_file(path));
}

json to_json(const RecouplingTensor& t) {
  // entries[i][j][k][l]
  json entries = json::array();
  const auto& s = t.shape;
  if (!t.empty()) {
    for (int i = 0; i < s[0]; ++i) {
      json a = json::array();
      for (int j = 0; j < s[1]; ++j) {
        json b = json::array();
        for (int k = 0; k < s[2]; ++k) {
          json c = json::array();
          for (int l = 0; l < s[3]; ++l) c.push_back(t.at(i, j, k, l));
          b.push_back(std::move(c));
        }
        a.push_back(std::move(b));
      }
      entries.push_back(std::move(a));
    }
  }
  json labels{{"alpha", to_json(t.labels.alpha)}, {"beta", to_json(t.labels.beta)},
              {"gamma", to_json(t.labels.gamma)}, {"mu", to_json(t.labels.mu)},
              {"nu", to_json(t.labels.nu)},       {"lambda", to_json(t.labels.lambda)}};
  return json{{"labels", labels}, {"block_shape", t.shape}, {"entries", entries}, {"hs", t.hs}};
}

}  // namespace recoup
