#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "recoup/combinatorics.hpp"
#include "recoup/quantumstates.hpp"
#include "recoup/recoupling.hpp"
#include "recoup/tensorlinalg.hpp"

namespace recoup {

using json = nlohmann::json;

json to_json(const Partition& p);
Partition partition_from_json(const json& j);

json to_json(cplx z);          // [re, im]
cplx complex_from_json(const json& j);  // [re, im] or a bare number

json to_json(const ComplexMatrix& m);  // rows of [re, im] pairs
ComplexMatrix complex_matrix_from_json(const json& j);

/// {"dims": [...], "matrix": [[[re, im], ...], ...]}
json to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);
DensityMatrix read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho);

/// Target spectra for a tripartite system, as in a SpectraTuple.
struct SpectraFile {
  std::array<int, 3> dims{2, 2, 2};
  SpectraTuple spectra;
};

/// {"dims": [a,b,c], "r_A": [...], "r_B": [...], "r_C": [...],
///  "r_AB": [...], "r_BC": [...], "r_ABC": [...]}
json to_json(const SpectraFile& s);
SpectraFile spectra_from_json(const json& j);
SpectraFile read_spectra_file(const std::filesystem::path& path);

json to_json(const RecouplingTensor& t);

json read_json_file(const std::filesystem::path& path);

}  // namespace recoup
