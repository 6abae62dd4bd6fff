#pragma once

// File formats: JSON for trees, spectra and period reports (complex numbers
// as [re, im] pairs), CSV for time series with 17 significant digits.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "goldgen/dynamics.hpp"
#include "goldgen/permgen.hpp"
#include "goldgen/solvers.hpp"
#include "goldgen/spectra.hpp"

namespace goldgen {

using Json = nlohmann::json;

Json to_json(Cplx z);
Json to_json(std::span<const Cplx> v);
// Accepts [re, im] or a bare real number.
Cplx cplx_from_json(const Json& j);
CVec cvec_from_json(const Json& j);

Json tree_to_json(const GenerationTree& tree);
Json spectrum_to_json(const SpectrumReport& rep);
Json period_report_to_json(const PeriodReport& rep);

// Header t,x1_re,x1_im,...,xN_im,v1_re,...,vN_im
std::string trajectory_csv(const Trajectory& traj);
// Header t,x1_re,...,xN_im
std::string labeled_path_csv(const LabeledPath& path);

struct CsvSeries {
  LabeledPath positions;
  std::vector<CVec> velocities;  // empty when the file has no v columns
};
CsvSeries parse_series_csv(const std::string& text);
CsvSeries read_series_csv(const std::filesystem::path& file);

std::string read_text_file(const std::filesystem::path& file);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& file, const std::string& content);

}  // namespace goldgen
