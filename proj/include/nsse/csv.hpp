#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nsse/observables.hpp"

namespace nsse {

using Metadata = std::vector<std::pair<std::string, std::string>>;

// Every file starts with "# key = value" lines: tool version, unit
// conventions, column list, normalization and the caller's run
// parameters, then a header row and the data in "%.12e".
void write_spectrum_csv(std::ostream& out, const SpectrumDataset& ds, const Metadata& params);
void write_angular_csv(std::ostream& out, const AngularDataset& ds, const Metadata& params);

// Writes via a temporary file and rename so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string format_value(double x);

}  // namespace nsse
