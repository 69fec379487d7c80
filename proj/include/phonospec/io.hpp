// io.hpp - CSV tables with a '#' provenance header line

#pragma once

#include "phonospec/experiment.hpp"
#include "phonospec/reconstruct.hpp"

#include <iosfwd>
#include <string>

namespace phonospec {

// Shortest text that reads back to the same double ("nan" for NaN).
std::string format_double(double x);

void write_dataset_csv(std::ostream& out, const MeasurementDataset& ds);

// Reads what write_dataset_csv wrote; rows with a non-finite n_obs are
// marked failed.
MeasurementDataset read_dataset_csv(std::istream& in);

void write_estimate_csv(std::ostream& out, const SpectrumEstimate& est, const std::string& fingerprint);

}  // namespace phonospec
