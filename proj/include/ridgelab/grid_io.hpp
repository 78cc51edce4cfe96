#pragma once

// Text formats.
//
// Grid CSV (GridFunction, RidgeletCoeffs, node distributions):
//   p,d
//   <p>,<d>
//   index,re,im
//   0,<re>,<im>
//   ...            one row per linear index, in order
//
// Dataset CSV: header x0,...,x{D-1},y then one example per row.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ridgelab/grid.hpp"

namespace ridgelab {

struct GridTable {
    std::uint64_t p = 0;
    std::size_t d = 0;
    std::vector<cplx> values;
};

void write_grid_csv(std::ostream& os, std::uint64_t p, std::size_t d, const std::vector<cplx>& values);
void write_grid_csv(std::ostream& os, const GridFunction& f);
void write_grid_csv(std::ostream& os, const RidgeletCoeffs& w);
GridTable read_grid_csv(std::istream& is);

GridFunction to_grid_function(const GridTable& t);
RidgeletCoeffs to_ridgelet_coeffs(const GridTable& t);

struct DataRow {
    GridIndex x;
    double y = 0.0;
};

std::vector<DataRow> read_dataset_csv(std::istream& is);
std::vector<DataRow> read_dataset_csv(const std::filesystem::path& path);

/// Single-column activation samples: header `b,value`, one row per b in order.
std::vector<double> read_activation_csv(const std::filesystem::path& path);

} // namespace ridgelab
