#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "svtprox/solvers.hpp"

namespace svtprox {

class IOError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix files: UTF-8 text, one row per line, comma-separated decimal
// literals, no header.  Writers emit 17 significant digits so values
// round-trip exactly.
DenseMatrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const DenseMatrix& Y);

// Observed-entry files: lines "row,col,value" with 0-indexed integers.
std::vector<Observation> read_observations(const std::string& path);
void write_observations(const std::string& path,
                        const std::vector<Observation>& observed);

std::string format_double(double x);  // shortest 17-significant-digit form

}  // namespace svtprox
