#include "svtprox/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace svtprox {

namespace {

double parse_double(const std::string& token, const std::string& path,
                    std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last ||
      !std::isfinite(value)) {
    throw IOError(path + ":" + std::to_string(line_no) + ": bad number '" +
                  token + "'");
  }
  return value;
}

long parse_index(const std::string& token, const std::string& path,
                 std::size_t line_no) {
  long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last || value < 0) {
    throw IOError(path + ":" + std::to_string(line_no) + ": bad index '" +
                  token + "'");
  }
  return value;
}

std::vector<std::string> split_csv(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

}  // namespace

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

DenseMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open matrix file '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    for (const std::string& token : split_csv(line)) {
      row.push_back(parse_double(token, path, line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IOError(path + ":" + std::to_string(line_no) +
                    ": ragged row (expected " +
                    std::to_string(rows.front().size()) + " columns)");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IOError("matrix file '" + path + "' is empty");

  DenseMatrix Y(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      Y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return Y;
}

void write_matrix(const std::string& path, const DenseMatrix& Y) {
  std::ofstream out(path);
  if (!out) throw IOError("cannot open '" + path + "' for writing");
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(Y(i, j));
    }
    out << '\n';
  }
  if (!out) throw IOError("write to '" + path + "' failed");
}

std::vector<Observation> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open observations file '" + path + "'");

  std::vector<Observation> observed;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 3) {
      throw IOError(path + ":" + std::to_string(line_no) +
                    ": expected 'row,col,value'");
    }
    Observation obs;
    obs.row = static_cast<int>(parse_index(fields[0], path, line_no));
    obs.col = static_cast<int>(parse_index(fields[1], path, line_no));
    obs.value = parse_double(fields[2], path, line_no);
    observed.push_back(obs);
  }
  return observed;
}

void write_observations(const std::string& path,
                        const std::vector<Observation>& observed) {
  std::ofstream out(path);
  if (!out) throw IOError("cannot open '" + path + "' for writing");
  for (const Observation& obs : observed) {
    out << obs.row << ',' << obs.col << ',' << format_double(obs.value)
        << '\n';
  }
  if (!out) throw IOError("write to '" + path + "' failed");
}

}  // namespace svtprox
