#pragma once

// Minimal CSV emission with a fixed numeric format, so identical runs produce
// byte-identical files.

#include <Eigen/Dense>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lbd/errors.hpp"

namespace lbd {

inline std::string format_double(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

/// One row per sample, header x0..x{d-1}, full round-trip precision.
inline void write_samples_csv(std::ostream& os, const Eigen::MatrixXd& samples) {
  for (int i = 0; i < samples.cols(); ++i) os << (i ? ",x" : "x") << i;
  os << "\n";
  for (int r = 0; r < samples.rows(); ++r) {
    for (int c = 0; c < samples.cols(); ++c) {
      if (c) os << ",";
      os << format_double(samples(r, c));
    }
    os << "\n";
  }
}

/// Shared iteration grid plus one named column per run.
struct TraceSeries {
  std::vector<std::uint64_t> iterations;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  void add_column(std::string name, std::vector<double> values) {
    if (!iterations.empty() && values.size() != iterations.size())
      throw ContractViolation("TraceSeries: column length does not match the iteration grid");
    columns.emplace_back(std::move(name), std::move(values));
  }

  void write_csv(std::ostream& os) const {
    os << "iteration";
    for (const auto& [name, _] : columns) os << "," << name;
    os << "\n";
    for (std::size_t r = 0; r < iterations.size(); ++r) {
      os << iterations[r];
      for (const auto& [_, vals] : columns) os << "," << format_double(vals[r], "%.12g");
      os << "\n";
    }
  }
};

inline void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  body(out);
  if (!out) throw ConfigError("failed while writing '" + path + "'");
}

}  // namespace lbd
