#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailvar/evt.hpp"
#include "tailvar/represent.hpp"

// Plain CSV output: '.' decimal, LF newlines, mandatory header row,
// shortest-roundtrip doubles. Byte-stable across runs by construction.

namespace tailvar {

inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvFile {
 public:
  explicit CsvFile(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline void write_csv(const RepresentationReport& rep, const std::string& path) {
  CsvFile csv(path);
  csv.row({"t", "epsilon_or_A", "c_or_B", "residual"});
  for (const auto& r : rep.samples)
    csv.row({csv_num(r.t), csv_num(r.eps_or_A), csv_num(r.c_or_B), csv_num(r.residual)});
}

inline void write_csv(const EvtReport& rep, const std::string& path) {
  CsvFile csv(path);
  csv.row({"n", "blocks", "a_n", "b_n", "ks", "seed"});
  for (const auto& r : rep.rows)
    csv.row({std::to_string(r.n), std::to_string(rep.blocks), csv_num(r.a_n),
             csv_num(r.b_n), csv_num(r.ks), std::to_string(rep.seed)});
}

inline void write_maxima_csv(const std::vector<double>& maxima, const std::string& path) {
  CsvFile csv(path);
  csv.row({"block", "value"});
  for (std::size_t i = 0; i < maxima.size(); ++i)
    csv.row({std::to_string(i), csv_num(maxima[i])});
}

}  // namespace tailvar
