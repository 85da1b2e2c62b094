#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <string>
#include <vector>

#include "sphsemi/common.hpp"

namespace sphsemi {

// %.17g rendering: lossless binary64 round trips, byte-deterministic output.
std::string format_double(double v);

// Minimal deterministic JSON writer. Matrices are emitted as row-major
// arrays; complex entries as [re, im] pairs.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& string(const std::string& v);
  JsonWriter& number(double v);
  JsonWriter& integer(long v);
  JsonWriter& boolean(bool v);
  JsonWriter& cnumber(const complex& v);

  template <typename Derived>
  JsonWriter& matrix(const Eigen::MatrixBase<Derived>& m) {
    begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) number(m(i, j));
    return end_array();
  }
  template <typename Derived>
  JsonWriter& cmatrix(const Eigen::MatrixBase<Derived>& m) {
    begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) cnumber(m(i, j));
    return end_array();
  }

  std::string str() const { return out_.str(); }

 private:
  void separate();
  std::ostringstream out_;
  std::vector<bool> first_;  // per nesting level
  bool pending_key_ = false;
};

// CSV table with '#'-prefixed comment lines, LF endings, 17 significant digits.
class CsvWriter {
 public:
  CsvWriter& comment(const std::string& line);
  CsvWriter& header(const std::vector<std::string>& cols);
  CsvWriter& row(const std::vector<double>& vals);
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

}  // namespace sphsemi
