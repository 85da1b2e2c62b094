#include "sphsemi/emit.hpp"

#include <cstdio>

namespace sphsemi {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::separate() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ << ",";
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ << "{";
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ << "}";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ << "[";
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ << "]";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separate();
  out_ << "\"" << k << "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::string(const std::string& v) {
  separate();
  out_ << "\"" << v << "\"";
  return *this;
}

JsonWriter& JsonWriter::number(double v) {
  separate();
  out_ << format_double(v);
  return *this;
}

JsonWriter& JsonWriter::integer(long v) {
  separate();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::boolean(bool v) {
  separate();
  out_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::cnumber(const complex& v) {
  begin_array();
  number(v.real());
  number(v.imag());
  return end_array();
}

CsvWriter& CsvWriter::comment(const std::string& line) {
  out_ << "# " << line << "\n";
  return *this;
}

CsvWriter& CsvWriter::header(const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i)
    out_ << (i ? "," : "") << cols[i];
  out_ << "\n";
  return *this;
}

CsvWriter& CsvWriter::row(const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i)
    out_ << (i ? "," : "") << format_double(vals[i]);
  out_ << "\n";
  return *this;
}

}  // namespace sphsemi
