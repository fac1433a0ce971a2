#pragma once

#include <string>
#include <vector>

namespace histmatch {

// Minimal RFC-4180 CSV: CRLF records, fields quoted when they contain a
// comma, quote or line break. Numbers are written with %.17g so round-trips
// are lossless and byte-stable.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void write_row(const std::vector<std::string>& fields);
  void close();

  static std::string format_double(double v);

 private:
  std::string path_;
  std::string buffer_;
  bool open_ = true;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::string& path);

}  // namespace histmatch
