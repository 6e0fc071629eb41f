#include "dgkit/appio/text_format.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dgkit/util/errors.h"

namespace dgkit {

std::string FormatDouble(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.*g", kFloatDigits, value);
  return buffer;
}

RecordReader::RecordReader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {}

bool RecordReader::Next(TextRecord* record) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream tokens(line);
    record->line = line_;
    record->tokens.clear();
    for (std::string token; tokens >> token;) record->tokens.push_back(token);
    return true;
  }
  return false;
}

void RecordReader::ExpectHeader(const std::string& kind, int version) {
  TextRecord header;
  if (!Next(&header)) {
    throw ParseError(source_, line_, "missing '" + kind + "' header");
  }
  if (header.tokens.size() != 2 || header.tokens[0] != kind) {
    Fail(header, "expected header '" + kind + " " + std::to_string(version) +
                     "'");
  }
  if (Int(header, 1, "version") != version) {
    Fail(header, "unsupported " + kind + " version " + header.tokens[1]);
  }
}

void RecordReader::Fail(const TextRecord& record, const std::string& what) const {
  throw ParseError(source_, record.line, what);
}

void RecordReader::ExpectFieldCount(const TextRecord& record,
                                    std::size_t min_count,
                                    std::size_t max_count) const {
  const std::size_t n = record.tokens.size();
  if (n < min_count || n > max_count) {
    std::string expected = std::to_string(min_count);
    if (max_count != min_count) expected += "-" + std::to_string(max_count);
    Fail(record, "expected " + expected + " fields, found " + std::to_string(n));
  }
}

double RecordReader::Double(const TextRecord& record, std::size_t index,
                            const char* field) const {
  const std::string& token = record.tokens.at(index);
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(record, std::string("malformed ") + field + " '" + token + "'");
  }
  if (!std::isfinite(value)) {
    Fail(record, std::string("non-finite ") + field + " '" + token + "'");
  }
  return value;
}

int RecordReader::Int(const TextRecord& record, std::size_t index,
                      const char* field) const {
  const std::string& token = record.tokens.at(index);
  int value = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(record, std::string("malformed ") + field + " '" + token + "'");
  }
  return value;
}

void WriteHeader(std::ostream& out, const std::string& kind, int version) {
  out << kind << ' ' << version << '\n';
}

}  // namespace dgkit
