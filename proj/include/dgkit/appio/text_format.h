#ifndef DGKIT_APPIO_TEXT_FORMAT_H_
#define DGKIT_APPIO_TEXT_FORMAT_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dgkit {

// Significant digits used for every floating-point field written to text.
inline constexpr int kFloatDigits = 9;

std::string FormatDouble(double value);

// One non-blank, non-comment line split on whitespace.
struct TextRecord {
  int line = 0;
  std::vector<std::string> tokens;
};

// Line-oriented reader for the dgkit text formats. Blank lines and lines whose
// first non-blank character is '#' are skipped. Every file starts with a
// header record "<kind> <version>".
class RecordReader {
 public:
  RecordReader(std::istream& in, std::string source);

  // Consumes the header and throws ParseError unless it names `kind` with a
  // supported version.
  void ExpectHeader(const std::string& kind, int version);

  // False at end of input.
  bool Next(TextRecord* record);

  const std::string& source() const { return source_; }

  [[noreturn]] void Fail(const TextRecord& record, const std::string& what) const;
  void ExpectFieldCount(const TextRecord& record, std::size_t min_count,
                        std::size_t max_count) const;
  // Finite doubles only; NaN and Inf are rejected.
  double Double(const TextRecord& record, std::size_t index,
                const char* field) const;
  int Int(const TextRecord& record, std::size_t index, const char* field) const;

 private:
  std::istream& in_;
  std::string source_;
  int line_ = 0;
};

void WriteHeader(std::ostream& out, const std::string& kind, int version);

}  // namespace dgkit

#endif  // DGKIT_APPIO_TEXT_FORMAT_H_
