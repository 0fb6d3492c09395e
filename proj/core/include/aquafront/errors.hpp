#pragma once

#include <stdexcept>
#include <string>

namespace aquafront {

// Errors raised while reading INP documents, cost tables, or front CSVs.
// `line` is 1-based and refers to the offending line of the input text.
enum class ParseErrorKind {
    UnknownSection,
    DuplicateId,
    DanglingReference,
    MalformedRecord,
    NonContiguousIndex,
    NonAscendingDiameter,
    InvalidNetwork,
};

class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrorKind kind, int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          kind_(kind),
          line_(line) {}

    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }

  private:
    ParseErrorKind kind_;
    int line_;
};

class NonphysicalPipe : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class DegenerateDenominator : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A demand node has no path to any reservoir in the realized network
// (zero-diameter options removed).
class Disconnected : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class EmptyArchive : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class ConfigInvalid : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A front input failed validation (dominated pair or duplicate inside one
// front). `row` is the 1-based data-row number of the offending member,
// 0 when the check is not row-addressable.
class InputNotAFront : public std::invalid_argument {
  public:
    InputNotAFront(int row, const std::string& what)
        : std::invalid_argument(what), row_(row) {}

    int row() const { return row_; }

  private:
    int row_;
};

class RefPointInvalid : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class IoFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace aquafront
