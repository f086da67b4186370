#pragma once

#include <stdexcept>
#include <string>

namespace tailvar {

// Evaluation outside a function's domain, or a probe that came back
// non-positive / non-finite.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// An improper integral that failed to stabilize (divergent or too heavy
// a tail for the requested tolerance).
class tail_integral_error : public std::runtime_error {
 public:
  explicit tail_integral_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Cumulative hazard could not reach the requested level before the
// bracketing cap.
class saturation_error : public std::runtime_error {
 public:
  explicit saturation_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A monotonicity precondition failed on the probe range.
class monotonicity_error : public std::runtime_error {
 public:
  explicit monotonicity_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A representation component could not be extracted.
class representation_error : public std::runtime_error {
 public:
  explicit representation_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Spec-file / expression parse failure; carries the offending line.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace tailvar
