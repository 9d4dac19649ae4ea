#ifndef GMRESLAB_ERRORS_HPP
#define GMRESLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gmreslab {

// Operand shapes do not agree.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the operation.
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pivot below the singularity threshold during factorization.
struct singular_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-positive pivot in a Cholesky factorization.
struct definiteness_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank deficiency or other factorization breakdown.
struct factorization_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite value or failure to converge inside an iteration.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed input file. line() is 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace gmreslab

#endif
