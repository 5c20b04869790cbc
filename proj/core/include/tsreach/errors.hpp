#ifndef TSREACH_ERRORS_HPP
#define TSREACH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tsreach {

/// Dimension mismatch, out-of-range index or otherwise malformed argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The predicate polytope of a star has no feasible point.
class EmptySetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bound query has no finite optimum.
class UnboundedSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A convolution stack would produce fewer than one output time step.
class InputTooShortError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed network, series or configuration file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that sound propagation can never produce (e.g. an empty
/// intermediate reachable set).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tsreach

#endif  // TSREACH_ERRORS_HPP
