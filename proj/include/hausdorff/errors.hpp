#pragma once

#include <stdexcept>
#include <string>

namespace hausdorff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix is too close to singular; carries |det|.
class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(double abs_det)
      : Error("singular matrix: |det| = " + std::to_string(abs_det)),
        abs_det_(abs_det) {}
  double abs_det() const noexcept { return abs_det_; }

 private:
  double abs_det_;
};

/// Herz-type quantities live on R^n \ {0}.
class OriginExcluded : public Error {
 public:
  using Error::Error;
};

class CatalogMiss : public Error {
 public:
  using Error::Error;
};

/// A quadrature integrand returned a non-finite value.
class IntegrandError : public Error {
 public:
  IntegrandError(const std::string& what, double node)
      : Error(what), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

/// Exponent outside the range where a norm is defined.
class DomainRestriction : public Error {
 public:
  using Error::Error;
};

/// Exponent bundle violates a theorem hypothesis.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// Two evaluation routes that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hausdorff
