#pragma once

#include <stdexcept>
#include <string>

namespace flataff {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class MissingParam : public Error { public: using Error::Error; };
class DuplicateParam : public Error { public: using Error::Error; };
class DivisionByZero : public Error { public: using Error::Error; };
class DivisionByZeroAtPoint : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class WeightParameterConflict : public Error { public: using Error::Error; };
class CompositionOutsideAlgebra : public Error { public: using Error::Error; };
class NotFlatAffine : public Error { public: using Error::Error; };
class NotAffineField : public Error { public: using Error::Error; };
class ClosureViolation : public Error { public: using Error::Error; };
class UndecidableSign : public Error { public: using Error::Error; };
class UnknownSurface : public Error { public: using Error::Error; };
class NotReductive : public Error { public: using Error::Error; };
class PointOutsideDomain : public Error { public: using Error::Error; };
class EvaluatorDomainError : public Error { public: using Error::Error; };
class SchemaError : public Error { public: using Error::Error; };
class SingularMap : public Error { public: using Error::Error; };
class InvalidAction : public Error { public: using Error::Error; };

/// Parse failure carrying the byte offset where scanning stopped.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

} // namespace flataff
