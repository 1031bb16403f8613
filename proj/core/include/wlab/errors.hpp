#pragma once

#include <stdexcept>
#include <string>

#include "wlab/config.hpp"

namespace wlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DegenerateLattice : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

// z was within the pole-exclusion radius of a lattice point.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, cplx lattice_point)
      : Error(what), lattice_point_(lattice_point) {}
  cplx lattice_point() const { return lattice_point_; }

 private:
  cplx lattice_point_;
};

}  // namespace wlab
