#pragma once

#include <stdexcept>
#include <string>

namespace quadspin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Quadrupole coupling needs I > 1/2.
class SpinTooSmall : public Error {
 public:
  using Error::Error;
};

/// V_zz vanished after principal-axis relabeling, so eta is undefined.
class DegenerateEfg : public Error {
 public:
  using Error::Error;
};

class MixedStateUnsupported : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class IntegratorDiverged : public Error {
 public:
  using Error::Error;
};

/// Both E and dE vanish: the input is a ground eigenstate and never evolves.
class InfiniteBound : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace quadspin
