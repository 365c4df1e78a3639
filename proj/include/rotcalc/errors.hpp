#pragma once

#include <stdexcept>
#include <string>

namespace rotcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A derivation would create a t-symbol above the configured level cap.
class TauLevelOverflow : public Error {
 public:
  using Error::Error;
};

class PoleHit : public Error {
 public:
  using Error::Error;
};

class MissingAssignment : public Error {
 public:
  using Error::Error;
};

class BadIndexPair : public Error {
 public:
  using Error::Error;
};

class UnsupportedPairing : public Error {
 public:
  using Error::Error;
};

class ArityUnsupported : public Error {
 public:
  using Error::Error;
};

class UnknownIdentity : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ContextError : public Error {
 public:
  using Error::Error;
};

}  // namespace rotcalc
