#ifndef VMLAB_ERROR_HPP
#define VMLAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vmlab {

/// Failure categories surfaced by the library. The CLI maps `budget` to exit
/// code 2 and everything else to exit code 1.
enum class Errc {
  vertex,      // label not live / out of range
  no_edge,     // pivot on a non-edge
  shape,       // matrix dimensions incompatible with the operation
  range,       // numeric argument out of its domain
  budget,      // enumeration or search budget exhausted
  labels,      // label sets of two arguments are incompatible
  not_basis,   // claimed basis is not a basis
  cap,         // orbit / retry cap exceeded
  parse,       // malformed external input
  io,          // file could not be opened or written
  precondition // any other violated precondition
};

constexpr std::string_view to_string(Errc c) noexcept {
  switch (c) {
    case Errc::vertex: return "vertex";
    case Errc::no_edge: return "no-edge";
    case Errc::shape: return "shape";
    case Errc::range: return "range";
    case Errc::budget: return "budget";
    case Errc::labels: return "labels";
    case Errc::not_basis: return "not-basis";
    case Errc::cap: return "cap";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
    case Errc::precondition: return "precondition";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const char* what) {
  if (!ok) fail(code, what);
}

}  // namespace vmlab

#endif  // VMLAB_ERROR_HPP
