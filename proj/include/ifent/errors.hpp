/*
 * errors.hpp
 *
 * Exception types shared across the library.
 */

#ifndef IFENT_ERRORS_HPP_
#define IFENT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ifent {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownInput : Error {
  explicit UnknownInput(const std::string& what) : Error(what) {}
};

struct NotControlledInvariant : Error {
  explicit NotControlledInvariant(const std::string& what) : Error(what) {}
};

struct NotDeterministic : Error {
  explicit NotDeterministic(const std::string& what) : Error(what) {}
};

struct UncoverableSet : Error {
  UncoverableSet(const std::string& what, std::size_t element)
      : Error(what), element(element) {}
  std::size_t element;
};

struct IncompletePolicy : Error {
  explicit IncompletePolicy(const std::string& what) : Error(what) {}
};

struct ExplosionGuard : Error {
  explicit ExplosionGuard(const std::string& what) : Error(what) {}
};

struct NotAdmissible : Error {
  explicit NotAdmissible(const std::string& what) : Error(what) {}
};

struct WindowTooShort : Error {
  explicit WindowTooShort(const std::string& what) : Error(what) {}
};

struct LoadError : Error {
  explicit LoadError(const std::string& what) : Error(what) {}
};

}  // namespace ifent

#endif
