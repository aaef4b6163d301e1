#ifndef CMTOR_ERRORS_HPP
#define CMTOR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace cmtor {

// Error category; the numeric value doubles as the CLI process exit code.
enum class ErrorKind {
  Config = 2,     // bad user input (config file, flags, invalid math data)
  Invariant = 3,  // a checked mathematical invariant failed
  Resource = 4,   // a size/enumeration cap was exceeded
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail),
        kind_(kind),
        name_(std::move(name)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void fail_config(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::Config, name, detail);
}

[[noreturn]] inline void fail_invariant(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::Invariant, name, detail);
}

[[noreturn]] inline void fail_resource(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::Resource, name, detail);
}

}  // namespace cmtor

#endif
