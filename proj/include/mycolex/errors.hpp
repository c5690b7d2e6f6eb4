#ifndef MYCOLEX_ERRORS_HPP
#define MYCOLEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mycolex {

// File system / parsing failures of external inputs. CLI exit code 1.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user-supplied configuration (unknown species, bad parameter
// combinations). CLI exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mycolex

#endif
