#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Input data is malformed or inconsistent (bad header, size mismatch, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tetra
