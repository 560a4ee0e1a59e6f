#pragma once

#include <stdexcept>
#include <string>

namespace scinda {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration (bad day range, unknown stage token, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Problem with the raw corpus tree itself (missing root, unreadable directory).
class CorpusError : public Error {
public:
    using Error::Error;
};

/// A gz archive that cannot be decoded. Carries the offending file's identity.
class ArchiveError : public Error {
public:
    ArchiveError(std::string file, const std::string& what)
        : Error(file.empty() ? what : file + ": " + what), file_(std::move(file)) {}

    const std::string& file() const noexcept { return file_; }

private:
    std::string file_;
};

class InvalidDate : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace scinda
