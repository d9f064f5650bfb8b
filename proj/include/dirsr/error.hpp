#pragma once

#include <stdexcept>
#include <string>

namespace dirsr {

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed external data (PGM headers, payloads).
class FormatError : public Error {
public:
    using Error::Error;
};

// Band/grid dimensions that do not fit the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Training-set metadata does not match the inference configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class LoadErrorKind { BadMagic, VersionMismatch, Truncated, ChecksumMismatch, Malformed };

inline const char* to_string(LoadErrorKind k) {
    switch (k) {
        case LoadErrorKind::BadMagic: return "bad magic";
        case LoadErrorKind::VersionMismatch: return "version mismatch";
        case LoadErrorKind::Truncated: return "truncated";
        case LoadErrorKind::ChecksumMismatch: return "checksum mismatch";
        case LoadErrorKind::Malformed: return "malformed";
    }
    return "unknown";
}

class LoadError : public FormatError {
public:
    LoadError(LoadErrorKind kind, const std::string& what)
        : FormatError(std::string("training set load failed (") + to_string(kind) + "): " + what),
          kind_(kind) {}

    LoadErrorKind kind() const noexcept { return kind_; }

private:
    LoadErrorKind kind_;
};

}  // namespace dirsr
