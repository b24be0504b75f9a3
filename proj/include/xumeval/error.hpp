// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xumeval {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An index or value outside its documented domain.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Invalid argument combination (empty sets, dimension mismatch, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Malformed token or record text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Non-finite values where finite arithmetic is required.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid binary file; carries the offending byte offset.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t byte_offset)
        : Error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// Manifest or record-file rejection; message lists the offending lines.
class LoadError : public Error {
public:
    using Error::Error;
};

/// Model output contained no usable summary content.
class EmptySummaryError : public Error {
public:
    using Error::Error;
};

/// A score whose defining formula is degenerate for the given input.
class UndefinedScoreError : public Error {
public:
    using Error::Error;
};

/// Remote embedding provider failure. Carries enough context for the
/// caller to decide whether a retry is worthwhile.
class ProviderError : public Error {
public:
    ProviderError(const std::string& what, int http_status, int attempts, bool retryable)
        : Error(what + " (status " + std::to_string(http_status) + ", attempt " +
                std::to_string(attempts) + (retryable ? ", retryable" : ", not retryable") + ")"),
          http_status_(http_status),
          attempts_(attempts),
          retryable_(retryable) {}

    int http_status() const noexcept { return http_status_; }
    int attempts() const noexcept { return attempts_; }
    bool retryable() const noexcept { return retryable_; }

private:
    int http_status_;
    int attempts_;
    bool retryable_;
};

}  // namespace xumeval
