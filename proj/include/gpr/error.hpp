// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gpr {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-finite samples, bad sizes, bad config).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Sample entropy has no template matches at length m.
class Undefined : public Error {
public:
    using Error::Error;
};

/// Every mode was rejected by the entropy gate.
class EmptySelection : public Error {
public:
    EmptySelection(const std::string& what, std::vector<double> entropies)
        : Error(what), entropies_(std::move(entropies)) {}

    const std::vector<double>& entropies() const noexcept { return entropies_; }

private:
    std::vector<double> entropies_;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

class CorruptFile : public Error {
public:
    using Error::Error;
};

class UnsupportedVersion : public Error {
public:
    using Error::Error;
};

/// CSV or config file could not be parsed. Row/column are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gpr
