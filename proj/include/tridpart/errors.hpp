#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tridpart {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pivot fell below the degeneracy threshold during elimination.
class ZeroPivotError : public Error {
public:
    explicit ZeroPivotError(std::size_t row)
        : Error("zero pivot at row " + std::to_string(row)), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class InvalidSizeError : public Error {
public:
    using Error::Error;
};

class DepthOutOfRangeError : public Error {
public:
    using Error::Error;
};

// --- classifier / dataset errors ---

class EmptyTrainingSetError : public Error {
public:
    EmptyTrainingSetError() : Error("training set is empty") {}
};

class KTooLargeError : public Error {
public:
    using Error::Error;
};

class TooFewRowsError : public Error {
public:
    using Error::Error;
};

class LabelTooRareError : public Error {
public:
    using Error::Error;
};

class MissingTimesError : public Error {
public:
    using Error::Error;
};

class SolveFailedError : public Error {
public:
    using Error::Error;
};

// --- file format errors ---

class MalformedHeaderError : public Error {
public:
    using Error::Error;
};

class BadNumberError : public Error {
public:
    BadNumberError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": bad number: " + what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class VersionMismatchError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace tridpart
