#pragma once

#include <stdexcept>
#include <string>

namespace idnc {

// Candidate-collection cap of the exact solver was hit (see SolveOptions).
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// A delay ledger still has undecoded demands.
class IncompleteLedgerError : public std::runtime_error {
public:
    explicit IncompleteLedgerError(const std::string& what) : std::runtime_error(what) {}
};

// Instance is larger than an exact/oracle routine accepts.
class LimitExceededError : public std::runtime_error {
public:
    explicit LimitExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (message carries line/column where known).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level failure (open/write/rename).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace idnc
