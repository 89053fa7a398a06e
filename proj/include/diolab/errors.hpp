#pragma once

#include <stdexcept>
#include <string>

namespace diolab {

// Process exit codes reused as error codes:
//   2 precondition violated, 3 precision exhausted, 4 budget cap hit,
//   5 claimed invariant falsified by exact arithmetic.
class error : public std::runtime_error {
public:
    error(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(2, what) {}
};

class precision_error : public error {
public:
    explicit precision_error(const std::string& what) : error(3, what) {}
};

class budget_error : public error {
public:
    explicit budget_error(const std::string& what) : error(4, what) {}
};

class invariant_error : public error {
public:
    explicit invariant_error(const std::string& what) : error(5, what) {}
};

// A linear form enclosure pinned 0 below resolvable width. Either the input
// matrix admits an integer relation among its entries together with 1, or the
// working precision cannot separate it from one. Treated as a precondition
// failure so callers exit with code 2.
class rank_suspect_error : public precondition_error {
public:
    explicit rank_suspect_error(const std::string& what) : precondition_error(what) {}
};

} // namespace diolab
