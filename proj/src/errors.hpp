#pragma once

#include <stdexcept>
#include <string>

namespace rsacount {

enum class ErrorKind {
    domain,      // argument outside the mathematical domain of a function
    range,       // argument outside a theorem's hypotheses (strict mode only)
    resource,    // request exceeds a configured size or memory budget
    contract,    // caller broke a documented precondition
    validation,  // malformed input data (character tables, specs)
    overflow,    // checked integer arithmetic failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error(ErrorKind::range, w) {}
};
struct ResourceError : Error {
    explicit ResourceError(const std::string& w) : Error(ErrorKind::resource, w) {}
};
struct ContractError : Error {
    explicit ContractError(const std::string& w) : Error(ErrorKind::contract, w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorKind::validation, w) {}
};
struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error(ErrorKind::overflow, w) {}
};

}  // namespace rsacount
