#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : Error { using Error::Error; };
struct ChartError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct SingularSolve : Error { using Error::Error; };
struct ChartMismatch : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };
struct UnknownSystem : Error { using Error::Error; };
struct KappaRequired : Error { using Error::Error; };
struct UnknownCoefficient : Error { using Error::Error; };
struct NotKilling : Error { using Error::Error; };
struct NotLiouville : Error { using Error::Error; };
struct NotRegular : Error { using Error::Error; };
struct UnsupportedKappa : Error { using Error::Error; };

struct ParseError : Error {
    std::size_t offset;
    std::vector<std::string> expected;

    ParseError(std::size_t at, std::vector<std::string> exp)
        : Error(describe(at, exp)), offset(at), expected(std::move(exp)) {}

    static std::string describe(std::size_t at, const std::vector<std::string>& exp) {
        std::string s = "parse error at offset " + std::to_string(at) + ": expected ";
        for (std::size_t i = 0; i < exp.size(); ++i) {
            if (i) s += " or ";
            s += exp[i];
        }
        return s;
    }
};

}  // namespace ckc
