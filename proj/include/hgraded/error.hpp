#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hgraded {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: group/parity specs, expressions, atlas files.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position = npos)
        : Error(position == npos ? what : what + " at position " + std::to_string(position)),
          position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A mathematically invalid request: division by zero, non-invertible
/// superfunctions, mismatched groups or signatures.
class MathError : public Error {
public:
    using Error::Error;
};

/// Structured validation failure for morphism images.
class ValidationError : public MathError {
public:
    enum class Kind { MissingImage, WeightMismatch, ParityMismatch, SignatureMismatch };

    ValidationError(Kind kind, std::string variable, std::string expected, std::string found)
        : MathError(describe(kind, variable, expected, found)),
          kind_(kind),
          variable_(std::move(variable)),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& variable() const noexcept { return variable_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    static std::string describe(Kind kind, const std::string& var, const std::string& expected,
                                const std::string& found) {
        switch (kind) {
        case Kind::MissingImage:
            return "missing image for variable '" + var + "'";
        case Kind::WeightMismatch:
            return "weight mismatch for '" + var + "': expected " + expected + ", found " + found;
        case Kind::ParityMismatch:
            return "parity mismatch for '" + var + "': expected " + expected + ", found " + found;
        case Kind::SignatureMismatch:
            return "signature mismatch: expected " + expected + ", found " + found;
        }
        return "validation error";
    }

    Kind kind_;
    std::string variable_;
    std::string expected_;
    std::string found_;
};

}  // namespace hgraded
